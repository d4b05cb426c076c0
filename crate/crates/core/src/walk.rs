//! Random walks on a periodic lattice driven by a circulant transition matrix,
//! and the relaxation law averaged over random transition spectra.
//!
//! The occupation vector evolves as `p(t + 1) = M p(t)` with `M` a
//! doubly stochastic circulant. Since every circulant is diagonal in the
//! Fourier basis, `p(t)` is obtained directly from powers of the eigenvalues.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::circulant::Circulant;
use crate::ensemble::par_map;
use crate::error::{domain, Error, Result};
use crate::specfun::{dft, dft_inverse_sign, erf, lower_incomplete_gamma, Complex};
use crate::stats::pairwise_sum;

const ROW_SUM_TOL: f64 = 1e-12;

/// Lattice and hopping rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WalkConfig {
    /// Nearest-neighbour walk: stay with `1 − w`, hop right with `p·w`, left with `(1 − p)·w`.
    Biased { sites: usize, w: f64, p: f64 },
    /// Arbitrary hop row `a_0..a_{N−1}` (first row of the transition matrix).
    General { row: Vec<f64> },
}

impl WalkConfig {
    pub fn biased(sites: usize, w: f64, p: f64) -> Result<Self> {
        let cfg = Self::Biased { sites, w, p };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn general(row: Vec<f64>) -> Result<Self> {
        let cfg = Self::General { row };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn sites(&self) -> usize {
        match self {
            Self::Biased { sites, .. } => *sites,
            Self::General { row } => row.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let config = |msg: String| Err(Error::Config(msg));
        if self.sites() < 2 {
            return config(format!("lattice needs at least 2 sites, got {}", self.sites()));
        }
        match self {
            Self::Biased { w, p, .. } => {
                if !(0.0..=1.0).contains(w) {
                    return config(format!("jump probability w must lie in [0, 1], got {w}"));
                }
                if !(0.0..=1.0).contains(p) {
                    return config(format!("right bias p must lie in [0, 1], got {p}"));
                }
            }
            Self::General { row } => {
                if let Some((i, x)) = row.iter().enumerate().find(|(_, x)| !(**x >= 0.0) || !x.is_finite()) {
                    return config(format!("hop row entry a{} = {x} must be finite and nonnegative", i + 1));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_SUM_TOL {
                    return config(format!("hop row must sum to 1, sums to {sum}"));
                }
            }
        }
        Ok(())
    }

    /// First row of the transition matrix.
    pub fn row(&self) -> Vec<f64> {
        match self {
            Self::Biased { sites, w, p } => {
                let mut row = vec![0.0; *sites];
                row[0] += 1.0 - w;
                row[1] += p * w;
                row[sites - 1] += (1.0 - p) * w;
                row
            }
            Self::General { row } => row.clone(),
        }
    }
}

/// The circulant `M` with first row `(1 − w, p w, 0, …, 0, q w)` or the general row.
pub fn transition_matrix(cfg: &WalkConfig) -> Result<Circulant> {
    cfg.validate()?;
    Circulant::new(cfg.row())
}

/// Occupation probabilities at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkState {
    pub t: u64,
    pub probs: Vec<f64>,
}

impl WalkState {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return domain("walk state needs at least one site");
        }
        if probs.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return domain("occupation probabilities must be finite and nonnegative");
        }
        let total = pairwise_sum(&probs);
        if (total - 1.0).abs() > ROW_SUM_TOL {
            return domain(format!("occupation probabilities must sum to 1, sum to {total}"));
        }
        Ok(Self { t: 0, probs })
    }

    /// All mass on `site`.
    pub fn delta(sites: usize, site: usize) -> Result<Self> {
        if site >= sites {
            return domain(format!("site {site} outside lattice of {sites}"));
        }
        let mut probs = vec![0.0; sites];
        probs[site] = 1.0;
        Self::new(probs)
    }

    pub fn uniform(sites: usize) -> Result<Self> {
        if sites == 0 {
            return domain("walk state needs at least one site");
        }
        Self::new(vec![1.0 / sites as f64; sites])
    }

    pub fn total(&self) -> f64 {
        pairwise_sum(&self.probs)
    }

    /// `max_i |p_i − 1/N|`.
    pub fn max_deviation_from_uniform(&self) -> f64 {
        let u = 1.0 / self.probs.len() as f64;
        self.probs.iter().fold(0.0, |acc: f64, p| acc.max((p - u).abs()))
    }
}

/// One application of the transition matrix.
pub fn step_direct(m: &Circulant, state: &WalkState) -> WalkState {
    WalkState { t: state.t + 1, probs: m.apply(&state.probs) }
}

/// Evolves `p0` by `t` steps through the Fourier eigenbasis.
///
/// `c_l = (U† p0)_l`, `p(t) = U (λ^t ∘ c)`; round-off negatives larger than
/// `−1e-14` are clamped to 0.
pub fn evolve_spectral(cfg: &WalkConfig, p0: &WalkState, t: u64) -> Result<WalkState> {
    let m = transition_matrix(cfg)?;
    if p0.probs.len() != m.dim() {
        return domain(format!("state has {} sites, lattice has {}", p0.probs.len(), m.dim()));
    }
    if t == 0 {
        return Ok(p0.clone());
    }
    let lambdas = stochastic_spectrum(&m);
    Ok(WalkState { t: p0.t + t, probs: evolve_with(&lambdas, &p0.probs, t) })
}

/// Eigenvalues of a stochastic circulant with the stationary one pinned to 1,
/// so rounding in the row sum cannot leak probability over long times.
fn stochastic_spectrum(m: &Circulant) -> Vec<Complex> {
    let mut eigs = m.eigenvalues().eigs;
    eigs[0] = Complex::new(1.0, 0.0);
    eigs
}

fn evolve_with(lambdas: &[Complex], p0: &[f64], t: u64) -> Vec<f64> {
    let n = p0.len();
    let norm = 1.0 / n as f64;
    let v: Vec<Complex> = p0.iter().map(|&x| Complex::new(x, 0.0)).collect();
    let coeffs = dft_inverse_sign(&v).expect("nonempty");
    let scaled: Vec<Complex> = coeffs.iter().zip(lambdas).map(|(c, l)| c * power(*l, t)).collect();
    dft(&scaled)
        .expect("nonempty")
        .iter()
        .map(|z| {
            let p = z.re * norm;
            if p < 0.0 && p > -1e-14 {
                0.0
            } else {
                p
            }
        })
        .collect()
}

fn power(z: Complex, t: u64) -> Complex {
    if t <= u32::MAX as u64 {
        z.powu(t as u32)
    } else {
        z.powf(t as f64)
    }
}

/// `−Σ p ln p` in units of `k_B`, with `0 ln 0 = 0`.
pub fn entropy(state: &WalkState) -> f64 {
    let terms: Vec<f64> = state.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).collect();
    pairwise_sum(&terms)
}

/// Largest eigenvalue modulus excluding the stationary mode `l = 0`.
pub fn second_largest_modulus(cfg: &WalkConfig) -> Result<f64> {
    let spec = transition_matrix(cfg)?.eigenvalues();
    Ok(spec.eigs[1..].iter().map(|e| e.norm()).fold(0.0, f64::max))
}

/// A time after which `ln N − s(t) ≤ tol` for every initial state.
///
/// Uses `ln N − s ≤ χ²(p, uniform) = N ‖p − u‖² ≤ N |λ*|^{2t}`.
pub fn mixing_time(cfg: &WalkConfig, tol: f64) -> Result<u64> {
    if !(tol > 0.0) {
        return domain(format!("mixing tolerance must be positive, got {tol}"));
    }
    let lam = second_largest_modulus(cfg)?;
    if lam >= 1.0 - 1e-15 {
        return domain("transition matrix has no spectral gap");
    }
    if lam == 0.0 {
        return Ok(1);
    }
    let n = cfg.sites() as f64;
    let t = ((tol / n).ln() / (2.0 * lam.ln())).ceil();
    Ok(t.max(1.0) as u64)
}

/// One row of an entropy trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkSample {
    pub t: u64,
    pub entropy: f64,
    pub max_deviation: f64,
    pub total: f64,
}

/// Entropy and distance from uniform for `t = 0..=t_max`.
pub fn trajectory(cfg: &WalkConfig, p0: &WalkState, t_max: u64) -> Result<Vec<WalkSample>> {
    let m = transition_matrix(cfg)?;
    if p0.probs.len() != m.dim() {
        return domain(format!("state has {} sites, lattice has {}", p0.probs.len(), m.dim()));
    }
    let lambdas = stochastic_spectrum(&m);
    Ok((0..=t_max)
        .map(|t| {
            let probs = if t == 0 { p0.probs.clone() } else { evolve_with(&lambdas, &p0.probs, t) };
            let s = WalkState { t, probs };
            WalkSample {
                t,
                entropy: entropy(&s),
                max_deviation: s.max_deviation_from_uniform(),
                total: s.total(),
            }
        })
        .collect())
}

/// `1 / (erf(√π/2) − e^{−π/4})`.
fn radial_norm() -> f64 {
    1.0 / (erf(PI.sqrt() / 2.0) - (-PI / 4.0).exp())
}

/// `(π/4) e^{−π/4} / (erf(√π/2) − e^{−π/4})`.
pub fn asymptotic_prefactor() -> f64 {
    PI / 4.0 * (-PI / 4.0).exp() * radial_norm()
}

/// Scaled ensemble-averaged deviation `N⟨p̃_j(t)⟩`
/// `= (2/√π)^{1+t} γ((3+t)/2, π/4) / (erf(√π/2) − e^{−π/4})`.
///
/// Equals 1 at `t = 0`.
pub fn rmt_decay_scaled(t: u64) -> Result<f64> {
    let tf = t as f64;
    let g = lower_incomplete_gamma((3.0 + tf) / 2.0, PI / 4.0)?;
    let log_pow = (1.0 + tf) * (2.0 / PI.sqrt()).ln();
    Ok(radial_norm() * (log_pow + g.ln()).exp())
}

/// `⟨p̃_j(t)⟩` for a lattice of `n` sites.
pub fn rmt_decay(t: u64, n: usize) -> Result<f64> {
    if n < 2 {
        return domain(format!("lattice needs at least 2 sites, got {n}"));
    }
    Ok(rmt_decay_scaled(t)? / n as f64)
}

/// Two-term large-`t` expansion of [`rmt_decay_scaled`].
pub fn rmt_decay_asymptotic(t: u64) -> f64 {
    let tf = t as f64;
    asymptotic_prefactor() * (2.0 / (tf + 3.0) + PI / ((tf + 3.0) * (tf + 5.0)))
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub realizations: usize,
}

/// Draws a non-stationary transition eigenvalue: modulus from the unit-mean
/// Rayleigh law weighted by `r` and restricted to the unit disc, phase uniform.
pub fn sample_relaxing_eigenvalue<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    loop {
        let u: f64 = 1.0 - rng.random::<f64>();
        let r = (-4.0 * u.ln() / PI).sqrt();
        if r > 1.0 {
            continue;
        }
        if rng.random::<f64>() < r {
            let theta = 2.0 * PI * rng.random::<f64>();
            return Complex::from_polar(r, theta);
        }
    }
}

/// Ensemble average of `(1/(N−1)) Σ_{l≥2} |λ_l^t|` over random spectra, the
/// stochastic counterpart of [`rmt_decay_scaled`].
pub fn rmt_decay_monte_carlo(n: usize, t: u64, realizations: usize, seed: u64) -> Result<McEstimate> {
    if n < 3 {
        return domain(format!("Monte Carlo decay needs N >= 3, got {n}"));
    }
    if realizations == 0 {
        return domain("Monte Carlo decay needs at least one realization");
    }
    let values = par_map(seed, realizations, |rng| {
        let terms: Vec<f64> = (1..n).map(|_| power(sample_relaxing_eigenvalue(rng), t).norm()).collect();
        pairwise_sum(&terms) / (n - 1) as f64
    });
    let m = realizations as f64;
    let mean = pairwise_sum(&values) / m;
    let sq: Vec<f64> = values.iter().map(|v| (v - mean).powi(2)).collect();
    let var = if realizations > 1 { pairwise_sum(&sq) / (m - 1.0) } else { 0.0 };
    Ok(McEstimate { mean, std_err: (var / m).sqrt(), realizations })
}

/// `p_j(t) − 1/N = Σ_{l≥1} c_l λ_l^t (u_l)_j` for the spectrum `eigs` and start `p0`
/// (the stationary mode `l = 0` removed).
pub fn occupation_deviation(p0: &[f64], eigs: &[Complex], j: usize, t: u64) -> Result<f64> {
    let n = p0.len();
    if n < 2 || eigs.len() != n || j >= n {
        return domain("occupation deviation needs matching p0 / spectrum lengths and j < N");
    }
    let v: Vec<Complex> = p0.iter().map(|&x| Complex::new(x, 0.0)).collect();
    let coeffs = dft_inverse_sign(&v)?;
    let norm = 1.0 / n as f64;
    let terms: Vec<f64> = (1..n)
        .map(|l| {
            let phase = Complex::from_polar(1.0, 2.0 * PI * ((j * l) % n) as f64 / n as f64);
            (coeffs[l] * power(eigs[l], t) * phase).re * norm
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn fig4() -> WalkConfig {
        WalkConfig::biased(22, 0.8, 0.3).unwrap()
    }

    fn matrix_power_evolve(m: &Circulant, p0: &WalkState, t: u64) -> WalkState {
        (0..t).fold(p0.clone(), |s, _| step_direct(m, &s))
    }

    #[test]
    fn transition_rows() {
        let id = transition_matrix(&WalkConfig::biased(5, 0.0, 0.4).unwrap()).unwrap();
        assert_eq!(id.first_row(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        let shift = transition_matrix(&WalkConfig::biased(3, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(shift.first_row(), &[0.0, 1.0, 0.0]);
        let row = fig4().row();
        assert!((row[0] - 0.2).abs() < 1e-15);
        assert!((row[1] - 0.24).abs() < 1e-15);
        assert!((row[21] - 0.56).abs() < 1e-15);
        assert!(row[2..21].iter().all(|&x| x == 0.0));
        let general = WalkConfig::general(row.clone()).unwrap();
        assert_eq!(general.row(), row);
        let m = transition_matrix(&general).unwrap();
        for r in 0..22 {
            let rs: f64 = (0..22).map(|c| m.get(r, c)).sum();
            let cs: f64 = (0..22).map(|c| m.get(c, r)).sum();
            assert!((rs - 1.0).abs() < 1e-15 && (cs - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn config_errors() {
        assert!(matches!(WalkConfig::biased(1, 0.5, 0.5), Err(Error::Config(_))));
        assert!(WalkConfig::biased(4, 1.5, 0.5).is_err());
        assert!(WalkConfig::biased(4, 0.5, -0.1).is_err());
        assert!(WalkConfig::general(vec![0.5, 0.6]).is_err());
        assert!(WalkConfig::general(vec![1.5, -0.5]).is_err());
        assert!(WalkConfig::general(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn stationary_and_identity_cases() {
        let cfg = fig4();
        let u = WalkState::uniform(22).unwrap();
        for t in [1, 7, 100, 5000] {
            let s = evolve_spectral(&cfg, &u, t).unwrap();
            assert!(s.probs.iter().all(|p| (p - 1.0 / 22.0).abs() < 1e-14));
        }
        let d = WalkState::delta(22, 3).unwrap();
        assert_eq!(evolve_spectral(&cfg, &d, 0).unwrap(), d);
        let rot = WalkConfig::biased(7, 1.0, 1.0).unwrap();
        for k in 0..15 {
            let s = evolve_spectral(&rot, &WalkState::delta(7, 0).unwrap(), k).unwrap();
            // p(t+1)_r = p(t)_{r+1}: mass moves one site left per step
            let site = (7 - (k as usize % 7)) % 7;
            for (i, p) in s.probs.iter().enumerate() {
                let want = if i == site { 1.0 } else { 0.0 };
                assert!((p - want).abs() < 1e-12, "k={k} i={i} p={p}");
            }
        }
    }

    #[test]
    fn spectral_matches_direct() {
        let configs = vec![
            fig4(),
            WalkConfig::biased(5, 0.3, 0.9).unwrap(),
            WalkConfig::biased(64, 0.95, 0.5).unwrap(),
            WalkConfig::general(vec![0.1, 0.2, 0.05, 0.0, 0.3, 0.35]).unwrap(),
        ];
        for cfg in configs {
            let m = transition_matrix(&cfg).unwrap();
            let p0 = WalkState::delta(cfg.sites(), 1).unwrap();
            let mut direct = p0.clone();
            for t in 1..=100 {
                direct = step_direct(&m, &direct);
                let spectral = evolve_spectral(&cfg, &p0, t).unwrap();
                let err = direct.probs.iter().zip(&spectral.probs).fold(0.0, |a: f64, (x, y)| a.max((x - y).abs()));
                assert!(err < 1e-10, "t={t} err={err}");
                assert!((spectral.total() - 1.0).abs() < 1e-12);
            }
            assert_eq!(matrix_power_evolve(&m, &p0, 100), direct);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&WalkState::delta(5, 2).unwrap()), 0.0);
        let u = entropy(&WalkState::uniform(22).unwrap());
        assert!((u - 22f64.ln()).abs() < 1e-14);
        assert!((u - 3.0910).abs() < 1e-4);
        assert!((entropy(&WalkState::new(vec![0.5, 0.5]).unwrap()) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn spectrum_is_inside_unit_disc() {
        for cfg in [fig4(), WalkConfig::biased(9, 0.5, 0.2).unwrap()] {
            let spec = transition_matrix(&cfg).unwrap().eigenvalues();
            assert!((spec.eigs[0] - Complex::new(1.0, 0.0)).norm() < 1e-14);
            assert!(spec.eigs[1..].iter().all(|e| e.norm() < 1.0 - 1e-6));
        }
        // even lattice with w = 1 is periodic: λ = −1 at l = N/2
        let periodic = transition_matrix(&WalkConfig::biased(6, 1.0, 0.5).unwrap()).unwrap();
        assert!((periodic.eigenvalues().eigs[3].norm() - 1.0).abs() < 1e-14);
        assert!(mixing_time(&WalkConfig::biased(6, 1.0, 0.5).unwrap(), 1e-8).is_err());
    }

    #[test]
    fn fig4_gap_and_saturation() {
        let cfg = fig4();
        let lam = second_largest_modulus(&cfg).unwrap();
        assert!((lam - 0.9718).abs() < 1e-3, "lam={lam}");
        let tm = mixing_time(&cfg, 1e-8).unwrap();
        let traj = trajectory(&cfg, &WalkState::delta(22, 0).unwrap(), tm + 500).unwrap();
        assert_eq!(traj[0].entropy, 0.0);
        for s in &traj {
            assert!((s.total - 1.0).abs() < 1e-12);
        }
        for s in &traj[tm as usize..] {
            assert!((s.entropy - 22f64.ln()).abs() < 1e-8, "t={} s={}", s.t, s.entropy);
        }
    }

    #[test]
    fn frozen_walk_has_flat_entropy() {
        let cfg = WalkConfig::biased(8, 0.0, 0.5).unwrap();
        let traj = trajectory(&cfg, &WalkState::delta(8, 0).unwrap(), 50).unwrap();
        assert!(traj.iter().all(|s| s.entropy == 0.0));
    }

    #[test]
    fn closed_form_at_zero_and_against_quadrature() {
        assert!((rmt_decay_scaled(0).unwrap() - 1.0).abs() < 1e-14);
        for t in [0u64, 1, 2, 5, 17, 50, 120, 200] {
            let a = (3.0 + t as f64) / 2.0;
            let g = oracle::lower_gamma_quadrature(a, PI / 4.0);
            let want = radial_norm() * (2.0 / PI.sqrt()).powf(1.0 + t as f64) * g;
            let got = rmt_decay_scaled(t).unwrap();
            assert!((got - want).abs() <= 1e-10 * want, "t={t}");
        }
        assert!((rmt_decay(3, 10).unwrap() * 10.0 - rmt_decay_scaled(3).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_is_a_radial_moment() {
        // E[r^t] under density ∝ r² e^{−πr²/4} on [0, 1]
        let w = |r: f64| r * r * (-PI * r * r / 4.0).exp();
        let z = oracle::integrate(w, 0.0, 1.0, 50);
        for t in [1u64, 4, 30] {
            let m = oracle::integrate(|r| r.powi(t as i32) * w(r), 0.0, 1.0, 50) / z;
            assert!((rmt_decay_scaled(t).unwrap() - m).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_decreases_and_asymptotic_converges() {
        let mut prev = f64::INFINITY;
        for t in 1..=200 {
            let v = rmt_decay_scaled(t).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
        let ratio = |t| rmt_decay_asymptotic(t) / rmt_decay_scaled(t).unwrap();
        let (r10, r50, r100) = (ratio(10), ratio(50), ratio(100));
        assert!((r50 - 1.0).abs() < (r10 - 1.0).abs());
        assert!((r100 - 1.0).abs() < (r50 - 1.0).abs());
        for t in 50..=2000 {
            assert!((ratio(t) - 1.0).abs() < 0.01, "t={t}");
        }
        let big = 1e6 as u64;
        assert!((rmt_decay_asymptotic(big) * (big as f64 + 3.0) / 2.0 / asymptotic_prefactor() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn monte_carlo_agrees_with_closed_form() {
        for (k, t) in [2u64, 5, 10].into_iter().enumerate() {
            let mc = rmt_decay_monte_carlo(32, t, 100_000, 300 + k as u64).unwrap();
            let exact = rmt_decay_scaled(t).unwrap();
            assert!((mc.mean - exact).abs() < 3.0 * mc.std_err, "t={t} mc={mc:?} exact={exact}");
        }
        let small = rmt_decay_monte_carlo(8, 3, 1000, 1).unwrap();
        let large = rmt_decay_monte_carlo(8, 3, 100_000, 1).unwrap();
        let ratio = small.std_err / large.std_err;
        assert!((ratio / 10.0 - 1.0).abs() < 0.2, "ratio={ratio}");
        assert!(rmt_decay_monte_carlo(2, 1, 10, 0).is_err());
        assert!(rmt_decay_monte_carlo(5, 1, 0, 0).is_err());
    }

    #[test]
    fn occupation_deviation_reproduces_start() {
        let cfg = WalkConfig::general(vec![0.1, 0.2, 0.05, 0.0, 0.3, 0.35]).unwrap();
        let eigs = transition_matrix(&cfg).unwrap().eigenvalues().eigs;
        let p0 = [0.05, 0.4, 0.1, 0.25, 0.0, 0.2];
        for j in 0..6 {
            let d = occupation_deviation(&p0, &eigs, j, 0).unwrap();
            assert!((d - (p0[j] - 1.0 / 6.0)).abs() < 1e-15);
        }
        let state = WalkState::new(p0.to_vec()).unwrap();
        let later = evolve_spectral(&cfg, &state, 9).unwrap();
        for j in 0..6 {
            let d = occupation_deviation(&p0, &eigs, j, 9).unwrap();
            assert!((d - (later.probs[j] - 1.0 / 6.0)).abs() < 1e-14);
        }
        assert!(occupation_deviation(&p0, &eigs, 6, 0).is_err());
    }

    proptest! {
        #[test]
        fn probability_is_conserved(
            raw in prop::collection::vec(0.0f64..1.0, 2..40),
            start in 0usize..40,
            t in 0u64..300,
        ) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 1e-3);
            let mut row: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let drift: f64 = 1.0 - row.iter().sum::<f64>();
            row[0] += drift;
            prop_assume!(row[0] >= 0.0);
            let cfg = WalkConfig::general(row).unwrap();
            let n = cfg.sites();
            let s = evolve_spectral(&cfg, &WalkState::delta(n, start % n).unwrap(), t).unwrap();
            prop_assert!((s.total() - 1.0).abs() < 1e-12);
            prop_assert!(s.probs.iter().all(|&p| p >= -1e-12));
        }
    }
}
