//! Real random circulant (cyclic) matrices.
//!
//! A circulant is stored as its first row `a`; the full matrix has
//! `M[r][c] = a[(c − r) mod N]`, each row a one-step right shift of the one
//! above. Every circulant is diagonalized by the unitary Fourier matrix
//! `U[j][l] = ω^{jl}/√N`, `ω = e^{2πi/N}`, with eigenvalues
//! `E_l = Σ_p a_p ω^{pl}` (indices 0-based here, so `E_0` is the row sum).
//!
//! Real circulants satisfy `Mᵀ = η M η` where `η` is the index-reversal
//! permutation `j ↦ −j mod N`, so their spectrum is closed under conjugation
//! with `E_l* = E_{N−l}`.

mod laws;

pub use laws::{
    cdf_cc, cdf_generic, cdf_rc, pdf_cc, pdf_generic, pdf_rc, rc_constant, RC_UPPER,
};

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::ensemble::par_map;
use crate::error::{domain, Result};
use crate::linalg::DenseMatrix;
use crate::specfun::{dft, Complex};
use crate::spectrum::{classify_spacings_with, ClassifiedSpacings, EigenClass, PairSelection, Spectrum};

/// An `N × N` real circulant, `N ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    first_row: Vec<f64>,
}

impl Circulant {
    pub fn new(first_row: Vec<f64>) -> Result<Self> {
        if first_row.len() < 2 {
            return domain(format!("circulant needs N >= 2, got {}", first_row.len()));
        }
        if first_row.iter().any(|x| !x.is_finite()) {
            return domain("circulant entries must be finite");
        }
        Ok(Self { first_row })
    }

    pub fn dim(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let n = self.dim();
        self.first_row[(c + n - r % n) % n]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim(), |r, c| Complex::new(self.get(r, c), 0.0))
    }

    /// `y = M x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|r| (0..n).map(|p| self.first_row[p] * x[(r + p) % n]).sum())
            .collect()
    }

    /// Eigenvalues `E_l` in index order.
    ///
    /// Conjugate symmetry is imposed exactly: `E_0` (and `E_{N/2}` for even
    /// `N`) is real and `E_{N−l}` is stored as the conjugate of `E_l`. Tags
    /// follow the same pairing.
    pub fn eigenvalues(&self) -> Spectrum {
        let n = self.dim();
        let row: Vec<Complex> = self.first_row.iter().map(|&x| Complex::new(x, 0.0)).collect();
        let mut eigs = dft(&row).expect("N >= 2");
        let mut classes = vec![EigenClass::Real; n];
        eigs[0].im = 0.0;
        for l in 1..n {
            let partner = n - l;
            if partner == l {
                eigs[l].im = 0.0;
            } else if l < partner {
                eigs[partner] = eigs[l].conj();
                classes[l] = EigenClass::ConjPair(partner);
                classes[partner] = EigenClass::ConjPair(l);
            }
        }
        Spectrum { eigs, classes }
    }

    /// `N Σ a_p²`, which equals `Tr M†M = Σ |E_l|²`.
    pub fn trace_norm(&self) -> f64 {
        self.dim() as f64 * self.first_row.iter().map(|a| a * a).sum::<f64>()
    }

    /// Largest entry of `|η M η⁻¹ − Mᵀ|`.
    pub fn pseudo_orthogonality_residual(&self) -> f64 {
        let n = self.dim();
        let rev = |j: usize| (n - j) % n;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                // (η M η)[r][c] = M[rev r][rev c]
                worst = worst.max((self.get(rev(r), rev(c)) - self.get(c, r)).abs());
            }
        }
        worst
    }

    /// Largest off-diagonal entry of `U† M U`.
    pub fn fourier_diagonalization_residual(&self) -> f64 {
        let u = fourier_matrix(self.dim());
        u.adjoint().matmul(&self.to_dense()).matmul(&u).max_off_diagonal()
    }
}

/// The unitary Fourier matrix `U[j][l] = e^{2πi jl/N}/√N`.
pub fn fourier_matrix(n: usize) -> DenseMatrix {
    let norm = 1.0 / (n as f64).sqrt();
    DenseMatrix::from_fn(n, |j, l| {
        Complex::from_polar(norm, 2.0 * PI * ((j * l) % n) as f64 / n as f64)
    })
}

/// The index-reversal permutation `η[j][(N − j) mod N] = 1`.
pub fn generalized_parity(n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return domain(format!("generalized parity needs N >= 2, got {n}"));
    }
    Ok(DenseMatrix::from_fn(n, |j, k| {
        if k == (n - j) % n {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    }))
}

/// Log of the unnormalized eigenvalue weight `−A Σ_l E_l E_{N−l}`.
///
/// For a conjugate-closed spectrum this is `−A Σ |E_l|² = −A Tr M†M`.
pub fn jpdf_log(spec: &Spectrum, a: f64) -> Result<f64> {
    let n = spec.len();
    if n < 2 {
        return domain("jpdf needs at least two eigenvalues");
    }
    if !(a > 0.0) {
        return domain(format!("ensemble weight A must be positive, got {a}"));
    }
    let sum: Complex = (0..n).map(|l| spec.eigs[l] * spec.eigs[(n - l) % n]).sum();
    let scale: f64 = spec.eigs.iter().map(|e| e.norm_sqr()).sum::<f64>().max(1.0);
    if sum.im.abs() > 1e-10 * scale {
        return domain("spectrum is not conjugate-paired: complex jpdf exponent");
    }
    Ok(-a * sum.re)
}

/// Per-entry standard deviation `1/√(2NA)` of the Gaussian ensemble.
pub fn entry_std(n: usize, a: f64) -> f64 {
    (1.0 / (2.0 * n as f64 * a)).sqrt()
}

fn check_ensemble(n: usize, a: f64) -> Result<()> {
    if n < 2 {
        return domain(format!("circulant needs N >= 2, got {n}"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!("ensemble weight A must be positive and finite, got {a}"));
    }
    Ok(())
}

/// Draws one circulant from the ensemble `exp(−A Tr M†M)`.
pub fn sample_one<R: Rng + ?Sized>(n: usize, a: f64, rng: &mut R) -> Result<Circulant> {
    check_ensemble(n, a)?;
    let dist = Normal::new(0.0, entry_std(n, a)).expect("positive std");
    Circulant::new((0..n).map(|_| dist.sample(rng)).collect())
}

/// `count` independent draws from the ensemble `exp(−A Tr M†M)`.
pub fn sample_ensemble<'r, R: Rng + ?Sized>(
    n: usize,
    a: f64,
    count: usize,
    rng: &'r mut R,
) -> Result<impl Iterator<Item = Circulant> + 'r> {
    if count == 0 {
        return domain("ensemble count must be at least 1");
    }
    check_ensemble(n, a)?;
    Ok((0..count).map(move |_| sample_one(n, a, rng).expect("validated")))
}

/// Spacing classes pooled over `count` seeded ensemble draws.
pub fn ensemble_spacings(
    n: usize,
    a: f64,
    count: usize,
    seed: u64,
    selection: PairSelection,
) -> Result<ClassifiedSpacings> {
    if count == 0 {
        return domain("ensemble count must be at least 1");
    }
    let draws = par_map(seed, count, |rng| sample_one(n, a, rng));
    let mut out = ClassifiedSpacings::default();
    for draw in draws {
        out.append(classify_spacings_with(&draw?.eigenvalues(), selection));
    }
    Ok(out)
}
