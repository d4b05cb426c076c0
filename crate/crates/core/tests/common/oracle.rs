//! Independent reference computations used only by tests.
//!
//! Nothing here calls into the library: quadratures are composite
//! Gauss–Legendre rules, series use exact rational arithmetic, and dense
//! eigenvalues come from nalgebra's Schur decomposition.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// 20-point Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite 20-point Gauss–Legendre on `[a, b]` with `panels` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        for &(x, w) in &rule {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}

/// K₀(x) = ∫₀^∞ exp(−x cosh t) dt.
pub fn k0_quadrature(x: f64) -> f64 {
    let upper = (745.0 / x).max(1.0).acosh();
    integrate(|t| (-x * t.cosh()).exp(), 0.0, upper, 600)
}

/// I₀(x) = (1/π) ∫₀^π exp(x cos t) dt.
pub fn i0_quadrature(x: f64) -> f64 {
    integrate(|t| (x * t.cos()).exp(), 0.0, PI, 300) / PI
}

/// Σ (x/2)^{2k} / (k!)² by explicit factorials.
pub fn i0_power_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 0..60 {
        if k > 0 {
            fact *= k as f64;
        }
        sum += (x / 2.0).powi(2 * k) / (fact * fact);
    }
    sum
}

/// (2/√π) Σ (−1)^k x^{2k+1} / (k! (2k+1)).
pub fn erf_alternating_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 0..80 {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * x.powi(2 * k + 1) / (fact * (2 * k + 1) as f64);
    }
    2.0 / PI.sqrt() * sum
}

pub fn erf_quadrature(x: f64) -> f64 {
    2.0 / PI.sqrt() * integrate(|t| (-t * t).exp(), 0.0, x, 200)
}

/// ∫₀^z t^{a−1} e^{−t} dt via t = u² (smooth for the half-integer and integer `a` used in tests).
pub fn lower_gamma_quadrature(a: f64, z: f64) -> f64 {
    integrate(
        |u| 2.0 * u.powf(2.0 * a - 1.0) * (-u * u).exp(),
        0.0,
        z.sqrt(),
        200,
    )
}

/// ∫_z^∞ t^{a−1} e^{−t} dt via t = u², truncated where e^{−u²} underflows relative to the sum.
pub fn upper_gamma_quadrature(a: f64, z: f64) -> f64 {
    let lo = z.sqrt();
    integrate(
        |u| 2.0 * u.powf(2.0 * a - 1.0) * (-u * u).exp(),
        lo,
        lo + 14.0,
        800,
    )
}

fn rational((n, d): (i64, i64)) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact-rational partial sum of ₂F₁(a, b; c; z) with `terms` terms.
pub fn hyp2f1_rational(
    a: (i64, i64),
    b: (i64, i64),
    c: (i64, i64),
    z: (i64, i64),
    terms: usize,
) -> f64 {
    let (a, b, c, z) = (rational(a), rational(b), rational(c), rational(z));
    let one = rational((1, 1));
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k = rational((0, 1));
    for _ in 1..terms {
        term = term * (&a + &k) * (&b + &k) / ((&c + &k) * (&k + &one)) * &z;
        sum += &term;
        k += &one;
    }
    sum.to_f64().unwrap()
}

/// Eigenvalues of a dense row-major `n × n` complex matrix.
///
/// Structured inputs can stall the shifted QR iteration; on failure the
/// matrix is conjugated by a pseudo-random unitary and the iteration retried.
pub fn dense_eigenvalues(n: usize, row_major: &[Complex64]) -> Vec<Complex64> {
    let m = nalgebra::DMatrix::from_row_slice(n, n, row_major);
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut candidate = m.clone();
    for _ in 0..8 {
        if let Some(schur) = candidate.clone().try_schur(f64::EPSILON, 10_000) {
            return schur.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect();
        }
        let g = nalgebra::DMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()));
        let q = g.qr().q();
        candidate = q.adjoint() * &m * &q;
    }
    panic!("Schur iteration did not converge");
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Roots of a monic polynomial `z^n + c[n-1] z^{n-1} + … + c[0]` by Durand–Kerner.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = roots.clone();
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
        }
        if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    roots
}
