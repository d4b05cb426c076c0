use std::f64::consts::PI;

use super::EULER_GAMMA;
use crate::error::{domain, Result};

// Below this the power series is used for K₀; above it Steed's continued fraction.
const K0_SERIES_MAX: f64 = 2.0;
// Below this the power series is used for I₀; above it the asymptotic expansion.
const I0_SERIES_MAX: f64 = 20.0;
const MAX_ITER: usize = 500;

/// Modified Bessel function of the second kind of order zero.
///
/// Power series for `x <= 2` and the Steed/Temme continued fraction above.
/// K₀ diverges logarithmically at the origin, so `x <= 0` is rejected.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("bessel_k0 requires x > 0, got {x}"));
    }
    Ok(k0_unchecked(x))
}

/// Modified Bessel function of the first kind of order zero, `x >= 0`.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return domain(format!("bessel_i0 requires x >= 0, got {x}"));
    }
    Ok(if x <= I0_SERIES_MAX {
        i0_series(x)
    } else {
        x.exp() * i0_asymptotic_scaled(x)
    })
}

/// Exponentially scaled `e^(-x) I₀(x)`, finite for all `x >= 0`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return domain(format!("bessel_i0_scaled requires x >= 0, got {x}"));
    }
    Ok(i0_scaled_unchecked(x))
}

pub(crate) fn i0_scaled_unchecked(x: f64) -> f64 {
    if x <= I0_SERIES_MAX {
        i0_series(x) * (-x).exp()
    } else {
        i0_asymptotic_scaled(x)
    }
}

/// Σ (x²/4)^k / (k!)²
fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// e^(-x) I₀(x) ~ (2πx)^(-1/2) Σ ((2k-1)!!)² / (k! (8x)^k)
fn i0_asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

pub(crate) fn k0_unchecked(x: f64) -> f64 {
    if x <= K0_SERIES_MAX {
        k0_series(x)
    } else {
        k0_continued_fraction(x)
    }
}

/// K₀(x) = −(ln(x/2) + γ_E) I₀(x) + Σ_{k≥1} H_k (x²/4)^k / (k!)²
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term * harmonic < 1e-17 * tail.abs().max(1e-300) && term < 1e-17 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's method (CF2) for K₀ at order zero, valid for x ≳ 2.
fn k0_continued_fraction(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
