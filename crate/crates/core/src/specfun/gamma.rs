use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
// Godfrey's coefficients for g = 7, n = 9.
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const MAX_ITER: usize = 10_000;

/// Gamma function by the Lanczos approximation, with reflection for `x < 1/2`.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum += c / (z + (i + 1) as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * sum
}

/// Lower incomplete gamma `γ(a, z)` from the series
/// `γ(a, z) = z^a e^(−z) Σ_k z^k Γ(a)/Γ(a+k+1)`.
///
/// The ratio `Γ(a)/Γ(a+k+1) = 1/(a(a+1)…(a+k))` is accumulated by recurrence,
/// and the sum stops once a term drops below `1e-16` of the partial sum.
pub fn lower_incomplete_gamma(a: f64, z: f64) -> Result<f64> {
    if !(a > 0.0) {
        return domain(format!("lower_incomplete_gamma requires a > 0, got {a}"));
    }
    if !(z >= 0.0) {
        return domain(format!("lower_incomplete_gamma requires z >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut converged = false;
    for k in 1..MAX_ITER {
        term *= z / (a + k as f64);
        sum += term;
        if term < 1e-16 * sum {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("lower incomplete gamma series"));
    }
    Ok((a * z.ln() - z).exp() * sum)
}
