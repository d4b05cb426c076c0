use crate::error::{domain, Error, Result};

const MAX_ITER: usize = 100_000;

/// Gauss hypergeometric series `₂F₁(a, b; c; z) = Σ (a)_k (b)_k / ((c)_k k!) z^k`
/// for `|z| < 1`, stopped once a term is below `1e-15` of the partial sum.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return domain(format!("hyp2f1_series requires |z| < 1, got {z}"));
    }
    if c <= 0.0 && c == c.round() {
        return domain(format!("hyp2f1_series: c = {c} is a nonpositive integer"));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() < 1e-15 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence("hypergeometric series"))
}
