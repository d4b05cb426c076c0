//! Unit-mean spacing laws of the random circulant ensemble and their CDFs.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::specfun::{erf, hyp2f1_series, i0_scaled_unchecked};
use crate::stats::TabulatedCdf;

/// Conjugate-pair spacing density `(2/π) e^{−z²/π}`.
pub fn pdf_cc(z: f64) -> f64 {
    if z < 0.0 {
        return 0.0;
    }
    2.0 / PI * (-z * z / PI).exp()
}

pub fn cdf_cc(z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    erf(z / PI.sqrt())
}

/// The constant `₂F₁(3/4, 5/4; 1; 1/4)` of the real-to-complex law.
pub fn rc_constant() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| hyp2f1_series(0.75, 1.25, 1.0, 0.25).expect("|z| < 1"))
}

/// Real-to-complex spacing density
/// `(3√3π/16) c² z exp(−(3π/16)c²z²) I₀((3π/32)c²z²)`.
pub fn pdf_rc(z: f64) -> f64 {
    if !(z > 0.0) {
        return 0.0;
    }
    let c2 = rc_constant().powi(2);
    let y = 3.0 * PI / 32.0 * c2 * z * z;
    // exp(−2y) I₀(y) = exp(−y) · e^{−y} I₀(y)
    3.0 * 3f64.sqrt() * PI / 16.0 * c2 * z * (-y).exp() * i0_scaled_unchecked(y)
}

/// Support cutoff used to tabulate [`cdf_rc`]; the density is below 1e-20 beyond it.
pub const RC_UPPER: f64 = 10.0;

fn rc_table() -> &'static TabulatedCdf {
    static T: OnceLock<TabulatedCdf> = OnceLock::new();
    T.get_or_init(|| {
        TabulatedCdf::from_pdf(pdf_rc, RC_UPPER, TabulatedCdf::DEFAULT_POINTS).expect("valid grid")
    })
}

pub fn cdf_rc(z: f64) -> f64 {
    rc_table().eval(z)
}

/// Unit-mean Rayleigh density `(πs/2) e^{−πs²/4}` of generic complex spacings.
pub fn pdf_generic(s: f64) -> f64 {
    if s < 0.0 {
        return 0.0;
    }
    PI * s / 2.0 * (-PI * s * s / 4.0).exp()
}

pub fn cdf_generic(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    -(-PI * s * s / 4.0).exp_m1()
}
