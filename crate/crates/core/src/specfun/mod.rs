//! Special functions, complex arithmetic and the discrete Fourier transform
//! used by the analytic spacing and decay laws.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`bessel_k0`] | Modified Bessel function of the second kind, K₀(x) |
//! | [`bessel_i0`] | Modified Bessel function of the first kind, I₀(x) |
//! | [`erf`] | Error function |
//! | [`gamma`] | Gamma function Γ(x) (Lanczos) |
//! | [`lower_incomplete_gamma`] | γ(a, z) = ∫₀ᶻ t^(a−1) e^(−t) dt |
//! | [`hyp2f1_series`] | Gauss hypergeometric series ₂F₁(a, b; c; z), \|z\| < 1 |
//! | [`dft`] | Unnormalized DFT with the `+2πi` eigenvalue sign convention |
//!
//! All functions are pure and thread-safe.

mod bessel;
mod dft;
mod erf;
mod gamma;
mod hyp2f1;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_k0};
pub use dft::{dft, dft_direct, dft_fast, dft_inverse_sign, DIRECT_MAX_LEN};
pub use erf::erf;
pub use gamma::{gamma, lower_incomplete_gamma};
pub use hyp2f1::hyp2f1_series;

/// Complex number with `f64` components.
pub type Complex = num_complex::Complex64;

/// Euler–Mascheroni constant γ_E.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) use bessel::{i0_scaled_unchecked, k0_unchecked};
