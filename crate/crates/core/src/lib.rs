//! Pseudo-Hermitian random-matrix ensembles and their spectral statistics.
//!
//! * [`pseudo2x2`]: the five 2×2 families, metrics, diagonalizers and the
//!   Bessel-K₀ spacing law.
//! * [`circulant`]: real random circulants, Fourier eigenvalues, spacing
//!   classification and the cc / rc / generic spacing laws.
//! * [`blockcirc`]: circulants of 2×2 blocks (Gaussian and Ising forms).
//! * [`walk`]: biased random walks on periodic lattices and the
//!   ensemble-averaged relaxation law.
//! * [`stats`]: histograms, unit-mean normalization, Kolmogorov–Smirnov.
//! * [`specfun`]: special functions and the DFT.

pub mod blockcirc;
pub mod circulant;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod pseudo2x2;
pub mod specfun;
pub mod spectrum;
pub mod stats;
pub mod walk;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
#[allow(dead_code)]
pub(crate) mod oracle;

pub use blockcirc::BlockCirculant;
pub use circulant::Circulant;
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Matrix2};
pub use pseudo2x2::{Family, MetricPair, Params};
pub use specfun::Complex;
pub use spectrum::{ClassifiedSpacings, EigenClass, PairSelection, SpacingClass, SpacingSample, Spectrum};
pub use stats::{GofReport, Histogram, TabulatedCdf};
pub use walk::{WalkConfig, WalkState};
