//! The five 2×2 pseudo-Hermitian random-matrix families.
//!
//! | Family | H | η | ζ |
//! |--------|---|---|---|
//! | F1 | `[[a, −ib], [ic, a]]` | `[[0, i], [−i, 0]]` | `[[0, 1], [1, 0]]` |
//! | F2 | `[[a+c, ib], [ib, a−c]]` | `diag(1, −1)` | not known |
//! | F3 | `[[a, −iεc], [ic/ε, b]]` | `diag(1/ε, ε)` | `diag(1/ε, ε)` |
//! | F4 | `[[a+ib, c], [d, a−ib]]` | `[[0, 1], [1, 0]]` | not known |
//! | F5 | `[[a+b, d+ic], [−d+ic, a−b]]` | `diag(1, −1)` | `diag(1, −1)` |
//!
//! Every family satisfies `η H η⁻¹ = H†` for real parameters.
//!
//! # Sampling
//!
//! Parameters are drawn from the Wishart-form weight `exp(−Tr H†H / 2σ²)`
//! restricted to the family's parametrization. `Tr H†H` is a diagonal
//! quadratic form `Σ w_i x_i²` in the parameters, so each parameter is an
//! independent zero-mean Gaussian with variance `σ² / w_i`:
//!
//! | Family | `Tr H†H` | variances (a, b, c, d) |
//! |--------|----------|------------------------|
//! | F1 | `2a² + b² + c²` | σ²/2, σ², σ², – |
//! | F2 | `2a² + 2b² + 2c²` | σ²/2, σ²/2, σ²/2, – |
//! | F3 | `a² + b² + (ε² + ε⁻²) c²` | σ², σ², σ²/(ε² + ε⁻²), – |
//! | F4 | `2a² + 2b² + c² + d²` | σ²/2, σ²/2, σ², σ² |
//! | F5 | `2a² + 2b² + 2c² + 2d²` | σ²/2 each |

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::ensemble::par_chunks;
use crate::error::{domain, Result};
use crate::linalg::Matrix2;
use crate::specfun::{k0_unchecked, Complex};
use crate::spectrum::{SpacingClass, SpacingSample};
use crate::stats::TabulatedCdf;

const I: Complex = Complex::new(0.0, 1.0);

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn im(x: f64) -> Complex {
    Complex::new(0.0, x)
}

/// A row of the 2×2 family table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Family {
    /// F1: equal real diagonal, imaginary off-diagonal.
    AntidiagImag,
    /// F2: parity metric `diag(1, −1)`.
    DiagParity,
    /// F3: off-diagonals of a Hermitian matrix rescaled by `ε > 0`.
    EpsilonScaled { epsilon: f64 },
    /// F4: complex-conjugate diagonal.
    ComplexDiag,
    /// F5: indefinite metric `diag(1, −1)` with complex off-diagonals.
    Indefinite,
}

impl Family {
    /// Parses `F1`..`F5`; F3 takes its `ε` separately.
    pub fn from_tag(tag: &str, epsilon: f64) -> Result<Self> {
        match tag.to_ascii_uppercase().as_str() {
            "F1" => Ok(Self::AntidiagImag),
            "F2" => Ok(Self::DiagParity),
            "F3" => {
                if !(epsilon > 0.0) {
                    return domain(format!("F3 requires epsilon > 0, got {epsilon}"));
                }
                Ok(Self::EpsilonScaled { epsilon })
            }
            "F4" => Ok(Self::ComplexDiag),
            "F5" => Ok(Self::Indefinite),
            other => domain(format!("unknown family {other:?}; expected F1..F5")),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::AntidiagImag => "F1",
            Self::DiagParity => "F2",
            Self::EpsilonScaled { .. } => "F3",
            Self::ComplexDiag => "F4",
            Self::Indefinite => "F5",
        }
    }

    /// Number of free real parameters.
    pub fn parameter_count(&self) -> usize {
        match self {
            Self::AntidiagImag | Self::DiagParity | Self::EpsilonScaled { .. } => 3,
            Self::ComplexDiag | Self::Indefinite => 4,
        }
    }

    /// The matrix of this family at the given parameters (`d` ignored for 3-parameter families).
    pub fn matrix(&self, p: &Params) -> Matrix2 {
        let Params { a, b, c, d } = *p;
        match *self {
            Self::AntidiagImag => Matrix2::new(re(a), im(-b), im(c), re(a)),
            Self::DiagParity => Matrix2::new(re(a + c), im(b), im(b), re(a - c)),
            Self::EpsilonScaled { epsilon } => {
                Matrix2::new(re(a), im(-epsilon * c), im(c / epsilon), re(b))
            }
            Self::ComplexDiag => Matrix2::new(Complex::new(a, b), re(c), re(d), Complex::new(a, -b)),
            Self::Indefinite => Matrix2::new(re(a + b), Complex::new(d, c), Complex::new(-d, c), re(a - b)),
        }
    }

    /// Per-parameter variances `(a, b, c, d)` under the Wishart-form weight; see the module docs.
    pub fn variances(&self, sigma: f64) -> [f64; 4] {
        let s2 = sigma * sigma;
        match *self {
            Self::AntidiagImag => [s2 / 2.0, s2, s2, 0.0],
            Self::DiagParity => [s2 / 2.0, s2 / 2.0, s2 / 2.0, 0.0],
            Self::EpsilonScaled { epsilon } => {
                [s2, s2, s2 / (epsilon * epsilon + 1.0 / (epsilon * epsilon)), 0.0]
            }
            Self::ComplexDiag => [s2 / 2.0, s2 / 2.0, s2, s2],
            Self::Indefinite => [s2 / 2.0; 4],
        }
    }

    /// Metric η of H and, where known, metric ζ of the diagonalizer.
    pub fn metric(&self) -> MetricPair {
        let swap = Matrix2::real(0.0, 1.0, 1.0, 0.0);
        let parity = Matrix2::real(1.0, 0.0, 0.0, -1.0);
        match *self {
            Self::AntidiagImag => MetricPair {
                eta: Matrix2::new(re(0.0), I, -I, re(0.0)),
                zeta: Some(swap),
            },
            Self::DiagParity => MetricPair { eta: parity, zeta: None },
            Self::EpsilonScaled { epsilon } => {
                let m = Matrix2::real(1.0 / epsilon, 0.0, 0.0, epsilon);
                MetricPair { eta: m, zeta: Some(m) }
            }
            Self::ComplexDiag => MetricPair { eta: swap, zeta: None },
            Self::Indefinite => MetricPair { eta: parity, zeta: Some(parity) },
        }
    }

    /// The tabulated diagonalizer as a function of its free parameters.
    ///
    /// `r` is used by F1 and F4, `theta` by F2–F5. For F4 and F5 the table
    /// does not tie these to the matrix parameters; they are returned as
    /// written.
    pub fn diagonalizer_form(&self, r: f64, theta: f64) -> Matrix2 {
        let (s, c) = theta.sin_cos();
        match *self {
            Self::AntidiagImag => Matrix2::new(re(1.0), im(1.0 / r), im(r), re(1.0))
                .scale(re(std::f64::consts::FRAC_1_SQRT_2)),
            Self::DiagParity => {
                Matrix2::new(re(c), im(s), im(-s), re(c)).scale(re(1.0 / (2.0 * theta).cos().sqrt()))
            }
            Self::EpsilonScaled { epsilon } => {
                Matrix2::new(re(c), im(epsilon * s), im(-s / epsilon), re(c))
            }
            Self::ComplexDiag => {
                let top = Complex::from_polar(r, theta) / s;
                Matrix2::new(top, -top, re(1.0), re(1.0))
            }
            Self::Indefinite => Matrix2::new(
                im(c),
                Complex::from_polar(s, theta),
                Complex::from_polar(s, -theta),
                im(-c),
            ),
        }
    }

    /// A diagonalizer with its free parameter solved so that `D⁻¹ H D` is
    /// diagonal (for F3 a sign-corrected variant of the tabulated form). Returns `None` outside the real-eigenvalue
    /// sector and for F4/F5, whose table entries are not tied to the parameters.
    pub fn diagonalizer(&self, p: &Params) -> Option<Matrix2> {
        match *self {
            Self::AntidiagImag => {
                if p.b * p.c > 0.0 {
                    Some(self.diagonalizer_form((p.c / p.b).sqrt(), 0.0))
                } else {
                    None
                }
            }
            Self::DiagParity => {
                // sin 2θ = −b/c
                if p.c.abs() > p.b.abs() {
                    Some(self.diagonalizer_form(0.0, -0.5 * (p.b / p.c).asin()))
                } else {
                    None
                }
            }
            Self::EpsilonScaled { epsilon } => {
                // The tabulated form [[cos θ, iε sin θ], [−i sin θ/ε, cos θ]] has
                // D⁻¹HD diagonal only when c = 0; flipping the sign of the
                // lower-left entry (unitary at ε = 1) works with tan 2θ = 2c/(a − b).
                let (s, c) = (0.5 * (2.0 * p.c).atan2(p.a - p.b)).sin_cos();
                Some(Matrix2::new(re(c), im(epsilon * s), im(s / epsilon), re(c)))
            }
            Self::ComplexDiag | Self::Indefinite => None,
        }
    }

    /// Draws parameters from the Wishart-form weight at width `sigma`.
    pub fn sample_params<R: Rng + ?Sized>(&self, sigma: f64, rng: &mut R) -> Params {
        let v = self.variances(sigma);
        let mut draw = |var: f64| {
            let z: f64 = rng.sample(StandardNormal);
            z * var.sqrt()
        };
        let a = draw(v[0]);
        let b = draw(v[1]);
        let c = draw(v[2]);
        let d = if self.parameter_count() == 4 { draw(v[3]) } else { 0.0 };
        Params { a, b, c, d }
    }
}

/// Real parameters of a family member.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Metric η of a family and metric ζ of its diagonalizer (absent where unknown).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricPair {
    pub eta: Matrix2,
    pub zeta: Option<Matrix2>,
}

pub fn metric_of(family: &Family) -> MetricPair {
    family.metric()
}

/// Draws one matrix of `family` at ensemble width `sigma > 0`.
pub fn sample_family<R: Rng + ?Sized>(family: &Family, sigma: f64, rng: &mut R) -> Result<Matrix2> {
    if !(sigma > 0.0) {
        return domain(format!("sigma must be positive, got {sigma}"));
    }
    Ok(family.matrix(&family.sample_params(sigma, rng)))
}

/// `E± = ½ Tr m ± ½ √((Tr m)² − 4 Det m)` on the principal square-root branch.
pub fn eigenvalues2(m: &Matrix2) -> (Complex, Complex) {
    let tr = m.trace();
    let mut disc = tr * tr - m.det() * 4.0;
    // a signed zero imaginary part would select the other side of the branch cut
    if disc.im == 0.0 {
        disc.im = 0.0;
    }
    let root = disc.sqrt();
    ((tr + root) * 0.5, (tr - root) * 0.5)
}

/// Largest entry of `|η m η⁻¹ − m†|`.
pub fn pseudo_hermiticity_residual(m: &Matrix2, eta: &Matrix2) -> Result<f64> {
    let inv = eta.inverse()?;
    Ok((*eta * *m * inv).max_abs_diff(&m.adjoint()))
}

/// Spacing density of F1 in its real sector, `P(S) = S/(πσ²) K₀(S²/4σ²)`.
///
/// `P(0) = 0`; negative `S` lies outside the support and also gives 0.
pub fn spacing_pdf_f1(s: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    if !(s > 0.0) {
        return 0.0;
    }
    let x = s * s / (4.0 * sigma * sigma);
    s / (PI * sigma * sigma) * k0_unchecked(x)
}

/// Tail cutoff beyond which the F1 spacing density is below `e^{-49}`.
pub fn spacing_f1_upper(sigma: f64) -> f64 {
    14.0 * sigma
}

/// CDF of [`spacing_pdf_f1`], tabulated once at unit width and rescaled.
pub fn spacing_cdf_f1(s: f64, sigma: f64) -> f64 {
    static TABLE: OnceLock<TabulatedCdf> = OnceLock::new();
    assert!(sigma > 0.0, "sigma must be positive");
    let table = TABLE.get_or_init(|| {
        TabulatedCdf::from_pdf(|x| spacing_pdf_f1(x, 1.0), spacing_f1_upper(1.0), TabulatedCdf::DEFAULT_POINTS)
            .expect("valid grid")
    });
    table.eval(s / sigma)
}

/// Spacings from a run of F1 draws, split by eigenvalue sector.
#[derive(Debug, Clone, PartialEq)]
pub struct F1Spacings {
    /// `|E₊ − E₋|` for draws with `bc > 0` (real eigenvalues).
    pub real: SpacingSample,
    /// `|E₊ − E₋| = 2|Im E|` for draws with `bc < 0`.
    pub conjugate: SpacingSample,
}

/// Draws `count` F1 matrices and records their eigenvalue spacing by sector.
pub fn spacing_samples_f1<R: Rng + ?Sized>(count: usize, sigma: f64, rng: &mut R) -> Result<F1Spacings> {
    let family = Family::AntidiagImag;
    let spacings = spacing_samples(&family, count, sigma, rng)?;
    Ok(F1Spacings { real: spacings.real, conjugate: spacings.cc })
}

/// Eigenvalue spacings of a 2×2 family, one value per draw, by sector.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpacings {
    pub real: SpacingSample,
    pub cc: SpacingSample,
    /// Complex eigenvalues that are not conjugate (not produced by the
    /// pseudo-Hermitian families up to round-off).
    pub generic: SpacingSample,
}

/// Draws `count` matrices of `family` and sorts `|E₊ − E₋|` into sectors.
pub fn spacing_samples<R: Rng + ?Sized>(
    family: &Family,
    count: usize,
    sigma: f64,
    rng: &mut R,
) -> Result<FamilySpacings> {
    if count == 0 {
        return domain("spacing sample count must be at least 1");
    }
    let mut out = FamilySpacings {
        real: SpacingSample::new(SpacingClass::Real, Vec::new()),
        cc: SpacingSample::new(SpacingClass::Cc, Vec::new()),
        generic: SpacingSample::new(SpacingClass::Generic, Vec::new()),
    };
    for _ in 0..count {
        let m = sample_family(family, sigma, rng)?;
        let (ep, em) = eigenvalues2(&m);
        let s = (ep - em).norm();
        let tol = 1e-12 * ep.norm().max(em.norm()).max(sigma);
        if ep.im.abs() <= tol && em.im.abs() <= tol {
            out.real.values.push(s);
        } else if (ep - em.conj()).norm() <= tol {
            out.cc.values.push(s);
        } else {
            out.generic.values.push(s);
        }
    }
    Ok(out)
}

/// [`spacing_samples`] over `count` draws split into seeded parallel chunks.
pub fn ensemble_spacings(family: &Family, count: usize, sigma: f64, seed: u64) -> Result<FamilySpacings> {
    if count == 0 {
        return domain("spacing sample count must be at least 1");
    }
    let parts = par_chunks(seed, count, |rng, n| vec![spacing_samples(family, n, sigma, rng)]);
    let mut out = FamilySpacings {
        real: SpacingSample::new(SpacingClass::Real, Vec::new()),
        cc: SpacingSample::new(SpacingClass::Cc, Vec::new()),
        generic: SpacingSample::new(SpacingClass::Generic, Vec::new()),
    };
    for part in parts {
        let part = part?;
        out.real.values.extend(part.real.values);
        out.cc.values.extend(part.cc.values);
        out.generic.values.extend(part.generic.values);
    }
    Ok(out)
}
