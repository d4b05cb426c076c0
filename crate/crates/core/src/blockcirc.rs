//! Circulants whose entries are 2×2 blocks.
//!
//! The first block row `(A_0, …, A_{N−1})` defines the `2N × 2N` matrix with
//! block `(r, c)` equal to `A_{(c − r) mod N}`. Block-Fourier reduction gives
//! `Â_l = Σ_p A_p ω^{pl}`; the spectrum is the union of the eigenvalues of the
//! `N` matrices `Â_l`.
//!
//! With blocks of the form `[[a, −b], [c, a]]` (real `a, b, c`) the matrix is
//! pseudo-orthogonal with respect to `Σ = η ⊗ σ_x`, where `η` is the scalar
//! index-reversal parity and `σ_x = [[0, 1], [1, 0]]`.

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::circulant::generalized_parity;
use crate::ensemble::par_map;
use crate::error::{domain, Result};
use crate::linalg::{DenseMatrix, Matrix2};
use crate::pseudo2x2::eigenvalues2;
use crate::specfun::{dft, Complex};
use crate::spectrum::{classify_spacings_with, ClassifiedSpacings, PairSelection, Spectrum};

/// Relative tolerance for numerical real / conjugate-pair detection.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// A block circulant with `N ≥ 2` blocks (dimension `2N`).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCirculant {
    blocks: Vec<Matrix2>,
}

impl BlockCirculant {
    pub fn new(blocks: Vec<Matrix2>) -> Result<Self> {
        if blocks.len() < 2 {
            return domain(format!("block circulant needs N >= 2 blocks, got {}", blocks.len()));
        }
        if blocks.iter().any(|b| !b.is_finite()) {
            return domain("block entries must be finite");
        }
        Ok(Self { blocks })
    }

    /// Number of blocks `N`.
    pub fn blocks_len(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Matrix2] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.blocks.len();
        DenseMatrix::from_fn(2 * n, |i, j| {
            let b = &self.blocks[(j / 2 + n - i / 2) % n];
            b.entries()[2 * (i % 2) + j % 2]
        })
    }

    /// The reduced blocks `Â_l`, `l = 0..N`.
    pub fn fourier_blocks(&self) -> Vec<Matrix2> {
        let column = |k: usize| -> Vec<Complex> {
            let entries: Vec<Complex> = self.blocks.iter().map(|b| b.entries()[k]).collect();
            dft(&entries).expect("N >= 2")
        };
        let (e11, e12, e21, e22) = (column(0), column(1), column(2), column(3));
        (0..self.blocks.len())
            .map(|l| Matrix2::new(e11[l], e12[l], e21[l], e22[l]))
            .collect()
    }

    /// All `2N` eigenvalues, two per reduced block, classified numerically.
    pub fn eigenvalues(&self) -> Spectrum {
        let eigs = self
            .fourier_blocks()
            .iter()
            .flat_map(|b| {
                let (p, m) = eigenvalues2(b);
                [p, m]
            })
            .collect();
        Spectrum::classify_numeric(eigs, CLASSIFY_TOL)
    }

    /// Largest entry of `|Σ B Σ⁻¹ − B†|`.
    pub fn pseudo_orthogonality_residual(&self) -> f64 {
        let sigma = sigma_parity(self.blocks.len()).expect("N >= 2");
        let b = self.to_dense();
        sigma.matmul(&b).matmul(&sigma).max_abs_diff(&b.adjoint())
    }
}

/// `Σ = η ⊗ σ_x`: the scalar index-reversal pattern with each 1 replaced by `σ_x`.
pub fn sigma_parity(n: usize) -> Result<DenseMatrix> {
    let eta = generalized_parity(n)?;
    Ok(DenseMatrix::from_fn(2 * n, |i, j| {
        if i % 2 != j % 2 {
            eta.get(i / 2, j / 2)
        } else {
            Complex::new(0.0, 0.0)
        }
    }))
}

/// Eigenvalues of `b` via block-Fourier reduction.
pub fn eigenvalues_block(b: &BlockCirculant) -> Spectrum {
    b.eigenvalues()
}

/// The block `[[a, −b], [c, a]]`.
pub fn gaussian_form(a: f64, b: f64, c: f64) -> Matrix2 {
    Matrix2::real(a, -b, c, a)
}

/// One block circulant with i.i.d. standard-normal `[[a, −b], [c, a]]` blocks.
pub fn sample_gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BlockCirculant> {
    if n < 2 {
        return domain(format!("block circulant needs N >= 2 blocks, got {n}"));
    }
    let mut z = || -> f64 { rng.sample(StandardNormal) };
    BlockCirculant::new((0..n).map(|_| gaussian_form(z(), z(), z())).collect())
}

/// `count` Gaussian-block circulants with `n` blocks.
pub fn sample_gaussian_blocks<'r, R: Rng + ?Sized>(
    n: usize,
    count: usize,
    rng: &'r mut R,
) -> Result<impl Iterator<Item = BlockCirculant> + 'r> {
    if n < 2 {
        return domain(format!("block circulant needs N >= 2 blocks, got {n}"));
    }
    Ok((0..count).map(move |_| sample_gaussian(n, rng).expect("validated")))
}

/// Parameters of the Ising-form blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsingParams {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
}

impl IsingParams {
    /// `A = [[a₁, i a₂], [−i a₂, a₁]]`.
    pub fn onsite(&self) -> Matrix2 {
        Matrix2::new(
            Complex::new(self.a1, 0.0),
            Complex::new(0.0, self.a2),
            Complex::new(0.0, -self.a2),
            Complex::new(self.a1, 0.0),
        )
    }

    /// `B = [[−1/2, i b₁], [i b₂, −1/2]]`.
    pub fn hop(&self) -> Matrix2 {
        Matrix2::new(
            Complex::new(-0.5, 0.0),
            Complex::new(0.0, self.b1),
            Complex::new(0.0, self.b2),
            Complex::new(-0.5, 0.0),
        )
    }
}

/// First block row `(A, B, …, B, B†)` for `n ≥ 3` blocks.
pub fn ising_form(n: usize, params: &IsingParams) -> Result<BlockCirculant> {
    if n < 3 {
        return domain(format!("Ising-form row (A, B, ..., B†) needs N >= 3 blocks, got {n}"));
    }
    let hop = params.hop();
    let mut blocks = vec![hop; n];
    blocks[0] = params.onsite();
    blocks[n - 1] = hop.adjoint();
    BlockCirculant::new(blocks)
}

/// One Ising-form circulant with `a₁, a₂, b₁, b₂ ~ N(0, std²)`.
pub fn sample_ising<R: Rng + ?Sized>(n: usize, std: f64, rng: &mut R) -> Result<BlockCirculant> {
    let dist = match Normal::new(0.0, std) {
        Ok(d) if std > 0.0 => d,
        _ => return domain(format!("Ising parameter std must be positive, got {std}")),
    };
    let params = IsingParams {
        a1: dist.sample(rng),
        a2: dist.sample(rng),
        b1: dist.sample(rng),
        b2: dist.sample(rng),
    };
    ising_form(n, &params)
}

/// `count` Ising-form circulants with `n` blocks and parameter width `std`.
pub fn sample_ising_blocks<'r, R: Rng + ?Sized>(
    n: usize,
    std: f64,
    count: usize,
    rng: &'r mut R,
) -> Result<impl Iterator<Item = BlockCirculant> + 'r> {
    ising_form(n, &IsingParams { a1: 0.0, a2: 0.0, b1: 0.0, b2: 0.0 })?;
    if !(std > 0.0) || !std.is_finite() {
        return domain(format!("Ising parameter std must be positive, got {std}"));
    }
    Ok((0..count).map(move |_| sample_ising(n, std, rng).expect("validated")))
}

/// Which block ensemble to draw from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlockEnsemble {
    Gaussian,
    Ising { std: f64 },
}

/// Spacing classes pooled over `count` seeded block-circulant draws.
pub fn ensemble_spacings(
    ensemble: BlockEnsemble,
    n: usize,
    count: usize,
    seed: u64,
    selection: PairSelection,
) -> Result<ClassifiedSpacings> {
    if count == 0 {
        return domain("ensemble count must be at least 1");
    }
    let draws = par_map(seed, count, |rng| {
        let b = match ensemble {
            BlockEnsemble::Gaussian => sample_gaussian(n, rng)?,
            BlockEnsemble::Ising { std } => sample_ising(n, std, rng)?,
        };
        Ok(classify_spacings_with(&b.eigenvalues(), selection))
    });
    let mut out = ClassifiedSpacings::default();
    for d in draws {
        out.append(d?);
    }
    Ok(out)
}
