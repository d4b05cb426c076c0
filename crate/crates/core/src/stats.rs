//! Empirical-distribution utilities: unit-mean normalization, histograms,
//! Kolmogorov–Smirnov distances and tabulated CDFs for laws without an
//! elementary antiderivative.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::spectrum::SpacingSample;

/// Sum with pairwise (cascade) reduction to bound round-off growth.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Divides every value by the sample mean.
pub fn normalize_unit_mean(sample: &SpacingSample) -> Result<SpacingSample> {
    if sample.is_empty() {
        return domain("cannot normalize an empty sample");
    }
    let mean = sample.mean();
    if !(mean > 0.0) || !mean.is_finite() {
        return domain(format!("cannot normalize a sample with mean {mean}"));
    }
    Ok(SpacingSample {
        class: sample.class,
        values: sample.values.iter().map(|v| v / mean).collect(),
        normalized: true,
    })
}

/// Outcome of a Kolmogorov–Smirnov comparison against an analytic CDF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks_distance: f64,
    pub n: usize,
    pub pass_threshold: f64,
    pub passed: bool,
}

impl GofReport {
    pub fn new(ks_distance: f64, n: usize, pass_threshold: f64) -> Self {
        Self { ks_distance, n, pass_threshold, passed: ks_distance < pass_threshold }
    }
}

/// Sup-distance between the empirical CDF of an ascending `sample` and `cdf`.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.is_empty() {
        return domain("ks_distance of an empty sample");
    }
    if sample.windows(2).any(|w| !(w[0] <= w[1])) {
        return domain("ks_distance requires an ascending sample");
    }
    let n = sample.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sample.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// KS distance with a caller-supplied pass threshold.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64, threshold: f64) -> Result<GofReport> {
    Ok(GofReport::new(ks_distance(sample, cdf)?, sample.len(), threshold))
}

/// Two-sample KS distance; inputs need not be sorted.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return domain("ks_two_sample needs two nonempty samples");
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Sorts a copy of `values` ascending.
pub fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Fixed-edge histogram with half-open bins `[e_i, e_{i+1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// All samples seen, including those outside the edges.
    pub total: u64,
    pub underflow: u64,
    pub overflow: u64,
    pub density_mode: bool,
}

/// `bins + 1` equally spaced edges on `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    (0..=bins)
        .map(|i| lo + (hi - lo) * i as f64 / bins as f64)
        .collect()
}

pub fn histogram(sample: &[f64], edges: &[f64]) -> Result<Histogram> {
    let mut h = Histogram::empty(edges.to_vec())?;
    h.add_all(sample);
    Ok(h)
}

impl Histogram {
    pub fn empty(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return domain("histogram needs at least two edges");
        }
        if edges.windows(2).any(|w| !(w[0] < w[1])) {
            return domain("histogram edges must be strictly increasing");
        }
        let bins = edges.len() - 1;
        Ok(Self {
            edges,
            counts: vec![0; bins],
            total: 0,
            underflow: 0,
            overflow: 0,
            density_mode: false,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        if x < self.edges[0] {
            self.underflow += 1;
            return;
        }
        let idx = self.edges.partition_point(|&e| e <= x);
        if idx == 0 || idx > self.bins() || x.is_nan() {
            self.overflow += 1;
        } else {
            self.counts[idx - 1] += 1;
        }
    }

    pub fn add_all(&mut self, sample: &[f64]) {
        for &x in sample {
            self.add(x);
        }
    }

    /// Combines two histograms with identical edges.
    pub fn merge(&self, other: &Histogram) -> Result<Histogram> {
        if self.edges != other.edges {
            return domain("cannot merge histograms with different edges");
        }
        let mut out = self.clone();
        for (a, b) in out.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        out.total += other.total;
        out.underflow += other.underflow;
        out.overflow += other.overflow;
        Ok(out)
    }

    pub fn with_density(mut self) -> Self {
        self.density_mode = true;
        self
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `count / (total · width)` per bin.
    pub fn densities(&self) -> Vec<f64> {
        if self.total == 0 {
            return vec![0.0; self.bins()];
        }
        self.counts
            .iter()
            .zip(self.widths())
            .map(|(&c, w)| c as f64 / (self.total as f64 * w))
            .collect()
    }

    /// Densities in density mode, raw counts otherwise.
    pub fn values(&self) -> Vec<f64> {
        if self.density_mode {
            self.densities()
        } else {
            self.counts.iter().map(|&c| c as f64).collect()
        }
    }

    pub fn in_range_fraction(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.iter().sum::<u64>() as f64 / self.total as f64
    }
}

// Gauss–Kronrod 7/15 nodes and weights.
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = K15_WEIGHTS[7] * fc;
    let mut gauss = G7_WEIGHTS[3] * fc;
    for i in 0..7 {
        let x = h * GK_NODES[i];
        let s = f(c - x) + f(c + x);
        kronrod += K15_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += G7_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod quadrature of `f` over a finite `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol.max(1e-15 * val.abs()) || depth == 0 {
            return val;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth - 1) + recurse(f, m, b, 0.5 * tol, depth - 1)
    }
    recurse(&f, a, b, tol, 40)
}

/// CDF tabulated by integrating a density on `[0, upper]`.
///
/// Nodes are spaced quadratically (dense near the origin) and values between
/// nodes come from cubic Hermite interpolation using the density as the
/// slope, limited Fritsch–Carlson style so the result is monotone.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedCdf {
    pub const DEFAULT_POINTS: usize = 2048;

    pub fn from_pdf(pdf: impl Fn(f64) -> f64, upper: f64, points: usize) -> Result<Self> {
        if !(upper > 0.0) || points < 2 {
            return domain("tabulated CDF needs upper > 0 and at least two points");
        }
        let nodes: Vec<f64> = (0..points)
            .map(|i| {
                let u = i as f64 / (points - 1) as f64;
                upper * u * u
            })
            .collect();
        let mut values = Vec::with_capacity(points);
        let mut acc = 0.0;
        values.push(0.0);
        for w in nodes.windows(2) {
            acc += integrate(&pdf, w[0], w[1], 1e-15);
            values.push(acc);
        }
        let slopes = nodes.iter().map(|&x| pdf(x)).collect();
        Ok(Self { nodes, values, slopes })
    }

    pub fn upper(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Integral of the density over the tabulated range.
    pub fn total_mass(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        if x >= self.upper() {
            return self.total_mass().min(1.0);
        }
        let k = self.nodes.partition_point(|&n| n <= x) - 1;
        let (x0, x1) = (self.nodes[k], self.nodes[k + 1]);
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let h = x1 - x0;
        let delta = (y1 - y0) / h;
        let (mut m0, mut m1) = (self.slopes[k], self.slopes[k + 1]);
        if delta <= 0.0 {
            m0 = 0.0;
            m1 = 0.0;
        } else {
            let (a, b) = (m0 / delta, m1 / delta);
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                m0 = tau * a * delta;
                m1 = tau * b * delta;
            }
        }
        let t = (x - x0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let rise = (y1 - y0) * (3.0 * t2 - 2.0 * t3) + h * (m0 * (t3 - 2.0 * t2 + t) + m1 * (t3 - t2));
        (y0 + rise).clamp(y0, y1).min(1.0)
    }
}
