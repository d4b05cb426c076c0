//! Spectra with real / conjugate-pair classification and the three spacing
//! classes built from them.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun::Complex;

/// How an eigenvalue relates to the rest of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EigenClass {
    Real,
    /// Member of a complex-conjugate pair; holds the partner's index.
    ConjPair(usize),
    /// Complex with no conjugate partner in the spectrum.
    Complex,
}

/// Eigenvalues in index order together with their classification.
///
/// Indices are 0-based in storage; index `k` corresponds to `l = k + 1` in
/// the circulant eigenvalue formula.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigs: Vec<Complex>,
    pub classes: Vec<EigenClass>,
}

impl Spectrum {
    /// Classifies by numerical conjugate matching.
    ///
    /// An eigenvalue is real when `|Im| <= tol · scale`; complex values are
    /// greedily paired with the closest unpaired `conj` partner within the same
    /// tolerance. `scale` is `max(1, max |E|)`.
    pub fn classify_numeric(eigs: Vec<Complex>, rel_tol: f64) -> Self {
        let scale = eigs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = rel_tol * scale;
        let n = eigs.len();
        let mut classes = vec![EigenClass::Complex; n];
        for (k, z) in eigs.iter().enumerate() {
            if z.im.abs() <= tol {
                classes[k] = EigenClass::Real;
            }
        }
        for i in 0..n {
            if classes[i] != EigenClass::Complex {
                continue;
            }
            let target = eigs[i].conj();
            let best = (0..n)
                .filter(|&j| j != i && classes[j] == EigenClass::Complex)
                .map(|j| (j, (eigs[j] - target).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((j, d)) = best {
                if d <= tol {
                    classes[i] = EigenClass::ConjPair(j);
                    classes[j] = EigenClass::ConjPair(i);
                }
            }
        }
        Self { eigs, classes }
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    pub fn real_count(&self) -> usize {
        self.classes.iter().filter(|c| **c == EigenClass::Real).count()
    }

    /// Checks that every pair tag points back at its partner and the partner is the conjugate.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        self.classes.iter().enumerate().all(|(i, c)| match *c {
            EigenClass::Real => self.eigs[i].im.abs() <= tol,
            EigenClass::ConjPair(j) => {
                self.classes[j] == EigenClass::ConjPair(i)
                    && (self.eigs[i] - self.eigs[j].conj()).norm() <= tol
            }
            EigenClass::Complex => false,
        })
    }
}

/// Spacing class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacingClass {
    /// Conjugate pair `|E − E*|`.
    Cc,
    /// Real to complex.
    Rc,
    /// Two complex eigenvalues that are not conjugate partners.
    Generic,
    /// Two real eigenvalues (the 2×2 real sector).
    Real,
}

impl SpacingClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Cc => "cc",
            Self::Rc => "rc",
            Self::Generic => "generic",
            Self::Real => "real",
        }
    }
}

/// Scalar spacings of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingSample {
    pub class: SpacingClass,
    pub values: Vec<f64>,
    pub normalized: bool,
}

impl SpacingSample {
    pub fn new(class: SpacingClass, values: Vec<f64>) -> Self {
        Self { class, values, normalized: false }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        crate::stats::pairwise_sum(&self.values) / self.values.len() as f64
    }

    /// Appends another sample of the same class.
    pub fn extend(&mut self, other: &SpacingSample) -> Result<()> {
        if other.class != self.class || other.normalized != self.normalized {
            return domain("cannot merge spacing samples of different class or normalization");
        }
        self.values.extend_from_slice(&other.values);
        Ok(())
    }
}

/// How rc and generic spacings are collected from a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSelection {
    /// Every qualifying unordered pair once.
    #[default]
    AllPairs,
    /// For each eigenvalue, only its nearest qualifying partner.
    NearestNeighbor,
}

/// The three spacing classes of one or more spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedSpacings {
    pub cc: SpacingSample,
    pub rc: SpacingSample,
    pub generic: SpacingSample,
}

impl Default for ClassifiedSpacings {
    fn default() -> Self {
        Self {
            cc: SpacingSample::new(SpacingClass::Cc, Vec::new()),
            rc: SpacingSample::new(SpacingClass::Rc, Vec::new()),
            generic: SpacingSample::new(SpacingClass::Generic, Vec::new()),
        }
    }
}

impl ClassifiedSpacings {
    pub fn append(&mut self, other: ClassifiedSpacings) {
        self.cc.values.extend(other.cc.values);
        self.rc.values.extend(other.rc.values);
        self.generic.values.extend(other.generic.values);
    }

    pub fn get(&self, class: SpacingClass) -> Option<&SpacingSample> {
        match class {
            SpacingClass::Cc => Some(&self.cc),
            SpacingClass::Rc => Some(&self.rc),
            SpacingClass::Generic => Some(&self.generic),
            SpacingClass::Real => None,
        }
    }
}

/// Splits the Euclidean eigenvalue distances of `spec` into cc, rc and generic.
///
/// cc holds `|E − E*|` once per conjugate pair; rc holds `|E_real − E|` for every
/// real/complex combination; generic holds `|E_l − E_m|` for complex pairs that
/// are not each other's conjugate. No distance is counted twice.
pub fn classify_spacings(spec: &Spectrum) -> ClassifiedSpacings {
    classify_spacings_with(spec, PairSelection::AllPairs)
}

pub fn classify_spacings_with(spec: &Spectrum, selection: PairSelection) -> ClassifiedSpacings {
    let mut out = ClassifiedSpacings::default();
    let reals: Vec<usize> = (0..spec.len())
        .filter(|&k| spec.classes[k] == EigenClass::Real)
        .collect();
    let complex: Vec<usize> = (0..spec.len())
        .filter(|&k| spec.classes[k] != EigenClass::Real)
        .collect();
    let partner = |k: usize| match spec.classes[k] {
        EigenClass::ConjPair(j) => Some(j),
        _ => None,
    };

    for &k in &complex {
        if let Some(j) = partner(k) {
            if k < j {
                out.cc.values.push((spec.eigs[k] - spec.eigs[j]).norm());
            }
        }
    }

    match selection {
        PairSelection::AllPairs => {
            for &r in &reals {
                for &k in &complex {
                    out.rc.values.push((spec.eigs[r] - spec.eigs[k]).norm());
                }
            }
            for (a, &k) in complex.iter().enumerate() {
                for &m in &complex[a + 1..] {
                    if partner(k) != Some(m) {
                        out.generic.values.push((spec.eigs[k] - spec.eigs[m]).norm());
                    }
                }
            }
        }
        PairSelection::NearestNeighbor => {
            let nearest = |k: usize, candidates: &mut dyn Iterator<Item = usize>| {
                candidates
                    .map(|m| (spec.eigs[k] - spec.eigs[m]).norm())
                    .min_by(f64::total_cmp)
            };
            for &k in &complex {
                if let Some(d) = nearest(k, &mut reals.iter().copied()) {
                    out.rc.values.push(d);
                }
                let mut others = complex
                    .iter()
                    .copied()
                    .filter(|&m| m != k && partner(k) != Some(m));
                if let Some(d) = nearest(k, &mut others) {
                    out.generic.values.push(d);
                }
            }
        }
    }
    out
}
