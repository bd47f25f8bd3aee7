//! Representations of an orbifold fundamental group into PU(2,1), given by
//! matrices for a Fuchsian presentation and their SU(2,1) images.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chp::{form_matrix, su21_residuals, HMatrix};
use crate::json;
use crate::orbifold::OrbifoldSignature;
use crate::quadrature::{su11_inverse, su11_residuals, Mat2};

/// A word in the generators: `k > 0` is generator `k - 1`, `-k` its inverse.
/// Words multiply left to right as matrices.
pub type Word = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    /// Action on the disc, in SU(1,1).
    #[serde(with = "json::mat2")]
    pub source: Mat2,
    /// Image in SU(2,1); defined up to a cube root of unity.
    #[serde(with = "json::mat3")]
    pub target: HMatrix,
}

/// The word whose image is the rotation around a cone point of order `order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeWord {
    pub word: Word,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationData {
    pub signature: OrbifoldSignature,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relators: Vec<Word>,
    #[serde(default)]
    pub cone_assignment: Vec<ConeWord>,
}

fn letter(k: i64, n: usize) -> Option<(usize, bool)> {
    let idx = k.unsigned_abs() as usize;
    (k != 0 && idx <= n).then(|| (idx - 1, k < 0))
}

/// `M⁻¹ = J M* J`, valid for form-preserving matrices.
pub(crate) fn su21_inverse(m: &HMatrix) -> HMatrix {
    let j = form_matrix();
    j * m.adjoint() * j
}

impl RepresentationData {
    /// Product of the sources along `word`, or `None` for an out-of-range
    /// letter.
    pub fn eval_source(&self, word: &[i64]) -> Option<Mat2> {
        let n = self.generators.len();
        word.iter().try_fold(Mat2::identity(), |acc, &k| {
            let (i, inv) = letter(k, n)?;
            let g = &self.generators[i].source;
            Some(acc * if inv { su11_inverse(g) } else { *g })
        })
    }

    pub fn eval_target(&self, word: &[i64]) -> Option<HMatrix> {
        let n = self.generators.len();
        word.iter().try_fold(HMatrix::identity(), |acc, &k| {
            let (i, inv) = letter(k, n)?;
            let g = &self.generators[i].target;
            Some(acc * if inv { su21_inverse(g) } else { *g })
        })
    }

    pub fn targets(&self) -> Vec<HMatrix> {
        self.generators.iter().map(|g| g.target).collect()
    }

    /// Every target replaced by `C M C⁻¹`.
    pub fn conjugated(&self, c: &HMatrix) -> RepresentationData {
        let cinv = su21_inverse(c);
        let mut out = self.clone();
        for g in &mut out.generators {
            g.target = c * g.target * cinv;
        }
        out
    }

    /// Every target replaced by its complex conjugate, the image under the
    /// antiholomorphic involution `z ↦ z̄` of `ℂ^{2,1}`.
    pub fn conjugate_targets(&self) -> RepresentationData {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.target = g.target.map(|z| z.conj());
        }
        out
    }
}

/// One failed constraint with its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintFailure {
    pub constraint: String,
    pub index: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tol: f64,
    pub source_form: f64,
    pub source_det: f64,
    pub target_form: f64,
    pub target_det: f64,
    /// Distance of relator sources from `±I`.
    pub source_relators: f64,
    /// Distance of relator targets from the center.
    pub target_relators: f64,
    /// Distance of `cone word^m` targets from the center.
    pub cone_words: f64,
    pub failures: Vec<ConstraintFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `min_{ω³ = 1} ‖M - ωI‖_F`, relative to `max(1, ‖M‖)`.
pub fn central_residual(m: &HMatrix) -> f64 {
    let scale = m.norm().max(1.0);
    (0..3)
        .map(|k| {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            (m - HMatrix::identity() * w).norm()
        })
        .fold(f64::INFINITY, f64::min)
        / scale
}

fn pm_identity_residual(m: &Mat2) -> f64 {
    let scale = m.norm().max(1.0);
    (m - Mat2::identity()).norm().min((m + Mat2::identity()).norm()) / scale
}

/// Checks that sources lie in SU(1,1) and targets in SU(2,1), that relators
/// hold (sources up to `±I`, targets up to the center), that each cone word
/// has finite order `m` up to the center, and that the cone orders match the
/// signature.
pub fn validate_representation(rep: &RepresentationData, tol: f64) -> ValidationReport {
    let mut failures = Vec::new();
    let mut fail = |constraint: &str, index: usize, residual: f64| {
        failures.push(ConstraintFailure {
            constraint: constraint.to_owned(),
            index,
            residual,
        })
    };
    let mut report = ValidationReport {
        tol,
        source_form: 0.0,
        source_det: 0.0,
        target_form: 0.0,
        target_det: 0.0,
        source_relators: 0.0,
        target_relators: 0.0,
        cone_words: 0.0,
        failures: Vec::new(),
    };
    for (i, g) in rep.generators.iter().enumerate() {
        let (f, d) = su11_residuals(&g.source);
        report.source_form = report.source_form.max(f);
        report.source_det = report.source_det.max(d);
        if f > tol || d > tol || !f.is_finite() || !d.is_finite() {
            fail("source in SU(1,1)", i, f.max(d));
        }
        let (f, d) = su21_residuals(&g.target);
        report.target_form = report.target_form.max(f);
        report.target_det = report.target_det.max(d);
        if f > tol || d > tol || !f.is_finite() || !d.is_finite() {
            fail("target in SU(2,1)", i, f.max(d));
        }
    }
    for (i, w) in rep.relators.iter().enumerate() {
        match (rep.eval_source(w), rep.eval_target(w)) {
            (Some(s), Some(t)) => {
                let rs = pm_identity_residual(&s);
                let rt = central_residual(&t);
                report.source_relators = report.source_relators.max(rs);
                report.target_relators = report.target_relators.max(rt);
                if rs > tol {
                    fail("source relator is ±I", i, rs);
                }
                if rt > tol {
                    fail("target relator is central", i, rt);
                }
            }
            _ => fail("relator letters in range", i, f64::INFINITY),
        }
    }
    for (i, c) in rep.cone_assignment.iter().enumerate() {
        let Some(t) = rep.eval_target(&c.word) else {
            fail("cone word letters in range", i, f64::INFINITY);
            continue;
        };
        let s = rep.eval_source(&c.word).expect("same letters");
        let tm = (0..c.order).fold(HMatrix::identity(), |acc, _| acc * t);
        let sm = (0..c.order).fold(Mat2::identity(), |acc, _| acc * s);
        let r = central_residual(&tm).max(pm_identity_residual(&sm));
        report.cone_words = report.cone_words.max(r);
        if r > tol {
            fail("cone word has finite order", i, r);
        }
    }
    let mut assigned: Vec<u64> = rep.cone_assignment.iter().map(|c| c.order).collect();
    assigned.sort_unstable();
    if assigned != rep.signature.cone_orders() {
        fail("cone orders match signature", 0, f64::INFINITY);
    }
    report.failures = failures;
    report
}
