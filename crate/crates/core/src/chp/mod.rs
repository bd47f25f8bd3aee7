//! The complex hyperbolic plane as the negative lines of `ℂ^{2,1}`.
//!
//! Coordinates are fixed so that the Hermitian form is `diag(-1, 1, 1)`,
//! linear in the first slot and conjugate-linear in the second.
//!
//! A tangent vector at a non-isotropic point `p` is a linear map
//! `t: ℂp → p^⊥` and is stored as the vector `t(p)` together with the
//! representative `p` it was evaluated at. With this model
//!
//! * `h(s, t) = -⟨s(p), t(p)⟩ / ⟨p, p⟩`, `g = Re h`, `ω = Im h`;
//! * `t*(v) = ⟨v, t(p)⟩ / ⟨p, p⟩ · p`;
//! * `R(t₁, t₂)s = -s t₁† t₂ - t₂ t₁† s + s t₂† t₁ + t₁ t₂† s` with `t† = -t*`
//!   the metric adjoint.
//!
//! With these conventions complex lines have sectional curvature `-4` and
//! totally real planes `-1`.

mod isometry;
mod probe;
pub mod sample;

pub use probe::{curvature_probe, CurvatureProbe, PROBE_SEED};
pub use isometry::{
    classify_isometry, classify_isometry_with_tol, stable_complex_geodesic, EllipticData, FixedLine,
    su21_residuals, Isometry, IsometryClass,
};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default absolute tolerance for algebraic identities on unit-normalized data.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type HVector = Vector3<Complex64>;
pub type HMatrix = Matrix3<Complex64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChpError {
    #[error("zero vector does not define a projective point")]
    ZeroVector,
    #[error("operation needs a non-isotropic base point")]
    IsotropicBase,
    #[error("operation needs a negative point")]
    NonNegativePoint,
    #[error("operation needs a positive point")]
    NonPositivePoint,
    #[error("tangent vectors are based at different representatives")]
    BaseMismatch,
    #[error("vector is not orthogonal to the base point (residual {0:.3e})")]
    NotOrthogonal(f64),
    #[error("tangent vectors span a degenerate real plane")]
    DegeneratePlane,
    #[error("points are projectively coincident")]
    CoincidentPoints,
    #[error("matrix is not in SU(2,1): form residual {form:.3e}, determinant residual {det:.3e}")]
    NotInSU21 { form: f64, det: f64 },
}

pub fn form_matrix() -> HMatrix {
    Matrix3::from_diagonal(&Vector3::new(
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
    ))
}

/// `⟨u, v⟩ = -u₁v̄₁ + u₂v̄₂ + u₃v̄₃`.
pub fn herm(u: &HVector, v: &HVector) -> Complex64 {
    -u[0] * v[0].conj() + u[1] * v[1].conj() + u[2] * v[2].conj()
}

/// Euclidean norm of the coordinate vector, used only to scale tolerances.
pub(crate) fn enorm(v: &HVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    Negative,
    Isotropic,
    Positive,
}

pub fn classify_point(p: &HVector) -> Result<SignClass, ChpError> {
    classify_point_with_tol(p, DEFAULT_TOL)
}

/// Sign of `⟨p, p⟩`, treating `|⟨p, p⟩| ≤ tol·‖p‖²` as isotropic.
pub fn classify_point_with_tol(p: &HVector, tol: f64) -> Result<SignClass, ChpError> {
    let n2 = enorm(p).powi(2);
    if n2 == 0.0 || !n2.is_finite() {
        return Err(ChpError::ZeroVector);
    }
    let q = herm(p, p).re;
    Ok(if q.abs() <= tol * n2 {
        SignClass::Isotropic
    } else if q < 0.0 {
        SignClass::Negative
    } else {
        SignClass::Positive
    })
}

/// A projective point with a chosen representative.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    rep: HVector,
    sign: SignClass,
}

impl HPoint {
    pub fn new(rep: HVector) -> Result<Self, ChpError> {
        let sign = classify_point(&rep)?;
        Ok(HPoint { rep, sign })
    }

    /// Like [`HPoint::new`] but rejects anything that is not in the ball.
    pub fn negative(rep: HVector) -> Result<Self, ChpError> {
        let p = HPoint::new(rep)?;
        if p.sign != SignClass::Negative {
            return Err(ChpError::NonNegativePoint);
        }
        Ok(p)
    }

    /// The point `(1, u, 0)` of the complex geodesic polar to `e₃`.
    pub fn from_disc(u: Complex64) -> Result<Self, ChpError> {
        HPoint::negative(Vector3::new(Complex64::new(1.0, 0.0), u, Complex64::new(0.0, 0.0)))
    }

    pub fn rep(&self) -> &HVector {
        &self.rep
    }

    pub fn sign(&self) -> SignClass {
        self.sign
    }

    /// `⟨p, p⟩` for this representative.
    pub fn norm_sq(&self) -> f64 {
        herm(&self.rep, &self.rep).re
    }

    /// Rescales the representative so that `⟨p, p⟩ = ±1`.
    pub fn normalized(&self) -> HPoint {
        if self.sign == SignClass::Isotropic {
            return self.clone();
        }
        let s = self.norm_sq().abs().sqrt();
        HPoint {
            rep: self.rep * Complex64::new(s.recip(), 0.0),
            sign: self.sign,
        }
    }

    fn require_nonisotropic(&self) -> Result<f64, ChpError> {
        match self.sign {
            SignClass::Isotropic => Err(ChpError::IsotropicBase),
            _ => Ok(self.norm_sq()),
        }
    }

    /// Orthogonal projection `v - ⟨v, p⟩/⟨p, p⟩·p` onto `p^⊥`, as a tangent
    /// vector at this representative.
    pub fn tangent(&self, v: HVector) -> Result<HTangent, ChpError> {
        let pp = self.require_nonisotropic()?;
        let c = herm(&v, &self.rep) / pp;
        Ok(HTangent {
            base: self.clone(),
            vector: v - self.rep * c,
        })
    }

    /// Wraps `v` as a tangent vector, requiring `⟨p, v⟩ ≈ 0` already.
    pub fn tangent_exact(&self, v: HVector) -> Result<HTangent, ChpError> {
        self.require_nonisotropic()?;
        let r = herm(&self.rep, &v).norm();
        if r > DEFAULT_TOL * enorm(&self.rep) * enorm(&v) {
            return Err(ChpError::NotOrthogonal(r));
        }
        Ok(HTangent {
            base: self.clone(),
            vector: v,
        })
    }

    pub fn transformed(&self, m: &HMatrix) -> HPoint {
        HPoint {
            rep: m * self.rep,
            sign: self.sign,
        }
    }
}

/// A tangent vector `t`, stored as `t(p)` for the base representative `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct HTangent {
    base: HPoint,
    vector: HVector,
}

impl HTangent {
    pub fn base(&self) -> &HPoint {
        &self.base
    }

    pub fn vector(&self) -> &HVector {
        &self.vector
    }

    /// `c·t` for a complex scalar `c` (the tangent space is a complex vector
    /// space).
    pub fn scale(&self, c: Complex64) -> HTangent {
        HTangent {
            base: self.base.clone(),
            vector: self.vector * c,
        }
    }

    pub fn add(&self, other: &HTangent) -> Result<HTangent, ChpError> {
        same_base(&self.base, &other.base)?;
        Ok(HTangent {
            base: self.base.clone(),
            vector: self.vector + other.vector,
        })
    }

    /// Push-forward by a linear isometry.
    pub fn transformed(&self, m: &HMatrix) -> HTangent {
        HTangent {
            base: self.base.transformed(m),
            vector: m * self.vector,
        }
    }
}

fn same_base(a: &HPoint, b: &HPoint) -> Result<(), ChpError> {
    let scale = enorm(&a.rep).max(enorm(&b.rep));
    if enorm(&(a.rep - b.rep)) <= 1e-12 * scale {
        Ok(())
    } else {
        Err(ChpError::BaseMismatch)
    }
}

/// Values of the Hermitian metric on a pair of tangent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub h: Complex64,
    pub g: f64,
    pub omega: f64,
}

fn h_value(s: &HTangent, t: &HTangent) -> Complex64 {
    -herm(&s.vector, &t.vector) / s.base.norm_sq()
}

pub fn metric(s: &HTangent, t: &HTangent) -> Result<Metric, ChpError> {
    same_base(&s.base, &t.base)?;
    s.base.require_nonisotropic()?;
    let h = h_value(s, t);
    Ok(Metric {
        h,
        g: h.re,
        omega: h.im,
    })
}

/// Coefficient `λ` with `t*(v) = λ·p`.
fn adjoint_coefficient(t: &HTangent, v: &HVector) -> Complex64 {
    herm(v, &t.vector) / t.base.norm_sq()
}

/// `t*(v) = ⟨v, t(p)⟩ / ⟨p, p⟩ · p`.
pub fn adjoint_apply(t: &HTangent, v: &HVector) -> Result<HVector, ChpError> {
    t.base.require_nonisotropic()?;
    Ok(t.base.rep * adjoint_coefficient(t, v))
}

/// `(x ∘ y† ∘ z)(p) = h(z, y)·x(p)`, where `y†` is the adjoint for the
/// positive-definite metric (the line `ℂp` measured by `-⟨·,·⟩`). This is
/// `-y*` in terms of [`adjoint_apply`]; with `y*` itself the four-term
/// formula below would give curvature `+4` on complex lines.
fn compose(x: &HTangent, y: &HTangent, z: &HTangent) -> HVector {
    x.vector * -adjoint_coefficient(y, &z.vector)
}

/// `R(t₁, t₂)s = -s t₁† t₂ - t₂ t₁† s + s t₂† t₁ + t₁ t₂† s`.
pub fn curvature(t1: &HTangent, t2: &HTangent, s: &HTangent) -> Result<HTangent, ChpError> {
    same_base(&t1.base, &t2.base)?;
    same_base(&t1.base, &s.base)?;
    t1.base.require_nonisotropic()?;
    let v = -compose(s, t1, t2) - compose(t2, t1, s) + compose(s, t2, t1) + compose(t1, t2, s);
    Ok(HTangent {
        base: t1.base.clone(),
        vector: v,
    })
}

/// `K = g(R(t₁, t₂)t₁, t₂) / (g(t₁,t₁)g(t₂,t₂) - g(t₁,t₂)²)`.
///
/// This index order is the one for which complex lines give `-4` and
/// totally real planes give `-1` under the curvature formula above.
pub fn sectional_curvature(t1: &HTangent, t2: &HTangent) -> Result<f64, ChpError> {
    let r = curvature(t1, t2, t1)?;
    let num = metric(&r, t2)?.g;
    let g11 = metric(t1, t1)?.g;
    let g22 = metric(t2, t2)?.g;
    let g12 = metric(t1, t2)?.g;
    let den = g11 * g22 - g12 * g12;
    if den.abs() <= 1e-12 * (g11 * g22).abs() || den == 0.0 {
        return Err(ChpError::DegeneratePlane);
    }
    Ok(num / den)
}

/// An `h`-orthonormal basis of `p^⊥` for a negative `p`.
pub fn tangent_frame(p: &HPoint) -> Result<[HTangent; 2], ChpError> {
    if p.sign != SignClass::Negative {
        return Err(ChpError::NonNegativePoint);
    }
    // Project the coordinate axes and keep the two best-conditioned ones.
    let mut cands: Vec<HTangent> = (0..3)
        .map(|i| {
            let mut e = HVector::zeros();
            e[i] = Complex64::new(1.0, 0.0);
            p.tangent(e)
        })
        .collect::<Result<_, _>>()?;
    cands.sort_by(|a, b| h_value(b, b).re.total_cmp(&h_value(a, a).re));
    let e1 = cands[0].scale(Complex64::new(h_value(&cands[0], &cands[0]).re.sqrt().recip(), 0.0));
    let mut best: Option<HTangent> = None;
    let mut best_norm = 0.0;
    for c in &cands[1..] {
        let v = HTangent {
            base: p.clone(),
            vector: c.vector - e1.vector * h_value(c, &e1),
        };
        let n = h_value(&v, &v).re;
        if n > best_norm {
            best_norm = n;
            best = Some(v);
        }
    }
    let e2 = best.expect("p^⊥ is two-dimensional");
    let e2 = e2.scale(Complex64::new(best_norm.sqrt().recip(), 0.0));
    Ok([e1, e2])
}

/// Trace of the complex-linear endomorphism `v ↦ R(t₁, t₂)v` of `T_p`,
/// computed in an `h`-orthonormal frame.
pub fn curvature_trace(t1: &HTangent, t2: &HTangent) -> Result<Complex64, ChpError> {
    same_base(&t1.base, &t2.base)?;
    let frame = tangent_frame(&t1.base)?;
    let mut tr = Complex64::new(0.0, 0.0);
    for e in &frame {
        let r = curvature(t1, t2, e)?;
        tr += h_value(&r, e);
    }
    Ok(tr)
}

/// Riemannian distance with `cosh² d = ⟨p,q⟩⟨q,p⟩ / (⟨p,p⟩⟨q,q⟩)`.
pub fn distance(p: &HPoint, q: &HPoint) -> Result<f64, ChpError> {
    if p.sign != SignClass::Negative || q.sign != SignClass::Negative {
        return Err(ChpError::NonNegativePoint);
    }
    let pq = herm(&p.rep, &q.rep).norm_sqr();
    let c2 = pq / (p.norm_sq() * q.norm_sq());
    Ok((c2.max(1.0) - 1.0).sqrt().asinh())
}

/// A vector Hermitian-orthogonal to both inputs: `conj(J p₁) × conj(J p₂)`.
/// For two distinct negative points it is positive and spans the polar of
/// the complex geodesic through them.
pub fn polar_of(p1: &HVector, p2: &HVector) -> Result<HVector, ChpError> {
    let a = Vector3::new(-p1[0].conj(), p1[1].conj(), p1[2].conj());
    let b = Vector3::new(-p2[0].conj(), p2[1].conj(), p2[2].conj());
    let c = a.cross(&b);
    if enorm(&c) <= DEFAULT_TOL * enorm(p1) * enorm(p2) {
        return Err(ChpError::CoincidentPoints);
    }
    Ok(c)
}

/// The complex geodesic `P(polar^⊥) ∩ H²_ℂ` of a positive point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGeodesic {
    polar: HVector,
}

impl ComplexGeodesic {
    pub fn polar(&self) -> &HVector {
        &self.polar
    }

    pub fn through(p1: &HPoint, p2: &HPoint) -> Result<Self, ChpError> {
        complex_geodesic_polar(&HPoint::new(polar_of(&p1.rep, &p2.rep)?)?)
    }

    pub fn contains(&self, p: &HVector, tol: f64) -> bool {
        herm(p, &self.polar).norm() <= tol * enorm(p) * enorm(&self.polar)
            && classify_point(p) == Ok(SignClass::Negative)
    }
}

pub fn complex_geodesic_polar(p: &HPoint) -> Result<ComplexGeodesic, ChpError> {
    if p.sign != SignClass::Positive {
        return Err(ChpError::NonPositivePoint);
    }
    Ok(ComplexGeodesic { polar: p.rep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn v(a: Complex64, b: Complex64, d: Complex64) -> HVector {
        Vector3::new(a, b, d)
    }

    fn e(i: usize) -> HVector {
        let mut x = HVector::zeros();
        x[i] = c(1.0, 0.0);
        x
    }

    const I: Complex64 = Complex64::new(0.0, 1.0);

    #[test]
    fn form_signature() {
        assert_eq!(herm(&e(0), &e(0)), c(-1.0, 0.0));
        assert_eq!(herm(&e(1), &e(1)), c(1.0, 0.0));
        let iso = v(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(herm(&iso, &iso), c(0.0, 0.0));
        // linear in the first slot, conjugate-linear in the second
        assert_eq!(herm(&(e(1) * I), &e(1)), I);
        assert_eq!(herm(&e(1), &(e(1) * I)), -I);
    }

    #[test]
    fn point_classes() {
        assert_eq!(classify_point(&e(0)), Ok(SignClass::Negative));
        assert_eq!(classify_point(&e(1)), Ok(SignClass::Positive));
        assert_eq!(
            classify_point(&v(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))),
            Ok(SignClass::Isotropic)
        );
        assert_eq!(classify_point(&HVector::zeros()), Err(ChpError::ZeroVector));
    }

    #[test]
    fn metric_examples() {
        let p = HPoint::new(e(0)).unwrap();
        let s = p.tangent(e(1)).unwrap();
        assert_eq!(metric(&s, &s).unwrap().h, c(1.0, 0.0));
        // -⟨s,t⟩/⟨p,p⟩ = -(1·conj(i))/(-1) = -i
        let t = p.tangent(e(1) * I).unwrap();
        let m = metric(&s, &t).unwrap();
        assert_abs_diff_eq!(m.omega, -1.0);
        assert_abs_diff_eq!(m.g, 0.0);
        let n = p.tangent(e(2)).unwrap();
        assert_eq!(metric(&s, &n).unwrap().h, c(0.0, 0.0));

        let iso = HPoint::new(v(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!(iso.tangent(e(2)), Err(ChpError::IsotropicBase));
    }

    #[test]
    fn adjoint_examples() {
        let p = HPoint::new(e(0)).unwrap();
        let t = p.tangent(e(1)).unwrap();
        assert_eq!(adjoint_apply(&t, &e(2)).unwrap(), HVector::zeros());
        assert_eq!(adjoint_apply(&t, &e(1)).unwrap(), e(0) * c(-1.0, 0.0));
        let lam = c(0.3, -2.0);
        let w = v(c(0.0, 0.0), c(0.5, 0.1), c(-0.2, 0.7));
        let lhs = adjoint_apply(&t, &(w * lam)).unwrap();
        let rhs = adjoint_apply(&t, &w).unwrap() * lam;
        assert_abs_diff_eq!(enorm(&(lhs - rhs)), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn curvature_anchors() {
        let p = HPoint::new(e(0)).unwrap();
        let t = p.tangent(e(1)).unwrap();
        let n = p.tangent(e(2)).unwrap();
        assert_eq!(curvature(&t, &t, &n).unwrap().vector(), &HVector::zeros());
        let rtn_t = curvature(&t, &n, &t).unwrap();
        assert_abs_diff_eq!(enorm(&(rtn_t.vector() + n.vector())), 0.0, epsilon = 1e-15);
        let rtn_n = curvature(&t, &n, &n).unwrap();
        assert_abs_diff_eq!(enorm(&(rtn_n.vector() - t.vector())), 0.0, epsilon = 1e-15);
        let it = t.scale(I);
        let r = curvature(&t, &it, &t).unwrap();
        assert_abs_diff_eq!(enorm(&(r.vector() - t.vector() * c(0.0, -4.0))), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sectional_anchors() {
        let p = HPoint::new(e(0)).unwrap();
        let t = p.tangent(e(1)).unwrap();
        let n = p.tangent(e(2)).unwrap();
        assert_abs_diff_eq!(sectional_curvature(&t, &t.scale(I)).unwrap(), -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sectional_curvature(&t, &n).unwrap(), -1.0, epsilon = 1e-12);
        assert_eq!(
            sectional_curvature(&t, &t.scale(c(2.0, 0.0))),
            Err(ChpError::DegeneratePlane)
        );
    }

    #[test]
    fn trace_examples() {
        let p = HPoint::from_disc(c(0.3, -0.2)).unwrap().normalized();
        let t = p.tangent(e(1)).unwrap();
        let t = t.scale(c(metric(&t, &t).unwrap().g.sqrt().recip(), 0.0));
        assert_abs_diff_eq!(curvature_trace(&t, &t).unwrap().norm(), 0.0, epsilon = 1e-12);
        let it = t.scale(I);
        let tr = curvature_trace(&t, &it).unwrap();
        let om = metric(&t, &it).unwrap().omega;
        assert!((tr - I * 6.0 * om).norm() <= 1e-9);
        // totally real orthonormal pair at the origin
        let o = HPoint::new(e(0)).unwrap();
        let tr = curvature_trace(&o.tangent(e(1)).unwrap(), &o.tangent(e(2)).unwrap()).unwrap();
        assert_abs_diff_eq!(tr.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn distance_examples() {
        let p = HPoint::new(e(0)).unwrap();
        assert_eq!(distance(&p, &p).unwrap(), 0.0);
        for r in [0.1, 0.5, 0.9] {
            let q = HPoint::from_disc(c(r, 0.0)).unwrap();
            assert_abs_diff_eq!(distance(&p, &q).unwrap(), f64::atanh(r), epsilon = 1e-12);
        }
        let pos = HPoint::new(e(1)).unwrap();
        assert_eq!(distance(&p, &pos), Err(ChpError::NonNegativePoint));
    }

    #[test]
    fn distance_matches_arclength_of_metric() {
        // integrate the speed of x ↦ (1, x, 0) under g with composite Simpson
        let r = 0.7;
        let speed = |x: f64| {
            let p = HPoint::from_disc(c(x, 0.0)).unwrap();
            let d = p.tangent(e(1)).unwrap();
            metric(&d, &d).unwrap().g.sqrt()
        };
        let n = 2000;
        let h = r / n as f64;
        let mut acc = speed(0.0) + speed(r);
        for k in 1..n {
            acc += speed(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let arclength = acc * h / 3.0;
        let q = HPoint::from_disc(c(r, 0.0)).unwrap();
        let d = distance(&HPoint::new(e(0)).unwrap(), &q).unwrap();
        assert_abs_diff_eq!(arclength, d, epsilon = 1e-10);
    }

    #[test]
    fn polar_examples() {
        let p1 = e(0);
        let p2 = v(c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0));
        let pol = polar_of(&p1, &p2).unwrap();
        assert_abs_diff_eq!(pol[0].norm() + pol[1].norm(), 0.0);
        assert!(pol[2].norm() > 0.0);
        let rev = polar_of(&p2, &p1).unwrap();
        // projectively equal: the cross product only flips sign
        assert_abs_diff_eq!(enorm(&(rev + pol)), 0.0);
        assert_eq!(polar_of(&p1, &(p1 * c(0.0, 3.0))), Err(ChpError::CoincidentPoints));

        let a = HPoint::new(p1).unwrap();
        let b = HPoint::new(p2).unwrap();
        let geo = ComplexGeodesic::through(&a, &b).unwrap();
        assert!(geo.contains(&p1, 1e-12) && geo.contains(&p2, 1e-12));
        assert_eq!(
            complex_geodesic_polar(&a),
            Err(ChpError::NonPositivePoint)
        );
    }

    #[test]
    fn tangent_frame_is_orthonormal() {
        let p = HPoint::from_disc(c(-0.4, 0.5)).unwrap();
        let [a, b] = tangent_frame(&p).unwrap();
        assert_abs_diff_eq!(metric(&a, &a).unwrap().h.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(metric(&b, &b).unwrap().h.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(metric(&a, &b).unwrap().h.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn base_mismatch_is_reported() {
        let p = HPoint::new(e(0)).unwrap();
        let q = HPoint::from_disc(c(0.2, 0.0)).unwrap();
        let s = p.tangent(e(1)).unwrap();
        let t = q.tangent(e(1)).unwrap();
        assert_eq!(metric(&s, &t), Err(ChpError::BaseMismatch));
        assert_eq!(curvature(&s, &s, &t).map(|_| ()), Err(ChpError::BaseMismatch));
    }
}
