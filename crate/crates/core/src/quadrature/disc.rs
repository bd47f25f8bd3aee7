//! The curvature −4 Poincaré disc, embedded in the complex hyperbolic plane
//! as `u ↦ (1, u, 0)`, and its isometry group SU(1,1).
//!
//! A matrix `A` acts on `(1, u)` as a column vector, so
//! `A·u = (A₂₁ + A₂₂u) / (A₁₁ + A₁₂u)`. This is the same action as
//! `diag(A, 1)` on the embedded disc.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuadratureError;
use crate::chp::{metric, HPoint, HVector};

pub type Mat2 = Matrix2<Complex64>;

/// Points closer than this to the unit circle are rejected.
pub const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(u: Complex64) -> Result<Self, QuadratureError> {
        if u.norm().is_nan() || u.norm() >= 1.0 - BOUNDARY_EPS {
            return Err(QuadratureError::OutsideDisc(u));
        }
        Ok(DiscPoint(u))
    }

    pub fn origin() -> Self {
        DiscPoint(Complex64::new(0.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn lift(&self) -> HVector {
        HVector::new(Complex64::new(1.0, 0.0), self.0, Complex64::new(0.0, 0.0))
    }
}

impl TryFrom<Complex64> for DiscPoint {
    type Error = QuadratureError;

    fn try_from(u: Complex64) -> Result<Self, Self::Error> {
        DiscPoint::new(u)
    }
}

impl From<DiscPoint> for Complex64 {
    fn from(p: DiscPoint) -> Complex64 {
        p.0
    }
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

pub fn mobius(a: &Mat2, u: Complex64) -> Complex64 {
    (a[(1, 0)] + a[(1, 1)] * u) / (a[(0, 0)] + a[(0, 1)] * u)
}

/// `|d(A·u)/du|²`, the area scaling of the Euclidean disc coordinate; for
/// `det A = 1` the derivative is `(A₁₁ + A₁₂u)⁻²`.
pub fn mobius_jacobian(a: &Mat2, u: Complex64) -> f64 {
    let d = a.determinant();
    (d / (a[(0, 0)] + a[(0, 1)] * u).powi(2)).norm_sqr()
}

/// Inverse of a determinant-one matrix (its adjugate).
pub fn su11_inverse(a: &Mat2) -> Mat2 {
    Mat2::new(a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)])
}

/// `(‖A*JA - J‖_F, |det A - 1|)`.
pub fn su11_residuals(a: &Mat2) -> (f64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let j = Mat2::new(-one, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), one);
    let form = (a.adjoint() * j * a - j).norm();
    let det = (a.determinant() - one).norm();
    (form, det)
}

/// Rotation `u ↦ e^{iθ}u` about the origin.
pub fn rotation(theta: f64) -> Mat2 {
    let z = Complex64::new(0.0, 0.0);
    Mat2::new(cis(-theta / 2.0), z, z, cis(theta / 2.0))
}

/// Translation along the real diameter moving `0` to `tanh d`, i.e. by
/// curvature −4 distance `d`.
pub fn boost(d: f64) -> Mat2 {
    let (c, s) = (Complex64::new(d.cosh(), 0.0), Complex64::new(d.sinh(), 0.0));
    Mat2::new(c, s, s, c)
}

/// The transvection `u ↦ (c + u)/(1 + c̄u)` taking `0` to `c`.
pub fn translation_to(c: Complex64) -> Mat2 {
    let k = Complex64::new((1.0 - c.norm_sqr()).sqrt().recip(), 0.0);
    let one = Complex64::new(1.0, 0.0);
    Mat2::new(one, c.conj(), c, one) * k
}

/// Rotation by `theta` about the point `c`.
pub fn rotation_about(c: Complex64, theta: f64) -> Mat2 {
    let t = translation_to(c);
    t * rotation(theta) * su11_inverse(&t)
}

/// Curvature −4 distance: `tanh d = |u - v| / |1 - ū v|`.
pub fn disc_distance(u: Complex64, v: Complex64) -> f64 {
    ((u - v) / (Complex64::new(1.0, 0.0) - u.conj() * v)).norm().atanh()
}

/// Angle at `v` between the geodesics towards `a` and `b`, in `[0, π]`.
pub fn geodesic_angle(v: Complex64, a: Complex64, b: Complex64) -> f64 {
    let back = su11_inverse(&translation_to(v));
    let (a, b) = (mobius(&back, a), mobius(&back, b));
    (b / a).arg().abs()
}

/// Area density `w(u)` with `dA = w(u) dx∧dy`, read off from the metric of
/// the complex hyperbolic plane along the embedded disc.
pub fn area_density(u: Complex64) -> f64 {
    let p = match HPoint::from_disc(u) {
        Ok(p) => p,
        Err(_) => return f64::NAN,
    };
    let dx = HVector::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let dy = HVector::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0));
    let (Ok(s), Ok(t)) = (p.tangent(dx), p.tangent(dy)) else {
        return f64::NAN;
    };
    let (g11, g22, g12) = match (metric(&s, &s), metric(&t, &t), metric(&s, &t)) {
        (Ok(a), Ok(b), Ok(c)) => (a.g, b.g, c.g),
        _ => return f64::NAN,
    };
    (g11 * g22 - g12 * g12).sqrt()
}
