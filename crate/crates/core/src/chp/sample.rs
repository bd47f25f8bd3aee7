//! Seeded random points, tangent vectors and group elements, used by tests,
//! audits and the curvature probe.

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use rand::Rng;

use super::{HMatrix, HPoint, HTangent, HVector};

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// A point `(1, z₁, z₂)` with `|z| ≤ max_radius < 1`, uniform in the
/// Euclidean ball of that radius.
pub fn random_ball_point<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> HPoint {
    assert!((0.0..1.0).contains(&max_radius));
    loop {
        let z1 = random_complex(rng);
        let z2 = random_complex(rng);
        let r2 = z1.norm_sqr() + z2.norm_sqr();
        if r2 <= 1.0 {
            let v = HVector::new(Complex64::new(1.0, 0.0), z1 * max_radius, z2 * max_radius);
            return HPoint::negative(v).expect("inside the ball");
        }
    }
}

pub fn random_tangent<R: Rng + ?Sized>(rng: &mut R, p: &HPoint) -> HTangent {
    loop {
        let v = HVector::new(random_complex(rng), random_complex(rng), random_complex(rng));
        if let Ok(t) = p.tangent(v) {
            if super::enorm(t.vector()) > 1e-3 {
                return t;
            }
        }
    }
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// A random element of U(2).
pub fn random_u2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    let (a, b) = loop {
        let a = random_complex(rng);
        let b = random_complex(rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n > 1e-3 && n <= 1.0 {
            break (a / n, b / n);
        }
    };
    let phase = cis(rng.random_range(0.0..std::f64::consts::TAU));
    Matrix2::new(a, -b.conj(), b, a.conj()) * phase
}

fn su11_rotation(theta: f64) -> Matrix2<Complex64> {
    Matrix2::new(cis(-theta / 2.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), cis(theta / 2.0))
}

fn su11_boost(d: f64) -> Matrix2<Complex64> {
    let (c, s) = (Complex64::new(d.cosh(), 0.0), Complex64::new(d.sinh(), 0.0));
    Matrix2::new(c, s, s, c)
}

/// A random element of SU(1,1) whose translation part has length at most
/// `max_dist` (in the `cosh`/`sinh` parametrization).
pub fn random_su11<R: Rng + ?Sized>(rng: &mut R, max_dist: f64) -> Matrix2<Complex64> {
    let t1 = rng.random_range(0.0..std::f64::consts::TAU);
    let t2 = rng.random_range(0.0..std::f64::consts::TAU);
    let d = rng.random_range(0.0..=max_dist);
    su11_rotation(t1) * su11_boost(d) * su11_rotation(t2)
}

/// `A ↦ diag(A, 1)`, preserving the complex geodesic polar to `e₃`.
pub fn embed_su11(a: &Matrix2<Complex64>) -> HMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Matrix3::new(a[(0, 0)], a[(0, 1)], z, a[(1, 0)], a[(1, 1)], z, z, z, one)
}

/// `diag(det U⁻¹, U)`: the stabilizer of the origin, with determinant one.
fn stabilizer_element<R: Rng + ?Sized>(rng: &mut R) -> HMatrix {
    let u = random_u2(rng);
    let z = Complex64::new(0.0, 0.0);
    Matrix3::new(
        u.determinant().inv(),
        z,
        z,
        z,
        u[(0, 0)],
        u[(0, 1)],
        z,
        u[(1, 0)],
        u[(1, 1)],
    )
}

/// A random element of SU(2,1) as `K·A·K`, with the boost length at most
/// `max_dist`.
pub fn random_su21<R: Rng + ?Sized>(rng: &mut R, max_dist: f64) -> HMatrix {
    let d = rng.random_range(0.0..=max_dist);
    let boost = embed_su11(&su11_boost(d));
    stabilizer_element(rng) * boost * stabilizer_element(rng)
}
