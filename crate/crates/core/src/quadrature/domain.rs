//! Fundamental polygons for cocompact Fuchsian groups: a doubled triangle for
//! the `(p, q, r)` triangle groups and the regular octagon for genus two.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::disc::{
    disc_distance, geodesic_angle, mobius, rotation, rotation_about, su11_inverse, su11_residuals, DiscPoint,
    Mat2,
};
use super::QuadratureError;
use crate::json;
use crate::orbifold::{is_hyperbolic, OrbifoldSignature};

/// Tolerance for side pairings and generator relations.
pub const PAIRING_TOL: f64 = 1e-9;

/// `matrix` maps side `side` onto side `partner`, reversing the boundary
/// orientation. Side `i` runs from vertex `i` to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SidePairing {
    pub side: usize,
    pub partner: usize,
    #[serde(with = "json::mat2")]
    pub matrix: Mat2,
}

/// A convex geodesic polygon listed counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon")]
pub struct GeodesicPolygon {
    vertices: Vec<DiscPoint>,
    cone_orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side_pairings: Option<Vec<SidePairing>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<OrbifoldSignature>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolygon {
    vertices: Vec<DiscPoint>,
    #[serde(default)]
    cone_orders: Option<Vec<u64>>,
    #[serde(default)]
    side_pairings: Option<Vec<SidePairing>>,
    #[serde(default)]
    signature: Option<OrbifoldSignature>,
}

impl TryFrom<RawPolygon> for GeodesicPolygon {
    type Error = QuadratureError;

    fn try_from(raw: RawPolygon) -> Result<Self, Self::Error> {
        let n = raw.vertices.len();
        let orders = raw.cone_orders.unwrap_or_else(|| vec![1; n]);
        let mut poly = GeodesicPolygon::new(raw.vertices, orders)?;
        if let Some(p) = raw.side_pairings {
            poly = poly.with_side_pairings(p)?;
        }
        poly.signature = raw.signature;
        Ok(poly)
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

impl GeodesicPolygon {
    /// Checks that the vertices are distinct and in counterclockwise convex
    /// position (convexity is tested on the Klein-model images, where the
    /// sides are straight).
    pub fn new(vertices: Vec<DiscPoint>, cone_orders: Vec<u64>) -> Result<Self, QuadratureError> {
        let n = vertices.len();
        if n < 3 {
            return Err(QuadratureError::InvalidPolygon(format!("{n} vertices; need at least 3")));
        }
        if cone_orders.len() != n {
            return Err(QuadratureError::InvalidPolygon(format!(
                "{} cone orders for {n} vertices",
                cone_orders.len()
            )));
        }
        if cone_orders.contains(&0) {
            return Err(QuadratureError::InvalidPolygon("cone order 0".into()));
        }
        let k: Vec<Complex64> = vertices.iter().map(|v| super::to_klein(v.value())).collect();
        for i in 0..n {
            let (a, b, c) = (k[i], k[(i + 1) % n], k[(i + 2) % n]);
            if (b - a).norm() < 1e-12 {
                return Err(QuadratureError::InvalidPolygon(format!("vertices {i} and {} coincide", (i + 1) % n)));
            }
            if cross(b - a, c - b) <= 0.0 {
                return Err(QuadratureError::InvalidPolygon(format!(
                    "not convex and counterclockwise at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        Ok(GeodesicPolygon {
            vertices,
            cone_orders,
            side_pairings: None,
            signature: None,
        })
    }

    pub fn with_side_pairings(mut self, pairings: Vec<SidePairing>) -> Result<Self, QuadratureError> {
        let n = self.vertices.len();
        for p in &pairings {
            if p.side >= n || p.partner >= n {
                return Err(QuadratureError::InvalidPolygon(format!(
                    "pairing {} -> {} out of range",
                    p.side, p.partner
                )));
            }
            let (form, det) = su11_residuals(&p.matrix);
            if form > PAIRING_TOL || det > PAIRING_TOL {
                return Err(QuadratureError::InvalidPolygon(format!(
                    "pairing of side {} is not in SU(1,1) (form residual {form:.3e}, det residual {det:.3e})",
                    p.side
                )));
            }
            let r = self.pairing_residual(p);
            if r > PAIRING_TOL {
                return Err(QuadratureError::InvalidPolygon(format!(
                    "pairing does not map side {} onto side {} (residual {r:.3e})",
                    p.side, p.partner
                )));
            }
        }
        self.side_pairings = Some(pairings);
        Ok(self)
    }

    pub fn with_signature(mut self, signature: OrbifoldSignature) -> Self {
        self.signature = Some(signature);
        self
    }

    pub fn vertices(&self) -> &[DiscPoint] {
        &self.vertices
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    pub fn side_pairings(&self) -> Option<&[SidePairing]> {
        self.side_pairings.as_deref()
    }

    /// The orbifold this polygon is a fundamental domain for, when known.
    pub fn signature(&self) -> Option<&OrbifoldSignature> {
        self.signature.as_ref()
    }

    fn side(&self, i: usize) -> (Complex64, Complex64) {
        let n = self.vertices.len();
        (self.vertices[i].value(), self.vertices[(i + 1) % n].value())
    }

    /// Largest endpoint mismatch of `A(side)` against the reversed partner.
    pub fn pairing_residual(&self, p: &SidePairing) -> f64 {
        let (a, b) = self.side(p.side);
        let (c, d) = self.side(p.partner);
        let (ma, mb) = (mobius(&p.matrix, a), mobius(&p.matrix, b));
        (ma - d).norm().max((mb - c).norm())
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        (0..self.vertices.len())
            .map(|i| {
                let (a, b) = self.side(i);
                disc_distance(a, b)
            })
            .collect()
    }

    pub fn vertex_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let v = self.vertices[i].value();
                geodesic_angle(v, self.vertices[(i + n - 1) % n].value(), self.vertices[(i + 1) % n].value())
            })
            .collect()
    }

    /// Image under an isometry; pairings are conjugated to match.
    pub fn transformed(&self, a: &Mat2) -> Result<GeodesicPolygon, QuadratureError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| DiscPoint::new(mobius(a, v.value())))
            .collect::<Result<Vec<_>, _>>()?;
        let ainv = su11_inverse(a);
        let mut out = GeodesicPolygon::new(vertices, self.cone_orders.clone())?;
        if let Some(ps) = &self.side_pairings {
            let conj = ps
                .iter()
                .map(|p| SidePairing {
                    side: p.side,
                    partner: p.partner,
                    matrix: a * p.matrix * ainv,
                })
                .collect();
            out = out.with_side_pairings(conj)?;
        }
        out.signature = self.signature.clone();
        Ok(out)
    }
}

/// Side lengths `(a, b, c)` of the curvature −4 triangle with angles
/// `π/p, π/q, π/r`; `a` is opposite the `π/p` corner. The curvature −1
/// dual cosine rule gives lengths twice as long.
pub fn triangle_side_lengths(p: u64, q: u64, r: u64) -> [f64; 3] {
    let (al, be, ga) = (PI / p as f64, PI / q as f64, PI / r as f64);
    let side = |x: f64, y: f64, z: f64| ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin())).acosh() / 2.0;
    [side(al, be, ga), side(be, al, ga), side(ga, al, be)]
}

fn power(a: &Mat2, k: u64) -> Mat2 {
    (0..k).fold(Mat2::identity(), |acc, _| acc * a)
}

fn is_plus_minus_identity(m: &Mat2, tol: f64) -> bool {
    (m - Mat2::identity()).norm() <= tol || (m + Mat2::identity()).norm() <= tol
}

/// Quadrilateral fundamental domain `A, B, C, B'` for the `(p, q, r)` triangle
/// group: two copies of the triangle `ABC` glued along `AC`.
///
/// The smallest order sits at `B` so that the doubled corners at `A` and
/// `C` stay convex. Side pairings are the generators `X` (rotation about
/// `A` by `2π/p`, side `AB` onto `AB'`) and `Y` (rotation about `C` by
/// `2π/r`, side `CB'` onto `CB`); `YX` is the rotation about `B`.
/// Vertex orders are assigned by [`triangle_orders`].
pub fn triangle_domain(p: u64, q: u64, r: u64) -> Result<GeodesicPolygon, QuadratureError> {
    let sig = OrbifoldSignature::new(0, vec![p, q, r]).map_err(|e| QuadratureError::InvalidPolygon(e.to_string()))?;
    if !is_hyperbolic(&sig) {
        return Err(QuadratureError::NotHyperbolic(sig));
    }
    let (p, q, r) = triangle_orders(p, q, r);
    let [_, b_len, c_len] = triangle_side_lengths(p, q, r);
    let alpha = PI / p as f64;
    let a = Complex64::new(0.0, 0.0);
    let b = Complex64::new(c_len.tanh(), 0.0);
    let c = Complex64::from_polar(b_len.tanh(), alpha);
    let b2 = Complex64::from_polar(c_len.tanh(), 2.0 * alpha);
    let verts = [a, b, c, b2]
        .into_iter()
        .map(DiscPoint::new)
        .collect::<Result<Vec<_>, _>>()?;
    let x = rotation(2.0 * alpha);
    let y = rotation_about(c, 2.0 * PI / r as f64);
    for (m, k) in [(x, p), (y, r), (y * x, q)] {
        if !is_plus_minus_identity(&power(&m, k), PAIRING_TOL) {
            return Err(QuadratureError::InvalidPolygon(format!(
                "generator relation of order {k} fails for the ({p},{q},{r}) domain"
            )));
        }
    }
    let poly = GeodesicPolygon::new(verts, vec![p, q, r, q])?.with_side_pairings(vec![
        SidePairing {
            side: 0,
            partner: 3,
            matrix: x,
        },
        SidePairing {
            side: 2,
            partner: 1,
            matrix: y,
        },
    ])?;
    Ok(poly.with_signature(sig))
}

/// The vertex orders `(p, q, r)` used by [`triangle_domain`] at `A`, `B`,
/// `C`: the smallest in the middle.
pub fn triangle_orders(p: u64, q: u64, r: u64) -> (u64, u64, u64) {
    let mut s = [p, q, r];
    s.sort_unstable();
    (s[2], s[0], s[1])
}

/// Interior angle of the regular octagon with Euclidean circumradius `rho`.
fn octagon_angle(rho: f64) -> f64 {
    let v = |k: i32| Complex64::from_polar(rho, (2 * k - 1) as f64 * PI / 8.0);
    geodesic_angle(v(0), v(-1), v(1))
}

/// Euclidean circumradius of the regular octagon with all angles `π/4`,
/// by bisection on the angle (which decreases from `3π/4` to `0`).
pub fn octagon_circumradius() -> f64 {
    let target = PI / 4.0;
    let (mut lo, mut hi) = (0.1, 1.0 - 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if octagon_angle(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Regular octagon with angles `π/4`, a fundamental domain for a genus-two
/// surface group. Vertex `k` sits at angle `(2k - 1)π/8`; pairing `k` for
/// `k = 0..4` maps side `k + 4` onto side `k` by the translation through the
/// two side midpoints. The pairings satisfy
/// `g₀ g₁⁻¹ g₂ g₃⁻¹ g₀⁻¹ g₁ g₂⁻¹ g₃ = 1`.
pub fn octagon_domain() -> GeodesicPolygon {
    let rho = octagon_circumradius();
    let verts: Vec<DiscPoint> = (0..8)
        .map(|k| DiscPoint::new(Complex64::from_polar(rho, (2 * k - 1) as f64 * PI / 8.0)).expect("inside"))
        .collect();
    // translation length between opposite side midpoints: cosh d = 1 + √2
    let d = (1.0 + 2f64.sqrt()).acosh();
    let pairings = (0..4)
        .map(|k| {
            let th = k as f64 * PI / 4.0;
            SidePairing {
                side: k + 4,
                partner: k,
                matrix: rotation(th) * super::disc::boost(d) * rotation(-th),
            }
        })
        .collect();
    GeodesicPolygon::new(verts, vec![1; 8])
        .and_then(|p| p.with_side_pairings(pairings))
        .expect("octagon construction is exact")
        .with_signature(OrbifoldSignature::surface(2))
}
