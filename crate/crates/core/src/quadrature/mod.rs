//! Integration of 2-forms over fundamental polygons in the curvature −4
//! Poincaré disc, and orbifold chart integrals.
//!
//! Polygons are triangulated in the Beltrami–Klein model, where geodesics
//! are straight chords, so every subdivision edge is itself a geodesic. Each
//! level splits every triangle into four; a symmetric seven-point rule is
//! applied on each level and the resulting sequence is
//! Richardson-extrapolated.

mod disc;
mod domain;

pub use disc::{
    area_density, boost, disc_distance, geodesic_angle, mobius, mobius_jacobian, rotation, rotation_about,
    su11_inverse, su11_residuals, translation_to, DiscPoint, Mat2, BOUNDARY_EPS,
};
pub use domain::{
    octagon_circumradius, octagon_domain, triangle_domain, triangle_orders, triangle_side_lengths,
    GeodesicPolygon, SidePairing, PAIRING_TOL,
};

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::orbibundle::{BundleError, CoveringData};
use crate::orbifold::OrbifoldSignature;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    #[error("{0} is not inside the unit disc")]
    OutsideDisc(Complex64),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("orbifold {0} is not hyperbolic")]
    NotHyperbolic(OrbifoldSignature),
    #[error("no convergence at depth {depth}: last estimates {previous} and {last}")]
    NoConvergence { depth: u32, previous: f64, last: f64 },
    #[error("integrand is not finite at {0}")]
    NonFiniteIntegrand(Complex64),
    #[error("chart radius {0} must be positive and finite")]
    InvalidRadius(f64),
    #[error(transparent)]
    Covering(#[from] BundleError),
    #[error("{got} chart densities for {expected} cone points")]
    ChartCountMismatch { expected: usize, got: usize },
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
}

/// A 2-form `w(u) dx∧dy` in disc coordinates.
pub type FormEvaluator<'a> = &'a (dyn Fn(Complex64) -> f64 + Sync);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOptions {
    pub rel_tol: f64,
    /// Deepest refinement level; level `L` uses `4^L` triangles per fan
    /// triangle.
    pub max_depth: u32,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            rel_tol: 1e-8,
            max_depth: 11,
            jobs: None,
        }
    }
}

impl IntegrationOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        IntegrationOptions {
            rel_tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    /// Difference between the last two extrapolated estimates.
    pub error: f64,
    pub depth: u32,
    pub evaluations: u64,
}

const MIN_DEPTH: u32 = 2;
const EXTRAPOLATION_ORDER: usize = 2;
/// Leading error exponent of the base rule: the composite degree-5 rule has
/// an error expansion in `h⁶, h⁸, ...`.
const LEADING_ORDER: i32 = 6;

pub fn to_klein(u: Complex64) -> Complex64 {
    u * (2.0 / (1.0 + u.norm_sqr()))
}

pub fn from_klein(k: Complex64) -> Complex64 {
    k / (1.0 + (1.0 - k.norm_sqr()).max(0.0).sqrt())
}

/// `|du/dk|²` for [`from_klein`]: `1 / (c (1 + c)²)` with `c = √(1 - |k|²)`.
fn klein_jacobian(k: Complex64) -> f64 {
    let c = (1.0 - k.norm_sqr()).sqrt();
    1.0 / (c * (1.0 + c) * (1.0 + c))
}

/// Barycentric nodes and weights of the symmetric seven-point degree-5 rule
/// on a triangle (weights sum to one).
fn seven_point_rule() -> [([f64; 3], f64); 7] {
    let r = 15f64.sqrt();
    let (a1, b1, w1) = ((6.0 - r) / 21.0, (9.0 + 2.0 * r) / 21.0, (155.0 - r) / 1200.0);
    let (a2, b2, w2) = ((6.0 + r) / 21.0, (9.0 - 2.0 * r) / 21.0, (155.0 + r) / 1200.0);
    let third = 1.0 / 3.0;
    [
        ([third, third, third], 9.0 / 40.0),
        ([b1, a1, a1], w1),
        ([a1, b1, a1], w1),
        ([a1, a1, b1], w1),
        ([b2, a2, a2], w2),
        ([a2, b2, a2], w2),
        ([a2, a2, b2], w2),
    ]
}

/// A triangle in the Klein model of a recentered frame: `frame` maps the
/// frame's coordinate `u` to the disc coordinate `frame·u`.
struct Patch {
    tri: [Complex64; 3],
    frame: Mat2,
}

/// `(Σ w·J, Σ |w|·J)` over row `i` of the level-`n` subdivision of a patch,
/// in grid coordinates along its two edges from the first corner.
fn row_sum(form: FormEvaluator<'_>, patch: &Patch, n: usize, i: usize) -> Result<(f64, f64), Complex64> {
    let [a, b, c] = patch.tri;
    let (e1, e2) = ((b - a) / n as f64, (c - a) / n as f64);
    let cell = 0.5 * (e1.re * e2.im - e1.im * e2.re).abs();
    let rule = seven_point_rule();
    let mut s = 0.0;
    let mut s_abs = 0.0;
    let mut sub = |corners: [(f64, f64); 3]| -> Result<(), Complex64> {
        for (l, wt) in &rule {
            let x = l[0] * corners[0].0 + l[1] * corners[1].0 + l[2] * corners[2].0;
            let y = l[0] * corners[0].1 + l[1] * corners[1].1 + l[2] * corners[2].1;
            let k = a + e1 * x + e2 * y;
            let v = from_klein(k);
            let u = mobius(&patch.frame, v);
            let w = form(u) * mobius_jacobian(&patch.frame, v) * klein_jacobian(k);
            if !w.is_finite() {
                return Err(u);
            }
            s += wt * w;
            s_abs += wt * w.abs();
        }
        Ok(())
    };
    let fi = i as f64;
    for j in 0..n - i {
        let fj = j as f64;
        sub([(fi, fj), (fi + 1.0, fj), (fi, fj + 1.0)])?;
        if i + j + 1 < n {
            sub([(fi + 1.0, fj), (fi, fj + 1.0), (fi + 1.0, fj + 1.0)])?;
        }
    }
    Ok((s * cell, s_abs * cell))
}

fn level_sum(form: FormEvaluator<'_>, patches: &[Patch], level: u32) -> Result<(f64, f64), QuadratureError> {
    let n = 1usize << level;
    let rows: Vec<Result<(f64, f64), Complex64>> = (0..patches.len() * n)
        .into_par_iter()
        .map(|idx| row_sum(form, &patches[idx / n], n, idx % n))
        .collect();
    let mut total = (0.0, 0.0);
    for r in rows {
        let (s, a) = r.map_err(QuadratureError::NonFiniteIntegrand)?;
        total.0 += s;
        total.1 += a;
    }
    Ok(total)
}

/// Splits a Klein triangle into four at its edge midpoints.
fn split(t: [Complex64; 3]) -> [[Complex64; 3]; 4] {
    let [a, b, c] = t;
    let (ab, bc, ca) = ((a + b) / 2.0, (b + c) / 2.0, (c + a) / 2.0);
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

/// Geodesic triangles of size at most about `PATCH_SIZE` covering the
/// polygon, each expressed in a frame centered on itself.
///
/// The star from the vertex centroid (interior, since the Klein image is
/// convex) is split in the Klein model until every piece is small; each
/// piece is then moved by an isometry so that its Klein centroid sits at the
/// origin, far from the boundary where the Klein chart degenerates.
fn patches(domain: &GeodesicPolygon) -> Vec<Patch> {
    let k: Vec<Complex64> = domain.vertices().iter().map(|v| to_klein(v.value())).collect();
    let n = k.len();
    let center = k.iter().sum::<Complex64>() / n as f64;
    let mut todo: Vec<[Complex64; 3]> = (0..n).map(|i| [center, k[i], k[(i + 1) % n]]).collect();
    let mut out = Vec::new();
    while let Some(t) = todo.pop() {
        let u = t.map(from_klein);
        let diam = (0..3).map(|i| disc_distance(u[i], u[(i + 1) % 3])).fold(0.0, f64::max);
        if diam > PATCH_SIZE {
            todo.extend(split(t));
            continue;
        }
        let m = from_klein((t[0] + t[1] + t[2]) / 3.0);
        let frame = translation_to(m);
        let back = su11_inverse(&frame);
        out.push(Patch {
            tri: u.map(|x| to_klein(mobius(&back, x))),
            frame,
        });
    }
    // a fixed order keeps the summation order independent of the split order
    out.sort_by(|p, q| {
        let key = |p: &Patch| {
            let c = mobius(&p.frame, Complex64::new(0.0, 0.0));
            (c.re, c.im)
        };
        key(p).partial_cmp(&key(q)).expect("finite")
    });
    out
}

/// Largest curvature −4 side length of a patch before it is split further.
const PATCH_SIZE: f64 = 0.5;

fn run_with_jobs<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> Result<T, QuadratureError> + Send,
) -> Result<T, QuadratureError> {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| QuadratureError::ThreadPool(e.to_string()))?
            .install(f),
    }
}

/// `∫_domain w(u) dx∧dy`, refined until two successive extrapolated
/// estimates differ by at most `rel_tol · max(|value|, ∫|w|)`.
///
/// Rows are summed independently and combined in a fixed order, so the
/// result does not depend on the number of workers.
pub fn integrate(
    domain: &GeodesicPolygon,
    form: FormEvaluator<'_>,
    opts: &IntegrationOptions,
) -> Result<Integral, QuadratureError> {
    let tris = patches(domain);
    run_with_jobs(opts.jobs, || {
        // row[j] is the j-fold extrapolated estimate at the current level
        let mut prev_row: Vec<f64> = Vec::new();
        let mut prev_best = f64::NAN;
        let mut evaluations = 0u64;
        for level in 0..=opts.max_depth {
            let (q, q_abs) = level_sum(form, &tris, level)?;
            evaluations += 7 * tris.len() as u64 * (1u64 << (2 * level));
            let mut row = vec![q];
            for j in 1..=EXTRAPOLATION_ORDER.min(level as usize) {
                let f = 2f64.powi(LEADING_ORDER + 2 * (j as i32 - 1));
                row.push((f * row[j - 1] - prev_row[j - 1]) / (f - 1.0));
            }
            let best = *row.last().expect("nonempty");
            if level >= MIN_DEPTH {
                let diff = (best - prev_best).abs();
                if diff <= opts.rel_tol * best.abs().max(q_abs) {
                    return Ok(Integral {
                        value: best,
                        error: diff,
                        depth: level,
                        evaluations,
                    });
                }
                if level == opts.max_depth {
                    return Err(QuadratureError::NoConvergence {
                        depth: level,
                        previous: prev_best,
                        last: best,
                    });
                }
            }
            prev_row = row;
            prev_best = best;
        }
        Err(QuadratureError::NoConvergence {
            depth: opts.max_depth,
            previous: prev_best,
            last: prev_best,
        })
    })
}

/// Hyperbolic area of a polygon, integrating [`area_density`].
pub fn hyperbolic_area(domain: &GeodesicPolygon, opts: &IntegrationOptions) -> Result<Integral, QuadratureError> {
    integrate(domain, &area_density, opts)
}

fn disc_integral(form: FormEvaluator<'_>, radius: f64, n: usize) -> Result<f64, QuadratureError> {
    let gl = GaussLegendre::new(NonZeroUsize::new(n).expect("n > 0"));
    let m = 2 * n;
    let mut bad = None;
    let total = gl.integrate(0.0, radius, |r| {
        let ring: f64 = (0..m)
            .map(|j| {
                let u = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64);
                let w = form(u);
                if !w.is_finite() && bad.is_none() {
                    bad = Some(u);
                }
                w
            })
            .sum();
        ring * std::f64::consts::TAU / m as f64 * r
    });
    match bad {
        Some(u) => Err(QuadratureError::NonFiniteIntegrand(u)),
        None => Ok(total),
    }
}

/// `(1/m) ∫_{|u| < radius} w(u) dx∧dy`: the contribution of an orbifold chart
/// whose local group has order `m`. Polar Gauss–Legendre in the radius and
/// the trapezoid rule in the angle, doubled until converged.
pub fn chart_integral(m: u64, form: FormEvaluator<'_>, radius: f64, rel_tol: f64) -> Result<f64, QuadratureError> {
    assert!(m >= 1, "chart group order must be positive");
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(QuadratureError::InvalidRadius(radius));
    }
    let mut n = 16;
    let mut prev = disc_integral(form, radius, n)?;
    while n < 2048 {
        n *= 2;
        let cur = disc_integral(form, radius, n)?;
        if (cur - prev).abs() <= rel_tol * cur.abs().max(f64::MIN_POSITIVE) || cur == prev {
            return Ok(cur / m as f64);
        }
        prev = cur;
    }
    Err(QuadratureError::NoConvergence {
        depth: n as u32,
        previous: prev,
        last: prev,
    })
}

/// Chart sums around the cone points of `base` and around their lifts in a
/// covering. `densities[k]` is the form in the uniformizing disc of cone
/// point `k`, integrated over `|u| < radius`.
///
/// A lift with stabilizer `s` has the same uniformizing disc as its image,
/// with local group of order `s`, so the pulled-back form has the same
/// density there. Returns `(Σ_k (1/m_k)∫w_k, Σ_k Σ_i (1/s_ki)∫w_k)`; the
/// second is `d` times the first.
pub fn cone_chart_sums(
    base: &OrbifoldSignature,
    cov: &CoveringData,
    densities: &[FormEvaluator<'_>],
    radius: f64,
    rel_tol: f64,
) -> Result<(f64, f64), QuadratureError> {
    cov.validate(base)?;
    if densities.len() != base.cone_count() {
        return Err(QuadratureError::ChartCountMismatch {
            expected: base.cone_count(),
            got: densities.len(),
        });
    }
    let mut below = 0.0;
    let mut above = 0.0;
    for ((&m, orbits), &w) in base.cone_orders().iter().zip(&cov.stabilizers).zip(densities) {
        below += chart_integral(m, w, radius, rel_tol)?;
        for &s in orbits {
            above += chart_integral(s, w, radius, rel_tol)?;
        }
    }
    Ok((below, above))
}
