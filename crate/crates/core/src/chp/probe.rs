//! Seeded sampling of the curvature tensor over random tangent planes.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::{random_ball_point, random_tangent};
use super::{curvature_trace, metric, sectional_curvature, tangent_frame};

/// Default seed for [`curvature_probe`].
pub const PROBE_SEED: u64 = 0x0c0ffee;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProbe {
    pub samples: usize,
    pub seed: u64,
    /// Extremes of the sectional curvature over random real planes.
    pub min: f64,
    pub max: f64,
    /// Planes skipped as numerically degenerate.
    pub degenerate: usize,
    /// `max |K(t, it) + 4|`.
    pub complex_line_error: f64,
    /// `max |K + 1|` over orthonormal pairs with real `h`.
    pub totally_real_error: f64,
    /// `max |tr R - 6iω|`, relative to `|t₁||t₂|`.
    pub trace_error: f64,
}

/// Samples points with `|z| ≤ 0.95` in the ball model and random tangent
/// vectors there.
pub fn curvature_probe(samples: usize, seed: u64) -> CurvatureProbe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CurvatureProbe {
        samples,
        seed,
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        degenerate: 0,
        complex_line_error: 0.0,
        totally_real_error: 0.0,
        trace_error: 0.0,
    };
    for _ in 0..samples {
        let p = random_ball_point(&mut rng, 0.95);
        let s = random_tangent(&mut rng, &p);
        let t = random_tangent(&mut rng, &p);
        match sectional_curvature(&s, &t) {
            Ok(k) => {
                out.min = out.min.min(k);
                out.max = out.max.max(k);
            }
            Err(_) => out.degenerate += 1,
        }
        let it = s.scale(Complex64::new(0.0, 1.0));
        if let Ok(k) = sectional_curvature(&s, &it) {
            out.complex_line_error = out.complex_line_error.max((k + 4.0).abs());
        }
        if let Ok([e1, e2]) = tangent_frame(&p) {
            let theta: f64 = rng.random_range(0.0..TAU);
            let phase = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
            let (c, si) = (phase * theta.cos(), phase * theta.sin());
            if let (Ok(t1), Ok(t2)) = (e1.scale(c).add(&e2.scale(si)), e1.scale(-si).add(&e2.scale(c))) {
                if let Ok(k) = sectional_curvature(&t1, &t2) {
                    out.totally_real_error = out.totally_real_error.max((k + 1.0).abs());
                }
            }
        }
        if let (Ok(tr), Ok(m), Ok(ss), Ok(tt)) = (curvature_trace(&s, &t), metric(&s, &t), metric(&s, &s), metric(&t, &t)) {
            let scale = (ss.g * tt.g).sqrt().max(1.0);
            out.trace_error = out.trace_error.max((tr - Complex64::new(0.0, 6.0 * m.omega)).norm() / scale);
        }
    }
    out
}
