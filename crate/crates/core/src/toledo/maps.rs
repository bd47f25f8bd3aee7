//! Equivariant maps from the disc to the complex hyperbolic plane, given by
//! lifts to `ℂ^{2,1}`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rep::RepresentationData;
use super::ToledoError;
use crate::chp::{classify_point, enorm, HMatrix, HVector, SignClass};
use crate::quadrature::mobius;

pub type LiftFn = Arc<dyn Fn(Complex64) -> HVector + Send + Sync>;
/// `(∂f̃/∂x, ∂f̃/∂y)` at `u`.
pub type PartialsFn = Arc<dyn Fn(Complex64) -> (HVector, HVector) + Send + Sync>;

#[derive(Clone)]
pub enum Derivative {
    Analytic(PartialsFn),
    /// Central differences with step `step_scale · (1 - |u|)`.
    CentralDifference { step_scale: f64 },
}

impl fmt::Debug for Derivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivative::Analytic(_) => write!(f, "Analytic"),
            Derivative::CentralDifference { step_scale } => write!(f, "CentralDifference({step_scale})"),
        }
    }
}

pub const DEFAULT_STEP_SCALE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BuiltinHolomorphic,
    BuiltinAntiholomorphic,
    BuiltinConstant,
    User,
}

#[derive(Clone)]
pub struct EquivariantMapSpec {
    lift: LiftFn,
    derivative: Derivative,
    provenance: Provenance,
}

impl fmt::Debug for EquivariantMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantMapSpec")
            .field("derivative", &self.derivative)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl EquivariantMapSpec {
    /// A user-supplied lift; it must return negative vectors that depend
    /// smoothly on `u`.
    pub fn user(lift: LiftFn, derivative: Derivative) -> Self {
        EquivariantMapSpec {
            lift,
            derivative,
            provenance: Provenance::User,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn derivative(&self) -> &Derivative {
        &self.derivative
    }

    pub fn lift(&self, u: Complex64) -> HVector {
        (self.lift)(u)
    }

    pub fn partials(&self, u: Complex64) -> Result<(HVector, HVector), ToledoError> {
        match &self.derivative {
            Derivative::Analytic(d) => Ok(d(u)),
            Derivative::CentralDifference { step_scale } => {
                let h = step_scale * (1.0 - u.norm());
                if h.is_nan() || h <= 0.0 || u.norm() + h >= 1.0 {
                    return Err(ToledoError::DerivativeBreakdown(u));
                }
                let dx = ((self.lift)(u + h) - (self.lift)(u - h)) / Complex64::new(2.0 * h, 0.0);
                let ih = Complex64::new(0.0, h);
                let dy = ((self.lift)(u + ih) - (self.lift)(u - ih)) / Complex64::new(2.0 * h, 0.0);
                Ok((dx, dy))
            }
        }
    }

    /// `C·f̃`, equivariant for the representation conjugated by `C`.
    pub fn conjugated(&self, c: &HMatrix) -> EquivariantMapSpec {
        let c = *c;
        let lift = self.lift.clone();
        let derivative = match &self.derivative {
            Derivative::Analytic(d) => {
                let d = d.clone();
                Derivative::Analytic(Arc::new(move |u| {
                    let (a, b) = d(u);
                    (c * a, c * b)
                }))
            }
            other => other.clone(),
        };
        EquivariantMapSpec {
            lift: Arc::new(move |u| c * lift(u)),
            derivative,
            provenance: self.provenance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MapKind {
    /// `u ↦ (1, u, 0)`, for targets preserving the complex geodesic polar
    /// to `e₃` and acting on it as the sources do.
    HolomorphicGeodesic,
    /// `u ↦ (1, ū, 0)`, for the complex conjugates of such targets.
    Antiholomorphic,
    /// `u ↦ p₀` for a negative `p₀` fixed by every target; default `e₁`.
    Constant {
        #[serde(default, with = "crate::json::opt_vec3")]
        point: Option<HVector>,
    },
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Number of random disc points checked per generator.
pub const AUDIT_SAMPLES: usize = 64;
pub const AUDIT_SEED: u64 = 0x5eed;
pub const AUDIT_TOL: f64 = 1e-9;

/// Largest projective mismatch `‖f̃(A·u) - λ M f̃(u)‖` over seeded random
/// `u` and all generators `(A, M)`, with unit vectors and the best phase
/// `λ`.
pub fn audit_map(map: &EquivariantMapSpec, rep: &RepresentationData, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let u = loop {
            let z = c(rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9));
            if z.norm() < 0.9 {
                break z;
            }
        };
        let fu = map.lift(u);
        for g in &rep.generators {
            let a = map.lift(mobius(&g.source, u));
            let b = g.target * fu;
            worst = worst.max(projective_distance(&a, &b));
        }
    }
    worst
}

fn projective_distance(a: &HVector, b: &HVector) -> f64 {
    let (na, nb) = (enorm(a), enorm(b));
    if !(na > 0.0 && nb > 0.0) {
        return f64::INFINITY;
    }
    let (a, b) = (a / c(na, 0.0), b / c(nb, 0.0));
    let ip = b.dotc(&a);
    let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { c(1.0, 0.0) };
    enorm(&(a - b * phase))
}

/// A builtin map, accepted only if its equivariance audit passes.
pub fn builtin_map(kind: &MapKind, rep: &RepresentationData) -> Result<EquivariantMapSpec, ToledoError> {
    let zero = c(0.0, 0.0);
    let spec = match kind {
        MapKind::HolomorphicGeodesic => EquivariantMapSpec {
            lift: Arc::new(move |u| HVector::new(c(1.0, 0.0), u, zero)),
            derivative: Derivative::Analytic(Arc::new(move |_| {
                (HVector::new(zero, c(1.0, 0.0), zero), HVector::new(zero, c(0.0, 1.0), zero))
            })),
            provenance: Provenance::BuiltinHolomorphic,
        },
        MapKind::Antiholomorphic => EquivariantMapSpec {
            lift: Arc::new(move |u: Complex64| HVector::new(c(1.0, 0.0), u.conj(), zero)),
            derivative: Derivative::Analytic(Arc::new(move |_| {
                (HVector::new(zero, c(1.0, 0.0), zero), HVector::new(zero, c(0.0, -1.0), zero))
            })),
            provenance: Provenance::BuiltinAntiholomorphic,
        },
        MapKind::Constant { point } => {
            let p = point.unwrap_or_else(|| HVector::new(c(1.0, 0.0), zero, zero));
            if classify_point(&p) != Ok(SignClass::Negative) {
                return Err(ToledoError::Chp(crate::chp::ChpError::NonNegativePoint));
            }
            EquivariantMapSpec {
                lift: Arc::new(move |_| p),
                derivative: Derivative::Analytic(Arc::new(move |_| (HVector::zeros(), HVector::zeros()))),
                provenance: Provenance::BuiltinConstant,
            }
        }
    };
    let residual = audit_map(&spec, rep, AUDIT_SAMPLES, AUDIT_SEED);
    if residual.is_nan() || residual > AUDIT_TOL {
        return Err(ToledoError::IncompatibleRepresentation { residual });
    }
    Ok(spec)
}
