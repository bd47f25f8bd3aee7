//! Toledo invariants and Chern numbers of representations of orbifold
//! groups into PU(2,1), computed from equivariant maps over a fundamental
//! polygon.
//!
//! For an equivariant lift `f̃` the Toledo invariant is
//! `τ = (4/2π) ∫ f*ω`, where `ω` is the imaginary part of the Hermitian
//! metric; `τ_R = τ/χ`. The first Chern number `c₁ = (1/2πi) ∫ tr R` is
//! integrated separately from the trace of the curvature operator.
//!
//! With the disc carrying its complex orientation, `ω(∂x, ∂y)` is negative
//! along the holomorphic lift `u ↦ (1, u, 0)`, so that map has `τ = χ < 0`
//! and `τ_R = 1`.

mod maps;
pub mod presets;
mod rep;

pub use maps::{
    audit_map, builtin_map, Derivative, EquivariantMapSpec, LiftFn, MapKind, PartialsFn, Provenance, AUDIT_SAMPLES,
    AUDIT_SEED, AUDIT_TOL, DEFAULT_STEP_SCALE,
};
pub use rep::{
    central_residual, validate_representation, ConeWord, ConstraintFailure, Generator, RepresentationData,
    ValidationReport, Word,
};

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chp::{curvature_trace, metric, stable_complex_geodesic, ChpError, HPoint, HVector};
use crate::orbifold::{euler_characteristic, euler_lattice, OrbifoldSignature};
use crate::quadrature::{integrate, GeodesicPolygon, IntegrationOptions, QuadratureError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToledoError {
    #[error("orbifold {0} is not hyperbolic")]
    NotHyperbolic(OrbifoldSignature),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("map is not equivariant for this representation (audit residual {residual:.3e})")]
    IncompatibleRepresentation { residual: f64 },
    #[error("domain is for {domain} but the representation is for {rep}")]
    DomainMismatch { domain: OrbifoldSignature, rep: OrbifoldSignature },
    #[error("central difference step leaves the disc at {0}")]
    DerivativeBreakdown(Complex64),
    #[error("lift is not a negative vector at {0}")]
    LiftNotNegative(Complex64),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Chp(#[from] ChpError),
}

/// Tolerance used when validating representations before integrating.
pub const REPRESENTATION_TOL: f64 = 1e-8;
/// Default distance to the lattice accepted as membership.
pub const DEFAULT_LATTICE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeVerdict {
    pub member: bool,
    pub nearest: Rational,
    /// Generator of `(2/3)·(ℤ + Σ(1/m_k)ℤ)`.
    pub generator: Rational,
    pub distance: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToledoResult {
    pub tau: f64,
    pub tau_rel: f64,
    pub chi: Rational,
    pub quadrature_tol: f64,
    /// Last-step change of the quadrature, scaled like `τ`.
    pub quadrature_error: f64,
    pub depth: u32,
    pub lattice: LatticeVerdict,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernResult {
    pub c1: f64,
    pub quadrature_tol: f64,
    pub quadrature_error: f64,
    pub depth: u32,
}

/// Membership of `τ` in `(2/3)·euler_lattice(sig)` within `tol`.
pub fn toledo_lattice_check(tau: f64, sig: &OrbifoldSignature, tol: f64) -> LatticeVerdict {
    let lattice = euler_lattice(sig).scaled(&Rational::new(2, 3));
    let nearest = lattice.nearest(tau);
    let distance = (tau - nearest.to_f64()).abs();
    LatticeVerdict {
        member: distance <= tol,
        nearest,
        generator: lattice.generator().clone(),
        distance,
        tol,
    }
}

/// Base point and projected partial derivatives of the lift at `u`.
fn projected_pair(
    map: &EquivariantMapSpec,
    u: Complex64,
) -> Result<(crate::chp::HTangent, crate::chp::HTangent), ToledoError> {
    let p = HPoint::new(map.lift(u))?;
    if p.sign() != crate::chp::SignClass::Negative {
        return Err(ToledoError::LiftNotNegative(u));
    }
    let p = p.normalized();
    let scale = Complex64::new(p.rep().norm() / map.lift(u).norm(), 0.0);
    let (dx, dy): (HVector, HVector) = map.partials(u)?;
    Ok((p.tangent(dx * scale)?, p.tangent(dy * scale)?))
}

/// Density of `f*ω` in disc coordinates: `ω(∂x f, ∂y f)`.
pub fn toledo_density(map: &EquivariantMapSpec, u: Complex64) -> Result<f64, ToledoError> {
    let (s, t) = projected_pair(map, u)?;
    Ok(metric(&s, &t)?.omega)
}

/// Density of `(1/2πi) tr R(∂x f, ∂y f)` in disc coordinates.
pub fn chern_density(map: &EquivariantMapSpec, u: Complex64) -> Result<f64, ToledoError> {
    let (s, t) = projected_pair(map, u)?;
    let tr = curvature_trace(&s, &t)?;
    Ok((tr / Complex64::new(0.0, 2.0 * PI)).re)
}

fn check_inputs(
    rep: &RepresentationData,
    map: &EquivariantMapSpec,
    domain: &GeodesicPolygon,
) -> Result<Rational, ToledoError> {
    let chi = euler_characteristic(&rep.signature);
    if !chi.is_negative() {
        return Err(ToledoError::NotHyperbolic(rep.signature.clone()));
    }
    if let Some(sig) = domain.signature() {
        if sig != &rep.signature {
            return Err(ToledoError::DomainMismatch {
                domain: sig.clone(),
                rep: rep.signature.clone(),
            });
        }
    }
    let report = validate_representation(rep, REPRESENTATION_TOL);
    if !report.is_valid() {
        let msg = report
            .failures
            .iter()
            .map(|f| format!("{} [{}] residual {:.3e}", f.constraint, f.index, f.residual))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(ToledoError::InvalidRepresentation(msg));
    }
    let residual = audit_map(map, rep, AUDIT_SAMPLES, AUDIT_SEED);
    if residual.is_nan() || residual > AUDIT_TOL {
        return Err(ToledoError::IncompatibleRepresentation { residual });
    }
    Ok(chi)
}

/// Integrates a fallible density; the first error raised inside the
/// quadrature is reported instead of the resulting non-finite value.
fn integrate_density(
    domain: &GeodesicPolygon,
    density: impl Fn(Complex64) -> Result<f64, ToledoError> + Sync,
    opts: &IntegrationOptions,
) -> Result<crate::quadrature::Integral, ToledoError> {
    let first_error: OnceLock<ToledoError> = OnceLock::new();
    let form = |u: Complex64| match density(u) {
        Ok(w) => w,
        Err(e) => {
            let _ = first_error.set(e);
            f64::NAN
        }
    };
    match integrate(domain, &form, opts) {
        Ok(r) => Ok(r),
        Err(e) => Err(first_error.into_inner().unwrap_or(ToledoError::Quadrature(e))),
    }
}

/// `τ = (2/π) ∫_domain f*ω` and `τ_R = τ/χ`, after checking that the
/// representation is valid, the map equivariant and the domain compatible.
pub fn toledo_invariant(
    rep: &RepresentationData,
    map: &EquivariantMapSpec,
    domain: &GeodesicPolygon,
    opts: &IntegrationOptions,
) -> Result<ToledoResult, ToledoError> {
    toledo_invariant_with_lattice_tol(rep, map, domain, opts, DEFAULT_LATTICE_TOL)
}

pub fn toledo_invariant_with_lattice_tol(
    rep: &RepresentationData,
    map: &EquivariantMapSpec,
    domain: &GeodesicPolygon,
    opts: &IntegrationOptions,
    lattice_tol: f64,
) -> Result<ToledoResult, ToledoError> {
    let chi = check_inputs(rep, map, domain)?;
    let integral = integrate_density(domain, |u| toledo_density(map, u), opts)?;
    let tau = 2.0 / PI * integral.value;
    Ok(ToledoResult {
        tau,
        tau_rel: tau / chi.to_f64(),
        chi,
        quadrature_tol: opts.rel_tol,
        quadrature_error: 2.0 / PI * integral.error,
        depth: integral.depth,
        lattice: toledo_lattice_check(tau, &rep.signature, lattice_tol),
        provenance: map.provenance(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToledoProbe {
    pub result: ToledoResult,
    pub validation: ValidationReport,
}

/// Like [`toledo_invariant`], but a representation failing validation is
/// reported rather than rejected. The map must still pass its audit on the
/// generators.
pub fn toledo_probe(
    rep: &RepresentationData,
    map: &EquivariantMapSpec,
    domain: &GeodesicPolygon,
    opts: &IntegrationOptions,
) -> Result<ToledoProbe, ToledoError> {
    let validation = validate_representation(rep, REPRESENTATION_TOL);
    let mut relaxed = rep.clone();
    relaxed.relators.clear();
    relaxed.cone_assignment = rep
        .signature
        .cone_orders()
        .iter()
        .map(|&order| ConeWord { word: Vec::new(), order })
        .collect();
    let result = toledo_invariant(&relaxed, map, domain, opts)?;
    Ok(ToledoProbe { result, validation })
}

/// `c₁ = (1/2πi) ∫ tr R(∂x f, ∂y f)`, using the curvature trace in a
/// tangent frame rather than the identity `tr R = 6iω`.
pub fn chern_number(
    rep: &RepresentationData,
    map: &EquivariantMapSpec,
    domain: &GeodesicPolygon,
    opts: &IntegrationOptions,
) -> Result<ChernResult, ToledoError> {
    check_inputs(rep, map, domain)?;
    let integral = integrate_density(domain, |u| chern_density(map, u), opts)?;
    Ok(ChernResult {
        c1: integral.value,
        quadrature_tol: opts.rel_tol,
        quadrature_error: integral.error,
        depth: integral.depth,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub tau_rel: f64,
    pub tol: f64,
    /// `|τ_R| ≤ 1 + tol`.
    pub bound_holds: bool,
    /// `|τ_R| ≥ 1 - tol`.
    pub maximal: bool,
    /// Common positive eigenvector of the targets, if any.
    #[serde(with = "crate::json::opt_vec3")]
    pub stable_geodesic: Option<HVector>,
    /// The bound holds, and a maximal representation has a stable complex
    /// geodesic. The converse is not checked: non-maximal representations
    /// (the trivial one, say) may stabilize a complex geodesic too.
    pub consistent: bool,
}

/// Tolerance for the common-eigenvector search in [`rigidity_check`].
pub const STABLE_GEODESIC_TOL: f64 = 1e-8;

pub fn rigidity_check(result: &ToledoResult, rep: &RepresentationData, tol: f64) -> RigidityReport {
    let a = result.tau_rel.abs();
    let bound_holds = a <= 1.0 + tol;
    let maximal = a >= 1.0 - tol;
    let stable_geodesic = stable_complex_geodesic(&rep.targets(), STABLE_GEODESIC_TOL)
        .ok()
        .flatten();
    RigidityReport {
        tau_rel: result.tau_rel,
        tol,
        bound_holds,
        maximal,
        consistent: bound_holds && (!maximal || stable_geodesic.is_some()),
        stable_geodesic,
    }
}

/// Exact test of `(3/2)·τ_R = e_R + 1`.
pub fn holomorphic_identity_check(tau_rel: &Rational, e_rel: &Rational) -> bool {
    Rational::new(3, 2) * tau_rel == e_rel + &Rational::one()
}

pub fn holomorphic_identity_check_approx(tau_rel: f64, e_rel: f64, tol: f64) -> bool {
    (1.5 * tau_rel - (e_rel + 1.0)).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> IntegrationOptions {
        IntegrationOptions::with_rel_tol(1e-9)
    }

    #[test]
    fn genus2_holomorphic_is_maximal() {
        let (rep, dom) = presets::genus2();
        let map = builtin_map(&MapKind::HolomorphicGeodesic, &rep).unwrap();
        let r = toledo_invariant(&rep, &map, &dom, &opts()).unwrap();
        assert!((r.tau.abs() - 2.0).abs() < 1e-6, "{r:?}");
        assert!((r.tau_rel.abs() - 1.0).abs() < 1e-6);
        assert!(r.lattice.member);
        assert_eq!(r.lattice.generator, Rational::new(2, 3));
        let rig = rigidity_check(&r, &rep, 1e-4);
        assert!(rig.maximal && rig.consistent && rig.stable_geodesic.is_some());
        let c = chern_number(&rep, &map, &dom, &opts()).unwrap();
        assert!((c.c1 - 1.5 * r.tau).abs() < 1e-6, "{c:?}");
    }

    #[test]
    fn orientation_reverses_sign() {
        let (rep, dom) = presets::genus2();
        let holo = builtin_map(&MapKind::HolomorphicGeodesic, &rep).unwrap();
        let anti_rep = rep.conjugate_targets();
        let anti = builtin_map(&MapKind::Antiholomorphic, &anti_rep).unwrap();
        let t1 = toledo_invariant(&rep, &holo, &dom, &opts()).unwrap().tau;
        let t2 = toledo_invariant(&anti_rep, &anti, &dom, &opts()).unwrap().tau;
        assert!((t1 + t2).abs() < 1e-6);
        let c1 = chern_number(&rep, &holo, &dom, &opts()).unwrap().c1;
        let c2 = chern_number(&anti_rep, &anti, &dom, &opts()).unwrap().c1;
        assert!((c1 + c2).abs() < 1e-6);
    }

    #[test]
    fn trivial_representation_has_zero_invariants() {
        let (rep, dom) = presets::genus2();
        let trivial = presets::trivial(&rep);
        let map = builtin_map(&MapKind::Constant { point: None }, &trivial).unwrap();
        let r = toledo_invariant(&trivial, &map, &dom, &opts()).unwrap();
        assert!(r.tau.abs() < 1e-9);
        assert!(r.lattice.member);
        let rig = rigidity_check(&r, &trivial, 1e-4);
        assert!(!rig.maximal && rig.consistent);
        assert_eq!(chern_number(&trivial, &map, &dom, &opts()).unwrap().c1, 0.0);
    }

    #[test]
    fn triangle_group_values() {
        for (p, q, r) in [(5, 5, 5), (3, 6, 6), (2, 8, 8)] {
            let (rep, dom) = presets::triangle(p, q, r).unwrap();
            let map = builtin_map(&MapKind::HolomorphicGeodesic, &rep).unwrap();
            let res = toledo_invariant(&rep, &map, &dom, &opts()).unwrap();
            let chi = res.chi.to_f64();
            assert!((res.tau - chi).abs() < 1e-8 * chi.abs(), "{res:?}");
            assert!(res.lattice.member, "({p},{q},{r}): {:?}", res.lattice);
            let c = chern_number(&rep, &map, &dom, &opts()).unwrap();
            assert!((c.c1 - 1.5 * res.tau).abs() < 1e-8);
        }
    }

    #[test]
    fn obstructed_triangle_group_probe() {
        assert!(matches!(presets::triangle(2, 3, 7), Err(ToledoError::InvalidRepresentation(_))));
        let (rep, dom) = presets::triangle_block(2, 3, 7).unwrap();
        let map = builtin_map(&MapKind::HolomorphicGeodesic, &rep).unwrap();
        assert!(matches!(
            toledo_invariant(&rep, &map, &dom, &opts()),
            Err(ToledoError::InvalidRepresentation(_))
        ));
        let probe = toledo_probe(&rep, &map, &dom, &opts()).unwrap();
        assert!(!probe.validation.is_valid());
        assert!((probe.result.tau.abs() - 1.0 / 42.0).abs() < 1e-10, "{probe:?}");
        assert!(!probe.result.lattice.member);
        assert_eq!(probe.result.lattice.generator, Rational::new(1, 63));
    }

    #[test]
    fn input_errors() {
        let (rep, dom) = presets::genus2();
        let map = builtin_map(&MapKind::HolomorphicGeodesic, &rep).unwrap();
        let (_, tri) = presets::triangle(5, 5, 5).unwrap();
        assert!(matches!(
            toledo_invariant(&rep, &map, &tri, &opts()),
            Err(ToledoError::DomainMismatch { .. })
        ));
        let mut bad = rep.clone();
        bad.generators[0].target *= Complex64::new(1.1, 0.0);
        assert!(matches!(
            toledo_invariant(&bad, &map, &dom, &opts()),
            Err(ToledoError::InvalidRepresentation(_))
        ));
        let mut torus = rep.clone();
        torus.signature = OrbifoldSignature::surface(1);
        assert!(matches!(
            toledo_invariant(&torus, &map, &dom, &opts()),
            Err(ToledoError::NotHyperbolic(_))
        ));
        let tight = IntegrationOptions {
            rel_tol: 1e-16,
            max_depth: 2,
            jobs: None,
        };
        assert!(matches!(
            toledo_invariant(&rep, &map, &dom, &tight),
            Err(ToledoError::Quadrature(QuadratureError::NoConvergence { .. }))
        ));
    }

    #[test]
    fn lattice_examples() {
        let g2 = OrbifoldSignature::surface(2);
        assert!(toledo_lattice_check(2.0, &g2, 1e-9).member);
        assert!(!toledo_lattice_check(0.5, &g2, 1e-9).member);
        let any = OrbifoldSignature::new(0, vec![2, 3, 7]).unwrap();
        assert!(toledo_lattice_check(0.0, &any, 1e-12).member);
        assert_eq!(toledo_lattice_check(0.0, &any, 1e-12).generator, Rational::new(1, 63));
    }

    #[test]
    fn identity_examples() {
        assert!(holomorphic_identity_check(&Rational::new(2, 3), &Rational::zero()));
        assert!(holomorphic_identity_check(&Rational::one(), &Rational::new(1, 2)));
        assert!(!holomorphic_identity_check(&Rational::one(), &Rational::one()));
        assert!(holomorphic_identity_check_approx(1.0, 0.5 + 1e-12, 1e-9));
    }

    #[test]
    fn flagged_when_maximal_without_stable_geodesic() {
        let (rep, _) = presets::genus2();
        let fake = ToledoResult {
            tau: -2.0,
            tau_rel: 1.0,
            chi: Rational::integer(-2),
            quadrature_tol: 1e-9,
            quadrature_error: 0.0,
            depth: 0,
            lattice: toledo_lattice_check(-2.0, &rep.signature, 1e-3),
            provenance: Provenance::User,
        };
        let mut generic = rep.clone();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2);
        for g in &mut generic.generators {
            g.target = crate::chp::sample::random_su21(&mut rng, 1.0);
        }
        let rig = rigidity_check(&fake, &generic, 1e-4);
        assert!(rig.maximal && rig.stable_geodesic.is_none() && !rig.consistent);
    }
}
