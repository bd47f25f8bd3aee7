//! Dispatch of parsed commands to the core library.

use std::fs;
use std::path::Path;

use orbitol_core::chp::{curvature_probe, HVector, PROBE_SEED};
use orbitol_core::orbibundle::{covered_signature, euler_number, lattice_check, pullback, relative_euler, tangent_seifert};
use orbitol_core::orbifold::{euler_characteristic, euler_lattice, goodness, is_hyperbolic};
use orbitol_core::quadrature::{octagon_domain, triangle_domain, GeodesicPolygon, IntegrationOptions, QuadratureError};
use orbitol_core::toledo::{
    builtin_map, chern_number, holomorphic_identity_check, holomorphic_identity_check_approx, presets,
    rigidity_check, toledo_invariant_with_lattice_tol, toledo_probe, validate_representation, MapKind,
    RepresentationData, ToledoError, DEFAULT_LATTICE_TOL, REPRESENTATION_TOL,
};
use orbitol_core::{OrbifoldSignature, Rational};
use serde_json::{json, Value};

use crate::args::{
    Command, IdentityArgs, InvariantArgs, LatticeArgs, MapChoice, Number, PullbackArgs, RepSource, SeifertArgs,
    SignatureArgs, TargetsChoice, VerifyArgs, DEFAULT_PROBE_SAMPLES,
};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_NONCONVERGENCE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Default tolerance on `|τ_R|` in rigidity reports.
pub const DEFAULT_RIGIDITY_TOL: f64 = 5e-4;
/// Default tolerance of the approximate identity check.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    NonConvergence(String),
    /// A complete result document that still signals failure.
    Report { doc: Value, code: u8 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::NonConvergence(_) => EXIT_NONCONVERGENCE,
            CliError::Report { code, .. } => *code,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Validation(m) => ("validation", m.clone()),
            CliError::NonConvergence(m) => ("non-convergence", m.clone()),
            CliError::Report { doc, .. } => return doc.clone(),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<ToledoError> for CliError {
    fn from(e: ToledoError) -> Self {
        match e {
            ToledoError::Quadrature(QuadratureError::NoConvergence { .. }) => CliError::NonConvergence(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        ToledoError::from(e).into()
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}

/// Replaces the command by the job file's contents when `--file` is given.
fn resolve_job(cmd: Command) -> Result<Command, CliError> {
    let Some(path) = cmd.file().cloned() else {
        return Ok(cmd);
    };
    let text = fs::read_to_string(&path).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let job: Command =
        serde_json::from_str(&text).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    if job.name() != cmd.name() {
        return Err(validation(format!(
            "{} holds a `{}` job, not `{}`",
            path.display(),
            job.name(),
            cmd.name()
        )));
    }
    Ok(job)
}

pub fn execute(cmd: Command) -> Result<Value, CliError> {
    match resolve_job(cmd)? {
        Command::Chi(a) => chi(&a),
        Command::Euler(a) => euler(&a),
        Command::Lattice(a) => lattice(&a),
        Command::Pullback(a) => pullback_cmd(&a),
        Command::Tangent(a) => tangent(&a),
        Command::CurvatureProbe(a) => {
            let probe = curvature_probe(a.samples.unwrap_or(DEFAULT_PROBE_SAMPLES), a.seed.unwrap_or(PROBE_SEED));
            Ok(to_value(&probe))
        }
        Command::Toledo(a) => toledo(&a),
        Command::Chern(a) => chern(&a),
        Command::VerifyRep(a) => verify(&a),
        Command::IdentityCheck(a) => identity(&a),
    }
}

fn signature_from(
    genus: Option<u64>,
    cones: &Option<Vec<u64>>,
    sig: &Option<crate::args::Json<OrbifoldSignature>>,
) -> Result<OrbifoldSignature, CliError> {
    if let Some(s) = sig {
        return Ok(s.0.clone());
    }
    let Some(genus) = genus else {
        return Err(CliError::Usage("give --genus (and --cones) or --signature".into()));
    };
    OrbifoldSignature::new(genus, cones.clone().unwrap_or_default()).map_err(validation)
}

fn chi(a: &SignatureArgs) -> Result<Value, CliError> {
    let sig = signature_from(a.genus, &a.cones, &a.signature)?;
    Ok(json!({
        "signature": sig,
        "chi": euler_characteristic(&sig),
        "hyperbolic": is_hyperbolic(&sig),
        "goodness": goodness(&sig),
    }))
}

fn seifert_required(s: &Option<crate::args::Json<orbitol_core::SeifertData>>) -> Result<&orbitol_core::SeifertData, CliError> {
    s.as_ref()
        .map(|j| &j.0)
        .ok_or_else(|| CliError::Usage("--seifert is required".into()))
}

fn euler(a: &SeifertArgs) -> Result<Value, CliError> {
    let sd = seifert_required(&a.seifert)?;
    let e = euler_number(sd);
    Ok(json!({
        "seifert": sd,
        "euler": e,
        "relative_euler": relative_euler(sd).ok(),
        "in_lattice": lattice_check(&e, sd.base()),
    }))
}

fn lattice(a: &LatticeArgs) -> Result<Value, CliError> {
    let sig = signature_from(a.genus, &a.cones, &a.signature)?;
    let lat = euler_lattice(&sig);
    let mut doc = json!({ "signature": sig, "generator": lat.generator() });
    if let Some(v) = &a.value {
        let x: Rational = v.parse().map_err(validation)?;
        doc["value"] = to_value(&x);
        doc["member"] = Value::Bool(lat.contains(&x));
    }
    Ok(doc)
}

fn pullback_cmd(a: &PullbackArgs) -> Result<Value, CliError> {
    let sd = seifert_required(&a.seifert)?;
    let cov = &a
        .covering
        .as_ref()
        .ok_or_else(|| CliError::Usage("--covering is required".into()))?
        .0;
    let covered = covered_signature(sd.base(), cov).map_err(validation)?;
    let up = pullback(sd, cov).map_err(validation)?;
    Ok(json!({
        "degree": cov.degree,
        "covered_signature": covered,
        "seifert": up,
        "euler": euler_number(&up),
        "base_euler": euler_number(sd),
        "relative_euler": relative_euler(&up).ok(),
        "base_relative_euler": relative_euler(sd).ok(),
    }))
}

fn tangent(a: &SignatureArgs) -> Result<Value, CliError> {
    let sig = signature_from(a.genus, &a.cones, &a.signature)?;
    let t = tangent_seifert(&sig);
    Ok(json!({
        "seifert": t,
        "euler": euler_number(&t),
        "chi": euler_characteristic(&sig),
    }))
}

fn parse_triple(s: &str) -> Result<(u64, u64, u64), CliError> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("expected p,q,r in `{s}`")))?;
    match v.as_slice() {
        &[p, q, r] => Ok((p, q, r)),
        _ => Err(CliError::Usage(format!("expected p,q,r in `{s}`"))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn domain_for(spec: &str) -> Result<GeodesicPolygon, CliError> {
    if spec == "octagon" {
        return Ok(octagon_domain());
    }
    if let Some(t) = spec.strip_prefix("triangle:") {
        let (p, q, r) = parse_triple(t)?;
        return Ok(triangle_domain(p, q, r)?);
    }
    read_json(Path::new(spec))
}

fn inferred_domain(sig: &OrbifoldSignature) -> Result<GeodesicPolygon, CliError> {
    match (sig.genus(), sig.cone_orders()) {
        (2, []) => Ok(octagon_domain()),
        (0, &[p, q, r]) => Ok(triangle_domain(p, q, r)?),
        _ => Err(CliError::Usage(format!("no builtin domain for {sig}; pass --domain"))),
    }
}

fn load_rep(src: &RepSource) -> Result<(RepresentationData, GeodesicPolygon), CliError> {
    let (rep, preset_domain) = match (&src.preset, &src.rep) {
        (Some(p), None) => {
            let (rep, dom) = if p == "genus2" {
                presets::genus2()
            } else if let Some(t) = p.strip_prefix("triangle:") {
                let (a, b, c) = parse_triple(t)?;
                presets::triangle(a, b, c)?
            } else if let Some(t) = p.strip_prefix("triangle-block:") {
                let (a, b, c) = parse_triple(t)?;
                presets::triangle_block(a, b, c)?
            } else {
                return Err(CliError::Usage(format!("unknown preset `{p}`")));
            };
            (rep, Some(dom))
        }
        (None, Some(path)) => (read_json(path)?, None),
        _ => return Err(CliError::Usage("give exactly one of --preset and --rep".into())),
    };
    let dom = match (&src.domain, preset_domain) {
        (Some(d), _) => domain_for(d)?,
        (None, Some(d)) => d,
        (None, None) => inferred_domain(&rep.signature)?,
    };
    let rep = match src.targets.unwrap_or_default() {
        TargetsChoice::AsIs => rep,
        TargetsChoice::Trivial => presets::trivial(&rep),
        TargetsChoice::Conjugate => rep.conjugate_targets(),
    };
    Ok((rep, dom))
}

fn options(a: &InvariantArgs) -> IntegrationOptions {
    let mut opts = IntegrationOptions::default();
    if let Some(t) = a.rel_tol {
        opts.rel_tol = t;
    }
    if let Some(d) = a.max_depth {
        opts.max_depth = d;
    }
    opts.jobs = a.jobs;
    opts
}

fn map_kind(a: &InvariantArgs) -> MapKind {
    match a.map.unwrap_or_default() {
        MapChoice::HolomorphicGeodesic => MapKind::HolomorphicGeodesic,
        MapChoice::Antiholomorphic => MapKind::Antiholomorphic,
        MapChoice::Constant => MapKind::Constant {
            point: a.point.as_ref().map(|p| HVector::new(p.0[0], p.0[1], p.0[2])),
        },
    }
}

fn check_numeric_flags(a: &InvariantArgs) -> Result<(), CliError> {
    let positive = |name: &str, v: Option<f64>| match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(CliError::Usage(format!("--{name} must be positive"))),
        _ => Ok(()),
    };
    positive("rel-tol", a.rel_tol)?;
    positive("lattice-tol", a.lattice_tol)?;
    positive("rigidity-tol", a.rigidity_tol)?;
    if a.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(())
}

fn toledo(a: &InvariantArgs) -> Result<Value, CliError> {
    check_numeric_flags(a)?;
    let (rep, dom) = load_rep(&a.source)?;
    let map = builtin_map(&map_kind(a), &rep)?;
    let opts = options(a);
    let lattice_tol = a.lattice_tol.unwrap_or(DEFAULT_LATTICE_TOL);
    let (result, report) = if a.probe {
        let probe = toledo_probe(&rep, &map, &dom, &opts)?;
        let mut r = probe.result;
        r.lattice = orbitol_core::toledo::toledo_lattice_check(r.tau, &rep.signature, lattice_tol);
        (r, Some(probe.validation))
    } else {
        (toledo_invariant_with_lattice_tol(&rep, &map, &dom, &opts, lattice_tol)?, None)
    };
    let rigidity = rigidity_check(&result, &rep, a.rigidity_tol.unwrap_or(DEFAULT_RIGIDITY_TOL));
    let mut doc = json!({ "toledo": result, "rigidity": rigidity });
    if let Some(v) = report {
        doc["validation"] = to_value(&v);
    }
    Ok(doc)
}

fn chern(a: &InvariantArgs) -> Result<Value, CliError> {
    check_numeric_flags(a)?;
    let (rep, dom) = load_rep(&a.source)?;
    let map = builtin_map(&map_kind(a), &rep)?;
    let c = chern_number(&rep, &map, &dom, &options(a))?;
    Ok(json!({ "chern": c }))
}

fn verify(a: &VerifyArgs) -> Result<Value, CliError> {
    let (rep, _) = load_rep(&a.source)?;
    let report = validate_representation(&rep, a.tol.unwrap_or(REPRESENTATION_TOL));
    let doc = json!({ "valid": report.is_valid(), "report": report });
    if report.is_valid() {
        Ok(doc)
    } else {
        Err(CliError::Report {
            doc,
            code: EXIT_VALIDATION,
        })
    }
}

fn identity(a: &IdentityArgs) -> Result<Value, CliError> {
    let (Some(t), Some(e)) = (&a.tau_rel, &a.e_rel) else {
        return Err(CliError::Usage("--tau-rel and --e-rel are required".into()));
    };
    let approx = |n: &Number| match n {
        Number::Exact(r) => r.to_f64(),
        Number::Approx(x) => *x,
    };
    let (holds, exact) = match (t, e) {
        (Number::Exact(t), Number::Exact(e)) => (holomorphic_identity_check(t, e), true),
        _ => {
            let tol = a.tol.unwrap_or(DEFAULT_IDENTITY_TOL);
            (holomorphic_identity_check_approx(approx(t), approx(e), tol), false)
        }
    };
    Ok(json!({
        "tau_rel": t.to_string(),
        "e_rel": e.to_string(),
        "exact": exact,
        "tol": if exact { None } else { Some(a.tol.unwrap_or(DEFAULT_IDENTITY_TOL)) },
        "holds": holds,
    }))
}
