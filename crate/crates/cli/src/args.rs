//! Command-line flags. Every subcommand's flags double as the payload of a
//! job file: `--file job.json` reads `{"command": "<name>", ...}` with the
//! same fields, written in snake_case.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use orbitol_core::{CoveringData, OrbifoldSignature, SeifertData};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer};

#[derive(Debug, Parser)]
#[command(name = "orbitol", version, about = "Orbifold Euler numbers and Toledo invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Orbifold Euler characteristic χ.
    Chi(SignatureArgs),
    /// Euler number of an S¹-orbibundle.
    Euler(SeifertArgs),
    /// Euler lattice ℤ + Σ(1/m_k)ℤ, optionally testing a value.
    Lattice(LatticeArgs),
    /// Pull an S¹-orbibundle back along a covering.
    Pullback(PullbackArgs),
    /// Seifert data of the unit tangent bundle.
    Tangent(SignatureArgs),
    /// Sample sectional curvatures and the trace identity.
    CurvatureProbe(ProbeArgs),
    /// Toledo invariant of a representation.
    Toledo(InvariantArgs),
    /// First Chern number from the curvature trace.
    Chern(InvariantArgs),
    /// Check that a representation is valid.
    VerifyRep(VerifyArgs),
    /// Test (3/2)·τ_R = e_R + 1.
    IdentityCheck(IdentityArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Chi(_) => "chi",
            Command::Euler(_) => "euler",
            Command::Lattice(_) => "lattice",
            Command::Pullback(_) => "pullback",
            Command::Tangent(_) => "tangent",
            Command::CurvatureProbe(_) => "curvature-probe",
            Command::Toledo(_) => "toledo",
            Command::Chern(_) => "chern",
            Command::VerifyRep(_) => "verify-rep",
            Command::IdentityCheck(_) => "identity-check",
        }
    }

    pub fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Chi(a) | Command::Tangent(a) => a.file.as_ref(),
            Command::Euler(a) => a.file.as_ref(),
            Command::Lattice(a) => a.file.as_ref(),
            Command::Pullback(a) => a.file.as_ref(),
            Command::CurvatureProbe(a) => a.file.as_ref(),
            Command::Toledo(a) | Command::Chern(a) => a.file.as_ref(),
            Command::VerifyRep(a) => a.file.as_ref(),
            Command::IdentityCheck(a) => a.file.as_ref(),
        }
    }
}

/// A flag holding inline JSON; in job files the value is the JSON itself.
#[derive(Debug, Clone)]
pub struct Json<T>(pub T);

impl<T: DeserializeOwned> FromStr for Json<T> {
    type Err = serde_json::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s).map(Json)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Json<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        T::deserialize(d).map(Json)
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureArgs {
    #[arg(long)]
    pub genus: Option<u64>,
    /// Comma-separated cone orders.
    #[arg(long, value_delimiter = ',')]
    pub cones: Option<Vec<u64>>,
    /// Signature as JSON: {"genus": g, "cone_orders": [...]}.
    #[arg(long, conflicts_with_all = ["genus", "cones"])]
    pub signature: Option<Json<OrbifoldSignature>>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertArgs {
    /// Seifert data as JSON: {"base": signature, "q0": n, "windings": [...]}.
    #[arg(long)]
    pub seifert: Option<Json<SeifertData>>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeArgs {
    #[arg(long)]
    pub genus: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub cones: Option<Vec<u64>>,
    #[arg(long, conflicts_with_all = ["genus", "cones"])]
    pub signature: Option<Json<OrbifoldSignature>>,
    /// Exact value to test, e.g. -1/42.
    #[arg(long, allow_hyphen_values = true)]
    pub value: Option<String>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackArgs {
    #[arg(long)]
    pub seifert: Option<Json<SeifertData>>,
    /// Covering as JSON: {"degree": d, "stabilizers": [[...], ...]}.
    #[arg(long)]
    pub covering: Option<Json<CoveringData>>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

pub const DEFAULT_PROBE_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeArgs {
    /// Number of random tangent planes [default: 100000].
    #[arg(long)]
    pub samples: Option<usize>,
    /// RNG seed [default: fixed].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapChoice {
    #[default]
    HolomorphicGeodesic,
    Antiholomorphic,
    Constant,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetsChoice {
    /// Use the targets as given.
    #[default]
    AsIs,
    /// Replace every target by the identity.
    Trivial,
    /// Complex-conjugate every target.
    Conjugate,
}

/// Where a representation comes from.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSource {
    /// genus2, triangle:p,q,r or triangle-block:p,q,r.
    #[arg(long, conflicts_with = "rep")]
    pub preset: Option<String>,
    /// Representation JSON file.
    #[arg(long)]
    pub rep: Option<PathBuf>,
    /// octagon, triangle:p,q,r or a polygon JSON file; inferred from the
    /// signature when omitted.
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long, value_enum)]
    pub targets: Option<TargetsChoice>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantArgs {
    #[command(flatten)]
    #[serde(default)]
    pub source: RepSource,
    #[arg(long, value_enum)]
    pub map: Option<MapChoice>,
    /// Fixed point of a constant map as JSON [[re,im],[re,im],[re,im]].
    #[arg(long)]
    pub point: Option<Json<[Complex64; 3]>>,
    /// Relative quadrature tolerance [default: 1e-8].
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Maximum refinement depth [default: 11].
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Quadrature worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Distance to the Toledo lattice accepted as membership [default: 1e-3].
    #[arg(long)]
    pub lattice_tol: Option<f64>,
    /// Tolerance on |τ_R| for the rigidity report.
    #[arg(long)]
    pub rigidity_tol: Option<f64>,
    /// Report an invalid representation instead of rejecting it.
    #[arg(long)]
    #[serde(default)]
    pub probe: bool,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(default)]
    pub source: RepSource,
    /// Tolerance on relator and form residuals [default: 1e-8].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityArgs {
    /// τ_R as a fraction (exact test) or a decimal (approximate test).
    #[arg(long, allow_hyphen_values = true)]
    pub tau_rel: Option<Number>,
    /// e_R as a fraction or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub e_rel: Option<Number>,
    /// Tolerance for the approximate test.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Job file replacing all other flags.
    #[arg(long)]
    #[serde(skip)]
    pub file: Option<PathBuf>,
}

/// A number given either exactly (`-2/3`, `4`) or as a decimal.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(orbitol_core::Rational),
    Approx(f64),
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(r) = s.parse() {
            return Ok(Number::Exact(r));
        }
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Number::Approx)
            .ok_or_else(|| format!("`{s}` is neither a fraction nor a finite decimal"))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => write!(f, "{r}"),
            Number::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Exact(orbitol_core::Rational),
            Int(i64),
            Float(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Exact(r) => Ok(Number::Exact(r)),
            Raw::Int(n) => Ok(Number::Exact(orbitol_core::Rational::integer(n))),
            Raw::Float(x) => Ok(Number::Approx(x)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
