//! Orbifold Euler numbers and Toledo invariants of orbifold group
//! representations into PU(2,1).

pub mod chp;
pub mod json;
pub mod orbibundle;
pub mod orbifold;
pub mod quadrature;
pub mod rational;
pub mod toledo;

pub use chp::{ChpError, HMatrix, HPoint, HTangent, HVector, Metric, SignClass};
pub use orbibundle::{BundleError, CoveringData, FiberClass, SeifertData};
pub use orbifold::{OrbifoldError, OrbifoldSignature, RationalLattice};
pub use quadrature::{DiscPoint, GeodesicPolygon, Integral, IntegrationOptions, Mat2, QuadratureError};
pub use rational::Rational;
pub use toledo::{
    EquivariantMapSpec, LatticeVerdict, MapKind, RepresentationData, RigidityReport, ToledoError, ToledoResult,
};
