//! Compact oriented 2-orbifolds described by their signature
//! `(g; m_1, ..., m_n)`: the genus of the underlying surface together with the
//! orders of the cone points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::{gcd_all, lcm_all, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("cone point order {0} is invalid; orders must be at least 2")]
    InvalidConeOrder(u64),
}

/// Genus plus cone orders. Cone orders are kept sorted ascending so that
/// equal orbifolds compare and hash equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct OrbifoldSignature {
    genus: u64,
    cone_orders: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    genus: u64,
    #[serde(default)]
    cone_orders: Vec<u64>,
}

impl TryFrom<RawSignature> for OrbifoldSignature {
    type Error = OrbifoldError;

    fn try_from(raw: RawSignature) -> Result<Self, Self::Error> {
        OrbifoldSignature::new(raw.genus, raw.cone_orders)
    }
}

impl OrbifoldSignature {
    pub fn new(genus: u64, mut cone_orders: Vec<u64>) -> Result<Self, OrbifoldError> {
        if let Some(&bad) = cone_orders.iter().find(|&&m| m < 2) {
            return Err(OrbifoldError::InvalidConeOrder(bad));
        }
        cone_orders.sort_unstable();
        Ok(OrbifoldSignature { genus, cone_orders })
    }

    /// A closed surface of the given genus.
    pub fn surface(genus: u64) -> Self {
        OrbifoldSignature {
            genus,
            cone_orders: Vec::new(),
        }
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    pub fn cone_count(&self) -> usize {
        self.cone_orders.len()
    }

    /// The same orbifold with one more cone point of order `m`.
    pub fn with_cone(&self, m: u64) -> Result<Self, OrbifoldError> {
        let mut orders = self.cone_orders.clone();
        orders.push(m);
        OrbifoldSignature::new(self.genus, orders)
    }

    pub fn euler_characteristic(&self) -> Rational {
        euler_characteristic(self)
    }

    pub fn goodness(&self) -> Goodness {
        goodness(self)
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.genus)?;
        for (i, m) in self.cone_orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {m}")?;
        }
        write!(f, ")")
    }
}

/// `χ(B) = (2 - 2g) + Σ_k (1/m_k - 1)`.
pub fn euler_characteristic(sig: &OrbifoldSignature) -> Rational {
    let base = Rational::integer(2 - 2 * i128::from(sig.genus));
    sig.cone_orders
        .iter()
        .map(|&m| Rational::recip_of(m) - Rational::one())
        .fold(base, |acc, x| acc + x)
}

/// A rank-one subgroup `g₀·ℤ` of ℚ, with `g₀ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalLattice {
    generator: Rational,
}

impl RationalLattice {
    pub fn new(generator: Rational) -> Self {
        assert!(generator.is_positive(), "lattice generator must be positive");
        RationalLattice { generator }
    }

    pub fn generator(&self) -> &Rational {
        &self.generator
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x / &self.generator).is_integer()
    }

    /// `c·L` for a positive rational `c`.
    pub fn scaled(&self, c: &Rational) -> RationalLattice {
        RationalLattice::new(&self.generator * &c.abs())
    }

    /// The lattice element closest to `x`, ties rounded away from zero.
    pub fn nearest(&self, x: f64) -> Rational {
        let g = self.generator.to_f64();
        let k = (x / g).round();
        // k is an f64 integer; go through i128 to stay exact for moderate sizes.
        let k = BigInt::from(k as i128);
        Rational::integer(k) * &self.generator
    }
}

impl fmt::Display for RationalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})ℤ", self.generator)
    }
}

/// The subgroup `ℤ + (1/m_1)ℤ + ... + (1/m_n)ℤ` of ℚ in single-generator form.
///
/// With `L = lcm(1, m_1, ..., m_n)` every generator is an integer multiple of
/// `1/L`, so the group is `(gcd(L, L/m_1, ..., L/m_n) / L)·ℤ`.
pub fn euler_lattice(sig: &OrbifoldSignature) -> RationalLattice {
    let orders: Vec<BigInt> = sig.cone_orders.iter().map(|&m| BigInt::from(m)).collect();
    let l = lcm_all(&orders);
    let numerators: Vec<BigInt> = std::iter::once(l.clone())
        .chain(orders.iter().map(|m| &l / m))
        .collect();
    let g = gcd_all(&numerators);
    debug_assert!(g.is_one());
    RationalLattice::new(Rational::new(g, l))
}

pub fn is_hyperbolic(sig: &OrbifoldSignature) -> bool {
    euler_characteristic(sig).is_negative()
}

/// Whether an orbifold is a global quotient of a surface. Bad orbifolds
/// still have χ and lattices, but nothing geometric applies to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goodness {
    Good,
    /// Sphere with one cone point.
    Teardrop,
    /// Sphere with two cone points of different orders.
    BadSpindle,
}

impl Goodness {
    pub fn is_good(self) -> bool {
        self == Goodness::Good
    }
}

/// Classical list of bad closed 2-orbifolds: the teardrop `(0; m)` and the
/// spindle `(0; m, n)` with `m ≠ n`.
pub fn goodness(sig: &OrbifoldSignature) -> Goodness {
    match (sig.genus, sig.cone_orders.as_slice()) {
        (0, [_]) => Goodness::Teardrop,
        (0, [a, b]) if a != b => Goodness::BadSpindle,
        _ => Goodness::Good,
    }
}
