//! S¹-orbibundles over 2-orbifolds, encoded by the windings of a section
//! around the cone points, and their behavior under orbifold coverings.
//!
//! Removing a small disc around each cone point `x_k` (order `m_k`) and one
//! around a regular point `x_0`, a section `σ` over the remaining surface has
//! boundary class `-Σ_k (q_k/m_k)·s` in `H₁(M; ℚ)`, with `s` a regular fiber.
//! The Euler number is then `e = q_0 + Σ_k q_k/m_k`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::orbifold::{euler_characteristic, euler_lattice, OrbifoldError, OrbifoldSignature};
use crate::rational::Rational;

/// Orientation convention for the Euler number. `+1` makes the tangent
/// orbibundle have `e = χ`.
pub const SIGN: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("{windings} windings given for {cones} cone points")]
    WindingCountMismatch { cones: usize, windings: usize },
    #[error("covering has {got} stabilizer lists but the base has {expected} cone points")]
    StabilizerCountMismatch { expected: usize, got: usize },
    #[error("covering degree must be positive")]
    ZeroDegree,
    #[error("stabilizer order {stabilizer} does not divide cone order {order} (cone point {cone})")]
    StabilizerDoesNotDivide { cone: usize, order: u64, stabilizer: u64 },
    #[error("orbits over cone point {cone} cover {total} sheets, expected degree {degree}")]
    OrbitCountMismatch { cone: usize, total: u64, degree: u64 },
    #[error("covering data is not realizable: covered surface would have genus {genus2}/2")]
    NonIntegralGenus { genus2: String },
    #[error("euler characteristic of the base vanishes; relative Euler number undefined")]
    ZeroEulerCharacteristic,
    #[error("fiber order must be positive")]
    ZeroFiberOrder,
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
}

/// Winding data of an S¹-orbibundle. `windings[k]` belongs to
/// `base.cone_orders()[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeifert")]
pub struct SeifertData {
    base: OrbifoldSignature,
    q0: i64,
    windings: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeifert {
    base: OrbifoldSignature,
    q0: i64,
    #[serde(default)]
    windings: Vec<i64>,
}

impl TryFrom<RawSeifert> for SeifertData {
    type Error = BundleError;

    fn try_from(raw: RawSeifert) -> Result<Self, Self::Error> {
        SeifertData::new(raw.base, raw.q0, raw.windings)
    }
}

impl SeifertData {
    /// `windings` must follow the (sorted) cone order of `base`.
    pub fn new(base: OrbifoldSignature, q0: i64, windings: Vec<i64>) -> Result<Self, BundleError> {
        if windings.len() != base.cone_count() {
            return Err(BundleError::WindingCountMismatch {
                cones: base.cone_count(),
                windings: windings.len(),
            });
        }
        Ok(SeifertData { base, q0, windings })
    }

    /// Builds from `(order, winding)` pairs in any order; pairs are sorted
    /// together so each winding stays attached to its cone point.
    pub fn from_pairs(genus: u64, q0: i64, mut cones: Vec<(u64, i64)>) -> Result<Self, BundleError> {
        cones.sort_unstable();
        let base = OrbifoldSignature::new(genus, cones.iter().map(|c| c.0).collect())?;
        SeifertData::new(base, q0, cones.into_iter().map(|c| c.1).collect())
    }

    /// The product bundle: every winding zero.
    pub fn trivial(base: OrbifoldSignature) -> Self {
        let n = base.cone_count();
        SeifertData {
            base,
            q0: 0,
            windings: vec![0; n],
        }
    }

    pub fn base(&self) -> &OrbifoldSignature {
        &self.base
    }

    pub fn q0(&self) -> i64 {
        self.q0
    }

    pub fn windings(&self) -> &[i64] {
        &self.windings
    }

    pub fn euler_number(&self) -> Rational {
        euler_number(self)
    }
}

/// `e = SIGN·(q_0 + Σ_k q_k/m_k)`.
pub fn euler_number(sd: &SeifertData) -> Rational {
    let sum = sd
        .windings
        .iter()
        .zip(sd.base.cone_orders())
        .map(|(&q, &m)| Rational::new(q, m))
        .fold(Rational::integer(sd.q0), |acc, x| acc + x);
    Rational::integer(SIGN) * sum
}

/// Winding data of the unit tangent orbibundle: winding 1 around every cone
/// point and `q_0 = χ(underlying surface) - n`.
pub fn tangent_seifert(sig: &OrbifoldSignature) -> SeifertData {
    let n = sig.cone_count() as i64;
    let chi_surface = 2 - 2 * sig.genus() as i64;
    SeifertData {
        base: sig.clone(),
        q0: SIGN * (chi_surface - n),
        windings: vec![SIGN; sig.cone_count()],
    }
}

/// A fiber's class in `H₁(M; ℚ)` measured in regular fibers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberClass {
    pub coefficient: Rational,
}

/// The fiber over a point with local group of order `m` is `1/m` of a regular
/// fiber.
pub fn fiber_class(m: u64) -> Result<FiberClass, BundleError> {
    if m == 0 {
        return Err(BundleError::ZeroFiberOrder);
    }
    Ok(FiberClass {
        coefficient: Rational::recip_of(m),
    })
}

/// Orbit data of a degree-`d` orbifold covering `B₂ → B₁`: for each cone point
/// of `B₁` (in sorted order), the orders of the local groups of its lifts.
///
/// Only the Euler-characteristic obstruction is checked; the existence of an
/// actual covering with this branching is not.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoveringData {
    pub degree: u64,
    pub stabilizers: Vec<Vec<u64>>,
}

impl CoveringData {
    pub fn new(degree: u64, stabilizers: Vec<Vec<u64>>) -> Self {
        CoveringData { degree, stabilizers }
    }

    /// The degree-1 covering of `base` by itself.
    pub fn identity(base: &OrbifoldSignature) -> Self {
        CoveringData {
            degree: 1,
            stabilizers: base.cone_orders().iter().map(|&m| vec![m]).collect(),
        }
    }

    /// Checks divisibility and the orbit-counting constraint
    /// `Σ_i m_k / s_{k,i} = d` at every cone point.
    pub fn validate(&self, base: &OrbifoldSignature) -> Result<(), BundleError> {
        if self.degree == 0 {
            return Err(BundleError::ZeroDegree);
        }
        if self.stabilizers.len() != base.cone_count() {
            return Err(BundleError::StabilizerCountMismatch {
                expected: base.cone_count(),
                got: self.stabilizers.len(),
            });
        }
        for (cone, (orbits, &m)) in self.stabilizers.iter().zip(base.cone_orders()).enumerate() {
            let mut total = 0u64;
            for &s in orbits {
                if s == 0 || m % s != 0 {
                    return Err(BundleError::StabilizerDoesNotDivide {
                        cone,
                        order: m,
                        stabilizer: s,
                    });
                }
                total += m / s;
            }
            if total != self.degree {
                return Err(BundleError::OrbitCountMismatch {
                    cone,
                    total,
                    degree: self.degree,
                });
            }
        }
        Ok(())
    }
}

/// The covering orbifold `B₂`: its cone points are the lifts with nontrivial
/// stabilizer, and its genus is forced by `χ(B₂) = d·χ(B₁)`.
pub fn covered_signature(
    base: &OrbifoldSignature,
    cov: &CoveringData,
) -> Result<OrbifoldSignature, BundleError> {
    cov.validate(base)?;
    let cones: Vec<u64> = cov.stabilizers.iter().flatten().copied().filter(|&s| s > 1).collect();
    let chi2 = Rational::integer(cov.degree) * euler_characteristic(base);
    // χ(B₂) = 2 - 2g + Σ (1/s - 1)  =>  2g = 2 - χ(B₂) + Σ (1/s - 1)
    let correction: Rational = cones.iter().map(|&s| Rational::recip_of(s) - Rational::one()).sum();
    let two_g = Rational::integer(2) - chi2 + correction;
    let genus_err = || BundleError::NonIntegralGenus {
        genus2: two_g.to_string(),
    };
    if !two_g.is_integer() || two_g.is_negative() {
        return Err(genus_err());
    }
    let two_g_int = two_g.numer();
    if !two_g_int.is_even() {
        return Err(genus_err());
    }
    let genus: u64 = (two_g_int / 2u32).try_into().map_err(|_| genus_err())?;
    Ok(OrbifoldSignature::new(genus, cones)?)
}

/// Pulls an S¹-orbibundle back along a covering.
///
/// Each lift of cone point `k` keeps the winding `q_k`. Lifts that are regular
/// points contribute the integer `q_k`, which is absorbed into the new `q_0`
/// together with the `d` lifts of the regular point `x_0`; hence
/// `e(p*L) = d·e(L)` exactly.
pub fn pullback(sd: &SeifertData, cov: &CoveringData) -> Result<SeifertData, BundleError> {
    let covered = covered_signature(&sd.base, cov)?;
    let degree = i64::try_from(cov.degree).expect("covering degree exceeds i64");
    let mut q0 = degree * sd.q0;
    let mut cones: Vec<(u64, i64)> = Vec::new();
    for (orbits, &q) in cov.stabilizers.iter().zip(&sd.windings) {
        for &s in orbits {
            if s > 1 {
                cones.push((s, q));
            } else {
                q0 += q;
            }
        }
    }
    cones.sort_unstable();
    debug_assert_eq!(
        cones.iter().map(|c| c.0).collect::<Vec<_>>(),
        covered.cone_orders()
    );
    SeifertData::new(covered, q0, cones.into_iter().map(|c| c.1).collect())
}

/// `e ∈ ℤ + Σ_k (1/m_k)ℤ`.
pub fn lattice_check(e: &Rational, sig: &OrbifoldSignature) -> bool {
    euler_lattice(sig).contains(e)
}

/// `e(M)/χ(B)`, unchanged by pullback along coverings.
pub fn relative_euler(sd: &SeifertData) -> Result<Rational, BundleError> {
    euler_number(sd)
        .checked_div(&euler_characteristic(&sd.base))
        .ok_or(BundleError::ZeroEulerCharacteristic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u64, cones: &[u64]) -> OrbifoldSignature {
        OrbifoldSignature::new(g, cones.to_vec()).unwrap()
    }

    #[test]
    fn euler_number_examples() {
        assert_eq!(euler_number(&SeifertData::trivial(sig(0, &[2, 3, 7]))), Rational::zero());
        let sd = SeifertData::new(sig(0, &[2, 2]), 0, vec![1, 0]).unwrap();
        assert_eq!(euler_number(&sd), Rational::new(1, 2));
    }

    #[test]
    fn tangent_bundle_has_euler_number_chi() {
        let t = tangent_seifert(&sig(2, &[]));
        assert_eq!(t.q0(), -2);
        assert_eq!(euler_number(&t), Rational::integer(-2));

        let t = tangent_seifert(&sig(0, &[2, 3, 7]));
        assert_eq!(t.q0(), -1);
        assert_eq!(t.windings(), &[1, 1, 1]);
        assert_eq!(euler_number(&t), Rational::new(-1, 42));

        assert_eq!(euler_number(&tangent_seifert(&sig(0, &[3, 3, 4]))), Rational::new(-1, 12));
    }

    #[test]
    fn fiber_classes() {
        assert_eq!(fiber_class(1).unwrap().coefficient, Rational::one());
        assert_eq!(fiber_class(7).unwrap().coefficient, Rational::new(1, 7));
        assert_eq!(fiber_class(2).unwrap().coefficient, Rational::new(1, 2));
        assert_eq!(fiber_class(0), Err(BundleError::ZeroFiberOrder));
    }

    #[test]
    fn covered_signature_examples() {
        // spindle (0;3,3) unwrapped by the sphere
        let cov = CoveringData::new(3, vec![vec![1], vec![1]]);
        assert_eq!(covered_signature(&sig(0, &[3, 3]), &cov).unwrap(), sig(0, &[]));

        let base = sig(1, &[2, 5]);
        assert_eq!(covered_signature(&base, &CoveringData::identity(&base)).unwrap(), base);

        // 84-fold smooth cover of (0;2,3,7) by a genus-2 surface
        let cov = CoveringData::new(84, vec![vec![1; 42], vec![1; 28], vec![1; 12]]);
        assert_eq!(covered_signature(&sig(0, &[2, 3, 7]), &cov).unwrap(), sig(2, &[]));
    }

    #[test]
    fn covered_signature_rejects_bad_data() {
        let base = sig(0, &[2, 3, 7]);
        let err = covered_signature(&base, &CoveringData::new(2, vec![vec![1, 1], vec![3], vec![7]]));
        assert!(matches!(err, Err(BundleError::OrbitCountMismatch { cone: 0, .. })));
        let err = covered_signature(&base, &CoveringData::new(1, vec![vec![2], vec![2], vec![7]]));
        assert!(matches!(err, Err(BundleError::StabilizerDoesNotDivide { cone: 1, .. })));
        let err = covered_signature(&base, &CoveringData::new(1, vec![vec![2], vec![3]]));
        assert!(matches!(err, Err(BundleError::StabilizerCountMismatch { .. })));
        // torus with one cone point of order 2, double cover with a single
        // unbranched orbit: Riemann-Hurwitz parity fails
        let err = covered_signature(&sig(1, &[2]), &CoveringData::new(2, vec![vec![1]]));
        assert!(matches!(err, Err(BundleError::NonIntegralGenus { .. })));
        // branching too heavy: the genus would be negative
        let err = covered_signature(&sig(0, &[2, 2]), &CoveringData::new(2, vec![vec![2, 2], vec![2, 2]]));
        assert!(err.is_err());
    }

    #[test]
    fn pullback_examples() {
        let spindle = SeifertData::new(sig(0, &[2, 2]), 0, vec![1, 0]).unwrap();
        let cov = CoveringData::new(2, vec![vec![1], vec![1]]);
        let pb = pullback(&spindle, &cov).unwrap();
        assert_eq!(pb.base(), &sig(0, &[]));
        assert_eq!(euler_number(&spindle), Rational::new(1, 2));
        assert_eq!(euler_number(&pb), Rational::one());

        let base = sig(0, &[2, 3, 7]);
        let t = tangent_seifert(&base);
        let id = pullback(&t, &CoveringData::identity(&base)).unwrap();
        assert_eq!(id, t);

        let cov = CoveringData::new(84, vec![vec![1; 42], vec![1; 28], vec![1; 12]]);
        assert_eq!(euler_number(&pullback(&t, &cov).unwrap()), Rational::integer(-2));
    }

    #[test]
    fn pullback_keeps_windings_on_branched_lifts() {
        // (1; 2, 4) double-covered: the order-2 point unwraps to one regular
        // point, the order-4 point lifts to one order-2 point. χ: -5/4 -> -5/2.
        let sd = SeifertData::from_pairs(1, 1, vec![(4, 3), (2, 1)]).unwrap();
        let cov = CoveringData::new(2, vec![vec![1], vec![2]]);
        let pb = pullback(&sd, &cov).unwrap();
        assert_eq!(pb.base(), &sig(2, &[2]));
        assert_eq!(pb.windings(), &[3]);
        assert_eq!(pb.q0(), 2 + 1);
        assert_eq!(euler_number(&sd), Rational::new(9, 4));
        assert_eq!(euler_number(&pb), Rational::new(9, 2));
    }

    #[test]
    fn lattice_check_examples() {
        assert!(lattice_check(&Rational::new(-1, 42), &sig(0, &[2, 3, 7])));
        assert!(!lattice_check(&Rational::new(1, 84), &sig(0, &[2, 3, 7])));
        assert!(lattice_check(&Rational::integer(5), &sig(3, &[])));
    }

    #[test]
    fn relative_euler_examples() {
        for s in [sig(0, &[2, 3, 7]), sig(2, &[]), sig(1, &[3])] {
            assert_eq!(relative_euler(&tangent_seifert(&s)).unwrap(), Rational::one());
            assert_eq!(relative_euler(&SeifertData::trivial(s)).unwrap(), Rational::zero());
        }
        let sd = SeifertData::new(sig(2, &[]), 1, vec![]).unwrap();
        assert_eq!(relative_euler(&sd).unwrap(), Rational::new(-1, 2));
        let torus = SeifertData::new(sig(1, &[]), 1, vec![]).unwrap();
        assert_eq!(relative_euler(&torus), Err(BundleError::ZeroEulerCharacteristic));
    }

    #[test]
    fn seifert_json_shape() {
        let sd: SeifertData =
            serde_json::from_str(r#"{"base":{"genus":2,"cone_orders":[]},"q0":0,"windings":[]}"#).unwrap();
        assert_eq!(euler_number(&sd), Rational::zero());
        assert!(serde_json::from_str::<SeifertData>(
            r#"{"base":{"genus":0,"cone_orders":[2]},"q0":0,"windings":[]}"#
        )
        .is_err());
        let cov: CoveringData = serde_json::from_str(r#"{"degree":2,"stabilizers":[[1],[1]]}"#).unwrap();
        assert_eq!(cov.degree, 2);
    }
}
