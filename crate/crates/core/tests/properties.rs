use num_complex::Complex64;
use orbitol_core::chp::sample::{random_ball_point, random_su21, random_tangent};
use orbitol_core::chp::{
    curvature, curvature_trace, distance, herm, metric, sectional_curvature, su21_residuals, HPoint, HTangent,
};
use orbitol_core::orbibundle::{covered_signature, euler_number, lattice_check, pullback, relative_euler, tangent_seifert};
use orbitol_core::orbifold::{euler_characteristic, euler_lattice, OrbifoldSignature};
use orbitol_core::toledo::toledo_lattice_check;
use orbitol_core::{CoveringData, Rational, SeifertData};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn signature() -> impl Strategy<Value = OrbifoldSignature> {
    (0u64..5, prop::collection::vec(2u64..30, 0..6)).prop_map(|(g, cones)| OrbifoldSignature::new(g, cones).unwrap())
}

fn seifert() -> impl Strategy<Value = SeifertData> {
    signature().prop_flat_map(|sig| {
        let n = sig.cone_count();
        (Just(sig), -20i64..20, prop::collection::vec(-40i64..40, n))
            .prop_map(|(sig, q0, w)| SeifertData::new(sig, q0, w).unwrap())
    })
}

/// Random orbit decomposition over each cone point for a degree-`d` cover.
fn random_covering(rng: &mut ChaCha8Rng, sig: &OrbifoldSignature, d: u64) -> CoveringData {
    let stabilizers = sig
        .cone_orders()
        .iter()
        .map(|&m| {
            let divisors: Vec<u64> = (1..=m).filter(|s| m % s == 0).collect();
            let mut left = d;
            let mut orbits = Vec::new();
            while left > 0 {
                let s = divisors[rng.random_range(0..divisors.len())];
                if m / s <= left {
                    left -= m / s;
                    orbits.push(s);
                }
            }
            orbits
        })
        .collect();
    CoveringData::new(d, stabilizers)
}

fn seeded_point_pair(seed: u64) -> (HTangent, HTangent) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_ball_point(&mut rng, 0.95);
    (random_tangent(&mut rng, &p), random_tangent(&mut rng, &p))
}

proptest! {
    #[test]
    fn euler_number_lies_in_the_lattice(sd in seifert()) {
        let e = euler_number(&sd);
        prop_assert!(euler_lattice(sd.base()).contains(&e));
        prop_assert!(lattice_check(&e, sd.base()));
    }

    #[test]
    fn tangent_bundle_has_euler_number_chi(sig in signature()) {
        prop_assert_eq!(euler_number(&tangent_seifert(&sig)), euler_characteristic(&sig));
    }

    #[test]
    fn pullback_is_multiplicative(sd in seifert(), d in 1u64..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cov = random_covering(&mut rng, sd.base(), d);
        prop_assume!(covered_signature(sd.base(), &cov).is_ok());
        let up = pullback(&sd, &cov).unwrap();
        prop_assert_eq!(euler_number(&up), Rational::integer(d) * euler_number(&sd));
        // χ is multiplicative as well
        prop_assert_eq!(euler_characteristic(up.base()), Rational::integer(d) * euler_characteristic(sd.base()));
        if let (Ok(a), Ok(b)) = (relative_euler(&sd), relative_euler(&up)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn chi_adds_one_over_m_minus_one_per_cone(sig in signature(), m in 2u64..30) {
        let more = sig.with_cone(m).unwrap();
        prop_assert_eq!(
            euler_characteristic(&more),
            euler_characteristic(&sig) + Rational::recip_of(m) - Rational::one()
        );
    }

    #[test]
    fn toledo_lattice_contains_two_thirds_of_euler_numbers(sd in seifert()) {
        let e = euler_number(&sd);
        let tau = Rational::new(2, 3) * &e;
        prop_assert!(toledo_lattice_check(tau.to_f64(), sd.base(), 1e-9).member);
    }

    #[test]
    fn sectional_curvature_is_pinched(seed in any::<u64>()) {
        let (s, t) = seeded_point_pair(seed);
        if let Ok(k) = sectional_curvature(&s, &t) {
            prop_assert!((-4.0 - 1e-9..=-1.0 + 1e-9).contains(&k), "{}", k);
        }
    }

    #[test]
    fn trace_is_six_i_omega(seed in any::<u64>()) {
        let (s, t) = seeded_point_pair(seed);
        let scale = metric(&s, &s).unwrap().g * metric(&t, &t).unwrap().g;
        let tr = curvature_trace(&s, &t).unwrap();
        let w = metric(&s, &t).unwrap().omega;
        prop_assert!((tr - Complex64::new(0.0, 6.0 * w)).norm() <= 1e-9 * scale.sqrt().max(1.0));
    }

    #[test]
    fn curvature_is_antisymmetric(seed in any::<u64>()) {
        let (s, t) = seeded_point_pair(seed);
        let a = curvature(&s, &t, &s).unwrap();
        let b = curvature(&t, &s, &s).unwrap();
        prop_assert!((a.vector() + b.vector()).norm() <= 1e-9 * a.vector().norm().max(1.0));
    }

    #[test]
    fn isometries_preserve_the_form(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_su21(&mut rng, 2.0);
        let (f, d) = su21_residuals(&m);
        prop_assert!(f < 1e-9 && d < 1e-9);
        let p = random_ball_point(&mut rng, 0.9);
        let q = random_ball_point(&mut rng, 0.9);
        let (u, v) = (p.rep(), q.rep());
        let before = herm(u, v);
        let after = herm(&(m * u), &(m * v));
        prop_assert!((before - after).norm() <= 1e-9 * (m.norm() * m.norm()).max(1.0));
        let d0 = distance(&p, &q).unwrap();
        let d1 = distance(&p.transformed(&m), &q.transformed(&m)).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-7);
    }

    #[test]
    fn distance_satisfies_triangle_inequality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<HPoint> = (0..3).map(|_| random_ball_point(&mut rng, 0.95)).collect();
        let d = |i: usize, j: usize| distance(&pts[i], &pts[j]).unwrap();
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
        prop_assert!((d(0, 1) - d(1, 0)).abs() <= 1e-9);
    }
}
