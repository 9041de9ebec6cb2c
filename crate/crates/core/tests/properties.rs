//! Randomized laws for the step-function calculus, the Laurent layer,
//! the realization round trip, and the abelian rho sums.

use num_rational::Rational64;
use num_traits::Zero;
use proptest::prelude::*;

use knotsig::angle::Angle;
use knotsig::knot::Knot;
use knotsig::laurent::{
    coprime, strongly_coprime, strongly_coprime_bounded, BoundedCoprimality, LaurentPoly,
    StrongCoprimality,
};
use knotsig::obstruct::rho_finite_cyclic;
use knotsig::seifert::{alexander, realize_from_alexander, signature_at, SeifertMatrix};
use knotsig::stepfn::{JumpRule, StepFunction};

const CASES: u32 = 256;

fn sf_with_denominator(denom: i64, max_jumps: usize) -> impl Strategy<Value = StepFunction> {
    prop::collection::btree_map(1..=(denom / 2 - 1), -3..=3i64, 0..max_jumps).prop_map(
        move |jumps| {
            StepFunction::from_jumps(
                jumps
                    .into_iter()
                    .map(|(n, v)| (Angle::turn(n, denom), v))
                    .collect(),
            )
            .expect("distinct nonzero angles")
        },
    )
}

fn sf_rational() -> impl Strategy<Value = StepFunction> {
    sf_with_denominator(360, 6)
}

fn sf_root_safe() -> impl Strategy<Value = StepFunction> {
    // Denominator 53 is prime and above every tested root order, so no
    // d-th root of unity with d <= 50 ever lands on a jump.
    sf_with_denominator(53, 6)
}

fn banded() -> impl Strategy<Value = SeifertMatrix> {
    (1..=3usize, prop::collection::vec((1..=3i64, any::<bool>()), 6)).prop_map(|(half, diag)| {
        let n = 2 * half;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            let (mag, neg) = diag[i];
            rows[i][i] = if neg { -mag } else { mag };
            if i + 1 < n {
                rows[i][i + 1] = 1;
            }
        }
        SeifertMatrix::new(rows).expect("banded matrices are unimodular")
    })
}

/// Coprime (numerator, denominator) pairs for rational roots.
const ROOT_PAIRS: [(i64, i64); 8] = [
    (2, 1),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 3),
    (5, 2),
    (5, 3),
    (7, 2),
];

fn linear(a: i64, b: i64) -> LaurentPoly {
    // b t - a, with root a / b.
    LaurentPoly::from_coeffs(0, &[-a, b])
}

fn brute_force_root_sum(h: &StepFunction, d: i64) -> i64 {
    let mut total = num_rational::BigRational::zero();
    for r in 0..d {
        total += h.evaluate(&Angle::turn(r, d), JumpRule::Strict).unwrap();
    }
    assert!(total.is_integer());
    i64::try_from(total.to_integer()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn sf_addition_is_pointwise_and_commutative(
        f in sf_rational(),
        g in sf_rational(),
        k in 0i64..=360,
    ) {
        let angle = Angle::turn(k, 720);
        let sum = f.add(&g);
        let lhs = sum.evaluate(&angle, JumpRule::Average).unwrap();
        let rhs = f.evaluate(&angle, JumpRule::Average).unwrap()
            + g.evaluate(&angle, JumpRule::Average).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(sum, g.add(&f));
    }

    #[test]
    fn sf_negation_cancels(f in sf_rational()) {
        prop_assert!(f.add(&f.negate()).is_zero());
    }

    #[test]
    fn sf_scaling_is_repeated_addition(f in sf_rational(), k in 0i64..=5) {
        let mut sum = StepFunction::zero();
        for _ in 0..k {
            sum = sum.add(&f);
        }
        prop_assert_eq!(f.scale(k), sum);
    }

    #[test]
    fn sf_pullback_is_functorial(
        f in sf_rational(),
        a in 1i64..=5,
        b in 1i64..=5,
        k in 0i64..=360,
    ) {
        let composed = f.pullback_power(a).unwrap().pullback_power(b).unwrap();
        let direct = f.pullback_power(a * b).unwrap();
        prop_assert_eq!(&composed, &direct);
        let angle = Angle::turn(k, 720);
        let pulled = direct.evaluate(&angle, JumpRule::Average).unwrap();
        let source = f
            .evaluate(&Angle::turn(k * a * b, 720), JumpRule::Average)
            .unwrap();
        prop_assert_eq!(pulled, source);
    }

    #[test]
    fn sf_pullback_preserves_average(f in sf_rational(), d in 1i64..=7) {
        let avg = f.average();
        let pulled = f.pullback_power(d).unwrap().average();
        prop_assert!(avg.is_rational() && pulled.is_rational());
        prop_assert_eq!(avg.rational_part(), pulled.rational_part());
    }

    #[test]
    fn sf_root_sums_add_and_match_brute_force(
        f in sf_root_safe(),
        g in sf_root_safe(),
        d in 1i64..=50,
    ) {
        let fs = f.sum_over_dth_roots(d).unwrap();
        let gs = g.sum_over_dth_roots(d).unwrap();
        prop_assert_eq!(fs, brute_force_root_sum(&f, d));
        prop_assert_eq!(gs, brute_force_root_sum(&g, d));
        prop_assert_eq!(f.add(&g).sum_over_dth_roots(d).unwrap(), fs + gs);
    }

    #[test]
    fn angle_order_matches_folded_fractions(a in 0i64..720, b in 0i64..720) {
        let fold = |n: i64| {
            let q = Rational64::new(n, 720);
            let frac = q - q.floor();
            let half = Rational64::new(1, 2);
            if frac > half { Rational64::new(1, 1) - frac } else { frac }
        };
        prop_assert_eq!(
            Angle::turn(a, 720).cmp(&Angle::turn(b, 720)),
            fold(a).cmp(&fold(b))
        );
    }

    #[test]
    fn lp_normalization_is_constant_on_unit_orbits(
        coeffs in prop::collection::vec(-5i64..=5, 1..6),
        shift in -4i64..=4,
        negate in any::<bool>(),
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let p = LaurentPoly::from_coeffs(0, &coeffs);
        let unit = LaurentPoly::from_terms(&[(shift, if negate { -1 } else { 1 })]);
        prop_assert_eq!(p.mul(&unit).normalized(), p.normalized());
    }

    #[test]
    fn lp_square_root_round_trips(coeffs in prop::collection::vec(-4i64..=4, 1..5)) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let p = LaurentPoly::from_coeffs(0, &coeffs);
        let sq = p.mul(&p);
        let root = sq.square_root().expect("products of a poly with itself are squares");
        prop_assert_eq!(root.root.normalized(), p.normalized());
    }

    #[test]
    fn lp_dependence_is_refuted_with_a_bounded_witness(
        pair in prop::sample::select(&ROOT_PAIRS[..]),
        j in 1u32..=3,
    ) {
        let (a, b) = pair;
        let p = linear(a, b);
        let q = linear(a.pow(j), b.pow(j));
        match strongly_coprime(&p, &q).unwrap() {
            StrongCoprimality::No(w) => {
                let bound = u32::try_from(w.m.max(w.n)).unwrap();
                prop_assert!(matches!(
                    strongly_coprime_bounded(&p, &q, bound).unwrap(),
                    BoundedCoprimality::No(_)
                ));
            }
            other => prop_assert!(false, "expected dependence, got {other:?}"),
        }
    }

    #[test]
    fn lp_prime_power_roots_are_strongly_coprime(i in 1u32..=3, j in 1u32..=3) {
        let p = linear(2i64.pow(i), 1);
        let q = linear(3i64.pow(j), 1);
        prop_assert!(matches!(
            strongly_coprime(&p, &q).unwrap(),
            StrongCoprimality::Yes
        ));
    }

    #[test]
    fn lp_coprimality_is_symmetric_and_below_strong(
        x in prop::sample::select(&ROOT_PAIRS[..]),
        y in prop::sample::select(&ROOT_PAIRS[..]),
    ) {
        let p = linear(x.0, x.1);
        let q = linear(y.0, y.1);
        prop_assert_eq!(coprime(&p, &q).unwrap(), coprime(&q, &p).unwrap());
        if matches!(strongly_coprime(&p, &q).unwrap(), StrongCoprimality::Yes) {
            prop_assert!(coprime(&p, &q).unwrap());
        }
    }

    #[test]
    fn seifert_realization_round_trips(m in banded()) {
        let p = alexander(&m).unwrap();
        let again = realize_from_alexander(&p).unwrap();
        prop_assert_eq!(alexander(&again).unwrap(), p);
    }

    #[test]
    fn seifert_mirror_negates_signature(
        m in banded(),
        d in prop::sample::select(&[5i64, 7, 8, 9, 12][..]),
        r in 1i64..=5,
    ) {
        let angle = Angle::turn(r.min(d / 2), d);
        let plain = signature_at(&m, &angle, JumpRule::Average).unwrap();
        let mirrored = signature_at(&m.mirror(), &angle, JumpRule::Average).unwrap();
        prop_assert_eq!(mirrored, -plain);
    }

    #[test]
    fn rho_is_additive_and_mirror_antisymmetric(
        f in sf_root_safe(),
        g in sf_root_safe(),
        arf_f in 0u8..=1,
        arf_g in 0u8..=1,
        d in 1i64..=30,
    ) {
        let kf = Knot::from_spectral("f", f, arf_f, vec![]);
        let kg = Knot::from_spectral("g", g, arf_g, vec![]);
        let value = |k: &Knot, d: i64| {
            rho_finite_cyclic(k, d)
                .unwrap()
                .as_integer()
                .expect("finite cyclic rho is an integer")
        };
        let sum = kf.connected_sum(&kg).unwrap();
        prop_assert_eq!(value(&sum, d), value(&kf, d) + value(&kg, d));
        prop_assert_eq!(value(&kf.mirror(), d), -value(&kf, d));
    }
}
