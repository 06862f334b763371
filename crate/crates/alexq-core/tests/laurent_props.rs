use alexq_core::laurent::{LaurentPoly, MonomialUnit};
use proptest::prelude::*;

const NV: usize = 3;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(-3i64..=3, NV),
            -9i64..=9,
        ),
        0..6,
    )
    .prop_map(|terms| {
        let mut acc = LaurentPoly::zero(NV);
        for (exps, c) in terms {
            acc = acc.add_ref(&LaurentPoly::monomial(NV, exps, c));
        }
        acc
    })
}

fn arb_unit() -> impl Strategy<Value = MonomialUnit> {
    (prop::collection::vec(-2i64..=2, NV), any::<bool>()).prop_map(|(exponents, negative)| {
        MonomialUnit {
            negative,
            exponents,
        }
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(
            a.mul_ref(&b.add_ref(&c)),
            a.mul_ref(&b).add_ref(&a.mul_ref(&c))
        );
        prop_assert!(a.sub_ref(&a).is_zero());
    }

    /// Unit recognition agrees with a brute-force search for an inverse
    /// among signed monomials with exponents bounded by the support.
    #[test]
    fn unit_oracle(a in arb_poly()) {
        let bound = 4i64;
        let mut found = None;
        'outer: for e0 in -bound..=bound {
            for e1 in -bound..=bound {
                for e2 in -bound..=bound {
                    for negative in [false, true] {
                        let cand = MonomialUnit { negative, exponents: vec![e0, e1, e2] };
                        if a.mul_ref(&cand.to_poly()).is_one() {
                            found = Some(cand);
                            break 'outer;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(a.is_unit().is_some(), found.is_some());
        if let (Some(u), Some(f)) = (a.is_unit(), found) {
            prop_assert_eq!(u.inverse(), f);
        }
    }

    /// Substitution followed by evaluation equals direct evaluation at
    /// the composed assignments.
    #[test]
    fn substitute_and_evaluate_commute(a in arb_poly(), img in prop::collection::vec(arb_unit(), NV)) {
        let prime = 11u64;
        let assignments = [2u64, 6, 7];
        let substituted = a.substitute_monomials(&img).unwrap();
        let direct = substituted.evaluate_in_prime_field(prime, &assignments).unwrap();
        // evaluate each image monomial first
        let composed: Vec<u64> = img
            .iter()
            .map(|u| u.to_poly().evaluate_in_prime_field(prime, &assignments).unwrap())
            .collect();
        if composed.iter().all(|&v| v != 0) {
            let via = a.evaluate_in_prime_field(prime, &composed).unwrap();
            prop_assert_eq!(direct, via);
        }
    }

    #[test]
    fn parse_round_trips_display(a in arb_poly()) {
        let s = a.to_string();
        let b = LaurentPoly::parse(&s, NV).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn canonical_is_idempotent_and_unit_invariant(a in arb_poly(), u in arb_unit()) {
        prop_assume!(!a.is_zero());
        let c = a.canonical_up_to_unit().unwrap();
        prop_assert_eq!(c.canonical_up_to_unit().unwrap(), c.clone());
        let shifted = a.mul_unit(&u);
        prop_assert_eq!(shifted.canonical_up_to_unit().unwrap(), c.clone());
        prop_assert!(a.eq_up_to_unit(&shifted));
    }

    #[test]
    fn exact_div_recovers_factors(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = a.mul_ref(&b);
        let q = prod.exact_div(&a).expect("a divides a*b");
        prop_assert_eq!(q, b.clone());
        if prod.exact_div(&b.add_ref(&LaurentPoly::one(NV))).is_some() {
            // divisibility claims must verify
            let q2 = prod.exact_div(&b.add_ref(&LaurentPoly::one(NV))).unwrap();
            prop_assert_eq!(q2.mul_ref(&b.add_ref(&LaurentPoly::one(NV))), prod);
        }
    }
}
