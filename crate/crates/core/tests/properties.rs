//! Property tests for the exact kernel: normal forms, echelon idempotence,
//! coset coordinates, class arithmetic and wire-format round trips.

use proptest::prelude::*;

use voak_core::bundle::{k_add, k_eq, IrrepTable, KClass};
use voak_core::element::GradedElement;
use voak_core::linalg::Subspace;
use voak_core::monomial::{enumerate_basis, Factor, Monomial};
use voak_core::rational::{is_normal_form, Rational};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    // weight at most 9, so the rank-2 ambient through weight 9 covers all
    // generated support
    proptest::collection::vec((1u32..=2, 1u32..=3), 0..4).prop_map(|pairs| {
        Monomial::from_factors(
            pairs
                .into_iter()
                .map(|(gen, depth)| Factor { gen, depth })
                .collect(),
        )
    })
}

fn arb_element() -> impl Strategy<Value = GradedElement> {
    proptest::collection::vec((arb_monomial(), arb_rational()), 0..5).prop_map(|terms| {
        let mut e = GradedElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    })
}

proptest! {
    #[test]
    fn element_coefficients_always_normalized(a in arb_element(), b in arb_element(), s in arb_rational()) {
        let mut x = &a + &b;
        x.add_scaled(&s, &a);
        for (_, c) in x.iter() {
            prop_assert!(is_normal_form(c));
            prop_assert!(!num_traits::Zero::is_zero(c));
        }
    }

    #[test]
    fn addition_commutes_and_subtraction_cancels(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&(&a + &b) - &b).eq(&a));
    }

    #[test]
    fn echelonize_idempotent(vs in proptest::collection::vec(arb_element(), 0..6)) {
        let s1 = Subspace::echelonize(vs);
        let s2 = Subspace::echelonize(s1.basis());
        prop_assert_eq!(&s1, &s2);
    }

    #[test]
    fn span_contains_linear_combinations(
        vs in proptest::collection::vec(arb_element(), 1..5),
        c1 in arb_rational(),
        c2 in arb_rational(),
    ) {
        let s = Subspace::echelonize(vs.clone());
        let mut combo = vs[0].scaled(&c1);
        combo.add_scaled(&c2, vs.last().unwrap());
        prop_assert!(s.contains(&combo));
    }

    #[test]
    fn quotient_coords_iff_difference_in_span(
        gens in proptest::collection::vec(arb_element(), 0..4),
        v1 in arb_element(),
        v2 in arb_element(),
    ) {
        // ambient: everything of weight <= 9 over rank 2 covers all
        // generated monomials
        let mut ambient = Vec::new();
        for w in 0..=9 {
            ambient.extend(enumerate_basis(2, w));
        }
        let s = Subspace::echelonize(gens);
        let c1 = s.quotient_coords(&ambient, &v1).unwrap();
        let c2 = s.quotient_coords(&ambient, &v2).unwrap();
        let diff_in = s.contains(&(&v1 - &v2));
        prop_assert_eq!(c1 == c2, diff_in);
    }

    #[test]
    fn element_json_round_trip(a in arb_element()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: GradedElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn k_class_congruence(
        a in proptest::collection::vec(-10i64..=10, 4),
        b in proptest::collection::vec(-10i64..=10, 4),
        c in proptest::collection::vec(-10i64..=10, 4),
    ) {
        let table = IrrepTable::anonymous(4);
        let ka = KClass::new(&table, a).unwrap();
        let kb = KClass::new(&table, b).unwrap();
        let kc = KClass::new(&table, c).unwrap();
        // congruence: a = b implies a + c = b + c
        if k_eq(&ka, &kb).unwrap() {
            let left = k_add(&ka, &kc).unwrap();
            let right = k_add(&kb, &kc).unwrap();
            prop_assert!(k_eq(&left, &right).unwrap());
        }
        // group laws
        let assoc1 = k_add(&k_add(&ka, &kb).unwrap(), &kc).unwrap();
        let assoc2 = k_add(&ka, &k_add(&kb, &kc).unwrap()).unwrap();
        prop_assert!(k_eq(&assoc1, &assoc2).unwrap());
    }
}
