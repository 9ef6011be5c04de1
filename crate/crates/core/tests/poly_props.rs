use std::sync::Arc;

use proptest::prelude::*;
use satseq_core::poly::{Monomial, SparsePoly, VariableUniverse};
use satseq_core::rational::{parse_rational, rat};

fn universe() -> Arc<VariableUniverse> {
    VariableUniverse::new(["a0", "a1", "x1", "x2"])
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3, 0u16..3), -6i64..7, 1i64..4), 0..6).prop_map(|terms| {
        let u = universe();
        SparsePoly::from_terms(
            &u,
            terms
                .into_iter()
                .map(|((a, b, c, d), n, den)| (Monomial::from_exponents(vec![a, b, c, d]), rat(n, den))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        let one = SparsePoly::one(&universe());
        prop_assert_eq!(&p * &one, p.clone());
    }

    #[test]
    fn parse_round_trip(p in poly()) {
        let back = SparsePoly::parse(&universe(), &p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn leibniz(p in poly(), q in poly()) {
        let lhs = (&p * &q).partial_derivative(2, 1);
        let rhs = &(&p.partial_derivative(2, 1) * &q) + &(&p * &q.partial_derivative(2, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&satseq_core::rational::to_fraction_string(&r)).unwrap(), r);
    }
}

#[test]
fn universes_do_not_mix() {
    let a = SparsePoly::one(&universe());
    let b = SparsePoly::one(&VariableUniverse::new(["y"]));
    assert!(a.try_add(&b).is_err());
}
