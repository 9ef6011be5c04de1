use proptest::prelude::*;
use satseq_core::rational::{int, rat, ExactRational};
use satseq_core::transvectant::{apply_sl2, binary_form, generic_form, specialize, transvect};
use satseq_core::Covariant;

const D: usize = 6;

fn form(order: usize) -> impl Strategy<Value = Covariant> {
    prop::collection::vec(-4i64..5, order + 1)
        .prop_map(|c| binary_form(D, &c.into_iter().map(int).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetry(a in form(4), b in form(5), r in 0u32..5) {
        let ab = transvect(&a, &b, r).unwrap();
        let ba = transvect(&b, &a, r).unwrap();
        let expect = if r % 2 == 0 { ba } else { ba.scale(&int(-1)) };
        prop_assert_eq!(ab.body(), expect.body());
    }

    #[test]
    fn odd_self_transvectants_vanish(a in form(6), r in 0u32..4) {
        prop_assert!(transvect(&a, &a, 2 * r + 1).unwrap().is_zero());
    }

    #[test]
    fn bilinear(a in form(3), b in form(3), c in form(4), r in 0u32..4, s in -3i64..4) {
        let s = int(s);
        let lhs = transvect(&a.scale(&s).try_add(&b).unwrap(), &c, r).unwrap();
        let rhs = transvect(&a, &c, r).unwrap().scale(&s).try_add(&transvect(&b, &c, r).unwrap()).unwrap();
        prop_assert_eq!(lhs.body(), rhs.body());
    }

    #[test]
    fn order_arithmetic(a in form(4), b in form(5), r in 0u32..5) {
        let t = transvect(&a, &b, r).unwrap();
        prop_assert_eq!(t.order(), 9 - 2 * r);
        if let Some(n) = t.body().x_order() {
            prop_assert_eq!(n, 9 - 2 * r);
        }
    }

    #[test]
    fn sl2_equivariance(a in form(4), b in form(3), r in 0u32..4, t in -3i64..4, u in -2i64..3) {
        // g = [[1, t], [0, 1]] * [[1, 0], [u, 1]]
        let g = [[int(1 + t * u), int(t)], [int(u), int(1)]];
        let lhs = apply_sl2(&transvect(&a, &b, r).unwrap(), g.clone()).unwrap();
        let rhs = transvect(&apply_sl2(&a, g.clone()).unwrap(), &apply_sl2(&b, g).unwrap(), r).unwrap();
        prop_assert_eq!(lhs.body(), rhs.body());
    }

    #[test]
    fn specialization_commutes(coeffs in prop::collection::vec(-3i64..4, 5), r in 0u32..3) {
        let d = 4;
        let coeffs: Vec<ExactRational> = coeffs.into_iter().map(int).collect();
        let f = generic_form(d);
        let h = transvect(&f, &f, 2 * r).unwrap();
        let lhs = specialize(&transvect(&h, &f, 2).unwrap(), &coeffs).unwrap();
        let fs = specialize(&f, &coeffs).unwrap();
        let hs = transvect(&fs, &fs, 2 * r).unwrap();
        let rhs = transvect(&hs, &fs, 2).unwrap();
        prop_assert_eq!(lhs.body(), rhs.body());
    }
}

#[test]
fn scaled_sl2_rejected() {
    let f = generic_form(3);
    assert!(apply_sl2(&f, [[int(2), int(0)], [int(0), int(1)]]).is_err());
    assert!(apply_sl2(&f, [[int(2), int(0)], [int(0), rat(1, 2)]]).is_ok());
}
