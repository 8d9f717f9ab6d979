use bigal_core::qbuilders::{FrobeniusSequence, QContext, SLMatrix};
use bigal_core::CycScalar;
use proptest::prelude::*;

fn int(x: i64) -> CycScalar {
    CycScalar::from_int(3, x)
}

/// Products of elementary matrices, so always in SL(2, Z).
fn sl2z() -> impl Strategy<Value = SLMatrix> {
    proptest::collection::vec((any::<bool>(), -2i64..=2), 1..4).prop_map(|steps| {
        steps
            .into_iter()
            .fold(SLMatrix::identity(3, 2), |m, (upper, k)| {
                let e = if upper {
                    vec![vec![int(1), int(k)], vec![int(0), int(1)]]
                } else {
                    vec![vec![int(1), int(0)], vec![int(k), int(1)]]
                };
                m.mul(&SLMatrix::new(3, e).unwrap())
            })
    })
}

#[test]
fn dimensions_follow_n_and_order() {
    for big_n in [3usize, 5] {
        let ctx = QContext::new(2, big_n).unwrap();
        assert_eq!(ctx.build_uq_star().unwrap().alg.dim(), big_n.pow(3));
        let b = ctx.build_taft().unwrap();
        assert_eq!(b.alg.dim(), big_n * big_n);
        for s in [0, 1] {
            assert_eq!(
                ctx.build_cleft_a(&CycScalar::from_int(big_n as u32, s), &b)
                    .unwrap()
                    .dim(),
                big_n * big_n
            );
        }
    }
}

#[test]
fn even_or_unit_order_is_rejected() {
    assert!(QContext::new(2, 4).is_err());
    assert!(QContext::new(2, 1).is_err());
    assert!(QContext::new(1, 3).is_err());
}

#[test]
fn determinant_must_be_one() {
    assert!(SLMatrix::new(3, vec![vec![int(2), int(0)], vec![int(0), int(1)]]).is_err());
}

#[test]
fn standard_monomial_count_matches_closed_form() {
    let ctx = QContext::new(2, 3).unwrap();
    let seq = FrobeniusSequence::build(&ctx).unwrap();
    for bound in [3usize, 6, 9] {
        let report = seq.verify(bound);
        // degree-m monomials in a, b, c, d not divisible by ad: C(m+3,3) - C(m+1,3) = (m+1)^2
        let expected: usize = (0..=bound / 3).map(|j| (j + 1) * (j + 1)).sum();
        assert_eq!(report.standard_monomials, expected, "bound {bound}");
        assert_eq!(report.injectivity_rank, expected);
        assert!(report.passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_integral_g_gives_an_object_of_full_dimension(g in sl2z()) {
        let ctx = QContext::new(2, 3).unwrap();
        let h = ctx.build_uq_star().unwrap();
        prop_assert_eq!(ctx.build_t_g(&g, &h).unwrap().dim(), 27);
    }

    #[test]
    fn matrix_inverse_and_json_round_trip(g in sl2z()) {
        prop_assert_eq!(g.mul(&g.inverse()), SLMatrix::identity(3, 2));
        prop_assert_eq!(SLMatrix::from_json(3, &g.to_json()).unwrap(), g);
    }
}
