use std::sync::{Arc, OnceLock};

use bigal_core::cyclotomic::{CycScalar, Rat};
use bigal_core::hopfcore::{
    convolution_inverse, convolve, solve_characters, Character, CoinnerVerdict, HopfAutomorphism,
    HopfData, HopfFd, LinearMap, Scope,
};
use bigal_core::qbuilders::{QContext, SLMatrix};
use proptest::prelude::*;

fn ctx() -> QContext {
    QContext::new(2, 3).unwrap()
}

fn uq() -> Arc<HopfFd> {
    static H: OnceLock<Arc<HopfFd>> = OnceLock::new();
    H.get_or_init(|| ctx().build_uq_star().unwrap()).clone()
}

fn s(x: i64) -> CycScalar {
    CycScalar::from_int(3, x)
}

fn r(n: i64, d: i64) -> CycScalar {
    CycScalar::from_rat(3, Rat::new(n, d))
}

fn z(k: i64) -> CycScalar {
    CycScalar::zeta_pow(3, k)
}

fn matrix(js: &str) -> SLMatrix {
    SLMatrix::from_json(3, js).unwrap()
}

#[test]
fn uq_star_has_three_characters() {
    let h = uq();
    let fam = solve_characters(3, 4, &h.relations).unwrap();
    assert_eq!(fam.count(), Some(3));
    let all = fam.all_characters().unwrap();
    assert_eq!(all.len(), 3);
    for c in &all {
        assert!(c.satisfies(&h.relations));
        assert!(c.values[1].is_zero() && c.values[2].is_zero());
        assert!((&c.values[0] * &c.values[3]).is_one());
        assert!(c.values[0].pow(3).is_one());
    }
}

#[test]
fn diagonal_t_g_has_rational_witness() {
    let ctx = ctx();
    let p = ctx.presentation_t_g(&matrix(r#"[["8","0"],["0","1/8"]]"#));
    let fam = solve_characters(3, 4, &p.relations).unwrap();
    assert!(fam.exists());
    let want = Character::new(vec![s(2), s(0), s(0), r(1, 2)]);
    assert!(fam.all_characters().unwrap().contains(&want));
    assert!(want.satisfies(&p.relations));
}

#[test]
fn unipotent_t_g_has_no_character() {
    let p = ctx().presentation_t_g(&matrix(r#"[["1","1"],["0","1"]]"#));
    let fam = solve_characters(3, 4, &p.relations).unwrap();
    assert!(!fam.exists());
    assert_eq!(fam.count(), Some(0));
}

#[test]
fn characters_form_a_group_under_convolution() {
    let h = uq();
    let all = solve_characters(3, 4, &h.relations)
        .unwrap()
        .all_characters()
        .unwrap();
    let eps = Character::new(h.counit.clone());
    assert!(all.contains(&eps));
    for a in &all {
        assert_eq!(a.convolve(&h, &a.inverse(&h)), eps);
        assert_eq!(a.inverse(&h).convolve(&h, a), eps);
        for b in &all {
            assert!(all.contains(&a.convolve(&h, b)));
        }
    }
}

#[test]
fn convolution_unit_and_antipode_inverse() {
    let h = uq();
    let id = LinearMap::identity(h.alg.dim(), 3);
    let unit = LinearMap::counit_unit(&h);
    assert_eq!(convolve(&h, &h.alg, &unit, &id), id);
    assert_eq!(convolve(&h, &h.alg, &id, &unit), id);
    let inv = convolution_inverse(&h, &h.alg, &id).unwrap();
    let antipode: Vec<_> = (0..h.alg.dim()).map(|i| h.antipode_key(&i)).collect();
    assert_eq!(inv.images, antipode);
}

#[test]
fn zero_map_is_not_invertible() {
    let h = uq();
    let zero = LinearMap {
        images: vec![Default::default(); h.alg.dim()],
    };
    assert!(convolution_inverse(&h, &h.alg, &zero).is_err());
}

#[test]
fn corrupted_antipode_fails_at_b() {
    let h = uq();
    let mut antipode = h.antipode.clone();
    antipode[1] = h.alg.gen(1).scaled(&z(-1));
    let bad = HopfData::new(
        "corrupted",
        h.alg.clone(),
        h.relations.clone(),
        h.delta.clone(),
        h.counit.clone(),
        antipode,
    );
    let rep = bad.verify(Scope::UpToDegree(usize::MAX));
    let left = rep.check("antipode-left").unwrap();
    assert!(!left.passed);
    assert!(left.failures.contains(&"b".to_string()));
    assert!(rep.check("coassociativity").unwrap().passed);
}

#[test]
fn f_r_with_cube_roots_is_coinner() {
    let h = uq();
    let fam = solve_characters(3, 4, &h.relations).unwrap();
    let f = HopfAutomorphism::f_r(&h, 2, &[z(1), z(2)]).unwrap();
    assert!(f.certify(&h).iter().all(|c| c.passed));
    match f.is_coinner(&h, &fam) {
        CoinnerVerdict::Coinner(phi) => {
            assert_eq!(phi, Character::new(vec![z(2), s(0), s(0), z(1)]))
        }
        other => panic!("expected co-inner, got {other:?}"),
    }
}

#[test]
fn f_r_with_rational_torus_is_not_coinner() {
    let h = uq();
    let fam = solve_characters(3, 4, &h.relations).unwrap();
    let f = HopfAutomorphism::f_r(&h, 2, &[s(2), r(1, 2)]).unwrap();
    assert!(f.certify(&h).iter().all(|c| c.passed));
    assert_eq!(
        f.is_coinner(&h, &fam),
        CoinnerVerdict::NotCoinner { searched: 3 }
    );
}

#[test]
fn trivial_torus_is_identity_and_coinner_by_counit() {
    let h = uq();
    let fam = solve_characters(3, 4, &h.relations).unwrap();
    let f = HopfAutomorphism::f_r(&h, 2, &[s(1), s(1)]).unwrap();
    assert_eq!(f.on_gens, HopfAutomorphism::identity(&h).on_gens);
    assert_eq!(
        f.is_coinner(&h, &fam),
        CoinnerVerdict::Coinner(Character::new(h.counit.clone()))
    );
}

#[test]
fn torus_parameter_must_have_product_one() {
    let h = uq();
    assert!(HopfAutomorphism::f_r(&h, 2, &[s(2), s(1)]).is_err());
    assert!(HopfAutomorphism::f_r(&h, 2, &[s(1)]).is_err());
}

fn torus_entry() -> impl Strategy<Value = CycScalar> {
    (-2i64..=2, 0i64..3, any::<bool>()).prop_map(|(e, k, neg)| {
        let base = r(2, 1).pow(e);
        let x = &base * &z(k);
        if neg {
            -&x
        } else {
            x
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn f_r_composition_is_componentwise(a in torus_entry(), b in torus_entry()) {
        let h = uq();
        let ra = vec![a.clone(), a.inv().unwrap()];
        let rb = vec![b.clone(), b.inv().unwrap()];
        let fa = HopfAutomorphism::f_r(&h, 2, &ra).unwrap();
        let fb = HopfAutomorphism::f_r(&h, 2, &rb).unwrap();
        let prod: Vec<CycScalar> = ra.iter().zip(&rb).map(|(x, y)| x * y).collect();
        let fab = HopfAutomorphism::f_r(&h, 2, &prod).unwrap();
        prop_assert_eq!(fa.compose(&h, &fb).on_gens, fab.on_gens);
    }
}
