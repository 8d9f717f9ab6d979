use std::sync::{Arc, OnceLock};

use bigal_core::cyclotomic::CycScalar;
use bigal_core::galoislab::{ComoduleAlgebra, Side};
use bigal_core::hopfcore::{solve_characters, HopfFd, LinearMap};
use bigal_core::lazycoh::{
    cocycle_from_cleft, gauge_section, is_central_functional, is_cocycle, perturbed_counit,
    pullback_cocycle, word_section, CleftError, Cocycle, CocycleError, Laziness,
};
use bigal_core::ncalg::{Algebra, Elem, Word};
use bigal_core::qbuilders::QContext;

fn ctx() -> QContext {
    QContext::new(2, 3).unwrap()
}

fn taft() -> Arc<HopfFd> {
    static B: OnceLock<Arc<HopfFd>> = OnceLock::new();
    B.get_or_init(|| ctx().build_taft().unwrap()).clone()
}

fn uq() -> Arc<HopfFd> {
    static H: OnceLock<Arc<HopfFd>> = OnceLock::new();
    H.get_or_init(|| ctx().build_uq_star().unwrap()).clone()
}

fn cleft_a(s: i64) -> ComoduleAlgebra {
    ctx()
        .build_cleft_a(&CycScalar::from_int(3, s), &taft())
        .unwrap()
}

fn a1_cocycle() -> Cocycle {
    static S: OnceLock<Cocycle> = OnceLock::new();
    S.get_or_init(|| {
        let a = cleft_a(1);
        cocycle_from_cleft(&a, &word_section(&taft(), &a).unwrap()).unwrap()
    })
    .clone()
}

/// The A(1) cocycle for the section `b ↦ f(b_(1)) G^i X^j` with `f = ε + x*`.
fn a1_gauged() -> Cocycle {
    static S: OnceLock<Cocycle> = OnceLock::new();
    S.get_or_init(|| {
        let (a, b) = (cleft_a(1), taft());
        let f = perturbed_counit(&b, x_index(&b));
        cocycle_from_cleft(&a, &gauge_section(&b, &word_section(&b, &a).unwrap(), &f)).unwrap()
    })
    .clone()
}

fn x_index(b: &HopfFd) -> usize {
    b.alg.index_of(&Word::gen(1)).unwrap()
}

fn eps_eps(h: &HopfFd) -> Vec<Vec<CycScalar>> {
    let d = h.alg.dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| &h.counit_key(&i) * &h.counit_key(&j))
                .collect()
        })
        .collect()
}

#[test]
fn taft_as_its_own_cleft_object_gives_trivial_cocycle() {
    let b = taft();
    let t = ComoduleAlgebra::new("B", b.alg.clone(), b.relations.clone()).with_coaction(
        Side::Right,
        b.clone(),
        b.delta.clone(),
    );
    let id = LinearMap::identity(b.alg.dim(), b.order());
    let sigma = cocycle_from_cleft(&t, &id).unwrap();
    assert_eq!(sigma.values, eps_eps(&b));
    assert_eq!(sigma.lazy, Laziness::Lazy);
}

#[test]
fn a1_cocycle_is_valid_and_reconstructs_the_crossed_product() {
    let b = taft();
    let a = cleft_a(1);
    let sigma = a1_cocycle();
    let check = is_cocycle(&b, &sigma.values);
    assert!(check.passed(), "{check:?}");
    assert_eq!(check.triples_checked, 729);
    for i in 0..9 {
        assert_eq!(sigma.values[0][i], b.counit_key(&i));
    }
    // γ(u) γ(v) = σ(u_(1), v_(1)) γ(u_(2) v_(2)), no inverse involved
    let gamma = word_section(&b, &a).unwrap();
    for u in 0..9 {
        for v in 0..9 {
            let lhs = a.alg.mul(&gamma.images[u], &gamma.images[v]);
            let mut rhs = Elem::new();
            for ((u1, u2), x) in b.delta_key(&u).iter() {
                for ((v1, v2), y) in b.delta_key(&v).iter() {
                    let c = &(x * y) * &sigma.values[*u1][*v1];
                    rhs.add_scaled(&gamma.apply(&b.alg.mul_basis(*u2, *v2)), &c);
                }
            }
            assert_eq!(lhs, rhs, "({u}, {v})");
        }
    }
    assert_ne!(sigma.values, eps_eps(&b));
}

#[test]
fn a1_word_section_cocycle_is_lazy() {
    // A(1) has no algebra map to the field, so it is not the trivial object
    assert!(!solve_characters(3, 2, &cleft_a(1).relations)
        .unwrap()
        .exists());
    // with the word section the cocycle is the lazy representative of its class
    assert_eq!(a1_cocycle().lazy, Laziness::Lazy);
}

#[test]
fn gauged_a1_cocycle_is_not_lazy() {
    let b = taft();
    let f = perturbed_counit(&b, x_index(&b));
    assert!(!is_central_functional(&b, &f));
    let eps: Vec<CycScalar> = (0..b.alg.dim()).map(|i| b.counit_key(&i)).collect();
    assert!(is_central_functional(&b, &eps));
    let sigma = a1_gauged();
    assert!(is_cocycle(&b, &sigma.values).passed());
    match &sigma.lazy {
        Laziness::NotLazy { x, y, left, right } => {
            assert_ne!(left, right);
            for k in [x, y] {
                let w = b.alg.word(*k);
                assert!(
                    w.letters().windows(2).all(|p| p[0] <= p[1]),
                    "witness {w:?} not of the form g^i x^j"
                );
            }
        }
        other => panic!("gauged A(1) cocycle is lazy: {other:?}"),
    }
}

#[test]
fn a0_cocycle_is_lazy_and_a0_is_trivial() {
    let a = cleft_a(0);
    assert!(solve_characters(3, 2, &a.relations).unwrap().exists());
    let sigma = cocycle_from_cleft(&a, &word_section(&taft(), &a).unwrap()).unwrap();
    assert_eq!(sigma.lazy, Laziness::Lazy);
}

#[test]
fn perturbed_entry_reports_failing_triple() {
    let b = taft();
    let mut values = a1_cocycle().values;
    values[1][2] += &CycScalar::one(3);
    let check = is_cocycle(&b, &values);
    assert!(check.normalized);
    assert!(check.failing_triple.is_some());
    assert!(matches!(
        Cocycle::new(b, values),
        Err(CocycleError::IdentityFails(_))
    ));
}

#[test]
fn non_colinear_section_is_rejected() {
    let b = taft();
    let a = cleft_a(1);
    let mut gamma = word_section(&b, &a).unwrap();
    gamma.images.swap(1, 3);
    assert!(matches!(
        cocycle_from_cleft(&a, &gamma),
        Err(CleftError::NotColinear(_))
    ));
}

#[test]
fn pullback_of_trivial_cocycle_is_trivial() {
    let l = uq();
    let sigma = Cocycle::trivial(taft());
    let pb = pullback_cocycle(&sigma, &l, &ctx().taft_projection(&taft())).unwrap();
    assert_eq!(pb.cocycle.values, eps_eps(&l));
    assert_eq!(pb.cocycle.lazy, Laziness::Lazy);
    assert!(pb.witness.is_none());
}

#[test]
fn pullback_to_uq_star_is_not_lazy_with_lifted_witness() {
    let l = uq();
    let b = taft();
    let sigma = a1_gauged();
    let pb = pullback_cocycle(&sigma, &l, &ctx().taft_projection(&b)).unwrap();
    assert!(pb.checks.iter().all(|c| c.passed));
    assert_eq!(pb.cocycle.dim(), 27);
    assert_eq!(pb.cocycle.lazy.is_lazy(), Some(false));
    let w = pb.witness.expect("witness lifted");
    assert!(w.certifies_non_lazy());
    // lifts are monomials in x_11 and x_12, which p sends to g and x
    for (k, lift) in [(w.base.0, &w.x), (w.base.1, &w.y)] {
        assert_eq!(lift.len(), 1);
        let (i, _) = lift.iter().next().unwrap();
        assert_eq!(l.alg.word(*i), b.alg.word(k));
    }
}

#[test]
fn pullback_along_non_hopf_map_is_rejected() {
    let b = taft();
    let mut p = ctx().taft_projection(&b);
    p.swap(0, 3);
    assert!(pullback_cocycle(&a1_cocycle(), &uq(), &p).is_err());
}

#[test]
fn cocycle_serializes_as_dense_grid() {
    let sigma = a1_gauged();
    let js = sigma.to_json();
    assert_eq!(js["basis"].as_array().unwrap().len(), 9);
    let rows = js["values"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 9));
    assert_eq!(js["values"][0][0], "1");
    assert_eq!(js["lazy"], false);
    assert_eq!(js["presentation"].as_array().unwrap().len(), 3);
}
