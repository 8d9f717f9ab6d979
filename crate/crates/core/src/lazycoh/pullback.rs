use std::sync::Arc;

use crate::cyclotomic::{LinComb, Reducer, SparseVec};
use crate::hopfcore::{AxiomCheck, HopfFd, LinearMap};
use crate::ncalg::{eval_poly, poly, Elem, Tensor, WordBasis};

use super::{eval_form, lazy_sides, Cocycle, CocycleError, Laziness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PullbackError {
    #[error("p has {got} generator images, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("p is not a Hopf map: {0}")]
    NotHopfMap(String),
    #[error("p is not surjective: image rank {rank} < {dim}")]
    NotSurjective { rank: usize, dim: usize },
    #[error("witness element {0} has no preimage")]
    Unliftable(String),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// A failing laziness pair of the base pushed back to `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedWitness {
    /// Basis indices of the witness in the base.
    pub base: (usize, usize),
    pub x: Elem,
    pub y: Elem,
    /// Both sides of the laziness condition for `(x, y)` in `L`, as normal forms.
    pub left: Elem,
    pub right: Elem,
    /// `p` applied to both sides reproduces the base witness.
    pub projects_to_base: bool,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub map: LinearMap,
    pub checks: Vec<AxiomCheck>,
    pub cocycle: Cocycle,
    pub witness: Option<LiftedWitness>,
}

fn check(axiom: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.to_string(),
        passed: failures.is_empty(),
        checked,
        failures,
    }
}

/// Relations, `Δ`, `ε` and `S` compatibility on every basis element, and rank.
pub fn certify_hopf_map(
    l: &HopfFd,
    b: &HopfFd,
    on_gens: &[Elem],
) -> Result<(LinearMap, Vec<AxiomCheck>), PullbackError> {
    if on_gens.len() != l.alg.ngens() {
        return Err(PullbackError::Shape {
            got: on_gens.len(),
            expected: l.alg.ngens(),
        });
    }
    let names = l.alg.names();
    let bad: Vec<String> = l
        .relations
        .iter()
        .filter(|r| !eval_poly(&*b.alg, r, on_gens).is_zero())
        .map(|r| poly::display(r, &names))
        .collect();
    let mut checks = vec![check("well-defined", l.relations.len(), bad)];
    if !checks[0].passed {
        return Err(PullbackError::NotHopfMap(checks[0].failures.join(", ")));
    }
    let map = LinearMap::from_algebra_map(l, &b.alg, on_gens);
    let d = l.alg.dim();
    let label = |i: usize| {
        let w = l.alg.word(i);
        if w.is_empty() {
            "1".to_string()
        } else {
            w.display_with(&names)
        }
    };
    let t = Tensor::new(&*b.alg, &*b.alg);
    let bad = crate::par::map_range(d, |i| {
        let mut pushed = LinComb::new();
        for ((x, y), c) in l.delta_key(&i).iter() {
            pushed.add_scaled(&t.pure(&map.images[*x], &map.images[*y]), c);
        }
        (pushed != b.delta_elem(&map.images[i])).then(|| label(i))
    });
    checks.push(check("coproduct", d, bad.into_iter().flatten().collect()));
    let bad = (0..d)
        .filter(|&i| b.counit_elem(&map.images[i]) != l.counit_key(&i))
        .map(label)
        .collect();
    checks.push(check("counit", d, bad));
    let bad = (0..d)
        .filter(|&i| map.apply(&l.antipode_key(&i)) != b.antipode_elem(&map.images[i]))
        .map(label)
        .collect();
    checks.push(check("antipode", d, bad));
    if let Some(c) = checks.iter().find(|c| !c.passed) {
        return Err(PullbackError::NotHopfMap(format!(
            "{}: {}",
            c.axiom,
            c.failures.join(", ")
        )));
    }
    let mut r = Reducer::new(l.order(), b.alg.dim(), false);
    for img in &map.images {
        r.push(to_sparse(img));
    }
    if r.rank() < b.alg.dim() {
        return Err(PullbackError::NotSurjective {
            rank: r.rank(),
            dim: b.alg.dim(),
        });
    }
    checks.push(check("surjective", d, Vec::new()));
    Ok((map, checks))
}

fn to_sparse(e: &Elem) -> SparseVec {
    e.iter().map(|(k, v)| (*k, v.clone())).collect()
}

/// A preimage of `e_a`: a basis element mapping exactly to it when one
/// exists, otherwise a solved combination.
fn lift(map: &LinearMap, base_dim: usize, order: u32, a: usize) -> Option<Elem> {
    let target = LinComb::single(a, crate::cyclotomic::CycScalar::one(order));
    if let Some(i) = map.images.iter().position(|img| *img == target) {
        return Some(LinComb::single(i, crate::cyclotomic::CycScalar::one(order)));
    }
    let mut r = Reducer::new(order, base_dim, true);
    for img in &map.images {
        r.push(to_sparse(img));
    }
    r.solve(&to_sparse(&target))
        .map(|v| v.into_iter().collect())
}

/// `σ_p = σ ∘ (p ⊗ p)`, certified as a cocycle on `l`. When `σ` is not lazy the
/// base witness is lifted and the two sides are compared in `l`.
pub fn pullback_cocycle(
    sigma: &Cocycle,
    l: &Arc<HopfFd>,
    on_gens: &[Elem],
) -> Result<Pullback, PullbackError> {
    let b = &sigma.hopf;
    let (map, checks) = certify_hopf_map(l, b, on_gens)?;
    let d = l.alg.dim();
    let order = l.order();
    let values: Vec<Vec<_>> = crate::par::map_range(d, |i| {
        (0..d)
            .map(|j| eval_form(&sigma.values, &map.images[i], &map.images[j], order))
            .collect()
    });
    let cocycle = Cocycle::new(l.clone(), values)?;
    let witness = match &sigma.lazy {
        Laziness::NotLazy { x, y, left, right } => {
            let label = |k: usize| sigma.label(k);
            let lx = lift(&map, b.alg.dim(), order, *x)
                .ok_or_else(|| PullbackError::Unliftable(label(*x)))?;
            let ly = lift(&map, b.alg.dim(), order, *y)
                .ok_or_else(|| PullbackError::Unliftable(label(*y)))?;
            let (l_left, l_right) = lazy_sides(l, &cocycle.values, &lx, &ly);
            let projects_to_base = map.apply(&l_left) == *left && map.apply(&l_right) == *right;
            Some(LiftedWitness {
                base: (*x, *y),
                x: lx,
                y: ly,
                left: l_left,
                right: l_right,
                projects_to_base,
            })
        }
        _ => None,
    };
    Ok(Pullback {
        map,
        checks,
        cocycle,
        witness,
    })
}

impl LiftedWitness {
    /// The sides differ in `l` because their images under `p` already differ.
    pub fn certifies_non_lazy(&self) -> bool {
        self.projects_to_base && self.left != self.right
    }
}
