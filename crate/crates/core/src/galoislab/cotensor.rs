//! `T □_L Z`, the equalizer of `ρ_T ⊗ id` and `id ⊗ λ_Z` inside `T ⊗ Z`,
//! as an algebra with its own basis and the outer coactions.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{CoactedAlgebra, Side};
use crate::cyclotomic::{eliminate, CycScalar, LinComb, Reducer, SparseVec};
use crate::hopfcore::{AxiomCheck, HopfFd, Tensor2};
use crate::ncalg::Elem;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CotensorError {
    #[error("{0} needs a right coaction")]
    MissingRight(String),
    #[error("{0} needs a left coaction")]
    MissingLeft(String),
    #[error("the middle Hopf algebras differ ({0} vs {1})")]
    HopfMismatch(String, String),
    #[error("product of basis elements {0} and {1} leaves the cotensor product")]
    NotClosed(usize, usize),
    #[error("1 ⊗ 1 is not in the cotensor product")]
    NoUnit,
}

/// Elements are stored in their own basis; `basis[k]` is the ambient
/// element of `T ⊗ Z` and `basis[0] = 1 ⊗ 1`.
pub struct Cotensor {
    pub label: String,
    order: u32,
    pub basis: Vec<Tensor2<usize>>,
    dims: (usize, usize),
    coords: Reducer,
    table: Vec<Elem>,
    left_hopf: Option<Arc<HopfFd>>,
    right_hopf: Option<Arc<HopfFd>>,
    lambda: Vec<Tensor2<usize>>,
    rho: Vec<Tensor2<usize>>,
    pub checks: Vec<AxiomCheck>,
}

impl std::fmt::Debug for Cotensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cotensor")
            .field("label", &self.label)
            .field("dim", &self.basis.len())
            .finish()
    }
}

fn ambient_index(dz: usize, (t, z): (usize, usize)) -> usize {
    t * dz + z
}

/// `(ρ_T ⊗ id − id ⊗ λ_Z)(x)` with coordinates `(t, l, z)` flattened.
fn defect<T, Z>(t: &T, z: &Z, dl: usize, x: &Tensor2<usize>) -> SparseVec
where
    T: CoactedAlgebra + ?Sized,
    Z: CoactedAlgebra + ?Sized,
{
    let dz = z.dim();
    let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
    let mut add = |k: usize, v: CycScalar| {
        let e = acc.entry(k).or_insert_with(|| CycScalar::zero(t.order()));
        *e += &v;
    };
    for ((a, b), c) in x.iter() {
        for ((a2, l), v) in t.coact_key(Side::Right, *a).iter() {
            add((a2 * dl + l) * dz + b, c * v);
        }
        for ((l, b2), v) in z.coact_key(Side::Left, *b).iter() {
            add((a * dl + l) * dz + b2, -&(c * v));
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn ambient_mul<T, Z>(t: &T, z: &Z, x: &Tensor2<usize>, y: &Tensor2<usize>) -> Tensor2<usize>
where
    T: CoactedAlgebra + ?Sized,
    Z: CoactedAlgebra + ?Sized,
{
    let mut out = LinComb::new();
    for ((a, b), c) in x.iter() {
        for ((a2, b2), d) in y.iter() {
            let cd = c * d;
            let left = t.mul_basis(*a, *a2);
            let right = z.mul_basis(*b, *b2);
            for (u, v) in left.iter() {
                for (w, s) in right.iter() {
                    out.add_term_owned((*u, *w), &(&cd * v) * s);
                }
            }
        }
    }
    out
}

impl Cotensor {
    /// Computes the kernel, checks closure on all pairs of basis elements and
    /// unitality, and transports the outer coactions when present.
    pub fn build<T, Z>(t: &T, z: &Z) -> Result<Cotensor, CotensorError>
    where
        T: CoactedAlgebra + ?Sized,
        Z: CoactedAlgebra + ?Sized,
    {
        let mid_r = t
            .hopf(Side::Right)
            .ok_or_else(|| CotensorError::MissingRight(t.label()))?;
        let mid_l = z
            .hopf(Side::Left)
            .ok_or_else(|| CotensorError::MissingLeft(z.label()))?;
        if !Arc::ptr_eq(mid_r, mid_l) && mid_r.name != mid_l.name {
            return Err(CotensorError::HopfMismatch(
                mid_r.name.clone(),
                mid_l.name.clone(),
            ));
        }
        let order = t.order();
        let (dt, dz, dl) = (t.dim(), z.dim(), mid_r.alg.dim());
        let width = dt * dl * dz;
        let columns: Vec<SparseVec> = par::map_range(dt * dz, |idx| {
            defect(
                t,
                z,
                dl,
                &LinComb::single((idx / dz, idx % dz), CycScalar::one(order)),
            )
        });
        let red = eliminate(order, width, columns, true);

        let to_ambient = |v: &SparseVec| -> Tensor2<usize> {
            v.iter()
                .map(|(i, c)| ((i / dz, i % dz), c.clone()))
                .collect()
        };
        let to_sparse = |x: &Tensor2<usize>| -> SparseVec {
            let m: BTreeMap<usize, CycScalar> = x
                .iter()
                .map(|(k, c)| (ambient_index(dz, *k), c.clone()))
                .collect();
            m.into_iter().collect()
        };
        let unit = {
            let mut u = LinComb::new();
            for (a, c) in t.unit().iter() {
                for (b, d) in z.unit().iter() {
                    u.add_term_owned((*a, *b), c * d);
                }
            }
            u
        };
        if !defect(t, z, dl, &unit).is_empty() {
            return Err(CotensorError::NoUnit);
        }
        let mut span = Reducer::new(order, dt * dz, false);
        let mut basis = Vec::new();
        for v in std::iter::once(to_sparse(&unit)).chain(red.kernel().iter().cloned()) {
            let before = span.rank();
            span.push(v.clone());
            if span.rank() > before {
                basis.push(to_ambient(&v));
            }
        }
        let coords = eliminate(order, dt * dz, basis.iter().map(to_sparse).collect(), true);
        let mut c = Cotensor {
            label: format!("{} □ {}", t.label(), z.label()),
            order,
            basis,
            dims: (dt, dz),
            coords,
            table: Vec::new(),
            left_hopf: t.hopf(Side::Left).cloned(),
            right_hopf: z.hopf(Side::Right).cloned(),
            lambda: Vec::new(),
            rho: Vec::new(),
            checks: Vec::new(),
        };
        let dim = c.basis.len();
        let products: Vec<Option<Elem>> = par::map_range(dim * dim, |idx| {
            c.coordinates(&ambient_mul(t, z, &c.basis[idx / dim], &c.basis[idx % dim]))
        });
        if let Some(bad) = products.iter().position(Option::is_none) {
            return Err(CotensorError::NotClosed(bad / dim, bad % dim));
        }
        c.table = products.into_iter().map(Option::unwrap).collect();
        c.checks.push(AxiomCheck {
            axiom: "closed-under-multiplication".into(),
            passed: true,
            checked: dim * dim,
            failures: vec![],
        });
        c.checks.push(AxiomCheck {
            axiom: "unital".into(),
            passed: true,
            checked: 1,
            failures: vec![],
        });

        if c.left_hopf.is_some() {
            c.lambda = par::map_range(dim, |k| {
                let mut by_l: BTreeMap<usize, Tensor2<usize>> = BTreeMap::new();
                for ((a, b), x) in c.basis[k].iter() {
                    for ((l, a2), v) in t.coact_key(Side::Left, *a).iter() {
                        by_l.entry(*l).or_default().add_term_owned((*a2, *b), x * v);
                    }
                }
                c.split_outer(by_l)
            });
        }
        if c.right_hopf.is_some() {
            c.rho = par::map_range(dim, |k| {
                let mut by_h: BTreeMap<usize, Tensor2<usize>> = BTreeMap::new();
                for ((a, b), x) in c.basis[k].iter() {
                    for ((b2, h), v) in z.coact_key(Side::Right, *b).iter() {
                        by_h.entry(*h).or_default().add_term_owned((*a, *b2), x * v);
                    }
                }
                c.split_outer(by_h).map_keys(|(h, m)| (*m, *h))
            });
        }
        Ok(c)
    }

    /// `Σ_x e_x ⊗ c_x` from the ambient components `c_x`; keys `(x, m)`.
    fn split_outer(&self, parts: BTreeMap<usize, Tensor2<usize>>) -> Tensor2<usize> {
        let mut out = LinComb::new();
        for (x, part) in parts {
            let coords = self
                .coordinates(&part)
                .expect("outer coaction stays in the cotensor product");
            for (m, v) in coords.into_iter_terms() {
                out.add_term_owned((x, m), v);
            }
        }
        out
    }

    /// Coordinates of an element of `T ⊗ Z` in the cotensor basis, or `None`
    /// if it is not in the cotensor product.
    pub fn coordinates(&self, x: &Tensor2<usize>) -> Option<Elem> {
        let dz = self.dims.1;
        let m: BTreeMap<usize, CycScalar> = x
            .iter()
            .map(|(k, c)| (ambient_index(dz, *k), c.clone()))
            .collect();
        let sol = self.coords.solve(&m.into_iter().collect())?;
        Some(sol.into_iter().collect())
    }

    pub fn embed(&self, e: &Elem) -> Tensor2<usize> {
        let mut out = LinComb::new();
        for (k, c) in e.iter() {
            out.add_scaled(&self.basis[*k], c);
        }
        out
    }
}

impl CoactedAlgebra for Cotensor {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn order(&self) -> u32 {
        self.order
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Elem {
        self.table[i * self.basis.len() + j].clone()
    }

    fn unit(&self) -> Elem {
        LinComb::single(0, CycScalar::one(self.order))
    }

    fn hopf(&self, side: Side) -> Option<&Arc<HopfFd>> {
        match side {
            Side::Left => self.left_hopf.as_ref(),
            Side::Right => self.right_hopf.as_ref(),
        }
    }

    fn coact_key(&self, side: Side, j: usize) -> Tensor2<usize> {
        match side {
            Side::Left => self.lambda[j].clone(),
            Side::Right => self.rho[j].clone(),
        }
    }

    fn basis_label(&self, i: usize) -> String {
        format!("c{i}")
    }
}
