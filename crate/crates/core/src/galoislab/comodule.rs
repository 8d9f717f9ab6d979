use std::sync::{Arc, OnceLock};

use crate::cyclotomic::{CycScalar, LinComb};
use crate::hopfcore::{AxiomCheck, HopfFd, Scope, Tensor2};
use crate::ncalg::{eval_poly, Algebra, Elem, FdAlgebra, NcPoly, Tensor, WordBasis};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A coaction given on generators. Right coactions take values in `T ⊗ H`
/// (keys `(t, h)`), left coactions in `H ⊗ T` (keys `(h, t)`).
pub struct Coaction {
    pub side: Side,
    pub hopf: Arc<HopfFd>,
    pub on_gens: Vec<Tensor2<usize>>,
    cache: Vec<OnceLock<Tensor2<usize>>>,
}

impl std::fmt::Debug for Coaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coaction")
            .field("side", &self.side)
            .field("hopf", &self.hopf.name)
            .finish()
    }
}

/// An algebra with a right and/or left coaction of finite-dimensional Hopf algebras.
#[derive(Debug)]
pub struct ComoduleAlgebra {
    pub name: String,
    pub alg: Arc<FdAlgebra>,
    pub relations: Vec<NcPoly>,
    pub right: Option<Coaction>,
    pub left: Option<Coaction>,
}

impl ComoduleAlgebra {
    pub fn new(
        name: impl Into<String>,
        alg: Arc<FdAlgebra>,
        relations: Vec<NcPoly>,
    ) -> ComoduleAlgebra {
        ComoduleAlgebra {
            name: name.into(),
            alg,
            relations,
            right: None,
            left: None,
        }
    }

    pub fn with_coaction(
        mut self,
        side: Side,
        hopf: Arc<HopfFd>,
        on_gens: Vec<Tensor2<usize>>,
    ) -> ComoduleAlgebra {
        let cache = (0..self.alg.dim()).map(|_| OnceLock::new()).collect();
        let c = Coaction {
            side,
            hopf,
            on_gens,
            cache,
        };
        match side {
            Side::Right => self.right = Some(c),
            Side::Left => self.left = Some(c),
        }
        self
    }

    pub fn coaction(&self, side: Side) -> Option<&Coaction> {
        match side {
            Side::Right => self.right.as_ref(),
            Side::Left => self.left.as_ref(),
        }
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    /// `ρ(e_j)` with keys `(t, h)`.
    pub fn rho(&self, j: usize) -> &Tensor2<usize> {
        self.coact_basis(self.right.as_ref().expect("no right coaction"), j)
    }

    /// `λ(e_j)` with keys `(h, t)`.
    pub fn lambda(&self, j: usize) -> &Tensor2<usize> {
        self.coact_basis(self.left.as_ref().expect("no left coaction"), j)
    }

    pub fn coact_basis<'a>(&'a self, c: &'a Coaction, j: usize) -> &'a Tensor2<usize> {
        c.cache[j].get_or_init(|| match self.alg.split_last(&j) {
            None => LinComb::single((0, 0), CycScalar::one(self.order())),
            Some((p, g)) => {
                let prev = self.coact_basis(c, p).clone();
                match c.side {
                    Side::Right => {
                        Tensor::new(&*self.alg, &c.hopf.alg).mul(&prev, &c.on_gens[g as usize])
                    }
                    Side::Left => {
                        Tensor::new(&c.hopf.alg, &*self.alg).mul(&prev, &c.on_gens[g as usize])
                    }
                }
            }
        })
    }

    pub fn coact_elem(&self, side: Side, e: &Elem) -> Tensor2<usize> {
        let c = self.coaction(side).expect("missing coaction");
        e.map_linear(|j| self.coact_basis(c, *j).clone())
    }

    /// Well-definedness, coassociativity and counitality of each coaction, and
    /// commutation of the two coactions when both are present.
    pub fn verify_coactions(&self, scope: Scope) -> Vec<AxiomCheck> {
        let mut out = Vec::new();
        let names = self.alg.names();
        let keys: Vec<usize> = match scope {
            Scope::Generators => (0..self.alg.ngens() as u8)
                .filter_map(|g| {
                    let e = self.alg.gen(g);
                    (e.len() == 1).then(|| *e.keys().next().unwrap())
                })
                .collect(),
            Scope::UpToDegree(d) => self.alg.basis_up_to(d),
        };
        let show = |j: &usize| self.alg.word(*j).display_with(&names);
        for c in [&self.right, &self.left].into_iter().flatten() {
            let tag = match c.side {
                Side::Right => "right",
                Side::Left => "left",
            };
            let bad: Vec<String> = par::map(self.relations.iter().collect(), |r| {
                let img = match c.side {
                    Side::Right => eval_poly(&Tensor::new(&*self.alg, &c.hopf.alg), r, &c.on_gens),
                    Side::Left => eval_poly(&Tensor::new(&c.hopf.alg, &*self.alg), r, &c.on_gens),
                };
                (!img.is_zero()).then(|| crate::ncalg::poly::display(r, &names))
            })
            .into_iter()
            .flatten()
            .collect();
            out.push(AxiomCheck {
                axiom: format!("{tag}-coaction-multiplicative"),
                passed: bad.is_empty(),
                checked: self.relations.len(),
                failures: bad,
            });
            let res: Vec<(bool, bool)> = par::map(keys.clone(), |j| self.coaction_axioms_at(c, j));
            let coassoc: Vec<String> = keys
                .iter()
                .zip(&res)
                .filter(|(_, r)| !r.0)
                .map(|(j, _)| show(j))
                .collect();
            let counit: Vec<String> = keys
                .iter()
                .zip(&res)
                .filter(|(_, r)| !r.1)
                .map(|(j, _)| show(j))
                .collect();
            out.push(AxiomCheck {
                axiom: format!("{tag}-coassociativity"),
                passed: coassoc.is_empty(),
                checked: keys.len(),
                failures: coassoc,
            });
            out.push(AxiomCheck {
                axiom: format!("{tag}-counit"),
                passed: counit.is_empty(),
                checked: keys.len(),
                failures: counit,
            });
        }
        if let (Some(r), Some(l)) = (&self.right, &self.left) {
            let bad: Vec<String> = keys
                .iter()
                .zip(par::map(keys.clone(), |j| self.bicomodule_at(r, l, j)))
                .filter(|(_, ok)| !ok)
                .map(|(j, _)| show(j))
                .collect();
            out.push(AxiomCheck {
                axiom: "coactions-commute".into(),
                passed: bad.is_empty(),
                checked: keys.len(),
                failures: bad,
            });
        }
        out
    }

    fn coaction_axioms_at(&self, c: &Coaction, j: usize) -> (bool, bool) {
        let h = &c.hopf;
        let rho = self.coact_basis(c, j);
        let mut lhs: LinComb<(usize, usize, usize)> = LinComb::new();
        let mut rhs: LinComb<(usize, usize, usize)> = LinComb::new();
        let mut counit: Elem = LinComb::new();
        match c.side {
            Side::Right => {
                // (ρ⊗id)ρ = (id⊗Δ)ρ, (id⊗ε)ρ = id
                for ((t, x), v) in rho.iter() {
                    for ((t1, x1), v1) in self.coact_basis(c, *t).iter() {
                        lhs.add_term_owned((*t1, *x1, *x), v * v1);
                    }
                    for ((x1, x2), v2) in h.delta_key(x).iter() {
                        rhs.add_term_owned((*t, *x1, *x2), v * v2);
                    }
                    counit.add_term_owned(*t, v * &h.counit_key(x));
                }
            }
            Side::Left => {
                // (id⊗λ)λ = (Δ⊗id)λ, (ε⊗id)λ = id
                for ((x, t), v) in rho.iter() {
                    for ((x1, t1), v1) in self.coact_basis(c, *t).iter() {
                        lhs.add_term_owned((*x, *x1, *t1), v * v1);
                    }
                    for ((x1, x2), v2) in h.delta_key(x).iter() {
                        rhs.add_term_owned((*x1, *x2, *t), v * v2);
                    }
                    counit.add_term_owned(*t, v * &h.counit_key(x));
                }
            }
        }
        (lhs == rhs, counit == self.alg.basis_elem(j))
    }

    fn bicomodule_at(&self, r: &Coaction, l: &Coaction, j: usize) -> bool {
        // (λ⊗id)ρ = (id⊗ρ)λ in L ⊗ T ⊗ H
        let mut a: LinComb<(usize, usize, usize)> = LinComb::new();
        for ((t, h), v) in self.coact_basis(r, j).iter() {
            for ((x, t1), v1) in self.coact_basis(l, *t).iter() {
                a.add_term_owned((*x, *t1, *h), v * v1);
            }
        }
        let mut b: LinComb<(usize, usize, usize)> = LinComb::new();
        for ((x, t), v) in self.coact_basis(l, j).iter() {
            for ((t1, h), v1) in self.coact_basis(r, *t).iter() {
                b.add_term_owned((*x, *t1, *h), v * v1);
            }
        }
        a == b
    }
}
