use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::cyclotomic::{CycScalar, LinComb};
use crate::ncalg::{eval_poly, Algebra, NcPoly, Tensor, Word, WordBasis};
use crate::par;

pub type Tensor2<K> = LinComb<(K, K)>;

/// Hopf structure maps given on generators of a presented algebra.
///
/// `Δ` and `ε` are extended multiplicatively and `S` anti-multiplicatively
/// along the normal words of the basis; values on basis elements are memoized.
pub struct HopfData<A: WordBasis> {
    pub name: String,
    pub alg: A,
    /// Defining relations (the ideal they generate is the one the algebra's
    /// rewriting system encodes).
    pub relations: Vec<NcPoly>,
    pub delta: Vec<Tensor2<A::Key>>,
    pub counit: Vec<CycScalar>,
    pub antipode: Vec<LinComb<A::Key>>,
    delta_cache: RwLock<HashMap<A::Key, Tensor2<A::Key>>>,
    antipode_cache: RwLock<HashMap<A::Key, LinComb<A::Key>>>,
}

impl<A: WordBasis + std::fmt::Debug> std::fmt::Debug for HopfData<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfData")
            .field("name", &self.name)
            .field("alg", &self.alg)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub checked: usize,
    /// Offending relations or basis elements, in basis order.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub algebra: String,
    pub scope: String,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Which basis elements the axioms are tested on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Generators only; complete once the structure maps are well defined,
    /// because each axiom is preserved under products.
    Generators,
    /// Every basis element of word length `<= degree`.
    UpToDegree(usize),
}

fn check(axiom: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.to_string(),
        passed: failures.is_empty(),
        checked,
        failures,
    }
}

impl<A: WordBasis> HopfData<A> {
    pub fn new(
        name: impl Into<String>,
        alg: A,
        relations: Vec<NcPoly>,
        delta: Vec<Tensor2<A::Key>>,
        counit: Vec<CycScalar>,
        antipode: Vec<LinComb<A::Key>>,
    ) -> Self {
        HopfData {
            name: name.into(),
            alg,
            relations,
            delta,
            counit,
            antipode,
            delta_cache: RwLock::new(HashMap::new()),
            antipode_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    pub fn tensor(&self) -> Tensor<'_, A, A> {
        Tensor::new(&self.alg, &self.alg)
    }

    pub fn delta_key(&self, k: &A::Key) -> Tensor2<A::Key> {
        if let Some(v) = self.delta_cache.read().unwrap().get(k) {
            return v.clone();
        }
        let v = match self.alg.split_last(k) {
            None => self.tensor().one(),
            Some((p, g)) => self
                .tensor()
                .mul(&self.delta_key(&p), &self.delta[g as usize]),
        };
        self.delta_cache
            .write()
            .unwrap()
            .insert(k.clone(), v.clone());
        v
    }

    pub fn counit_key(&self, k: &A::Key) -> CycScalar {
        let mut acc = CycScalar::one(self.order());
        for &g in self.alg.key_word(k).letters() {
            acc = &acc * &self.counit[g as usize];
        }
        acc
    }

    pub fn antipode_key(&self, k: &A::Key) -> LinComb<A::Key> {
        if let Some(v) = self.antipode_cache.read().unwrap().get(k) {
            return v.clone();
        }
        let v = match self.alg.split_last(k) {
            None => self.alg.one(),
            Some((p, g)) => self
                .alg
                .mul(&self.antipode[g as usize], &self.antipode_key(&p)),
        };
        self.antipode_cache
            .write()
            .unwrap()
            .insert(k.clone(), v.clone());
        v
    }

    pub fn delta_elem(&self, e: &LinComb<A::Key>) -> Tensor2<A::Key> {
        let mut out = LinComb::new();
        for (k, c) in e.iter() {
            out.add_scaled(&self.delta_key(k), c);
        }
        out
    }

    pub fn counit_elem(&self, e: &LinComb<A::Key>) -> CycScalar {
        let mut out = CycScalar::zero(self.order());
        for (k, c) in e.iter() {
            out += &(c * &self.counit_key(k));
        }
        out
    }

    pub fn antipode_elem(&self, e: &LinComb<A::Key>) -> LinComb<A::Key> {
        e.map_linear(|k| self.antipode_key(k))
    }

    /// Value of `ε` on a free-algebra element.
    pub fn counit_poly(&self, p: &NcPoly) -> CycScalar {
        let mut out = CycScalar::zero(self.order());
        for (w, c) in p.iter() {
            let mut acc = c.clone();
            for &g in w.letters() {
                acc = &acc * &self.counit[g as usize];
            }
            out += &acc;
        }
        out
    }

    /// Checks well-definedness (relation images vanish) and the Hopf axioms on `scope`.
    pub fn verify(&self, scope: Scope) -> HopfReport {
        let names = self.alg.names();
        let rel_name = |r: &NcPoly| crate::ncalg::poly::display(r, &names);
        let mut checks = Vec::new();

        let bad: Vec<String> = self
            .relations
            .iter()
            .filter(|r| !self.counit_poly(r).is_zero())
            .map(&rel_name)
            .collect();
        checks.push(check("counit-multiplicative", self.relations.len(), bad));

        let t = self.tensor();
        let bad: Vec<String> = par::map(self.relations.iter().collect(), |r| {
            (!eval_poly(&t, r, &self.delta).is_zero()).then(|| rel_name(r))
        })
        .into_iter()
        .flatten()
        .collect();
        checks.push(check("coproduct-multiplicative", self.relations.len(), bad));

        let bad: Vec<String> = par::map(self.relations.iter().collect(), |r| {
            let reversed = r.map_keys(|w| {
                Word::from_slice(&w.letters().iter().rev().copied().collect::<Vec<_>>())
            });
            (!eval_poly(&self.alg, &reversed, &self.antipode).is_zero()).then(|| rel_name(r))
        })
        .into_iter()
        .flatten()
        .collect();
        checks.push(check(
            "antipode-anti-multiplicative",
            self.relations.len(),
            bad,
        ));

        let (keys, scope_name) = match scope {
            Scope::Generators => {
                let ks: Vec<A::Key> = (0..self.delta.len() as u8)
                    .filter_map(|g| {
                        let e = self.alg.gen_elem(g);
                        (e.len() == 1).then(|| e.keys().next().unwrap().clone())
                    })
                    .collect();
                (ks, "generators".to_string())
            }
            Scope::UpToDegree(d) => (
                self.alg.basis_up_to(d),
                format!("basis elements of degree <= {d}"),
            ),
        };
        let results: Vec<[bool; 5]> = par::map(keys.clone(), |k| self.axioms_at(&k));
        let labels = [
            "coassociativity",
            "counit-left",
            "counit-right",
            "antipode-left",
            "antipode-right",
        ];
        for (a, label) in labels.iter().enumerate() {
            let bad: Vec<String> = keys
                .iter()
                .zip(&results)
                .filter(|(_, r)| !r[a])
                .map(|(k, _)| self.alg.key_word(k).display_with(&names))
                .collect();
            checks.push(check(label, keys.len(), bad));
        }
        HopfReport {
            algebra: self.name.clone(),
            scope: scope_name,
            checks,
        }
    }

    fn axioms_at(&self, k: &A::Key) -> [bool; 5] {
        let order = self.order();
        let d = self.delta_key(k);
        // coassociativity in A⊗A⊗A, keys flattened to triples
        let mut lhs: LinComb<(A::Key, A::Key, A::Key)> = LinComb::new();
        let mut rhs: LinComb<(A::Key, A::Key, A::Key)> = LinComb::new();
        for ((x, y), c) in d.iter() {
            for ((x1, x2), c1) in self.delta_key(x).iter() {
                lhs.add_term_owned((x1.clone(), x2.clone(), y.clone()), c * c1);
            }
            for ((y1, y2), c2) in self.delta_key(y).iter() {
                rhs.add_term_owned((x.clone(), y1.clone(), y2.clone()), c * c2);
            }
        }
        let coassoc = lhs == rhs;
        let h = LinComb::single(k.clone(), CycScalar::one(order));
        let mut left = LinComb::new();
        let mut right = LinComb::new();
        let mut sl = LinComb::new();
        let mut sr = LinComb::new();
        for ((x, y), c) in d.iter() {
            left.add_term_owned(y.clone(), c * &self.counit_key(x));
            right.add_term_owned(x.clone(), c * &self.counit_key(y));
            let yk = LinComb::single(y.clone(), CycScalar::one(order));
            let xk = LinComb::single(x.clone(), CycScalar::one(order));
            sl.add_scaled(&self.alg.mul(&self.antipode_key(x), &yk), c);
            sr.add_scaled(&self.alg.mul(&xk, &self.antipode_key(y)), c);
        }
        let unit = self.alg.one().scaled(&self.counit_key(k));
        [coassoc, left == h, right == h, sl == unit, sr == unit]
    }
}
