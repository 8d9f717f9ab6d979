use std::collections::HashMap;
use std::sync::OnceLock;

use super::{poly, Algebra, NcError, NcPoly, RewriteSystem, Word};
use crate::cyclotomic::{CycScalar, LinComb};

/// Element of a finite-dimensional algebra in its normal-word basis.
pub type Elem = LinComb<usize>;

/// Dimension up to which the full basis×basis product table may be materialized.
pub const FULL_TABLE_LIMIT: usize = 1000;

/// Finite-dimensional quotient of a free algebra by a complete rewriting system.
///
/// Basis element `0` is the unit. Right multiplication by generators is
/// tabulated at construction; basis products are derived from it and cached
/// when `dim <= FULL_TABLE_LIMIT`.
#[derive(Debug)]
pub struct FdAlgebra {
    sys: RewriteSystem,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    parent: Vec<usize>,
    right: Vec<Elem>,
    table: Option<Vec<OnceLock<Elem>>>,
}

impl FdAlgebra {
    pub fn new(sys: RewriteSystem, cap: usize) -> Result<FdAlgebra, NcError> {
        let basis = sys.enumerate_basis(cap)?;
        let index: HashMap<Word, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let parent = basis
            .iter()
            .map(|w| {
                if w.is_empty() {
                    0
                } else {
                    index[&w.letters()[..w.len() - 1]]
                }
            })
            .collect();
        let ng = sys.ngens();
        let dim = basis.len();
        let mut alg = FdAlgebra {
            sys,
            basis,
            index,
            parent,
            right: Vec::new(),
            table: None,
        };
        // entries depend only on products of deglex-smaller words, so filling
        // in deglex order of `basis[i]·g` never reads an unfilled slot
        let mut slots: Vec<(Word, usize, u8)> = Vec::with_capacity(dim * ng);
        for i in 0..dim {
            for g in 0..ng as u8 {
                let mut w = alg.basis[i].clone();
                w.0.push(g);
                slots.push((w, i, g));
            }
        }
        slots.sort_by(|a, b| a.0.cmp(&b.0));
        let mut right: Vec<Option<Elem>> = vec![None; dim * ng];
        for (w, i, g) in slots {
            let e = alg.reduce_product(&w, &right);
            right[i * ng + g as usize] = Some(e);
        }
        alg.right = right.into_iter().map(Option::unwrap).collect();
        if dim <= FULL_TABLE_LIMIT {
            alg.table = Some((0..dim * dim).map(|_| OnceLock::new()).collect());
        }
        Ok(alg)
    }

    fn reduce_product(&self, w: &Word, right: &[Option<Elem>]) -> Elem {
        let one = CycScalar::one(self.order());
        if let Some(&j) = self.index.get(w) {
            return Elem::single(j, one);
        }
        let (pos, rule) = self
            .sys
            .suffix_match(w.letters())
            .expect("reducible product must end in a rule");
        let u = self.index[&w.letters()[..pos]];
        let ng = self.ngens();
        let mut out = Elem::new();
        for (m, c) in rule.rhs.iter() {
            let mut acc = Elem::single(u, one.clone());
            for &g in m.letters() {
                let mut next = Elem::new();
                for (k, ck) in acc.iter() {
                    let r = right[k * ng + g as usize]
                        .as_ref()
                        .expect("dependency computed");
                    next.add_scaled(r, ck);
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ngens(&self) -> usize {
        self.sys.ngens()
    }

    pub fn gen_names(&self) -> &[String] {
        self.sys.gens()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.basis[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn has_full_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        Elem::single(i, CycScalar::one(self.order()))
    }

    pub fn scalar(&self, c: CycScalar) -> Elem {
        Elem::single(0, c)
    }

    pub fn gen(&self, g: u8) -> Elem {
        self.mul_basis_gen(0, g).clone()
    }

    pub fn gens(&self) -> Vec<Elem> {
        (0..self.ngens() as u8).map(|g| self.gen(g)).collect()
    }

    /// `e_i · x_g`
    pub fn mul_basis_gen(&self, i: usize, g: u8) -> &Elem {
        &self.right[i * self.ngens() + g as usize]
    }

    pub fn mul_gen_right(&self, a: &Elem, g: u8) -> Elem {
        let mut out = Elem::new();
        for (k, c) in a.iter() {
            out.add_scaled(self.mul_basis_gen(*k, g), c);
        }
        out
    }

    pub fn mul_word_right(&self, a: &Elem, w: &[u8]) -> Elem {
        let mut acc = a.clone();
        for &g in w {
            acc = self.mul_gen_right(&acc, g);
        }
        acc
    }

    /// `e_i · e_j`
    pub fn mul_basis(&self, i: usize, j: usize) -> Elem {
        match &self.table {
            Some(t) => t[i * self.dim() + j]
                .get_or_init(|| self.compute_basis_product(i, j))
                .clone(),
            None => self.compute_basis_product(i, j),
        }
    }

    fn compute_basis_product(&self, i: usize, j: usize) -> Elem {
        if j == 0 {
            return self.basis_elem(i);
        }
        let g = *self.basis[j].letters().last().unwrap();
        let prev = self.mul_basis(i, self.parent[j]);
        self.mul_gen_right(&prev, g)
    }

    /// Normal form of a free-algebra element, in the basis.
    pub fn from_poly(&self, p: &NcPoly) -> Elem {
        let nf = self.sys.normal_form(p);
        nf.map_keys(|w| self.index[w])
    }

    pub fn to_poly(&self, e: &Elem) -> NcPoly {
        e.map_keys(|&i| self.basis[i].clone())
    }

    pub fn is_scalar(&self, e: &Elem) -> Option<CycScalar> {
        match e.len() {
            0 => Some(CycScalar::zero(self.order())),
            1 => e.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn display(&self, e: &Elem) -> String {
        poly::display(&self.to_poly(e), self.sys.gens())
    }
}

impl Algebra for FdAlgebra {
    type Key = usize;

    fn order(&self) -> u32 {
        self.sys.order()
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn mul_keys(&self, x: &usize, y: &usize) -> Elem {
        self.mul_basis(*x, *y)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if self.table.is_some() || b.len() <= 1 {
            let mut out = Elem::new();
            for (x, cx) in a.iter() {
                for (y, cy) in b.iter() {
                    out.add_scaled(&self.mul_basis(*x, *y), &(cx * cy));
                }
            }
            return out;
        }
        // a · e_j for every j in the support of b, sharing prefixes
        let mut cache: HashMap<usize, Elem> = HashMap::new();
        cache.insert(0, a.clone());
        let mut out = Elem::new();
        for (j, cj) in b.iter() {
            let v = self.prefix_product(*j, &mut cache);
            out.add_scaled(&v, cj);
        }
        out
    }
}

impl FdAlgebra {
    /// `a * basis[j]`, given `cache[0] = a`.
    fn prefix_product(&self, j: usize, cache: &mut HashMap<usize, Elem>) -> Elem {
        if let Some(v) = cache.get(&j) {
            return v.clone();
        }
        let p = self.prefix_product(self.parent[j], cache);
        let v = self.mul_gen_right(&p, *self.basis[j].letters().last().unwrap());
        cache.insert(j, v.clone());
        v
    }
}
