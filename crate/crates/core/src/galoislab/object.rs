use std::sync::Arc;

use super::{ComoduleAlgebra, Side};
use crate::cyclotomic::{CycScalar, LinComb};
use crate::hopfcore::{HopfFd, Tensor2};
use crate::ncalg::{Algebra, Elem, WordBasis};

/// A finite-dimensional algebra with a fixed basis and coactions on either
/// side, given on basis elements. Right coactions have keys `(t, h)`, left
/// coactions keys `(h, t)`.
pub trait CoactedAlgebra: Sync {
    fn label(&self) -> String;
    fn order(&self) -> u32;
    fn dim(&self) -> usize;
    fn mul_basis(&self, i: usize, j: usize) -> Elem;
    fn unit(&self) -> Elem;
    fn hopf(&self, side: Side) -> Option<&Arc<HopfFd>>;
    fn coact_key(&self, side: Side, j: usize) -> Tensor2<usize>;
    fn basis_label(&self, i: usize) -> String;

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.mul_basis(*i, *j), &(x * y));
            }
        }
        out
    }

    fn basis_elem(&self, i: usize) -> Elem {
        LinComb::single(i, CycScalar::one(self.order()))
    }

    fn coact(&self, side: Side, e: &Elem) -> Tensor2<usize> {
        e.map_linear(|j| self.coact_key(side, *j))
    }
}

impl CoactedAlgebra for ComoduleAlgebra {
    fn label(&self) -> String {
        self.name.clone()
    }

    fn order(&self) -> u32 {
        self.alg.order()
    }

    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Elem {
        self.alg.mul_basis(i, j)
    }

    fn unit(&self) -> Elem {
        self.alg.one()
    }

    fn hopf(&self, side: Side) -> Option<&Arc<HopfFd>> {
        self.coaction(side).map(|c| &c.hopf)
    }

    fn coact_key(&self, side: Side, j: usize) -> Tensor2<usize> {
        let c = self.coaction(side).expect("missing coaction");
        self.coact_basis(c, j).clone()
    }

    fn basis_label(&self, i: usize) -> String {
        self.alg.word(i).display_with(&self.alg.names())
    }
}
