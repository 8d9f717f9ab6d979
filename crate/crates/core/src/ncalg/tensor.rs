use super::Algebra;
use crate::cyclotomic::{CycScalar, LinComb};

/// The tensor product algebra `A ⊗ B` with basis pairs.
#[derive(Debug)]
pub struct Tensor<'a, A: Algebra, B: Algebra> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<'a, A: Algebra, B: Algebra> Tensor<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        assert_eq!(
            left.order(),
            right.order(),
            "tensor factors over different fields"
        );
        Tensor { left, right }
    }

    pub fn pure(&self, a: &LinComb<A::Key>, b: &LinComb<B::Key>) -> LinComb<(A::Key, B::Key)> {
        let mut out = LinComb::new();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_term_owned((x.clone(), y.clone()), cx * cy);
            }
        }
        out
    }

    /// `a ⊗ 1`
    pub fn left_elem(&self, a: &LinComb<A::Key>) -> LinComb<(A::Key, B::Key)> {
        let u = self.right.unit_key();
        a.map_keys(|x| (x.clone(), u.clone()))
    }

    /// `1 ⊗ b`
    pub fn right_elem(&self, b: &LinComb<B::Key>) -> LinComb<(A::Key, B::Key)> {
        let u = self.left.unit_key();
        b.map_keys(|y| (u.clone(), y.clone()))
    }
}

impl<'a, A: Algebra, B: Algebra> Algebra for Tensor<'a, A, B> {
    type Key = (A::Key, B::Key);

    fn order(&self) -> u32 {
        self.left.order()
    }

    fn unit_key(&self) -> Self::Key {
        (self.left.unit_key(), self.right.unit_key())
    }

    fn mul_keys(&self, x: &Self::Key, y: &Self::Key) -> LinComb<Self::Key> {
        let a = self.left.mul_keys(&x.0, &y.0);
        let b = self.right.mul_keys(&x.1, &y.1);
        self.pure(&a, &b)
    }

    fn mul(&self, a: &LinComb<Self::Key>, b: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut out = LinComb::new();
        for ((x0, x1), cx) in a.iter() {
            for ((y0, y1), cy) in b.iter() {
                let l = self.left.mul_keys(x0, y0);
                if l.is_zero() {
                    continue;
                }
                let r = self.right.mul_keys(x1, y1);
                let c: CycScalar = cx * cy;
                for (p, cp) in l.iter() {
                    let cpc = cp * &c;
                    for (s, cs) in r.iter() {
                        out.add_term_owned((p.clone(), s.clone()), &cpc * cs);
                    }
                }
            }
        }
        out
    }
}
