//! Free associative algebras, rewriting-system completion, normal forms and
//! finite-dimensional quotients.

pub mod dsl;
mod fdalg;
pub mod poly;
mod presented;
mod rewrite;
mod tensor;
mod word;

pub use dsl::{parse_presentation, Presentation};
pub use fdalg::{Elem, FdAlgebra, FULL_TABLE_LIMIT};
pub use poly::NcPoly;
pub use presented::PresentedAlgebra;
pub use rewrite::{complete, CompletionStatus, RewriteSystem, Rule};
pub use tensor::Tensor;
pub use word::Word;

use crate::cyclotomic::{CycScalar, LinComb};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NcError {
    #[error("rewriting system is incomplete (overlaps beyond degree {bound} unresolved)")]
    Incomplete { bound: usize },
    #[error("normal-form basis is infinite; graded counts {counts:?}")]
    InfiniteBasis { counts: Vec<usize> },
    #[error("normal-form basis exceeds cap {cap}; graded counts so far {counts:?}")]
    BasisTooLarge { cap: usize, counts: Vec<usize> },
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("too many generators ({0}; at most 255)")]
    TooManyGenerators(usize),
}

/// An associative unital algebra with a distinguished basis indexed by `Key`.
pub trait Algebra: Sync {
    type Key: Ord + Clone + Send + Sync + std::hash::Hash + std::fmt::Debug;

    fn order(&self) -> u32;

    fn unit_key(&self) -> Self::Key;

    /// Product of two basis elements.
    fn mul_keys(&self, x: &Self::Key, y: &Self::Key) -> LinComb<Self::Key>;

    fn one(&self) -> LinComb<Self::Key> {
        LinComb::single(self.unit_key(), CycScalar::one(self.order()))
    }

    fn mul(&self, a: &LinComb<Self::Key>, b: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut out = LinComb::new();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_scaled(&self.mul_keys(x, y), &(cx * cy));
            }
        }
        out
    }

    fn pow(&self, a: &LinComb<Self::Key>, k: usize) -> LinComb<Self::Key> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// Image of a free-algebra element under the algebra map sending generator
/// `g` to `images[g]`.
pub fn eval_poly<A: Algebra>(alg: &A, p: &NcPoly, images: &[LinComb<A::Key>]) -> LinComb<A::Key> {
    let mut out = LinComb::new();
    for (w, c) in p.iter() {
        let mut acc = alg.one();
        for &g in w.letters() {
            acc = alg.mul(&acc, &images[g as usize]);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// An algebra whose basis elements are normal words, closed under prefixes.
pub trait WordBasis: Algebra {
    fn key_word(&self, k: &Self::Key) -> Word;

    /// `(prefix key, last generator)` for a non-unit basis element.
    fn split_last(&self, k: &Self::Key) -> Option<(Self::Key, u8)>;

    /// Basis elements of word length `<= degree` (all of them for a finite basis).
    fn basis_up_to(&self, degree: usize) -> Vec<Self::Key>;

    fn gen_elem(&self, g: u8) -> LinComb<Self::Key>;

    fn names(&self) -> Vec<String>;
}

impl WordBasis for FdAlgebra {
    fn key_word(&self, k: &usize) -> Word {
        self.word(*k).clone()
    }

    fn split_last(&self, k: &usize) -> Option<(usize, u8)> {
        let w = self.word(*k);
        let (&g, rest) = w.letters().split_last()?;
        Some((
            self.index_of(&Word::from_slice(rest))
                .expect("prefix-closed basis"),
            g,
        ))
    }

    fn basis_up_to(&self, degree: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.word(i).len() <= degree)
            .collect()
    }

    fn gen_elem(&self, g: u8) -> Elem {
        self.gen(g)
    }

    fn names(&self) -> Vec<String> {
        self.gen_names().to_vec()
    }
}

impl WordBasis for PresentedAlgebra {
    fn key_word(&self, k: &Word) -> Word {
        k.clone()
    }

    fn split_last(&self, k: &Word) -> Option<(Word, u8)> {
        let (&g, rest) = k.letters().split_last()?;
        Some((Word::from_slice(rest), g))
    }

    fn basis_up_to(&self, degree: usize) -> Vec<Word> {
        self.normal_words(degree)
    }

    fn gen_elem(&self, g: u8) -> NcPoly {
        self.gen(g)
    }

    fn names(&self) -> Vec<String> {
        self.system().gens().to_vec()
    }
}

impl<T: Algebra + Send> Algebra for std::sync::Arc<T> {
    type Key = T::Key;

    fn order(&self) -> u32 {
        (**self).order()
    }

    fn unit_key(&self) -> T::Key {
        (**self).unit_key()
    }

    fn mul_keys(&self, x: &T::Key, y: &T::Key) -> LinComb<T::Key> {
        (**self).mul_keys(x, y)
    }

    fn mul(&self, a: &LinComb<T::Key>, b: &LinComb<T::Key>) -> LinComb<T::Key> {
        (**self).mul(a, b)
    }
}

impl<T: WordBasis + Send> WordBasis for std::sync::Arc<T> {
    fn key_word(&self, k: &T::Key) -> Word {
        (**self).key_word(k)
    }

    fn split_last(&self, k: &T::Key) -> Option<(T::Key, u8)> {
        (**self).split_last(k)
    }

    fn basis_up_to(&self, degree: usize) -> Vec<T::Key> {
        (**self).basis_up_to(degree)
    }

    fn gen_elem(&self, g: u8) -> LinComb<T::Key> {
        (**self).gen_elem(g)
    }

    fn names(&self) -> Vec<String> {
        (**self).names()
    }
}
