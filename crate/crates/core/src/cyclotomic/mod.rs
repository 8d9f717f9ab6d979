//! Exact arithmetic in `Q(ζ_N)` and exact linear algebra over it.

pub mod linalg;
mod lincomb;
mod matrix;
mod rat;
mod scalar;

pub use linalg::{eliminate, Reducer};
pub use lincomb::LinComb;
pub use matrix::{ExactMatrix, RankKernel};
pub use rat::{ParseRatError, Rat};
pub use scalar::{euler_phi, tables, CycScalar, FieldTables, MAX_ORDER};

/// Sorted sparse vector: `(coordinate, nonzero value)` pairs in increasing coordinate order.
pub type SparseVec = Vec<(usize, CycScalar)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: Q(z_{0}) vs Q(z_{1})")]
    ModulusMismatch(u32, u32),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// Turns an unsorted list of terms into a [`SparseVec`], summing duplicates.
pub fn sparse_from_terms(terms: impl IntoIterator<Item = (usize, CycScalar)>) -> SparseVec {
    let mut v: Vec<(usize, CycScalar)> = terms.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += &x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
