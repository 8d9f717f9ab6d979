//! Exact computations with Hopf algebras, Galois objects and cocycles over
//! cyclotomic fields.

pub mod cyclotomic;
pub mod par;

pub mod galoislab;
pub mod hopfcore;
pub mod lazycoh;
pub mod ncalg;
pub mod qbuilders;

pub use cyclotomic::{CycError, CycScalar, ExactMatrix, LinComb, Rat};
