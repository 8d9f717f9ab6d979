//! Hopf structures: axiom verification, convolution, characters and automorphisms.

mod automorphism;
mod characters;
mod convolution;
mod hopf;
mod smith;

pub use automorphism::{AutomorphismError, CoinnerVerdict, HopfAutomorphism};
pub use characters::{
    commutative_image, exponents_of, solve_characters, solve_constraints, Binomial, Character,
    CharacterError, CharacterFamily, CommPoly, PatternFamily,
};
pub use convolution::{convolution_inverse, convolve, ConvolutionError, LinearMap};
pub use hopf::{AxiomCheck, HopfData, HopfReport, Scope, Tensor2};

use std::sync::Arc;

use crate::ncalg::FdAlgebra;

/// A finite-dimensional Hopf algebra.
pub type HopfFd = HopfData<Arc<FdAlgebra>>;
