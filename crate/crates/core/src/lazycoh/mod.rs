//! Cocycles on finite-dimensional Hopf algebras: validity, laziness, extraction
//! from cleft objects and pullback along Hopf surjections.

mod cleft;
mod cocycle;
mod pullback;

pub use cleft::{
    cocycle_from_cleft, gauge_section, is_central_functional, perturbed_counit, word_section,
    CleftError,
};
pub use cocycle::{
    convolution_inverse_form, eval_form, is_cocycle, is_lazy, lazy_sides, Cocycle, CocycleCheck,
    CocycleError, Laziness,
};
pub use pullback::{certify_hopf_map, pullback_cocycle, LiftedWitness, Pullback, PullbackError};
