//! Galois objects: canonical maps, certification, Miyashita–Ulbrich actions,
//! cotensor products, triviality tests, transgression and witnesses.

mod certify;
mod comodule;
mod cotensor;
mod mu;
mod object;
mod pushforward;
mod transgress;
mod triviality;
mod witness;

pub use certify::{
    certify_galois, kappa, kappa_basis, left_multiply, right_multiply, sandwich,
    CertificateSummary, GaloisCertificate, GaloisError,
};
pub use comodule::{Coaction, ComoduleAlgebra, Side};
pub use cotensor::{Cotensor, CotensorError};
pub use mu::{mu_action, MuAction};
pub use object::CoactedAlgebra;
pub use pushforward::{Pushforward, PushforwardReport, ZH};
pub use transgress::{
    phi_prime_generators, same_presented_algebra, transgress, transgression_presentation,
    TransgressError,
};
pub use triviality::{
    compatibility_constraints, is_bitrivial, is_right_trivial, value_matrix_is_scalar,
    TrivialityVerdict,
};
pub use witness::{
    eval_in, group_law_images, group_law_witness, lemma_trans_witness, twist_left, BiGaloisWitness,
    GroupLawWitness, TwistError, TwistWitness,
};
