//! The quotient `H / H φ′(A⁺)` for a character `φ` of the central Hopf subalgebra,
//! where `φ′(a) = φ(a_(1)) a_(2)`.

use std::sync::Arc;

use super::ComoduleAlgebra;
use crate::cyclotomic::CycScalar;
use crate::hopfcore::{Character, HopfFd};
use crate::ncalg::{NcPoly, Presentation, Word, WordBasis};
use crate::qbuilders::{frt, BuildError, FrobeniusSequence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransgressError {
    #[error("φ is not a character of the central subalgebra")]
    NotACharacter,
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// `φ′(X_g − ε(X_g))` pushed into `H`, one per generator of `A`.
pub fn phi_prime_generators(seq: &FrobeniusSequence, phi: &Character) -> Vec<NcPoly> {
    let order = seq.ctx.order();
    (0..seq.a.delta.len())
        .map(|g| {
            let mut acc = NcPoly::new();
            for ((x, y), c) in seq.a.delta[g].iter() {
                let v = c * &phi.eval_word(x);
                if !v.is_zero() {
                    acc.add_scaled(&NcPoly::single(y.clone(), CycScalar::one(order)), &v);
                }
            }
            acc.add_term_owned(Word::empty(), -&seq.a.counit[g]);
            seq.i_poly(&acc)
        })
        .collect()
}

pub fn transgression_presentation(
    seq: &FrobeniusSequence,
    phi: &Character,
) -> Result<Presentation, TransgressError> {
    if !phi.satisfies(&seq.a.relations) {
        return Err(TransgressError::NotACharacter);
    }
    let n = seq.ctx.n;
    let mut relations = frt::o_slq_relations(n, &seq.ctx.q());
    relations.extend(phi_prime_generators(seq, phi));
    Ok(Presentation {
        order: seq.ctx.order(),
        gens: frt::gen_names(n),
        relations,
    })
}

/// The bi-Galois object attached to `φ`, with the matrix coactions of `l`.
pub fn transgress(
    seq: &FrobeniusSequence,
    phi: &Character,
    l: &Arc<HopfFd>,
) -> Result<ComoduleAlgebra, TransgressError> {
    let p = transgression_presentation(seq, phi)?;
    let name = format!("H/Hφ′(A⁺) φ={}", phi.display(&seq.a.alg.names()));
    Ok(seq.ctx.t_from_presentation(name, p, l)?)
}

/// Whether two objects have identical completed rewriting systems, i.e. the
/// same presented algebra with the same normal words.
pub fn same_presented_algebra(a: &ComoduleAlgebra, b: &ComoduleAlgebra) -> bool {
    a.alg.system().gens() == b.alg.system().gens()
        && a.alg.system().rules() == b.alg.system().rules()
}
