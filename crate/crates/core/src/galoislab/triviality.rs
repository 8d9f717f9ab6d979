//! Triviality of Galois objects through characters: `T` is right trivial iff it
//! has an algebra map to the ground field, and bi-trivial iff some character
//! also satisfies `φ(t_(0)) t_(1) = t_(-1) φ(t_(0))`.

use serde::Serialize;

use super::{ComoduleAlgebra, Side};
use crate::hopfcore::{
    commutative_image, exponents_of, solve_constraints, Character, CharacterError, CharacterFamily,
    CommPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityVerdict {
    /// `None` when the solver could not decide every support.
    pub trivial: Option<bool>,
    pub witness: Option<Character>,
    pub family: CharacterFamily,
}

#[derive(Serialize)]
struct VerdictJson {
    trivial: Option<bool>,
    witness: Option<serde_json::Value>,
    family: serde_json::Value,
}

impl TrivialityVerdict {
    fn from_family(family: CharacterFamily) -> TrivialityVerdict {
        let trivial = if family.exists() {
            Some(true)
        } else if family.undecided.is_empty() {
            Some(false)
        } else {
            None
        };
        TrivialityVerdict {
            trivial,
            witness: family.witness().cloned(),
            family,
        }
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        serde_json::to_value(VerdictJson {
            trivial: self.trivial,
            witness: self.witness.as_ref().map(|w| w.to_json(names)),
            family: self.family.to_json(names),
        })
        .expect("verdict serializes")
    }
}

fn relation_constraints(t: &ComoduleAlgebra) -> Vec<CommPoly> {
    let ng = t.alg.ngens();
    t.relations
        .iter()
        .map(|r| commutative_image(r, ng))
        .collect()
}

/// For every generator `x` and basis element `h` of the Hopf algebra, the
/// coefficient of `h` in `φ(x_(0)) x_(1) − x_(-1) φ(x_(0))` as a polynomial in
/// the generator values. Checking generators suffices because both sides are
/// multiplicative in `x` once `φ` is a character.
pub fn compatibility_constraints(t: &ComoduleAlgebra) -> Vec<CommPoly> {
    let ng = t.alg.ngens();
    let mono = |k: usize| exponents_of(t.alg.word(k), ng);
    let mut out = Vec::new();
    for g in 0..ng {
        let e = t.alg.gen(g as u8);
        let right = t.coact_elem(Side::Right, &e);
        let left = t.coact_elem(Side::Left, &e);
        let mut by_h: std::collections::BTreeMap<usize, CommPoly> =
            std::collections::BTreeMap::new();
        for ((x, h), c) in right.iter() {
            by_h.entry(*h).or_default().add_term(mono(*x), c);
        }
        for ((h, x), c) in left.iter() {
            by_h.entry(*h).or_default().add_term(mono(*x), &-c);
        }
        out.extend(by_h.into_values().filter(|p| !p.is_zero()));
    }
    out
}

pub fn is_right_trivial(t: &ComoduleAlgebra) -> Result<TrivialityVerdict, CharacterError> {
    let fam = solve_constraints(t.order(), t.alg.ngens(), &relation_constraints(t))?;
    Ok(TrivialityVerdict::from_family(fam))
}

pub fn is_bitrivial(t: &ComoduleAlgebra) -> Result<TrivialityVerdict, CharacterError> {
    assert!(
        t.left.is_some() && t.right.is_some(),
        "bi-triviality needs both coactions"
    );
    let mut cs = relation_constraints(t);
    cs.extend(compatibility_constraints(t));
    let fam = solve_constraints(t.order(), t.alg.ngens(), &cs)?;
    Ok(TrivialityVerdict::from_family(fam))
}

/// For objects on `n²` matrix generators: whether the character value matrix
/// commutes with the generator matrix, i.e. is scalar.
pub fn value_matrix_is_scalar(phi: &Character, n: usize) -> bool {
    let v = &phi.values;
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                v[i * n + i] == v[0]
            } else {
                v[i * n + j].is_zero()
            }
        })
    })
}
