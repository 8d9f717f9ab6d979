//! Elements of the free algebra `Q(ζ_N)⟨x_0, x_1, …⟩`.

use super::Word;
use crate::cyclotomic::{CycScalar, LinComb};

pub type NcPoly = LinComb<Word>;

pub fn constant(c: CycScalar) -> NcPoly {
    NcPoly::single(Word::empty(), c)
}

pub fn monomial(order: u32, w: Word) -> NcPoly {
    NcPoly::single(w, CycScalar::one(order))
}

pub fn generator(order: u32, g: u8) -> NcPoly {
    monomial(order, Word::gen(g))
}

pub fn mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    let mut out = NcPoly::new();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            out.add_term_owned(wa.concat(wb), ca * cb);
        }
    }
    out
}

/// `u · p · v` for words `u`, `v`.
pub fn sandwich(u: &[u8], p: &NcPoly, v: &[u8]) -> NcPoly {
    p.map_keys(|w| Word::concat3(u, w.letters(), v))
}

pub fn pow(order: u32, a: &NcPoly, k: usize) -> NcPoly {
    let mut acc = constant(CycScalar::one(order));
    for _ in 0..k {
        acc = mul(&acc, a);
    }
    acc
}

pub fn degree(p: &NcPoly) -> usize {
    p.leading().map_or(0, |(w, _)| w.len())
}

/// Human-readable rendering using generator names.
pub fn display(p: &NcPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .iter()
        .rev()
        .map(|(w, c)| {
            if w.is_empty() {
                format!("({c})")
            } else if c.is_one() {
                w.display_with(names)
            } else {
                format!("({c})*{}", w.display_with(names))
            }
        })
        .collect();
    parts.join(" + ")
}
