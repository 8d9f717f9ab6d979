//! Characters (algebra maps to the ground field) of presented algebras.
//!
//! A character is determined by its values on generators. For each support
//! pattern (the set of generators with nonzero value) every relation becomes
//! a commutative Laurent polynomial in the nonzero values; one-term
//! polynomials rule the pattern out, two-term ones are binomial constraints
//! `t^a = c`, solved over the algebraic closure through a Smith normal form
//! of the exponent lattice. Longer polynomials are decided by substitution
//! once the binomial part has finitely many, explicitly known, solutions.

use serde_json::{json, Value};

use super::smith::smith;
use super::HopfData;
use crate::cyclotomic::{CycScalar, LinComb};
use crate::ncalg::{NcPoly, Word, WordBasis};
use crate::par;

/// A commutative polynomial in the generator values, keyed by exponent vectors.
pub type CommPoly = LinComb<Vec<u32>>;

/// Largest finite family whose members are listed one by one.
const LIST_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("unsupported presentation on support {support:?}: {reason}")]
    Unsupported { support: Vec<usize>, reason: String },
    #[error("too many generators for pattern enumeration ({0})")]
    TooManyGenerators(usize),
}

/// Commutative image of a noncommutative polynomial (letters counted per generator).
pub fn commutative_image(p: &NcPoly, ngens: usize) -> CommPoly {
    p.map_keys(|w| exponents_of(w, ngens))
}

pub fn exponents_of(w: &Word, ngens: usize) -> Vec<u32> {
    let mut e = vec![0u32; ngens];
    for &g in w.letters() {
        e[g as usize] += 1;
    }
    e
}

/// Values of a character on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub values: Vec<CycScalar>,
}

impl Character {
    pub fn new(values: Vec<CycScalar>) -> Character {
        Character { values }
    }

    pub fn order(&self) -> u32 {
        self.values[0].order()
    }

    pub fn eval_exponents(&self, e: &[u32]) -> CycScalar {
        let mut acc = CycScalar::one(self.order());
        for (v, &k) in self.values.iter().zip(e) {
            if k > 0 {
                acc = &acc * &v.pow(k as i64);
            }
        }
        acc
    }

    pub fn eval_word(&self, w: &Word) -> CycScalar {
        let mut acc = CycScalar::one(self.order());
        for &g in w.letters() {
            acc = &acc * &self.values[g as usize];
        }
        acc
    }

    pub fn eval_poly(&self, p: &NcPoly) -> CycScalar {
        let mut out = CycScalar::zero(self.order());
        for (w, c) in p.iter() {
            out += &(c * &self.eval_word(w));
        }
        out
    }

    pub fn eval_comm(&self, p: &CommPoly) -> CycScalar {
        let mut out = CycScalar::zero(self.order());
        for (e, c) in p.iter() {
            out += &(c * &self.eval_exponents(e));
        }
        out
    }

    /// Direct substitution into every relation.
    pub fn satisfies(&self, relations: &[NcPoly]) -> bool {
        relations.iter().all(|r| self.eval_poly(r).is_zero())
    }

    /// Value on an element of an algebra with a word basis.
    pub fn eval_elem<A: WordBasis>(&self, alg: &A, e: &LinComb<A::Key>) -> CycScalar {
        let mut out = CycScalar::zero(self.order());
        for (k, c) in e.iter() {
            out += &(c * &self.eval_word(&alg.key_word(k)));
        }
        out
    }

    /// `(φ ∗ ψ)(x) = φ(x_(1)) ψ(x_(2))` on generators.
    pub fn convolve<A: WordBasis>(&self, h: &HopfData<A>, other: &Character) -> Character {
        let values = (0..self.values.len())
            .map(|g| {
                let mut out = CycScalar::zero(self.order());
                for ((x, y), c) in h.delta[g].iter() {
                    let a = self.eval_word(&h.alg.key_word(x));
                    let b = other.eval_word(&h.alg.key_word(y));
                    out += &(&(c * &a) * &b);
                }
                out
            })
            .collect();
        Character { values }
    }

    /// `φ ∘ S`, the convolution inverse of `φ`.
    pub fn inverse<A: WordBasis>(&self, h: &HopfData<A>) -> Character {
        Character {
            values: h
                .antipode
                .iter()
                .map(|s| self.eval_elem(&h.alg, s))
                .collect(),
        }
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let map: serde_json::Map<String, Value> = names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| (n.clone(), Value::String(v.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{n}↦{v}"))
            .collect();
        parts.join(", ")
    }
}

/// `t^exponents = value`, exponents indexed by generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub exponents: Vec<i64>,
    pub value: CycScalar,
}

/// All characters with a fixed support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFamily {
    pub support: Vec<usize>,
    pub binomials: Vec<Binomial>,
    /// Dimension of the solution torus over the algebraic closure.
    pub free_dims: usize,
    /// Number of characters over the algebraic closure, when finite and known.
    pub count: Option<u64>,
    pub witnesses: Vec<Character>,
    /// Whether `witnesses` is the complete list of characters with this support.
    pub all_listed: bool,
}

/// A finite description of all characters over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFamily {
    pub ngens: usize,
    pub patterns_examined: usize,
    pub patterns: Vec<PatternFamily>,
    /// Supports on which the solver could not decide (with the reason).
    pub undecided: Vec<(Vec<usize>, String)>,
}

impl CharacterFamily {
    pub fn exists(&self) -> bool {
        !self.patterns.is_empty()
    }

    pub fn witness(&self) -> Option<&Character> {
        self.patterns.iter().flat_map(|p| p.witnesses.iter()).next()
    }

    pub fn is_finite(&self) -> bool {
        self.undecided.is_empty() && self.patterns.iter().all(|p| p.free_dims == 0)
    }

    /// Number of characters over the algebraic closure, when finite.
    pub fn count(&self) -> Option<u64> {
        if !self.undecided.is_empty() {
            return None;
        }
        self.patterns.iter().map(|p| p.count).sum()
    }

    /// Every character, when the set is finite and all of it lies in the field.
    pub fn all_characters(&self) -> Option<Vec<Character>> {
        if !self.is_finite() || !self.patterns.iter().all(|p| p.all_listed) {
            return None;
        }
        Some(
            self.patterns
                .iter()
                .flat_map(|p| p.witnesses.iter().cloned())
                .collect(),
        )
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let patterns: Vec<Value> = self
            .patterns
            .iter()
            .map(|p| {
                json!({
                    "support": p.support.iter().map(|&g| names[g].clone()).collect::<Vec<_>>(),
                    "binomials": p.binomials.iter().map(|b| json!({"exponents": b.exponents, "value": b.value.to_string()})).collect::<Vec<_>>(),
                    "free_dims": p.free_dims,
                    "count": p.count,
                    "all_listed": p.all_listed,
                    "witnesses": p.witnesses.iter().map(|w| w.to_json(names)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "exists": self.exists(),
            "patterns_examined": self.patterns_examined,
            "patterns": patterns,
            "undecided": self.undecided.iter().map(|(s, r)| json!({"support": s, "reason": r})).collect::<Vec<_>>(),
        })
    }
}

/// Characters of the algebra presented by `relations` on `ngens` generators.
pub fn solve_characters(
    order: u32,
    ngens: usize,
    relations: &[NcPoly],
) -> Result<CharacterFamily, CharacterError> {
    let cs: Vec<CommPoly> = relations
        .iter()
        .map(|r| commutative_image(r, ngens))
        .collect();
    solve_constraints(order, ngens, &cs)
}

/// Points of the variety cut out by `constraints`, organized by support.
pub fn solve_constraints(
    order: u32,
    ngens: usize,
    constraints: &[CommPoly],
) -> Result<CharacterFamily, CharacterError> {
    if ngens > 64 {
        return Err(CharacterError::TooManyGenerators(ngens));
    }
    let masks: Vec<Vec<u64>> = constraints
        .iter()
        .map(|c| {
            c.keys()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .fold(0u64, |m, (g, _)| m | 1 << g)
                })
                .collect()
        })
        .collect();
    let mut candidates = Vec::new();
    search(ngens, &masks, 0, 0, 0, &mut candidates);
    let examined = candidates.len();
    let outcomes = par::map(candidates.clone(), |mask| {
        solve_pattern(order, ngens, mask, constraints)
    });
    let mut family = CharacterFamily {
        ngens,
        patterns_examined: examined,
        patterns: Vec::new(),
        undecided: Vec::new(),
    };
    for (mask, outcome) in candidates.into_iter().zip(outcomes) {
        match outcome {
            Outcome::Infeasible => {}
            Outcome::Feasible(p) => family.patterns.push(p),
            Outcome::Undecided(reason) => family.undecided.push((support_of(mask, ngens), reason)),
        }
    }
    if family.patterns.is_empty() {
        if let Some((support, reason)) = family.undecided.first() {
            return Err(CharacterError::Unsupported {
                support: support.clone(),
                reason: reason.clone(),
            });
        }
    }
    Ok(family)
}

fn support_of(mask: u64, ngens: usize) -> Vec<usize> {
    (0..ngens).filter(|g| mask >> g & 1 == 1).collect()
}

/// Depth-first enumeration of supports, pruning a branch as soon as some
/// constraint is left with a single monomial whose variables are all nonzero.
fn search(ngens: usize, masks: &[Vec<u64>], v: usize, zero: u64, nonzero: u64, out: &mut Vec<u64>) {
    for ms in masks {
        let mut alive = ms.iter().filter(|&&m| m & zero == 0);
        if let (Some(&m), None) = (alive.next(), alive.next()) {
            if m & !nonzero == 0 {
                return;
            }
        }
    }
    if v == ngens {
        out.push(nonzero);
        return;
    }
    search(ngens, masks, v + 1, zero | 1 << v, nonzero, out);
    search(ngens, masks, v + 1, zero, nonzero | 1 << v, out);
}

enum Outcome {
    Infeasible,
    Feasible(PatternFamily),
    Undecided(String),
}

fn solve_pattern(order: u32, ngens: usize, mask: u64, constraints: &[CommPoly]) -> Outcome {
    let support = support_of(mask, ngens);
    let m = support.len();
    let one = CycScalar::one(order);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut binomials = Vec::new();
    let mut deferred: Vec<&CommPoly> = Vec::new();
    for c in constraints {
        let terms: Vec<(&Vec<u32>, &CycScalar)> = c
            .iter()
            .filter(|(e, _)| {
                e.iter()
                    .enumerate()
                    .all(|(g, &k)| k == 0 || mask >> g & 1 == 1)
            })
            .collect();
        match terms.len() {
            0 => {}
            1 => return Outcome::Infeasible,
            2 => {
                let ((e1, c1), (e2, c2)) = (terms[0], terms[1]);
                let full: Vec<i64> = e1
                    .iter()
                    .zip(e2)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                let value = -&(c2 * &c1.inv().expect("stored coefficients are nonzero"));
                rows.push(support.iter().map(|&g| full[g]).collect());
                binomials.push(Binomial {
                    exponents: full,
                    value,
                });
            }
            _ => deferred.push(c),
        }
    }
    let s = smith(&rows, m);
    let r = s.rank();
    let reduced: Vec<CycScalar> =
        s.u.iter()
            .map(|urow| {
                let mut acc = one.clone();
                for (b, &k) in binomials.iter().zip(urow) {
                    if k != 0 {
                        acc = &acc * &b.value.pow(k);
                    }
                }
                acc
            })
            .collect();
    if reduced[r..].iter().any(|c| !c.is_one()) {
        return Outcome::Infeasible;
    }
    let free_dims = m - r;
    let roots: Vec<(Vec<CycScalar>, bool)> = (0..r)
        .map(|i| roots_in_field(&reduced[i], s.diag[i] as u64))
        .collect();
    let count = (free_dims == 0).then(|| s.diag.iter().map(|&d| d as u64).product::<u64>());
    let all_roots = roots.iter().all(|(_, complete)| *complete);
    let listable = free_dims == 0 && all_roots && count.is_some_and(|c| c <= LIST_LIMIT);
    let assemble = |choice: &[usize]| -> Character {
        // u_i for i >= r are free and set to 1
        let u: Vec<&CycScalar> = (0..m)
            .map(|i| if i < r { &roots[i].0[choice[i]] } else { &one })
            .collect();
        let mut values = vec![CycScalar::zero(order); ngens];
        for (j, &g) in support.iter().enumerate() {
            let mut acc = one.clone();
            for (i, ui) in u.iter().enumerate() {
                let k = s.v[j][i];
                if k != 0 {
                    acc = &acc * &ui.pow(k);
                }
            }
            values[g] = acc;
        }
        Character { values }
    };
    let mut witnesses = Vec::new();
    if listable {
        let sizes: Vec<usize> = roots.iter().map(|(v, _)| v.len()).collect();
        let total: usize = sizes.iter().product();
        for mut idx in 0..total {
            let mut choice = vec![0usize; r];
            for i in (0..r).rev() {
                choice[i] = idx % sizes[i];
                idx /= sizes[i];
            }
            witnesses.push(assemble(&choice));
        }
    } else if roots.iter().all(|(v, _)| !v.is_empty()) {
        witnesses.push(assemble(&vec![0; r]));
    }
    let mut family = PatternFamily {
        support,
        binomials,
        free_dims,
        count,
        witnesses,
        all_listed: listable,
    };
    if !deferred.is_empty() {
        if !listable {
            return Outcome::Undecided(format!(
                "{} relation(s) with three or more surviving terms, and the binomial part has {} solutions",
                deferred.len(),
                if free_dims > 0 { "infinitely many".to_string() } else { "non-representable or too many".to_string() }
            ));
        }
        family
            .witnesses
            .retain(|w| deferred.iter().all(|c| w.eval_comm(c).is_zero()));
        if family.witnesses.is_empty() {
            return Outcome::Infeasible;
        }
        family.count = Some(family.witnesses.len() as u64);
    }
    for w in &family.witnesses {
        assert!(
            constraints.iter().all(|c| w.eval_comm(c).is_zero()),
            "solver produced a non-solution"
        );
    }
    Outcome::Feasible(family)
}

/// Roots of unity `±ζ^k` in `Q(ζ_N)` (all of them, since `N` is odd).
fn roots_of_unity(order: u32) -> Vec<CycScalar> {
    let mut out = Vec::with_capacity(2 * order as usize);
    for k in 0..order as i64 {
        let z = CycScalar::zeta_pow(order, k);
        out.push(-&z);
        out.push(z);
    }
    out
}

/// The `d`-th roots of `c` of the form `ρ·u` (ρ rational, `u` a root of
/// unity); the flag reports whether all `d` roots over the closure were found.
fn roots_in_field(c: &CycScalar, d: u64) -> (Vec<CycScalar>, bool) {
    let order = c.order();
    let mu = roots_of_unity(order);
    let split = mu.iter().find_map(|u| {
        let x = c * &u.inv().unwrap();
        x.as_rational()
            .filter(|r| r.signum() > 0)
            .map(|r| (r.clone(), u.clone()))
    });
    let Some((r, u)) = split else {
        return (Vec::new(), false);
    };
    let Some(rho) = u32::try_from(d).ok().and_then(|d| r.exact_root(d)) else {
        return (Vec::new(), false);
    };
    let rho = CycScalar::from_rat(order, rho);
    let found: Vec<CycScalar> = mu
        .iter()
        .filter(|v| v.pow(d as i64) == u)
        .map(|v| &rho * v)
        .collect();
    let complete = found.len() as u64 == d;
    (found, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Rat;

    fn poly(order: u32, terms: &[(&[u8], i64)]) -> NcPoly {
        terms
            .iter()
            .map(|(w, c)| (Word::from_slice(w), CycScalar::from_int(order, *c)))
            .collect()
    }

    #[test]
    fn cube_roots_of_unity_and_of_eight() {
        let (r, complete) = roots_in_field(&CycScalar::one(3), 3);
        assert!(complete);
        assert_eq!(r.len(), 3);
        let (r, complete) = roots_in_field(&CycScalar::from_int(3, 8), 3);
        assert!(complete);
        assert!(r.contains(&CycScalar::from_int(3, 2)));
        let (r, complete) = roots_in_field(&CycScalar::from_int(3, 2), 2);
        assert!(r.is_empty() && !complete);
        let (r, _) = roots_in_field(&CycScalar::from_rat(3, Rat::new(-1, 8)), 3);
        assert!(r.contains(&CycScalar::from_rat(3, Rat::new(-1, 2))));
    }

    #[test]
    fn torus_with_a_commutator() {
        // x y - 2 y x, x^2 - 1: x ≠ 0 forces y = 0
        let order = 3;
        let rels = vec![
            poly(order, &[(&[0, 1], 1), (&[1, 0], -2)]),
            poly(order, &[(&[0, 0], 1), (&[], -1)]),
        ];
        let fam = solve_characters(order, 2, &rels).unwrap();
        assert!(fam.is_finite());
        assert_eq!(fam.count(), Some(2));
        let all = fam.all_characters().unwrap();
        assert_eq!(all.len(), 2);
        assert!(all
            .iter()
            .all(|c| c.satisfies(&rels) && c.values[1].is_zero()));
    }

    #[test]
    fn infinite_family_gets_a_witness() {
        // x y = 1: a one-dimensional torus
        let order = 3;
        let rels = vec![poly(order, &[(&[0, 1], 1), (&[], -1)])];
        let fam = solve_characters(order, 2, &rels).unwrap();
        assert!(fam.exists() && !fam.is_finite());
        assert!(fam.witness().unwrap().satisfies(&rels));
        assert!(fam.all_characters().is_none());
    }

    #[test]
    fn substitution_decides_longer_relations() {
        // x^3 = 1, x^2 + x + 1 = 0: the two primitive cube roots
        let order = 3;
        let rels = vec![
            poly(order, &[(&[0, 0, 0], 1), (&[], -1)]),
            poly(order, &[(&[0, 0], 1), (&[0], 1), (&[], 1)]),
        ];
        let fam = solve_characters(order, 1, &rels).unwrap();
        assert_eq!(fam.count(), Some(2));
        // x^2 + x + 1 alone: not decidable by this solver
        let err = solve_characters(order, 1, &rels[1..]).unwrap_err();
        assert!(matches!(err, CharacterError::Unsupported { .. }));
    }

    #[test]
    fn inconsistent_binomials() {
        // x^2 = 1, x^3 = 2
        let order = 3;
        let rels = vec![
            poly(order, &[(&[0, 0], 1), (&[], -1)]),
            poly(order, &[(&[0, 0, 0], 1), (&[], -2)]),
        ];
        let fam = solve_characters(order, 1, &rels).unwrap();
        assert!(!fam.exists());
        assert_eq!(fam.count(), Some(0));
    }
}
