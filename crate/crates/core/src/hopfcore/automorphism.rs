//! Hopf automorphisms given on generators, the diagonal family `f_r` on the
//! matrix generators, and the co-innerness test `f = φ ∗ id ∗ φ⁻¹`.

use super::{AxiomCheck, Character, CharacterFamily, HopfFd, LinearMap, Tensor2};
use crate::cyclotomic::{eliminate, CycScalar, LinComb};
use crate::ncalg::{eval_poly, Elem, Tensor, WordBasis};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomorphismError {
    #[error("torus parameter needs {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("torus parameter entries must be nonzero with product 1 (product is {0})")]
    NotInTorus(String),
}

/// An algebra endomorphism of a finite-dimensional Hopf algebra, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAutomorphism {
    /// The torus parameter when the map is some `f_r`.
    pub r: Option<Vec<CycScalar>>,
    pub on_gens: Vec<Elem>,
}

/// Outcome of [`HopfAutomorphism::is_coinner`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoinnerVerdict {
    Coinner(Character),
    /// Every character was tried.
    NotCoinner {
        searched: usize,
    },
    /// The character set is infinite or not fully representable.
    Undecided(String),
}

impl CoinnerVerdict {
    pub fn is_coinner(&self) -> Option<bool> {
        match self {
            CoinnerVerdict::Coinner(_) => Some(true),
            CoinnerVerdict::NotCoinner { .. } => Some(false),
            CoinnerVerdict::Undecided(_) => None,
        }
    }
}

fn check(axiom: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.into(),
        passed: failures.is_empty(),
        checked,
        failures,
    }
}

impl HopfAutomorphism {
    pub fn identity(h: &HopfFd) -> HopfAutomorphism {
        HopfAutomorphism {
            r: None,
            on_gens: h.alg.gens(),
        }
    }

    /// `x_ij ↦ r_i⁻¹ r_j x_ij` on the `n²` matrix generators (row-major).
    pub fn f_r(
        h: &HopfFd,
        n: usize,
        r: &[CycScalar],
    ) -> Result<HopfAutomorphism, AutomorphismError> {
        if r.len() != n {
            return Err(AutomorphismError::Length {
                expected: n,
                got: r.len(),
            });
        }
        let order = h.order();
        let mut prod = CycScalar::one(order);
        for x in r {
            prod = &prod * x;
        }
        if !prod.is_one() || r.iter().any(CycScalar::is_zero) {
            return Err(AutomorphismError::NotInTorus(prod.to_string()));
        }
        let on_gens = (0..n * n)
            .map(|g| {
                let (i, j) = (g / n, g % n);
                h.alg.gen(g as u8).scaled(&(&r[i].inv().unwrap() * &r[j]))
            })
            .collect();
        Ok(HopfAutomorphism {
            r: Some(r.to_vec()),
            on_gens,
        })
    }

    pub fn linear_map(&self, h: &HopfFd) -> LinearMap {
        LinearMap::from_algebra_map(h, &h.alg, &self.on_gens)
    }

    /// `self ∘ other`.
    pub fn compose(&self, h: &HopfFd, other: &HopfAutomorphism) -> HopfAutomorphism {
        let m = self.linear_map(h);
        let r = match (&self.r, &other.r) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x * y).collect()),
            _ => None,
        };
        HopfAutomorphism {
            r,
            on_gens: other.on_gens.iter().map(|e| m.apply(e)).collect(),
        }
    }

    /// Algebra map, compatibility with `Δ`, `ε`, `S`, and bijectivity on the basis.
    pub fn certify(&self, h: &HopfFd) -> Vec<AxiomCheck> {
        let names = h.alg.names();
        let ng = self.on_gens.len();
        let show = |g: usize| names[g].clone();
        let bad: Vec<String> = h
            .relations
            .iter()
            .filter(|r| !eval_poly(&h.alg, r, &self.on_gens).is_zero())
            .map(|r| crate::ncalg::poly::display(r, &names))
            .collect();
        let mut out = vec![check("algebra-map", h.relations.len(), bad)];

        let m = self.linear_map(h);
        let t = Tensor::new(&h.alg, &h.alg);
        let ff = |x: &Tensor2<usize>| -> Tensor2<usize> {
            let mut acc = LinComb::new();
            for ((a, b), c) in x.iter() {
                acc.add_scaled(&t.pure(&m.images[*a], &m.images[*b]), c);
            }
            acc
        };
        let bad: Vec<String> = (0..ng)
            .filter(|&g| h.delta_elem(&self.on_gens[g]) != ff(&h.delta[g]))
            .map(show)
            .collect();
        out.push(check("coproduct-compatible", ng, bad));
        let bad: Vec<String> = (0..ng)
            .filter(|&g| h.counit_elem(&self.on_gens[g]) != h.counit[g])
            .map(show)
            .collect();
        out.push(check("counit-compatible", ng, bad));
        let bad: Vec<String> = (0..ng)
            .filter(|&g| h.antipode_elem(&self.on_gens[g]) != m.apply(&h.antipode[g]))
            .map(show)
            .collect();
        out.push(check("antipode-compatible", ng, bad));

        let dim = h.alg.dim();
        let cols = m
            .images
            .iter()
            .map(|e| e.iter().map(|(k, c)| (*k, c.clone())).collect())
            .collect();
        let rank = eliminate(h.order(), dim, cols, false).rank();
        let bad = if rank == dim {
            vec![]
        } else {
            vec![format!("rank {rank} < {dim}")]
        };
        out.push(check("bijective", dim, bad));
        out
    }

    /// `(φ ∗ id ∗ φ⁻¹)(x) = φ(x_(1)) x_(2) φ(S(x_(3)))` on generators.
    pub fn conjugation(h: &HopfFd, phi: &Character) -> Vec<Elem> {
        (0..h.delta.len())
            .map(|g| {
                let mut out = Elem::new();
                for ((x, y), c) in h.delta[g].iter() {
                    let left = c * &phi.eval_word(h.alg.word(*x));
                    if left.is_zero() {
                        continue;
                    }
                    for ((y1, y2), c2) in h.delta_key(y).iter() {
                        let right = phi.eval_elem(&h.alg, &h.antipode_key(y2));
                        out.add_term_owned(*y1, &(&left * c2) * &right);
                    }
                }
                out
            })
            .collect()
    }

    /// Searches the character set of `h` for `φ` with `self = φ ∗ id ∗ φ⁻¹`.
    pub fn is_coinner(&self, h: &HopfFd, characters: &CharacterFamily) -> CoinnerVerdict {
        let Some(all) = characters.all_characters() else {
            return CoinnerVerdict::Undecided("character set is not finite and explicit".into());
        };
        for phi in &all {
            if HopfAutomorphism::conjugation(h, phi) == self.on_gens {
                return CoinnerVerdict::Coinner(phi.clone());
            }
        }
        CoinnerVerdict::NotCoinner {
            searched: all.len(),
        }
    }
}
