//! Bounded checks on the infinite-dimensional side: the map
//! `Ψ: H → Z □_L H`, `h ↦ q(h_(1)) ⊗ h_(2)`, for `H = O(SL_q(n))`, the quotient
//! `q: H → Z` and `L = u_q(sl(n))*`, and the action formula on `Z □_L H`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::mu::check;
use super::{ComoduleAlgebra, GaloisCertificate, Side};
use crate::cyclotomic::{eliminate, CycScalar, LinComb, SparseVec};
use crate::hopfcore::{AxiomCheck, Character};
use crate::ncalg::{eval_poly, Algebra, Elem, NcPoly, Tensor, Word, WordBasis};
use crate::par;
use crate::qbuilders::FrobeniusSequence;

use super::transgress::phi_prime_generators;

/// Elements of `Z ⊗ H`.
pub type ZH = LinComb<(usize, Word)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub degree_bound: usize,
    /// Set when the bound is below the degree of the defining relations of `Z`.
    pub inconclusive: bool,
    pub words: usize,
    pub rank: usize,
    pub checks: Vec<AxiomCheck>,
}

impl PushforwardReport {
    pub fn passed(&self) -> bool {
        !self.inconclusive && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == name)
    }
}

/// The data of the pushforward of `z` along the central extension in `seq`.
pub struct Pushforward<'a> {
    pub z: &'a ComoduleAlgebra,
    pub seq: &'a FrobeniusSequence,
}

impl<'a> Pushforward<'a> {
    pub fn new(z: &'a ComoduleAlgebra, seq: &'a FrobeniusSequence) -> Pushforward<'a> {
        Pushforward { z, seq }
    }

    fn one(&self) -> CycScalar {
        CycScalar::one(self.seq.ctx.order())
    }

    /// `q(w)` in `Z`.
    pub fn q_word(&self, w: &Word) -> Elem {
        self.z.alg.from_poly(&NcPoly::single(w.clone(), self.one()))
    }

    /// `π(w)` in `L`.
    pub fn pi_word(&self, w: &Word) -> Elem {
        self.seq
            .l
            .alg
            .from_poly(&NcPoly::single(w.clone(), self.one()))
    }

    pub fn psi_word(&self, w: &Word) -> ZH {
        let mut out = ZH::new();
        for ((u, v), c) in self.seq.h.delta_key(w).iter() {
            for (t, x) in self.q_word(u).iter() {
                out.add_term_owned((*t, v.clone()), c * x);
            }
        }
        out
    }

    pub fn psi(&self, p: &NcPoly) -> ZH {
        let mut out = ZH::new();
        for (w, c) in p.iter() {
            out.add_scaled(&self.psi_word(w), c);
        }
        out
    }

    fn zh(&self) -> Tensor<'_, crate::ncalg::FdAlgebra, crate::ncalg::PresentedAlgebra> {
        Tensor::new(&*self.z.alg, &self.seq.h.alg)
    }

    /// `(ρ_Z ⊗ id − id ⊗ (π ⊗ id)Δ)(x)`.
    pub fn defect(&self, x: &ZH) -> LinComb<(usize, usize, Word)> {
        let mut out = LinComb::new();
        for ((t, v), c) in x.iter() {
            for ((t2, l), d) in self.z.rho(*t).iter() {
                out.add_term_owned((*t2, *l, v.clone()), c * d);
            }
            for ((v1, v2), d) in self.seq.h.delta_key(v).iter() {
                for (l, e) in self.pi_word(v1).iter() {
                    out.add_term_owned((*t, *l, v2.clone()), -&(&(c * d) * e));
                }
            }
        }
        out
    }

    /// Checks in degrees `<= degree_bound`: well-definedness, landing in the
    /// cotensor product, right colinearity, multiplicativity on pairs of
    /// normal words, and linear independence of the images.
    pub fn verify(&self, phi: &Character, degree_bound: usize) -> PushforwardReport {
        let h = &self.seq.h;
        let names = h.alg.names();
        let order = self.seq.ctx.order();
        let mut checks = Vec::new();

        let gens: Vec<ZH> = (0..h.delta.len() as u8)
            .map(|g| self.psi_word(&Word::gen(g)))
            .collect();
        let zh = self.zh();
        let mut bad: Vec<String> = h
            .relations
            .iter()
            .filter(|r| !eval_poly(&zh, r, &gens).is_zero())
            .map(|r| crate::ncalg::poly::display(r, &names))
            .collect();
        for p in phi_prime_generators(self.seq, phi) {
            if crate::ncalg::poly::degree(&p) <= degree_bound && !self.z.alg.from_poly(&p).is_zero()
            {
                bad.push(format!(
                    "degree {}: {}",
                    crate::ncalg::poly::degree(&p),
                    crate::ncalg::poly::display(&p, &names)
                ));
            }
        }
        checks.push(check(
            "well-defined",
            h.relations.len() + h.delta.len(),
            bad,
        ));

        let words = h.alg.normal_words(degree_bound);
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.display_with(&names)
            }
        };
        let images: Vec<ZH> = par::map(words.clone(), |w| self.psi_word(&w));

        let bad: Vec<String> = words
            .iter()
            .zip(par::map(images.iter().collect(), |x| {
                self.defect(x).is_zero()
            }))
            .filter(|(_, ok)| !ok)
            .map(|(w, _)| show(w))
            .collect();
        checks.push(check("lands-in-cotensor", words.len(), bad));

        let bad: Vec<String> = words
            .iter()
            .zip(&images)
            .filter(|(w, x)| {
                let mut lhs = LinComb::new();
                for ((t, v), c) in x.iter() {
                    for ((v1, v2), d) in h.delta_key(v).iter() {
                        lhs.add_term_owned((*t, v1.clone(), v2.clone()), c * d);
                    }
                }
                let mut rhs = LinComb::new();
                for ((u, v), c) in h.delta_key(w).iter() {
                    for ((t, u2), d) in self.psi_word(u).iter() {
                        rhs.add_term_owned((*t, u2.clone(), v.clone()), c * d);
                    }
                }
                lhs != rhs
            })
            .map(|(w, _)| show(w))
            .collect();
        checks.push(check("right-colinear", words.len(), bad));

        let pairs: Vec<(usize, usize)> = (0..words.len())
            .flat_map(|i| (0..words.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| words[i].len() + words[j].len() <= degree_bound)
            .collect();
        let npairs = pairs.len();
        let bad: Vec<String> = par::map(pairs, |(i, j)| {
            let prod = h.alg.mul_keys(&words[i], &words[j]);
            (zh.mul(&images[i], &images[j]) != self.psi(&prod))
                .then(|| format!("({}, {})", show(&words[i]), show(&words[j])))
        })
        .into_iter()
        .flatten()
        .collect();
        checks.push(check("algebra-map", npairs, bad));

        let mut index: BTreeMap<(usize, Word), usize> = BTreeMap::new();
        for x in &images {
            for k in x.keys() {
                let next = index.len();
                index.entry(k.clone()).or_insert(next);
            }
        }
        let cols: Vec<SparseVec> = images
            .iter()
            .map(|x| {
                let m: BTreeMap<usize, CycScalar> =
                    x.iter().map(|(k, c)| (index[k], c.clone())).collect();
                m.into_iter().collect()
            })
            .collect();
        let rank = eliminate(order, index.len(), cols, false).rank();
        let bad = if rank == words.len() {
            vec![]
        } else {
            vec![format!("rank {rank} < {}", words.len())]
        };
        checks.push(check("injective", words.len(), bad));

        let relation_degree = self
            .z
            .relations
            .iter()
            .map(crate::ncalg::poly::degree)
            .max()
            .unwrap_or(0);
        PushforwardReport {
            degree_bound,
            inconclusive: degree_bound < relation_degree,
            words: words.len(),
            rank,
            checks,
        }
    }

    /// `X_h = Σ π(h_(2))^[1] ⊗ S(h_(1)) ⊗ π(h_(2))^[2] ⊗ h_(3)`, grouped as
    /// an element of `(Z ⊗ H) ⊗ (Z ⊗ H)`.
    pub fn translation(
        &self,
        cert: &GaloisCertificate,
        w: &Word,
    ) -> LinComb<((usize, Word), (usize, Word))> {
        let h = &self.seq.h;
        let mut out = LinComb::new();
        for ((u, h3), c) in h.delta_key(w).iter() {
            for ((h1, h2), d) in h.delta_key(u).iter() {
                let cd = c * d;
                let s = h.antipode_key(h1);
                for (l, e) in self.pi_word(h2).iter() {
                    let ce = &cd * e;
                    for ((p1, p2), f) in cert.inverse_table[*l].iter() {
                        let cf = &ce * f;
                        for (sw, g) in s.iter() {
                            out.add_term_owned(((*p1, sw.clone()), (*p2, h3.clone())), &cf * g);
                        }
                    }
                }
            }
        }
        out
    }

    /// The action on `Z □_L H`, three ways, for `h` and `z = Ψ(h')` over normal
    /// words with `deg h <= h_degree` and `deg h' <= z_degree`: from `X_h`
    /// (after checking `κ(X_h) = 1 ⊗ h` and that both legs lie in the
    /// cotensor product), from the displayed formula, and by transport of the
    /// adjoint action `S(h_(1)) h' h_(2)` along `Ψ`.
    pub fn verify_action(
        &self,
        cert: &GaloisCertificate,
        h_degree: usize,
        z_degree: usize,
    ) -> Vec<AxiomCheck> {
        assert_eq!(cert.side, Side::Right);
        let h = &self.seq.h;
        let names = h.alg.names();
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.display_with(&names)
            }
        };
        let zh = self.zh();
        let hs = h.alg.normal_words(h_degree);
        let zs = h.alg.normal_words(z_degree);
        let xs: Vec<LinComb<((usize, Word), (usize, Word))>> =
            par::map(hs.clone(), |w| self.translation(cert, &w));
        let mut out = Vec::new();

        let bad: Vec<String> = hs
            .iter()
            .zip(&xs)
            .filter(|(w, x)| {
                let mut k: LinComb<((usize, Word), Word)> = LinComb::new();
                for (((t, a), (t2, b)), c) in x.iter() {
                    for ((b1, b2), d) in h.delta_key(b).iter() {
                        let ab = h.alg.mul_keys(a, b1);
                        for (y, e) in self.z.alg.mul_basis(*t, *t2).iter() {
                            for (ab_w, f) in ab.iter() {
                                k.add_term_owned(
                                    ((*y, ab_w.clone()), b2.clone()),
                                    &(&(c * d) * e) * f,
                                );
                            }
                        }
                    }
                }
                k != LinComb::single(((0, Word::empty()), (*w).clone()), self.one())
            })
            .map(|(w, _)| show(w))
            .collect();
        out.push(check("translation-inverts-canonical-map", hs.len(), bad));

        let bad: Vec<String> = hs
            .iter()
            .zip(&xs)
            .filter(|(_, x)| {
                let mut first: BTreeMap<(usize, Word), ZH> = BTreeMap::new();
                let mut second: BTreeMap<(usize, Word), ZH> = BTreeMap::new();
                for ((p, r), c) in x.iter() {
                    first
                        .entry(r.clone())
                        .or_default()
                        .add_term_owned(p.clone(), c.clone());
                    second
                        .entry(p.clone())
                        .or_default()
                        .add_term_owned(r.clone(), c.clone());
                }
                first
                    .values()
                    .chain(second.values())
                    .any(|v| !self.defect(v).is_zero())
            })
            .map(|(w, _)| show(w))
            .collect();
        out.push(check("translation-in-cotensor", hs.len(), bad));

        let zimgs: Vec<ZH> = zs.iter().map(|w| self.psi_word(w)).collect();
        let pairs: Vec<(usize, usize)> = (0..hs.len())
            .flat_map(|i| (0..zs.len()).map(move |j| (i, j)))
            .collect();
        let n = pairs.len();
        let results: Vec<(bool, bool)> = par::map(pairs.clone(), |(i, j)| {
            let z = &zimgs[j];
            let mut derived = ZH::new();
            for ((p, r), c) in xs[i].iter() {
                let left = zh.mul(&LinComb::single(p.clone(), c.clone()), z);
                derived.add_assign(&zh.mul(&left, &LinComb::single(r.clone(), self.one())));
            }
            let displayed = self.displayed_formula(cert, &hs[i], z);
            let mut adjoint = NcPoly::new();
            for ((h1, h2), c) in h.delta_key(&hs[i]).iter() {
                let s = h.antipode_key(h1);
                let sh = h.alg.mul(&s, &LinComb::single(zs[j].clone(), self.one()));
                adjoint.add_scaled(&h.alg.mul(&sh, &LinComb::single(h2.clone(), self.one())), c);
            }
            (derived == displayed, derived == self.psi(&adjoint))
        });
        let label = |&(i, j): &(usize, usize)| format!("({}, {})", show(&zs[j]), show(&hs[i]));
        let bad: Vec<String> = pairs
            .iter()
            .zip(&results)
            .filter(|(_, r)| !r.0)
            .map(|(p, _)| label(p))
            .collect();
        out.push(check("mu-formula", n, bad));
        let bad: Vec<String> = pairs
            .iter()
            .zip(&results)
            .filter(|(_, r)| !r.1)
            .map(|(p, _)| label(p))
            .collect();
        out.push(check("mu-adjoint-transport", n, bad));
        out
    }

    /// `(Σ t_i ⊗ h_i)·h = Σ π(h_(2))^[1] t_i π(h_(2))^[2] ⊗ S(h_(1)) h_i h_(3)`.
    pub fn displayed_formula(&self, cert: &GaloisCertificate, w: &Word, z: &ZH) -> ZH {
        let h = &self.seq.h;
        let mut out = ZH::new();
        for ((u, h3), c) in h.delta_key(w).iter() {
            for ((h1, h2), d) in h.delta_key(u).iter() {
                let s = h.antipode_key(h1);
                let pi = self.pi_word(h2);
                for ((t, hi), e) in z.iter() {
                    let mut tpart = Elem::new();
                    for (l, f) in pi.iter() {
                        for ((p1, p2), g) in cert.inverse_table[*l].iter() {
                            let left = self.z.alg.mul_basis(*p1, *t);
                            for (y, v) in left.iter() {
                                tpart.add_scaled(&self.z.alg.mul_basis(*y, *p2), &(&(f * g) * v));
                            }
                        }
                    }
                    let hpart = h.alg.mul(
                        &h.alg.mul(&s, &LinComb::single(hi.clone(), self.one())),
                        &LinComb::single(h3.clone(), self.one()),
                    );
                    let coef = &(c * d) * e;
                    for (y, a) in tpart.iter() {
                        for (x, b) in hpart.iter() {
                            out.add_term_owned((*y, x.clone()), &(&coef * a) * b);
                        }
                    }
                }
            }
        }
        out
    }
}
