//! Builders for the algebras under study: `O(SL_q(n))`, its quotient
//! `u_q(sl(n))*`, the bi-Galois objects `T_g`, the Taft quotient `B`, the
//! cleft objects `A(s)` and the Frobenius exact-sequence data.

pub mod frobenius;
pub mod frt;
mod slmatrix;

pub use frobenius::{FrobeniusReport, FrobeniusSequence};
pub use slmatrix::{MatrixError, SLMatrix};

use std::sync::Arc;

use crate::cyclotomic::{CycScalar, LinComb, MAX_ORDER};
use crate::galoislab::{ComoduleAlgebra, Side};
use crate::hopfcore::{HopfData, HopfFd, Tensor2};
use crate::ncalg::{
    self, Algebra, FdAlgebra, NcError, NcPoly, Presentation, PresentedAlgebra, RewriteSystem,
    Tensor, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("N must be odd and greater than 1 (got {0})")]
    InvalidOrder(usize),
    #[error("matrix size must satisfy 2 <= n <= 15 (got {0})")]
    InvalidSize(usize),
    #[error("matrix is {got}x{got}, expected {expected}x{expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("determinant of g is {0}, expected 1")]
    DetNotOne(String),
    #[error("completion of {what} did not finish within degree bound {bound}")]
    Incomplete { what: String, bound: usize },
    #[error("basis enumeration for {what} failed: {source}")]
    Basis { what: String, source: NcError },
    #[error("{what} has dimension {got}, expected {expected}")]
    Dimension {
        what: String,
        expected: usize,
        got: usize,
    },
}

/// Where completed rewriting systems come from (directly, or through a cache).
pub trait SystemSource: Send + Sync {
    fn complete(&self, p: &Presentation, bound: usize) -> RewriteSystem;
}

/// Runs the completion procedure every time.
#[derive(Debug, Default, Clone, Copy)]
pub struct DirectCompletion;

impl SystemSource for DirectCompletion {
    fn complete(&self, p: &Presentation, bound: usize) -> RewriteSystem {
        ncalg::complete(p.order, p.gens.clone(), &p.relations, bound)
    }
}

/// Parameters `(n, N)` together with the completion settings.
#[derive(Clone)]
pub struct QContext {
    pub n: usize,
    pub big_n: usize,
    pub bound: usize,
    /// Degree bound for the infinite-dimensional presented algebras.
    pub presented_bound: usize,
    source: Arc<dyn SystemSource>,
}

impl std::fmt::Debug for QContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QContext")
            .field("n", &self.n)
            .field("N", &self.big_n)
            .field("bound", &self.bound)
            .field("presented_bound", &self.presented_bound)
            .finish()
    }
}

/// Completion bound that suffices for `u_q(sl(n))*` and `T_g` at the sizes we use.
pub fn default_bound(n: usize, big_n: usize) -> usize {
    (big_n * (n * n - 1)).max(12) + 4
}

impl QContext {
    pub fn new(n: usize, big_n: usize) -> Result<QContext, BuildError> {
        if big_n < 3 || big_n.is_multiple_of(2) || big_n > MAX_ORDER as usize {
            return Err(BuildError::InvalidOrder(big_n));
        }
        if !(2..=15).contains(&n) {
            return Err(BuildError::InvalidSize(n));
        }
        Ok(QContext {
            n,
            big_n,
            bound: default_bound(n, big_n),
            presented_bound: 3 * big_n + 3,
            source: Arc::new(DirectCompletion),
        })
    }

    pub fn with_bound(mut self, bound: usize) -> QContext {
        self.bound = bound;
        self
    }

    pub fn with_presented_bound(mut self, bound: usize) -> QContext {
        self.presented_bound = bound;
        self
    }

    pub fn with_source(mut self, source: Arc<dyn SystemSource>) -> QContext {
        self.source = source;
        self
    }

    pub fn order(&self) -> u32 {
        self.big_n as u32
    }

    pub fn q(&self) -> CycScalar {
        CycScalar::zeta(self.order())
    }

    /// Expected dimension `N^(n²-1)` of `u_q(sl(n))*` and of every `T_g`.
    pub fn expected_dim(&self) -> usize {
        self.big_n.pow((self.n * self.n - 1) as u32)
    }

    pub fn identity(&self) -> SLMatrix {
        SLMatrix::identity(self.order(), self.n)
    }

    fn check_matrix(&self, g: &SLMatrix) -> Result<(), BuildError> {
        if g.n() != self.n {
            return Err(BuildError::SizeMismatch {
                expected: self.n,
                got: g.n(),
            });
        }
        let d = g.det();
        if !d.is_one() {
            return Err(BuildError::DetNotOne(d.to_string()));
        }
        Ok(())
    }

    /// `O(SL_q(n)) / (x_ij^N - g_ij)`.
    pub fn presentation_t_g(&self, g: &SLMatrix) -> Presentation {
        let mut rels = frt::o_slq_relations(self.n, &self.q());
        rels.extend(frt::power_relations(
            self.n,
            self.order(),
            self.big_n,
            g.rows(),
        ));
        Presentation {
            order: self.order(),
            gens: frt::gen_names(self.n),
            relations: rels,
        }
    }

    pub fn presentation_o_slq(&self) -> Presentation {
        Presentation {
            order: self.order(),
            gens: frt::gen_names(self.n),
            relations: frt::o_slq_relations(self.n, &self.q()),
        }
    }

    /// Completes and enumerates a finite-dimensional presentation.
    pub fn fd_algebra(
        &self,
        p: &Presentation,
        what: &str,
        expected: Option<usize>,
    ) -> Result<Arc<FdAlgebra>, BuildError> {
        let sys = self.source.complete(p, self.bound);
        if !sys.is_complete() {
            return Err(BuildError::Incomplete {
                what: what.into(),
                bound: self.bound,
            });
        }
        let cap = expected.map_or(1_000_000, |e| 2 * e + 16);
        let alg = FdAlgebra::new(sys, cap).map_err(|source| BuildError::Basis {
            what: what.into(),
            source,
        })?;
        if let Some(e) = expected {
            if alg.dim() != e {
                return Err(BuildError::Dimension {
                    what: what.into(),
                    expected: e,
                    got: alg.dim(),
                });
            }
        }
        Ok(Arc::new(alg))
    }

    /// The quantum coordinate algebra with its Hopf structure; the rewriting
    /// system may be incomplete (the algebra is infinite-dimensional at every
    /// n and has no finite Gröbner basis in this order for n ≥ 3).
    pub fn build_o_slq(&self) -> HopfData<PresentedAlgebra> {
        let p = self.presentation_o_slq();
        let sys = self.source.complete(&p, self.presented_bound);
        let alg = PresentedAlgebra::new(sys);
        self.matrix_hopf("O(SL_q(n))", alg, p.relations, &self.q())
    }

    /// The commutative Hopf algebra `O(SL(n))` on generators `X_ij`.
    pub fn build_o_sl(&self) -> HopfData<PresentedAlgebra> {
        let one = CycScalar::one(self.order());
        let rels = frt::o_slq_relations(self.n, &one);
        let gens: Vec<String> = frt::gen_names(self.n)
            .iter()
            .map(|s| s.to_uppercase())
            .collect();
        let sys = ncalg::complete(self.order(), gens, &rels, self.presented_bound);
        let alg = PresentedAlgebra::new(sys);
        self.matrix_hopf("O(SL(n))", alg, rels, &one)
    }

    fn matrix_hopf<A: ncalg::WordBasis>(
        &self,
        name: &str,
        alg: A,
        relations: Vec<NcPoly>,
        q: &CycScalar,
    ) -> HopfData<A> {
        let n = self.n;
        let gens: Vec<LinComb<A::Key>> = (0..(n * n) as u8).map(|g| alg.gen_elem(g)).collect();
        let t = Tensor::new(&alg, &alg);
        let delta: Vec<Tensor2<A::Key>> = frt::coproduct_on_gens(n)
            .iter()
            .map(|terms| {
                let mut acc = LinComb::new();
                for &(x, y) in terms {
                    acc.add_assign(&t.pure(&gens[x as usize], &gens[y as usize]));
                }
                acc
            })
            .collect();
        let counit = (0..n * n)
            .map(|g| CycScalar::from_int(self.order(), (g / n == g % n) as i64))
            .collect();
        let antipode = frt::antipode_on_gens(n, q)
            .iter()
            .map(|p| ncalg::eval_poly(&alg, p, &gens))
            .collect();
        HopfData::new(
            format!("{name} n={n} N={}", self.big_n),
            alg,
            relations,
            delta,
            counit,
            antipode,
        )
    }

    /// `u_q(sl(n))* = O(SL_q(n)) / (x_ij^N - δ_ij)`.
    pub fn build_uq_star(&self) -> Result<Arc<HopfFd>, BuildError> {
        let p = self.presentation_t_g(&self.identity());
        let alg = self.fd_algebra(&p, "u_q(sl(n))*", Some(self.expected_dim()))?;
        Ok(Arc::new(self.matrix_hopf(
            "u_q(sl(n))*",
            alg,
            p.relations,
            &self.q(),
        )))
    }

    /// `T_g` with right and left coactions `x_ij ↦ Σ_k x_ik ⊗ x_kj` of `h = u_q(sl(n))*`.
    pub fn build_t_g(&self, g: &SLMatrix, h: &Arc<HopfFd>) -> Result<ComoduleAlgebra, BuildError> {
        self.check_matrix(g)?;
        self.t_from_presentation(format!("T_{g}"), self.presentation_t_g(g), h)
    }

    /// Any quotient of `O(SL_q(n))` on the `x_ij` with the two matrix coactions.
    pub fn t_from_presentation(
        &self,
        name: String,
        p: Presentation,
        h: &Arc<HopfFd>,
    ) -> Result<ComoduleAlgebra, BuildError> {
        let alg = self.fd_algebra(&p, &name, Some(self.expected_dim()))?;
        let n = self.n;
        let tg: Vec<LinComb<usize>> = (0..(n * n) as u8).map(|x| alg.gen(x)).collect();
        let hg: Vec<LinComb<usize>> = (0..(n * n) as u8).map(|x| h.alg.gen(x)).collect();
        let rt = Tensor::new(&*alg, &h.alg);
        let lt = Tensor::new(&h.alg, &*alg);
        let mut rho = Vec::new();
        let mut lam = Vec::new();
        for terms in frt::coproduct_on_gens(n) {
            let mut r = LinComb::new();
            let mut l = LinComb::new();
            for (x, y) in terms {
                r.add_assign(&rt.pure(&tg[x as usize], &hg[y as usize]));
                l.add_assign(&lt.pure(&hg[x as usize], &tg[y as usize]));
            }
            rho.push(r);
            lam.push(l);
        }
        Ok(ComoduleAlgebra::new(name, alg, p.relations)
            .with_coaction(Side::Right, h.clone(), rho)
            .with_coaction(Side::Left, h.clone(), lam))
    }

    /// Taft quotient `B`: generators `g < x`, `gx = q xg`, `g^N = 1`, `x^N = 0`.
    pub fn build_taft(&self) -> Result<Arc<HopfFd>, BuildError> {
        let order = self.order();
        let (one, q) = (CycScalar::one(order), self.q());
        let big_n = self.big_n;
        let mut r1 = NcPoly::single(Word::from_slice(&[0, 1]), one.clone());
        r1.add_term_owned(Word::from_slice(&[1, 0]), -&q);
        let mut r2 = NcPoly::single(Word::pow(0, big_n), one.clone());
        r2.add_term_owned(Word::empty(), -&one);
        let r3 = NcPoly::single(Word::pow(1, big_n), one.clone());
        let p = Presentation {
            order,
            gens: vec!["g".into(), "x".into()],
            relations: vec![r1, r2, r3],
        };
        let alg = self.fd_algebra(&p, "B", Some(big_n * big_n))?;
        let (g, x) = (alg.gen(0), alg.gen(1));
        let ginv = alg.pow(&g, big_n - 1);
        let t = Tensor::new(&*alg, &*alg);
        let mut dx = t.pure(&g, &x);
        dx.add_assign(&t.pure(&x, &ginv));
        let delta = vec![t.pure(&g, &g), dx];
        let counit = vec![one.clone(), CycScalar::zero(order)];
        let antipode = vec![ginv.clone(), x.scaled(&-q.inv().unwrap())];
        Ok(Arc::new(HopfData::new(
            format!("B N={big_n}"),
            alg,
            p.relations,
            delta,
            counit,
            antipode,
        )))
    }

    /// `A(s)`: generators `G < X`, `GX = q XG`, `G^N = 1`, `X^N = s`, with
    /// `δ(G) = G⊗g`, `δ(X) = G⊗x + X⊗g^{-1}` over `B`.
    pub fn build_cleft_a(
        &self,
        s: &CycScalar,
        b: &Arc<HopfFd>,
    ) -> Result<ComoduleAlgebra, BuildError> {
        let order = self.order();
        let (one, q) = (CycScalar::one(order), self.q());
        let big_n = self.big_n;
        let mut r1 = NcPoly::single(Word::from_slice(&[0, 1]), one.clone());
        r1.add_term_owned(Word::from_slice(&[1, 0]), -&q);
        let mut r2 = NcPoly::single(Word::pow(0, big_n), one.clone());
        r2.add_term_owned(Word::empty(), -&one);
        let mut r3 = NcPoly::single(Word::pow(1, big_n), one.clone());
        r3.add_term_owned(Word::empty(), -s);
        let p = Presentation {
            order,
            gens: vec!["G".into(), "X".into()],
            relations: vec![r1, r2, r3],
        };
        let name = format!("A({s})");
        let alg = self.fd_algebra(&p, &name, Some(big_n * big_n))?;
        let (bg, bx) = (b.alg.gen(0), b.alg.gen(1));
        let bginv = b.alg.pow(&bg, big_n - 1);
        let t = Tensor::new(&*alg, &b.alg);
        let (ag, ax) = (alg.gen(0), alg.gen(1));
        let mut dx = t.pure(&ag, &bx);
        dx.add_assign(&t.pure(&ax, &bginv));
        let rho = vec![t.pure(&ag, &bg), dx];
        Ok(ComoduleAlgebra::new(name, alg, p.relations).with_coaction(Side::Right, b.clone(), rho))
    }

    /// The Hopf surjection `u_q(sl(2))* → B`: `a ↦ g`, `b ↦ x`, `c ↦ 0`, `d ↦ g^{N-1}`.
    pub fn taft_projection(&self, b: &HopfFd) -> Vec<LinComb<usize>> {
        assert_eq!(self.n, 2, "the Taft projection is defined for n = 2");
        let g = b.alg.gen(0);
        vec![
            g.clone(),
            b.alg.gen(1),
            LinComb::new(),
            b.alg.pow(&g, self.big_n - 1),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            QContext::new(2, 2).unwrap_err(),
            BuildError::InvalidOrder(2)
        );
        assert_eq!(
            QContext::new(2, 1).unwrap_err(),
            BuildError::InvalidOrder(1)
        );
        assert_eq!(QContext::new(1, 3).unwrap_err(), BuildError::InvalidSize(1));
    }
}
