//! Exact certification of the canonical maps
//! `κ_r(t ⊗ t') = t t'_(0) ⊗ t'_(1)` and `κ_l(t ⊗ t') = t_(-1) ⊗ t_(0) t'`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CoactedAlgebra, Side};
use crate::cyclotomic::{eliminate, CycScalar, LinComb, SparseVec};
use crate::hopfcore::Tensor2;
use crate::ncalg::Elem;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("{0:?} coaction is missing")]
    MissingCoaction(Side),
    #[error("dim T = {dim_t} differs from dim H = {dim_h}")]
    DimensionMismatch { dim_t: usize, dim_h: usize },
    #[error("{side:?} canonical map has rank {rank}, expected {expected}")]
    RankDeficient {
        side: Side,
        rank: usize,
        expected: usize,
        /// A nonzero element of `T ⊗ T` in the kernel.
        kernel_witness: Tensor2<usize>,
    },
}

/// A certified canonical map with its inverse on `1 ⊗ h` (right) or `h ⊗ 1` (left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub side: Side,
    pub kappa_rank: usize,
    pub dim_t: usize,
    pub dim_h: usize,
    /// `inverse_table[h] = h^[1] ⊗ h^[2]` with keys in `T ⊗ T`.
    pub inverse_table: Vec<Tensor2<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub side: Side,
    pub kappa_rank: usize,
    pub dim_t: usize,
    pub dim_h: usize,
}

impl GaloisCertificate {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            side: self.side,
            kappa_rank: self.kappa_rank,
            dim_t: self.dim_t,
            dim_h: self.dim_h,
        }
    }
}

/// `κ` applied to a basis tensor `e_i ⊗ e_j`; keys `(t, h)` for the right map
/// and `(h, t)` for the left map.
pub fn kappa_basis<T: CoactedAlgebra + ?Sized>(
    t: &T,
    side: Side,
    i: usize,
    j: usize,
) -> Tensor2<usize> {
    let mut out = LinComb::new();
    match side {
        Side::Right => {
            for ((x, h), c) in t.coact_key(side, j).iter() {
                for (y, v) in t.mul_basis(i, *x).iter() {
                    out.add_term_owned((*y, *h), c * v);
                }
            }
        }
        Side::Left => {
            for ((h, x), c) in t.coact_key(side, i).iter() {
                for (y, v) in t.mul_basis(*x, j).iter() {
                    out.add_term_owned((*h, *y), c * v);
                }
            }
        }
    }
    out
}

pub fn kappa<T: CoactedAlgebra + ?Sized>(t: &T, side: Side, x: &Tensor2<usize>) -> Tensor2<usize> {
    let mut out = LinComb::new();
    for ((i, j), c) in x.iter() {
        out.add_scaled(&kappa_basis(t, side, *i, *j), c);
    }
    out
}

/// Builds `κ` as an exact matrix on the fixed bases, computes its rank and,
/// when bijective, the inverse table, checking `κ ∘ κ⁻¹ = id` on every basis
/// element of `T ⊗ H` (resp. `H ⊗ T`).
pub fn certify_galois<T: CoactedAlgebra + ?Sized>(
    t: &T,
    side: Side,
) -> Result<GaloisCertificate, GaloisError> {
    let hopf = t.hopf(side).ok_or(GaloisError::MissingCoaction(side))?;
    let (dt, dh) = (t.dim(), hopf.alg.dim());
    if dt != dh {
        return Err(GaloisError::DimensionMismatch {
            dim_t: dt,
            dim_h: dh,
        });
    }
    let order = t.order();
    let coord = |(a, b): (usize, usize)| match side {
        Side::Right => a * dh + b,
        Side::Left => a * dt + b,
    };
    // warm lazily built coaction caches in basis order
    for j in 0..dt {
        t.coact_key(side, j);
    }
    let columns: Vec<SparseVec> = par::map_range(dt * dt, |idx| {
        let img = kappa_basis(t, side, idx / dt, idx % dt);
        let sorted: BTreeMap<usize, CycScalar> =
            img.into_iter_terms().map(|(k, v)| (coord(k), v)).collect();
        sorted.into_iter().collect()
    });
    let red = eliminate(order, dt * dh, columns, true);
    let expected = dt * dh;
    if red.rank() < expected {
        let kernel_witness = red.kernel()[0]
            .iter()
            .map(|(idx, v)| ((idx / dt, idx % dt), v.clone()))
            .collect();
        return Err(GaloisError::RankDeficient {
            side,
            rank: red.rank(),
            expected,
            kernel_witness,
        });
    }
    let one = CycScalar::one(order);
    let unit = t.unit();
    let inverse_table: Vec<Tensor2<usize>> = par::map_range(dh, |h| {
        let target: BTreeMap<usize, CycScalar> = unit
            .iter()
            .map(|(u, c)| match side {
                Side::Right => (coord((*u, h)), c.clone()),
                Side::Left => (coord((h, *u)), c.clone()),
            })
            .collect();
        let target: SparseVec = target.into_iter().collect();
        let x = red.solve(&target).expect("full-rank canonical map is onto");
        x.into_iter()
            .map(|(idx, v)| ((idx / dt, idx % dt), v))
            .collect()
    });
    let cert = GaloisCertificate {
        side,
        kappa_rank: red.rank(),
        dim_t: dt,
        dim_h: dh,
        inverse_table,
    };
    let bad = par::find_first(dt * dh, |idx| {
        let (a, h) = (idx / dh, idx % dh);
        let (x, want) = match side {
            Side::Right => (
                left_multiply(t, a, &cert.inverse_table[h]),
                LinComb::single((a, h), one.clone()),
            ),
            Side::Left => (
                right_multiply(t, &cert.inverse_table[h], a),
                LinComb::single((h, a), one.clone()),
            ),
        };
        (kappa(t, side, &x) != want).then_some(())
    });
    assert!(
        bad.is_none(),
        "canonical map inverse failed verification at {bad:?}"
    );
    Ok(cert)
}

/// `e_a · x` on the first tensor factor.
pub fn left_multiply<T: CoactedAlgebra + ?Sized>(
    t: &T,
    a: usize,
    x: &Tensor2<usize>,
) -> Tensor2<usize> {
    let mut out = LinComb::new();
    for ((i, j), c) in x.iter() {
        for (y, v) in t.mul_basis(a, *i).iter() {
            out.add_term_owned((*y, *j), c * v);
        }
    }
    out
}

/// `x · e_a` on the second tensor factor.
pub fn right_multiply<T: CoactedAlgebra + ?Sized>(
    t: &T,
    x: &Tensor2<usize>,
    a: usize,
) -> Tensor2<usize> {
    let mut out = LinComb::new();
    for ((i, j), c) in x.iter() {
        for (y, v) in t.mul_basis(*j, a).iter() {
            out.add_term_owned((*i, *y), c * v);
        }
    }
    out
}

/// `Σ x_k · t · y_k` for `Σ x_k ⊗ y_k`.
pub fn sandwich<T: CoactedAlgebra + ?Sized>(t: &T, x: &Tensor2<usize>, e: &Elem) -> Elem {
    let mut out = Elem::new();
    for ((i, j), c) in x.iter() {
        let left = t.mul(&t.basis_elem(*i), e);
        out.add_scaled(&t.mul(&left, &t.basis_elem(*j)), c);
    }
    out
}
