//! The convolution algebra `Hom(H, A)` for finite-dimensional `H` and `A`.

use std::collections::BTreeMap;

use super::HopfFd;
use crate::cyclotomic::{CycScalar, ExactMatrix, LinComb, SparseVec};
use crate::ncalg::{Algebra, Elem, FdAlgebra};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvolutionError {
    #[error("map is not convolution-invertible (the linear system for its inverse is singular)")]
    NotInvertible,
}

/// A linear map `H → A` given by the images of the basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub images: Vec<Elem>,
}

impl LinearMap {
    pub fn identity(dim: usize, order: u32) -> LinearMap {
        LinearMap {
            images: (0..dim)
                .map(|i| LinComb::single(i, CycScalar::one(order)))
                .collect(),
        }
    }

    /// `h ↦ ε(h)·1`, the unit of the convolution algebra.
    pub fn counit_unit(h: &HopfFd) -> LinearMap {
        LinearMap {
            images: (0..h.alg.dim())
                .map(|i| LinComb::single(0, h.counit_key(&i)))
                .collect(),
        }
    }

    /// The algebra map determined by generator images, extended along normal words.
    pub fn from_algebra_map(h: &HopfFd, target: &FdAlgebra, on_gens: &[Elem]) -> LinearMap {
        let mut images: Vec<Elem> = Vec::with_capacity(h.alg.dim());
        for i in 0..h.alg.dim() {
            let img = match crate::ncalg::WordBasis::split_last(&h.alg, &i) {
                None => target.one(),
                Some((p, g)) => target.mul(&images[p], &on_gens[g as usize]),
            };
            images.push(img);
        }
        LinearMap { images }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        e.map_linear(|i| self.images[*i].clone())
    }

    /// Composition `other ∘ self` where `other` is given on the basis of the target.
    pub fn then(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            images: self.images.iter().map(|e| other.apply(e)).collect(),
        }
    }
}

/// `(f ∗ g)(h) = f(h_(1)) g(h_(2))`.
pub fn convolve(h: &HopfFd, target: &FdAlgebra, f: &LinearMap, g: &LinearMap) -> LinearMap {
    let images = par::map_range(h.alg.dim(), |i| {
        let mut out = Elem::new();
        for ((x, y), c) in h.delta_key(&i).iter() {
            out.add_scaled(&target.mul(&f.images[*x], &g.images[*y]), c);
        }
        out
    });
    LinearMap { images }
}

/// The two-sided convolution inverse, by an exact linear solve in `Hom(H, A)`.
pub fn convolution_inverse(
    h: &HopfFd,
    target: &FdAlgebra,
    f: &LinearMap,
) -> Result<LinearMap, ConvolutionError> {
    let (dh, da) = (h.alg.dim(), target.dim());
    let order = h.order();
    // unknown (y, a) is the coefficient of e_a in g(e_y); equation (h, b) the
    // coefficient of e_b in (f ∗ g)(e_h)
    let per_h: Vec<Vec<((usize, usize), usize, CycScalar)>> = par::map_range(dh, |hi| {
        let mut out = Vec::new();
        for ((x, y), c) in h.delta_key(&hi).iter() {
            for a in 0..da {
                let prod = target.mul(&f.images[*x], &target.basis_elem(a));
                for (b, v) in prod.iter() {
                    out.push(((*y, a), hi * da + b, c * v));
                }
            }
        }
        out
    });
    let mut cols: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); dh * da];
    for entries in per_h {
        for ((y, a), row, v) in entries {
            let e = cols[y * da + a]
                .entry(row)
                .or_insert_with(|| CycScalar::zero(order));
            *e += &v;
        }
    }
    let columns: Vec<SparseVec> = cols
        .into_iter()
        .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let m = ExactMatrix::from_columns(order, dh * da, &columns);
    let rhs: SparseVec = (0..dh)
        .map(|hi| (hi * da, h.counit_key(&hi)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let x = m.solve(&rhs).ok_or(ConvolutionError::NotInvertible)?;
    let mut images = vec![Elem::new(); dh];
    for (idx, v) in x {
        images[idx / da].add_term_owned(idx % da, v);
    }
    let g = LinearMap { images };
    let unit = LinearMap::counit_unit(h);
    if convolve(h, target, f, &g) != unit || convolve(h, target, &g, f) != unit {
        return Err(ConvolutionError::NotInvertible);
    }
    Ok(g)
}
