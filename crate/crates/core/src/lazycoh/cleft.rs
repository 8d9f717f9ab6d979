use crate::cyclotomic::{CycScalar, LinComb};
use crate::galoislab::{ComoduleAlgebra, Side};
use crate::hopfcore::{convolution_inverse, HopfFd, LinearMap};
use crate::ncalg::{Algebra, Elem, Tensor, WordBasis};

use super::{Cocycle, CocycleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CleftError {
    #[error("object has no right coaction")]
    MissingCoaction,
    #[error("section has {got} images, expected {expected}")]
    SectionShape { got: usize, expected: usize },
    #[error("section is not colinear at {0}")]
    NotColinear(String),
    #[error("section is not convolution invertible")]
    NotInvertible,
    #[error("σ({a}, {b}) is not a scalar multiple of 1")]
    NotScalar { a: String, b: String },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// The section `e_w ↦ e_w` matching normal words of `H` and `T` letter by letter.
pub fn word_section(h: &HopfFd, t: &ComoduleAlgebra) -> Option<LinearMap> {
    let order = h.order();
    let images = (0..h.alg.dim())
        .map(|i| {
            t.alg
                .index_of(h.alg.word(i))
                .map(|j| Elem::single(j, CycScalar::one(order)))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(LinearMap { images })
}

/// `σ(a, b) = γ(a_(1)) γ(b_(1)) γ⁻¹(a_(2) b_(2))` for a colinear convolution
/// invertible section `γ: H → T`.
pub fn cocycle_from_cleft(t: &ComoduleAlgebra, section: &LinearMap) -> Result<Cocycle, CleftError> {
    let c = t.coaction(Side::Right).ok_or(CleftError::MissingCoaction)?;
    let h = c.hopf.clone();
    let d = h.alg.dim();
    if section.images.len() != d {
        return Err(CleftError::SectionShape {
            got: section.images.len(),
            expected: d,
        });
    }
    let names = h.alg.names();
    let label = |i: usize| {
        let w = h.alg.word(i);
        if w.is_empty() {
            "1".to_string()
        } else {
            w.display_with(&names)
        }
    };

    let tensor = Tensor::new(&*t.alg, &h.alg);
    for i in 0..d {
        let coacted = t.coact_elem(Side::Right, &section.images[i]);
        let mut expected = LinComb::new();
        for ((x, y), s) in h.delta_key(&i).iter() {
            expected.add_scaled(&tensor.pure(&section.images[*x], &h.alg.basis_elem(*y)), s);
        }
        if coacted != expected {
            return Err(CleftError::NotColinear(label(i)));
        }
    }

    let inverse =
        convolution_inverse(&h, &t.alg, section).map_err(|_| CleftError::NotInvertible)?;
    let deltas: Vec<_> = (0..d).map(|i| h.delta_key(&i)).collect();
    let rows = crate::par::map_range(d, |a| {
        (0..d)
            .map(|b| {
                let mut acc = Elem::new();
                for ((a1, a2), x) in deltas[a].iter() {
                    for ((b1, b2), y) in deltas[b].iter() {
                        let tail = inverse.apply(&h.alg.mul_basis(*a2, *b2));
                        if tail.is_zero() {
                            continue;
                        }
                        let head = t.alg.mul(&section.images[*a1], &section.images[*b1]);
                        acc.add_scaled(&t.alg.mul(&head, &tail), &(x * y));
                    }
                }
                t.alg.is_scalar(&acc).ok_or((a, b))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let values = rows
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|(a, b)| CleftError::NotScalar {
            a: label(a),
            b: label(b),
        })?;
    Ok(Cocycle::new(h, values)?)
}

/// The section `b ↦ f(b_(1)) γ(b_(2))` for a functional `f` on `H` given by its
/// basis values. Colinear whenever `γ` is; when `f(1) = 1` and `f` is not
/// central in `H*` the resulting cocycle differs from the original by the
/// non-lazy coboundary of `f`.
pub fn gauge_section(h: &HopfFd, section: &LinearMap, f: &[CycScalar]) -> LinearMap {
    let images = (0..h.alg.dim())
        .map(|i| {
            let mut out = Elem::new();
            for ((x, y), c) in h.delta_key(&i).iter() {
                let s = c * &f[*x];
                if !s.is_zero() {
                    out.add_scaled(&section.images[*y], &s);
                }
            }
            out
        })
        .collect();
    LinearMap { images }
}

/// Whether `f(h_(1)) h_(2) = h_(1) f(h_(2))` on every basis element.
pub fn is_central_functional(h: &HopfFd, f: &[CycScalar]) -> bool {
    (0..h.alg.dim()).all(|i| {
        let (mut l, mut r) = (Elem::new(), Elem::new());
        for ((x, y), c) in h.delta_key(&i).iter() {
            l.add_scaled(&h.alg.basis_elem(*y), &(c * &f[*x]));
            r.add_scaled(&h.alg.basis_elem(*x), &(c * &f[*y]));
        }
        l == r
    })
}

/// `ε + e_k*`, convolution invertible whenever `e_k` is not grouplike-supported.
pub fn perturbed_counit(h: &HopfFd, k: usize) -> Vec<CycScalar> {
    (0..h.alg.dim())
        .map(|i| {
            if i == k {
                &h.counit_key(&i) + &CycScalar::one(h.order())
            } else {
                h.counit_key(&i)
            }
        })
        .collect()
}
