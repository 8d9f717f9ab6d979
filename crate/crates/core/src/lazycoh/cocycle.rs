use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{CycScalar, ExactMatrix, SparseVec};
use crate::hopfcore::HopfFd;
use crate::ncalg::{Elem, WordBasis};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("values table is {rows}x{cols}, expected {dim}x{dim}")]
    Shape {
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("not normalized at {0}")]
    NotNormalized(String),
    #[error("cocycle identity fails at {0}")]
    IdentityFails(String),
    #[error("not convolution invertible")]
    NotInvertible,
}

/// Outcome of the laziness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Laziness {
    Lazy,
    /// The first failing basis pair with both sides of the condition.
    NotLazy {
        x: usize,
        y: usize,
        left: Elem,
        right: Elem,
    },
    Unknown,
}

impl Laziness {
    pub fn is_lazy(&self) -> Option<bool> {
        match self {
            Laziness::Lazy => Some(true),
            Laziness::NotLazy { .. } => Some(false),
            Laziness::Unknown => None,
        }
    }
}

/// Result of [`is_cocycle`], with the first failure of each kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleCheck {
    pub normalized: bool,
    pub normalization_failure: Option<String>,
    pub triples_checked: usize,
    pub failing_triple: Option<(usize, usize, usize)>,
    pub invertible: bool,
}

impl CocycleCheck {
    pub fn passed(&self) -> bool {
        self.normalized && self.failing_triple.is_none() && self.invertible
    }
}

/// A bilinear form `σ(e_i, e_j)` on a finite-dimensional Hopf algebra.
#[derive(Clone)]
pub struct Cocycle {
    pub hopf: Arc<HopfFd>,
    pub values: Vec<Vec<CycScalar>>,
    pub inverse_values: Vec<Vec<CycScalar>>,
    pub lazy: Laziness,
}

impl std::fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cocycle")
            .field("hopf", &self.hopf.name)
            .field("lazy", &self.lazy.is_lazy())
            .finish()
    }
}

/// `σ(a, b)` for arbitrary elements.
pub fn eval_form(values: &[Vec<CycScalar>], a: &Elem, b: &Elem, order: u32) -> CycScalar {
    let mut out = CycScalar::zero(order);
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out += &(&(x * y) * &values[*i][*j]);
        }
    }
    out
}

fn label(h: &HopfFd, i: usize) -> String {
    let w = h.alg.word(i);
    if w.is_empty() {
        "1".into()
    } else {
        w.display_with(&h.alg.names())
    }
}

/// `Σ σ(x_(1), y_(1)) x_(2) y_(2)` and `Σ σ(x_(2), y_(2)) x_(1) y_(1)`.
pub fn lazy_sides(h: &HopfFd, values: &[Vec<CycScalar>], x: &Elem, y: &Elem) -> (Elem, Elem) {
    let (dx, dy) = (h.delta_elem(x), h.delta_elem(y));
    let mut left = Elem::new();
    let mut right = Elem::new();
    for ((x1, x2), a) in dx.iter() {
        for ((y1, y2), b) in dy.iter() {
            let ab = a * b;
            let s12 = &values[*x1][*y1] * &ab;
            if !s12.is_zero() {
                left.add_scaled(&h.alg.mul_basis(*x2, *y2), &s12);
            }
            let s21 = &values[*x2][*y2] * &ab;
            if !s21.is_zero() {
                right.add_scaled(&h.alg.mul_basis(*x1, *y1), &s21);
            }
        }
    }
    (left, right)
}

/// The convolution inverse of `σ` in `(H ⊗ H)*`, when it exists.
pub fn convolution_inverse_form(
    h: &HopfFd,
    values: &[Vec<CycScalar>],
) -> Option<Vec<Vec<CycScalar>>> {
    let d = h.alg.dim();
    let order = h.order();
    let deltas: Vec<_> = (0..d).map(|i| h.delta_key(&i)).collect();
    // unknown (u, v) ↦ column u*d+v; equation (x, y) ↦ row x*d+y
    let per_row: Vec<Vec<(usize, CycScalar)>> = par::map_range(d * d, |row| {
        let (x, y) = (row / d, row % d);
        let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
        for ((x1, x2), a) in deltas[x].iter() {
            for ((y1, y2), b) in deltas[y].iter() {
                let v = &(a * b) * &values[*x1][*y1];
                if !v.is_zero() {
                    *acc.entry(x2 * d + y2)
                        .or_insert_with(|| CycScalar::zero(order)) += &v;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    });
    let mut cols: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); d * d];
    for (row, entries) in per_row.into_iter().enumerate() {
        for (col, v) in entries {
            cols[col].insert(row, v);
        }
    }
    let columns: Vec<SparseVec> = cols.into_iter().map(|c| c.into_iter().collect()).collect();
    let m = ExactMatrix::from_columns(order, d * d, &columns);
    let eps: Vec<CycScalar> = (0..d).map(|i| h.counit_key(&i)).collect();
    let rhs: SparseVec = (0..d * d)
        .map(|r| (r, &eps[r / d] * &eps[r % d]))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let sol = m.solve(&rhs)?;
    let mut inv = vec![vec![CycScalar::zero(order); d]; d];
    for (k, v) in sol {
        inv[k / d][k % d] = v;
    }
    // both sides: σ ∗ τ = τ ∗ σ = ε ⊗ ε
    let ok = (0..d * d).all(|row| {
        let (x, y) = (row / d, row % d);
        let (mut st, mut ts) = (CycScalar::zero(order), CycScalar::zero(order));
        for ((x1, x2), a) in deltas[x].iter() {
            for ((y1, y2), b) in deltas[y].iter() {
                let ab = a * b;
                st += &(&ab * &(&values[*x1][*y1] * &inv[*x2][*y2]));
                ts += &(&ab * &(&inv[*x1][*y1] * &values[*x2][*y2]));
            }
        }
        let want = &eps[x] * &eps[y];
        st == want && ts == want
    });
    ok.then_some(inv)
}

/// Normalization, the cocycle identity
/// `σ(x_(1), y_(1)) σ(x_(2) y_(2), z) = σ(y_(1), z_(1)) σ(x, y_(2) z_(2))`
/// on every basis triple, and convolution invertibility.
pub fn is_cocycle(h: &HopfFd, values: &[Vec<CycScalar>]) -> CocycleCheck {
    let d = h.alg.dim();
    let order = h.order();
    let eps: Vec<CycScalar> = (0..d).map(|i| h.counit_key(&i)).collect();
    let normalization_failure = (0..d)
        .find(|&i| values[0][i] != eps[i] || values[i][0] != eps[i])
        .map(|i| label(h, i));
    let deltas: Vec<_> = (0..d).map(|i| h.delta_key(&i)).collect();
    let failing_triple = par::find_first(d * d * d, |idx| {
        let (x, y, z) = (idx / (d * d), (idx / d) % d, idx % d);
        let mut lhs = CycScalar::zero(order);
        for ((x1, x2), a) in deltas[x].iter() {
            for ((y1, y2), b) in deltas[y].iter() {
                let s = &values[*x1][*y1] * &(a * b);
                if s.is_zero() {
                    continue;
                }
                let prod = h.alg.mul_basis(*x2, *y2);
                lhs += &(&s * &eval_form(values, &prod, &h.alg.basis_elem(z), order));
            }
        }
        let mut rhs = CycScalar::zero(order);
        for ((y1, y2), b) in deltas[y].iter() {
            for ((z1, z2), c) in deltas[z].iter() {
                let s = &values[*y1][*z1] * &(b * c);
                if s.is_zero() {
                    continue;
                }
                let prod = h.alg.mul_basis(*y2, *z2);
                rhs += &(&s * &eval_form(values, &h.alg.basis_elem(x), &prod, order));
            }
        }
        (lhs != rhs).then_some((x, y, z))
    })
    .map(|(_, t)| t);
    let invertible = convolution_inverse_form(h, values).is_some();
    CocycleCheck {
        normalized: normalization_failure.is_none(),
        normalization_failure,
        triples_checked: d * d * d,
        failing_triple,
        invertible,
    }
}

/// Scans basis pairs in lexicographic order for a failure of
/// `σ(x_(1), y_(1)) x_(2) y_(2) = σ(x_(2), y_(2)) x_(1) y_(1)`.
pub fn is_lazy(h: &HopfFd, values: &[Vec<CycScalar>]) -> Laziness {
    let d = h.alg.dim();
    let found = par::find_first(d * d, |idx| {
        let (x, y) = (idx / d, idx % d);
        let (left, right) = lazy_sides(h, values, &h.alg.basis_elem(x), &h.alg.basis_elem(y));
        (left != right).then_some((x, y, left, right))
    });
    match found {
        None => Laziness::Lazy,
        Some((_, (x, y, left, right))) => Laziness::NotLazy { x, y, left, right },
    }
}

impl Cocycle {
    /// Checks every cocycle axiom on the basis before accepting the values.
    pub fn new(hopf: Arc<HopfFd>, values: Vec<Vec<CycScalar>>) -> Result<Cocycle, CocycleError> {
        let d = hopf.alg.dim();
        if values.len() != d || values.iter().any(|r| r.len() != d) {
            return Err(CocycleError::Shape {
                rows: values.len(),
                cols: values.first().map_or(0, Vec::len),
                dim: d,
            });
        }
        let c = is_cocycle(&hopf, &values);
        if let Some(f) = c.normalization_failure {
            return Err(CocycleError::NotNormalized(f));
        }
        if let Some((x, y, z)) = c.failing_triple {
            return Err(CocycleError::IdentityFails(format!(
                "({}, {}, {})",
                label(&hopf, x),
                label(&hopf, y),
                label(&hopf, z)
            )));
        }
        let inverse_values =
            convolution_inverse_form(&hopf, &values).ok_or(CocycleError::NotInvertible)?;
        let lazy = is_lazy(&hopf, &values);
        Ok(Cocycle {
            hopf,
            values,
            inverse_values,
            lazy,
        })
    }

    /// `ε ⊗ ε`.
    pub fn trivial(hopf: Arc<HopfFd>) -> Cocycle {
        let d = hopf.alg.dim();
        let eps: Vec<CycScalar> = (0..d).map(|i| hopf.counit_key(&i)).collect();
        let values = (0..d)
            .map(|i| (0..d).map(|j| &eps[i] * &eps[j]).collect())
            .collect();
        Cocycle::new(hopf, values).expect("ε ⊗ ε is a cocycle")
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, a: &Elem, b: &Elem) -> CycScalar {
        eval_form(&self.values, a, b, self.hopf.order())
    }

    pub fn label(&self, i: usize) -> String {
        label(&self.hopf, i)
    }

    /// Dense exact grid with the presentation of the Hopf algebra as header.
    pub fn to_json(&self) -> serde_json::Value {
        let names = self.hopf.alg.names();
        serde_json::json!({
            "hopf": self.hopf.name,
            "presentation": self.hopf.relations.iter().map(|r| crate::ncalg::poly::display(r, &names)).collect::<Vec<_>>(),
            "basis": (0..self.dim()).map(|i| self.label(i)).collect::<Vec<_>>(),
            "values": self.values.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "lazy": self.lazy.is_lazy(),
        })
    }
}
