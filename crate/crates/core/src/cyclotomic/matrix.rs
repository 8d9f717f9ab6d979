use std::collections::BTreeMap;

use super::{eliminate, CycError, CycScalar, SparseVec};

/// Sparse exact matrix; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    order: u32,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), CycScalar>,
}

/// Result of [`ExactMatrix::rank_kernel`].
#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    /// Basis of `{v : M v = 0}`, each vector of length `cols`.
    pub kernel: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zero(order: u32, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            order,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(order: u32, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(order, n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one(order));
        }
        m
    }

    /// Builds a matrix from its columns (each a sparse vector of length `rows`).
    pub fn from_columns(order: u32, rows: usize, columns: &[SparseVec]) -> ExactMatrix {
        let mut m = ExactMatrix::zero(order, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn from_dense(order: u32, rows: &[Vec<CycScalar>]) -> ExactMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zero(order, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> CycScalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.order))
    }

    pub fn set(&mut self, r: usize, c: usize, x: CycScalar) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        assert_eq!(x.order(), self.order, "modulus mismatch");
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (&(r, c), x) in &self.entries {
            cols[c].push((r, x.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix {
            order: self.order,
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), x)| ((c, r), x.clone()))
                .collect(),
        }
    }

    /// Reorders rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> ExactMatrix {
        assert_eq!(perm.len(), self.rows);
        let mut inv = vec![0; self.rows];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        ExactMatrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), x)| ((inv[r], c), x.clone()))
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let dense: BTreeMap<usize, &CycScalar> = v.iter().map(|(c, x)| (*c, x)).collect();
        let mut out: BTreeMap<usize, CycScalar> = BTreeMap::new();
        for (&(r, c), x) in &self.entries {
            if let Some(y) = dense.get(&c) {
                let e = out.entry(r).or_insert_with(|| CycScalar::zero(self.order));
                *e += &(x * *y);
            }
        }
        out.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let cols = other.columns();
        let prod: Vec<SparseVec> = cols.iter().map(|c| self.mul_vec(c)).collect();
        ExactMatrix::from_columns(self.order, self.rows, &prod)
    }

    /// Exact rank and a kernel basis; every kernel vector is checked against `M`.
    pub fn rank_kernel(&self) -> RankKernel {
        let red = eliminate(self.order, self.rows, self.columns(), true);
        let kernel = red.kernel().to_vec();
        for k in &kernel {
            assert!(
                self.mul_vec(k).is_empty(),
                "kernel vector failed verification"
            );
        }
        assert_eq!(red.rank() + kernel.len(), self.cols);
        RankKernel {
            rank: red.rank(),
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        eliminate(self.order, self.rows, self.columns(), false).rank()
    }

    /// Some `x` with `M x = b`, or `None` if `b` is not in the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let red = eliminate(self.order, self.rows, self.columns(), true);
        let x = red.solve(b)?;
        debug_assert_eq!(&self.mul_vec(&x), b);
        Some(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix, CycError> {
        if self.rows != self.cols {
            return Err(CycError::DivisionByZero);
        }
        let red = eliminate(self.order, self.rows, self.columns(), true);
        if red.rank() < self.rows {
            return Err(CycError::DivisionByZero);
        }
        let one = CycScalar::one(self.order);
        let cols: Vec<SparseVec> = (0..self.rows)
            .map(|i| red.solve(&vec![(i, one.clone())]).expect("full rank"))
            .collect();
        Ok(ExactMatrix::from_columns(self.order, self.rows, &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(3, n)
    }

    #[test]
    fn identity_and_zero() {
        let rk = ExactMatrix::identity(3, 5).rank_kernel();
        assert_eq!(rk.rank, 5);
        assert!(rk.kernel.is_empty());
        let rk = ExactMatrix::zero(3, 3, 4).rank_kernel();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 4);
    }

    #[test]
    fn inverse_roundtrip() {
        let z = CycScalar::zeta(3);
        let m = ExactMatrix::from_dense(3, &[vec![s(1), z.clone()], vec![s(2), s(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3, 2));
        let sing = ExactMatrix::from_dense(3, &[vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(sing.inverse().is_err());
        assert_eq!(sing.rank_kernel().kernel, vec![vec![(0, s(-2)), (1, s(1))]]);
    }
}
