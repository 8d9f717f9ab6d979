use std::fmt;

use crate::cyclotomic::{CycError, CycScalar};

/// A square matrix over `Q(ζ_N)`, normally of determinant one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SLMatrix {
    order: u32,
    rows: Vec<Vec<CycScalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must be square and nonempty")]
    Shape,
    #[error("determinant is {0}, expected 1")]
    Det(String),
    #[error(transparent)]
    Scalar(#[from] CycError),
    #[error("invalid matrix JSON: {0}")]
    Json(String),
}

impl SLMatrix {
    /// Checks `det = 1`.
    pub fn new(order: u32, rows: Vec<Vec<CycScalar>>) -> Result<SLMatrix, MatrixError> {
        let m = SLMatrix::unchecked(order, rows)?;
        let d = m.det();
        if !d.is_one() {
            return Err(MatrixError::Det(d.to_string()));
        }
        Ok(m)
    }

    /// Any square matrix (used for mutation tests and intermediate values).
    pub fn unchecked(order: u32, rows: Vec<Vec<CycScalar>>) -> Result<SLMatrix, MatrixError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Shape);
        }
        Ok(SLMatrix { order, rows })
    }

    pub fn identity(order: u32, n: usize) -> SLMatrix {
        SLMatrix::scalar(order, n, CycScalar::one(order))
    }

    pub fn scalar(order: u32, n: usize, c: CycScalar) -> SLMatrix {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            c.clone()
                        } else {
                            CycScalar::zero(order)
                        }
                    })
                    .collect()
            })
            .collect();
        SLMatrix { order, rows }
    }

    pub fn diag(order: u32, d: &[CycScalar]) -> SLMatrix {
        let n = d.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            d[i].clone()
                        } else {
                            CycScalar::zero(order)
                        }
                    })
                    .collect()
            })
            .collect();
        SLMatrix { order, rows }
    }

    /// Parses a JSON array of rows of scalar literals, e.g. `[["8","0"],["0","1/8"]]`.
    pub fn from_json(order: u32, s: &str) -> Result<SLMatrix, MatrixError> {
        let raw: Vec<Vec<String>> =
            serde_json::from_str(s).map_err(|e| MatrixError::Json(e.to_string()))?;
        let rows = raw
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| CycScalar::parse(order, x))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SLMatrix::new(order, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.literals()).unwrap()
    }

    pub fn literals(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<CycScalar>] {
        &self.rows
    }

    pub fn det(&self) -> CycScalar {
        det(&self.rows, self.order)
    }

    pub fn mul(&self, other: &SLMatrix) -> SLMatrix {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = CycScalar::zero(self.order);
                        for k in 0..n {
                            acc += &(&self.rows[i][k] * &other.rows[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SLMatrix {
            order: self.order,
            rows,
        }
    }

    /// Inverse via the adjugate; panics if the determinant is zero.
    pub fn inverse(&self) -> SLMatrix {
        let n = self.n();
        let d = self.det().inv().expect("singular matrix");
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let minor: Vec<Vec<CycScalar>> = (0..n)
                            .filter(|&r| r != j)
                            .map(|r| {
                                (0..n)
                                    .filter(|&c| c != i)
                                    .map(|c| self.rows[r][c].clone())
                                    .collect()
                            })
                            .collect();
                        let c = det(&minor, self.order);
                        let c = if (i + j) % 2 == 1 { -c } else { c };
                        &c * &d
                    })
                    .collect()
            })
            .collect();
        SLMatrix {
            order: self.order,
            rows,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| i == j || self.rows[i][j].is_zero()))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r[i] == self.rows[0][0])
    }

    /// Componentwise `r_i^N g_ij` (row scaling by `r_i^N`).
    pub fn scale_rows(&self, factors: &[CycScalar]) -> SLMatrix {
        let rows = self
            .rows
            .iter()
            .zip(factors)
            .map(|(r, f)| r.iter().map(|x| x * f).collect())
            .collect();
        SLMatrix {
            order: self.order,
            rows,
        }
    }
}

fn det(rows: &[Vec<CycScalar>], order: u32) -> CycScalar {
    let n = rows.len();
    if n == 0 {
        return CycScalar::one(order);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = CycScalar::zero(order);
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CycScalar>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][c] * &det(&minor, order);
        if c % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

impl fmt::Display for SLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .literals()
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_inverse_and_json() {
        let g = SLMatrix::from_json(3, r#"[["2","1"],["3","2"]]"#).unwrap();
        assert!(g.det().is_one());
        assert_eq!(g.mul(&g.inverse()), SLMatrix::identity(3, 2));
        assert!(SLMatrix::from_json(3, r#"[["2","0"],["0","1"]]"#).is_err());
        let d = SLMatrix::from_json(3, r#"[["8","0"],["0","1/8"]]"#).unwrap();
        assert!(d.is_diagonal() && !d.is_scalar());
        assert_eq!(d.to_string(), "[[8, 0], [0, 1/8]]");
        let z = SLMatrix::scalar(3, 3, CycScalar::zeta(3));
        assert!(z.det().is_one() && z.is_scalar());
    }
}
