//! Smith normal form of small integer matrices with unimodular transforms.

/// `U · A · V = D` with `D` diagonal (entries `d_0, …, d_{r-1} > 0`, rest zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

fn sub_row(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    for c in 0..m[dst].len() {
        m[dst][c] = m[dst][c]
            .checked_sub(q.checked_mul(m[src][c]).expect("lattice entry overflow"))
            .expect("lattice entry overflow");
    }
}

fn sub_col(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    for row in m.iter_mut() {
        row[dst] = row[dst]
            .checked_sub(q.checked_mul(row[src]).expect("lattice entry overflow"))
            .expect("lattice entry overflow");
    }
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Diagonalizes the `k × m` matrix `a`. Divisibility of the diagonal is not enforced.
pub fn smith(a: &[Vec<i64>], m: usize) -> Smith {
    let k = a.len();
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(k);
    let mut v = identity(m);
    let mut diag = Vec::new();
    for t in 0..k.min(m) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Smith { u, v, diag };
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..k {
                let q = d[i][t] / p;
                if q != 0 {
                    sub_row(&mut d, i, t, q);
                    sub_row(&mut u, i, t, q);
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..m {
                let q = d[t][j] / p;
                if q != 0 {
                    sub_col(&mut d, j, t, q);
                    sub_col(&mut v, j, t, q);
                }
                clean &= d[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(d[t][t]);
    }
    Smith { u, v, diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonalizes_with_unimodular_transforms() {
        let a = vec![vec![3, 0], vec![0, 3], vec![1, 1], vec![2, 5]];
        let s = smith(&a, 2);
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < s.rank() { s.diag[i] } else { 0 };
                assert_eq!(x, want, "entry ({i},{j}) of {d:?}");
            }
        }
        assert_eq!(s.rank(), 2);
        assert_eq!(s.diag.iter().product::<i64>(), 3);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(smith(&[], 3).rank(), 0);
        assert_eq!(smith(&[vec![0, 0]], 2).rank(), 0);
    }
}
