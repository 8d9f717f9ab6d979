//! Exact Gaussian elimination over `Q(ζ_N)`.
//!
//! The reducer works on the *images* of a list of input vectors: each input
//! is reduced against the pivot rows found so far (echelon form keyed by
//! leading column) and either becomes a new pivot or, when it reduces to zero,
//! yields a kernel relation among the inputs. With tracking enabled every
//! pivot row remembers the input combination it came from, which gives
//! preimages for free.
//!
//! Rows start sparse and switch to dense storage once more than half of the
//! columns are filled. Inputs are processed in fixed-size chunks; within a
//! chunk the reduction against the existing pivots runs in parallel. The
//! fully reduced form of a vector against a pivot set is unique, so results
//! do not depend on scheduling.

use std::collections::BTreeMap;

use super::{CycScalar, SparseVec};
use crate::par;

const CHUNK: usize = 32;

#[derive(Clone, Debug)]
enum Row {
    Sparse(Vec<(usize, CycScalar)>),
    Dense(Vec<Option<CycScalar>>, usize),
}

impl Row {
    fn from_sparse(v: SparseVec, width: usize) -> Row {
        let mut r = Row::Sparse(v);
        r.maybe_densify(width);
        r
    }

    fn is_zero(&self) -> bool {
        match self {
            Row::Sparse(v) => v.is_empty(),
            Row::Dense(_, nnz) => *nnz == 0,
        }
    }

    fn nnz(&self) -> usize {
        match self {
            Row::Sparse(v) => v.len(),
            Row::Dense(_, nnz) => *nnz,
        }
    }

    fn maybe_densify(&mut self, width: usize) {
        if let Row::Sparse(v) = self {
            if width >= 16 && v.len() * 2 > width {
                let mut d = vec![None; width];
                let nnz = v.len();
                for (c, x) in v.drain(..) {
                    d[c] = Some(x);
                }
                *self = Row::Dense(d, nnz);
            }
        }
    }

    fn leading(&self) -> Option<(usize, &CycScalar)> {
        match self {
            Row::Sparse(v) => v.first().map(|(c, x)| (*c, x)),
            Row::Dense(d, nnz) => {
                if *nnz == 0 {
                    return None;
                }
                d.iter()
                    .enumerate()
                    .find_map(|(c, x)| x.as_ref().map(|x| (c, x)))
            }
        }
    }

    /// First nonzero entry at column `>= from`.
    fn next_from(&self, from: usize) -> Option<(usize, CycScalar)> {
        match self {
            Row::Sparse(v) => {
                let i = v.partition_point(|(c, _)| *c < from);
                v.get(i).map(|(c, x)| (*c, x.clone()))
            }
            Row::Dense(d, _) => d
                .iter()
                .enumerate()
                .skip(from)
                .find_map(|(c, x)| x.as_ref().map(|x| (c, x.clone()))),
        }
    }

    fn scale(&mut self, s: &CycScalar) {
        match self {
            Row::Sparse(v) => v.iter_mut().for_each(|(_, x)| *x = &*x * s),
            Row::Dense(d, _) => d.iter_mut().flatten().for_each(|x| *x = &*x * s),
        }
    }

    /// `self -= c · other`
    fn sub_scaled(&mut self, c: &CycScalar, other: &Row, width: usize) {
        match (&mut *self, other) {
            (Row::Dense(d, nnz), _) => {
                for (col, y) in other.entries() {
                    let delta = c * y;
                    match &mut d[col] {
                        Some(x) => {
                            *x -= &delta;
                            if x.is_zero() {
                                d[col] = None;
                                *nnz -= 1;
                            }
                        }
                        slot @ None => {
                            *slot = Some(-delta);
                            *nnz += 1;
                        }
                    }
                }
            }
            (Row::Sparse(a), Row::Sparse(b)) => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                    let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                    if ca < cb {
                        out.push(std::mem::replace(
                            &mut a[i],
                            (0, CycScalar::zero(c.order())),
                        ));
                        i += 1;
                    } else if cb < ca {
                        out.push((cb, -(c * &b[j].1)));
                        j += 1;
                    } else {
                        let v = &a[i].1 - &(c * &b[j].1);
                        if !v.is_zero() {
                            out.push((ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                *a = out;
                self.maybe_densify(width);
            }
            (Row::Sparse(_), Row::Dense(..)) => {
                let Row::Sparse(a) = std::mem::replace(self, Row::Sparse(Vec::new())) else {
                    unreachable!()
                };
                let mut d = vec![None; width];
                let nnz = a.len();
                for (col, x) in a {
                    d[col] = Some(x);
                }
                *self = Row::Dense(d, nnz);
                self.sub_scaled(c, other, width);
            }
        }
    }

    fn entries(&self) -> Box<dyn Iterator<Item = (usize, &CycScalar)> + '_> {
        match self {
            Row::Sparse(v) => Box::new(v.iter().map(|(c, x)| (*c, x))),
            Row::Dense(d, _) => Box::new(
                d.iter()
                    .enumerate()
                    .filter_map(|(c, x)| x.as_ref().map(|x| (c, x))),
            ),
        }
    }

    fn into_sparse(self) -> SparseVec {
        match self {
            Row::Sparse(v) => v,
            Row::Dense(d, _) => d
                .into_iter()
                .enumerate()
                .filter_map(|(c, x)| x.map(|x| (c, x)))
                .collect(),
        }
    }
}

/// Incremental exact row reducer.
#[derive(Clone, Debug)]
pub struct Reducer {
    order: u32,
    width: usize,
    track: bool,
    inputs: usize,
    pivots: BTreeMap<usize, usize>,
    rows: Vec<Row>,
    tracks: Vec<Row>,
    kernel: Vec<SparseVec>,
}

impl Reducer {
    pub fn new(order: u32, width: usize, track: bool) -> Reducer {
        Reducer {
            order,
            width,
            track,
            inputs: 0,
            pivots: BTreeMap::new(),
            rows: Vec::new(),
            tracks: Vec::new(),
            kernel: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Relations `Σ c_i · input_i = 0` found so far (only with tracking).
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    fn reduce(&self, v: &mut Row, mut t: Option<&mut Row>) {
        let mut from = 0;
        while let Some((c, coef)) = v.next_from(from) {
            // jump to the next pivot column at or after c
            let Some((&pc, &pi)) = self.pivots.range(c..).next() else {
                break;
            };
            if pc != c {
                from = pc;
                continue;
            }
            v.sub_scaled(&coef, &self.rows[pi], self.width);
            if let Some(t) = t.as_deref_mut() {
                t.sub_scaled(&coef, &self.tracks[pi], self.inputs.max(1));
            }
            from = c + 1;
        }
    }

    fn fresh_track(&self, index: usize) -> Row {
        Row::Sparse(vec![(index, CycScalar::one(self.order))])
    }

    fn absorb(&mut self, mut v: Row, mut t: Row) {
        self.reduce(&mut v, self.track.then_some(&mut t));
        match v.leading() {
            None => {
                if self.track {
                    self.kernel.push(t.into_sparse());
                }
            }
            Some((c, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                v.scale(&inv);
                if self.track {
                    t.scale(&inv);
                }
                self.pivots.insert(c, self.rows.len());
                self.rows.push(v);
                self.tracks.push(t);
            }
        }
    }

    /// Feeds a batch of input vectors (sorted sparse, coordinates `< width`).
    pub fn extend(&mut self, vectors: Vec<SparseVec>) {
        let mut it = vectors.into_iter().peekable();
        while it.peek().is_some() {
            let chunk: Vec<SparseVec> = it.by_ref().take(CHUNK).collect();
            let base = self.inputs;
            let total = base + chunk.len();
            let this = &*self;
            let pre: Vec<(Row, Row)> = par::map_indexed(chunk, |i, v| {
                let mut row = Row::from_sparse(v, this.width);
                let mut t = this.fresh_track(base + i);
                this.reduce(&mut row, this.track.then_some(&mut t));
                (row, t)
            });
            self.inputs = total;
            for (row, t) in pre {
                self.absorb(row, t);
            }
        }
    }

    pub fn push(&mut self, v: SparseVec) {
        self.extend(vec![v]);
    }

    /// Reduces `target` against the pivots; returns the input combination
    /// mapping onto it, or `None` if it is outside the span.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracking reducer");
        let mut v = Row::from_sparse(target.clone(), self.width);
        let mut acc = Row::Sparse(Vec::new());
        let mut from = 0;
        while let Some((c, coef)) = v.next_from(from) {
            let pi = *self.pivots.get(&c)?;
            v.sub_scaled(&coef, &self.rows[pi], self.width);
            acc.sub_scaled(&(-&coef), &self.tracks[pi], self.inputs.max(1));
            from = c + 1;
        }
        if v.is_zero() {
            Some(acc.into_sparse())
        } else {
            None
        }
    }

    /// Whether `target` lies in the span of the inputs.
    pub fn contains(&self, target: &SparseVec) -> bool {
        let mut v = Row::from_sparse(target.clone(), self.width);
        self.reduce(&mut v, None);
        v.is_zero()
    }

    pub fn density(&self) -> f64 {
        if self.rows.is_empty() || self.width == 0 {
            return 0.0;
        }
        let nnz: usize = self.rows.iter().map(Row::nnz).sum();
        nnz as f64 / (self.rows.len() * self.width) as f64
    }
}

/// Rank and kernel relations of a family of vectors in a `width`-dimensional space.
pub fn eliminate(order: u32, width: usize, vectors: Vec<SparseVec>, track: bool) -> Reducer {
    let mut r = Reducer::new(order, width, track);
    r.extend(vectors);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(3, n)
    }

    #[test]
    fn rank_and_kernel_small() {
        // v2 = v0 + v1
        let v0 = vec![(0, s(1)), (2, s(1))];
        let v1 = vec![(1, s(2))];
        let v2 = vec![(0, s(1)), (1, s(2)), (2, s(1))];
        let r = eliminate(3, 3, vec![v0, v1, v2], true);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.kernel().len(), 1);
        let k = &r.kernel()[0];
        assert_eq!(k, &vec![(0, s(-1)), (1, s(-1)), (2, s(1))]);
    }

    #[test]
    fn solve_gives_preimage() {
        let v0 = vec![(0, s(1)), (1, s(1))];
        let v1 = vec![(1, s(1))];
        let r = eliminate(3, 2, vec![v0, v1], true);
        let x = r.solve(&vec![(0, s(2))]).unwrap();
        assert_eq!(x, vec![(0, s(2)), (1, s(-2))]);
        assert!(r.solve(&vec![(0, s(1))]).is_some());
        let r1 = eliminate(3, 2, vec![vec![(1, s(1))]], true);
        assert!(r1.solve(&vec![(0, s(1))]).is_none());
        assert!(!r1.contains(&vec![(0, s(1))]));
    }

    #[test]
    fn dense_rows_agree_with_sparse() {
        // 20x20 upper-triangular ones: full rank; plus a repeated row
        let mut vs: Vec<SparseVec> = (0..20)
            .map(|i| (i..20).map(|c| (c, s(1))).collect())
            .collect();
        vs.push((0..20).map(|c| (c, s(1))).collect());
        let r = eliminate(3, 20, vs, true);
        assert_eq!(r.rank(), 20);
        assert_eq!(r.kernel(), &[vec![(0, s(-1)), (20, s(1))]]);
    }
}
