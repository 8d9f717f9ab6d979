//! FRT presentation of the quantum coordinate algebra `O(SL_q(n))` on the
//! generators `x_ij` (row-major order) and its small quotients.

use crate::cyclotomic::CycScalar;
use crate::ncalg::{poly, NcPoly, Word};

/// Generator index of `x_ij` (0-based).
pub fn gen_index(n: usize, i: usize, j: usize) -> u8 {
    (i * n + j) as u8
}

pub fn gen_names(n: usize) -> Vec<String> {
    if n == 2 {
        return ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push(format!("x{i}{j}"));
        }
    }
    out
}

/// The quadratic FRT relations (one per unordered pair of generators).
pub fn quadratic_relations(n: usize, q: &CycScalar) -> Vec<NcPoly> {
    let one = CycScalar::one(q.order());
    let q = q.clone();
    let qq = &q - &q.inv().unwrap();
    let x = |i: usize, j: usize| gen_index(n, i, j);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if (i, j) >= (k, l) {
                        continue;
                    }
                    let mut r = NcPoly::new();
                    if i == k {
                        // x_ij x_il = q x_il x_ij
                        r.add_term_owned(Word::from_slice(&[x(i, j), x(k, l)]), one.clone());
                        r.add_term_owned(Word::from_slice(&[x(k, l), x(i, j)]), -&q);
                    } else if j == l {
                        // x_ij x_kj = q x_kj x_ij
                        r.add_term_owned(Word::from_slice(&[x(i, j), x(k, l)]), one.clone());
                        r.add_term_owned(Word::from_slice(&[x(k, l), x(i, j)]), -&q);
                    } else if j > l {
                        // x_ij x_kl = x_kl x_ij on anti-diagonal pairs
                        r.add_term_owned(Word::from_slice(&[x(i, j), x(k, l)]), one.clone());
                        r.add_term_owned(Word::from_slice(&[x(k, l), x(i, j)]), -&one);
                    } else {
                        // x_ij x_kl - x_kl x_ij = (q - q^-1) x_il x_kj
                        r.add_term_owned(Word::from_slice(&[x(i, j), x(k, l)]), one.clone());
                        r.add_term_owned(Word::from_slice(&[x(k, l), x(i, j)]), -&one);
                        r.add_term_owned(Word::from_slice(&[x(i, l), x(k, j)]), -&qq);
                    }
                    rels.push(r);
                }
            }
        }
    }
    rels
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                c += 1;
            }
        }
    }
    c
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Quantum minor `Σ_σ (-q)^{ℓ(σ)} x_{r_1 c_σ(1)} ⋯ x_{r_k c_σ(k)}` on sorted rows and columns.
pub fn quantum_minor(n: usize, q: &CycScalar, rows: &[usize], cols: &[usize]) -> NcPoly {
    assert_eq!(rows.len(), cols.len());
    let order = q.order();
    let mq = -q;
    let mut out = NcPoly::new();
    for p in permutations(rows.len()) {
        let letters: Vec<u8> = rows
            .iter()
            .zip(&p)
            .map(|(&r, &s)| gen_index(n, r, cols[s]))
            .collect();
        out.add_term_owned(Word::from_slice(&letters), mq.pow(inversions(&p) as i64));
    }
    if rows.is_empty() {
        out = poly::constant(CycScalar::one(order));
    }
    out
}

pub fn quantum_det(n: usize, q: &CycScalar) -> NcPoly {
    let all: Vec<usize> = (0..n).collect();
    quantum_minor(n, q, &all, &all)
}

/// Defining relations of `O(SL_q(n))`: quadratic FRT relations and `det_q = 1`.
/// With `q = 1` these present the commutative algebra `O(SL(n))`.
pub fn o_slq_relations(n: usize, q: &CycScalar) -> Vec<NcPoly> {
    let mut rels = quadratic_relations(n, q);
    let mut det = quantum_det(n, q);
    det.add_term_owned(Word::empty(), -CycScalar::one(q.order()));
    rels.push(det);
    rels
}

/// `x_ij^N - c_ij` for every generator.
pub fn power_relations(
    n: usize,
    order: u32,
    big_n: usize,
    values: &[Vec<CycScalar>],
) -> Vec<NcPoly> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut r = NcPoly::single(Word::pow(gen_index(n, i, j), big_n), CycScalar::one(order));
            r.add_term_owned(Word::empty(), -&values[i][j]);
            out.push(r);
        }
    }
    out
}

/// `S(x_ij) = (-q)^{i-j} · (quantum minor without row j and column i)`.
pub fn antipode_on_gens(n: usize, q: &CycScalar) -> Vec<NcPoly> {
    let mq = -q;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            out.push(quantum_minor(n, q, &rows, &cols).scaled(&mq.pow(i as i64 - j as i64)));
        }
    }
    out
}

/// `Δ(x_ij) = Σ_k x_ik ⊗ x_kj` as pairs of words.
pub fn coproduct_on_gens(n: usize) -> Vec<Vec<(u8, u8)>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(
                (0..n)
                    .map(|k| (gen_index(n, i, k), gen_index(n, k, j)))
                    .collect(),
            );
        }
    }
    out
}
