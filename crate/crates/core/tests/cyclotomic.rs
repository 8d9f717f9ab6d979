use bigal_core::cyclotomic::euler_phi;
use bigal_core::{CycScalar, ExactMatrix, Rat};
use proptest::prelude::*;

const ORDERS: [u32; 5] = [3, 4, 5, 9, 12];

fn rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn scalar_in(order: u32) -> impl Strategy<Value = CycScalar> {
    proptest::collection::vec(rat(), euler_phi(order))
        .prop_map(move |c| CycScalar::from_coeffs(order, &c))
}

fn scalars(k: usize) -> impl Strategy<Value = (u32, Vec<CycScalar>)> {
    proptest::sample::select(ORDERS.to_vec())
        .prop_flat_map(move |n| (Just(n), proptest::collection::vec(scalar_in(n), k)))
}

/// Image under zeta -> exp(2 pi i / N), as (re, im).
fn embed(x: &CycScalar) -> (f64, f64) {
    let n = x.order() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_big();
            let c = num_traits::ToPrimitive::to_f64(c.numer()).unwrap()
                / num_traits::ToPrimitive::to_f64(c.denom()).unwrap();
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
    (a.0 - b.0).abs() < 1e-9 * scale && (a.1 - b.1).abs() < 1e-9 * scale
}

proptest! {
    #[test]
    fn ring_axioms((_, v) in scalars(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(a * &CycScalar::one(a.order()), a.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible((n, v) in scalars(1)) {
        let a = &v[0];
        match a.inv() {
            Some(inv) => prop_assert!((a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        prop_assert!(CycScalar::zero(n).inv().is_none());
    }

    #[test]
    fn arithmetic_matches_complex_embedding((_, v) in scalars(2)) {
        let (a, b) = (&v[0], &v[1]);
        let (ea, eb) = (embed(a), embed(b));
        prop_assert!(close(embed(&(a + b)), (ea.0 + eb.0, ea.1 + eb.1)));
        prop_assert!(close(embed(&(a * b)), (ea.0 * eb.0 - ea.1 * eb.1, ea.0 * eb.1 + ea.1 * eb.0)));
    }

    #[test]
    fn powers_of_zeta_cycle(n in proptest::sample::select(ORDERS.to_vec()), k in -40i64..40) {
        let z = CycScalar::zeta(n);
        prop_assert_eq!(z.pow(k), CycScalar::zeta_pow(n, k));
        prop_assert_eq!(z.pow(k + n as i64), z.pow(k));
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        prop_assert!(close(embed(&z.pow(k)), (t.cos(), t.sin())));
    }

    #[test]
    fn text_forms_round_trip((n, v) in scalars(1)) {
        let a = &v[0];
        prop_assert_eq!(&CycScalar::parse(n, &a.to_string()).unwrap(), a);
        prop_assert_eq!(&CycScalar::from_coeff_strings(n, &a.to_coeff_strings()).unwrap(), a);
    }
}

const P: i64 = 1_000_000_007;

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b = b.rem_euclid(P);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c].rem_euclid(P) != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow(m[rank][c], P - 2);
        for r in 0..rows {
            if r != rank {
                let f = m[r][c].rem_euclid(P) * inv % P;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7, 0usize..4).prop_flat_map(|(r, c, k)| {
        // product of r x k and k x c factors keeps the rank low
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, k), r),
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), k),
            Just((r, c, k)),
        )
            .prop_map(|(u, v, (r, c, k))| {
                (0..r)
                    .map(|i| {
                        (0..c)
                            .map(|j| (0..k).map(|t| u[i][t] * v[t][j]).sum())
                            .collect()
                    })
                    .collect()
            })
    })
}

fn exact(m: &[Vec<i64>]) -> ExactMatrix {
    let rows: Vec<Vec<CycScalar>> = m
        .iter()
        .map(|r| r.iter().map(|&x| CycScalar::from_int(5, x)).collect())
        .collect();
    ExactMatrix::from_dense(5, &rows)
}

proptest! {
    #[test]
    fn rank_agrees_with_modular_elimination(m in int_matrix()) {
        prop_assert_eq!(exact(&m).rank(), rank_mod_p(m));
    }

    #[test]
    fn rank_is_invariant_under_row_permutation_and_transpose(
        (m, perm) in int_matrix().prop_flat_map(|m| {
            let rows = m.len();
            (Just(m), Just((0..rows).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let e = exact(&m);
        prop_assert_eq!(e.permute_rows(&perm).rank(), e.rank());
        prop_assert_eq!(e.transpose().rank(), e.rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in int_matrix()) {
        let e = exact(&m);
        let rk = e.rank_kernel();
        prop_assert_eq!(rk.rank + rk.kernel.len(), e.cols());
        for v in &rk.kernel {
            prop_assert!(e.mul_vec(v).iter().all(|(_, x)| x.is_zero()));
        }
    }
}

#[test]
fn cyclotomic_matrix_inverse() {
    let z = CycScalar::zeta(7);
    let one = CycScalar::one(7);
    let m = ExactMatrix::from_dense(
        7,
        &[vec![z.clone(), one.clone()], vec![one.clone(), z.pow(3)]],
    );
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), ExactMatrix::identity(7, 2));
}
