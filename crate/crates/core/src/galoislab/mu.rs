//! The Miyashita–Ulbrich action `t · h = h^[1] t h^[2]` on a right Galois object.

use super::certify::{sandwich, GaloisCertificate};
use super::{CoactedAlgebra, Side};
use crate::hopfcore::AxiomCheck;
use crate::ncalg::{Elem, WordBasis};
use crate::par;

/// `table[t][h] = e_t · e_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuAction {
    pub table: Vec<Vec<Elem>>,
}

pub fn mu_action<T: CoactedAlgebra + ?Sized>(t: &T, cert: &GaloisCertificate) -> MuAction {
    assert_eq!(
        cert.side,
        Side::Right,
        "the action needs a right certificate"
    );
    let dh = cert.dim_h;
    let table = par::map_range(t.dim(), |a| {
        let e = t.basis_elem(a);
        (0..dh)
            .map(|h| sandwich(t, &cert.inverse_table[h], &e))
            .collect()
    });
    MuAction { table }
}

impl MuAction {
    pub fn act_basis(&self, t: &Elem, h: usize) -> Elem {
        t.map_linear(|a| self.table[*a][h].clone())
    }

    pub fn act(&self, t: &Elem, h: &Elem) -> Elem {
        let mut out = Elem::new();
        for (k, c) in h.iter() {
            out.add_scaled(&self.act_basis(t, *k), c);
        }
        out
    }

    /// Unitality, `(t·h)·h' = t·(hh')`, `(tt')·h = (t·h_(1))(t'·h_(2))` and
    /// `1·h = ε(h)1`, each on all basis elements.
    pub fn verify_module_algebra<T: CoactedAlgebra + ?Sized>(&self, t: &T) -> Vec<AxiomCheck> {
        let hopf = t.hopf(Side::Right).expect("no right coaction");
        let (dt, dh) = (t.dim(), hopf.alg.dim());
        let hnames = hopf.alg.names();
        let tw = |a: usize| t.basis_label(a);
        let hw = |h: usize| hopf.alg.word(h).display_with(&hnames);
        let mut out = Vec::new();

        let bad: Vec<String> = (0..dt)
            .filter(|&a| self.table[a][0] != t.basis_elem(a))
            .map(tw)
            .collect();
        out.push(check("mu-unit", dt, bad));

        let bad: Vec<String> = par::map_range(dt * dh, |idx| {
            let (a, h) = (idx / dh, idx % dh);
            let lhs = &self.table[a][h];
            (0..dh)
                .find(|&k| {
                    self.act_basis(lhs, k) != self.act(&t.basis_elem(a), &hopf.alg.mul_basis(h, k))
                })
                .map(|k| format!("({}, {}, {})", tw(a), hw(h), hw(k)))
        })
        .into_iter()
        .flatten()
        .collect();
        out.push(check("mu-associative", dt * dh * dh, bad));

        let bad: Vec<String> = par::map_range(dt * dt, |idx| {
            let (a, b) = (idx / dt, idx % dt);
            let ab = t.mul_basis(a, b);
            (0..dh)
                .find(|&h| {
                    let mut rhs = Elem::new();
                    for ((h1, h2), c) in hopf.delta_key(&h).iter() {
                        rhs.add_scaled(&t.mul(&self.table[a][*h1], &self.table[b][*h2]), c);
                    }
                    self.act_basis(&ab, h) != rhs
                })
                .map(|h| format!("({}, {}, {})", tw(a), tw(b), hw(h)))
        })
        .into_iter()
        .flatten()
        .collect();
        out.push(check("mu-multiplicative", dt * dt * dh, bad));

        let bad: Vec<String> = (0..dh)
            .filter(|&h| self.act_basis(&t.unit(), h) != t.unit().scaled(&hopf.counit_key(&h)))
            .map(hw)
            .collect();
        out.push(check("mu-unit-action", dh, bad));
        out
    }
}

pub(crate) fn check(axiom: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.into(),
        passed: failures.is_empty(),
        checked,
        failures,
    }
}
