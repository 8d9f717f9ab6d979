//! Bicolinear algebra maps between bi-Galois objects, certified on the basis:
//! the group-law map `T_gh → T_g □ T_h` and the twisting map `T_g' → ^f T_g`.

use std::sync::Arc;

use serde::Serialize;

use super::mu::check;
use super::{CoactedAlgebra, ComoduleAlgebra, Cotensor, MuAction, Side};
use crate::cyclotomic::{eliminate, CycScalar, LinComb};
use crate::hopfcore::{
    AutomorphismError, AxiomCheck, Character, HopfAutomorphism, HopfFd, Tensor2,
};
use crate::ncalg::{eval_poly, Elem, NcPoly, Tensor, WordBasis};
use crate::par;
use crate::qbuilders::{BuildError, MatrixError, QContext, SLMatrix};

/// A linear map from a presented comodule algebra to a coacted algebra, given on
/// generators, with the outcome of each certification step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGaloisWitness {
    pub source: String,
    pub target: String,
    pub on_gens: Vec<Elem>,
    /// Images of the source basis.
    pub images: Vec<Elem>,
    pub checks: Vec<AxiomCheck>,
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    source: &'a str,
    target: &'a str,
    on_gens: Vec<Vec<(usize, String)>>,
    checks: &'a [AxiomCheck],
}

/// Evaluates a noncommutative polynomial on generator images in `z`.
pub fn eval_in<Z: CoactedAlgebra + ?Sized>(z: &Z, p: &NcPoly, images: &[Elem]) -> Elem {
    let mut out = Elem::new();
    for (w, c) in p.iter() {
        let mut acc = z.unit();
        for &g in w.letters() {
            acc = z.mul(&acc, &images[g as usize]);
        }
        out.add_scaled(&acc, c);
    }
    out
}

fn hopf_matches(a: Option<&Arc<HopfFd>>, b: Option<&Arc<HopfFd>>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x.name == y.name,
        (None, None) => true,
        _ => false,
    }
}

impl BiGaloisWitness {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == name)
    }

    /// Runs the algebra-map, left-colinear, right-colinear and bijective checks.
    pub fn certify<Z: CoactedAlgebra + ?Sized>(
        source: &ComoduleAlgebra,
        target: &Z,
        on_gens: Vec<Elem>,
    ) -> BiGaloisWitness {
        let names = source.alg.names();
        let ds = source.dim();
        let mut images: Vec<Elem> = Vec::with_capacity(ds);
        for i in 0..ds {
            let img = match source.alg.split_last(&i) {
                None => target.unit(),
                Some((p, g)) => target.mul(&images[p], &on_gens[g as usize]),
            };
            images.push(img);
        }
        let apply = |e: &Elem| e.map_linear(|i| images[*i].clone());
        let mut checks = Vec::new();

        let mut bad: Vec<String> = source
            .relations
            .iter()
            .filter(|r| !eval_in(target, r, &on_gens).is_zero())
            .map(|r| crate::ncalg::poly::display(r, &names))
            .collect();
        let pairs: Vec<String> = par::map_range(ds * ds, |idx| {
            let (a, b) = (idx / ds, idx % ds);
            (apply(&source.alg.mul_basis(a, b)) != target.mul(&images[a], &images[b]))
                .then(|| format!("({}, {})", source.basis_label(a), source.basis_label(b)))
        })
        .into_iter()
        .flatten()
        .collect();
        bad.extend(pairs);
        checks.push(check("algebra-map", source.relations.len() + ds * ds, bad));

        for side in [Side::Left, Side::Right] {
            let tag = match side {
                Side::Left => "left-colinear",
                Side::Right => "right-colinear",
            };
            if source.hopf(side).is_none() && target.hopf(side).is_none() {
                continue;
            }
            if !hopf_matches(source.hopf(side), target.hopf(side)) {
                checks.push(check(tag, 0, vec!["coacting Hopf algebras differ".into()]));
                continue;
            }
            let bad: Vec<String> = par::map_range(ds, |a| {
                let lhs = target.coact(side, &images[a]);
                let mut rhs: Tensor2<usize> = LinComb::new();
                for ((x, y), c) in source.coact_key(side, a).iter() {
                    let part: Tensor2<usize> = match side {
                        Side::Left => images[*y].map_keys(|m| (*x, *m)),
                        Side::Right => images[*x].map_keys(|m| (*m, *y)),
                    };
                    rhs.add_scaled(&part, c);
                }
                (lhs != rhs).then(|| source.basis_label(a))
            })
            .into_iter()
            .flatten()
            .collect();
            checks.push(check(tag, ds, bad));
        }

        let cols = images
            .iter()
            .map(|e| e.iter().map(|(k, c)| (*k, c.clone())).collect())
            .collect();
        let rank = eliminate(source.order(), target.dim(), cols, false).rank();
        let bad = if rank == ds && ds == target.dim() {
            vec![]
        } else {
            vec![format!("rank {rank}, dimensions {ds} → {}", target.dim())]
        };
        checks.push(check("bijective", ds, bad));
        BiGaloisWitness {
            source: source.name.clone(),
            target: target.label(),
            on_gens,
            images,
            checks,
        }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        e.map_linear(|i| self.images[*i].clone())
    }

    /// `Ψ(t · h) = Ψ(t) · h` for the right Miyashita–Ulbrich actions on all basis pairs.
    pub fn mu_equivariance(&self, source_mu: &MuAction, target_mu: &MuAction) -> AxiomCheck {
        let ds = self.images.len();
        let dh = source_mu.table.first().map_or(0, Vec::len);
        let bad: Vec<String> = par::map_range(ds * dh, |idx| {
            let (a, h) = (idx / dh, idx % dh);
            (self.apply(&source_mu.table[a][h]) != target_mu.act_basis(&self.images[a], h))
                .then(|| format!("({a}, {h})"))
        })
        .into_iter()
        .flatten()
        .collect();
        check("mu-equivariant", ds * dh, bad)
    }

    /// `φ ∘ Ψ⁻¹` for a character `φ` of the source, with checks that it is a
    /// character of the target and satisfies `χ(t_(0)) t_(1) = t_(-1) χ(t_(0))`.
    pub fn transfer_character<Z: CoactedAlgebra + ?Sized>(
        &self,
        source: &ComoduleAlgebra,
        target: &Z,
        phi: &Character,
    ) -> (Vec<CycScalar>, Vec<AxiomCheck>) {
        let order = source.order();
        let dt = target.dim();
        let cols = self
            .images
            .iter()
            .map(|e| e.iter().map(|(k, c)| (*k, c.clone())).collect())
            .collect();
        let red = eliminate(order, dt, cols, true);
        let values: Vec<CycScalar> = (0..dt)
            .map(|k| {
                let pre = red
                    .solve(&vec![(k, CycScalar::one(order))])
                    .expect("witness is bijective");
                let mut v = CycScalar::zero(order);
                for (i, c) in pre {
                    v += &(&c * &phi.eval_elem(&source.alg, &source.alg.basis_elem(i)));
                }
                v
            })
            .collect();
        let chi = |e: &Elem| -> CycScalar {
            let mut v = CycScalar::zero(order);
            for (k, c) in e.iter() {
                v += &(c * &values[*k]);
            }
            v
        };
        let mut checks = Vec::new();
        let bad: Vec<String> = (0..dt * dt)
            .filter(|idx| {
                let (a, b) = (idx / dt, idx % dt);
                chi(&target.mul_basis(a, b)) != &values[a] * &values[b]
            })
            .map(|idx| {
                format!(
                    "({}, {})",
                    target.basis_label(idx / dt),
                    target.basis_label(idx % dt)
                )
            })
            .collect();
        let mut bad = bad;
        if !chi(&target.unit()).is_one() {
            bad.push("unit".into());
        }
        checks.push(check("character", dt * dt + 1, bad));
        let bad: Vec<String> = (0..dt)
            .filter(|&k| {
                let mut right = Elem::new();
                for ((t, h), c) in target.coact_key(Side::Right, k).iter() {
                    right.add_term_owned(*h, c * &values[*t]);
                }
                let mut left = Elem::new();
                for ((h, t), c) in target.coact_key(Side::Left, k).iter() {
                    left.add_term_owned(*h, c * &values[*t]);
                }
                right != left
            })
            .map(|k| target.basis_label(k))
            .collect();
        checks.push(check("bi-compatible", dt, bad));
        (values, checks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let on_gens = self
            .on_gens
            .iter()
            .map(|e| e.iter().map(|(k, c)| (*k, c.to_string())).collect())
            .collect();
        serde_json::to_value(WitnessJson {
            source: &self.source,
            target: &self.target,
            on_gens,
            checks: &self.checks,
        })
        .expect("witness serializes")
    }
}

fn matrix_size(t: &ComoduleAlgebra) -> usize {
    let g = t.alg.ngens();
    let n = (g as f64).sqrt().round() as usize;
    assert_eq!(n * n, g, "expected matrix generators");
    n
}

/// The group-law map together with the cotensor product it lands in.
#[derive(Debug)]
pub struct GroupLawWitness {
    pub cotensor: Cotensor,
    pub witness: BiGaloisWitness,
}

impl GroupLawWitness {
    pub fn passed(&self) -> bool {
        self.witness.passed()
    }
}

/// `x_ij ↦ Σ_k x̄_ik ⊗ x̄_kj` from `T_gh` into `T_g □ T_h`. Well-definedness is
/// checked in `T_g ⊗ T_h`, then the images are located in the cotensor product.
pub fn group_law_witness(
    t_gh: &ComoduleAlgebra,
    t_g: &ComoduleAlgebra,
    t_h: &ComoduleAlgebra,
) -> Result<GroupLawWitness, super::CotensorError> {
    let n = matrix_size(t_gh);
    let cot = Cotensor::build(t_g, t_h)?;
    let ambient = group_law_images(t_g, t_h, n);
    let tensor = Tensor::new(&*t_g.alg, &*t_h.alg);
    let names = t_gh.alg.names();
    let bad: Vec<String> = t_gh
        .relations
        .iter()
        .filter(|r| !eval_poly(&tensor, r, &ambient).is_zero())
        .map(|r| crate::ncalg::poly::display(r, &names))
        .collect();
    let well_defined = check("well-defined", t_gh.relations.len(), bad);

    let located: Vec<Option<Elem>> = ambient.iter().map(|x| cot.coordinates(x)).collect();
    let missing: Vec<String> = located
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_none())
        .map(|(g, _)| names[g].clone())
        .collect();
    let lands = check("lands-in-cotensor", ambient.len(), missing);
    let mut witness = if lands.passed {
        let on_gens = located.into_iter().map(Option::unwrap).collect();
        BiGaloisWitness::certify(t_gh, &cot, on_gens)
    } else {
        BiGaloisWitness {
            source: t_gh.name.clone(),
            target: cot.label(),
            on_gens: vec![],
            images: vec![],
            checks: vec![],
        }
    };
    witness.checks.insert(0, lands);
    witness.checks.insert(0, well_defined);
    Ok(GroupLawWitness {
        cotensor: cot,
        witness,
    })
}

/// `Σ_k x̄_ik ⊗ x̄_kj` in `T_g ⊗ T_h`, one per generator.
pub fn group_law_images(
    t_g: &ComoduleAlgebra,
    t_h: &ComoduleAlgebra,
    n: usize,
) -> Vec<Tensor2<usize>> {
    let tensor = Tensor::new(&*t_g.alg, &*t_h.alg);
    (0..n * n)
        .map(|g| {
            let (i, j) = (g / n, g % n);
            let mut acc = LinComb::new();
            for k in 0..n {
                acc.add_assign(&tensor.pure(
                    &t_g.alg.gen((i * n + k) as u8),
                    &t_h.alg.gen((k * n + j) as u8),
                ));
            }
            acc
        })
        .collect()
}

/// `^f T`: the left coaction composed with `f ⊗ id`.
pub fn twist_left(t: &ComoduleAlgebra, f: &HopfAutomorphism) -> ComoduleAlgebra {
    let left = t.left.as_ref().expect("twisting needs a left coaction");
    let right = t.right.as_ref().expect("twisting keeps the right coaction");
    let fm = f.linear_map(&left.hopf);
    let on_gens = left
        .on_gens
        .iter()
        .map(|x| {
            let mut out = LinComb::new();
            for ((h, y), c) in x.iter() {
                for (h2, v) in fm.images[*h].iter() {
                    out.add_term_owned((*h2, *y), c * v);
                }
            }
            out
        })
        .collect();
    ComoduleAlgebra::new(format!("^f {}", t.name), t.alg.clone(), t.relations.clone())
        .with_coaction(Side::Right, right.hopf.clone(), right.on_gens.clone())
        .with_coaction(Side::Left, left.hopf.clone(), on_gens)
}

#[derive(Debug, thiserror::Error)]
pub enum TwistError {
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The twisting lemma data: `g' = diag(r_i^N) g`, the automorphism `f_r`,
/// and the witness `x_ij ↦ r_i x_ij` from `T_g'` to `^(f_r) T_g`.
#[derive(Debug)]
pub struct TwistWitness {
    pub g_prime: SLMatrix,
    pub f_r: HopfAutomorphism,
    pub automorphism_checks: Vec<AxiomCheck>,
    pub t_g_prime: ComoduleAlgebra,
    pub twisted: ComoduleAlgebra,
    pub witness: BiGaloisWitness,
}

impl TwistWitness {
    pub fn passed(&self) -> bool {
        self.witness.passed() && self.automorphism_checks.iter().all(|c| c.passed)
    }
}

pub fn lemma_trans_witness(
    ctx: &QContext,
    h: &Arc<HopfFd>,
    g: &SLMatrix,
    r: &[CycScalar],
) -> Result<TwistWitness, TwistError> {
    let n = ctx.n;
    let f_r = HopfAutomorphism::f_r(h, n, r)?;
    let automorphism_checks = f_r.certify(h);
    let rows: Vec<Vec<CycScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &r[i].pow(ctx.big_n as i64) * g.get(i, j))
                .collect()
        })
        .collect();
    let g_prime = SLMatrix::new(ctx.order(), rows)?;
    let t_g = ctx.build_t_g(g, h)?;
    let t_g_prime = ctx.build_t_g(&g_prime, h)?;
    let twisted = twist_left(&t_g, &f_r);
    let on_gens = (0..n * n)
        .map(|x| t_g.alg.gen(x as u8).scaled(&r[x / n]))
        .collect();
    let witness = BiGaloisWitness::certify(&t_g_prime, &twisted, on_gens);
    Ok(TwistWitness {
        g_prime,
        f_r,
        automorphism_checks,
        t_g_prime,
        twisted,
        witness,
    })
}
