use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use bigal_core::cyclotomic::CycScalar;
use bigal_core::galoislab::{
    certify_galois, group_law_witness, is_bitrivial, is_right_trivial, lemma_trans_witness,
    mu_action, same_presented_algebra, transgress, value_matrix_is_scalar, CoactedAlgebra,
    ComoduleAlgebra, GaloisCertificate, Pushforward, Side,
};
use bigal_core::hopfcore::{solve_characters, AxiomCheck, Character, HopfData, HopfFd, Scope};
use bigal_core::lazycoh::{
    cocycle_from_cleft, gauge_section, is_central_functional, is_cocycle, perturbed_counit,
    pullback_cocycle, word_section, Cocycle, Laziness,
};
use bigal_core::ncalg::{Elem, FdAlgebra, Presentation, Word, WordBasis};
use bigal_core::qbuilders::{FrobeniusSequence, QContext, SLMatrix};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cache::presentation_hash;
use crate::config::{matrix_label, Suite, SuiteConfig};
use crate::report::{CheckLine, SuiteReport, SuiteStatus};

/// Failures listed in a check's detail before truncating.
const SHOWN_FAILURES: usize = 5;

type Built<T> = Option<Result<T, String>>;

/// Objects shared between suites, built once before the suites start.
pub struct Workspace {
    pub cfg: SuiteConfig,
    pub ctx: QContext,
    uq: Built<Arc<HopfFd>>,
    taft: Built<Arc<HopfFd>>,
    seq: Built<Arc<FrobeniusSequence>>,
    t_g: Vec<Built<Arc<ComoduleAlgebra>>>,
    timings: Mutex<BTreeMap<String, f64>>,
}

fn needs(cfg: &SuiteConfig, of: &[Suite]) -> bool {
    cfg.suites.iter().any(|s| of.contains(s))
}

impl Workspace {
    /// Builds `u_q(sl(n))*`, `B`, the sequence and the manifest objects that
    /// the requested suites use. Runs on the current rayon pool.
    pub fn build(cfg: SuiteConfig, ctx: QContext) -> Workspace {
        use Suite::*;
        let timings = Mutex::new(BTreeMap::new());
        let mut uq = None;
        if needs(
            &cfg,
            &[
                HopfAxioms,
                GaloisCertify,
                KernelBattery,
                GroupLaw,
                TwistLemma,
                LazyWitness,
            ],
        ) {
            let start = Instant::now();
            uq = Some(ctx.build_uq_star().map_err(|e| e.to_string()));
            timings
                .lock()
                .unwrap()
                .insert("build:u_q(sl(n))*".into(), start.elapsed().as_secs_f64());
        }
        let taft = needs(&cfg, &[HopfAxioms, LazyWitness])
            .then(|| ctx.build_taft().map_err(|e| e.to_string()));
        let mut seq = None;
        if needs(&cfg, &[FrobeniusSeq, PushforwardBounded]) {
            let start = Instant::now();
            seq = Some(
                FrobeniusSequence::build(&ctx)
                    .map(Arc::new)
                    .map_err(|e| e.to_string()),
            );
            timings.lock().unwrap().insert(
                "build:frobenius-sequence".into(),
                start.elapsed().as_secs_f64(),
            );
        }
        let mut t_g = vec![None; cfg.g_manifest.len()];
        if let (true, Some(Ok(h))) = (
            needs(&cfg, &[HopfAxioms, GaloisCertify, KernelBattery, GroupLaw]),
            &uq,
        ) {
            let start = Instant::now();
            let built = bigal_core::par::map(cfg.g_manifest.clone(), |g| {
                ctx.build_t_g(&g, h)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            });
            t_g = built.into_iter().map(Some).collect();
            timings
                .lock()
                .unwrap()
                .insert("build:T_g".into(), start.elapsed().as_secs_f64());
        }
        Workspace {
            cfg,
            ctx,
            uq,
            taft,
            seq,
            t_g,
            timings,
        }
    }

    fn uq(&self) -> Result<Arc<HopfFd>, String> {
        self.uq
            .clone()
            .unwrap_or_else(|| Err("u_q(sl(n))* was not built".into()))
    }

    fn taft(&self) -> Result<Arc<HopfFd>, String> {
        self.taft
            .clone()
            .unwrap_or_else(|| Err("B was not built".into()))
    }

    fn seq(&self) -> Result<Arc<FrobeniusSequence>, String> {
        self.seq
            .clone()
            .unwrap_or_else(|| Err("the Frobenius sequence was not built".into()))
    }

    fn t_g(&self, i: usize) -> Result<Arc<ComoduleAlgebra>, String> {
        self.t_g[i]
            .clone()
            .unwrap_or_else(|| Err(format!("T_g {i} was not built")))
    }

    /// `T_g` for any `g`: from the manifest when present, otherwise built now.
    fn t_for(&self, g: &SLMatrix, h: &Arc<HopfFd>) -> Result<Arc<ComoduleAlgebra>, String> {
        if let Some(i) = self.cfg.g_manifest.iter().position(|m| m == g) {
            if let Some(Ok(t)) = &self.t_g[i] {
                return Ok(t.clone());
            }
        }
        self.ctx
            .build_t_g(g, h)
            .map(Arc::new)
            .map_err(|e| e.to_string())
    }

    fn over_threshold(&self) -> bool {
        self.ctx.expected_dim() > self.cfg.galois_threshold
    }

    fn record_time(&self, key: String, secs: f64) {
        self.timings.lock().unwrap().insert(key, secs);
    }

    pub fn timings(&self) -> BTreeMap<String, f64> {
        self.timings.lock().unwrap().clone()
    }

    /// Hashes of every presentation the run depends on.
    pub fn presentation_hashes(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert(
            "u_q(sl(n))*".to_string(),
            presentation_hash(&self.ctx.presentation_t_g(&self.ctx.identity())),
        );
        if let Some(Ok(b)) = &self.taft {
            out.insert("B".to_string(), presentation_hash(&hopf_presentation(b)));
        }
        for g in &self.cfg.g_manifest {
            out.insert(
                format!("T[{}]", matrix_label(g)),
                presentation_hash(&self.ctx.presentation_t_g(g)),
            );
        }
        out
    }

    /// Runs the requested suites concurrently on the current pool; results come
    /// back in suite order.
    pub fn run_suites(&self) -> Vec<SuiteReport> {
        bigal_core::par::map(self.cfg.suites.clone(), |s| {
            let start = Instant::now();
            let r = self.run_suite(s);
            self.record_time(format!("suite:{s}"), start.elapsed().as_secs_f64());
            r
        })
    }

    pub fn run_suite(&self, suite: Suite) -> SuiteReport {
        let mut out = Out::default();
        let result = match suite {
            Suite::HopfAxioms => self.hopf_axioms(&mut out),
            Suite::FrobeniusSeq => self.frobenius_seq(&mut out),
            Suite::GaloisCertify => self.galois_certify(&mut out),
            Suite::KernelBattery => self.kernel_battery(&mut out),
            Suite::GroupLaw => self.group_law(&mut out),
            Suite::TwistLemma => self.twist_lemma(&mut out),
            Suite::PushforwardBounded => self.pushforward_bounded(&mut out),
            Suite::LazyWitness => self.lazy_witness(&mut out),
        };
        if let Err(msg) = result {
            out.check("setup", false, msg);
        }
        let status = match out.skipped {
            Some(why) => SuiteStatus::Skipped(why),
            None if !out.checks.is_empty() && out.checks.iter().all(|c| c.passed) => {
                SuiteStatus::Pass
            }
            None => SuiteStatus::Fail,
        };
        SuiteReport {
            suite: suite.name().to_string(),
            title: suite.title().to_string(),
            status,
            checks: out.checks,
            certificates: Value::Object(out.certs),
        }
    }

    fn skip_over_threshold(&self, out: &mut Out) -> bool {
        if self.over_threshold() {
            out.skipped = Some("threshold".into());
            out.cert("dimension", self.ctx.expected_dim());
            out.cert("threshold", self.cfg.galois_threshold);
        }
        self.over_threshold()
    }

    fn hopf_axioms(&self, out: &mut Out) -> Result<(), String> {
        let ctx = &self.ctx;
        let h = self.uq()?;
        let b = self.taft()?;
        let d = ctx.expected_dim();
        out.check(
            "dim u_q(sl(n))*",
            h.alg.dim() == d,
            format!("{} (N^(n^2-1) = {d})", h.alg.dim()),
        );
        let mut dims = Map::new();
        dims.insert("u_q(sl(n))*".into(), json!(h.alg.dim()));
        for (i, g) in self.cfg.g_manifest.iter().enumerate() {
            let t = self.t_g(i)?;
            out.check(
                format!("dim T[{}]", matrix_label(g)),
                t.dim() == d,
                t.dim().to_string(),
            );
            dims.insert(format!("T[{}]", matrix_label(g)), json!(t.dim()));
        }
        let nn = ctx.big_n * ctx.big_n;
        out.check(
            "dim B",
            b.alg.dim() == nn,
            format!("{} (N^2 = {nn})", b.alg.dim()),
        );
        dims.insert("B".into(), json!(b.alg.dim()));
        for s in [0, 1] {
            let a = ctx
                .build_cleft_a(&CycScalar::from_int(ctx.order(), s), &b)
                .map_err(|e| e.to_string())?;
            out.check(format!("dim A({s})"), a.dim() == nn, a.dim().to_string());
            dims.insert(format!("A({s})"), json!(a.dim()));
        }
        out.cert("dimensions", dims);

        let (scope, scope_name) = if h.alg.dim() <= self.cfg.galois_threshold {
            (Scope::UpToDegree(usize::MAX), "all basis elements")
        } else {
            (Scope::Generators, "generators")
        };
        out.cert("scope", scope_name);
        for c in &h.verify(scope).checks {
            out.axiom("u_q(sl(n))*", c);
        }
        for c in &b.verify(Scope::UpToDegree(usize::MAX)).checks {
            out.axiom("B", c);
        }

        // S(x_12) = q^{-1} x_12 is wrong for every n
        let q_inv = ctx.q().inv().expect("q is a unit");
        let mut antipode = h.antipode.clone();
        antipode[1] = h.alg.gen(1).scaled(&q_inv);
        let bad = HopfData::new(
            "mutated u_q(sl(n))*",
            h.alg.clone(),
            h.relations.clone(),
            h.delta.clone(),
            h.counit.clone(),
            antipode,
        );
        let name = h.alg.names()[1].clone();
        out.mutation(
            "u_q(sl(n))*",
            &bad.verify(scope).check("antipode-left").cloned(),
            &name,
        );

        let mut antipode = b.antipode.clone();
        antipode[1] = b.alg.gen(1);
        let bad = HopfData::new(
            "mutated B",
            b.alg.clone(),
            b.relations.clone(),
            b.delta.clone(),
            b.counit.clone(),
            antipode,
        );
        out.mutation(
            "B",
            &bad.verify(Scope::UpToDegree(usize::MAX))
                .check("antipode-left")
                .cloned(),
            "x",
        );
        Ok(())
    }

    fn frobenius_seq(&self, out: &mut Out) -> Result<(), String> {
        let seq = self.seq()?;
        let rep = seq.verify(self.cfg.degree_bound);
        for c in &rep.checks {
            out.axiom("sequence", c);
        }
        out.cert("degree_bound", self.cfg.degree_bound);
        out.cert("standard_monomials", rep.standard_monomials);
        out.cert("injectivity_rank", rep.injectivity_rank);
        out.cert("notes", &rep.notes);
        Ok(())
    }

    fn certify_timed(
        &self,
        label: &str,
        t: &ComoduleAlgebra,
        side: Side,
    ) -> Result<GaloisCertificate, String> {
        let start = Instant::now();
        let r = certify_galois(t, side).map_err(|e| e.to_string());
        let side_name = match side {
            Side::Right => "right",
            Side::Left => "left",
        };
        self.record_time(
            format!("certify:T[{label}]:{side_name}"),
            start.elapsed().as_secs_f64(),
        );
        r
    }

    fn galois_certify(&self, out: &mut Out) -> Result<(), String> {
        if self.skip_over_threshold(out) {
            return Ok(());
        }
        let mut certs = Map::new();
        for (i, g) in self.cfg.g_manifest.iter().enumerate() {
            let label = matrix_label(g);
            let t = self.t_g(i)?;
            let want = t.dim() * self.ctx.expected_dim();
            let mut entry = Map::new();
            entry.insert("dim".into(), json!(t.dim()));
            for (side, name) in [(Side::Right, "right"), (Side::Left, "left")] {
                match self.certify_timed(&label, &t, side) {
                    Ok(c) => {
                        out.check(
                            format!("T[{label}] kappa_{name} rank"),
                            c.kappa_rank == want,
                            format!("{} of {want}", c.kappa_rank),
                        );
                        entry.insert(name.into(), to_value(c.summary()));
                    }
                    Err(e) => out.check(format!("T[{label}] kappa_{name} rank"), false, e),
                }
            }
            certs.insert(format!("T[{label}]"), Value::Object(entry));
        }
        out.cert("objects", certs);
        Ok(())
    }

    fn kernel_battery(&self, out: &mut Out) -> Result<(), String> {
        let mut certs = Map::new();
        for (i, g) in self.cfg.g_manifest.iter().enumerate() {
            let label = matrix_label(g);
            let t = self.t_g(i)?;
            let names = t.alg.names();
            let right = is_right_trivial(&t).map_err(|e| e.to_string())?;
            let bi = is_bitrivial(&t).map_err(|e| e.to_string())?;
            let (want_right, want_bi) = (g.is_diagonal(), g.is_scalar());
            out.check(
                format!("T[{label}] right-trivial iff diagonal"),
                right.trivial == Some(want_right),
                format!("verdict {}, diagonal {want_right}", verdict(right.trivial)),
            );
            out.check(
                format!("T[{label}] bi-trivial iff scalar"),
                bi.trivial == Some(want_bi),
                format!("verdict {}, scalar {want_bi}", verdict(bi.trivial)),
            );
            if let Some(w) = &right.witness {
                out.check(
                    format!("T[{label}] right witness is a character"),
                    w.satisfies(&t.relations),
                    w.display(&names),
                );
            }
            if let Some(w) = &bi.witness {
                let ok = w.satisfies(&t.relations) && value_matrix_is_scalar(w, self.ctx.n);
                out.check(
                    format!("T[{label}] bi witness is a scalar character"),
                    ok,
                    w.display(&names),
                );
            }
            certs.insert(
                format!("T[{label}]"),
                json!({ "right": right.to_json(&names), "bi": bi.to_json(&names) }),
            );
        }
        out.cert("objects", certs);
        Ok(())
    }

    /// Pairs `(g, h)`: the last non-scalar manifest entry with its inverse,
    /// then consecutive manifest entries.
    fn group_law_pairs(&self) -> Vec<(SLMatrix, SLMatrix)> {
        let m = &self.cfg.g_manifest;
        let mut pairs = Vec::new();
        let base = m.iter().rev().find(|g| !g.is_scalar()).unwrap_or(&m[0]);
        pairs.push((base.clone(), base.inverse()));
        for i in 1..m.len().saturating_sub(1).min(3) {
            pairs.push((m[i].clone(), m[i + 1].clone()));
        }
        if pairs.len() < 3 {
            pairs.push((m[0].clone(), base.clone()));
        }
        pairs
    }

    fn group_law(&self, out: &mut Out) -> Result<(), String> {
        if self.skip_over_threshold(out) {
            return Ok(());
        }
        let h = self.uq()?;
        let d = self.ctx.expected_dim();
        let eps = Character::new(h.counit.clone());
        let mut certs = Vec::new();
        for (g, k) in self.group_law_pairs() {
            let gk = g.mul(&k);
            let label = format!("[{}]*[{}]", matrix_label(&g), matrix_label(&k));
            let (tg, tk) = (self.t_for(&g, &h)?, self.t_for(&k, &h)?);
            let tgk = self.t_for(&gk, &h)?;
            let gl = group_law_witness(&tgk, &tg, &tk).map_err(|e| e.to_string())?;
            out.check(
                format!("{label} cotensor dim"),
                gl.cotensor.dim() == d,
                gl.cotensor.dim().to_string(),
            );
            for c in &gl.witness.checks {
                out.axiom(&label, c);
            }
            if gl.passed() {
                let cs = certify_galois(&*tgk, Side::Right).map_err(|e| e.to_string())?;
                let cc = certify_galois(&gl.cotensor, Side::Right).map_err(|e| e.to_string())?;
                out.axiom(
                    &label,
                    &gl.witness
                        .mu_equivariance(&mu_action(&*tgk, &cs), &mu_action(&gl.cotensor, &cc)),
                );
            }
            let mut entry = json!({ "g": matrix_label(&g), "h": matrix_label(&k), "gh": matrix_label(&gk), "witness": gl.witness.to_json() });
            if gk.is_scalar() && gk.get(0, 0).is_one() && gl.passed() {
                let (values, checks) = gl.witness.transfer_character(&tgk, &gl.cotensor, &eps);
                let ok = checks.iter().all(|c| c.passed) && values[0].is_one();
                let failed: Vec<&str> = checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.axiom.as_str())
                    .collect();
                out.check(
                    format!("{label} composite is bi-trivial"),
                    ok,
                    format!("counit transferred; failed: {failed:?}"),
                );
                entry["bi_trivial_character"] =
                    json!(values.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            certs.push(entry);
        }
        out.cert("pairs", certs);
        Ok(())
    }

    fn twist_lemma(&self, out: &mut Out) -> Result<(), String> {
        if self.skip_over_threshold(out) {
            return Ok(());
        }
        let ctx = &self.ctx;
        let h = self.uq()?;
        let n = ctx.n;
        let fam = solve_characters(ctx.order(), n * n, &h.relations).map_err(|e| e.to_string())?;
        let mut bases = vec![ctx.identity()];
        if let Some(g) = self.cfg.g_manifest.iter().find(|g| !g.is_diagonal()) {
            bases.push(g.clone());
        }
        let mut certs = Vec::new();
        for r in &self.cfg.r_samples {
            let r_label = format!(
                "({})",
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let r_pow: Vec<CycScalar> = r.iter().map(|x| x.pow(ctx.big_n as i64)).collect();
            for g in &bases {
                let label = format!("r={r_label} g=[{}]", matrix_label(g));
                let tw = lemma_trans_witness(ctx, &h, g, r).map_err(|e| e.to_string())?;
                let want = SLMatrix::diag(ctx.order(), &r_pow).mul(g);
                out.check(
                    format!("{label} g' = diag(r^N) g"),
                    tw.g_prime == want,
                    format!("g' = {}", matrix_label(&tw.g_prime)),
                );
                for c in &tw.automorphism_checks {
                    out.axiom(&format!("{label} f_r"), c);
                }
                for c in &tw.witness.checks {
                    out.axiom(&label, c);
                }
                let cs = certify_galois(&tw.t_g_prime, Side::Right).map_err(|e| e.to_string())?;
                let ct = certify_galois(&tw.twisted, Side::Right).map_err(|e| e.to_string())?;
                out.axiom(
                    &label,
                    &tw.witness.mu_equivariance(
                        &mu_action(&tw.t_g_prime, &cs),
                        &mu_action(&tw.twisted, &ct),
                    ),
                );
                let expected = r_pow.iter().all(CycScalar::is_one);
                let got = tw.f_r.is_coinner(&h, &fam).is_coinner();
                out.check(
                    format!("{label} f_r co-inner iff r^N = 1"),
                    got == Some(expected),
                    format!("co-inner {}, r^N = 1 {expected}", verdict(got)),
                );
                certs.push(json!({ "r": r_label, "g": matrix_label(g), "g_prime": matrix_label(&tw.g_prime), "witness": tw.witness.to_json() }));
            }
        }
        out.cert("cases", certs);
        Ok(())
    }

    fn pushforward_bounded(&self, out: &mut Out) -> Result<(), String> {
        if self.skip_over_threshold(out) {
            return Ok(());
        }
        let ctx = &self.ctx;
        let seq = self.seq()?;
        let mut certs = Vec::new();
        for g in &self.cfg.g_manifest {
            let label = matrix_label(g);
            let phi = Character::new(g.rows().iter().flatten().cloned().collect());
            let z = transgress(&seq, &phi, &seq.l).map_err(|e| e.to_string())?;
            let t_inv = ctx
                .build_t_g(&g.inverse(), &seq.l)
                .map_err(|e| e.to_string())?;
            out.check(
                format!("[{label}] transgression is T_(g^-1)"),
                same_presented_algebra(&z, &t_inv),
                matrix_label(&g.inverse()),
            );
            if *g != g.inverse() {
                let t_g = ctx.build_t_g(g, &seq.l).map_err(|e| e.to_string())?;
                out.check(
                    format!("[{label}] transgression is not T_g"),
                    !same_presented_algebra(&z, &t_g),
                    String::new(),
                );
            }
            let pf = Pushforward::new(&z, &seq);
            let rep = pf.verify(&phi, self.cfg.pushforward_bound);
            out.check(
                format!("[{label}] pushforward conclusive"),
                !rep.inconclusive,
                format!(
                    "{} words, rank {}, degree {}",
                    rep.words, rep.rank, rep.degree_bound
                ),
            );
            for c in &rep.checks {
                out.axiom(&format!("[{label}] pushforward"), c);
            }
            let cert = certify_galois(&z, Side::Right).map_err(|e| e.to_string())?;
            let action = pf.verify_action(&cert, 3, 3);
            for c in &action {
                out.axiom(&format!("[{label}] action"), c);
            }
            certs.push(json!({
                "g": label,
                "words": rep.words,
                "rank": rep.rank,
                "action_checks": action.iter().map(|c| json!({ "axiom": c.axiom, "checked": c.checked })).collect::<Vec<_>>(),
            }));
        }
        out.cert("pushforward_bound", self.cfg.pushforward_bound);
        out.cert("objects", certs);
        Ok(())
    }

    fn lazy_witness(&self, out: &mut Out) -> Result<(), String> {
        let ctx = &self.ctx;
        if ctx.n != 2 {
            out.skipped = Some("n>2".into());
            return Ok(());
        }
        let (b, l) = (self.taft()?, self.uq()?);
        let order = ctx.order();
        let x_index = b
            .alg
            .index_of(&Word::gen(1))
            .ok_or("B has no basis element x")?;

        let a1 = ctx
            .build_cleft_a(&CycScalar::one(order), &b)
            .map_err(|e| e.to_string())?;
        let no_char = !solve_characters(order, 2, &a1.relations)
            .map_err(|e| e.to_string())?
            .exists();
        out.check("A(1) has no character", no_char, String::new());
        let gamma = word_section(&b, &a1).ok_or("A(1) and B have different normal words")?;
        let word = cocycle_from_cleft(&a1, &gamma).map_err(|e| e.to_string())?;
        out.cocycle("A(1) word section", &b, &word);
        out.check(
            "A(1) word-section cocycle is lazy",
            word.lazy == Laziness::Lazy,
            "the word section gives the lazy representative".to_string(),
        );

        let f = perturbed_counit(&b, x_index);
        out.check(
            "eps + x* is not central in B*",
            !is_central_functional(&b, &f),
            String::new(),
        );
        let sigma =
            cocycle_from_cleft(&a1, &gauge_section(&b, &gamma, &f)).map_err(|e| e.to_string())?;
        out.cocycle("A(1) gauged section", &b, &sigma);
        match &sigma.lazy {
            Laziness::NotLazy { x, y, left, right } => {
                let detail = format!(
                    "({}, {}): {} != {}",
                    sigma.label(*x),
                    sigma.label(*y),
                    elem_str(&b.alg, left),
                    elem_str(&b.alg, right)
                );
                out.check("gauged cocycle is not lazy", left != right, detail);
                out.cert("base_witness", json!({ "x": sigma.label(*x), "y": sigma.label(*y), "left": elem_str(&b.alg, left), "right": elem_str(&b.alg, right) }));
            }
            other => out.check("gauged cocycle is not lazy", false, format!("{other:?}")),
        }

        let a0 = ctx
            .build_cleft_a(&CycScalar::from_int(order, 0), &b)
            .map_err(|e| e.to_string())?;
        let has_char = solve_characters(order, 2, &a0.relations)
            .map_err(|e| e.to_string())?
            .exists();
        out.check("A(0) has a character", has_char, String::new());
        let s0 = cocycle_from_cleft(
            &a0,
            &word_section(&b, &a0).ok_or("A(0) and B have different normal words")?,
        )
        .map_err(|e| e.to_string())?;
        out.check(
            "A(0) cocycle is lazy",
            s0.lazy == Laziness::Lazy,
            String::new(),
        );

        let pb =
            pullback_cocycle(&sigma, &l, &ctx.taft_projection(&b)).map_err(|e| e.to_string())?;
        for c in &pb.checks {
            out.axiom("projection u_q(sl(2))* -> B", c);
        }
        out.cocycle("pullback", &l, &pb.cocycle);
        let verdict = match pb.cocycle.lazy.is_lazy() {
            Some(true) => "lazy",
            Some(false) => "not lazy",
            None => "undecided",
        };
        out.check(
            "pullback is not lazy",
            pb.cocycle.lazy.is_lazy() == Some(false),
            verdict.to_string(),
        );
        match &pb.witness {
            Some(w) => {
                let detail = format!(
                    "lifts {} and {}",
                    elem_str(&l.alg, &w.x),
                    elem_str(&l.alg, &w.y)
                );
                out.check(
                    "lifted witness certifies non-laziness",
                    w.certifies_non_lazy(),
                    detail,
                );
                out.cert(
                    "lifted_witness",
                    json!({
                        "x": elem_str(&l.alg, &w.x),
                        "y": elem_str(&l.alg, &w.y),
                        "left": elem_str(&l.alg, &w.left),
                        "right": elem_str(&l.alg, &w.right),
                        "projects_to_base": w.projects_to_base,
                    }),
                );
            }
            None => out.check(
                "lifted witness certifies non-laziness",
                false,
                "no witness".to_string(),
            ),
        }
        let mut sigma_json = sigma.to_json();
        sigma_json["presentation_sha256"] = json!(presentation_hash(&hopf_presentation(&b)));
        out.cert("cocycle", sigma_json);
        Ok(())
    }
}

fn hopf_presentation(h: &HopfFd) -> Presentation {
    Presentation {
        order: h.order(),
        gens: h.alg.names(),
        relations: h.relations.clone(),
    }
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("certificate serializes")
}

/// `c*w + ...` over basis words, `1` for the empty word.
pub fn elem_str(alg: &FdAlgebra, e: &Elem) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let names = alg.names();
    let mut terms: Vec<(usize, &CycScalar)> = e.iter().map(|(k, c)| (*k, c)).collect();
    terms.sort_by_key(|(k, _)| *k);
    terms
        .into_iter()
        .map(|(k, c)| {
            let w = alg.word(k);
            let w = if w.is_empty() {
                "1".to_string()
            } else {
                w.display_with(&names)
            };
            if c.is_one() {
                w
            } else {
                format!("({c})*{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Default)]
struct Out {
    checks: Vec<CheckLine>,
    certs: Map<String, Value>,
    skipped: Option<String>,
}

impl Out {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn axiom(&mut self, prefix: &str, c: &AxiomCheck) {
        let mut detail = format!("{} checked", c.checked);
        if !c.failures.is_empty() {
            let shown: Vec<&str> = c
                .failures
                .iter()
                .take(SHOWN_FAILURES)
                .map(String::as_str)
                .collect();
            detail.push_str(&format!(
                "; {} failures: {}",
                c.failures.len(),
                shown.join(", ")
            ));
        }
        self.check(format!("{prefix}: {}", c.axiom), c.passed, detail);
    }

    /// A mutated antipode must fail `antipode-left` at the named generator.
    fn mutation(&mut self, what: &str, check: &Option<AxiomCheck>, at: &str) {
        let name = format!("{what}: corrupted antipode detected at {at}");
        match check {
            Some(c) => {
                let located = !c.passed && c.failures.iter().any(|f| f == at);
                let first = c.failures.first().cloned().unwrap_or_default();
                self.check(
                    name,
                    located,
                    format!(
                        "antipode-left fails at {} elements, first {first}",
                        c.failures.len()
                    ),
                );
            }
            None => self.check(name, false, "no antipode-left check"),
        }
    }

    fn cocycle(&mut self, what: &str, h: &HopfFd, sigma: &Cocycle) {
        let c = is_cocycle(h, &sigma.values);
        let detail = match c.failing_triple {
            Some((x, y, z)) => format!(
                "fails at ({}, {}, {})",
                sigma.label(x),
                sigma.label(y),
                sigma.label(z)
            ),
            None => format!(
                "{} triples, normalized {}, invertible {}",
                c.triples_checked, c.normalized, c.invertible
            ),
        };
        self.check(format!("{what} cocycle identity"), c.passed(), detail);
    }

    fn cert(&mut self, key: &str, v: impl Serialize) {
        self.certs.insert(key.to_string(), to_value(v));
    }
}
