//! Rewriting systems on the free algebra and their completion.

use std::borrow::Borrow;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use super::{poly, NcError, NcPoly, Word};
use crate::cyclotomic::CycScalar;

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CompletionStatus {
    Complete,
    /// Some overlap ambiguities longer than `bound` were not resolved.
    BoundedIncomplete {
        bound: usize,
    },
}

/// `lhs → rhs`, with every word of `rhs` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

impl Rule {
    /// The relation `lhs - rhs` this rule encodes.
    pub fn relation(&self, order: u32) -> NcPoly {
        let mut p = self.rhs.neg();
        p.add_term_owned(self.lhs.clone(), CycScalar::one(order));
        p
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    order: u32,
    gens: Vec<String>,
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    lens: Vec<usize>,
    status: CompletionStatus,
}

/// On-disk form: rules as `(lhs letters, [(word letters, rational coefficients)])`.
#[derive(serde::Serialize, serde::Deserialize)]
struct SystemRepr {
    order: u32,
    gens: Vec<String>,
    status: CompletionStatus,
    rules: Vec<(Vec<u8>, Vec<(Vec<u8>, Vec<String>)>)>,
}

impl serde::Serialize for RewriteSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let rhs = r
                    .rhs
                    .iter()
                    .map(|(w, c)| (w.letters().to_vec(), c.to_coeff_strings()))
                    .collect();
                (r.lhs.letters().to_vec(), rhs)
            })
            .collect();
        SystemRepr {
            order: self.order,
            gens: self.gens.clone(),
            status: self.status.clone(),
            rules,
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RewriteSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<RewriteSystem, D::Error> {
        use serde::de::Error;
        let repr = SystemRepr::deserialize(d)?;
        if repr.order == 0 || repr.order > crate::cyclotomic::MAX_ORDER {
            return Err(D::Error::custom(format!(
                "unsupported field order {}",
                repr.order
            )));
        }
        let ngens = repr.gens.len();
        let word = |letters: Vec<u8>| -> Result<Word, D::Error> {
            match letters.iter().find(|&&g| g as usize >= ngens) {
                Some(g) => Err(D::Error::custom(format!(
                    "generator index {g} out of range"
                ))),
                None => Ok(Word::from_slice(&letters)),
            }
        };
        let mut rules = Vec::with_capacity(repr.rules.len());
        for (lhs, rhs) in repr.rules {
            let lhs = word(lhs)?;
            let mut p = NcPoly::new();
            for (w, c) in rhs {
                let w = word(w)?;
                if w >= lhs {
                    return Err(D::Error::custom(
                        "rule right side is not smaller than its left side",
                    ));
                }
                p.add_term_owned(
                    w,
                    CycScalar::from_coeff_strings(repr.order, &c).map_err(D::Error::custom)?,
                );
            }
            rules.push(Rule { lhs, rhs: p });
        }
        Ok(RewriteSystem::from_rules(
            repr.order,
            repr.gens,
            rules,
            repr.status,
        ))
    }
}

impl RewriteSystem {
    /// Assembles a system from rules without completing it.
    pub fn from_rules(
        order: u32,
        gens: Vec<String>,
        mut rules: Vec<Rule>,
        status: CompletionStatus,
    ) -> RewriteSystem {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lhs.clone(), i))
            .collect();
        let mut lens: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        RewriteSystem {
            order,
            gens,
            rules,
            index,
            lens,
            status,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> &CompletionStatus {
        &self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Complete
    }

    pub fn max_lhs_len(&self) -> usize {
        self.lens.last().copied().unwrap_or(0)
    }

    pub fn rule_for(&self, lhs: &[u8]) -> Option<&Rule> {
        self.index.get(lhs).map(|&i| &self.rules[i])
    }

    /// Leftmost rule occurrence in `w` (shortest rule first at a given position).
    pub fn find_match(&self, w: &[u8]) -> Option<(usize, &Rule)> {
        for pos in 0..w.len() {
            for &l in &self.lens {
                if pos + l > w.len() {
                    break;
                }
                if let Some(&i) = self.index.get(&w[pos..pos + l]) {
                    return Some((pos, &self.rules[i]));
                }
            }
        }
        None
    }

    /// A rule whose left side is a suffix of `w`.
    pub fn suffix_match(&self, w: &[u8]) -> Option<(usize, &Rule)> {
        for &l in &self.lens {
            if l > w.len() {
                break;
            }
            let pos = w.len() - l;
            if let Some(&i) = self.index.get(&w[pos..]) {
                return Some((pos, &self.rules[i]));
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &[u8]) -> bool {
        self.find_match(w).is_some()
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut work = p.clone();
        let mut out = NcPoly::new();
        while let Some((w, c)) = work.pop_leading() {
            match self.find_match(w.letters()) {
                None => out.add_term_owned(w, c),
                Some((pos, rule)) => {
                    let (u, v) = (&w.letters()[..pos], &w.letters()[pos + rule.lhs.len()..]);
                    for (m, cm) in rule.rhs.iter() {
                        work.add_term_owned(Word::concat3(u, m.letters(), v), cm * &c);
                    }
                }
            }
        }
        out
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        self.normal_form(&poly::monomial(self.order, w.clone()))
    }

    /// Normal form computed with caller-chosen redexes: `choose(k)` must return
    /// an index below `k`. Used to test confluence.
    pub fn normal_form_by(&self, p: &NcPoly, choose: &mut dyn FnMut(usize) -> usize) -> NcPoly {
        let mut cur = p.clone();
        loop {
            let mut redexes: Vec<(Word, usize, usize)> = Vec::new();
            for (w, _) in cur.iter() {
                let l = w.letters();
                for pos in 0..l.len() {
                    for &len in &self.lens {
                        if pos + len > l.len() {
                            break;
                        }
                        if let Some(&i) = self.index.get(&l[pos..pos + len]) {
                            redexes.push((w.clone(), pos, i));
                        }
                    }
                }
            }
            if redexes.is_empty() {
                return cur;
            }
            let (w, pos, ri) = redexes.swap_remove(choose(redexes.len()));
            let rule = &self.rules[ri];
            let c = cur.get(&w).cloned().expect("term present");
            let mut delta = poly::sandwich(
                &w.letters()[..pos],
                &rule.rhs,
                &w.letters()[pos + rule.lhs.len()..],
            )
            .scaled(&c);
            delta.add_term_owned(w, -c);
            cur.add_assign(&delta);
        }
    }

    /// All irreducible words, degree by degree, if there are at most `cap` of them.
    pub fn enumerate_basis(&self, cap: usize) -> Result<Vec<Word>, NcError> {
        if let CompletionStatus::BoundedIncomplete { bound } = self.status {
            return Err(NcError::Incomplete { bound });
        }
        let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        let mut total = 1;
        loop {
            let next = self.extend_level(levels.last().unwrap());
            if next.is_empty() {
                return Ok(levels.into_iter().flatten().collect());
            }
            total += next.len();
            levels.push(next);
            if total > cap {
                let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
                return Err(if self.has_infinite_basis(&mut levels) {
                    NcError::InfiniteBasis { counts }
                } else {
                    NcError::BasisTooLarge { cap, counts }
                });
            }
        }
    }

    /// Number of irreducible words in each degree `0..=max_degree`.
    pub fn graded_counts(&self, max_degree: usize) -> Vec<usize> {
        let mut level = vec![Word::empty()];
        let mut counts = vec![1];
        for _ in 0..max_degree {
            level = self.extend_level(&level);
            counts.push(level.len());
        }
        counts
    }

    fn extend_level(&self, level: &[Word]) -> Vec<Word> {
        let mut next = Vec::new();
        for w in level {
            for g in 0..self.gens.len() as u8 {
                let mut x = w.clone();
                x.0.push(g);
                if self.suffix_match(x.letters()).is_none() {
                    next.push(x);
                }
            }
        }
        next
    }

    /// Cycle test on the graph of irreducible words of length `m - 1`, where
    /// `m` is the longest left side: the normal words are infinite iff it has a cycle.
    fn has_infinite_basis(&self, levels: &mut Vec<Vec<Word>>) -> bool {
        let m = self.max_lhs_len().max(1);
        while levels.len() < m {
            let next = self.extend_level(levels.last().unwrap());
            if next.len() > 200_000 {
                return false;
            }
            levels.push(next);
        }
        let verts = &levels[m - 1];
        if verts.len() > 200_000 {
            return false;
        }
        let idx: HashMap<&[u8], usize> = verts
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters(), i))
            .collect();
        let succ = |i: usize| -> Vec<usize> {
            let w = verts[i].letters();
            let mut out = Vec::new();
            for g in 0..self.gens.len() as u8 {
                let mut x: Vec<u8> = w.to_vec();
                x.push(g);
                if self.suffix_match(&x).is_none() {
                    if let Some(&j) = idx.get(&x[1..]) {
                        out.push(j);
                    }
                }
            }
            out
        };
        // iterative three-colour DFS
        let mut color = vec![0u8; verts.len()];
        for s in 0..verts.len() {
            if color[s] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, succ(s))];
            color[s] = 1;
            while let Some((v, rest)) = stack.last_mut() {
                match rest.pop() {
                    Some(u) => match color[u] {
                        0 => {
                            color[u] = 1;
                            let su = succ(u);
                            stack.push((u, su));
                        }
                        1 => return true,
                        _ => {}
                    },
                    None => {
                        color[*v] = 2;
                        stack.pop();
                    }
                }
            }
        }
        false
    }
}

#[derive(Debug)]
enum Task {
    Pair(usize, usize, usize),
    Poly(NcPoly),
}

struct Completer {
    order: u32,
    bound: usize,
    rules: Vec<Option<Rule>>,
    index: HashMap<Word, usize>,
    lens: BTreeMap<usize, usize>,
    heap: BinaryHeap<Reverse<(Word, usize)>>,
    tasks: Vec<Option<Task>>,
    truncated: bool,
}

impl Completer {
    fn find_match(&self, w: &[u8]) -> Option<(usize, &Rule)> {
        for pos in 0..w.len() {
            for &l in self.lens.keys() {
                if pos + l > w.len() {
                    break;
                }
                if let Some(&i) = self.index.get(&w[pos..pos + l]) {
                    return Some((pos, self.rules[i].as_ref().unwrap()));
                }
            }
        }
        None
    }

    fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut work = p.clone();
        let mut out = NcPoly::new();
        while let Some((w, c)) = work.pop_leading() {
            match self.find_match(w.letters()) {
                None => out.add_term_owned(w, c),
                Some((pos, rule)) => {
                    let (u, v) = (&w.letters()[..pos], &w.letters()[pos + rule.lhs.len()..]);
                    for (m, cm) in rule.rhs.iter() {
                        work.add_term_owned(Word::concat3(u, m.letters(), v), cm * &c);
                    }
                }
            }
        }
        out
    }

    fn schedule(&mut self, key: Word, task: Task) {
        let id = self.tasks.len();
        self.tasks.push(Some(task));
        self.heap.push(Reverse((key, id)));
    }

    fn remove_rule(&mut self, i: usize) -> Rule {
        let r = self.rules[i].take().unwrap();
        self.index.remove(&r.lhs);
        let c = self.lens.get_mut(&r.lhs.len()).unwrap();
        *c -= 1;
        if *c == 0 {
            self.lens.remove(&r.lhs.len());
        }
        r
    }

    fn add(&mut self, p: &NcPoly) {
        let p = self.normal_form(p);
        let Some((lead, lc)) = p.leading() else {
            return;
        };
        let lhs = lead.clone();
        let inv = lc.inv().expect("nonzero leading coefficient");
        let mut rhs = p.scaled(&inv).neg();
        rhs.pop_leading();
        // drop rules made redundant by the new left side
        let stale: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref()
                    .filter(|r| r.lhs.find(lhs.letters()).is_some())
                    .map(|_| i)
            })
            .collect();
        for i in stale {
            let r = self.remove_rule(i);
            let rel = r.relation(self.order);
            self.schedule(r.lhs, Task::Poly(rel));
        }
        let id = self.rules.len();
        self.index.insert(lhs.clone(), id);
        *self.lens.entry(lhs.len()).or_insert(0) += 1;
        self.rules.push(Some(Rule { lhs, rhs }));
        let alive: Vec<usize> = (0..self.rules.len())
            .filter(|&j| self.rules[j].is_some())
            .collect();
        for j in alive {
            self.overlaps(id, j);
            if j != id {
                self.overlaps(j, id);
            }
        }
    }

    /// Overlaps where a suffix of rule `i`'s left side is a prefix of rule `j`'s.
    fn overlaps(&mut self, i: usize, j: usize) {
        let li = self.rules[i].as_ref().unwrap().lhs.clone();
        let lj = self.rules[j].as_ref().unwrap().lhs.clone();
        let (a, b) = (li.letters(), lj.letters());
        for k in 1..a.len().min(b.len()) {
            if a[a.len() - k..] == b[..k] {
                let w = Word::concat3(a, &b[k..], &[]);
                if w.len() > self.bound {
                    self.truncated = true;
                } else {
                    self.schedule(w, Task::Pair(i, j, k));
                }
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, k: usize) -> Option<NcPoly> {
        let ri = self.rules[i].as_ref()?;
        let rj = self.rules[j].as_ref()?;
        let v = &rj.lhs.letters()[k..];
        let u = &ri.lhs.letters()[..ri.lhs.len() - k];
        let mut s = poly::sandwich(&[], &ri.rhs, v);
        s.sub_assign(&poly::sandwich(u, &rj.rhs, &[]));
        Some(s)
    }

    fn run(&mut self) {
        while let Some(Reverse((_, id))) = self.heap.pop() {
            let task = self.tasks[id].take().unwrap();
            match task {
                Task::Poly(p) => self.add(&p),
                Task::Pair(i, j, k) => {
                    if let Some(s) = self.spoly(i, j, k) {
                        self.add(&s);
                    }
                }
            }
        }
    }
}

/// Completes `relations` to a reduced rewriting system for the deglex order,
/// resolving overlap ambiguities whose overlap word has length `<= degree_bound`.
pub fn complete(
    order: u32,
    gens: Vec<String>,
    relations: &[NcPoly],
    degree_bound: usize,
) -> RewriteSystem {
    let mut c = Completer {
        order,
        bound: degree_bound,
        rules: Vec::new(),
        index: HashMap::new(),
        lens: BTreeMap::new(),
        heap: BinaryHeap::new(),
        tasks: Vec::new(),
        truncated: false,
    };
    for r in relations {
        let key = r.leading().map(|(w, _)| w.clone()).unwrap_or_default();
        c.schedule(key, Task::Poly(r.clone()));
    }
    c.run();
    let status = if c.truncated {
        CompletionStatus::BoundedIncomplete {
            bound: degree_bound,
        }
    } else {
        CompletionStatus::Complete
    };
    let raw: Vec<Rule> = c.rules.iter().flatten().cloned().collect();
    let sys = RewriteSystem::from_rules(order, gens.clone(), raw, status.clone());
    let reduced: Vec<Rule> = sys
        .rules
        .iter()
        .map(|r| Rule {
            lhs: r.lhs.clone(),
            rhs: sys.normal_form(&r.rhs),
        })
        .collect();
    RewriteSystem::from_rules(order, gens, reduced, status)
}
