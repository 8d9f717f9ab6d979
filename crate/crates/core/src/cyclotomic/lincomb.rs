use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use super::CycScalar;

/// A finite formal linear combination `Σ c_k · k` with keys kept in order and
/// no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, CycScalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: K, coeff: CycScalar) -> Self {
        let mut out = LinComb::new();
        out.add_term(key, &coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, CycScalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, CycScalar> {
        self.terms.keys()
    }

    pub fn get(&self, key: &K) -> Option<&CycScalar> {
        self.terms.get(key)
    }

    /// Largest key with its coefficient.
    pub fn leading(&self) -> Option<(&K, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(K, CycScalar)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, key: K, coeff: &CycScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_owned(&mut self, key: K, coeff: CycScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in &other.terms {
            if unit {
                self.add_term(k.clone(), v);
            } else {
                self.add_term_owned(k.clone(), v * c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn sub_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term_owned(k.clone(), -v);
        }
    }

    pub fn scaled(&self, c: &CycScalar) -> LinComb<K> {
        if c.is_zero() {
            return LinComb::new();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn difference(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sum(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Relabels keys (coefficients of colliding keys add up).
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn into_iter_terms(self) -> btree_map::IntoIter<K, CycScalar> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, CycScalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, CycScalar)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, v) in iter {
            out.add_term_owned(k, v);
        }
        out
    }
}

impl<K: Ord + std::fmt::Debug> std::fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({v})·{k:?}")?;
        }
        Ok(())
    }
}
