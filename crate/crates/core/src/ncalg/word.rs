use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial in the free monoid on generators `0, 1, …`.
///
/// Ordered degree-lexicographically: shorter words first, equal lengths by
/// comparing generator indices left to right.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn gen(g: u8) -> Word {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn from_slice(s: &[u8]) -> Word {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &[u8], b: &[u8], c: &[u8]) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn pow(g: u8, k: usize) -> Word {
        Word(std::iter::repeat_n(g, k).collect())
    }

    /// Position of the first occurrence of `pat` as a subword.
    pub fn find(&self, pat: &[u8]) -> Option<usize> {
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == g {
                k += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[g as usize]);
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
            i += k;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("g{g}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}
