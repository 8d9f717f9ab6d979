use std::collections::HashMap;
use std::sync::RwLock;

use super::{Algebra, NcPoly, RewriteSystem, Word};
use crate::cyclotomic::LinComb;

/// A presented algebra, possibly infinite-dimensional, with the normal words
/// as basis. Normal forms of products are memoized.
#[derive(Debug)]
pub struct PresentedAlgebra {
    sys: RewriteSystem,
    cache: RwLock<HashMap<Word, NcPoly>>,
}

impl PresentedAlgebra {
    pub fn new(sys: RewriteSystem) -> PresentedAlgebra {
        PresentedAlgebra {
            sys,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::new();
        for (w, c) in p.iter() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        if let Some(v) = self.cache.read().unwrap().get(w) {
            return v.clone();
        }
        let v = self.sys.normal_form_word(w);
        self.cache.write().unwrap().insert(w.clone(), v.clone());
        v
    }

    /// Normal words of length `<= degree`, degree by degree.
    pub fn normal_words(&self, degree: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..degree {
            let mut next = Vec::new();
            for w in &level {
                for g in 0..self.sys.ngens() as u8 {
                    let mut x = w.clone();
                    x.0.push(g);
                    if self.sys.suffix_match(x.letters()).is_none() {
                        next.push(x);
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    pub fn gen(&self, g: u8) -> NcPoly {
        self.normal_form_word(&Word::gen(g))
    }
}

impl Algebra for PresentedAlgebra {
    type Key = Word;

    fn order(&self) -> u32 {
        self.sys.order()
    }

    fn unit_key(&self) -> Word {
        Word::empty()
    }

    fn mul_keys(&self, x: &Word, y: &Word) -> LinComb<Word> {
        self.normal_form_word(&x.concat(y))
    }
}
