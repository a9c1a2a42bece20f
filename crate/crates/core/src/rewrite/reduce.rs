use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Presentation, Terms};
use crate::freealg::{NcPoly, Word};
use crate::scalars::Scalar;

const CACHE_LIMIT: usize = 4_000_000;

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Presentation {
    /// First redex as `(rule index, start position)`.
    pub fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        self.matcher.as_ref()?.find(w).map(|m| (m.pattern().as_usize(), m.start()))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w.letters()).is_none()
    }

    /// One rewriting step: replace the occurrence of rule `r` at `pos`.
    pub fn rewrite_at(&self, w: &Word, r: usize, pos: usize) -> NcPoly {
        let rule = &self.rules[r];
        let pre = w.slice(0, pos);
        let post = w.slice(pos + rule.lhs.len(), w.len());
        NcPoly::from_terms(&self.alphabet, rule.rhs.terms().map(|(v, c)| (pre.concat(v).concat(&post), c.clone())))
    }

    fn cached(&self, w: &[u8]) -> Option<Terms> {
        self.cache.read().expect("cache lock").get(w).cloned()
    }

    fn store(&self, w: Word, t: Terms) {
        let mut cache = self.cache.write().expect("cache lock");
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(w, t);
    }

    /// Fully reduce a work list of terms, largest word first.
    fn reduce_terms(&self, mut work: BTreeMap<Word, Scalar>) -> BTreeMap<Word, Scalar> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            if let Some(t) = self.cached(w.letters()) {
                for (v, k) in t.iter() {
                    add_into(&mut out, v.clone(), &c * k);
                }
                continue;
            }
            match self.find_redex(w.letters()) {
                None => add_into(&mut out, w, c),
                Some((r, pos)) => {
                    let rule = &self.rules[r];
                    let pre = w.slice(0, pos);
                    let post = w.slice(pos + rule.lhs.len(), w.len());
                    for (v, k) in rule.rhs.terms() {
                        add_into(&mut work, pre.concat(v).concat(&post), &c * k);
                    }
                }
            }
        }
        out
    }

    /// Normal form of a single word, as terms in ascending deglex order.
    pub fn nf_word(&self, w: &Word) -> Terms {
        if let Some(t) = self.cached(w.letters()) {
            return t;
        }
        let Some((r, pos)) = self.find_redex(w.letters()) else {
            let t: Terms = Arc::from(vec![(w.clone(), Scalar::one())]);
            self.store(w.clone(), t.clone());
            return t;
        };
        // The prefix ending just before the first redex is normal.
        let first_end = pos + self.rules[r].lhs.len();
        let letters = w.letters();
        let mut k = first_end - 1;
        let mut cur: Terms = Arc::from(vec![(Word::from(letters[..k].to_vec()), Scalar::one())]);
        for j in (first_end..letters.len()).rev() {
            if let Some(t) = self.cached(&letters[..j]) {
                k = j;
                cur = t;
                break;
            }
        }
        while k < letters.len() {
            let x = letters[k];
            let mut work = BTreeMap::new();
            for (v, c) in cur.iter() {
                let mut v = v.clone();
                v.push(x);
                add_into(&mut work, v, c.clone());
            }
            cur = Arc::from(self.reduce_terms(work).into_iter().collect::<Vec<_>>());
            k += 1;
            self.store(Word::from(letters[..k].to_vec()), cur.clone());
        }
        cur
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(&self.alphabet);
        for (w, c) in p.terms() {
            for (v, k) in self.nf_word(w).iter() {
                out.add_term(v.clone(), c * k);
            }
        }
        out
    }

    /// `nf(a*b)` for normal words `a`, `b`.
    pub fn nf_product(&self, a: &Word, b: &Word) -> NcPoly {
        let t = self.nf_word(&a.concat(b));
        NcPoly::from_terms(&self.alphabet, t.iter().cloned())
    }

    /// Normal words of length `n` in ascending deglex order.
    pub fn normal_words(&self, n: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for x in 0..self.alphabet.len() as u8 {
                    let mut v = w.clone();
                    v.push(x);
                    if !self.suffix_redex(&v) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn suffix_redex(&self, v: &Word) -> bool {
        self.rules.iter().any(|r| v.ends_with(&r.lhs))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}
