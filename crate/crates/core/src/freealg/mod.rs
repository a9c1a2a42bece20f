//! Words and noncommutative polynomials over a finite ordered alphabet.
//!
//! Words are compared degree-lexicographically: shorter words are smaller,
//! equal-length words compare left to right by generator position in the
//! [`Alphabet`]. That order is the derived `Ord` on [`Word`], so a
//! `BTreeMap<Word, _>` iterates from smallest to largest word.

mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalars::ScalarError;

pub use parse::parse_poly;
pub use poly::NcPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("operands use different alphabets")]
    AlphabetMismatch,
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol {name:?} at byte {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Ordered generator names; position is the generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, FreeAlgError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > u8::MAX as usize {
            return Err(FreeAlgError::InvalidAlphabet("need between 1 and 255 generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(FreeAlgError::InvalidAlphabet(format!("bad generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(FreeAlgError::InvalidAlphabet(format!("repeated generator {n:?}")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn letter(&self, name: &str) -> Option<Word> {
        self.index_of(name).map(|i| Word::from(vec![i]))
    }

    fn check(&self, w: &Word) -> Result<(), FreeAlgError> {
        if w.0.iter().all(|&i| (i as usize) < self.names.len()) {
            Ok(())
        } else {
            Err(FreeAlgError::AlphabetMismatch)
        }
    }

    pub fn deglex_compare(&self, a: &Word, b: &Word) -> Result<Ordering, FreeAlgError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.cmp(b))
    }

    /// Render a word with run-length powers, e.g. `d^2*u`.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.0.len() {
            let c = w.0[i];
            let mut j = i;
            while j < w.0.len() && w.0[j] == c {
                j += 1;
            }
            let name = &self.names[c as usize];
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    /// Parse a single monomial such as `d^2*u` or `dud`.
    pub fn parse_word(self: &Arc<Self>, text: &str) -> Result<Word, FreeAlgError> {
        let p = parse_poly(text, self, &crate::scalars::ParamSpace::empty())?;
        match p.terms().next() {
            Some((w, c)) if p.len() == 1 && c.is_one() => Ok(w.clone()),
            _ => Err(FreeAlgError::SyntaxError { pos: 0, msg: format!("{text:?} is not a monomial") }),
        }
    }
}

/// A word as a sequence of generator indices; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + rhs.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// First position where `pat` occurs as a subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        if pat.0.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn ends_with(&self, pat: &Word) -> bool {
        self.0.ends_with(&pat.0)
    }

    /// Suffixes from the empty one up to the whole word.
    pub fn suffixes(&self) -> impl Iterator<Item = &[u8]> {
        (0..=self.0.len()).map(move |k| &self.0[self.0.len() - k..])
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl std::borrow::Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All words of length `n` in increasing deglex order.
pub fn words_of_length(alphabet_len: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet_len);
        for w in &out {
            for c in 0..alphabet_len as u8 {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
