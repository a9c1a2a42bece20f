//! Exact sparse linear algebra over [`Scalar`] with columns indexed by words.
//!
//! Columns of an [`Ambient`] are sorted by deglex *descending*, so the pivot
//! of every echelon row is the leading word of the polynomial it encodes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{Alphabet, NcPoly, Word};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaError {
    #[error("word {0} is not an ambient column")]
    WordOutsideAmbient(String),
    #[error("spans live in different ambient spaces")]
    AmbientMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An ordered set of column words.
#[derive(Debug, PartialEq, Eq)]
pub struct Ambient {
    alphabet: Arc<Alphabet>,
    columns: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Ambient {
    pub fn new(alphabet: &Arc<Alphabet>, words: impl IntoIterator<Item = Word>) -> Arc<Self> {
        let mut columns: Vec<Word> = words.into_iter().collect();
        columns.sort_unstable_by(|a, b| b.cmp(a));
        columns.dedup();
        let index = columns.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Arc::new(Ambient { alphabet: alphabet.clone(), columns, index })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column words, greatest first.
    pub fn columns(&self) -> &[Word] {
        &self.columns
    }

    pub fn column_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn same(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
        Arc::ptr_eq(a, b) || a.columns == b.columns
    }

    fn vector(&self, p: &NcPoly) -> Result<Row, LaError> {
        let mut v: Row = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            let col = self
                .column_of(w)
                .ok_or_else(|| LaError::WordOutsideAmbient(self.alphabet.render(w)))?;
            v.push((col, c.clone()));
        }
        v.sort_unstable_by_key(|(c, _)| *c);
        Ok(v)
    }

    fn poly(&self, row: &Row) -> NcPoly {
        NcPoly::from_terms(&self.alphabet, row.iter().map(|(c, s)| (self.columns[*c].clone(), s.clone())))
    }
}

/// Sparse row: `(column, coefficient)` pairs sorted by column, no zeros.
type Row = Vec<(usize, Scalar)>;

/// `a + k*b` for sparse rows.
fn axpy(a: &Row, k: &Scalar, b: &Row) -> Result<Row, ScalarError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, k.checked_mul(&b[j].1)?));
            j += 1;
        } else {
            let s = a[i].1.checked_add(&k.checked_mul(&b[j].1)?)?;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn scale_row(r: &Row, k: &Scalar) -> Result<Row, ScalarError> {
    r.iter().map(|(c, s)| Ok((*c, s.checked_mul(k)?))).collect()
}

fn coeff_at(r: &Row, col: usize) -> Option<&Scalar> {
    r.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &r[i].1)
}

/// Reduced row-echelon basis of a subspace, keyed by pivot column.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    ambient: Arc<Ambient>,
    rows: BTreeMap<usize, Row>,
}

/// Result of a membership query.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// Coefficients on the basis rows, each row named by its pivot word.
    InSpan(Vec<(Word, Scalar)>),
    /// The nonzero remainder after eliminating every pivot.
    NotInSpan(NcPoly),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InSpan(_))
    }
}

impl SpanBasis {
    pub fn empty(ambient: &Arc<Ambient>) -> Self {
        SpanBasis { ambient: ambient.clone(), rows: BTreeMap::new() }
    }

    pub fn full(ambient: &Arc<Ambient>) -> Self {
        let rows = (0..ambient.len()).map(|c| (c, vec![(c, Scalar::one())])).collect();
        SpanBasis { ambient: ambient.clone(), rows }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient.len()
    }

    pub fn pivot_words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.rows.keys().map(|c| &self.ambient.columns[*c])
    }

    pub fn has_pivot(&self, w: &Word) -> bool {
        self.ambient.column_of(w).is_some_and(|c| self.rows.contains_key(&c))
    }

    /// The basis row whose leading word is `w`.
    pub fn row_with_pivot(&self, w: &Word) -> Option<NcPoly> {
        let c = self.ambient.column_of(w)?;
        self.rows.get(&c).map(|r| self.ambient.poly(r))
    }

    /// Basis rows as polynomials, greatest leading word first.
    pub fn basis(&self) -> Vec<NcPoly> {
        self.rows.values().map(|r| self.ambient.poly(r)).collect()
    }

    fn reduce_row(&self, mut v: Row) -> Result<(Row, Vec<(usize, Scalar)>), ScalarError> {
        let mut coords = Vec::new();
        let mut k = 0;
        while k < v.len() {
            let (col, c) = (v[k].0, v[k].1.clone());
            if let Some(r) = self.rows.get(&col) {
                v = axpy(&v, &c.neg(), r)?;
                coords.push((col, c));
            } else {
                k += 1;
            }
        }
        Ok((v, coords))
    }

    fn insert_row(&mut self, v: Row) -> Result<bool, ScalarError> {
        let (v, _) = self.reduce_row(v)?;
        let Some((pivot, lead)) = v.first().cloned() else {
            return Ok(false);
        };
        let v = scale_row(&v, &lead.inv()?)?;
        for r in self.rows.values_mut() {
            if let Some(c) = coeff_at(r, pivot).cloned() {
                *r = axpy(r, &c.neg(), &v)?;
            }
        }
        self.rows.insert(pivot, v);
        Ok(true)
    }

    /// Add `p` to the span; returns whether the rank grew.
    pub fn insert(&mut self, p: &NcPoly) -> Result<bool, LaError> {
        let v = self.ambient.vector(p)?;
        Ok(self.insert_row(v)?)
    }

    pub fn contains(&self, p: &NcPoly) -> Result<Membership, LaError> {
        let v = self.ambient.vector(p)?;
        let (rest, coords) = self.reduce_row(v)?;
        if rest.is_empty() {
            let coords = coords.into_iter().map(|(c, s)| (self.ambient.columns[c].clone(), s)).collect();
            Ok(Membership::InSpan(coords))
        } else {
            Ok(Membership::NotInSpan(self.ambient.poly(&rest)))
        }
    }

    /// Remainder of `p` modulo the span.
    pub fn reduce(&self, p: &NcPoly) -> Result<NcPoly, LaError> {
        let v = self.ambient.vector(p)?;
        let (rest, _) = self.reduce_row(v)?;
        Ok(self.ambient.poly(&rest))
    }

    fn intersect_pair(&self, other: &SpanBasis) -> Result<SpanBasis, LaError> {
        if !Ambient::same(&self.ambient, &other.ambient) {
            return Err(LaError::AmbientMismatch);
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // Zassenhaus: rows (u | u) and (w | 0); rows with empty left half
        // span the intersection in their right half.
        let m = self.ambient.len();
        let mut doubled = SpanBasis { ambient: self.ambient.clone(), rows: BTreeMap::new() };
        for r in self.rows.values() {
            let mut d = r.clone();
            d.extend(r.iter().map(|(c, s)| (c + m, s.clone())));
            doubled.insert_row(d)?;
        }
        for r in other.rows.values() {
            doubled.insert_row(r.clone())?;
        }
        let mut out = SpanBasis::empty(&self.ambient);
        for (pivot, r) in doubled.rows {
            if pivot >= m {
                out.insert_row(r.into_iter().map(|(c, s)| (c - m, s)).collect())?;
            }
        }
        Ok(out)
    }

    pub fn sum(&self, other: &SpanBasis) -> Result<SpanBasis, LaError> {
        if !Ambient::same(&self.ambient, &other.ambient) {
            return Err(LaError::AmbientMismatch);
        }
        let mut out = self.clone();
        for r in other.rows.values() {
            out.insert_row(r.clone())?;
        }
        Ok(out)
    }
}

/// Reduced row-echelon span of `vectors` inside `ambient`.
pub fn echelon<'a>(vectors: impl IntoIterator<Item = &'a NcPoly>, ambient: &Arc<Ambient>) -> Result<SpanBasis, LaError> {
    let mut s = SpanBasis::empty(ambient);
    for v in vectors {
        s.insert(v)?;
    }
    Ok(s)
}

/// Intersection of spans over a common ambient; an empty list is an error.
pub fn intersect(spans: &[SpanBasis]) -> Result<SpanBasis, LaError> {
    let (first, rest) = spans.split_first().ok_or(LaError::AmbientMismatch)?;
    let mut acc = first.clone();
    for s in rest {
        acc = acc.intersect_pair(s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_poly, words_of_length};
    use crate::scalars::ParamSpace;

    fn setup() -> (Arc<Alphabet>, Arc<Ambient>) {
        let a = Alphabet::new(["d", "u"]).unwrap();
        let amb = Ambient::new(&a, words_of_length(2, 2));
        (a, amb)
    }

    fn p(a: &Arc<Alphabet>, s: &str) -> NcPoly {
        parse_poly(s, a, &ParamSpace::empty()).unwrap()
    }

    #[test]
    fn echelon_examples() {
        let (a, amb) = setup();
        let s = echelon(&[p(&a, "d^2 + u^2"), p(&a, "u^2")], &amb).unwrap();
        assert_eq!(s.rank(), 2);
        let piv: Vec<_> = s.pivot_words().map(|w| a.render(w)).collect();
        assert_eq!(piv, ["u^2", "d^2"]);
        let q = p(&a, "d*u - 3*u*d");
        assert_eq!(echelon(&[q.clone(), q.scale(&Scalar::from_int(2))], &amb).unwrap().rank(), 1);
        assert_eq!(echelon(&[], &amb).unwrap().rank(), 0);
        assert!(matches!(echelon(&[p(&a, "d")], &amb), Err(LaError::WordOutsideAmbient(_))));
    }

    #[test]
    fn pivot_is_leading_word() {
        let (a, amb) = setup();
        let s = echelon(&[p(&a, "d^2 + u*d")], &amb).unwrap();
        assert!(s.has_pivot(&a.parse_word("u*d").unwrap()));
    }

    #[test]
    fn intersection_examples() {
        let (a, amb) = setup();
        let v = echelon(&[p(&a, "d^2"), p(&a, "u^2")], &amb).unwrap();
        let w = echelon(&[p(&a, "u^2"), p(&a, "d*u")], &amb).unwrap();
        let i = intersect(&[v.clone(), w]).unwrap();
        assert_eq!(i.rank(), 1);
        assert!(i.has_pivot(&a.parse_word("u^2").unwrap()));
        assert_eq!(intersect(std::slice::from_ref(&v)).unwrap().rank(), 2);
        assert_eq!(intersect(&[v.clone(), SpanBasis::full(&amb)]).unwrap().rank(), 2);
        let other = Ambient::new(&a, words_of_length(2, 3));
        assert_eq!(intersect(&[v, SpanBasis::empty(&other)]).unwrap_err(), LaError::AmbientMismatch);
    }

    #[test]
    fn membership_examples() {
        let (a, amb) = setup();
        let s = echelon(&[p(&a, "u^2")], &amb).unwrap();
        match s.contains(&p(&a, "3*u^2")).unwrap() {
            Membership::InSpan(c) => assert_eq!(c, vec![(a.parse_word("u^2").unwrap(), Scalar::from_int(3))]),
            other => panic!("{other:?}"),
        }
        assert!(!s.contains(&p(&a, "d^2")).unwrap().is_member());
        let zero = SpanBasis::empty(&amb);
        assert!(zero.contains(&NcPoly::zero(&a)).unwrap().is_member());
    }
}
