use std::collections::{btree_map, BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{Alphabet, FreeAlgError, Word};
use crate::scalars::Scalar;

/// A finitely supported map from words to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NcPoly { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::monomial(alphabet, Word::empty(), Scalar::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: Scalar) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn word(alphabet: &Arc<Alphabet>, w: Word) -> Self {
        Self::monomial(alphabet, w, Scalar::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Terms in increasing deglex order.
    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The deglex-greatest word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            Some(first) => lens.all(|l| l == first),
            None => true,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_alphabet(&self, rhs: &NcPoly) -> Result<(), FreeAlgError> {
        if Arc::ptr_eq(&self.alphabet, &rhs.alphabet) || self.alphabet == rhs.alphabet {
            Ok(())
        } else {
            Err(FreeAlgError::AlphabetMismatch)
        }
    }

    pub fn try_add(&self, rhs: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.same_alphabet(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.try_add(&rhs.neg())
    }

    pub fn try_mul(&self, rhs: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.same_alphabet(rhs)?;
        let mut out = NcPoly::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1.checked_mul(c2)?);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(&self.alphabet);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: usize) -> NcPoly {
        let mut acc = NcPoly::one(&self.alphabet);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Apply `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coeffs<E>(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<NcPoly, E> {
        let mut out = NcPoly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Extend `images` multiplicatively; images must share one alphabet.
    pub fn substitute(&self, images: &HashMap<String, NcPoly>) -> Result<NcPoly, FreeAlgError> {
        let mut target: Option<&Arc<Alphabet>> = None;
        for img in images.values() {
            match target {
                None => target = Some(img.alphabet()),
                Some(t) if t == img.alphabet() => {}
                Some(_) => return Err(FreeAlgError::AlphabetMismatch),
            }
        }
        let mut by_letter: Vec<Option<&NcPoly>> = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.names() {
            by_letter.push(images.get(name));
        }
        let target = match target {
            Some(t) => t.clone(),
            None if self.terms.keys().all(Word::is_empty) => self.alphabet.clone(),
            None => return Err(FreeAlgError::MissingImage(self.alphabet.names()[0].clone())),
        };
        let mut out = NcPoly::zero(&target);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(&target, c.clone());
            for &l in w.letters() {
                let img = by_letter[l as usize]
                    .ok_or_else(|| FreeAlgError::MissingImage(self.alphabet.names()[l as usize].clone()))?;
                acc = acc.try_mul(img)?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }
}

impl std::ops::Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl std::ops::Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl std::ops::Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly::neg(self)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let word = (!w.is_empty()).then(|| self.alphabet.render(w));
            let (neg, body) = if c.is_one() {
                (false, word.clone().unwrap_or_else(|| "1".into()))
            } else if (-c).is_one() {
                (true, word.clone().unwrap_or_else(|| "1".into()))
            } else {
                let s = c.to_string();
                let (neg, s) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                };
                match &word {
                    Some(wd) => (neg, format!("{s}*{wd}")),
                    None => (neg, s),
                }
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_poly;
    use crate::scalars::ParamSpace;

    fn p(a: &Arc<Alphabet>, s: &str) -> NcPoly {
        parse_poly(s, a, &ParamSpace::empty()).unwrap()
    }

    #[test]
    fn expansion_of_product() {
        let a = Alphabet::new(["d", "u"]).unwrap();
        let lhs = &p(&a, "d+u") * &p(&a, "d-u");
        assert_eq!(lhs, p(&a, "d^2 - d*u + u*d - u^2"));
        let q = p(&a, "3*d*u - u");
        assert_eq!(&NcPoly::one(&a) * &q, q);
    }

    #[test]
    fn free_product_keeps_words() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let prod = &p(&a, "x^3") * &p(&a, "y*x*y");
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.degree(), Some(6));
        assert_eq!(prod.leading().unwrap().0, &a.parse_word("x^3*y*x*y").unwrap());
    }

    #[test]
    fn substitution_into_down_up_letters() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let du = Alphabet::new(["d", "u"]).unwrap();
        let mut images = HashMap::new();
        images.insert("x".to_string(), p(&du, "(1/2)*(d+u)"));
        images.insert("y".to_string(), p(&du, "(1/2)*(d-u)"));
        let got = p(&xy, "x*y").substitute(&images).unwrap();
        assert_eq!(got, p(&du, "(1/4)*(d^2 - d*u + u*d - u^2)"));

        let target = p(&xy, "2^7*(x^3*y*x^3 - y^3*x*y^3)").substitute(&images).unwrap();
        let u7 = du.parse_word("u^7").unwrap();
        assert_eq!(target.coeff(&u7), Scalar::from_int(-2));

        let mut id = HashMap::new();
        id.insert("x".to_string(), p(&xy, "x"));
        id.insert("y".to_string(), p(&xy, "y"));
        assert_eq!(p(&xy, "x").substitute(&id).unwrap(), p(&xy, "x"));
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let a = Alphabet::new(["d", "u"]).unwrap();
        let b = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(p(&a, "d").try_mul(&p(&b, "x")), Err(FreeAlgError::AlphabetMismatch));
    }
}
