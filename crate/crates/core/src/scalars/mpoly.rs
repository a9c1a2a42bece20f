//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are exponent vectors of a fixed length (one slot per declared
//! parameter) and are ordered lexicographically with variable 0 dominant.
//! The gcd is the recursive primitive-PRS algorithm, which is all the
//! scalar layer needs to keep fractions reduced.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exps, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    fn main_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.involves(v))
    }

    /// Exact division; `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &MPoly) -> Option<MPoly> {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let (le, lc) = rhs.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exps = re.iter().zip(&le).map(|(a, b)| a - b).collect();
            let c = rc / &lc;
            let mono = MPoly::from_terms(self.nvars, [(e, c)]);
            rem = rem.sub(&mono.mul(rhs));
            quot = quot.add(&mono);
        }
        Some(quot)
    }

    /// Evaluate the given variables, keeping the slot layout.
    pub fn substitute(&self, values: &[Option<BigRational>]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = e.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(val) = val {
                    if e[v] > 0 {
                        coeff *= num_traits::pow(val.clone(), e[v] as usize);
                    }
                    ne[v] = 0;
                }
            }
            out.add_term(ne, coeff);
        }
        out
    }

    /// Coefficients as a univariate polynomial in `var` (index = power).
    pub fn to_univariate(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut ne = e.clone();
            ne[var] = 0;
            coeffs[k].add_term(ne, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(var: usize, coeffs: &[MPoly]) -> MPoly {
        let nvars = coeffs.first().map(|c| c.nvars).unwrap_or(0);
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut ne = e.clone();
                ne[var] += k as u32;
                out.add_term(ne, x.clone());
            }
        }
        out
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

}

fn uni_is_zero(p: &[MPoly]) -> bool {
    p.iter().all(MPoly::is_zero)
}

fn uni_trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials with
/// polynomial coefficients.
fn uni_prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let b = uni_trim(b.to_vec());
    let mut r = uni_trim(a.to_vec());
    let db = b.len() - 1;
    let lcb = b[db].clone();
    while !uni_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(&lcb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lcr));
        }
        next.pop();
        r = uni_trim(next);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let nvars = coeffs[0].nvars;
    let mut g = MPoly::zero(nvars);
    for c in coeffs {
        g = gcd(&g, c);
        if g.as_constant().is_some_and(|k| !k.is_zero()) {
            return MPoly::one(nvars);
        }
    }
    g
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let nvars = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MPoly::one(nvars);
    }
    let var = match (a.main_var(), b.main_var()) {
        (Some(x), Some(y)) => x.min(y),
        _ => return MPoly::one(nvars),
    };
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    let ca = content(&ua);
    let cb = content(&ub);
    let cont = gcd(&ca, &cb);
    let prim = |u: &[MPoly], c: &MPoly| -> Vec<MPoly> {
        u.iter().map(|x| x.div_exact(c).expect("content divides coefficients")).collect()
    };
    let mut p = prim(&ua, &ca);
    let mut q = prim(&ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !uni_is_zero(&q) {
        if q.len() == 1 {
            // nonzero constant in `var`: primitive part is a unit
            p = vec![MPoly::one(nvars)];
            break;
        }
        let r = uni_prem(&p, &q);
        p = q;
        if uni_is_zero(&r) {
            q = vec![MPoly::zero(nvars)];
        } else {
            let c = content(&r);
            q = normalize_uni(prim(&r, &c));
        }
    }
    let c = content(&p);
    let pp = MPoly::from_univariate(var, &prim(&p, &c));
    pp.mul(&cont).monic()
}

/// Rescale a univariate polynomial by one rational so that its coefficients
/// are integral with unit content; keeps PRS coefficient growth in check.
fn normalize_uni(q: Vec<MPoly>) -> Vec<MPoly> {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for c in q.iter().flat_map(|p| p.terms.values()) {
        den_lcm = den_lcm.lcm(c.denom());
    }
    for c in q.iter().flat_map(|p| p.terms.values()) {
        num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
    }
    if num_gcd.is_zero() {
        return q;
    }
    let factor = BigRational::new(den_lcm, num_gcd);
    q.into_iter().map(|c| c.scale(&factor)).collect()
}

/// Render with the given variable names, highest term first.
pub(crate) fn render(p: &MPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{}", names[v], k) })
            .collect();
        if mono.is_empty() {
            write!(out, "{}", abs).unwrap();
        } else {
            if !abs.is_one() {
                write!(out, "{}*", abs).unwrap();
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (a - 2)(a + b) and (a - 2) b
        let a = MPoly::var(2, 0);
        let b = MPoly::var(2, 1);
        let f = a.sub(&MPoly::constant(2, q(2)));
        let p = f.mul(&a.add(&b));
        let r = f.mul(&b);
        assert_eq!(gcd(&p, &r), f);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = MPoly::var(1, 0);
        let p = a.mul(&a).sub(&MPoly::constant(1, q(2)));
        let r = a.add(&MPoly::one(1));
        assert_eq!(gcd(&p, &r), MPoly::one(1));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = MPoly::var(1, 0);
        let sq = a.mul(&a);
        assert_eq!(sq.div_exact(&a), Some(a.clone()));
        assert_eq!(a.div_exact(&sq), None);
    }
}
