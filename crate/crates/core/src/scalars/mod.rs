//! Exact coefficients: rationals, rational functions in declared
//! parameters, and at most one parameter bound by a monic minimal
//! polynomial (e.g. `a^2 = 2`).
//!
//! Pure rationals are stored without any parameter context so that the
//! common specialized case stays cheap. Parametric values carry the
//! [`ParamSpace`] they were built in; combining values from two different
//! spaces is an error rather than a coercion.

mod mpoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use mpoly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands come from different parameter declarations")]
    MixedAlgebraicRelations,
    #[error("denominator vanishes under the given bindings")]
    DenominatorVanishes,
    #[error("binding {0} = {1} violates the declared algebraic relation")]
    InconsistentBinding(String, String),
    #[error("invalid parameter declaration: {0}")]
    InvalidDeclaration(String),
}

/// A univariate monic minimal polynomial attached to one parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicRelation {
    param: usize,
    /// Coefficients from the constant term up; the last entry is 1.
    minpoly: Vec<BigRational>,
}

impl AlgebraicRelation {
    pub fn param(&self) -> usize {
        self.param
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// The set of parameter names scalars may mention in one session.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ParamSpace {
    names: Vec<String>,
    relation: Option<AlgebraicRelation>,
}

impl ParamSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, ScalarError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(ScalarError::InvalidDeclaration(format!("bad or repeated name {n:?}")));
            }
        }
        Ok(Arc::new(ParamSpace { names, relation: None }))
    }

    /// Declare `param` algebraic with the given monic minimal polynomial,
    /// coefficients listed from the constant term up.
    pub fn with_relation<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        param: &str,
        minpoly: Vec<BigRational>,
    ) -> Result<Arc<Self>, ScalarError> {
        let base = Self::new(names)?;
        let idx = base
            .index_of(param)
            .ok_or_else(|| ScalarError::InvalidDeclaration(format!("unknown parameter {param}")))?;
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(ScalarError::InvalidDeclaration("minimal polynomial must be monic of degree >= 1".into()));
        }
        Ok(Arc::new(ParamSpace {
            names: base.names.clone(),
            relation: Some(AlgebraicRelation { param: idx, minpoly }),
        }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(ParamSpace { names: vec![], relation: None })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relation(&self) -> Option<&AlgebraicRelation> {
        self.relation.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn without_relation(&self) -> Arc<ParamSpace> {
        Arc::new(ParamSpace { names: self.names.clone(), relation: None })
    }
}

#[derive(Clone, Debug)]
struct Frac {
    space: Arc<ParamSpace>,
    num: MPoly,
    den: MPoly,
}

#[derive(Clone, Debug)]
enum Repr {
    Rat(BigRational),
    Frac(Arc<Frac>),
}

/// An exact field element in canonical form.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rat(BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Rat(BigRational::from_integer(n.into())))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar(Repr::Rat(BigRational::new(n.into(), d.into())))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar(Repr::Rat(q))
    }

    /// The parameter `name` of `space` as a scalar.
    pub fn param(space: &Arc<ParamSpace>, name: &str) -> Option<Self> {
        let idx = space.index_of(name)?;
        let num = MPoly::var(space.nvars(), idx);
        Some(Self::canonical(space.clone(), num, MPoly::one(space.nvars())).expect("nonzero denominator"))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(q) => q.is_zero(),
            Repr::Frac(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    /// The rational value, when no parameter survives.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Frac(_) => None,
        }
    }

    pub fn space(&self) -> Option<&Arc<ParamSpace>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Frac(f) => Some(&f.space),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_negative())
    }

    fn parts(&self, space: &Arc<ParamSpace>) -> (MPoly, MPoly) {
        match &self.0 {
            Repr::Rat(q) => {
                let n = space.nvars();
                (
                    MPoly::constant(n, BigRational::from_integer(q.numer().clone())),
                    MPoly::constant(n, BigRational::from_integer(q.denom().clone())),
                )
            }
            Repr::Frac(f) => (f.num.clone(), f.den.clone()),
        }
    }

    fn common_space(&self, rhs: &Scalar) -> Result<Option<Arc<ParamSpace>>, ScalarError> {
        match (self.space(), rhs.space()) {
            (None, None) => Ok(None),
            (Some(s), None) | (None, Some(s)) => Ok(Some(s.clone())),
            (Some(a), Some(b)) => {
                if Arc::ptr_eq(a, b) || a == b {
                    Ok(Some(a.clone()))
                } else {
                    Err(ScalarError::MixedAlgebraicRelations)
                }
            }
        }
    }

    /// Build the canonical form of `num/den` in `space`.
    fn canonical(space: Arc<ParamSpace>, num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (mut num, mut den) = (num, den);
        if let Some(rel) = space.relation.clone() {
            num = reduce_mod_relation(&num, &rel);
            den = reduce_mod_relation(&den, &rel);
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            if den.involves(rel.param) {
                let (n2, d2) = rationalize(&space, &num, &den, &rel)?;
                num = n2;
                den = d2;
            }
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let g = mpoly::gcd(&num, &den);
        if g.as_constant().is_none() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let lc = den.leading().unwrap().1.clone();
        num = num.scale(&lc.recip());
        den = den.scale(&lc.recip());
        if let (Some(n), Some(d)) = (num.as_constant(), den.as_constant()) {
            return Ok(Scalar(Repr::Rat(n / d)));
        }
        Ok(Scalar(Repr::Frac(Arc::new(Frac { space, num, den }))))
    }

    pub fn arith(&self, rhs: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &rhs.0) {
            return Ok(Scalar(Repr::Rat(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => {
                    if b.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    a / b
                }
            })));
        }
        let space = self.common_space(rhs)?.expect("at least one parametric operand");
        let (an, ad) = self.parts(&space);
        let (bn, bd) = rhs.parts(&space);
        let (num, den) = match op {
            ArithOp::Add => (an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd)),
            ArithOp::Sub => (an.mul(&bd).sub(&bn.mul(&ad)), ad.mul(&bd)),
            ArithOp::Mul => (an.mul(&bn), ad.mul(&bd)),
            ArithOp::Div => {
                if rhs.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                (an.mul(&bd), ad.mul(&bn))
            }
        };
        Self::canonical(space, num, den)
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(rhs, ArithOp::Add)
    }
    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(rhs, ArithOp::Sub)
    }
    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(rhs, ArithOp::Mul)
    }
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(rhs, ArithOp::Div)
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Rat(q) => Scalar(Repr::Rat(-q)),
            Repr::Frac(f) => Scalar(Repr::Frac(Arc::new(Frac {
                space: f.space.clone(),
                num: f.num.neg(),
                den: f.den.clone(),
            }))),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replace bound parameters by rational values.
    pub fn specialize(&self, bindings: &BTreeMap<String, BigRational>) -> Result<Scalar, ScalarError> {
        let f = match &self.0 {
            Repr::Rat(_) => return Ok(self.clone()),
            Repr::Frac(f) => f,
        };
        let values: Vec<Option<BigRational>> = f.space.names.iter().map(|n| bindings.get(n).cloned()).collect();
        if let Some(rel) = &f.space.relation {
            if let Some(v) = &values[rel.param] {
                let mut acc = BigRational::zero();
                for c in rel.minpoly.iter().rev() {
                    acc = acc * v + c;
                }
                if !acc.is_zero() {
                    return Err(ScalarError::InconsistentBinding(f.space.names[rel.param].clone(), v.to_string()));
                }
            }
        }
        let num = f.num.substitute(&values);
        let den = f.den.substitute(&values);
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Self::canonical(f.space.clone(), num, den)
    }

    /// Write with explicit parameter names; used by `Display`.
    fn render(&self) -> String {
        match &self.0 {
            Repr::Rat(q) => q.to_string(),
            Repr::Frac(f) => {
                let n = mpoly::render(&f.num, &f.space.names);
                let many = f.num.terms().count() > 1;
                let n = if many { format!("({n})") } else { n };
                if f.den.as_constant().is_some_and(|c| c.is_one()) {
                    n
                } else {
                    let d = mpoly::render(&f.den, &f.space.names);
                    let n = if many { n } else { format!("({n})") };
                    format!("{n}/({d})")
                }
            }
        }
    }

    /// True for a single term with coefficient +1 or a plain rational,
    /// i.e. when the rendering needs no surrounding parentheses.
    pub fn renders_atomic(&self) -> bool {
        match &self.0 {
            Repr::Rat(_) => true,
            Repr::Frac(f) => f.num.terms().count() == 1 && f.den.as_constant().is_some_and(|c| c.is_one()),
        }
    }
}

fn reduce_mod_relation(p: &MPoly, rel: &AlgebraicRelation) -> MPoly {
    let deg = rel.degree();
    if (p.degree_in(rel.param) as usize) < deg {
        return p.clone();
    }
    let mut coeffs = p.to_univariate(rel.param);
    for k in (deg..coeffs.len()).rev() {
        let top = std::mem::replace(&mut coeffs[k], MPoly::zero(p.nvars()));
        if top.is_zero() {
            continue;
        }
        for (i, m) in rel.minpoly[..deg].iter().enumerate() {
            let idx = k - deg + i;
            coeffs[idx] = coeffs[idx].sub(&top.scale(m));
        }
    }
    coeffs.truncate(deg);
    MPoly::from_univariate(rel.param, &coeffs)
}

/// Move the algebraic parameter out of the denominator by inverting it
/// modulo the minimal polynomial over the field of the other parameters.
fn rationalize(
    space: &Arc<ParamSpace>,
    num: &MPoly,
    den: &MPoly,
    rel: &AlgebraicRelation,
) -> Result<(MPoly, MPoly), ScalarError> {
    let plain = space.without_relation();
    let n = space.nvars();
    let lift = |p: &MPoly| -> Scalar {
        Scalar::canonical(plain.clone(), p.clone(), MPoly::one(n)).expect("unit denominator")
    };
    let den_u: Vec<Scalar> = den.to_univariate(rel.param).iter().map(lift).collect();
    let m_u: Vec<Scalar> = rel.minpoly.iter().map(|c| Scalar::from_rational(c.clone())).collect();
    let inv = uni_inverse_mod(&den_u, &m_u).ok_or(ScalarError::DivisionByZero)?;
    // inv = sum c_i p^i with c_i rational functions free of p
    let mut common = MPoly::one(n);
    for c in &inv {
        let (_, d) = c.parts(&plain);
        let g = mpoly::gcd(&common, &d);
        common = common.mul(&d.div_exact(&g).unwrap());
    }
    let mut inv_num = Vec::with_capacity(inv.len());
    for c in &inv {
        let (cn, cd) = c.parts(&plain);
        inv_num.push(cn.mul(&common.div_exact(&cd).unwrap()));
    }
    let inv_poly = MPoly::from_univariate(rel.param, &inv_num);
    let new_num = reduce_mod_relation(&num.mul(&inv_poly), rel);
    Ok((new_num, common))
}

fn uni_trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn uni_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = uni_trim(b.to_vec());
    let mut r = uni_trim(a.to_vec());
    let db = b.len() - 1;
    let lc_inv = b[db].inv().expect("trimmed leading coefficient");
    let mut q = vec![Scalar::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lc_inv;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&c * bc);
        }
        q[k] = c;
        r.pop();
        r = uni_trim(r);
    }
    (q, r)
}

fn uni_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    uni_trim(out)
}

fn uni_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Scalar::zero);
            let y = b.get(i).cloned().unwrap_or_else(Scalar::zero);
            &x - &y
        })
        .collect();
    uni_trim(out)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// if they share a factor.
fn uni_inverse_mod(a: &[Scalar], m: &[Scalar]) -> Option<Vec<Scalar>> {
    let (mut r0, mut r1) = (uni_trim(m.to_vec()), uni_divrem(a, m).1);
    let (mut t0, mut t1): (Vec<Scalar>, Vec<Scalar>) = (vec![], vec![Scalar::one()]);
    while !r1.is_empty() {
        let (q, r) = uni_divrem(&r0, &r1);
        let t = uni_sub(&t0, &uni_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].inv().ok()?;
    Some(t0.iter().map(|x| x * &c).collect())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Frac(a), Repr::Frac(b)) => {
                (Arc::ptr_eq(&a.space, &b.space) || a.space == b.space) && a.num == b.num && a.den == b.den
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Rat(q) => q.hash(state),
            Repr::Frac(f) => {
                f.num.hash(state);
                f.den.hash(state);
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }
}

// Operator sugar. These panic on errors that `arith` would report; use the
// checked forms where operands may come from different declarations.
macro_rules! impl_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.arith(rhs, $op).unwrap_or_else(|e| panic!("scalar arithmetic: {e}"))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_op!(Add, add, ArithOp::Add);
impl_op!(Sub, sub, ArithOp::Sub);
impl_op!(Mul, mul, ArithOp::Mul);
impl_op!(Div, div, ArithOp::Div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn alpha_space() -> Arc<ParamSpace> {
        ParamSpace::new(["alpha", "beta"]).unwrap()
    }

    fn sqrt2_space() -> Arc<ParamSpace> {
        ParamSpace::with_relation(["a"], "a", vec![q(-2, 1), q(0, 1), q(1, 1)]).unwrap()
    }

    #[test]
    fn half_times_half() {
        let h = Scalar::from_ratio(1, 2);
        assert_eq!(&h * &h, Scalar::from_ratio(1, 4));
    }

    #[test]
    fn algebraic_square_collapses() {
        let s = sqrt2_space();
        let a = Scalar::param(&s, "a").unwrap();
        assert_eq!(&a * &a, Scalar::from_int(2));
        let diff = &(&a * &a) - &Scalar::from_int(2);
        assert!(diff.is_zero());
    }

    #[test]
    fn additive_inverse_is_zero() {
        let s = alpha_space();
        let al = Scalar::param(&s, "alpha").unwrap();
        let x = &al / &(&Scalar::from_int(2) - &al);
        let y = &(-&al) / &(&Scalar::from_int(2) - &al);
        assert!((&x + &y).is_zero());
    }

    #[test]
    fn fractions_reduce() {
        let s = alpha_space();
        let al = Scalar::param(&s, "alpha").unwrap();
        let two = Scalar::from_int(2);
        let num = &(&al * &al) - &(&two * &al); // alpha^2 - 2 alpha
        let den = &al - &two;
        assert_eq!(&num / &den, al);
    }

    #[test]
    fn specialization_and_vanishing_denominator() {
        let s = alpha_space();
        let al = Scalar::param(&s, "alpha").unwrap();
        let x = Scalar::one() / (&Scalar::from_int(2) - &al);
        let mut b = BTreeMap::new();
        b.insert("alpha".to_string(), q(0, 1));
        assert_eq!(x.specialize(&b).unwrap(), Scalar::from_ratio(1, 2));
        b.insert("alpha".to_string(), q(2, 1));
        assert_eq!(x.specialize(&b), Err(ScalarError::DenominatorVanishes));
        let beta = Scalar::param(&s, "beta").unwrap();
        let mut b = BTreeMap::new();
        b.insert("beta".to_string(), q(-1, 1));
        assert_eq!(beta.specialize(&b).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn zero_tests() {
        assert!(Scalar::zero().is_zero());
        let s = alpha_space();
        assert!(!Scalar::param(&s, "beta").unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_and_mixed_spaces() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        let a = Scalar::param(&alpha_space(), "alpha").unwrap();
        let b = Scalar::param(&sqrt2_space(), "a").unwrap();
        assert_eq!(a.checked_add(&b), Err(ScalarError::MixedAlgebraicRelations));
    }

    #[test]
    fn algebraic_denominator_is_rationalized() {
        let s = sqrt2_space();
        let a = Scalar::param(&s, "a").unwrap();
        let one = Scalar::one();
        // 1/(1+a) = a - 1 when a^2 = 2
        let x = &one / &(&one + &a);
        assert_eq!(x, &a - &one);
        assert_eq!(&x * &(&one + &a), one);
    }

    #[test]
    fn rendering() {
        let s = ParamSpace::new(["a"]).unwrap();
        let a = Scalar::param(&s, "a").unwrap();
        let two = Scalar::from_int(2);
        let p = &(&(&two * &a.pow(5)) * &Scalar::from_int(-1)) - &Scalar::from_int(6);
        assert_eq!(p.to_string(), "(-2*a^5 - 6)");
        assert_eq!(Scalar::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!((&Scalar::one() / &(&two - &a)).to_string(), "(-1)/(a - 2)");
    }
}
