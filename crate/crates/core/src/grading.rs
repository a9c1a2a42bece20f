//! Group gradings of presented algebras.
//!
//! The G-degree of a word is the product of its letter degrees taken left
//! to right, so the degree of a right subword (suffix) `f_j..f_1` is the
//! product of the last `j` letter degrees in order.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::freealg::{Alphabet, NcPoly, Word};
use crate::groups::{FiniteGroup, GroupElement, GroupError};
use crate::rewrite::{Family, Presentation, RewriteError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("no degree assigned to generator {0}")]
    MissingGenerator(String),
    #[error("degree assigned to unknown generator {0}")]
    UnknownGenerator(String),
    #[error("closed-form codeterminant unavailable for family {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// An assignment of group elements to generators.
#[derive(Debug, Clone)]
pub struct Grading {
    group: Arc<FiniteGroup>,
    alphabet: Arc<Alphabet>,
    degrees: Vec<GroupElement>,
}

/// A relation whose monomials do not share one G-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    /// `(monomial, degree name)` for every monomial of the relation.
    pub degrees: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub inner_faithful: bool,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Grading {
    /// `assignment` maps generator names to group element names.
    pub fn new(
        alphabet: &Arc<Alphabet>,
        group: &Arc<FiniteGroup>,
        assignment: &BTreeMap<String, String>,
    ) -> Result<Grading, GradingError> {
        for k in assignment.keys() {
            if alphabet.index_of(k).is_none() {
                return Err(GradingError::UnknownGenerator(k.clone()));
            }
        }
        let degrees = alphabet
            .names()
            .iter()
            .map(|n| {
                let e = assignment.get(n).ok_or_else(|| GradingError::MissingGenerator(n.clone()))?;
                Ok(group.element(e)?)
            })
            .collect::<Result<Vec<_>, GradingError>>()?;
        Ok(Grading { group: group.clone(), alphabet: alphabet.clone(), degrees })
    }

    pub fn from_elements(alphabet: &Arc<Alphabet>, group: &Arc<FiniteGroup>, degrees: Vec<GroupElement>) -> Self {
        assert_eq!(degrees.len(), alphabet.len(), "one degree per generator");
        Grading { group: group.clone(), alphabet: alphabet.clone(), degrees }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Degree of the generator at `letter`.
    pub fn letter_degree(&self, letter: u8) -> GroupElement {
        self.degrees[letter as usize]
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn word_degree(&self, w: &Word) -> GroupElement {
        w.letters().iter().fold(self.group.identity(), |acc, &l| self.group.mul(acc, self.degrees[l as usize]))
    }

    /// Degrees of all suffixes, from the empty suffix to the whole word.
    pub fn suffix_degrees(&self, w: &Word) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut acc = self.group.identity();
        out.push(acc);
        for &l in w.letters().iter().rev() {
            acc = self.group.mul(self.degrees[l as usize], acc);
            out.push(acc);
        }
        out
    }

    pub fn name(&self, g: GroupElement) -> &str {
        self.group.name(g)
    }

    pub fn is_inner_faithful(&self) -> bool {
        self.group.subgroup_generated(&self.degrees).len() == self.group.order()
    }

    /// G-degree of a polynomial if all its words share one.
    pub fn poly_degree(&self, p: &NcPoly) -> Option<GroupElement> {
        let mut degs = p.terms().map(|(w, _)| self.word_degree(w));
        let first = degs.next()?;
        degs.all(|g| g == first).then_some(first)
    }
}

/// Check that every defining relation is G-homogeneous.
pub fn validate_grading(pres: &Presentation, grading: &Grading) -> Validation {
    let mut violations = Vec::new();
    for rel in pres.relations() {
        let degrees: Vec<(String, String)> = rel
            .terms()
            .rev()
            .map(|(w, _)| (pres.alphabet().render(w), grading.name(grading.word_degree(w)).to_string()))
            .collect();
        if degrees.windows(2).any(|p| p[0].1 != p[1].1) {
            violations.push(Violation { relation: rel.to_string(), degrees });
        }
    }
    Validation { violations, inner_faithful: grading.is_inner_faithful() }
}

/// Normal words of length `n` grouped by G-degree.
pub fn components(pres: &Presentation, grading: &Grading, n: usize) -> Result<BTreeMap<GroupElement, Vec<Word>>, GradingError> {
    pres.require_degree(n)?;
    let mut out: BTreeMap<GroupElement, Vec<Word>> = BTreeMap::new();
    for w in pres.normal_words(n) {
        out.entry(grading.word_degree(&w)).or_default().push(w);
    }
    Ok(out)
}

/// Normal words of bidegree `(n, g)`, ascending.
pub fn component_basis(
    pres: &Presentation,
    grading: &Grading,
    n: usize,
    g: GroupElement,
) -> Result<Vec<Word>, GradingError> {
    Ok(components(pres, grading, n)?.remove(&g).unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hdet {
    pub element: GroupElement,
    pub trivial: bool,
    /// The closed form used, e.g. `g1^2*g2^2`.
    pub formula: &'static str,
}

/// Closed-form homological codeterminant.
pub fn hdet(pres: &Presentation, grading: &Grading) -> Result<Hdet, GradingError> {
    let g = grading.group();
    let (g1, g2) = (grading.letter_degree(0), grading.letter_degree(1));
    let (element, formula) = match pres.family() {
        Family::DownUp { alpha, .. } if alpha.is_zero() => (g.mul(g.pow(g1, 2), g.pow(g2, 2)), "g1^2*g2^2"),
        Family::F | Family::H | Family::DownUpXy { .. } => (g.pow(g1, 4), "g1^4"),
        other => return Err(GradingError::UnsupportedFamily(other.tag().to_string())),
    };
    Ok(Hdet { element, trivial: element == g.identity(), formula })
}

/// The terms of the graded free resolution of the trivial module: each
/// entry is `(sign, degree shift, G-shift h)` for a summand `A(h)`, with
/// `A(h)_(n, g) = A_(n - shift, g h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionShape {
    pub terms: Vec<(i64, usize, GroupElement)>,
}

impl ResolutionShape {
    /// `0 -> A(g1^-2 g2^-2) -> A(g1^-1 g2^-2) + A(g1^-2 g2^-1) -> A(g1^-1) + A(g2^-1) -> A`.
    pub fn downup(grading: &Grading) -> Self {
        let g = grading.group();
        let (a, b) = (g.inv(grading.letter_degree(0)), g.inv(grading.letter_degree(1)));
        let m = |x: GroupElement, y: GroupElement| g.mul(x, y);
        ResolutionShape {
            terms: vec![
                (1, 0, g.identity()),
                (-1, 1, a),
                (-1, 1, b),
                (1, 3, m(a, m(b, b))),
                (1, 3, m(m(a, a), b)),
                (-1, 4, m(m(a, a), m(b, b))),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCheck {
    pub ok: bool,
    /// First `(n, g, alternating sum)` that differs from the trivial module.
    pub failure: Option<(usize, String, i64)>,
}

/// Alternating-sum check of the resolution through degree `max_n`.
pub fn verify_resolution_euler(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<EulerCheck, GradingError> {
    match pres.family() {
        Family::DownUp { .. } => {}
        other => return Err(GradingError::UnsupportedFamily(other.tag().to_string())),
    }
    verify_resolution_euler_with(pres, grading, max_n, &ResolutionShape::downup(grading))
}

pub fn verify_resolution_euler_with(
    pres: &Presentation,
    grading: &Grading,
    max_n: usize,
    shape: &ResolutionShape,
) -> Result<EulerCheck, GradingError> {
    let g = grading.group();
    let dims: Vec<BTreeMap<GroupElement, usize>> = (0..=max_n)
        .into_par_iter()
        .map(|n| Ok(components(pres, grading, n)?.into_iter().map(|(k, v)| (k, v.len())).collect()))
        .collect::<Result<_, GradingError>>()?;
    let dim = |n: usize, x: GroupElement| dims[n].get(&x).copied().unwrap_or(0) as i64;
    for n in 0..=max_n {
        for x in g.elements() {
            let mut sum = 0;
            for &(sign, shift, h) in &shape.terms {
                if shift <= n {
                    sum += sign * dim(n - shift, g.mul(x, h));
                }
            }
            let expected = i64::from(n == 0 && x == g.identity());
            if sum != expected {
                return Ok(EulerCheck { ok: false, failure: Some((n, g.name(x).to_string(), sum)) });
            }
        }
    }
    Ok(EulerCheck { ok: true, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ParamSpace, Scalar};

    fn assign(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn downup(alpha: i64, beta: i64) -> Presentation {
        Presentation::downup(&ParamSpace::empty(), Scalar::from_int(alpha), Scalar::from_int(beta)).unwrap()
    }

    fn dihedral_grading(p: &Presentation, n: usize) -> Grading {
        let g = Arc::new(FiniteGroup::dihedral(n).unwrap());
        Grading::new(p.alphabet(), &g, &assign(&[("d", "a"), ("u", "b")])).unwrap()
    }

    #[test]
    fn validation_examples() {
        let p = downup(0, 1);
        let gr = dihedral_grading(&p, 3);
        let v = validate_grading(&p, &gr);
        assert!(v.is_valid() && v.inner_faithful);

        let bad = downup(1, 1);
        let v = validate_grading(&bad, &dihedral_grading(&bad, 3));
        assert_eq!(v.violations.len(), 2);
        let degs: Vec<&str> = v.violations[0].degrees.iter().map(|(_, d)| d.as_str()).collect();
        assert_eq!(degs.len(), 3);
        assert_ne!(degs[0], degs[1]);
    }

    #[test]
    fn f_rejects_dihedral_six_grading() {
        let f = Presentation::f();
        let g = Arc::new(FiniteGroup::dihedral(3).unwrap());
        let gr = Grading::new(f.alphabet(), &g, &assign(&[("x", "a"), ("y", "b")])).unwrap();
        assert!(!validate_grading(&f, &gr).is_valid());
    }

    #[test]
    fn word_degree_is_a_homomorphism() {
        let p = downup(0, 1);
        let gr = dihedral_grading(&p, 4);
        let g = gr.group().clone();
        assert_eq!(gr.word_degree(&p.word("d*u").unwrap()), g.element("ab").unwrap());
        assert_eq!(gr.word_degree(&Word::empty()), g.identity());
        let (v, w) = (p.word("d*u*u*d").unwrap(), p.word("u*d*d").unwrap());
        assert_eq!(gr.word_degree(&v.concat(&w)), g.mul(gr.word_degree(&v), gr.word_degree(&w)));
        let sd = gr.suffix_degrees(&p.word("d*u").unwrap());
        assert_eq!(sd, vec![g.identity(), g.element("b").unwrap(), g.element("ab").unwrap()]);
    }

    #[test]
    fn component_examples() {
        let p = downup(0, 1);
        let gr = dihedral_grading(&p, 2);
        let one = gr.group().identity();
        let names: Vec<String> = component_basis(&p, &gr, 2, one).unwrap().iter().map(|w| p.alphabet().render(w)).collect();
        assert_eq!(names, ["d^2", "u^2"]);
        assert_eq!(component_basis(&p, &gr, 0, one).unwrap(), vec![Word::empty()]);
        let a = gr.group().element("a").unwrap();
        assert!(component_basis(&p, &gr, 0, a).unwrap().is_empty());
        for n in 0..8 {
            let total: usize = components(&p, &gr, n).unwrap().values().map(Vec::len).sum();
            assert_eq!(total, p.dim_component(n).unwrap());
        }
    }

    #[test]
    fn codeterminants() {
        let p = downup(0, 1);
        for n in 2..=4 {
            let gr = dihedral_grading(&p, n);
            let h = hdet(&p, &gr).unwrap();
            assert!(h.trivial);
            assert_eq!(h.element, gr.word_degree(&p.word("d^2*u^2").unwrap()));
        }
        let q = Arc::new(FiniteGroup::quaternion8());
        let gr = Grading::new(p.alphabet(), &q, &assign(&[("d", "i"), ("u", "k")])).unwrap();
        assert!(hdet(&p, &gr).unwrap().trivial);

        let f = Presentation::f();
        let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let gr = Grading::new(f.alphabet(), &z4, &assign(&[("x", "1"), ("y", "3")])).unwrap();
        assert!(hdet(&f, &gr).unwrap().trivial);

        let general = downup(1, 1);
        let z1 = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let gr = Grading::new(general.alphabet(), &z1, &assign(&[("d", "0"), ("u", "0")])).unwrap();
        assert!(matches!(hdet(&general, &gr), Err(GradingError::UnsupportedFamily(_))));
    }

    #[test]
    fn euler_check_and_corruption() {
        let p = downup(0, 1);
        let gr = dihedral_grading(&p, 2);
        assert!(verify_resolution_euler(&p, &gr, 10).unwrap().ok);
        let mut shape = ResolutionShape::downup(&gr);
        shape.terms[1].2 = gr.group().inv(gr.letter_degree(1));
        let bad = verify_resolution_euler_with(&p, &gr, 4, &shape).unwrap();
        assert!(!bad.ok);
        assert!(bad.failure.unwrap().0 <= 4);
    }

    #[test]
    fn missing_and_unknown_generators() {
        let p = downup(0, 1);
        let g = Arc::new(FiniteGroup::dihedral(2).unwrap());
        assert!(matches!(Grading::new(p.alphabet(), &g, &assign(&[("d", "a")])), Err(GradingError::MissingGenerator(_))));
        assert!(matches!(
            Grading::new(p.alphabet(), &g, &assign(&[("d", "a"), ("u", "b"), ("z", "a")])),
            Err(GradingError::UnknownGenerator(_))
        ));
        assert!(Grading::new(p.alphabet(), &g, &assign(&[("d", "a"), ("u", "q")])).is_err());
    }
}
