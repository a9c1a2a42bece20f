//! Rewriting systems for quotients of free algebras.
//!
//! A [`Presentation`] stores monic rules `lhs -> rhs` with every word of
//! `rhs` deglex-smaller than `lhs`, so reduction always terminates.
//! Normal forms are memoized per word: for a normal word `v` only suffixes
//! of `v*x` can be reducible, so `nf(w*x) = nf(nf(w)*x)` is computed
//! prefix by prefix and every prefix result is cached.

mod builtin;
mod complete;
mod reduce;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use aho_corasick::AhoCorasick;
use thiserror::Error;

use crate::freealg::{Alphabet, FreeAlgError, NcPoly, Word};
use crate::scalars::{ParamSpace, Scalar, ScalarError};

pub use builtin::FamilyTag;
pub use complete::{CompletionBudget, Overlap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("completion budget exceeded ({rules} rules, degree {degree})")]
    CompletionBudgetExceeded { rules: usize, degree: usize },
    #[error("presentation verified only to degree {verified}, degree {needed} required")]
    IncompletePresentation { needed: usize, verified: usize },
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which algebra a presentation describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// The down-up algebra in generators `d < u`.
    DownUp { alpha: Scalar, beta: Scalar },
    /// The down-up algebra with `beta = -1` in `x = (d+u)/2`, `y = (d-u)/2`.
    DownUpXy { alpha: Scalar },
    F,
    H,
    B,
    Custom,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::DownUp { .. } => "downup",
            Family::DownUpXy { .. } => "downup_xy",
            Family::F => "F",
            Family::H => "H",
            Family::B => "B",
            Family::Custom => "custom",
        }
    }
}

/// How far confluence of the rule set has been checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Every ambiguity of every length resolves, so the rules are confluent.
    Confluent,
    /// Every ambiguity of length at most `n` resolves.
    VerifiedToDegree(usize),
    Incomplete,
    Unknown,
}

impl Completeness {
    pub fn verified_degree(&self) -> Option<usize> {
        match self {
            Completeness::Confluent => Some(usize::MAX),
            Completeness::VerifiedToDegree(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::Confluent => f.write_str("confluent"),
            Completeness::VerifiedToDegree(n) => write!(f, "verified_to_degree({n})"),
            Completeness::Incomplete => f.write_str("incomplete"),
            Completeness::Unknown => f.write_str("unknown"),
        }
    }
}

/// A monic rule `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    lhs: Word,
    rhs: NcPoly,
}

impl Rule {
    pub fn new(lhs: Word, rhs: NcPoly) -> Result<Self, RewriteError> {
        if let Some((w, _)) = rhs.leading() {
            if *w >= lhs {
                return Err(RewriteError::InvalidRule(format!(
                    "right-hand word {} is not below {}",
                    rhs.alphabet().render(w),
                    rhs.alphabet().render(&lhs)
                )));
            }
        }
        Ok(Rule { lhs, rhs })
    }

    /// Orient a nonzero relation by its deglex-greatest word.
    pub fn from_relation(rel: &NcPoly) -> Result<Self, RewriteError> {
        let (lead, c) = rel.leading().ok_or_else(|| RewriteError::InvalidRule("zero relation".into()))?;
        let lead = lead.clone();
        let k = c.inv()?.neg();
        let mut rhs = NcPoly::zero(rel.alphabet());
        for (w, x) in rel.terms() {
            if *w != lead {
                rhs.add_term(w.clone(), x.checked_mul(&k)?);
            }
        }
        Rule::new(lead, rhs)
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &NcPoly {
        &self.rhs
    }

    /// `lhs - rhs`.
    pub fn as_relation(&self) -> NcPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), Scalar::one());
        p
    }

    fn is_homogeneous(&self) -> bool {
        self.rhs.terms().all(|(w, _)| w.len() == self.lhs.len())
    }
}

type Terms = Arc<[(Word, Scalar)]>;

/// An alphabet with oriented rules; immutable once built.
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    params: Arc<ParamSpace>,
    family: Family,
    relations: Vec<NcPoly>,
    rules: Vec<Rule>,
    status: Completeness,
    matcher: Option<AhoCorasick>,
    cache: RwLock<HashMap<Word, Terms>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("family", &self.family)
            .field("alphabet", &self.alphabet.names())
            .field("rules", &self.rules.len())
            .field("status", &self.status)
            .finish()
    }
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            alphabet: self.alphabet.clone(),
            params: self.params.clone(),
            family: self.family.clone(),
            relations: self.relations.clone(),
            rules: self.rules.clone(),
            status: self.status,
            matcher: self.matcher.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl Presentation {
    /// Build from rules; left-hand sides must be distinct and no left-hand
    /// side may contain another.
    pub fn new(
        alphabet: &Arc<Alphabet>,
        params: &Arc<ParamSpace>,
        family: Family,
        relations: Vec<NcPoly>,
        rules: Vec<Rule>,
        status: Completeness,
    ) -> Result<Self, RewriteError> {
        for (i, r) in rules.iter().enumerate() {
            if r.rhs.alphabet() != alphabet {
                return Err(FreeAlgError::AlphabetMismatch.into());
            }
            if r.lhs.is_empty() {
                return Err(RewriteError::InvalidRule("empty left-hand side".into()));
            }
            for (j, s) in rules.iter().enumerate() {
                if i != j && r.lhs.contains(&s.lhs) {
                    return Err(RewriteError::InvalidRule(format!(
                        "left-hand side {} contains {}",
                        alphabet.render(&r.lhs),
                        alphabet.render(&s.lhs)
                    )));
                }
            }
        }
        let matcher = if rules.is_empty() {
            None
        } else {
            let pats: Vec<&[u8]> = rules.iter().map(|r| r.lhs.letters()).collect();
            Some(AhoCorasick::new(pats).expect("small pattern set"))
        };
        Ok(Presentation {
            alphabet: alphabet.clone(),
            params: params.clone(),
            family,
            relations,
            rules,
            status,
            matcher,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Orient each relation and inter-reduce until the left-hand sides are
    /// pairwise incomparable under the subword relation.
    pub fn from_relations(
        alphabet: &Arc<Alphabet>,
        params: &Arc<ParamSpace>,
        family: Family,
        relations: Vec<NcPoly>,
    ) -> Result<Self, RewriteError> {
        let rules = complete::interreduce(alphabet, params, relations.to_vec())?;
        Presentation::new(alphabet, params, family, relations, rules, Completeness::Unknown)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn params(&self) -> &Arc<ParamSpace> {
        &self.params
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The defining relations as given, before orientation or completion.
    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> Completeness {
        self.status
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(Rule::is_homogeneous)
    }

    pub fn max_rule_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// Fail unless confluence is known through degree `n`.
    pub fn require_degree(&self, n: usize) -> Result<(), RewriteError> {
        match self.status.verified_degree() {
            Some(v) if v >= n => Ok(()),
            v => Err(RewriteError::IncompletePresentation { needed: n, verified: v.unwrap_or(0) }),
        }
    }

    /// Parse a polynomial over this presentation's alphabet and parameters.
    pub fn parse(&self, text: &str) -> Result<NcPoly, RewriteError> {
        Ok(crate::freealg::parse_poly(text, &self.alphabet, &self.params)?)
    }

    pub fn word(&self, text: &str) -> Result<Word, RewriteError> {
        Ok(self.alphabet.parse_word(text)?)
    }

    /// Specialize every coefficient under `bindings`.
    pub fn specialize(&self, bindings: &BTreeMap<String, num_rational::BigRational>) -> Result<Self, RewriteError> {
        let sp = |p: &NcPoly| p.try_map_coeffs(|c| c.specialize(bindings));
        let relations = self.relations.iter().map(sp).collect::<Result<Vec<_>, _>>()?;
        let family = match &self.family {
            Family::DownUp { alpha, beta } => {
                Family::DownUp { alpha: alpha.specialize(bindings)?, beta: beta.specialize(bindings)? }
            }
            Family::DownUpXy { alpha } => Family::DownUpXy { alpha: alpha.specialize(bindings)? },
            f => f.clone(),
        };
        let mut rules = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            rules.push(Rule::new(r.lhs.clone(), sp(&r.rhs)?)?);
        }
        Presentation::new(&self.alphabet, &self.params, family, relations, rules, Completeness::Unknown)
    }
}
