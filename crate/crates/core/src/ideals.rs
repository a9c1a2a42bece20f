//! Truncated computation of `A*A_g`, their intersection, and the two-sided
//! ideal `J` it generates, plus certificates for high-degree membership.
//!
//! Everything is bigraded, so each computation runs one N-degree at a time
//! inside the span of normal words of that degree. The left ideal `A*A_g`
//! satisfies `(A A_g)_n = A_(n,g) + sum_x x (A A_g)_(n-1)`, and `J` satisfies
//! `J_n = I_n + sum_x (x J_(n-1) + J_(n-1) x)` where `I` is the intersection.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactla::{intersect, Ambient, LaError, Membership, SpanBasis};
use crate::freealg::{NcPoly, Word};
use crate::grading::{Grading, GradingError};
use crate::groups::GroupElement;
use crate::rewrite::{Presentation, RewriteError};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    La(#[from] LaError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("degree {0} is beyond the truncation")]
    BeyondTruncation(usize),
    #[error("polynomial is not N-homogeneous")]
    NotHomogeneous,
    #[error("factors {0} and {1} of a commuting block do not commute")]
    NotCommuting(String, String),
    #[error("commuting block has too many exponent choices")]
    BlockTooLarge,
}

/// Where a pivot of `J_n` came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// A basis element of the intersection of the `A*A_g`.
    Intersection,
    /// `x * f` for the row of `J_(n-1)` with the given pivot.
    Left { letter: u8, pivot: Word },
    /// `f * x`.
    Right { pivot: Word, letter: u8 },
}

/// Ambient spaces of normal words, one per degree `0..=max_n`.
pub fn ambients(pres: &Presentation, max_n: usize) -> Result<Vec<Arc<Ambient>>, IdealError> {
    pres.require_degree(max_n)?;
    Ok((0..=max_n).into_par_iter().map(|n| Ambient::new(pres.alphabet(), pres.normal_words(n))).collect())
}

fn word_poly(pres: &Presentation, w: &Word) -> NcPoly {
    NcPoly::word(pres.alphabet(), w.clone())
}

/// `(A*A_g)_n` for `n = 0..=max_n`.
fn left_ideal_layers(
    pres: &Presentation,
    grading: &Grading,
    g: GroupElement,
    amb: &[Arc<Ambient>],
) -> Result<Vec<SpanBasis>, IdealError> {
    let mut layers: Vec<SpanBasis> = Vec::with_capacity(amb.len());
    for (n, a) in amb.iter().enumerate() {
        let mut s = SpanBasis::empty(a);
        for w in a.columns().iter().filter(|w| grading.word_degree(w) == g) {
            s.insert(&word_poly(pres, w))?;
        }
        if n > 0 && !s.is_full() {
            'outer: for f in layers[n - 1].basis() {
                for x in 0..pres.alphabet().len() as u8 {
                    if s.is_full() {
                        break 'outer;
                    }
                    s.insert(&pres.normal_form(&(&word_poly(pres, &Word::from(vec![x])) * &f)))?;
                }
            }
        }
        layers.push(s);
    }
    Ok(layers)
}

/// `(A*A_g)_n`: span of `nf(m*w)` with `w` of bidegree `(j, g)`.
pub fn left_component(pres: &Presentation, grading: &Grading, g: GroupElement, n: usize) -> Result<SpanBasis, IdealError> {
    let amb = ambients(pres, n)?;
    Ok(left_ideal_layers(pres, grading, g, &amb)?.pop().expect("at least degree 0"))
}

/// `(intersection over g of A*A_g)_n` for `n = 0..=max_n`.
pub fn intersection_generators(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<Vec<SpanBasis>, IdealError> {
    let amb = ambients(pres, max_n)?;
    intersection_with(pres, grading, &amb)
}

fn intersection_with(pres: &Presentation, grading: &Grading, amb: &[Arc<Ambient>]) -> Result<Vec<SpanBasis>, IdealError> {
    let elems: Vec<GroupElement> = grading.group().elements().collect();
    let per_g: Vec<Vec<SpanBasis>> =
        elems.par_iter().map(|&g| left_ideal_layers(pres, grading, g, amb)).collect::<Result<_, _>>()?;
    (0..amb.len())
        .into_par_iter()
        .map(|n| {
            let spans: Vec<SpanBasis> = per_g.iter().map(|layers| layers[n].clone()).collect();
            Ok(intersect(&spans)?)
        })
        .collect()
}

/// Per-degree spans of a two-sided ideal up to a truncation degree.
#[derive(Debug, Clone)]
pub struct TruncatedIdeal {
    max_n: usize,
    generators: Vec<SpanBasis>,
    spans: Vec<SpanBasis>,
    provenance: Vec<BTreeMap<Word, Provenance>>,
}

impl TruncatedIdeal {
    /// `J` generated by the intersection of the `A*A_g`, through `max_n`.
    pub fn build(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<TruncatedIdeal, IdealError> {
        let amb = ambients(pres, max_n)?;
        let gens = intersection_with(pres, grading, &amb)?;
        ideal_closure(pres, gens)
    }

    pub fn max_degree(&self) -> usize {
        self.max_n
    }

    pub fn generators(&self, n: usize) -> &SpanBasis {
        &self.generators[n]
    }

    pub fn span(&self, n: usize) -> &SpanBasis {
        &self.spans[n]
    }

    pub fn rank(&self, n: usize) -> usize {
        self.spans[n].rank()
    }

    pub fn provenance(&self, n: usize) -> &BTreeMap<Word, Provenance> {
        &self.provenance[n]
    }

    /// Leading words of `J_n`.
    pub fn pivots(&self, n: usize) -> impl Iterator<Item = &Word> + '_ {
        self.spans[n].pivot_words()
    }

    /// Membership of `nf(p)` in `J`, for N-homogeneous `p` within the truncation.
    pub fn contains(&self, pres: &Presentation, p: &NcPoly) -> Result<Membership, IdealError> {
        if !p.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        let n = p.degree().unwrap_or(0);
        if n > self.max_n {
            return Err(IdealError::BeyondTruncation(n));
        }
        Ok(self.spans[n].contains(&pres.normal_form(p))?)
    }

    pub fn contains_word(&self, pres: &Presentation, w: &Word) -> Result<bool, IdealError> {
        Ok(self.contains(pres, &word_poly(pres, w))?.is_member())
    }
}

/// Two-sided ideal generated by per-degree generator spans.
pub fn ideal_closure(pres: &Presentation, generators: Vec<SpanBasis>) -> Result<TruncatedIdeal, IdealError> {
    let max_n = generators.len().saturating_sub(1);
    let letters = pres.alphabet().len() as u8;
    let mut spans: Vec<SpanBasis> = Vec::with_capacity(generators.len());
    let mut provenance = Vec::with_capacity(generators.len());
    for (n, gen) in generators.iter().enumerate() {
        let mut s = SpanBasis::empty(gen.ambient());
        let mut prov = BTreeMap::new();
        for f in gen.basis() {
            if s.insert(&f)? {
                prov.insert(f.leading().expect("nonzero").0.clone(), Provenance::Intersection);
            }
        }
        if n > 0 && !s.is_full() {
            let prev: Vec<(Word, NcPoly)> =
                spans[n - 1].pivot_words().cloned().zip(spans[n - 1].basis()).collect::<Vec<_>>();
            let products: Vec<(NcPoly, Provenance)> = prev
                .par_iter()
                .flat_map_iter(|(piv, f)| {
                    (0..letters).flat_map(move |x| {
                        let xw = word_poly(pres, &Word::from(vec![x]));
                        [
                            (pres.normal_form(&(&xw * f)), Provenance::Left { letter: x, pivot: piv.clone() }),
                            (pres.normal_form(&(f * &xw)), Provenance::Right { pivot: piv.clone(), letter: x }),
                        ]
                    })
                })
                .collect();
            for (p, why) in products {
                if s.is_full() {
                    break;
                }
                let before: Vec<Word> = s.pivot_words().cloned().collect();
                if s.insert(&p)? {
                    if let Some(w) = s.pivot_words().find(|w| !before.contains(w)) {
                        prov.insert(w.clone(), why);
                    }
                }
            }
        }
        spans.push(s);
        provenance.push(prov);
    }
    Ok(TruncatedIdeal { max_n, generators, spans, provenance })
}

/// Suffix degrees witnessing that a word lies in every `A*A_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixCover {
    pub word: Word,
    /// For each group element (in group order), the length of a suffix of
    /// that degree.
    pub witnesses: Vec<(GroupElement, usize)>,
}

/// Certificate that `w` lies in `J` because its suffix degrees, together
/// with the identity, exhaust `G`.
pub fn suffix_cover_certificate(grading: &Grading, w: &Word) -> Option<SuffixCover> {
    let sd = grading.suffix_degrees(w);
    let mut witnesses = Vec::with_capacity(grading.group().order());
    for g in grading.group().elements() {
        let k = sd.iter().position(|&d| d == g)?;
        witnesses.push((g, k));
    }
    Some(SuffixCover { word: w.clone(), witnesses })
}

/// One piece of a word for [`block_suffix_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Literal(Word),
    /// `f_1^e_1 ... f_k^e_k` with factors that pairwise commute in `A`.
    Commuting(Vec<(Word, usize)>),
}

impl Segment {
    pub fn word(&self) -> Word {
        match self {
            Segment::Literal(w) => w.clone(),
            Segment::Commuting(fs) => fs.iter().fold(Word::empty(), |acc, (f, e)| acc.concat(&f.pow(*e))),
        }
    }
}

/// The right factor of a [`BlockCover`] that has a given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockWitness {
    pub element: GroupElement,
    /// Segment where the right factor starts.
    pub segment: usize,
    /// Exponents kept from a commuting segment, empty for a literal one.
    pub exponents: Vec<usize>,
    /// Order in which the kept factors are written.
    pub order: Vec<usize>,
    /// Length of the suffix taken from the rearranged segment.
    pub suffix: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCover {
    pub word: Word,
    pub witnesses: Vec<BlockWitness>,
}

const MAX_BLOCK_CHOICES: usize = 1 << 16;
const MAX_BLOCK_FACTORS: usize = 5;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Suffix cover up to commutation. Inside a commuting block the segment
/// equals `f^(e-a) * f^a` in `A` for every exponent vector `a <= e`, with
/// the factors of `f^a` in any order, so any literal suffix of such an
/// `f^a` followed by the later segments is a right factor of the word. When
/// the degrees of these right factors exhaust `G`, the word lies in every
/// `A*A_g`. With one literal segment this is the plain suffix cover.
pub fn block_suffix_cover(
    pres: &Presentation,
    grading: &Grading,
    segments: &[Segment],
) -> Result<Option<BlockCover>, IdealError> {
    let g = grading.group();
    for seg in segments {
        if let Segment::Commuting(fs) = seg {
            if fs.len() > MAX_BLOCK_FACTORS {
                return Err(IdealError::BlockTooLarge);
            }
            for (i, (a, _)) in fs.iter().enumerate() {
                for (b, _) in &fs[i + 1..] {
                    let ab = word_poly(pres, &a.concat(b));
                    let ba = word_poly(pres, &b.concat(a));
                    if !crate::covariants::verify_identity(pres, &ab, &ba)? {
                        let r = |w: &Word| pres.alphabet().render(w);
                        return Err(IdealError::NotCommuting(r(a), r(b)));
                    }
                }
            }
        }
    }
    let mut found: BTreeMap<GroupElement, BlockWitness> = BTreeMap::new();
    let mut tail = g.identity();
    for (s, seg) in segments.iter().enumerate().rev() {
        let mut record = |w: &Word, exponents: &[usize], order: &[usize]| {
            for (k, d) in grading.suffix_degrees(w).into_iter().enumerate() {
                let element = g.mul(d, tail);
                found.entry(element).or_insert_with(|| BlockWitness {
                    element,
                    segment: s,
                    exponents: exponents.to_vec(),
                    order: order.to_vec(),
                    suffix: k,
                });
            }
        };
        match seg {
            Segment::Literal(w) => record(w, &[], &[]),
            Segment::Commuting(fs) => {
                let choices = fs.iter().try_fold(1usize, |acc, (_, e)| acc.checked_mul(e + 1));
                if choices.is_none_or(|c| c > MAX_BLOCK_CHOICES) {
                    return Err(IdealError::BlockTooLarge);
                }
                let orders = permutations(fs.len());
                let mut exps = vec![0usize; fs.len()];
                loop {
                    for order in &orders {
                        let w = order.iter().fold(Word::empty(), |acc, &i| acc.concat(&fs[i].0.pow(exps[i])));
                        record(&w, &exps, order);
                    }
                    let Some(i) = (0..fs.len()).find(|&i| exps[i] < fs[i].1) else {
                        break;
                    };
                    exps[i] += 1;
                    exps[..i].iter_mut().for_each(|e| *e = 0);
                }
            }
        }
        tail = g.mul(grading.word_degree(&seg.word()), tail);
    }
    if found.len() < g.order() {
        return Ok(None);
    }
    let word = segments.iter().fold(Word::empty(), |acc, s| acc.concat(&s.word()));
    Ok(Some(BlockCover { word, witnesses: found.into_values().collect() }))
}

/// `Some(lambda)` when `nf(target) = lambda * nf(certified)` with `lambda != 0`.
pub fn member_via_equivalence(pres: &Presentation, target: &Word, certified: &Word) -> Result<Option<Scalar>, IdealError> {
    pres.require_degree(target.len().max(certified.len()))?;
    let t = pres.normal_form(&word_poly(pres, target));
    let c = pres.normal_form(&word_poly(pres, certified));
    let (Some((tw, tc)), Some((cw, cc))) = (t.leading(), c.leading()) else {
        return Ok(None);
    };
    if tw != cw {
        return Ok(None);
    }
    let lambda = tc.checked_div(cc).map_err(RewriteError::from)?;
    Ok((c.scale(&lambda) == t).then_some(lambda))
}
