use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Completeness, Presentation, RewriteError, Rule};
use crate::freealg::{Alphabet, NcPoly, Word};
use crate::scalars::ParamSpace;

/// An ambiguity of two rules on one word, reduced both ways.
#[derive(Debug, Clone)]
pub struct Overlap {
    pub word: Word,
    pub rules: (usize, usize),
    pub resolved: bool,
    /// Normal form of the difference of the two reductions.
    pub difference: NcPoly,
}

#[derive(Debug, Clone, Copy)]
pub struct CompletionBudget {
    pub max_rules: usize,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget { max_rules: 2000 }
    }
}

/// `(word, rule i at 0, rule j at pos)` for every ambiguity of length <= maxdeg.
fn ambiguities(rules: &[Rule], maxdeg: usize) -> Vec<(Word, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let li = &ri.lhs;
        for (j, rj) in rules.iter().enumerate() {
            let lj = &rj.lhs;
            for s in 1..li.len().min(lj.len()) {
                if li.letters()[li.len() - s..] == lj.letters()[..s] {
                    let w = li.concat(&lj.slice(s, lj.len()));
                    if w.len() <= maxdeg {
                        out.push((w, i, j, li.len() - s));
                    }
                }
            }
            if i != j && lj.len() < li.len() && li.len() <= maxdeg {
                for p in 0..=li.len() - lj.len() {
                    if li.letters()[p..p + lj.len()] == *lj.letters() {
                        out.push((li.clone(), i, j, p));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.0, a.1, a.2, a.3).cmp(&(&b.0, b.1, b.2, b.3)));
    out
}

/// Longest ambiguity any two rules can form.
fn max_ambiguity_len(rules: &[Rule]) -> usize {
    let mut longest: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
    longest.sort_unstable();
    match longest.as_slice() {
        [] => 0,
        [a] => 2 * a - 1,
        [.., a, b] => a + b - 1,
    }
}

impl Presentation {
    /// All ambiguities of length at most `maxdeg`, each reduced both ways.
    pub fn overlaps(&self, maxdeg: usize) -> Vec<Overlap> {
        ambiguities(&self.rules, maxdeg)
            .into_par_iter()
            .map(|(word, i, j, pos)| {
                let a = self.normal_form(&self.rewrite_at(&word, i, 0));
                let b = self.normal_form(&self.rewrite_at(&word, j, pos));
                let difference = &a - &b;
                Overlap { word, rules: (i, j), resolved: difference.is_zero(), difference }
            })
            .collect()
    }

    fn with_rules(&self, rules: Vec<Rule>, status: Completeness) -> Result<Presentation, RewriteError> {
        Presentation::new(&self.alphabet, &self.params, self.family.clone(), self.relations.clone(), rules, status)
    }

    /// Add rules from unresolved ambiguities until every ambiguity of length
    /// at most `maxdeg` resolves.
    pub fn complete(&self, maxdeg: usize, budget: CompletionBudget) -> Result<Presentation, RewriteError> {
        let mut pres = self.with_rules(self.rules.clone(), Completeness::Unknown)?;
        loop {
            let pending: Vec<NcPoly> =
                pres.overlaps(maxdeg).into_iter().filter(|o| !o.resolved).map(|o| o.difference).collect();
            if pending.is_empty() {
                break;
            }
            let low = pending.iter().filter_map(NcPoly::degree).min().expect("nonzero differences");
            let batch: Vec<NcPoly> = pending.into_iter().filter(|p| p.degree() == Some(low)).collect();
            let mut rules = pres.rules.clone();
            rules.extend(echelon_rules(&batch)?);
            let rules = interreduce(&self.alphabet, &self.params, rules.into_iter().map(|r| r.as_relation()).collect())?;
            if rules.len() > budget.max_rules {
                return Err(RewriteError::CompletionBudgetExceeded { rules: rules.len(), degree: low });
            }
            pres = pres.with_rules(rules, Completeness::Unknown)?;
        }
        let status = if max_ambiguity_len(&pres.rules) <= maxdeg {
            Completeness::Confluent
        } else {
            Completeness::VerifiedToDegree(maxdeg)
        };
        pres.with_rules(pres.rules.clone(), status)
    }

    /// Number of normal words of length `n`.
    pub fn dim_component(&self, n: usize) -> Result<usize, RewriteError> {
        self.require_degree(n)?;
        Ok(self.normal_words(n).len())
    }
}

/// Gauss-Jordan on a batch of polynomials, giving rules with distinct,
/// mutually irreducible leading terms among equal-length words.
fn echelon_rules(batch: &[NcPoly]) -> Result<Vec<Rule>, RewriteError> {
    let mut rows: BTreeMap<Word, NcPoly> = BTreeMap::new();
    for p in batch {
        let mut v = p.clone();
        loop {
            let hit = v.terms().rev().find(|(w, _)| rows.contains_key(*w)).map(|(w, c)| (w.clone(), c.clone()));
            match hit {
                Some((w, c)) => v = v.try_sub(&rows[&w].scale(&c))?,
                None => break,
            }
        }
        let Some((lead, c)) = v.leading().map(|(w, c)| (w.clone(), c.clone())) else { continue };
        let v = v.scale(&c.inv()?);
        for r in rows.values_mut() {
            let k = r.coeff(&lead);
            if !k.is_zero() {
                *r = r.try_sub(&v.scale(&k))?;
            }
        }
        rows.insert(lead, v);
    }
    rows.values().map(Rule::from_relation).collect()
}

/// Orient `relations` and inter-reduce: no left-hand side contains another
/// and every right-hand side is normal.
pub(super) fn interreduce(
    alphabet: &Arc<Alphabet>,
    params: &Arc<ParamSpace>,
    relations: Vec<NcPoly>,
) -> Result<Vec<Rule>, RewriteError> {
    let mut pending: Vec<NcPoly> = relations;
    let mut rules: Vec<Rule> = Vec::new();
    while !pending.is_empty() {
        pending.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
        let probe = Presentation::new(alphabet, params, super::Family::Custom, vec![], rules.clone(), Completeness::Unknown)?;
        let mut reduced: Vec<NcPoly> = pending.drain(..).map(|p| probe.normal_form(&p)).filter(|p| !p.is_zero()).collect();
        if reduced.is_empty() {
            break;
        }
        // Take the polynomials of smallest leading word, one degree at a time.
        let low = reduced.iter().filter_map(NcPoly::degree).min().unwrap();
        let (now, later): (Vec<_>, Vec<_>) = reduced.drain(..).partition(|p| p.degree() == Some(low));
        let fresh = echelon_rules(&now)?;
        let mut kept = Vec::new();
        for r in rules.drain(..) {
            if fresh.iter().any(|f| r.lhs.contains(&f.lhs)) {
                pending.push(r.as_relation());
            } else {
                kept.push(r);
            }
        }
        kept.extend(fresh);
        rules = kept;
        pending.extend(later);
    }
    let probe = Presentation::new(alphabet, params, super::Family::Custom, vec![], rules.clone(), Completeness::Unknown)?;
    let mut out = Vec::with_capacity(rules.len());
    for r in &rules {
        let rhs = probe.normal_form(&r.rhs);
        out.push(Rule::new(r.lhs.clone(), rhs)?);
    }
    out.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    Ok(out)
}
