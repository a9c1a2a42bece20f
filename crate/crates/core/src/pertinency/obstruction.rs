//! Growth of the monomial algebra that avoids a set of obstruction words.
//!
//! If every obstruction is the leading word of an element of an ideal `W`,
//! words avoiding all obstructions span `A/W`, so their count bounds
//! `dim (A/W)_n`. The avoiding words are the paths from the start state of
//! an Aho-Corasick automaton that never enter a match state. Path counts grow
//! like `n^(c-1)`, where `c` is the largest number of cyclic strongly connected
//! components on one path, provided every such component is a single cycle;
//! otherwise they grow exponentially.

use std::collections::HashMap;

use aho_corasick::automaton::{Automaton, StateID};
use aho_corasick::dfa;
use aho_corasick::{Anchored, MatchKind, StartKind};

use crate::freealg::Word;

/// Outcome of the growth analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthBound {
    pub obstructions: usize,
    pub states: usize,
    /// Longest chain of cyclic components; `None` for exponential growth.
    pub chain: Option<usize>,
}

impl GrowthBound {
    /// Upper bound on the GK dimension of the quotient.
    pub fn gk_bound(&self) -> Option<usize> {
        self.chain
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.chain == Some(0)
    }
}

/// Words not containing another word of the set as a subword, ascending.
pub fn minimal_obstructions(words: impl IntoIterator<Item = Word>) -> Vec<Word> {
    let mut all: Vec<Word> = words.into_iter().collect();
    all.sort();
    all.dedup();
    let mut kept: Vec<Word> = Vec::new();
    for w in all {
        if !kept.iter().any(|k| w.contains(k)) {
            kept.push(w);
        }
    }
    kept
}

/// Automaton restricted to states reachable without completing an obstruction.
struct Avoider {
    /// `edges[s]` lists the targets of each letter that stay outside matches.
    edges: Vec<Vec<usize>>,
}

impl Avoider {
    fn new(letters: usize, obstructions: &[Word]) -> Avoider {
        if obstructions.iter().any(Word::is_empty) {
            return Avoider { edges: Vec::new() };
        }
        if obstructions.is_empty() {
            return Avoider { edges: vec![vec![0; letters]] };
        }
        let pats: Vec<&[u8]> = obstructions.iter().map(Word::letters).collect();
        let aut = dfa::Builder::new()
            .match_kind(MatchKind::Standard)
            .start_kind(StartKind::Unanchored)
            .build(pats)
            .expect("obstruction automaton");
        let start = aut.start_state(Anchored::No).expect("unanchored start");
        let mut index: HashMap<StateID, usize> = HashMap::new();
        let mut queue = vec![start];
        index.insert(start, 0);
        let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
        let mut head = 0;
        while head < queue.len() {
            let sid = queue[head];
            let mut out = Vec::with_capacity(letters);
            for b in 0..letters as u8 {
                let next = aut.next_state(Anchored::No, sid, b);
                if aut.is_match(next) || aut.is_dead(next) {
                    continue;
                }
                let k = *index.entry(next).or_insert_with(|| {
                    queue.push(next);
                    edges.push(Vec::new());
                    queue.len() - 1
                });
                out.push(k);
            }
            edges[head] = out;
            head += 1;
        }
        Avoider { edges }
    }

    /// Strongly connected components in topological order (sources first).
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.edges.len();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, i)) = stack.pop() {
                if i < self.edges[v].len() {
                    stack.push((v, i + 1));
                    let w = self.edges[v][i];
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                }
            }
        }
        let mut rev = vec![Vec::new(); n];
        for (v, out) in self.edges.iter().enumerate() {
            for &w in out {
                rev[w].push(v);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut i = 0;
            while i < members.len() {
                for &w in &rev[members[i]] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            comps.push(members);
        }
        comps
    }

    fn chain(&self) -> Option<usize> {
        if self.edges.is_empty() {
            return Some(0);
        }
        let comps = self.components();
        let mut comp_of = vec![0; self.edges.len()];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let mut best = vec![0usize; comps.len()];
        for (c, members) in comps.iter().enumerate() {
            let internal: usize =
                members.iter().map(|&v| self.edges[v].iter().filter(|&&w| comp_of[w] == c).count()).sum();
            if internal > members.len() {
                return None;
            }
            best[c] += usize::from(internal > 0);
            for &v in members {
                for &w in &self.edges[v] {
                    let d = comp_of[w];
                    if d != c {
                        best[d] = best[d].max(best[c]);
                    }
                }
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    fn counts(&self, max_n: usize) -> Vec<usize> {
        if self.edges.is_empty() {
            return vec![0; max_n + 1];
        }
        let mut cur = vec![0usize; self.edges.len()];
        cur[0] = 1;
        let mut out = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            out.push(cur.iter().sum());
            if n == max_n {
                break;
            }
            let mut next = vec![0usize; self.edges.len()];
            for (v, &c) in cur.iter().enumerate() {
                if c > 0 {
                    for &w in &self.edges[v] {
                        next[w] += c;
                    }
                }
            }
            cur = next;
        }
        out
    }
}

/// Growth class of the words over `letters` letters avoiding `obstructions`.
pub fn growth_bound(letters: usize, obstructions: &[Word]) -> GrowthBound {
    let a = Avoider::new(letters, obstructions);
    GrowthBound { obstructions: obstructions.len(), states: a.edges.len(), chain: a.chain() }
}

/// Number of avoiding words of each length `0..=max_n`.
pub fn count_avoiding(letters: usize, obstructions: &[Word], max_n: usize) -> Vec<usize> {
    Avoider::new(letters, obstructions).counts(max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::words_of_length;

    fn w(s: &[u8]) -> Word {
        Word::from(s.to_vec())
    }

    fn brute(letters: usize, obs: &[Word], n: usize) -> usize {
        words_of_length(letters, n).into_iter().filter(|x| !obs.iter().any(|o| x.contains(o))).count()
    }

    #[test]
    fn counts_match_enumeration() {
        let sets: Vec<Vec<Word>> = vec![
            vec![],
            vec![w(&[1, 0, 0]), w(&[1, 1, 0])],
            vec![w(&[1, 0]), w(&[0, 0, 0])],
            vec![w(&[0, 1, 0]), w(&[1, 0, 1]), w(&[1, 1, 1])],
            vec![w(&[0, 1, 1, 0]), w(&[1]), w(&[0, 1])],
            vec![w(&[2, 1]), w(&[0, 2, 0]), w(&[1, 1])],
        ];
        for obs in &sets {
            let letters = if obs.iter().any(|o| o.letters().contains(&2)) { 3 } else { 2 };
            let fast = count_avoiding(letters, obs, 9);
            let slow: Vec<usize> = (0..=9).map(|n| brute(letters, obs, n)).collect();
            assert_eq!(fast, slow, "{obs:?}");
        }
    }

    #[test]
    fn growth_classes() {
        assert_eq!(growth_bound(2, &[]).chain, None);
        // d < u: rules ud^2, u^2d leave d^a (ud)^b u^c, cubic growth.
        let downup = [w(&[1, 0, 0]), w(&[1, 1, 0])];
        assert_eq!(growth_bound(2, &downup).chain, Some(3));
        let mut cut = downup.to_vec();
        cut.push(w(&[1, 1, 1]));
        cut.push(w(&[0, 0, 0]));
        assert_eq!(growth_bound(2, &cut).chain, Some(1));
        assert_eq!(growth_bound(2, &[w(&[0]), w(&[1, 1])]).chain, Some(0));
        assert!(growth_bound(2, &[Word::empty()]).is_finite_dimensional());
    }

    #[test]
    fn chain_agrees_with_counts() {
        let obs = [w(&[1, 0, 0]), w(&[1, 1, 0]), w(&[0, 0, 0, 0])];
        let g = growth_bound(2, &obs);
        let c = count_avoiding(2, &obs, 40);
        assert_eq!(g.chain, Some(2));
        assert!(c[40] > c[20] && c[40] <= 4 * c[20]);
    }

    #[test]
    fn minimal_set() {
        let m = minimal_obstructions([w(&[0, 1, 0]), w(&[1, 0]), w(&[1, 1, 0, 1]), w(&[1, 0])]);
        assert_eq!(m, vec![w(&[1, 0])]);
    }
}
