//! Structural comparison of a report against an expected-results block.

use std::collections::BTreeSet;
use std::fmt::Debug;

use super::config::Expected;
use super::run::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionOutcome {
    pub diffs: Vec<String>,
}

impl RegressionOutcome {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

fn scalar<T: PartialEq + Debug>(diffs: &mut Vec<String>, field: &str, want: &Option<T>, got: &Option<T>) {
    match (want, got) {
        (None, _) => {}
        (Some(_), None) => diffs.push(format!("{field}: expected a value but the task did not run")),
        (Some(w), Some(g)) if w != g => diffs.push(format!("{field}: expected {w:?}, computed {g:?}")),
        _ => {}
    }
}

fn sequence(diffs: &mut Vec<String>, field: &str, want: &Option<Vec<usize>>, got: &Option<Vec<usize>>) {
    match (want, got) {
        (None, _) => {}
        (Some(_), None) => diffs.push(format!("{field}: expected a value but the task did not run")),
        (Some(w), Some(g)) => {
            if let Some(n) = (0..w.len().min(g.len())).find(|&n| w[n] != g[n]) {
                diffs.push(format!("{field}: first mismatch at degree {n}: expected {}, computed {}", w[n], g[n]));
            } else if w.len() != g.len() {
                diffs.push(format!("{field}: expected degrees 0..{}, computed 0..{}", w.len(), g.len()));
            }
        }
    }
}

/// Compare every field present in `expected`; an empty block passes.
pub fn regression(expected: &Expected, report: &Report) -> RegressionOutcome {
    let got = &report.summary;
    let mut diffs = Vec::new();
    scalar(&mut diffs, "valid", &expected.valid, &got.valid);
    scalar(&mut diffs, "hdet_trivial", &expected.hdet_trivial, &got.hdet_trivial);
    match (&expected.generators, &got.generators) {
        (None, _) => {}
        (Some(_), None) => diffs.push("generators: expected a value but the task did not run".into()),
        (Some(w), Some(g)) => {
            let norm = |s: &String| {
                report.alphabet.parse_word(s).map(|w| report.alphabet.render(&w)).unwrap_or_else(|_| s.clone())
            };
            let w: BTreeSet<String> = w.iter().map(norm).collect();
            let g: BTreeSet<String> = g.iter().map(norm).collect();
            if w != g {
                let missing: Vec<_> = w.difference(&g).collect();
                let extra: Vec<_> = g.difference(&w).collect();
                diffs.push(format!("generators: missing {missing:?}, unexpected {extra:?}"));
            }
        }
    }
    sequence(&mut diffs, "hilbert", &expected.hilbert, &got.hilbert);
    scalar(&mut diffs, "series_match", &expected.series_match, &got.series_match);
    scalar(&mut diffs, "identities_hold", &expected.identities_hold, &got.identities_hold);
    scalar(&mut diffs, "memberships_hold", &expected.memberships_hold, &got.memberships_hold);
    sequence(&mut diffs, "dims", &expected.dims, &got.dims);
    scalar(&mut diffs, "pty_lower_bound", &expected.pty_lower_bound, &got.pty_lower_bound);
    scalar(&mut diffs, "pty_status", &expected.pty_status, &got.pty_status);
    scalar(&mut diffs, "certificate_kind", &expected.certificate_kind, &got.certificate_kind);
    scalar(&mut diffs, "isolated_singularity", &expected.isolated_singularity, &got.isolated_singularity);
    RegressionOutcome { diffs }
}
