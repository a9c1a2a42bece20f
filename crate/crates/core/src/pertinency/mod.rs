//! Growth of `A/J` and lower bounds on pertinency.
//!
//! `Pty >= GKdim A - GKdim A/J`. Bounds marked certified come from a word
//! shape found in `J` (a family rule or the obstruction graph) or from a
//! degree where `A/J` vanishes, since `A` is generated in degree one and
//! `(A/J)_n = 0` forces every later component to vanish. Dimension windows
//! are reported as evidence only.

mod obstruction;
mod patterns;

use thiserror::Error;

use crate::freealg::Word;
use crate::grading::{hdet, Grading, GradingError, Hdet};
use crate::ideals::{IdealError, TruncatedIdeal};
use crate::rewrite::{Family, Presentation};

pub use obstruction::{count_avoiding, growth_bound, minimal_obstructions, GrowthBound};
pub use patterns::PatternKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PertinencyError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("custom presentations need an explicit GK dimension")]
    MissingGkDim,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthClass {
    /// `dim (A/J)_n = 0` for `n >= from`.
    EventuallyZero { from: usize },
    /// `dim (A/J)_n <= bound` on the window without growth across it.
    BoundedBy { bound: usize, window: (usize, usize) },
    UnboundedEvidence { window: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthProfile {
    pub dims: Vec<usize>,
    pub ambient_dims: Vec<usize>,
    pub class: GrowthClass,
}

impl GrowthProfile {
    pub fn is_bounded(&self) -> bool {
        !matches!(self.class, GrowthClass::UnboundedEvidence { .. })
    }
}

/// `dim (A/J)_n` for `n <= N`, classified on the window `[N - 2|G| - 4, N]`.
pub fn quotient_growth(pres: &Presentation, j: &TruncatedIdeal, group_order: usize) -> GrowthProfile {
    let n_max = j.max_degree();
    let ambient_dims: Vec<usize> = (0..=n_max).map(|n| j.span(n).ambient().len()).collect();
    let dims: Vec<usize> = (0..=n_max).map(|n| ambient_dims[n] - j.rank(n)).collect();
    debug_assert!(ambient_dims.iter().enumerate().all(|(n, &a)| a == pres.normal_words(n).len()));
    let lo = n_max.saturating_sub(2 * group_order + 4).max(1).min(n_max);
    let window = (lo, n_max);
    let class = if let Some(from) = dims.iter().position(|&d| d == 0) {
        GrowthClass::EventuallyZero { from }
    } else if n_max - lo < 2 {
        GrowthClass::UnboundedEvidence { window }
    } else {
        let mid = (lo + n_max).div_ceil(2);
        let early = dims[lo..mid].iter().copied().max().unwrap_or(0);
        let late = dims[mid..=n_max].iter().copied().max().unwrap_or(0);
        if late <= early {
            GrowthClass::BoundedBy { bound: early, window }
        } else {
            GrowthClass::UnboundedEvidence { window }
        }
    };
    GrowthProfile { dims, ambient_dims, class }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCertificate {
    pub kind: PatternKind,
    /// The two witness words; empty for the obstruction graph.
    pub words: Vec<Word>,
    /// Upper bound on `GKdim A/J`.
    pub gk_bound: usize,
    /// Growth of the words avoiding every known leading word.
    pub graph: GrowthBound,
}

impl PatternCertificate {
    pub fn max_word_degree(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }
}

fn family_kinds(pres: &Presentation) -> Vec<PatternKind> {
    match pres.family() {
        Family::DownUp { alpha, .. } if alpha.is_zero() => vec![PatternKind::DownUpSquares, PatternKind::DownUpLeading],
        Family::DownUp { .. } => vec![PatternKind::DownUpLeading],
        Family::F => vec![PatternKind::FMonomials],
        Family::B => vec![PatternKind::BMonomials],
        _ => Vec::new(),
    }
}

/// Leading words of `J` and of the rules, reduced to a minimal set, plus any
/// externally certified monomials of `J`.
pub fn obstructions(pres: &Presentation, j: &TruncatedIdeal, certified: &[Word]) -> Vec<Word> {
    let words = pres
        .rules()
        .iter()
        .map(|r| r.lhs().clone())
        .chain((0..=j.max_degree()).flat_map(|n| j.pivots(n).cloned().collect::<Vec<_>>()))
        .chain(certified.iter().cloned());
    minimal_obstructions(words)
}

/// Search `J` for a family word shape, falling back to the obstruction
/// graph. `certified` holds monomials known to lie in `J` by certificate.
pub fn pattern_certificate(pres: &Presentation, j: &TruncatedIdeal, certified: &[Word]) -> Option<PatternCertificate> {
    let obs = obstructions(pres, j, certified);
    let graph = growth_bound(pres.alphabet().len(), &obs);
    for kind in family_kinds(pres) {
        let Some(shapes) = patterns::shapes(kind, pres.alphabet()) else {
            continue;
        };
        let mut found: [Option<Word>; 2] = [None, None];
        let mut consider = |w: &Word| {
            if let Some(i) = patterns::classify(w, &shapes) {
                if found[i].as_ref().is_none_or(|f| w < f) {
                    found[i] = Some(w.clone());
                }
            }
        };
        for n in 1..=j.max_degree() {
            if kind.uses_leading_words() {
                j.pivots(n).for_each(&mut consider);
            } else {
                for w in pres.normal_words(n) {
                    if j.span(n).has_pivot(&w) && j.contains_word(pres, &w).unwrap_or(false) {
                        consider(&w);
                    }
                }
            }
        }
        certified.iter().for_each(&mut consider);
        if let [Some(a), Some(b)] = found {
            return Some(PatternCertificate { kind, words: vec![a, b], gk_bound: 1, graph });
        }
    }
    match graph.gk_bound() {
        Some(c) if c <= 1 => {
            Some(PatternCertificate { kind: PatternKind::ObstructionGraph, words: Vec::new(), gk_bound: c, graph })
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Certified,
    Evidence,
    False,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Evidence => "evidence",
            Status::False => "false",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PertinencyOptions {
    /// Required for custom presentations; built-in families have 3.
    pub gk_dim: Option<usize>,
    /// Monomials shown to lie in `J` by certificates beyond the truncation.
    pub certified_members: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct PertinencyReport {
    pub gk_dim: usize,
    pub truncation: usize,
    pub growth: GrowthProfile,
    pub certificate: Option<PatternCertificate>,
    pub graph: GrowthBound,
    pub pty_ge_2: Status,
    pub pty_eq_3: Status,
    pub isolated_singularity: bool,
    /// Best lower bound on `Pty` with its status.
    pub lower_bound: Option<(usize, Status)>,
    pub statements: Vec<String>,
    pub hdet: Option<Hdet>,
    /// False when a certificate inside the truncation meets unbounded
    /// dimension evidence, which would indicate an engine defect.
    pub window_agrees: bool,
}

/// Build `J` through degree `n` and assemble the bounds it supports.
pub fn pertinency_report(
    pres: &Presentation,
    grading: &Grading,
    n: usize,
    opts: &PertinencyOptions,
) -> Result<PertinencyReport, PertinencyError> {
    let gk_dim = match (pres.family(), opts.gk_dim) {
        (_, Some(d)) => d,
        (Family::Custom, None) => return Err(PertinencyError::MissingGkDim),
        _ => 3,
    };
    let hdet = match hdet(pres, grading) {
        Ok(h) => Some(h),
        Err(GradingError::UnsupportedFamily(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let j = TruncatedIdeal::build(pres, grading, n)?;
    Ok(report_from_ideal(pres, &j, grading.group().order(), gk_dim, hdet, &opts.certified_members))
}

/// The report for an already computed `J`.
pub fn report_from_ideal(
    pres: &Presentation,
    j: &TruncatedIdeal,
    group_order: usize,
    gk_dim: usize,
    hdet: Option<Hdet>,
    certified: &[Word],
) -> PertinencyReport {
    let n = j.max_degree();
    let growth = quotient_growth(pres, j, group_order);
    let certificate = pattern_certificate(pres, j, certified);
    let graph = certificate
        .as_ref()
        .map(|c| c.graph.clone())
        .unwrap_or_else(|| growth_bound(pres.alphabet().len(), &obstructions(pres, j, certified)));
    let window_agrees = certificate.as_ref().is_none_or(|c| c.max_word_degree() > n || growth.is_bounded());
    let mut statements = Vec::new();
    let zero_from = match growth.class {
        GrowthClass::EventuallyZero { from } => Some(from),
        _ => None,
    };
    let pty_eq_3 = match zero_from {
        _ if gk_dim != 3 => Status::False,
        Some(from) if from + 2 <= n => {
            statements.push(format!(
                "(A/J)_{from} = 0, so A/J is finite dimensional and GKdim A/J = 0; A^coG has a graded isolated singularity"
            ));
            Status::Certified
        }
        Some(_) => Status::Evidence,
        None if graph.is_finite_dimensional() => {
            statements.push(PatternKind::ObstructionGraph.statement().to_string() + " (finite)");
            Status::Certified
        }
        None => Status::False,
    };
    if let Some(c) = &certificate {
        statements.push(format!("{}: GKdim A/J <= {}", c.kind.statement(), c.gk_bound));
    }
    let lower_bound = if pty_eq_3 == Status::Certified {
        Some((gk_dim, Status::Certified))
    } else if let Some(c) = &certificate {
        Some((gk_dim.saturating_sub(c.gk_bound), Status::Certified))
    } else if zero_from.is_some() {
        Some((gk_dim, Status::Evidence))
    } else if growth.is_bounded() {
        Some((gk_dim.saturating_sub(1), Status::Evidence))
    } else {
        None
    };
    let pty_ge_2 = match lower_bound {
        Some((b, s)) if b >= 2 => s,
        _ => Status::False,
    };
    PertinencyReport {
        gk_dim,
        truncation: n,
        growth,
        certificate,
        graph,
        isolated_singularity: pty_eq_3 == Status::Certified,
        pty_ge_2,
        pty_eq_3,
        lower_bound,
        statements,
        hdet,
        window_agrees,
    }
}
