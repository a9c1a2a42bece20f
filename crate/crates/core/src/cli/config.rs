//! JSON analysis configurations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::groups::{FiniteGroup, GroupSpec};
use crate::rewrite::{CompletionBudget, FamilyTag, Presentation};
use crate::scalars::{ParamSpace, Scalar};

pub const DEFAULT_TRUNCATION: usize = 16;

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Validate,
    Hdet,
    Memberships,
    Covariants,
    Hilbert,
    VerifyIdentities,
    Pertinency,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `downup`, `downup_xy`, `F`, `H`, `B` or `custom`.
    pub family: String,
    /// Rational values such as `1`, `-2` or `"1/3"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gk_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySpec {
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipMethod {
    /// Linear algebra in the truncated ideal.
    Linear,
    /// Suffix degrees exhaust the group.
    SuffixCover,
    /// The word contains an already certified word as a subword.
    Multiple,
    /// Normal form proportional to that of an already certified word.
    Equivalence,
}

/// A piece of a word for suffix covers up to commutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentSpec {
    Literal(String),
    /// `[factor, exponent]` pairs whose factors commute in the algebra.
    Commuting(Vec<(String, usize)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipSpec {
    pub word: String,
    pub method: MembershipMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A rational series `numerator / denominator` in one variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hdet_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_match: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities_hold: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memberships_hold: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pty_lower_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pty_status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isolated_singularity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub algebra: AlgebraSpec,
    pub group: GroupSpec,
    pub grading: BTreeMap<String, String>,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    pub tasks: Vec<Task>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentitySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub memberships: Vec<MembershipSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rules: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl AnalysisConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: AnalysisConfig = serde_json::from_str(text)
            .map_err(|e| CliError::config(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Structural checks that need no algebra.
    pub fn check(&self) -> Result<(), CliError> {
        if self.truncation < 4 {
            return Err(CliError::config("truncation", "truncation degree must be at least 4"));
        }
        if self.tasks.is_empty() {
            return Err(CliError::config("tasks", "at least one task is required"));
        }
        Ok(())
    }

    pub fn has(&self, t: Task) -> bool {
        self.tasks.contains(&t)
    }

    pub fn build_group(&self) -> Result<Arc<FiniteGroup>, CliError> {
        FiniteGroup::build(&self.group).map(Arc::new).map_err(|e| CliError::config("group", e.to_string()))
    }

    /// The presentation, completed through the truncation degree if needed.
    pub fn build_presentation(&self) -> Result<Presentation, CliError> {
        let a = &self.algebra;
        let space = ParamSpace::empty();
        let mut bindings = BTreeMap::new();
        for (k, v) in &a.params {
            bindings.insert(k.clone(), Scalar::from_rational(parse_rational(v).ok_or_else(|| {
                CliError::config(format!("algebra.params.{k}"), format!("not a rational number: {v}"))
            })?));
        }
        let pres = if a.family == "custom" {
            if a.generators.is_empty() || a.relations.is_empty() {
                return Err(CliError::config("algebra", "custom algebras need generators and relations"));
            }
            let names: Vec<String> = bindings.keys().cloned().collect();
            let pspace = ParamSpace::new(names.iter().map(String::as_str))
                .map_err(|e| CliError::config("algebra.params", e.to_string()))?;
            let custom = Presentation::custom(&a.generators, &pspace, &a.relations)
                .map_err(|e| CliError::config("algebra.relations", e.to_string()))?;
            let values: BTreeMap<String, BigRational> =
                bindings.iter().map(|(k, v)| (k.clone(), v.as_rational().expect("numeric").clone())).collect();
            custom.specialize(&values).map_err(|e| CliError::config("algebra.params", e.to_string()))?
        } else {
            let tag: FamilyTag =
                a.family.parse().map_err(|_| CliError::config("algebra.family", format!("unknown family {}", a.family)))?;
            if matches!(tag, FamilyTag::DownUp) && bindings.get("beta").is_some_and(Scalar::is_zero) {
                return Err(CliError::config(
                    "algebra.params.beta",
                    "the down-up algebra is noetherian if and only if beta != 0",
                ));
            }
            Presentation::builtin(tag, &space, &bindings)
                .map_err(|e| CliError::config("algebra.params", e.to_string()))?
        };
        if pres.require_degree(self.truncation).is_ok() {
            return Ok(pres);
        }
        let budget = self.max_rules.map_or_else(CompletionBudget::default, |max_rules| CompletionBudget { max_rules });
        pres.complete(self.truncation, budget).map_err(|e| CliError::computation("complete", e.to_string()))
    }
}

/// A JSON number or a string `p/q`.
pub fn parse_rational(v: &serde_json::Value) -> Option<BigRational> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(BigInt::from(i))),
        serde_json::Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let q: BigInt = q.trim().parse().ok()?;
                    if q == BigInt::from(0) {
                        return None;
                    }
                    Some(BigRational::new(p.trim().parse().ok()?, q))
                }
                None => Some(BigRational::from_integer(s.parse().ok()?)),
            }
        }
        _ => None,
    }
}
