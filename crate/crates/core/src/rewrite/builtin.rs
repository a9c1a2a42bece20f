use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use super::{CompletionBudget, Completeness, Family, Presentation, RewriteError, Rule};
use crate::freealg::{parse_poly, Alphabet, NcPoly};
use crate::scalars::{ParamSpace, Scalar};

/// Names of the built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    DownUp,
    DownUpXy,
    F,
    H,
    B,
}

impl FromStr for FamilyTag {
    type Err = RewriteError;
    fn from_str(s: &str) -> Result<Self, RewriteError> {
        match s {
            "downup" => Ok(FamilyTag::DownUp),
            "downup_xy" => Ok(FamilyTag::DownUpXy),
            "F" => Ok(FamilyTag::F),
            "H" => Ok(FamilyTag::H),
            "B" => Ok(FamilyTag::B),
            other => Err(RewriteError::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

fn param(params: &BTreeMap<String, Scalar>, name: &str) -> Result<Scalar, RewriteError> {
    params.get(name).cloned().ok_or_else(|| RewriteError::InvalidParams(format!("missing parameter {name}")))
}

fn poly(text: &str, a: &Arc<Alphabet>) -> NcPoly {
    parse_poly(text, a, &ParamSpace::empty()).expect("built-in relation")
}

impl Presentation {
    /// A built-in presentation. `params` supplies `alpha`/`beta` where the
    /// family needs them; `space` declares any symbolic parameters they use.
    pub fn builtin(
        tag: FamilyTag,
        space: &Arc<ParamSpace>,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<Presentation, RewriteError> {
        match tag {
            FamilyTag::DownUp => Self::downup(space, param(params, "alpha")?, param(params, "beta")?),
            FamilyTag::DownUpXy => Self::downup_xy(space, param(params, "alpha")?),
            FamilyTag::F => Ok(Self::f()),
            FamilyTag::H => Ok(Self::h()),
            FamilyTag::B => Ok(Self::b()),
        }
    }

    /// `d^2 u = alpha dud + beta ud^2`, `du^2 = alpha udu + beta u^2 d`.
    pub fn downup(space: &Arc<ParamSpace>, alpha: Scalar, beta: Scalar) -> Result<Presentation, RewriteError> {
        if beta.is_zero() {
            return Err(RewriteError::InvalidParams("beta must be nonzero: the algebra is noetherian iff beta != 0".into()));
        }
        let a = Alphabet::new(["d", "u"])?;
        let w = |s: &str| a.parse_word(s).expect("word");
        let rel1 = NcPoly::from_terms(
            &a,
            [(w("d^2*u"), Scalar::one()), (w("d*u*d"), alpha.neg()), (w("u*d^2"), beta.neg())],
        );
        let rel2 = NcPoly::from_terms(
            &a,
            [(w("d*u^2"), Scalar::one()), (w("u*d*u"), alpha.neg()), (w("u^2*d"), beta.neg())],
        );
        let rules = vec![Rule::from_relation(&rel1)?, Rule::from_relation(&rel2)?];
        let fam = Family::DownUp { alpha, beta };
        Presentation::new(&a, space, fam, vec![rel1, rel2], rules, Completeness::Unknown)?.certify()
    }

    /// The down-up algebra with `beta = -1` written in `x = (d+u)/2`,
    /// `y = (d-u)/2`. Rules are the raw oriented relations; run
    /// [`Presentation::complete`] before relying on normal forms.
    pub fn downup_xy(space: &Arc<ParamSpace>, alpha: Scalar) -> Result<Presentation, RewriteError> {
        if alpha.as_rational().is_some_and(|q| *q == num_rational::BigRational::from_integer(2.into())) {
            return Err(RewriteError::InvalidParams("alpha = 2 is excluded in the x,y basis".into()));
        }
        let a = Alphabet::new(["x", "y"])?;
        let w = |s: &str| a.parse_word(s).expect("word");
        let two = Scalar::from_int(2);
        let m2a = two.neg().checked_sub(&alpha)?;
        let tma = two.checked_sub(&alpha)?;
        let rel1 = NcPoly::from_terms(
            &a,
            [(w("x^2*y"), alpha.clone()), (w("x*y*x"), m2a.clone()), (w("y*x^2"), alpha.clone()), (w("y^3"), tma.clone())],
        );
        let rel2 = NcPoly::from_terms(
            &a,
            [(w("x^3"), tma), (w("x*y^2"), alpha.clone()), (w("y*x*y"), m2a), (w("y^2*x"), alpha.clone())],
        );
        Presentation::from_relations(&a, space, Family::DownUpXy { alpha }, vec![rel1, rel2])
    }

    /// `x^3 = yxy`, `y^3 = xyx` with its five-rule complete system.
    pub fn f() -> Presentation {
        let a = Alphabet::new(["x", "y"]).expect("alphabet");
        let relations = vec![poly("x^3 - y*x*y", &a), poly("y^3 - x*y*x", &a)];
        let rules = [
            ("y^3", "x*y*x"),
            ("y*x*y", "x^3"),
            ("y^2*x^3", "x*y*x^2*y"),
            ("y*x^2*y*x", "x^3*y^2"),
            ("y*x^4", "x^4*y"),
        ]
        .iter()
        .map(|(l, r)| Rule::new(a.parse_word(l).expect("word"), poly(r, &a)).expect("oriented rule"))
        .collect();
        Presentation::new(&a, &ParamSpace::empty(), Family::F, relations, rules, Completeness::Unknown)
            .and_then(Presentation::certify)
            .expect("the five rules are confluent")
    }

    /// `x^2 y + y x^2 - 2y^3 = 0`, `-2x^3 + xy^2 + y^2 x = 0`; raw rules only.
    pub fn h() -> Presentation {
        let a = Alphabet::new(["x", "y"]).expect("alphabet");
        let relations = vec![poly("x^2*y + y*x^2 - 2*y^3", &a), poly("-2*x^3 + x*y^2 + y^2*x", &a)];
        Presentation::from_relations(&a, &ParamSpace::empty(), Family::H, relations).expect("oriented relations")
    }

    /// `(k<x,y>/(x^2 - y^2))[z; sigma]` with `sigma(x) = -x`, `sigma(y) = -y`.
    pub fn b() -> Presentation {
        let a = Alphabet::new(["x", "y", "z"]).expect("alphabet");
        let relations = vec![
            poly("y^2 - x^2", &a),
            poly("y*x^2 - x^2*y", &a),
            poly("z*x + x*z", &a),
            poly("z*y + y*z", &a),
        ];
        let rules = relations.iter().map(|r| Rule::from_relation(r).expect("oriented")).collect();
        Presentation::new(&a, &ParamSpace::empty(), Family::B, relations, rules, Completeness::Unknown)
            .and_then(Presentation::certify)
            .expect("rules are confluent")
    }

    /// A user-supplied presentation from relation strings.
    pub fn custom(
        generators: &[String],
        space: &Arc<ParamSpace>,
        relations: &[String],
    ) -> Result<Presentation, RewriteError> {
        let a = Alphabet::new(generators.iter().cloned())?;
        let rels = relations.iter().map(|r| parse_poly(r, &a, space)).collect::<Result<Vec<_>, _>>()?;
        Presentation::from_relations(&a, space, Family::Custom, rels)
    }

    /// Check every ambiguity; keep the rules only if all resolve.
    fn certify(self) -> Result<Presentation, RewriteError> {
        let done = self.complete(usize::MAX, CompletionBudget::default())?;
        if done.rules.len() != self.rules.len() || done.rules.iter().zip(&self.rules).any(|(a, b)| a.lhs != b.lhs) {
            return Err(RewriteError::InvalidRule("built-in rules are not confluent".into()));
        }
        Ok(done)
    }
}
