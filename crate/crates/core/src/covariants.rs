//! The identity component `A_1` (the covariant subring), its generators and
//! Hilbert function, and identities checked by normal forms.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::{Ambient, LaError, SpanBasis};
use crate::freealg::{NcPoly, Word};
use crate::grading::{component_basis, Grading, GradingError};
use crate::rewrite::{Presentation, RewriteError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CovariantError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    La(#[from] LaError),
    #[error("series denominator has zero constant term")]
    SeriesDenominatorZeroConstant,
}

/// Normal words of degree `n` and identity `G`-degree, for `n = 0..=max_n`.
pub fn identity_component(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<Vec<Vec<Word>>, CovariantError> {
    let e = grading.group().identity();
    (0..=max_n).map(|n| Ok(component_basis(pres, grading, n, e)?)).collect()
}

pub fn hilbert_function(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<Vec<usize>, CovariantError> {
    Ok(identity_component(pres, grading, max_n)?.iter().map(Vec::len).collect())
}

#[derive(Debug, Clone)]
pub struct CovariantBasis {
    pub components: Vec<Vec<Word>>,
    /// Generators in the order found, ascending in degree.
    pub generators: Vec<Word>,
    /// Span of generator products in each degree.
    pub subalgebra: Vec<SpanBasis>,
}

impl CovariantBasis {
    pub fn hilbert(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Whether every identity-component word lies in the generated span.
    pub fn is_generated(&self, pres: &Presentation) -> bool {
        self.components.iter().zip(&self.subalgebra).all(|(ws, s)| {
            ws.iter().all(|w| s.contains(&NcPoly::word(pres.alphabet(), w.clone())).is_ok_and(|m| m.is_member()))
        })
    }
}

/// Degree-ascending sweep: an identity-component word is a new generator iff
/// it is outside the span of products of earlier generators. The result is
/// minimal only up to degree `max_n`.
pub fn minimal_generators(pres: &Presentation, grading: &Grading, max_n: usize) -> Result<CovariantBasis, CovariantError> {
    let components = identity_component(pres, grading, max_n)?;
    let alphabet = pres.alphabet();
    let mut generators: Vec<Word> = Vec::new();
    let mut subalgebra: Vec<SpanBasis> = Vec::with_capacity(max_n + 1);
    for (n, words) in components.iter().enumerate() {
        let amb = Ambient::new(alphabet, pres.normal_words(n));
        let mut s = SpanBasis::empty(&amb);
        if n == 0 {
            s.insert(&NcPoly::one(alphabet))?;
        }
        for g in generators.iter().filter(|g| !g.is_empty() && g.len() < n) {
            let gp = NcPoly::word(alphabet, g.clone());
            for f in subalgebra[n - g.len()].basis() {
                if s.is_full() {
                    break;
                }
                s.insert(&pres.normal_form(&(&gp * &f)))?;
            }
        }
        for w in words {
            if n > 0 && s.insert(&NcPoly::word(alphabet, w.clone()))? {
                generators.push(w.clone());
            }
        }
        subalgebra.push(s);
    }
    Ok(CovariantBasis { components, generators, subalgebra })
}

/// Whether the power series `num/den` agrees with `values` in degrees
/// `0..values.len()`.
pub fn compare_series(values: &[usize], num: &[i64], den: &[i64]) -> Result<bool, CovariantError> {
    Ok(expand_series(num, den, values.len())?
        .iter()
        .zip(values)
        .all(|(c, &v)| *c == BigRational::from_integer(v.into())))
}

/// First `len` coefficients of `num/den`.
pub fn expand_series(num: &[i64], den: &[i64], len: usize) -> Result<Vec<BigRational>, CovariantError> {
    let q = |c: i64| BigRational::from_integer(c.into());
    let d0 = match den.first() {
        Some(&c) if c != 0 => q(c),
        _ => return Err(CovariantError::SeriesDenominatorZeroConstant),
    };
    let inv = BigRational::one() / d0;
    let mut out: Vec<BigRational> = Vec::with_capacity(len);
    for n in 0..len {
        let mut c = num.get(n).map_or_else(BigRational::zero, |&a| q(a));
        for k in 1..=n.min(den.len().saturating_sub(1)) {
            c -= q(den[k]) * &out[n - k];
        }
        out.push(c * &inv);
    }
    Ok(out)
}

/// Coefficients of `prod_i (1 - t^(e_i))` with exponents `e_i`.
pub fn one_minus_powers(exponents: &[usize]) -> Vec<i64> {
    let mut p = vec![1i64];
    for &e in exponents {
        let mut next = vec![0i64; p.len() + e];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + e] -= c;
        }
        p = next;
    }
    p
}

/// Whether `nf(lhs - rhs) = 0`.
pub fn verify_identity(pres: &Presentation, lhs: &NcPoly, rhs: &NcPoly) -> Result<bool, RewriteError> {
    let diff = lhs.try_sub(rhs)?;
    pres.require_degree(diff.degree().unwrap_or(0))?;
    Ok(pres.normal_form(&diff).is_zero())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::groups::FiniteGroup;
    use crate::rewrite::CompletionBudget;
    use crate::scalars::{ParamSpace, Scalar};

    fn assign(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn downup(beta: i64) -> Presentation {
        Presentation::downup(&ParamSpace::empty(), Scalar::zero(), Scalar::from_int(beta)).unwrap()
    }

    fn render(p: &Presentation, ws: &[Word]) -> Vec<String> {
        let mut v: Vec<String> = ws.iter().map(|w| p.alphabet().render(w)).collect();
        v.sort();
        v
    }

    fn words(p: &Presentation, ws: &[&str]) -> Vec<String> {
        let v: Vec<Word> = ws.iter().map(|s| p.word(s).unwrap()).collect();
        render(p, &v)
    }

    #[test]
    fn dihedral_covariants() {
        let p = downup(1);
        for n in [2, 3] {
            let g = Arc::new(FiniteGroup::dihedral(n).unwrap());
            let gr = Grading::new(p.alphabet(), &g, &assign(&[("d", "a"), ("u", "b")])).unwrap();
            let comp = identity_component(&p, &gr, 2).unwrap();
            assert_eq!(render(&p, &comp[2]), words(&p, &["d^2", "u^2"]));
            assert!(comp[1].is_empty());
            let cov = minimal_generators(&p, &gr, 4 * n).unwrap();
            let du = format!("(d*u)^{n}");
            let ud = format!("(u*d)^{n}");
            assert_eq!(render(&p, &cov.generators), words(&p, &["d^2", "u^2", &du, &ud]));
            assert!(cov.is_generated(&p));
        }
    }

    #[test]
    fn quaternion_covariants() {
        for beta in [1, -2] {
            let p = downup(beta);
            let g = Arc::new(FiniteGroup::quaternion8());
            let gr = Grading::new(p.alphabet(), &g, &assign(&[("d", "i"), ("u", "k")])).unwrap();
            let cov = minimal_generators(&p, &gr, 8).unwrap();
            let want = words(
                &p,
                &[
                    "d^4", "u^4", "d^2*u^2", "d^2*(u*d)^2", "(u*d)^2*u^2", "(d*u)^2*u^2", "d^2*(d*u)^2", "(d*u)^4",
                    "(u*d)^4",
                ],
            );
            assert_eq!(render(&p, &cov.generators), want, "beta = {beta}");
        }
    }

    #[test]
    fn series_expansion() {
        // (1 - t^8) / ((1 - t^2)^2 (1 - t^4)^2)
        let num = one_minus_powers(&[8]);
        let den = one_minus_powers(&[2, 2, 4, 4]);
        let got: Vec<i64> = expand_series(&num, &den, 9)
            .unwrap()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(got, [1, 0, 2, 0, 5, 0, 8, 0, 13]);
        assert!(compare_series(&[1, 2, 3], &[1, 2, 3], &[1]).unwrap());
        assert!(!compare_series(&[1, 2, 4], &[1, 2, 3], &[1]).unwrap());
        assert!(matches!(compare_series(&[1], &[1], &[0, 1]), Err(CovariantError::SeriesDenominatorZeroConstant)));
    }

    #[test]
    fn h_covariants() {
        let h = Presentation::h().complete(8, CompletionBudget::default()).unwrap();
        let g = Arc::new(FiniteGroup::dihedral(2).unwrap());
        let gr = Grading::new(h.alphabet(), &g, &assign(&[("x", "a"), ("y", "b")])).unwrap();
        let cov = minimal_generators(&h, &gr, 8).unwrap();
        assert_eq!(render(&h, &cov.generators), words(&h, &["x^2", "y^2", "(y*x)^2", "(x*y)^2"]));
        let hil = cov.hilbert();
        assert!(hil.iter().skip(1).step_by(2).all(|&d| d == 0));
        assert!(compare_series(&hil, &one_minus_powers(&[8]), &one_minus_powers(&[2, 2, 4, 4])).unwrap());
    }

    #[test]
    fn f_identities() {
        let f = Presentation::f();
        let e = |s: &str| f.parse(s).unwrap();
        assert!(verify_identity(&f, &e("x*(y*x^3)"), &e("(x*y*x^2)*x")).unwrap());
        assert!(verify_identity(&f, &e("(y*x^3)*(x^2*y*x)"), &e("x^8")).unwrap());
        assert!(!verify_identity(&f, &e("x^2"), &e("y^2")).unwrap());
        let h = Presentation::h();
        assert!(matches!(
            verify_identity(&h, &e("x^2"), &e("x^2")),
            Err(RewriteError::IncompletePresentation { .. })
        ));
    }
}
