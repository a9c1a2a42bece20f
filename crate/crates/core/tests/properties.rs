//! Property tests for the invariants the engine relies on.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use workbench::cli::{self, config::parse_rational, AnalysisConfig};
use workbench::freealg::{NcPoly, Word};
use workbench::grading::Grading;
use workbench::ideals::{suffix_cover_certificate, TruncatedIdeal};
use workbench::rewrite::Presentation;
use workbench::scalars::{ParamSpace, Scalar};

const N: usize = 8;

struct Fixture {
    pres: Presentation,
    grading: Grading,
    ideal: TruncatedIdeal,
}

fn fixture(name: &str) -> Fixture {
    let cfg = cli::example(name).unwrap();
    let pres = cfg.build_presentation().unwrap();
    let grading = Grading::new(pres.alphabet(), &cfg.build_group().unwrap(), &cfg.grading).unwrap();
    let ideal = TruncatedIdeal::build(&pres, &grading, N).unwrap();
    Fixture { pres, grading, ideal }
}

fn dihedral() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture("example-3.1-n2"))
}

fn xy_case6() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture("lemma-2.11-case6"))
}

fn fixtures() -> [&'static Fixture; 2] {
    [dihedral(), xy_case6()]
}

fn word(letters: Vec<u8>) -> Word {
    Word::from(letters)
}

fn letters(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..=max)
}

fn small_downup() -> impl Strategy<Value = Presentation> {
    (-3i64..=3, prop_oneof![-3i64..=-1, 1i64..=3]).prop_map(|(a, b)| {
        Presentation::downup(&ParamSpace::empty(), Scalar::from_int(a), Scalar::from_int(b)).unwrap()
    })
}

fn wp(p: &Presentation, w: &Word) -> NcPoly {
    NcPoly::word(p.alphabet(), w.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_normal(p in small_downup(), w in letters(7)) {
        let nf = p.normal_form(&wp(&p, &word(w)));
        prop_assert_eq!(p.normal_form(&nf), nf.clone());
        for (t, _) in nf.terms() {
            prop_assert!(p.is_normal(t));
        }
    }

    #[test]
    fn normal_form_respects_products(p in small_downup(), a in letters(4), b in letters(4)) {
        let (a, b) = (word(a), word(b));
        let direct = p.normal_form(&wp(&p, &a.concat(&b)));
        let staged = p.normal_form(&p.normal_form(&wp(&p, &a)).try_mul(&p.normal_form(&wp(&p, &b))).unwrap());
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn grading_degree_is_multiplicative(a in letters(6), b in letters(6)) {
        for f in fixtures() {
            let (a, b) = (word(a.clone()), word(b.clone()));
            let g = f.grading.group();
            prop_assert_eq!(
                f.grading.word_degree(&a.concat(&b)),
                g.mul(f.grading.word_degree(&a), f.grading.word_degree(&b))
            );
        }
    }

    #[test]
    fn ideal_is_two_sided(n in 1usize..N, pick in any::<prop::sample::Index>(), letter in 0u8..2) {
        for f in fixtures() {
            let basis = f.ideal.span(n).basis();
            if basis.is_empty() {
                continue;
            }
            let b = pick.get(&basis);
            let l = wp(&f.pres, &word(vec![letter]));
            prop_assert!(f.ideal.contains(&f.pres, &l.try_mul(b).unwrap()).unwrap().is_member());
            prop_assert!(f.ideal.contains(&f.pres, &b.try_mul(&l).unwrap()).unwrap().is_member());
        }
    }

    #[test]
    fn suffix_cover_implies_membership(w in letters(N)) {
        for f in fixtures() {
            let w = word(w.clone());
            if suffix_cover_certificate(&f.grading, &w).is_some() {
                prop_assert!(f.ideal.contains_word(&f.pres, &w).unwrap());
            }
        }
    }

    #[test]
    fn rationals_parse_back(p in -1000i64..1000, q in 1i64..1000) {
        let r = BigRational::new(BigInt::from(p), BigInt::from(q));
        let text = serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()));
        prop_assert_eq!(parse_rational(&text), Some(r));
    }
}

#[test]
fn ideal_ranks_grow_with_degree() {
    // Right multiplication by a letter is injective in a domain.
    for f in fixtures() {
        for n in 1..N {
            assert!(f.ideal.rank(n + 1) >= f.ideal.rank(n), "rank drops at degree {n}");
        }
    }
}

#[test]
fn algebra_is_generated_in_degree_one() {
    for f in fixtures() {
        let p = &f.pres;
        for n in 1..=N {
            let mut span: Vec<Word> = Vec::new();
            for l in 0..p.alphabet().len() as u8 {
                for w in p.normal_words(n - 1) {
                    for (t, _) in p.normal_form(&wp(p, &word(vec![l]).concat(&w))).terms() {
                        span.push(t.clone());
                    }
                }
            }
            span.sort_by(|a, b| a.letters().cmp(b.letters()));
            span.dedup();
            assert_eq!(span.len(), p.normal_words(n).len(), "degree {n}");
        }
    }
}

#[test]
fn ideal_ranks_are_bounded_by_the_algebra() {
    for f in fixtures() {
        let ranks: Vec<usize> = (0..=N).map(|n| f.ideal.rank(n)).collect();
        assert!(ranks.iter().zip(0..).all(|(&r, n)| r <= f.pres.dim_component(n).unwrap()));
        assert_eq!(ranks[0], 0);
    }
}

#[test]
fn configs_round_trip_through_json() {
    for e in cli::list_examples() {
        let back = AnalysisConfig::from_json(&e.config.to_json()).unwrap();
        assert_eq!(back, e.config, "{}", e.name);
    }
}

#[test]
fn reports_are_deterministic_and_self_consistent() {
    for name in ["example-3.1-n2", "lemma-2.11-case6", "B-lemma-2.7"] {
        let mut cfg = cli::example(name).unwrap();
        cfg.truncation = cfg.truncation.min(8);
        let a = cli::run(&cfg).unwrap();
        let b = cli::run(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a.json).unwrap(), serde_json::to_string(&b.json).unwrap(), "{name}");
        assert!(cli::regression(&a.summary, &b).passed(), "{name}");
    }
}

#[test]
fn shared_alphabet() {
    for f in fixtures() {
        assert!(Arc::ptr_eq(f.pres.alphabet(), f.grading.alphabet()));
    }
}
