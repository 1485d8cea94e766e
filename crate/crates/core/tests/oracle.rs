mod common;

use common::{corpus, gen, oracle};
use shapestar::infer::infer_principal;
use shapestar::rules::one_step_reducts;
use shapestar::shape::matches;
use shapestar::typecheck::{extract_envs, typenc, TypeInfo};

#[test]
fn corpus_is_fixed_and_small() {
    let c = corpus();
    assert_eq!(c.len(), 200);
    assert!(c.iter().all(|k| common::term_size(&k.process) <= 8));
    let again = corpus();
    assert!(c.iter().zip(&again).all(|(a, b)| a.process == b.process));
}

#[test]
fn matching_agrees_with_derivations() {
    let c = corpus();
    let types: Vec<_> = c.iter().map(|k| infer_principal(&k.rules, &k.process).unwrap()).collect();
    let mut checked = 0;
    for (i, k) in c.iter().enumerate() {
        for s in [&types[i], &types[(i + 1) % c.len()], &types[(i + 7) % c.len()]] {
            assert_eq!(matches(&k.process, s), oracle::derives(&k.process, s), "{:?} against\n{}", k.process, s);
            checked += 1;
        }
        assert!(oracle::derives(&k.process, &types[i]), "{:?}", k.process);
        if let Some((m, t)) = &k.source {
            if let Ok((nu, inp)) = extract_envs(m) {
                let mut env = gen::ma_env();
                env.extend(nu);
                let s = typenc(&TypeInfo::new(env, inp, t.clone()));
                assert_eq!(matches(&k.process, &s), oracle::derives(&k.process, &s), "{:?} against typenc\n{}", k.process, s);
                checked += 1;
            }
        }
    }
    assert!(checked >= 600);
}

#[test]
fn reducts_agree_with_decompositions() {
    for k in corpus() {
        let lib = one_step_reducts(&k.rules, &k.process);
        let brute = oracle::reducts(&k.rules, &k.process);
        assert_eq!(lib, brute, "{} case {:?}", k.kind, k.process);
    }
}

#[test]
fn corpus_exercises_reduction() {
    let c = corpus();
    for kind in ["pi", "ma", "meta"] {
        let n = c.iter().filter(|k| k.kind == kind && !one_step_reducts(&k.rules, &k.process).is_empty()).count();
        assert!(n >= 40, "{} {}", kind, n);
    }
}

#[test]
fn oracle_by_hand() {
    use shapestar::rules::rsa;
    use shapestar::term::struct_normalize;
    let set = |xs: &[&str]| xs.iter().map(|s| struct_normalize(&common::p(s))).collect::<std::collections::BTreeSet<_>>();
    assert_eq!(oracle::reducts(&rsa(1), &common::p("a[in b.0] | b[0]")), set(&["b[a[0]]"]));
    assert_eq!(oracle::reducts(&rsa(1), &common::p("open a.0 | !a[0]")), set(&["!a[0]"]));
    assert_eq!(
        oracle::reducts(&rsa(1), &common::p("in<x>.x.0 | out<in a>.0 | out<b>.0")),
        set(&["in a.0 | out<b>.0", "b.0 | out<in a>.0"])
    );
    assert_eq!(oracle::reducts(&rsa(1), &common::p("a[b[out a.0]]")), set(&["a[0] | b[0]"]));
    assert!(oracle::reducts(&rsa(1), &common::p("in a.0 | a[0]")).is_empty());
}
