mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{gen, term_size};
use proptest::prelude::*;
use shapestar::calculi::*;
use shapestar::infer::{infer_principal, is_type};
use shapestar::rules::{one_step_reducts, rsa, rsp};
use shapestar::shape::matches;
use shapestar::term::*;

fn canon(ps: impl IntoIterator<Item = Arc<Process>>) -> BTreeSet<Arc<Process>> {
    ps.into_iter().map(|p| struct_normalize(&p)).collect()
}

fn pi(seed: u64, budget: usize) -> Arc<PiProcess> {
    gen::PiGen::new(&mut gen::rng(seed), 2).process(budget, &[])
}

fn ma(seed: u64, budget: usize) -> Arc<MaProcess> {
    let mut rng = gen::rng(seed);
    let t = gen::ex_types()[(seed % 2) as usize].clone();
    gen::MaGen::new(&mut rng, 0.2).process(&t, &gen::MaGen::top_scope(), budget)
}

fn meta(seed: u64, budget: usize) -> Arc<Process> {
    gen::MetaGen::new(&mut gen::rng(seed)).process(budget, &[])
}

/// Channels used at top level with different input and output arities.
fn pi_clash(p: &PiProcess) -> bool {
    fn walk(p: &PiProcess, ins: &mut BTreeMap<Name, BTreeSet<usize>>, outs: &mut BTreeMap<Name, BTreeSet<usize>>) {
        match p {
            PiProcess::Nil => {}
            PiProcess::In(c, xs, _) => {
                ins.entry(c.clone()).or_default().insert(xs.len());
            }
            PiProcess::Out(c, ys, _) => {
                outs.entry(c.clone()).or_default().insert(ys.len());
            }
            PiProcess::Par(a, b) => {
                walk(a, ins, outs);
                walk(b, ins, outs);
            }
            PiProcess::Nu(_, q) | PiProcess::Bang(q) => walk(q, ins, outs),
        }
    }
    let (mut ins, mut outs) = (BTreeMap::new(), BTreeMap::new());
    walk(p, &mut ins, &mut outs);
    ins.iter().any(|(c, ks)| outs.get(c).is_some_and(|ls| ks.iter().chain(ls).collect::<BTreeSet<_>>().len() > 1))
}

fn reachable<T: Ord + Clone>(start: T, steps: usize, cap: usize, next: impl Fn(&T) -> Vec<T>) -> Vec<T> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut layer = vec![start];
    for _ in 0..steps {
        let mut fresh = Vec::new();
        for s in &layer {
            for t in next(s) {
                if seen.len() < cap && seen.insert(t.clone()) {
                    fresh.push(t);
                }
            }
        }
        layer = fresh;
    }
    seen.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_round_trips(seed: u64, budget in 1usize..12) {
        let m = meta(seed, budget);
        prop_assert_eq!(parse_process(&m.to_string()).unwrap(), m.clone());
        let p = pi(seed, budget);
        prop_assert_eq!(parse_pi(&p.to_string()).unwrap(), p.clone());
        let a = ma(seed, budget);
        prop_assert_eq!(parse_ma(&a.to_string()).unwrap(), a.clone());
    }

    #[test]
    fn normal_form_is_canonical(seed: u64, other: u64, budget in 1usize..10) {
        let p = meta(seed, budget);
        let q = meta(other, budget);
        let n = struct_normalize(&p);
        prop_assert_eq!(struct_normalize(&n), n.clone());
        prop_assert!(congruent(&p, &n));
        let pq = Process::par(p.clone(), q.clone());
        let qp = Process::par(q.clone(), Process::par(Process::nil(), p.clone()));
        prop_assert!(congruent(&pq, &qp));
        let fresh = Name::new("zz");
        prop_assert!(congruent(&Process::nu(fresh.clone(), pq.clone()), &pq));
        prop_assert!(congruent(&Process::par(Process::nu(fresh.clone(), p.clone()), q.clone()), &Process::nu(fresh, pq)));
        prop_assert_eq!(congruent(&p, &q), struct_normalize(&p) == struct_normalize(&q));
    }

    #[test]
    fn renaming_bound_names_is_invisible(seed: u64, budget in 1usize..10) {
        let p = meta(seed, budget);
        let Process::Nu(x, body) = &*struct_normalize(&Process::nu(Name::new("k"), Process::par(p.clone(), Process::prefix(Action(vec![Element::name("k")]), Process::nil())))) else {
            return Ok(());
        };
        let y = fresh_name(&x.base, &all_names(body));
        let renamed = Process::nu(y.clone(), rename(body, x, &y));
        prop_assert!(alpha_eq(&struct_normalize(&Process::nu(x.clone(), body.clone())), &struct_normalize(&renamed)));
    }

    #[test]
    fn pi_substitution_commutes_with_encoding(seed: u64, budget in 1usize..10, to in 0usize..3) {
        let p = pi(seed, budget);
        let y = Name::new(["a", "b", "z"][to]);
        let s: BTreeMap<Name, Name> = [(Name::new("a"), y.clone())].into_iter().collect();
        let direct = encode_pi(&pi_subst(&p, &s, &mut BTreeSet::new()));
        let meta_s: Subst = [(Name::new("a"), Message::name(y))].into_iter().collect();
        let via = apply_subst(&meta_s, &encode_pi(&p));
        prop_assert!(congruent(&direct, &via), "{} vs {}", direct, via);
    }

    #[test]
    fn ma_substitution_commutes_with_encoding(seed: u64, budget in 1usize..10, pick in 0usize..4) {
        let p = ma(seed, budget);
        let a = || Box::new(Cap::Name(Name::new("a")));
        let cap = [Cap::Name(Name::new("b")), Cap::In(a()), Cap::Seq(Box::new(Cap::Out(a())), Box::new(Cap::Open(a()))), Cap::Empty][pick].clone();
        let s: BTreeMap<Name, Cap> = [(Name::new("k"), cap.clone())].into_iter().collect();
        let direct = encode_ma(&ma_subst(&p, &s, &mut BTreeSet::new())).process;
        let meta_s: Subst = [(Name::new("k"), cabenc(&cap))].into_iter().collect();
        let via = apply_subst(&meta_s, &encode_ma(&p).process);
        prop_assert!(congruent(&direct, &via), "{} vs {}", direct, via);
    }

    #[test]
    fn pi_reference_semantics_agree(seed: u64, budget in 1usize..12) {
        let p = pi(seed, budget);
        let ours = canon(pi_reducts(&p).iter().map(|q| encode_pi(q)));
        let rules = canon(one_step_reducts(&rsp(p.max_arity()), &encode_pi(&p)));
        prop_assert_eq!(ours, rules, "{}", p);
    }

    #[test]
    fn ma_reference_semantics_agree(seed: u64, budget in 1usize..12) {
        let p = ma(seed, budget);
        let ours = canon(ma_reducts(&p).iter().map(|q| encode_ma(q).process));
        let rules = canon(one_step_reducts(&rsa(p.max_arity()), &encode_ma(&p).process));
        prop_assert_eq!(ours, rules, "{}", p);
    }

    #[test]
    fn principal_types_are_types(seed: u64, budget in 1usize..12) {
        for (r, q) in [(rsp(2), encode_pi(&pi(seed, budget))), (rsa(1), encode_ma(&ma(seed, budget)).process), (rsa(1), meta(seed, budget))] {
            if term_size(&q) > 12 {
                continue;
            }
            let s = infer_principal(&r, &q).unwrap();
            prop_assert!(matches(&q, &s), "{}", q);
            prop_assert!(is_type(&r, &s), "{}\n{}", q, s);
            for q2 in one_step_reducts(&r, &q) {
                prop_assert!(matches(&q2, &s), "{} -> {}", q, q2);
            }
        }
    }

    #[test]
    fn pi_safety_is_sound(seed: u64, budget in 2usize..12) {
        let p = pi(seed, budget);
        let r = rsp(p.max_arity());
        let s = infer_principal(&r, &encode_pi(&p)).unwrap();
        if pi_safety(&s, &r).unwrap().safe {
            for q in reachable(p.clone(), 4, 200, pi_reducts) {
                prop_assert!(!pi_clash(&q), "{} reaches {}", p, q);
            }
        }
    }

    #[test]
    fn ma_safety_is_sound(seed: u64, budget in 2usize..12) {
        let p = ma(seed, budget);
        let r = rsa(p.max_arity());
        let e = encode_ma(&p).process;
        let s = infer_principal(&r, &e).unwrap();
        if ma_safety(&s, &r, &ibn(&e)).unwrap().safe {
            for q in reachable(e.clone(), 4, 200, |q| one_step_reducts(&r, q).into_iter().collect()) {
                prop_assert!(!all_names(&q).iter().any(|n| n.is_bullet()), "{} reaches {}", p, q);
            }
        }
    }
}
