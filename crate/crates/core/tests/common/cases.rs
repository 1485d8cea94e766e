//! Seeded case families for cross-validation and property checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use shapestar::calculi::{encode_ma, encode_pi, pi_fbn, ExType, MaProcess, PiProcess};
use shapestar::infer::{infer_principal, is_type};
use shapestar::rules::{rsa, rsp, RuleSet};
use shapestar::shape::{meaning_sample, ShapePredicate};
use shapestar::term::{well_scoped, Name, Process};
use shapestar::typecheck::{extract_envs, tpi_infer, typenc, AEnvironment as AEnv, PiContext, PiType, TypeInfo};

use super::gen;
use super::term_size;

fn ch(ts: Vec<PiType>) -> PiType {
    PiType::Ch(ts)
}

fn sorts() -> Vec<PiType> {
    let i = || PiType::Var(Arc::from("i"));
    vec![
        i(),
        ch(vec![]),
        ch(vec![i()]),
        ch(vec![ch(vec![])]),
        ch(vec![i(), i()]),
        ch(vec![ch(vec![i()])]),
        ch(vec![ch(vec![]), i()]),
    ]
}

/// Distinct pi processes with distinct binders, each paired with a context
/// covering its free names: the inferred one when it exists, otherwise a
/// random one, and sometimes a random one anyway.
pub fn tpi_cases(n: usize, seed: u64) -> Vec<(PiContext, Arc<PiProcess>)> {
    let mut rng = gen::rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let budget = rng.gen_range(2..=10);
        let p = gen::PiGen::new(&mut rng, 2).process(budget, &[]);
        if term_size(&encode_pi(&p)) > 8 || !seen.insert(p.clone()) {
            continue;
        }
        let ctx = match tpi_infer(&p) {
            Some(c) if rng.gen_bool(0.6) => ground(c),
            _ => pi_fbn(&p).into_iter().map(|a| (a, sorts().choose(&mut rng).unwrap().clone())).collect(),
        };
        out.push((ctx, p));
    }
    out
}

/// Replace inference variables by a fixed rigid sort.
fn ground(c: PiContext) -> PiContext {
    fn go(t: &PiType) -> PiType {
        match t {
            PiType::Var(v) if v.starts_with('\'') => PiType::Var(Arc::from("i")),
            PiType::Var(v) => PiType::Var(v.clone()),
            PiType::Ch(ts) => PiType::Ch(ts.iter().map(go).collect()),
        }
    }
    c.iter().map(|(a, t)| (a.clone(), go(t))).collect()
}

/// Ambient processes meeting the deciding procedure's preconditions, with a
/// target exchange type.
pub fn tma_cases(n: usize, seed: u64) -> Vec<(AEnv, Arc<MaProcess>, ExType)> {
    let mut rng = gen::rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let env = gen::ma_env();
    while out.len() < n {
        let budget = rng.gen_range(2..=9);
        let t = gen::ex_types().choose(&mut rng).unwrap().clone();
        let noise = [0.0, 0.15, 0.4][rng.gen_range(0..3)];
        let p = gen::MaGen::new(&mut rng, noise).process(&t, &gen::MaGen::top_scope(), budget);
        if extract_envs(&p).is_err() || !seen.insert(p.clone()) {
            continue;
        }
        let t = if rng.gen_bool(0.8) { t } else { gen::ex_types().choose(&mut rng).unwrap().clone() };
        out.push((env.clone(), p, t));
    }
    out
}

/// Shape types to sample from: principal types of corpus processes and
/// type encodings of generated ambient processes, all closed under their rules.
pub fn shape_types(seed: u64) -> Vec<(RuleSet, ShapePredicate)> {
    let mut out = Vec::new();
    for k in super::corpus() {
        out.push((k.rules.clone(), infer_principal(&k.rules, &k.process).unwrap()));
    }
    for (env, p, t) in tma_cases(40, seed) {
        let (nu, inp) = extract_envs(&p).unwrap();
        let mut all = env;
        all.extend(nu);
        let k = p.max_arity().max(1);
        out.push((rsa(k), typenc(&TypeInfo::new(all, inp, t))));
    }
    out.push((rsp(2), infer_principal(&rsp(2), &super::p(super::SERVER)).unwrap()));
    out.push((rsa(1), infer_principal(&rsa(1), &super::p(super::PACKET)).unwrap()));
    out.retain(|(r, s)| is_type(r, s));
    out
}

/// Well-scoped processes drawn from the meaning of `s`.
pub fn samples<R: Rng>(s: &ShapePredicate, rng: &mut R, count: usize) -> Vec<Arc<Process>> {
    let mut out = Vec::new();
    for _ in 0..count * 4 {
        if out.len() == count {
            break;
        }
        let depth = rng.gen_range(1..=4);
        let q = meaning_sample(s, rng, depth);
        if well_scoped(&q) {
            out.push(q);
        }
    }
    out
}

pub fn encoded(p: &MaProcess) -> Arc<Process> {
    encode_ma(p).process
}

/// A pi process of `n` parallel components over a pool of `n / 3` shared
/// channels, with arity at most `arity`.
pub fn wide_pi(n: usize, arity: usize, seed: u64) -> Arc<PiProcess> {
    let mut rng = gen::rng(seed);
    let free: Vec<Name> = (0..n / 3).map(|i| Name::new(&format!("c{}", i))).collect();
    let comps: Vec<_> = (0..n)
        .map(|_| {
            let budget = rng.gen_range(4..=10);
            let mut g = gen::PiGen::new(&mut rng, arity);
            g.free = free.clone();
            g.process(budget, &[])
        })
        .collect();
    PiProcess::par_all(comps)
}
