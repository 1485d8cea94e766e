#![allow(dead_code)]

pub mod cases;
pub mod figures;
pub mod gen;
pub mod oracle;

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use shapestar::calculi::{encode_ma, encode_pi, ExType, MaProcess};
use shapestar::rules::{one_step_reducts, rsa, rsp, RuleSet};
use shapestar::term::{parse_process, well_scoped, Process};

pub const SERVER: &str = "!s(x,y).x<y>.0 | s<a,n>.0 | a(v).v(p).0 | n<o>.0 | s<b,m>.0 | b(w).w(q,r).0 | m<o,o>.0";
pub const SERVER_RESIDUAL: &str = "!s(x,y).x<y>.0 | n(p).0 | n<o>.0 | m(q,r).0 | m<o,o>.0";
pub const PACKET_MA: &str = "<in d> | new (p:Amb[1]).(d[open p.0] | (x:Cap[1]).p[x.<>])";
pub const PACKET: &str = "out<in d>.0 | new p.(d[open p.0] | in<x>.p[x.out<>.0])";
pub const UNSAFE_PI: &str = "a(x).a(y,z).0 | a<o>.a<o,o>.0";
pub const POLY_MA: &str = "!(x:Amb[1], y:Amb[1], m:Cap[1]).x[in y.<m>] | <p, a, c> | a[open p.0] | <q, b, in a> | b[open q.0]";
pub const ARITY_MA: &str = "<a, b> | (x:Amb[1]).in x.0";
pub const LEAK_MA: &str = "<in a> | (x:Amb[1]).out x.0";
pub const SEPARATION_MA: &str = "<in a> | (x:?w).x.0";

pub fn p(s: &str) -> Arc<Process> {
    parse_process(s).unwrap()
}

pub struct Case {
    pub kind: &'static str,
    pub rules: RuleSet,
    pub process: Arc<Process>,
    /// For ambient cases, the typed source and its intended exchange type.
    pub source: Option<(Arc<MaProcess>, ExType)>,
}

const CURATED: &[&str] = &[
    "a[in b.0] | b[0]",
    "a[in b.out b.0] | b[c[0]]",
    "b[a[out b.0]]",
    "b[a[out b.in b.0] | 0]",
    "open a.0 | a[out<>.0]",
    "open a.open a.0 | !a[0]",
    "!a[in a.0]",
    "!a[in b.0] | !b[0]",
    "a[!b[out a.0]]",
    "new a.(a[in b.0] | b[open a.0])",
    "in<x>.x.0 | out<in a>.0 | b[0]",
    "in<x>.a[x.0] | out<in b>.0 | b[0]",
    "in<x>.open x.0 | !out<a>.0 | a[0]",
    "b[out<>.0 | in<>.a[0]] | open b.0",
    "!in<x>.x[0] | out<a>.0 | out<b>.0",
    "a[b[out a.open c.0] | c[0]]",
    "a[0] | a[in a.0] | open a.0",
    "new n.(n[0] | open n.0 | out<n>.0)",
    "in<x>.in<y>.x[y.0] | out<a>.out<in a>.0",
    "a[in<x>.x.0 | out<out a>.0]",
];

/// Number of prefixes, parallel compositions, restrictions and replications.
pub fn term_size(p: &Process) -> usize {
    match p {
        Process::Nil => 0,
        Process::Prefix(_, q) | Process::Nu(_, q) | Process::Bang(q) => 1 + term_size(q),
        Process::Par(a, b) => 1 + term_size(a) + term_size(b),
    }
}

/// The fixed corpus for oracle comparisons: encoded pi and ambient processes
/// and raw metacalculus terms, each of size at most 8. Two thirds of each kind
/// have at least one reduct.
pub fn corpus() -> Vec<Case> {
    let mut rng = gen::rng(8);
    let mut seen = BTreeSet::new();
    let mut out: Vec<Case> = Vec::new();
    let quotas = [("pi", 70), ("ma", 70), ("meta", 60)];
    for (kind, quota) in quotas {
        let rules = if kind == "pi" { rsp(2) } else { rsa(1) };
        let mut idle = 0;
        let mut taken = 0;
        if kind == "meta" {
            for src in CURATED {
                let q = p(src);
                assert!(term_size(&q) <= 8 && seen.insert(q.clone()), "{}", src);
                out.push(Case { kind, rules: rules.clone(), process: q, source: None });
                taken += 1;
            }
        }
        while taken < quota {
            let parts = rng.gen_range(1..=3);
            let mut comps = Vec::new();
            let mut source = Vec::new();
            let t = gen::ex_types()[rng.gen_range(0..2)].clone();
            for _ in 0..parts {
                let budget = rng.gen_range(2..=5);
                match kind {
                    "pi" => comps.push(encode_pi(&gen::PiGen::new(&mut rng, 2).process(budget, &[]))),
                    "ma" => source.push(gen::MaGen::new(&mut rng, 0.2).process(&t, &gen::MaGen::top_scope(), budget)),
                    _ => comps.push(gen::MetaGen::new(&mut rng).process(budget, &[])),
                }
            }
            let ma = (!source.is_empty()).then(|| MaProcess::par_all(source));
            let q = match &ma {
                Some(m) => encode_ma(m).process,
                None => Process::par_all(comps),
            };
            if term_size(&q) > 8 || !well_scoped(&q) || seen.contains(&q) {
                continue;
            }
            let reduces = !one_step_reducts(&rules, &q).is_empty();
            if !reduces && idle >= quota / 3 {
                continue;
            }
            idle += usize::from(!reduces);
            seen.insert(q.clone());
            out.push(Case { kind, rules: rules.clone(), process: q, source: ma.map(|m| (m, t)) });
            taken += 1;
        }
    }
    out
}
