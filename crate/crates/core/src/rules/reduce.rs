use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matching::{instantiate, match_soup, Binding, Fresh};
use super::template::RuleSet;
use crate::term::{all_names, float, struct_normalize, Process};

/// All one-step reducts, each in canonical form. Expects a well-scoped process.
pub fn one_step_reducts(rules: &RuleSet, p: &Arc<Process>) -> BTreeSet<Arc<Process>> {
    let q = struct_normalize(p);
    let soup = float(&q);
    let mut fresh = Fresh { avoid: all_names(&q) };
    let mut out = BTreeSet::new();
    let rebuild = |nus: &[crate::term::Name], extra: &[crate::term::Name], head: Arc<Process>, rest: &[Arc<Process>]| {
        let body = Process::par_all(std::iter::once(head).chain(rest.iter().cloned()));
        struct_normalize(&Process::nus(nus.iter().chain(extra).cloned().collect::<Vec<_>>(), body))
    };
    for (lhs, rhs) in rules.reduce_rules() {
        for m in match_soup(&lhs.components(), &soup.items, &Binding::default(), true, &mut fresh) {
            let head = instantiate(rhs, &m.binding);
            out.insert(rebuild(&soup.nus, &m.nus, head, &m.rest));
        }
    }
    for (var, body) in rules.active_rules() {
        for m in match_soup(&body.components(), &soup.items, &Binding::default(), true, &mut fresh) {
            let inner = m.binding.procs[var].clone();
            for r in one_step_reducts(rules, &inner) {
                let mut b = m.binding.clone();
                b.procs.insert(var.clone(), r);
                out.insert(rebuild(&soup.nus, &m.nus, instantiate(body, &b), &m.rest));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Breadth-first: every layer holds the states first reached at that depth.
    All,
    /// Always the least reduct in the canonical order.
    First,
    /// A uniformly chosen reduct, reproducible from the seed.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// `layers[0]` is the (canonical) start state.
    pub layers: Vec<Vec<Arc<Process>>>,
    /// Exploration stopped at the step or state bound while reductions remained.
    pub truncated: bool,
}

impl Trace {
    /// The states of a single-path trace.
    pub fn path(&self) -> Vec<Arc<Process>> {
        self.layers.iter().filter_map(|l| l.first().cloned()).collect()
    }
}

const MAX_STATES: usize = 100_000;

pub fn rewrite_trace(rules: &RuleSet, p: &Arc<Process>, strategy: Strategy, max_steps: usize) -> Trace {
    let start = struct_normalize(p);
    let mut layers = vec![vec![start.clone()]];
    match strategy {
        Strategy::All => {
            let mut seen: BTreeSet<Arc<Process>> = BTreeSet::new();
            seen.insert(start);
            for _ in 0..max_steps {
                let mut next = BTreeSet::new();
                for s in layers.last().unwrap() {
                    for r in one_step_reducts(rules, s) {
                        if !seen.contains(&r) {
                            next.insert(r);
                        }
                    }
                }
                if next.is_empty() {
                    return Trace { layers, truncated: false };
                }
                seen.extend(next.iter().cloned());
                layers.push(next.into_iter().collect());
                if seen.len() > MAX_STATES {
                    return Trace { layers, truncated: true };
                }
            }
            let truncated = layers
                .last()
                .unwrap()
                .iter()
                .any(|s| one_step_reducts(rules, s).iter().any(|r| !seen.contains(r)));
            Trace { layers, truncated }
        }
        Strategy::First | Strategy::Random(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(match strategy {
                Strategy::Random(s) => s,
                _ => 0,
            });
            let mut cur = start;
            for _ in 0..max_steps {
                let rs: Vec<Arc<Process>> = one_step_reducts(rules, &cur).into_iter().collect();
                if rs.is_empty() {
                    return Trace { layers, truncated: false };
                }
                let i = if strategy == Strategy::First { 0 } else { rng.gen_range(0..rs.len()) };
                cur = rs[i].clone();
                layers.push(vec![cur.clone()]);
            }
            let truncated = !one_step_reducts(rules, &cur).is_empty();
            Trace { layers, truncated }
        }
    }
}
