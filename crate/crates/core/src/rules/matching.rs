use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::template::{ActionTempl, ElemTempl, ProcTempl, Var};
use crate::term::{apply_subst, float, fresh_name, rename, Action, Element, Message, Name, Process, Subst};

/// Values of metavariables after a successful match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    pub names: BTreeMap<Var, Name>,
    pub messages: BTreeMap<Var, Message>,
    pub procs: BTreeMap<Var, Arc<Process>>,
}

impl Binding {
    fn bind_name(&mut self, v: &Var, n: &Name) -> bool {
        if n.is_bullet() {
            return false;
        }
        match self.names.get(v) {
            Some(m) => m == n,
            None => {
                self.names.insert(v.clone(), n.clone());
                true
            }
        }
    }

    fn bind_message(&mut self, v: &Var, m: &Message) -> bool {
        match self.messages.get(v) {
            Some(m0) => m0 == m,
            None => {
                self.messages.insert(v.clone(), m.clone());
                true
            }
        }
    }
}

pub(crate) fn match_action(t: &ActionTempl, a: &Action, b: &Binding) -> Option<Binding> {
    if t.0.len() != a.0.len() {
        return None;
    }
    let mut b = b.clone();
    for (et, e) in t.0.iter().zip(&a.0) {
        let ok = match (et, e) {
            (ElemTempl::Concrete(x), Element::Name(n)) => n.base == *x,
            (ElemTempl::NameVar(v), Element::Name(n)) => b.bind_name(v, n),
            (ElemTempl::In(vs), Element::In(xs)) => vs.len() == xs.len() && vs.iter().zip(xs).all(|(v, x)| b.bind_name(v, x)),
            (ElemTempl::Out(vs), Element::Out(ms)) => {
                vs.len() == ms.len() && vs.iter().zip(ms).all(|(v, m)| b.bind_message(v, m))
            }
            _ => false,
        };
        if !ok {
            return None;
        }
    }
    Some(b)
}

/// Supply of names fresh for the process being rewritten.
pub(crate) struct Fresh {
    pub avoid: BTreeSet<Name>,
}

impl Fresh {
    /// Float `p`, renaming its lifted restrictions apart from everything seen so far.
    pub fn float(&mut self, p: &Arc<Process>) -> (Vec<Name>, Vec<Arc<Process>>) {
        let soup = float(p);
        let mut nus = Vec::new();
        let mut body = Process::par_all(soup.items);
        for x in soup.nus {
            if self.avoid.contains(&x) {
                let x2 = fresh_name(&x.base, &self.avoid);
                body = rename(&body, &x, &x2);
                self.avoid.insert(x2.clone());
                nus.push(x2);
            } else {
                self.avoid.insert(x.clone());
                nus.push(x);
            }
        }
        (nus, body.components())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SoupMatch {
    pub binding: Binding,
    pub rest: Vec<Arc<Process>>,
    pub nus: Vec<Name>,
}

enum Origin {
    Item,
    Copy(usize),
}

/// Match parallel templates against soup items. At the top level unmatched
/// items are returned as `rest`; below a prefix they go to process metavariables.
pub(crate) fn match_soup(
    comps: &[&ProcTempl],
    items: &[Arc<Process>],
    b: &Binding,
    top: bool,
    fresh: &mut Fresh,
) -> Vec<SoupMatch> {
    let prefixes: Vec<&ProcTempl> = comps.iter().copied().filter(|t| matches!(t, ProcTempl::Prefix(..))).collect();
    let vars: Vec<&Var> = comps
        .iter()
        .filter_map(|t| match t {
            ProcTempl::Var(v) => Some(v),
            _ => None,
        })
        .collect();
    let bangs: Vec<usize> = (0..items.len()).filter(|&i| matches!(&*items[i], Process::Bang(_))).collect();
    let mut out = Vec::new();
    for plan in unfold_plans(bangs.len(), prefixes.len()) {
        let mut pool: Vec<(Arc<Process>, Origin)> = items.iter().map(|p| (p.clone(), Origin::Item)).collect();
        let mut nus = Vec::new();
        let mut copy_id = 0;
        for (bi, &count) in plan.iter().enumerate() {
            let Process::Bang(body) = &*items[bangs[bi]] else { unreachable!() };
            for _ in 0..count {
                let (ns, cs) = fresh.float(body);
                nus.extend(ns);
                pool.extend(cs.into_iter().map(|c| (c, Origin::Copy(copy_id))));
                copy_id += 1;
            }
        }
        let start = SoupMatch { binding: b.clone(), rest: Vec::new(), nus };
        let mut partial = Vec::new();
        assign(&prefixes, &pool, &mut vec![false; pool.len()], start, fresh, &mut partial);
        for (m, used) in partial {
            let copies_used = (0..copy_id).all(|c| {
                pool.iter().zip(&used).any(|((_, o), u)| *u && matches!(o, Origin::Copy(k) if *k == c))
            });
            if !copies_used {
                continue;
            }
            let remaining: Vec<Arc<Process>> =
                pool.iter().zip(&used).filter(|(_, u)| !**u).map(|((p, _), _)| p.clone()).collect();
            distribute(&vars, &remaining, m, top, &mut out);
        }
    }
    out
}

/// Every way to unfold each of `n` replications between 0 and `max` times, at most `max` in total.
pub(crate) fn unfold_plans(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut plans = vec![vec![0; n]];
    if max == 0 {
        return plans;
    }
    let mut frontier = plans.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for plan in &frontier {
            let last = plan.iter().rposition(|&c| c > 0).unwrap_or(0);
            for i in last..n {
                let mut p = plan.clone();
                p[i] += 1;
                next.push(p);
            }
        }
        plans.extend(next.iter().cloned());
        frontier = next;
    }
    plans
}

fn assign(
    prefixes: &[&ProcTempl],
    pool: &[(Arc<Process>, Origin)],
    used: &mut Vec<bool>,
    m: SoupMatch,
    fresh: &mut Fresh,
    out: &mut Vec<(SoupMatch, Vec<bool>)>,
) {
    let Some((first, more)) = prefixes.split_first() else {
        out.push((m, used.clone()));
        return;
    };
    let ProcTempl::Prefix(_, at, pt) = first else { unreachable!() };
    for i in 0..pool.len() {
        if used[i] {
            continue;
        }
        let Process::Prefix(a, cont) = &*pool[i].0 else { continue };
        let Some(b) = match_action(at, a, &m.binding) else { continue };
        let (ns, cs) = fresh.float(cont);
        let inner = match_soup(&pt.components(), &cs, &b, false, fresh);
        used[i] = true;
        for im in inner {
            let mut nus = m.nus.clone();
            nus.extend(ns.iter().cloned());
            nus.extend(im.nus);
            assign(more, pool, used, SoupMatch { binding: im.binding, rest: Vec::new(), nus }, fresh, out);
        }
        used[i] = false;
    }
}

fn distribute(vars: &[&Var], remaining: &[Arc<Process>], m: SoupMatch, top: bool, out: &mut Vec<SoupMatch>) {
    let targets = vars.len() + usize::from(top);
    if targets == 0 {
        if remaining.is_empty() {
            out.push(m);
        }
        return;
    }
    let total = targets.pow(remaining.len() as u32);
    for code in 0..total {
        let mut buckets: Vec<Vec<Arc<Process>>> = vec![Vec::new(); targets];
        let mut c = code;
        for p in remaining {
            buckets[c % targets].push(p.clone());
            c /= targets;
        }
        let mut m2 = m.clone();
        let mut ok = true;
        for (v, bucket) in vars.iter().zip(&buckets) {
            let val = Process::par_all(bucket.iter().cloned());
            match m2.binding.procs.get(*v) {
                Some(old) if *old != val => ok = false,
                _ => {
                    m2.binding.procs.insert((*v).clone(), val);
                }
            }
        }
        if !ok {
            continue;
        }
        if top {
            m2.rest = buckets.pop().unwrap_or_default();
        }
        out.push(m2);
    }
}

fn inst_action(t: &ActionTempl, b: &Binding) -> Action {
    Action(
        t.0.iter()
            .map(|e| match e {
                ElemTempl::Concrete(x) => Element::Name(Name::from(x.clone())),
                ElemTempl::NameVar(v) => Element::Name(b.names[v].clone()),
                ElemTempl::In(vs) => Element::In(vs.iter().map(|v| b.names[v].clone()).collect()),
                ElemTempl::Out(vs) => Element::Out(vs.iter().map(|v| b.messages[v].clone()).collect()),
            })
            .collect(),
    )
}

/// Build the process a template denotes under a binding.
pub fn instantiate(t: &ProcTempl, b: &Binding) -> Arc<Process> {
    match t {
        ProcTempl::Nil => Process::nil(),
        ProcTempl::Var(v) => b.procs[v].clone(),
        ProcTempl::Par(l, r) => Process::par(instantiate(l, b), instantiate(r, b)),
        ProcTempl::Prefix(_, at, pt) => Process::prefix(inst_action(at, b), instantiate(pt, b)),
        ProcTempl::Subst(pairs, v) => {
            let mut s = Subst::new();
            for (a, src) in pairs {
                let m = match b.names.get(src) {
                    Some(n) => Message::name(n.clone()),
                    None => b.messages[src].clone(),
                };
                s.insert(b.names[a].clone(), m);
            }
            apply_subst(&s, &b.procs[v])
        }
    }
}
