use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::name::{BasicName, Name};
use super::names::{all_names, free_names};
use super::subst::{fresh_name, rename};
use super::syntax::{Action, Element, Message, Process};

/// A process with its restrictions floated to the top: `new xs.(c1 | ... | cn)`
/// where every component is a prefix or a replication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Soup {
    pub nus: Vec<Name>,
    pub items: Vec<Arc<Process>>,
}

impl Soup {
    pub fn into_process(self) -> Arc<Process> {
        Process::nus(self.nus, Process::par_all(self.items))
    }
}

struct Floater {
    avoid: BTreeSet<Name>,
    unique: BTreeSet<Name>,
}

impl Floater {
    fn new(p: &Process) -> Floater {
        let mut counts: BTreeMap<Name, usize> = BTreeMap::new();
        count_binders(p, &mut counts);
        let free = free_names(p);
        let unique = counts.into_iter().filter(|(n, c)| *c == 1 && !free.contains(n)).map(|(n, _)| n).collect();
        Floater { avoid: all_names(p), unique }
    }

    fn float(&mut self, p: &Arc<Process>, nus: &mut Vec<Name>, items: &mut Vec<Arc<Process>>) {
        match &**p {
            Process::Nil => {}
            Process::Par(a, b) => {
                self.float(a, nus, items);
                self.float(b, nus, items);
            }
            Process::Nu(x, q) => {
                if self.unique.remove(x) {
                    nus.push(x.clone());
                    self.float(q, nus, items);
                } else {
                    let x2 = fresh_name(&x.base, &self.avoid);
                    self.avoid.insert(x2.clone());
                    let q2 = rename(q, x, &x2);
                    nus.push(x2);
                    self.float(&q2, nus, items);
                }
            }
            Process::Prefix(a, q) => {
                let mut inner = Vec::new();
                self.float(q, nus, &mut inner);
                items.push(Process::prefix(a.clone(), Process::par_all(inner)));
            }
            Process::Bang(q) => {
                let mut ns = Vec::new();
                let mut inner = Vec::new();
                self.float(q, &mut ns, &mut inner);
                let body = gc(Soup { nus: ns, items: inner });
                if !body.items.is_empty() {
                    items.push(Process::bang(body.into_process()));
                }
            }
        }
    }
}

fn count_binders(p: &Process, counts: &mut BTreeMap<Name, usize>) {
    match p {
        Process::Nil => {}
        Process::Prefix(a, q) => {
            for b in a.binders() {
                *counts.entry(b.clone()).or_default() += 1;
            }
            count_binders(q, counts);
        }
        Process::Par(a, b) => {
            count_binders(a, counts);
            count_binders(b, counts);
        }
        Process::Nu(x, q) => {
            *counts.entry(x.clone()).or_default() += 1;
            count_binders(q, counts);
        }
        Process::Bang(q) => count_binders(q, counts),
    }
}

fn gc(s: Soup) -> Soup {
    let fv: BTreeSet<Name> = s.items.iter().flat_map(|c| free_names(c)).collect();
    Soup { nus: s.nus.into_iter().filter(|x| fv.contains(x)).collect(), items: s.items }
}

/// Float every restriction not under a replication to the top (renaming
/// apart where needed), flatten parallel composition, drop `0`, `!0` and
/// unused restrictions.
pub fn float(p: &Arc<Process>) -> Soup {
    let mut f = Floater::new(p);
    let mut nus = Vec::new();
    let mut items = Vec::new();
    f.float(p, &mut nus, &mut items);
    gc(Soup { nus, items })
}

/// Canonical representative of the structural congruence class.
pub fn struct_normalize(p: &Arc<Process>) -> Arc<Process> {
    let mut cur = reindex_canonical(&sort_rec(&float(p).into_process()));
    for _ in 0..8 {
        let next = reindex_canonical(&sort_rec(&cur));
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

pub fn congruent(p: &Arc<Process>, q: &Arc<Process>) -> bool {
    alpha_eq(&struct_normalize(p), &struct_normalize(q))
}

fn split_nus(p: &Arc<Process>) -> (Vec<Name>, Arc<Process>) {
    let mut nus = Vec::new();
    let mut cur = p.clone();
    while let Process::Nu(x, q) = &*cur {
        nus.push(x.clone());
        let q = q.clone();
        cur = q;
    }
    (nus, cur)
}

fn sort_rec(p: &Arc<Process>) -> Arc<Process> {
    let (nus, body) = split_nus(p);
    let comps: Vec<Arc<Process>> = body
        .components()
        .into_iter()
        .map(|c| match &*c {
            Process::Prefix(a, q) => Process::prefix(a.clone(), sort_rec(q)),
            Process::Bang(q) => Process::bang(sort_rec(q)),
            _ => sort_rec(&c),
        })
        .collect();
    let top: BTreeSet<Name> = nus.iter().cloned().collect();
    let mut keyed: Vec<(Arc<Process>, Arc<Process>)> = comps.into_iter().map(|c| (anonymize(&c, &top), c)).collect();
    keyed.sort();
    let comps: Vec<Arc<Process>> = keyed.into_iter().map(|(_, c)| c).collect();
    let mut order: Vec<Name> = Vec::new();
    for c in &comps {
        for n in occurrence_order(c) {
            if top.contains(&n) && !order.contains(&n) {
                order.push(n);
            }
        }
    }
    for x in nus {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    Process::nus(order, Process::par_all(comps))
}

/// Bound names renamed by binding order, names in `top` marked as hidden.
fn anonymize(p: &Arc<Process>, top: &BTreeSet<Name>) -> Arc<Process> {
    let mut counter: BTreeMap<BasicName, u32> = BTreeMap::new();
    let mut env: Vec<(Name, Name)> = top.iter().map(|n| (n.clone(), Name::indexed(n.base.clone(), u32::MAX))).collect();
    reindex(p, &mut env, &mut |b: &Name| {
        let c = counter.entry(b.base.clone()).or_default();
        *c += 1;
        Name::indexed(b.base.clone(), u32::MAX - 1 - *c)
    })
}

/// Free-name occurrences in traversal order.
fn occurrence_order(p: &Process) -> Vec<Name> {
    let mut out = Vec::new();
    fn go(p: &Process, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
        let see = |n: &Name, bound: &Vec<Name>, out: &mut Vec<Name>| {
            if !bound.contains(n) {
                out.push(n.clone());
            }
        };
        match p {
            Process::Nil => {}
            Process::Prefix(a, q) => {
                let bs: Vec<Name> = a.binders().into_iter().cloned().collect();
                let k = bs.len();
                bound.extend(bs);
                for e in &a.0 {
                    match e {
                        Element::Name(n) => see(n, bound, out),
                        Element::In(_) => {}
                        Element::Out(ms) => {
                            for m in ms {
                                for n in m.names() {
                                    see(n, bound, out);
                                }
                            }
                        }
                    }
                }
                go(q, bound, out);
                bound.truncate(bound.len() - k);
            }
            Process::Par(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Process::Nu(x, q) => {
                bound.push(x.clone());
                go(q, bound, out);
                bound.pop();
            }
            Process::Bang(q) => go(q, bound, out),
        }
    }
    go(p, &mut Vec::new(), &mut out);
    out
}

/// Rename every binder with `assign`, in traversal order; `env` maps names
/// bound outside `p`.
fn reindex(p: &Arc<Process>, env: &mut Vec<(Name, Name)>, assign: &mut dyn FnMut(&Name) -> Name) -> Arc<Process> {
    fn look(n: &Name, env: &[(Name, Name)]) -> Name {
        env.iter().rev().find(|(k, _)| k == n).map(|(_, v)| v.clone()).unwrap_or_else(|| n.clone())
    }
    match &**p {
        Process::Nil => p.clone(),
        Process::Par(a, b) => {
            let a2 = reindex(a, env, assign);
            let b2 = reindex(b, env, assign);
            Process::par(a2, b2)
        }
        Process::Bang(q) => Process::bang(reindex(q, env, assign)),
        Process::Nu(x, q) => {
            let x2 = assign(x);
            env.push((x.clone(), x2.clone()));
            let q2 = reindex(q, env, assign);
            env.pop();
            Process::nu(x2, q2)
        }
        Process::Prefix(a, q) => {
            let bs: Vec<Name> = a.binders().into_iter().cloned().collect();
            for b in &bs {
                let b2 = assign(b);
                env.push((b.clone(), b2));
            }
            let map_msg = |m: &Message, env: &[(Name, Name)]| map_names(m, &|n| look(n, env));
            let a2 = Action(
                a.0.iter()
                    .map(|e| match e {
                        Element::Name(n) => Element::Name(look(n, env)),
                        Element::In(xs) => Element::In(xs.iter().map(|x| look(x, env)).collect()),
                        Element::Out(ms) => Element::Out(ms.iter().map(|m| map_msg(m, env)).collect()),
                    })
                    .collect(),
            );
            let q2 = reindex(q, env, assign);
            env.truncate(env.len() - bs.len());
            Process::prefix(a2, q2)
        }
    }
}

fn map_names(m: &Message, f: &dyn Fn(&Name) -> Name) -> Message {
    match m {
        Message::Form(ns) => Message::Form(ns.iter().map(f).collect()),
        Message::Empty => Message::Empty,
        Message::Comp(a, b) => Message::comp(map_names(a, f), map_names(b, f)),
    }
}

/// Canonical alpha-representative: binders take, in traversal order, the
/// smallest unused index of their base that is not free in `p`.
pub fn reindex_canonical(p: &Arc<Process>) -> Arc<Process> {
    let free = free_names(p);
    let mut next: BTreeMap<BasicName, u32> = BTreeMap::new();
    reindex(p, &mut Vec::new(), &mut |b: &Name| {
        let c = next.entry(b.base.clone()).or_default();
        while free.contains(&Name::indexed(b.base.clone(), *c)) {
            *c += 1;
        }
        let n = Name::indexed(b.base.clone(), *c);
        *c += 1;
        n
    })
}

/// Alpha-equivalence by simultaneous traversal.
pub fn alpha_eq(p: &Process, q: &Process) -> bool {
    Alpha::default().proc(p, q)
}

#[derive(Default)]
struct Alpha {
    left: Vec<Name>,
    right: Vec<Name>,
}

impl Alpha {
    fn name(&self, a: &Name, b: &Name) -> bool {
        let i = self.left.iter().rposition(|n| n == a);
        let j = self.right.iter().rposition(|n| n == b);
        match (i, j) {
            (Some(i), Some(j)) => i == j,
            (None, None) => a == b,
            _ => false,
        }
    }

    fn message(&self, a: &Message, b: &Message) -> bool {
        match (a, b) {
            (Message::Form(x), Message::Form(y)) => x.len() == y.len() && x.iter().zip(y).all(|(m, n)| self.name(m, n)),
            (Message::Empty, Message::Empty) => true,
            (Message::Comp(a1, a2), Message::Comp(b1, b2)) => self.message(a1, b1) && self.message(a2, b2),
            _ => false,
        }
    }

    fn proc(&mut self, p: &Process, q: &Process) -> bool {
        match (p, q) {
            (Process::Nil, Process::Nil) => true,
            (Process::Par(a, b), Process::Par(c, d)) => self.proc(a, c) && self.proc(b, d),
            (Process::Bang(a), Process::Bang(b)) => self.proc(a, b),
            (Process::Nu(x, a), Process::Nu(y, b)) => {
                if x.base != y.base {
                    return false;
                }
                self.left.push(x.clone());
                self.right.push(y.clone());
                let r = self.proc(a, b);
                self.left.pop();
                self.right.pop();
                r
            }
            (Process::Prefix(a, p2), Process::Prefix(b, q2)) => {
                if a.0.len() != b.0.len() {
                    return false;
                }
                let (ba, bb) = (a.binders(), b.binders());
                if ba.len() != bb.len() || ba.iter().zip(&bb).any(|(x, y)| x.base != y.base) {
                    return false;
                }
                let k = ba.len();
                self.left.extend(ba.into_iter().cloned());
                self.right.extend(bb.into_iter().cloned());
                let ok = a.0.iter().zip(&b.0).all(|(e, f)| match (e, f) {
                    (Element::Name(m), Element::Name(n)) => self.name(m, n),
                    (Element::In(xs), Element::In(ys)) => xs.len() == ys.len(),
                    (Element::Out(ms), Element::Out(ns)) => {
                        ms.len() == ns.len() && ms.iter().zip(ns).all(|(m, n)| self.message(m, n))
                    }
                    _ => false,
                }) && self.proc(p2, q2);
                self.left.truncate(self.left.len() - k);
                self.right.truncate(self.right.len() - k);
                ok
            }
            _ => false,
        }
    }
}
