use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::name::{BasicName, Name};
use super::names::{all_names, free_names};
use super::syntax::{Action, Element, Message, Process};

/// Finite map from names to messages.
pub type Subst = BTreeMap<Name, Message>;

/// Smallest-index name of `base` not in `avoid`.
pub fn fresh_name(base: &BasicName, avoid: &BTreeSet<Name>) -> Name {
    (0..)
        .map(|i| Name::indexed(base.clone(), i))
        .find(|n| !avoid.contains(n))
        .expect("indices are unbounded")
}

fn range_names(s: &Subst) -> BTreeSet<Name> {
    s.values().flat_map(|m| m.names().into_iter().cloned()).collect()
}

/// Substitution of a name by another name, capture avoiding.
pub fn rename(p: &Arc<Process>, from: &Name, to: &Name) -> Arc<Process> {
    if from == to {
        return p.clone();
    }
    let mut s = Subst::new();
    s.insert(from.clone(), Message::name(to.clone()));
    apply_subst(&s, p)
}

/// Capture-avoiding substitution. A composite message placed where a single
/// name is required becomes `•`; a single-name action `x.P` with `x` mapped to
/// a message becomes that message's forms as prefixes.
pub fn apply_subst(s: &Subst, p: &Arc<Process>) -> Arc<Process> {
    if s.is_empty() {
        return p.clone();
    }
    let fv = free_names(p);
    let s: Subst = s.iter().filter(|(k, _)| fv.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
    if s.is_empty() {
        return p.clone();
    }
    match &**p {
        Process::Nil => p.clone(),
        Process::Par(a, b) => Process::par(apply_subst(&s, a), apply_subst(&s, b)),
        Process::Bang(q) => Process::bang(apply_subst(&s, q)),
        Process::Nu(x, q) => {
            let rng = range_names(&s);
            if rng.contains(x) {
                let mut avoid = rng;
                avoid.extend(all_names(q));
                avoid.extend(s.keys().cloned());
                let x2 = fresh_name(&x.base, &avoid);
                let q2 = rename(q, x, &x2);
                Process::nu(x2, apply_subst(&s, &q2))
            } else {
                Process::nu(x.clone(), apply_subst(&s, q))
            }
        }
        Process::Prefix(a, q) => {
            let rng = range_names(&s);
            let clashes: Vec<Name> = a.binders().into_iter().filter(|b| rng.contains(b)).cloned().collect();
            let (a, q) = if clashes.is_empty() {
                (a.clone(), q.clone())
            } else {
                let mut avoid = rng;
                avoid.extend(all_names(p));
                avoid.extend(s.keys().cloned());
                let mut a = a.clone();
                let mut q = q.clone();
                for b in clashes {
                    let b2 = fresh_name(&b.base, &avoid);
                    avoid.insert(b2.clone());
                    a = rename_binder(&a, &b, &b2);
                    q = rename(&q, &b, &b2);
                }
                (a, q)
            };
            if let [Element::Name(x)] = a.0.as_slice() {
                if let Some(m) = s.get(x) {
                    return splice(m, apply_subst(&s, &q));
                }
            }
            Process::prefix(subst_action(&a, &s), apply_subst(&s, &q))
        }
    }
}

fn rename_binder(a: &Action, from: &Name, to: &Name) -> Action {
    let swap = |n: &Name| if n == from { to.clone() } else { n.clone() };
    Action(
        a.0.iter()
            .map(|e| match e {
                Element::Name(n) => Element::Name(swap(n)),
                Element::In(xs) => Element::In(xs.iter().map(swap).collect()),
                Element::Out(ms) => Element::Out(ms.iter().map(|m| map_message_names(m, &swap)).collect()),
            })
            .collect(),
    )
}

fn map_message_names(m: &Message, f: &dyn Fn(&Name) -> Name) -> Message {
    match m {
        Message::Form(ns) => Message::Form(ns.iter().map(f).collect()),
        Message::Empty => Message::Empty,
        Message::Comp(a, b) => Message::comp(map_message_names(a, f), map_message_names(b, f)),
    }
}

/// The forms of `m` as a chain of prefixes in front of `cont`.
pub fn splice(m: &Message, cont: Arc<Process>) -> Arc<Process> {
    m.components().into_iter().rev().fold(cont, |acc, form| {
        Process::prefix(Action(form.iter().cloned().map(Element::Name).collect()), acc)
    })
}

fn name_slot(n: &Name, s: &Subst) -> Name {
    match s.get(n) {
        None => n.clone(),
        Some(m) => m.as_name().cloned().unwrap_or_else(Name::bullet),
    }
}

/// Substitution inside one action, binders excluded.
pub fn subst_action(a: &Action, s: &Subst) -> Action {
    let bound: Vec<&Name> = a.binders();
    let s: Subst = s.iter().filter(|(k, _)| !bound.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
    Action(
        a.0.iter()
            .map(|e| match e {
                Element::Name(n) => Element::Name(name_slot(n, &s)),
                Element::In(xs) => Element::In(xs.clone()),
                Element::Out(ms) => Element::Out(ms.iter().map(|m| subst_message(m, &s)).collect()),
            })
            .collect(),
    )
}

pub fn subst_message(m: &Message, s: &Subst) -> Message {
    match m {
        Message::Form(ns) if ns.len() == 1 => match s.get(&ns[0]) {
            Some(v) => v.clone(),
            None => m.clone(),
        },
        Message::Form(ns) => Message::Form(ns.iter().map(|n| name_slot(n, s)).collect()),
        Message::Empty => Message::Empty,
        Message::Comp(a, b) => Message::comp(subst_message(a, s), subst_message(b, s)),
    }
}
