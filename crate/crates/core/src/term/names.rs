use std::collections::BTreeSet;

use super::name::{BasicName, Name};
use super::syntax::{Action, Element, Message, Process};

/// Free names (with indices) of a message.
pub fn message_names(m: &Message, out: &mut BTreeSet<Name>) {
    for n in m.names() {
        out.insert(n.clone());
    }
}

/// Names of an action that are not bound by its own binders.
pub fn action_free_names(a: &Action) -> BTreeSet<Name> {
    let bound: BTreeSet<&Name> = a.binders().into_iter().collect();
    let mut out = BTreeSet::new();
    for e in &a.0 {
        match e {
            Element::Name(n) => {
                out.insert(n.clone());
            }
            Element::In(_) => {}
            Element::Out(ms) => ms.iter().for_each(|m| message_names(m, &mut out)),
        }
    }
    out.retain(|n| !bound.contains(n));
    out
}

/// Free names of a process, reserved names included.
pub fn free_names(p: &Process) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    collect_free(p, &mut Vec::new(), &mut out);
    out
}

fn collect_free(p: &Process, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match p {
        Process::Nil => {}
        Process::Prefix(a, q) => {
            let bs: Vec<Name> = a.binders().into_iter().cloned().collect();
            let n = bs.len();
            bound.extend(bs);
            for x in action_free_names(a) {
                if !bound.contains(&x) {
                    out.insert(x);
                }
            }
            collect_free(q, bound, out);
            bound.truncate(bound.len() - n);
        }
        Process::Par(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Process::Nu(x, q) => {
            bound.push(x.clone());
            collect_free(q, bound, out);
            bound.pop();
        }
        Process::Bang(q) => collect_free(q, bound, out),
    }
}

/// All names occurring anywhere in the process, binders included.
pub fn all_names(p: &Process) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fn go(p: &Process, out: &mut BTreeSet<Name>) {
        match p {
            Process::Nil => {}
            Process::Prefix(a, q) => {
                for e in &a.0 {
                    match e {
                        Element::Name(n) => {
                            out.insert(n.clone());
                        }
                        Element::In(xs) => out.extend(xs.iter().cloned()),
                        Element::Out(ms) => ms.iter().for_each(|m| message_names(m, out)),
                    }
                }
                go(q, out);
            }
            Process::Par(a, b) => {
                go(a, out);
                go(b, out);
            }
            Process::Nu(x, q) => {
                out.insert(x.clone());
                go(q, out);
            }
            Process::Bang(q) => go(q, out),
        }
    }
    go(p, &mut out);
    out
}

/// Free basic names.
pub fn fbn(p: &Process) -> BTreeSet<BasicName> {
    free_names(p).into_iter().map(|n| n.base).collect()
}

/// Basic names bound by input binders.
pub fn ibn(p: &Process) -> BTreeSet<BasicName> {
    let mut out = BTreeSet::new();
    visit_binders(p, &mut |b, is_nu| {
        if !is_nu {
            out.insert(b.base.clone());
        }
    });
    out
}

/// Basic names bound by restriction.
pub fn nbn(p: &Process) -> BTreeSet<BasicName> {
    let mut out = BTreeSet::new();
    visit_binders(p, &mut |b, is_nu| {
        if is_nu {
            out.insert(b.base.clone());
        }
    });
    out
}

fn visit_binders(p: &Process, f: &mut dyn FnMut(&Name, bool)) {
    match p {
        Process::Nil => {}
        Process::Prefix(a, q) => {
            for b in a.binders() {
                f(b, false);
            }
            visit_binders(q, f);
        }
        Process::Par(a, b) => {
            visit_binders(a, f);
            visit_binders(b, f);
        }
        Process::Nu(x, q) => {
            f(x, true);
            visit_binders(q, f);
        }
        Process::Bang(q) => visit_binders(q, f),
    }
}

/// Reasons a process fails to be well scoped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScopeViolation {
    /// A basic name is in two of fbn, ibn, nbn.
    Overlap(BasicName),
    /// An input binder rebinds a basic name already bound by an enclosing input.
    NestedRebind(BasicName),
    /// One input binds the same basic name twice.
    DuplicateBinder(BasicName),
    ReservedBound(BasicName),
}

pub fn scope_violations(p: &Process) -> Vec<ScopeViolation> {
    let mut out = Vec::new();
    let (f, i, n) = (fbn(p), ibn(p), nbn(p));
    let mut overlap: BTreeSet<BasicName> = BTreeSet::new();
    for x in f.intersection(&i).chain(f.intersection(&n)).chain(i.intersection(&n)) {
        if !x.is_reserved() {
            overlap.insert(x.clone());
        }
    }
    out.extend(overlap.into_iter().map(ScopeViolation::Overlap));
    let mut reserved = BTreeSet::new();
    visit_binders(p, &mut |b, _| {
        if b.is_reserved() {
            reserved.insert(b.base.clone());
        }
    });
    out.extend(reserved.into_iter().map(ScopeViolation::ReservedBound));
    nested(p, &mut Vec::new(), &mut out);
    out
}

fn nested(p: &Process, inputs: &mut Vec<BasicName>, out: &mut Vec<ScopeViolation>) {
    match p {
        Process::Nil => {}
        Process::Prefix(a, q) => {
            let bs: Vec<BasicName> = a.binders().into_iter().map(|b| b.base.clone()).collect();
            let mut seen = BTreeSet::new();
            for b in &bs {
                if !seen.insert(b.clone()) {
                    out.push(ScopeViolation::DuplicateBinder(b.clone()));
                }
                if inputs.contains(b) {
                    out.push(ScopeViolation::NestedRebind(b.clone()));
                }
            }
            let k = bs.len();
            inputs.extend(bs);
            nested(q, inputs, out);
            inputs.truncate(inputs.len() - k);
        }
        Process::Par(a, b) => {
            nested(a, inputs, out);
            nested(b, inputs, out);
        }
        Process::Nu(_, q) | Process::Bang(q) => nested(q, inputs, out),
    }
}

/// Conditions W1-W3: free, input-bound and restriction-bound basic names are
/// pairwise disjoint (reserved names aside), inputs never rebind an enclosing
/// input's names, and one input binds distinct names.
pub fn well_scoped(p: &Process) -> bool {
    scope_violations(p).is_empty()
}
