use std::collections::{BTreeMap, BTreeSet};

use crate::rules::{ActionTempl, ElemTempl, ProcTempl, RuleSet, Var};
use crate::shape::{ActionType, ElementType, MessageType, NodeId, TypeSubst};
use crate::term::BasicName;

/// Read access to outgoing edges.
pub(crate) trait Edges {
    fn edges(&self, n: NodeId) -> Vec<(ActionType, NodeId)>;
}

/// A rule match against a shape graph: metavariables stand for basic
/// names, message types and nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct SymBinding {
    pub names: BTreeMap<Var, BasicName>,
    pub msgs: BTreeMap<Var, MessageType>,
    pub procs: BTreeMap<Var, NodeId>,
    /// Node reached by each matched prefix template.
    pub prefix_nodes: BTreeMap<usize, NodeId>,
}

impl SymBinding {
    fn bind_name(&mut self, v: &Var, a: &BasicName) -> bool {
        if a.is_bullet() {
            return false;
        }
        match self.names.get(v) {
            Some(b) => b == a,
            None => {
                self.names.insert(v.clone(), a.clone());
                true
            }
        }
    }

    fn bind_msg(&mut self, v: &Var, t: &MessageType) -> bool {
        match self.msgs.get(v) {
            Some(u) => u == t,
            None => {
                self.msgs.insert(v.clone(), t.clone());
                true
            }
        }
    }

    /// Label an action template denotes under this binding.
    pub fn inst(&self, at: &ActionTempl) -> ActionType {
        ActionType(
            at.0.iter()
                .map(|e| match e {
                    ElemTempl::Concrete(x) => ElementType::Name(x.clone()),
                    ElemTempl::NameVar(v) => ElementType::Name(self.names[v].clone()),
                    ElemTempl::In(vs) => ElementType::In(vs.iter().map(|v| self.names[v].clone()).collect()),
                    ElemTempl::Out(vs) => ElementType::Out(vs.iter().map(|v| self.msgs[v].clone()).collect()),
                })
                .collect(),
        )
    }

    pub fn subst_of(&self, pairs: &[(Var, Var)]) -> TypeSubst {
        pairs
            .iter()
            .map(|(a, s)| {
                let v = match self.names.get(s) {
                    Some(b) => MessageType::Single(b.clone()),
                    None => self.msgs[s].clone(),
                };
                (self.names[a].clone(), v)
            })
            .filter(|(k, v)| *v != MessageType::Single(k.clone()))
            .collect()
    }
}

pub(crate) fn match_action(at: &ActionTempl, l: &ActionType, b: &SymBinding) -> Option<SymBinding> {
    if at.0.len() != l.0.len() {
        return None;
    }
    let mut b = b.clone();
    for (t, e) in at.0.iter().zip(&l.0) {
        let ok = match (t, e) {
            (ElemTempl::Concrete(x), ElementType::Name(a)) => a == x,
            (ElemTempl::NameVar(v), ElementType::Name(a)) => b.bind_name(v, a),
            (ElemTempl::In(vs), ElementType::In(bs)) => vs.len() == bs.len() && vs.iter().zip(bs).all(|(v, a)| b.bind_name(v, a)),
            (ElemTempl::Out(vs), ElementType::Out(ts)) => vs.len() == ts.len() && vs.iter().zip(ts).all(|(v, t)| b.bind_msg(v, t)),
            _ => false,
        };
        if !ok {
            return None;
        }
    }
    Some(b)
}

/// Every symbolic match of parallel templates at node `x`. Components match
/// independently, so one edge may serve several of them.
pub(crate) fn gmatch<G: Edges>(g: &G, comps: &[&ProcTempl], x: NodeId, b: SymBinding) -> BTreeSet<SymBinding> {
    let Some((first, rest)) = comps.split_first() else {
        return BTreeSet::from([b]);
    };
    let mut out = BTreeSet::new();
    match first {
        ProcTempl::Prefix(id, at, pt) => {
            for (l, t) in g.edges(x) {
                if let Some(mut b1) = match_action(at, &l, &b) {
                    b1.prefix_nodes.insert(*id, t);
                    for b2 in gmatch(g, &pt.components(), t, b1) {
                        out.extend(gmatch(g, rest, x, b2));
                    }
                }
            }
        }
        ProcTempl::Var(v) => {
            let mut b1 = b;
            b1.procs.insert(v.clone(), x);
            out.extend(gmatch(g, rest, x, b1));
        }
        _ => out.extend(gmatch(g, rest, x, b)),
    }
    out
}

/// Nodes where reduction may happen: the root and everything reachable
/// through the prefixes of active contexts.
pub(crate) fn active_nodes<G: Edges>(g: &G, rules: &RuleSet, root: NodeId) -> BTreeSet<NodeId> {
    let paths: Vec<Vec<&ActionTempl>> = rules.active_rules().filter_map(|(v, body)| body.path_to(v)).collect();
    let mut active = BTreeSet::from([root]);
    let mut work = vec![root];
    while let Some(x) = work.pop() {
        for path in &paths {
            for y in follow(g, x, path, &SymBinding::default()) {
                if active.insert(y) {
                    work.push(y);
                }
            }
        }
    }
    active
}

fn follow<G: Edges>(g: &G, x: NodeId, path: &[&ActionTempl], b: &SymBinding) -> Vec<NodeId> {
    let Some((first, rest)) = path.split_first() else {
        return vec![x];
    };
    let mut out = Vec::new();
    for (l, t) in g.edges(x) {
        if let Some(b1) = match_action(first, &l, b) {
            out.extend(follow(g, t, rest, &b1));
        }
    }
    out
}
