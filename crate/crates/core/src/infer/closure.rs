use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::sym::{active_nodes, gmatch, Edges, SymBinding};
use crate::rules::{ProcTempl, RuleSet};
use crate::shape::{ActionType, ElementType, FormType, MessageType, NodeId, ShapePredicate, TypeSubst};

/// A rule instance at an active node whose result the graph does not cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    /// Index of the rule in the rule set, and its text.
    pub rule: usize,
    pub rule_text: String,
    pub site: NodeId,
    /// Labels required out of `site` that no edge covers.
    pub missing: Vec<(NodeId, ActionType)>,
    /// Existing labels that would need a wider star: (present, required).
    pub widened: Vec<(ActionType, ActionType)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Goal {
    /// `big` covers `σ(small)`.
    Sim(NodeId, NodeId, TypeSubst),
    /// `big` covers any sequence of forms from the set followed by `σ(small)`.
    Splice(NodeId, BTreeSet<FormType>, NodeId, TypeSubst),
}

struct View {
    adj: BTreeMap<NodeId, Vec<(ActionType, NodeId)>>,
}

impl Edges for View {
    fn edges(&self, n: NodeId) -> Vec<(ActionType, NodeId)> {
        self.adj.get(&n).cloned().unwrap_or_default()
    }
}

/// Greatest-fixpoint solver for simulation goals over one graph.
pub(crate) struct Checker {
    view: View,
    solved: HashMap<Goal, bool>,
}

impl Checker {
    pub fn new(s: &ShapePredicate) -> Checker {
        let mut adj: BTreeMap<NodeId, Vec<(ActionType, NodeId)>> = BTreeMap::new();
        for e in &s.graph.edges {
            adj.entry(e.src).or_default().push((e.label.clone(), e.dst));
        }
        Checker { view: View { adj }, solved: HashMap::new() }
    }

    /// Conjunction of disjunctions of subgoals.
    fn clauses(&self, g: &Goal) -> Vec<Vec<Goal>> {
        match g {
            Goal::Sim(big, small, s) => {
                if s.is_empty() && big == small {
                    return Vec::new();
                }
                let mut out = Vec::new();
                for (l, t) in self.view.edges(*small) {
                    if let [ElementType::Name(a)] = l.0.as_slice() {
                        if let Some(MessageType::Star(fs)) = s.get(a) {
                            out.push(vec![Goal::Splice(*big, fs.clone(), t, s.clone())]);
                            continue;
                        }
                    }
                    let l2 = l.subst(s);
                    let s2 = l.restrict(s);
                    out.push(
                        self.view
                            .edges(*big)
                            .into_iter()
                            .filter(|(m, _)| l2.leq(m))
                            .map(|(_, t2)| Goal::Sim(t2, t, s2.clone()))
                            .collect(),
                    );
                }
                out
            }
            Goal::Splice(big, fs, small, s) => {
                let mut out = vec![vec![Goal::Sim(*big, *small, s.clone())]];
                for f in fs {
                    let fa = f.as_action();
                    out.push(
                        self.view
                            .edges(*big)
                            .into_iter()
                            .filter(|(m, _)| fa.leq(m))
                            .map(|(_, b2)| Goal::Splice(b2, fs.clone(), *small, s.clone()))
                            .collect(),
                    );
                }
                out
            }
        }
    }

    fn solve(&mut self, g: Goal) -> bool {
        if let Some(r) = self.solved.get(&g) {
            return *r;
        }
        let mut index: HashMap<Goal, usize> = HashMap::new();
        let mut goals: Vec<Goal> = Vec::new();
        let mut clauses: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut fixed: Vec<Option<bool>> = Vec::new();
        index.insert(g.clone(), 0);
        goals.push(g.clone());
        let mut i = 0;
        while i < goals.len() {
            let cur = goals[i].clone();
            let cs = self.clauses(&cur);
            let mut ids = Vec::new();
            for c in cs {
                let mut alt = Vec::new();
                for sub in c {
                    let id = match index.get(&sub) {
                        Some(id) => *id,
                        None => {
                            let id = goals.len();
                            index.insert(sub.clone(), id);
                            goals.push(sub);
                            id
                        }
                    };
                    alt.push(id);
                }
                ids.push(alt);
            }
            clauses.push(ids);
            fixed.push(self.solved.get(&cur).copied());
            i += 1;
        }
        let mut truth: Vec<bool> = fixed.iter().map(|f| f.unwrap_or(true)).collect();
        loop {
            let mut changed = false;
            for k in 0..goals.len() {
                if !truth[k] || fixed[k].is_some() {
                    continue;
                }
                if clauses[k].iter().any(|alt| !alt.iter().any(|j| truth[*j])) {
                    truth[k] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (k, goal) in goals.into_iter().enumerate() {
            self.solved.insert(goal, truth[k]);
        }
        truth[0]
    }

    pub fn covers(&mut self, big: NodeId, small: NodeId, s: &TypeSubst) -> bool {
        self.solve(Goal::Sim(big, small, s.clone()))
    }

    fn demands_met(&mut self, x: NodeId, rhs: &[&ProcTempl], b: &SymBinding) -> bool {
        rhs.iter().all(|comp| match comp {
            ProcTempl::Var(v) => self.covers(x, b.procs[v], &TypeSubst::new()),
            ProcTempl::Subst(pairs, v) => self.covers(x, b.procs[v], &b.subst_of(pairs)),
            ProcTempl::Prefix(_, at, pt) => {
                let l = b.inst(at);
                self.view
                    .edges(x)
                    .into_iter()
                    .filter(|(m, _)| l.leq(m))
                    .any(|(_, t)| self.demands_met(t, &pt.components(), b))
            }
            _ => true,
        })
    }

    /// Labels needed at `x` that have no covering edge.
    fn diagnose(&mut self, x: NodeId, rhs: &[&ProcTempl], b: &SymBinding, out: &mut Vec<(NodeId, ActionType)>) {
        for comp in rhs {
            let (small, s) = match comp {
                ProcTempl::Var(v) => (b.procs[v], TypeSubst::new()),
                ProcTempl::Subst(pairs, v) => (b.procs[v], b.subst_of(pairs)),
                ProcTempl::Prefix(_, at, pt) => {
                    let l = b.inst(at);
                    let ok = self
                        .view
                        .edges(x)
                        .into_iter()
                        .filter(|(m, _)| l.leq(m))
                        .any(|(_, t)| self.demands_met(t, &pt.components(), b));
                    if !ok {
                        out.push((x, l));
                    }
                    continue;
                }
                _ => continue,
            };
            for (l, t) in self.view.edges(small) {
                if let [ElementType::Name(a)] = l.0.as_slice() {
                    if let Some(MessageType::Star(fs)) = s.get(a) {
                        for f in fs {
                            let fa = f.as_action();
                            if !self.view.edges(x).iter().any(|(m, _)| fa.leq(m)) {
                                out.push((x, fa));
                            }
                        }
                        continue;
                    }
                }
                let l2 = l.subst(&s);
                let s2 = l.restrict(&s);
                let ok = self.view.edges(x).into_iter().filter(|(m, _)| l2.leq(m)).any(|(_, t2)| self.covers(t2, t, &s2));
                if !ok {
                    out.push((x, l2));
                }
            }
        }
    }
}

fn skeleton(l: &ActionType) -> ActionType {
    ActionType(
        l.0.iter()
            .map(|e| match e {
                ElementType::Out(ts) => ElementType::Out(
                    ts.iter()
                        .map(|t| match t {
                            MessageType::Star(_) => MessageType::Star(BTreeSet::new()),
                            t => t.clone(),
                        })
                        .collect(),
                ),
                e => e.clone(),
            })
            .collect(),
    )
}

pub fn closure_violations(rules: &RuleSet, s: &ShapePredicate) -> Vec<ClosureViolation> {
    let mut checker = Checker::new(s);
    let mut out = Vec::new();
    let active = active_nodes(&checker.view, rules, s.root);
    let reduce: Vec<(usize, &ProcTempl, &ProcTempl)> = rules
        .rules
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match r {
            crate::rules::Rule::Reduce { lhs, rhs } => Some((i, lhs, rhs)),
            _ => None,
        })
        .collect();
    for x in active {
        for (i, lhs, rhs) in &reduce {
            let rc = rhs.components();
            for b in gmatch(&checker.view, &lhs.components(), x, SymBinding::default()) {
                if checker.demands_met(x, &rc, &b) {
                    continue;
                }
                let mut missing = Vec::new();
                checker.diagnose(x, &rc, &b, &mut missing);
                missing.sort();
                missing.dedup();
                let mut widened = Vec::new();
                for (n, need) in &missing {
                    for (have, _) in checker.view.edges(*n) {
                        if skeleton(&have) == skeleton(need) && !need.leq(&have) {
                            widened.push((have, need.clone()));
                        }
                    }
                }
                out.push(ClosureViolation { rule: *i, rule_text: rules.rules[*i].to_string(), site: x, missing, widened });
            }
        }
    }
    out
}

/// The graph is closed under every rule at every active node.
pub fn is_type(rules: &RuleSet, s: &ShapePredicate) -> bool {
    closure_violations(rules, s).is_empty()
}

/// Nodes whose edges are reachable for rewriting: the root and everything
/// under an active context.
pub fn active_nodes_of(rules: &RuleSet, s: &ShapePredicate) -> BTreeSet<NodeId> {
    let c = Checker::new(s);
    active_nodes(&c.view, rules, s.root)
}
