use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use log::trace;

use super::sym::{active_nodes, gmatch, Edges, SymBinding};
use super::InferError;
use crate::rules::{ProcTempl, RuleSet};
use crate::shape::{ActionType, ElementType, MessageType, NodeId, ShapeGraph, ShapePredicate, TypeSubst};
use crate::term::{scope_violations, Process};

const MAX_NODES: usize = 200_000;

/// Working graph of the saturation.
struct Work {
    out: Vec<BTreeSet<(ActionType, NodeId)>>,
    /// Parent and label through which a node was first created.
    entered: Vec<Option<(NodeId, ActionType)>>,
    /// A copy stands for `subst(origin)`; other nodes are their own origin.
    origin: Vec<(NodeId, TypeSubst)>,
    copies: HashMap<(NodeId, TypeSubst), NodeId>,
    /// Inclusions `node ⊇ σ(src)` maintained for substituted copies.
    sources: Vec<Vec<(NodeId, TypeSubst)>>,
    changed: bool,
}

impl Edges for Work {
    fn edges(&self, n: NodeId) -> Vec<(ActionType, NodeId)> {
        self.out[n.0 as usize].iter().cloned().collect()
    }
}

fn compose(outer: &TypeSubst, inner: &TypeSubst) -> TypeSubst {
    let mut s: TypeSubst = inner.iter().map(|(k, v)| (k.clone(), v.subst(outer))).collect();
    for (k, v) in outer {
        s.entry(k.clone()).or_insert_with(|| v.clone());
    }
    s.retain(|k, v| *v != MessageType::Single(k.clone()));
    s
}

impl Work {
    fn new_node(&mut self, entered: Option<(NodeId, ActionType)>) -> Result<NodeId, InferError> {
        if self.out.len() >= MAX_NODES {
            return Err(InferError::Diverged(MAX_NODES));
        }
        let id = NodeId(self.out.len() as u32);
        self.out.push(BTreeSet::new());
        self.entered.push(entered);
        self.origin.push((id, TypeSubst::new()));
        self.sources.push(Vec::new());
        Ok(id)
    }

    fn add_edge(&mut self, src: NodeId, label: ActionType, dst: NodeId) {
        if self.out[src.0 as usize].insert((label.clone(), dst)) {
            trace!("edge {} --{}--> {}", src, label, dst);
            self.changed = true;
        }
    }

    fn seed(&mut self, p: &Process, at: NodeId) -> Result<(), InferError> {
        match p {
            Process::Nil => Ok(()),
            Process::Par(a, b) => {
                self.seed(a, at)?;
                self.seed(b, at)
            }
            Process::Nu(_, q) | Process::Bang(q) => self.seed(q, at),
            Process::Prefix(a, q) => {
                let label = ActionType::of(a);
                let t = self.new_node(Some((at, label.clone())))?;
                self.add_edge(at, label, t);
                self.seed(q, t)
            }
        }
    }

    fn copy(&mut self, t: NodeId, s: &TypeSubst, parent: NodeId, label: &ActionType) -> Result<NodeId, InferError> {
        if s.is_empty() {
            return Ok(t);
        }
        let (o, s0) = self.origin[t.0 as usize].clone();
        let composed = compose(s, &s0);
        let k = if composed.is_empty() {
            o
        } else if let Some(k) = self.copies.get(&(o, composed.clone())) {
            *k
        } else {
            let k = self.new_node(Some((parent, label.clone())))?;
            self.origin[k.0 as usize] = (o, composed.clone());
            self.copies.insert((o, composed), k);
            k
        };
        let src = (t, s.clone());
        if k != t && !self.sources[k.0 as usize].contains(&src) {
            self.sources[k.0 as usize].push(src);
            self.changed = true;
        }
        Ok(k)
    }

    /// Make `x` include the edges of `σ(y)`.
    fn include(&mut self, x: NodeId, y: NodeId, s: &TypeSubst, seen: &mut BTreeSet<(NodeId, TypeSubst)>) -> Result<(), InferError> {
        if (s.is_empty() && x == y) || !seen.insert((y, s.clone())) {
            return Ok(());
        }
        for (l, t) in self.edges(y) {
            if let [ElementType::Name(a)] = l.0.as_slice() {
                if let Some(MessageType::Star(fs)) = s.get(a) {
                    for f in fs {
                        self.add_edge(x, f.as_action(), x);
                    }
                    self.include(x, t, s, seen)?;
                    continue;
                }
            }
            let l2 = l.subst(s);
            let t2 = self.copy(t, &l.restrict(s), x, &l2)?;
            self.add_edge(x, l2, t2);
        }
        Ok(())
    }

    /// Add what the right-hand side demands at `x`.
    fn ensure(&mut self, x: NodeId, rhs: &[&ProcTempl], lhs: Option<&[&ProcTempl]>, b: &SymBinding) -> Result<(), InferError> {
        for comp in rhs {
            match comp {
                ProcTempl::Var(v) => self.include(x, b.procs[v], &TypeSubst::new(), &mut BTreeSet::new())?,
                ProcTempl::Subst(pairs, v) => self.include(x, b.procs[v], &b.subst_of(pairs), &mut BTreeSet::new())?,
                ProcTempl::Prefix(_, at, pt) => {
                    let label = b.inst(at);
                    let partner = lhs.and_then(|cs| {
                        cs.iter().find_map(|c| match c {
                            ProcTempl::Prefix(id, lat, lpt) if lat == at => Some((b.prefix_nodes[id], lpt.components())),
                            _ => None,
                        })
                    });
                    let (target, sub_lhs) = match partner {
                        Some((t, cs)) => (t, Some(cs)),
                        None => (self.place(x, &label)?, None),
                    };
                    self.add_edge(x, label, target);
                    self.ensure(target, &pt.components(), sub_lhs.as_deref(), b)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Target for a new `label` edge out of `x`: an existing child with the
    /// same label, else an ancestor entered through the same label, else a fresh node.
    fn place(&mut self, x: NodeId, label: &ActionType) -> Result<NodeId, InferError> {
        if let Some((_, t)) = self.out[x.0 as usize].iter().find(|(l, _)| l == label) {
            return Ok(*t);
        }
        let mut a = x;
        while let Some((parent, l)) = &self.entered[a.0 as usize] {
            if l == label {
                return Ok(a);
            }
            a = *parent;
        }
        self.new_node(Some((x, label.clone())))
    }

    fn round(&mut self, rules: &RuleSet) -> Result<(), InferError> {
        let active = active_nodes(self, rules, NodeId(0));
        for x in active {
            for (lhs, rhs) in rules.reduce_rules() {
                let lc = lhs.components();
                for b in gmatch(self, &lc, x, SymBinding::default()) {
                    self.ensure(x, &rhs.components(), Some(&lc), &b)?;
                }
            }
        }
        for k in 0..self.out.len() {
            for (n, s) in self.sources[k].clone() {
                self.include(NodeId(k as u32), n, &s, &mut BTreeSet::new())?;
            }
        }
        Ok(())
    }

    fn into_predicate(self) -> ShapePredicate {
        let mut g = ShapeGraph::default();
        for (i, es) in self.out.into_iter().enumerate() {
            g.nodes.insert(NodeId(i as u32));
            for (l, d) in es {
                g.add_edge(NodeId(i as u32), l, d);
            }
        }
        ShapePredicate { graph: g, root: NodeId(0) }.prune().renumber()
    }
}

/// The least shape type of `p` closed under the rules.
pub fn infer_principal(rules: &RuleSet, p: &Arc<Process>) -> Result<ShapePredicate, InferError> {
    let v = scope_violations(p);
    if !v.is_empty() {
        return Err(InferError::NotWellScoped(v));
    }
    let mut w = Work {
        out: Vec::new(),
        entered: Vec::new(),
        origin: Vec::new(),
        copies: HashMap::new(),
        sources: Vec::new(),
        changed: false,
    };
    let root = w.new_node(None)?;
    w.seed(p, root)?;
    loop {
        w.changed = false;
        w.round(rules)?;
        if !w.changed {
            break;
        }
    }
    Ok(w.into_predicate())
}

/// Seed graph only: the syntax tree of `p` with one node per prefix.
pub fn seed_graph(p: &Arc<Process>) -> ShapePredicate {
    let mut w = Work {
        out: Vec::new(),
        entered: Vec::new(),
        origin: Vec::new(),
        copies: HashMap::new(),
        sources: Vec::new(),
        changed: false,
    };
    let root = w.new_node(None).expect("first node");
    w.seed(p, root).expect("seed graph is linear in the process");
    w.into_predicate()
}
