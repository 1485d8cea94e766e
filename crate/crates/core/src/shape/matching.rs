use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::graph::{NodeId, ShapePredicate};
use super::types::ActionType;
use crate::term::Process;

/// `p |= s`: every prefix of `p` follows an edge whose label it matches,
/// restriction and replication being transparent.
pub fn matches(p: &Arc<Process>, s: &ShapePredicate) -> bool {
    matches_at(p, s, s.root)
}

pub fn matches_at(p: &Arc<Process>, s: &ShapePredicate, node: NodeId) -> bool {
    let adj = s.graph.adjacency();
    Matcher { adj: &adj, memo: HashMap::new() }.go(p, node)
}

struct Matcher<'a> {
    adj: &'a BTreeMap<NodeId, Vec<(&'a ActionType, NodeId)>>,
    memo: HashMap<(*const Process, NodeId), bool>,
}

impl Matcher<'_> {
    fn go(&mut self, p: &Arc<Process>, n: NodeId) -> bool {
        let key = (Arc::as_ptr(p), n);
        if let Some(r) = self.memo.get(&key) {
            return *r;
        }
        let r = match &**p {
            Process::Nil => true,
            Process::Par(a, b) => self.go(a, n) && self.go(b, n),
            Process::Nu(_, q) | Process::Bang(q) => self.go(q, n),
            Process::Prefix(a, q) => {
                let edges: Vec<(&ActionType, NodeId)> = self.adj.get(&n).cloned().unwrap_or_default();
                edges.into_iter().any(|(l, d)| l.admits(a) && self.go(q, d))
            }
        };
        self.memo.insert(key, r);
        r
    }
}
