use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::types::ActionType;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: NodeId,
    pub label: ActionType,
    pub dst: NodeId,
}

/// Nodes and labelled edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapeGraph {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<Edge>,
}

/// A shape graph with a distinguished root: the shape type of a process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapePredicate {
    pub graph: ShapeGraph,
    pub root: NodeId,
}

impl ShapeGraph {
    pub fn add_edge(&mut self, src: NodeId, label: ActionType, dst: NodeId) -> bool {
        self.nodes.insert(src);
        self.nodes.insert(dst);
        self.edges.insert(Edge { src, label, dst })
    }

    /// Outgoing edges grouped by source.
    pub fn adjacency(&self) -> BTreeMap<NodeId, Vec<(&ActionType, NodeId)>> {
        let mut adj: BTreeMap<NodeId, Vec<(&ActionType, NodeId)>> = self.nodes.iter().map(|n| (*n, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(e.src).or_default().push((&e.label, e.dst));
        }
        adj
    }

    pub fn out_edges(&self, n: NodeId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.src == n)
    }
}

impl ShapePredicate {
    pub fn node_count(&self) -> usize {
        self.graph.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edges.len()
    }

    /// Drop nodes not reachable from the root.
    pub fn prune(&self) -> ShapePredicate {
        let adj = self.graph.adjacency();
        let mut seen = BTreeSet::from([self.root]);
        let mut stack = vec![self.root];
        while let Some(n) = stack.pop() {
            for (_, d) in adj.get(&n).into_iter().flatten() {
                if seen.insert(*d) {
                    stack.push(*d);
                }
            }
        }
        let edges = self.graph.edges.iter().filter(|e| seen.contains(&e.src)).cloned().collect();
        ShapePredicate { graph: ShapeGraph { nodes: seen, edges }, root: self.root }
    }

    /// Renumber nodes `0..n` in breadth-first order from the root, edges in label order.
    pub fn renumber(&self) -> ShapePredicate {
        let adj = self.graph.adjacency();
        let mut order: Vec<NodeId> = vec![self.root];
        let mut seen = BTreeSet::from([self.root]);
        let mut i = 0;
        while i < order.len() {
            let mut next: Vec<(&ActionType, NodeId)> = adj.get(&order[i]).cloned().unwrap_or_default();
            next.sort();
            for (_, d) in next {
                if seen.insert(d) {
                    order.push(d);
                }
            }
            i += 1;
        }
        for n in &self.graph.nodes {
            if seen.insert(*n) {
                order.push(*n);
            }
        }
        let map: BTreeMap<NodeId, NodeId> = order.iter().enumerate().map(|(i, n)| (*n, NodeId(i as u32))).collect();
        let mut g = ShapeGraph { nodes: map.values().copied().collect(), ..Default::default() };
        for e in &self.graph.edges {
            g.add_edge(map[&e.src], e.label.clone(), map[&e.dst]);
        }
        ShapePredicate { graph: g, root: map[&self.root] }
    }

    /// Merge all nodes without outgoing edges into one.
    pub fn collapse_leaves(&self) -> ShapePredicate {
        let adj = self.graph.adjacency();
        let leaves: BTreeSet<NodeId> = adj.iter().filter(|(_, es)| es.is_empty()).map(|(n, _)| *n).collect();
        let Some(&rep) = leaves.iter().next() else { return self.clone() };
        let m = |n: NodeId| if leaves.contains(&n) { rep } else { n };
        let mut g = ShapeGraph { nodes: self.graph.nodes.iter().map(|n| m(*n)).collect(), ..Default::default() };
        for e in &self.graph.edges {
            g.add_edge(m(e.src), e.label.clone(), m(e.dst));
        }
        ShapePredicate { graph: g, root: m(self.root) }
    }

    /// Graph isomorphism preserving roots and labels.
    pub fn isomorphic(&self, other: &ShapePredicate) -> bool {
        super::iso::isomorphic(self, other)
    }
}

impl fmt::Display for ShapePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root {} ({} nodes, {} edges)", self.root, self.node_count(), self.edge_count())?;
        for e in &self.graph.edges {
            writeln!(f, "  {} --{}--> {}", e.src, e.label.pretty(), e.dst)?;
        }
        Ok(())
    }
}
