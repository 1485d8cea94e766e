use std::collections::{BTreeMap, BTreeSet};

use super::graph::{NodeId, ShapePredicate};
use super::types::ActionType;

type Key = (usize, Vec<(ActionType, usize)>, Vec<(ActionType, usize)>);

/// Colour refinement over the disjoint union, then backtracking search.
pub fn isomorphic(a: &ShapePredicate, b: &ShapePredicate) -> bool {
    if a.graph.nodes.len() != b.graph.nodes.len() || a.graph.edges.len() != b.graph.edges.len() {
        return false;
    }
    let nodes: Vec<(usize, NodeId)> =
        a.graph.nodes.iter().map(|n| (0, *n)).chain(b.graph.nodes.iter().map(|n| (1, *n))).collect();
    let index: BTreeMap<(usize, NodeId), usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut out: Vec<Vec<(ActionType, usize)>> = vec![Vec::new(); nodes.len()];
    let mut inc: Vec<Vec<(ActionType, usize)>> = vec![Vec::new(); nodes.len()];
    for (side, g) in [(0, a), (1, b)] {
        for e in &g.graph.edges {
            let (s, d) = (index[&(side, e.src)], index[&(side, e.dst)]);
            out[s].push((e.label.clone(), d));
            inc[d].push((e.label.clone(), s));
        }
    }
    let mut colour: Vec<usize> = nodes
        .iter()
        .map(|(side, n)| usize::from(*n == if *side == 0 { a.root } else { b.root }))
        .collect();
    loop {
        let keys: Vec<Key> = (0..nodes.len())
            .map(|i| {
                let mut o: Vec<(ActionType, usize)> = out[i].iter().map(|(l, d)| (l.clone(), colour[*d])).collect();
                let mut n: Vec<(ActionType, usize)> = inc[i].iter().map(|(l, s)| (l.clone(), colour[*s])).collect();
                o.sort();
                n.sort();
                (colour[i], o, n)
            })
            .collect();
        let distinct: BTreeSet<&Key> = keys.iter().collect();
        let ids: BTreeMap<&Key, usize> = distinct.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let next: Vec<usize> = keys.iter().map(|k| ids[k]).collect();
        let classes_before: BTreeSet<usize> = colour.iter().copied().collect();
        let classes_after: BTreeSet<usize> = next.iter().copied().collect();
        colour = next;
        if classes_after.len() == classes_before.len() {
            break;
        }
    }
    let na = a.graph.nodes.len();
    let mut ca: Vec<usize> = colour[..na].to_vec();
    let mut cb: Vec<usize> = colour[na..].to_vec();
    ca.sort();
    cb.sort();
    if ca != cb {
        return false;
    }
    let edges_b: BTreeSet<(usize, &ActionType, usize)> =
        (na..nodes.len()).flat_map(|s| out[s].iter().map(move |(l, d)| (s, l, *d))).collect();
    let mut map: Vec<Option<usize>> = vec![None; na];
    let mut used = vec![false; nodes.len()];
    search(0, na, &colour, &out, &edges_b, &mut map, &mut used)
}

fn search(
    i: usize,
    na: usize,
    colour: &[usize],
    out: &[Vec<(ActionType, usize)>],
    edges_b: &BTreeSet<(usize, &ActionType, usize)>,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if i == na {
        return true;
    }
    for j in na..colour.len() {
        if used[j] || colour[j] != colour[i] {
            continue;
        }
        map[i] = Some(j);
        let consistent = (0..=i).all(|s| {
            out[s].iter().all(|(l, d)| match map[*d] {
                Some(dj) if *d <= i => edges_b.contains(&(map[s].unwrap(), l, dj)),
                _ => true,
            })
        });
        if consistent {
            used[j] = true;
            if search(i + 1, na, colour, out, edges_b, map, used) {
                return true;
            }
            used[j] = false;
        }
        map[i] = None;
    }
    false
}
