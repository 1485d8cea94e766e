use std::sync::Arc;

use rand::Rng;

use super::graph::{NodeId, ShapePredicate};
use super::types::{ActionType, ElementType, MessageType};
use crate::term::{Action, Element, Message, Name, Process};

/// A random process matching `s`, with prefixes nested at most `depth` deep.
pub fn meaning_sample<R: Rng>(s: &ShapePredicate, rng: &mut R, depth: usize) -> Arc<Process> {
    gen(s, s.root, rng, depth)
}

fn gen<R: Rng>(s: &ShapePredicate, n: NodeId, rng: &mut R, depth: usize) -> Arc<Process> {
    if depth == 0 || s.graph.out_edges(n).next().is_none() {
        return Process::nil();
    }
    let k = rng.gen_range(1..=3);
    Process::par_all((0..k).map(|_| component(s, n, rng, depth)).collect::<Vec<_>>())
}

fn component<R: Rng>(s: &ShapePredicate, n: NodeId, rng: &mut R, depth: usize) -> Arc<Process> {
    let edges: Vec<_> = s.graph.out_edges(n).collect();
    match rng.gen_range(0..10) {
        0 => Process::nil(),
        1 => Process::bang(prefixed(s, &edges, rng, depth)),
        2 => Process::nu(Name::new("nu"), gen(s, n, rng, depth)),
        _ => prefixed(s, &edges, rng, depth),
    }
}

fn prefixed<R: Rng>(s: &ShapePredicate, edges: &[&super::graph::Edge], rng: &mut R, depth: usize) -> Arc<Process> {
    let e = edges[rng.gen_range(0..edges.len())];
    Process::prefix(concretize(&e.label, rng), gen(s, e.dst, rng, depth - 1))
}

fn concretize<R: Rng>(l: &ActionType, rng: &mut R) -> Action {
    Action(
        l.0.iter()
            .map(|e| match e {
                ElementType::Name(a) => Element::Name(a.clone().into()),
                ElementType::In(bs) => Element::In(bs.iter().cloned().map(Name::from).collect()),
                ElementType::Out(ts) => Element::Out(ts.iter().map(|t| message(t, rng)).collect()),
            })
            .collect(),
    )
}

fn message<R: Rng>(t: &MessageType, rng: &mut R) -> Message {
    match t {
        MessageType::Single(a) => Message::name(a.clone().into()),
        MessageType::Star(fs) => {
            let fs: Vec<_> = fs.iter().collect();
            if fs.is_empty() {
                return Message::Empty;
            }
            let mut m = Message::Empty;
            for i in 0..rng.gen_range(1..=2) {
                let f = fs[rng.gen_range(0..fs.len())];
                let form = Message::Form(f.0.iter().cloned().map(Name::from).collect());
                m = if i == 0 { form } else { Message::comp(m, form) };
            }
            if m.as_name().is_some() {
                m = Message::comp(m, Message::Empty);
            }
            m
        }
    }
}
