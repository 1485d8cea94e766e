mod common;

use std::sync::Arc;

use common::figures::{server_figure, packet_figure};
use common::SERVER;

use shapestar::infer::*;
use shapestar::rules::*;
use shapestar::shape::*;
use shapestar::term::*;

fn p(s: &str) -> Arc<Process> {
    parse_process(s).unwrap()
}

#[test]
fn server_principal_type() {
    let t = infer_principal(&rsp(2), &p(SERVER)).unwrap();
    println!("{}", to_dot(&t));
    assert_eq!((t.node_count(), t.edge_count()), (15, 14));
    assert!(t.isomorphic(&server_figure()));
    assert!(is_type(&rsp(2), &t));
    assert!(matches(&p(SERVER), &t));
}

#[test]
fn packet_principal_type() {
    let t = infer_principal(&rsa(1), &p("out<in d>.0 | new p.(d[open p.0] | in<x>.p[x.out<>.0])")).unwrap();
    println!("{}", to_dot(&t));
    let fig = packet_figure();
    assert_eq!(t.edge_count(), 16);
    assert!(t.collapse_leaves().isomorphic(&fig.collapse_leaves()));
    assert!(is_type(&rsa(1), &t));
}
