//! Runs the pi-calculus and ambient examples through their rule sets.

use shapestar::calculi::{encode_ma, encode_pi, parse_ma, parse_pi};
use shapestar::rules::{rewrite_trace, rsa, rsp, Strategy};

fn main() {
    let p = parse_pi(include_str!("server.pi")).unwrap();
    let trace = rewrite_trace(&rsp(p.max_arity()), &encode_pi(&p), Strategy::All, 4);
    for (i, layer) in trace.layers.iter().enumerate() {
        println!("depth {}: {} new states", i, layer.len());
    }
    println!("e.g. {}", trace.layers[4][0]);

    let q = parse_ma(include_str!("packet.ma")).unwrap();
    let path = rewrite_trace(&rsa(q.max_arity()), &encode_ma(&q).process, Strategy::First, 10).path();
    for (i, s) in path.iter().enumerate() {
        println!("{}: {}", i, s);
    }
}
