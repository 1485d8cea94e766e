//! Principal shape types, printed as Graphviz.

use shapestar::calculi::{encode_ma, encode_pi, parse_ma, parse_pi};
use shapestar::infer::infer_principal;
use shapestar::rules::{rsa, rsp};
use shapestar::shape::{matches, to_dot};

fn main() {
    let p = parse_pi(include_str!("server.pi")).unwrap();
    let t = infer_principal(&rsp(p.max_arity()), &encode_pi(&p)).unwrap();
    println!("{}", to_dot(&t));

    let q = encode_ma(&parse_ma(include_str!("packet.ma")).unwrap()).process;
    let s = infer_principal(&rsa(1), &q).unwrap();
    println!("{}", to_dot(&s));
    assert!(matches(&q, &s));
}
