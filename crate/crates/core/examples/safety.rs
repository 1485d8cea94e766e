//! Communication safety read off principal shape types.

use std::fs;

use shapestar::calculi::{encode_ma, encode_pi, ma_safety, parse_ma, parse_pi, pi_safety};
use shapestar::infer::infer_principal;
use shapestar::rules::{rsa, rsp};
use shapestar::term::ibn;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/");
    for f in ["server.pi", "server_extended.pi", "arity_clash.pi"] {
        let p = parse_pi(&fs::read_to_string(format!("{}{}", dir, f)).unwrap()).unwrap();
        let r = rsp(p.max_arity());
        let s = infer_principal(&r, &encode_pi(&p)).unwrap();
        print!("{}: {}", f, pi_safety(&s, &r).unwrap());
    }
    for f in ["packet.ma", "polymorphic.ma", "arity.ma", "leak.ma", "separation.ma"] {
        let p = parse_ma(&fs::read_to_string(format!("{}{}", dir, f)).unwrap()).unwrap();
        let r = rsa(p.max_arity());
        let e = encode_ma(&p).process;
        let s = infer_principal(&r, &e).unwrap();
        print!("{}: {}", f, ma_safety(&s, &r, &ibn(&e)).unwrap());
    }
}
