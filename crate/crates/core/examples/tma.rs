//! Typed ambients and their shape-type embedding.

use shapestar::calculi::{encode_ma, parse_env, parse_ex_type, parse_ma};
use shapestar::shape::{matches, to_dot};
use shapestar::typecheck::{extract_envs, tma_check, tma_decide, typenc, TypeInfo};

fn main() {
    let p = parse_ma(include_str!("packet.ma")).unwrap();
    let env = parse_env("d: Amb[1]").unwrap();
    for t in ["Cap[1]", "1", "Shh"] {
        let t = parse_ex_type(t).unwrap();
        println!("E |- P : {} ? direct {} / shapes {}", t, tma_check(&env, &p, &t), tma_decide(&env, &p, &t).unwrap());
    }

    let (nu, inp) = extract_envs(&p).unwrap();
    let mut all = env.clone();
    all.extend(nu);
    let info = TypeInfo::new(all, inp, parse_ex_type("Cap[1]").unwrap());
    let s = typenc(&info);
    println!("{}", to_dot(&s));
    println!("P matches: {}", matches(&encode_ma(&p).process, &s));
}
