use shapestar::calculi::{encode_ma, parse_env, parse_ex_type, parse_ma, parse_pi};
use shapestar::infer::is_type;
use shapestar::rules::rsa;
use shapestar::typecheck::*;

const SERVER: &str = "!s(x,y).x<y>.0 | s<a,n>.0 | a(v).v(p).0 | n<o>.0 | s<b,m>.0 | b(w).w(q,r).0 | m<o,o>.0";
const PACKET_MA: &str = "<in d> | new (p:Amb[1]).(d[open p.0] | (x:Cap[1]).p[x.<>])";

#[test]
fn tpi_examples() {
    let p = parse_pi(SERVER).unwrap();
    assert!(!tpi_typable(&p));
    assert!(!tpi_decide(&PiContext::new(), &p).unwrap());
    let ctx = parse_pi_context("a: ch[i], o: i").unwrap();
    assert!(tpi_check(&ctx, &parse_pi("a<o>.0").unwrap()));
    assert!(!tpi_check(&parse_pi_context("a: ch[i], o: j").unwrap(), &parse_pi("a<o>.0").unwrap()));
    let q = parse_pi("!s(x,y).x<y>.0 | s<a,n>.0 | a(v).0 | n<o>.0").unwrap();
    let ctx = tpi_infer(&q).unwrap();
    println!("{:?}", ctx);
    assert!(tpi_decide(&PiContext::new(), &q).unwrap());
}

#[test]
fn tma_examples() {
    let p = parse_ma(PACKET_MA).unwrap();
    let env = parse_env("d: Amb[1]").unwrap();
    let cap1 = parse_ex_type("Cap[1]").unwrap();
    let one = parse_ex_type("1").unwrap();
    assert!(tma_check(&env, &p, &cap1));
    assert!(!tma_check(&env, &p, &one));
    assert!(tma_decide(&env, &p, &cap1).unwrap());
    assert!(!tma_decide(&env, &p, &one).unwrap());
    let (nu, inp) = extract_envs(&p).unwrap();
    assert_eq!(nu, parse_env("p: Amb[1]").unwrap());
    assert_eq!(inp, parse_env("x: Cap[1]").unwrap());
    let mut e = env.clone();
    e.extend(nu);
    let info = TypeInfo::new(e, inp, cap1.clone());
    let s = typenc(&info);
    println!("{}", shapestar::shape::to_dot(&s));
    assert_eq!(s.node_count(), 2);
    assert!(is_type(&rsa(1), &s));
    let sep = parse_ma("<in a> | (x:?w).x.0").unwrap();
    assert!(!tma_typable(&sep));
    let _ = encode_ma(&sep);
}
