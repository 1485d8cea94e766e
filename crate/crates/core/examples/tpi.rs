//! Simple channel types for the pi-calculus, checked directly and through shape types.

use shapestar::calculi::parse_pi;
use shapestar::typecheck::{parse_pi_context, tpi_check, tpi_decide, tpi_infer, PiContext};

fn main() {
    let p = parse_pi(include_str!("server.pi")).unwrap();
    match tpi_infer(&p) {
        Some(ctx) => println!("server.pi typable under {:?}", ctx),
        None => println!("server.pi is not typable"),
    }
    println!("via shapes: {}", tpi_decide(&PiContext::new(), &p).unwrap());

    let q = parse_pi("!s(x,y).x<y>.0 | s<a,n>.0 | a(v).0 | n<o>.0").unwrap();
    if let Some(ctx) = tpi_infer(&q) {
        println!("most general context: {:?}", ctx);
    }
    let ctx = parse_pi_context("s: ch[ch[ch[t]], ch[t]], a: ch[ch[t]], n: ch[t], o: t").unwrap();
    println!("direct {} / shapes {}", tpi_check(&ctx, &q), tpi_decide(&ctx, &q).unwrap());
}
