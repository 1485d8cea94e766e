//! A rule set written in the rule language: a broadcast-free pi-calculus with
//! a forwarding rule.

use shapestar::infer::{infer_principal, is_type};
use shapestar::rules::{one_step_reducts, parse_rules};
use shapestar::term::parse_process;

const RULES: &str = "
# synchronous send of one name
c'<x'>.P' | c'(y').Q' => P' | [y':=x']Q'
# a forwarder hands its payload on
fwd a' b'.P' | a'<x'>.Q' => P' | b'<x'>.0 | Q'
";

fn main() {
    let rules = parse_rules(RULES).unwrap();
    print!("{}", rules);
    let p = parse_process("fwd a b.0 | a<z>.0 | b(w).w<>.0").unwrap();
    for r in one_step_reducts(&rules, &p) {
        println!("-> {}", r);
    }
    let s = infer_principal(&rules, &p).unwrap();
    print!("{}", s);
    println!("closed under the rules: {}", is_type(&rules, &s));
}
