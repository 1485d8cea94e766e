use super::parse::parse_rules;
use super::template::RuleSet;

fn comm_rules(k_max: usize, channel: &str) -> String {
    let mut src = String::new();
    for k in 0..=k_max {
        let ms: Vec<String> = (1..=k).map(|i| format!("M{}'", i)).collect();
        let xs: Vec<String> = (1..=k).map(|i| format!("x{}'", i)).collect();
        let sub: Vec<String> = xs.iter().zip(&ms).map(|(x, m)| format!("{}:={}", x, m)).collect();
        let q = if k == 0 { "Q'".to_string() } else { format!("[{}]Q'", sub.join(", ")) };
        src.push_str(&format!(
            "{c}out<{}>.P' | {c}in<{}>.Q' => P' | {}\n",
            ms.join(", "),
            xs.join(", "),
            q,
            c = channel
        ));
    }
    src
}

/// Polyadic pi-calculus communication on a named channel, arities `0..=k_max`.
pub fn rsp(k_max: usize) -> RuleSet {
    parse_rules(&comm_rules(k_max, "c' ")).expect("built-in rules parse")
}

/// Mobile ambients: mobility, opening, anonymous communication of arities
/// `0..=k_max`, and reduction inside ambients.
pub fn rsa(k_max: usize) -> RuleSet {
    let mut src = String::from(
        "P' ~active~ a'[P']\n\
         a'[in b'.P' | Q'] | b'[R'] => b'[a'[P' | Q'] | R']\n\
         a'[b'[out a'.P' | Q'] | R'] => a'[R'] | b'[P' | Q']\n\
         open a'.P' | a'[R'] => P' | R'\n",
    );
    src.push_str(&comm_rules(k_max, ""));
    parse_rules(&src).expect("built-in rules parse")
}
