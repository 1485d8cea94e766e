use shapestar::cli::{run, EXIT_ERROR, EXIT_FINDINGS, EXIT_OK};

fn sh(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("shapestar").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ex(name: &str) -> String {
    format!("{}/examples/{}", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn reduce_ambient_example() {
    let (code, out, _) = sh(&["reduce", &ex("packet.ma")], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("d[out<>.0]"), "{}", out);
}

#[test]
fn reduce_from_stdin() {
    let (code, out, _) = sh(&["--calculus", "pi", "reduce", "-", "--strategy", "all", "--depth", "1"], "a<b>.0 | a(x).x<>.0");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("b out<>.0"), "{}", out);
}

#[test]
fn safety_exit_codes() {
    assert_eq!(sh(&["check-safety", &ex("server.pi")], "").0, EXIT_OK);
    let (code, out, _) = sh(&["check-safety", &ex("arity_clash.pi")], "");
    assert_eq!(code, EXIT_FINDINGS);
    assert!(out.contains("arity"), "{}", out);
    let (code, out, _) = sh(&["--format", "json", "check-safety", &ex("leak.ma")], "");
    assert_eq!(code, EXIT_FINDINGS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["safe"], false);
    assert_eq!(sh(&["check-safety", &ex("separation.ma")], "").0, EXIT_OK);
}

#[test]
fn infer_formats() {
    let (code, out, _) = sh(&["--format", "json", "infer", &ex("server.pi")], "");
    assert_eq!(code, EXIT_OK);
    let s = shapestar::shape::from_json(&out).unwrap();
    assert_eq!((s.node_count(), s.edge_count()), (15, 14));
    let (code, dot, _) = sh(&["--format", "dot", "infer", &ex("server.pi")], "");
    assert_eq!(code, EXIT_OK);
    assert!(dot.starts_with("digraph"), "{}", dot);
    let path = std::env::temp_dir().join("shapestar-cli-export.json");
    std::fs::write(&path, &out).unwrap();
    let (code, again, _) = sh(&["--format", "dot", "export", path.to_str().unwrap()], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(again, dot);
}

#[test]
fn typing_subcommands() {
    let (code, out, _) = sh(&["tpi", &ex("server.pi")], "");
    assert_eq!(code, EXIT_FINDINGS, "{}", out);
    let (code, _, _) = sh(&["--calculus", "pi", "tpi", "-", "--ctx", "a: ch[i], o: i"], "a<o>.0");
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = sh(&["tma", &ex("packet.ma"), "--env", "d: Amb[1]", "--type", "Cap[1]"], "");
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = sh(&["tma", &ex("packet.ma"), "--env", "d: Amb[1]", "--type", "1"], "");
    assert_eq!(code, EXIT_FINDINGS);
    let (code, _, _) = sh(&["tma", &ex("separation.ma"), "--type", "?t", "--via", "direct"], "");
    assert_eq!(code, EXIT_FINDINGS);
}

#[test]
fn custom_rules_file() {
    let path = std::env::temp_dir().join("shapestar-cli-rules.txt");
    std::fs::write(&path, "# forwarding\nfwd a' b'.P' | a'<x'>.Q' => P' | b'<x'>.0 | Q'\n").unwrap();
    let (code, out, err) = sh(&["--rules", path.to_str().unwrap(), "reduce", "-"], "fwd a b.0 | a<m>.0");
    assert_eq!(code, EXIT_OK, "{}", err);
    assert!(out.contains("b out<m>.0"), "{}", out);
}

#[test]
fn errors_are_reported() {
    let (code, _, err) = sh(&["--calculus", "pi", "parse", "-"], "a<b.0");
    assert_eq!(code, EXIT_ERROR);
    assert!(!err.is_empty());
    assert_eq!(sh(&["parse", "/nonexistent.pi"], "").0, EXIT_ERROR);
    assert_eq!(sh(&["no-such-command"], "").0, EXIT_ERROR);
    let (code, out, _) = sh(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check-safety"));
}
