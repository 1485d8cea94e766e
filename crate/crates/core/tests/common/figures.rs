use shapestar::shape::{from_json, ShapePredicate};

pub fn graph(root: &str, edges: &[(&str, &str, &str)]) -> ShapePredicate {
    let v = serde_json::json!({
        "nodes": [root],
        "root": root,
        "edges": edges.iter().map(|(s, l, d)| serde_json::json!({"src": s, "label": l, "dst": d})).collect::<Vec<_>>(),
    });
    from_json(&v.to_string()).unwrap()
}

pub fn server_figure() -> ShapePredicate {
    graph(
        "R",
        &[
            ("R", "s in<x, y>", "A"),
            ("A", "x out<y>", "B"),
            ("R", "a in<v>", "C"),
            ("C", "v in<p>", "D"),
            ("R", "b in<w>", "E"),
            ("E", "w in<q, r>", "F"),
            ("R", "s out<a, n>", "L1"),
            ("R", "n out<o>", "L2"),
            ("R", "s out<b, m>", "L3"),
            ("R", "m out<o, o>", "L4"),
            ("R", "a out<n>", "B1"),
            ("R", "b out<m>", "B2"),
            ("R", "n in<p>", "D1"),
            ("R", "m in<q, r>", "F1"),
        ],
    )
}

pub fn packet_figure() -> ShapePredicate {
    graph(
        "R",
        &[
            ("R", "d[]", "D"),
            ("D", "p[]", "N33"),
            ("D", "in d", "N24"),
            ("D", "open p", "L1"),
            ("D", "out<>", "L2"),
            ("R", "p[]", "N24"),
            ("N24", "out<>", "L3"),
            ("N33", "in d", "N24"),
            ("N33", "out<>", "L3"),
            ("R", "out<*{in d}>", "L4"),
            ("R", "in<x>", "X1"),
            ("X1", "p[]", "X2"),
            ("X2", "x", "X3"),
            ("X3", "out<>", "L3"),
            ("D", "d[]", "D"),
            ("N24", "in d", "N24"),
        ],
    )
}
