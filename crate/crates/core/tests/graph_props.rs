use proptest::prelude::*;

use reconf_core::cnf::CnfFormula;
use reconf_core::gadget_exp::gen_exp;
use reconf_core::gadget_sat::gen_sat;
use reconf_core::graph::{bfs_dist, export_dot, layer_decompose, parse_graph, serialize_graph, Graph, Vertex};

fn arb_graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |pairs| {
            let mut g = Graph::new(n, directed);
            for (u, v) in pairs {
                // Duplicates and loops are rejected; skipping them keeps the sample simple.
                let _ = g.add_edge(u, v);
            }
            g
        })
    })
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for &v in g.neighbors(u) {
            d[u][v] = Some(1);
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if let (Some(a), Some(b)) = (d[u][w], d[w][v]) {
                    if d[u][v].is_none_or(|c| a + b < c) {
                        d[u][v] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #[test]
    fn bfs_matches_floyd_warshall(g in arb_graph(12, false), dg in arb_graph(10, true)) {
        for h in [&g, &dg] {
            let all = floyd_warshall(h);
            for s in h.vertices() {
                prop_assert_eq!(&bfs_dist(h, s), &all[s]);
            }
        }
    }

    #[test]
    fn bfs_triangle_inequality(g in arb_graph(12, false), s in 0usize..12) {
        let s = s % g.n();
        let d = bfs_dist(&g, s);
        for (u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(da) = d[a] {
                    prop_assert!(d[b].is_some_and(|db| db <= da + 1));
                }
            }
        }
    }

    #[test]
    fn undirected_neighbourhoods_are_symmetric(g in arb_graph(12, false)) {
        for u in g.vertices() {
            for &v in g.neighbors(u) {
                prop_assert!(g.neighbors(v).contains(&u));
            }
        }
        prop_assert!(g.is_symmetric());
    }

    #[test]
    fn serialization_round_trips(g in arb_graph(12, false), dg in arb_graph(8, true), label in "[a-z][a-z0-9 ]{0,6}") {
        for h in [g, dg] {
            let mut h = h;
            h.set_label(0, label.trim());
            let text = serialize_graph(&h);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(serialize_graph(&back), text);
        }
    }

    #[test]
    fn layers_are_exact(g in arb_graph(12, false), s in 0usize..12, t in 0usize..12) {
        let (s, t) = (s % g.n(), t % g.n());
        let from_s = bfs_dist(&g, s);
        let to_t = bfs_dist(&g, t);
        let Some(k) = from_s[t] else {
            prop_assert!(layer_decompose(&g, s, t).is_err());
            return Ok(());
        };
        let dec = layer_decompose(&g, s, t).unwrap();
        prop_assert_eq!(dec.k, k);
        prop_assert_eq!(&dec.layers[0], &vec![s]);
        prop_assert_eq!(&dec.layers[k], &vec![t]);
        for v in g.vertices() {
            let expected = match (from_s[v], to_t[v]) {
                (Some(a), Some(b)) if a + b == k => Some(a),
                _ => None,
            };
            prop_assert_eq!(dec.layer_of(v), expected);
            if let Some(i) = expected {
                prop_assert!(dec.layers[i].contains(&v));
            }
        }
        let g1 = dec.shortest_path_subgraph(&g);
        for (u, v) in g1.edges() {
            let (a, b) = (dec.layer_of(u).unwrap(), dec.layer_of(v).unwrap());
            prop_assert_eq!(a.abs_diff(b), 1);
        }
        // Greedy descent from any layered vertex reaches both endpoints.
        for v in dec.vertices() {
            let mut cur = v;
            while cur != t {
                let i = dec.layer_of(cur).unwrap();
                cur = *g.neighbors(cur).iter().find(|&&w| dec.layer_of(w) == Some(i + 1)).unwrap();
            }
            cur = v;
            while cur != s {
                let i = dec.layer_of(cur).unwrap();
                cur = *g.neighbors(cur).iter().find(|&&w| i > 0 && dec.layer_of(w) == Some(i - 1)).unwrap();
            }
        }
    }
}

#[test]
fn c4_examples() {
    let c4 = parse_graph("graph undirected\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(bfs_dist(&c4, 0), vec![Some(0), Some(1), Some(2), Some(1)]);
    let dec = layer_decompose(&c4, 0, 2).unwrap();
    assert_eq!(dec.layers, vec![vec![0], vec![1, 3], vec![2]]);
    let k2 = parse_graph("graph undirected\n2 1\n0 1").unwrap();
    assert_eq!(layer_decompose(&k2, 0, 1).unwrap().layers, vec![vec![0], vec![1]]);
}

#[test]
fn parse_errors_name_the_line() {
    let cases = [
        ("graph sideways\n1 0\n", 1),
        ("graph undirected\n2 1\n0 2\n", 3),
        ("graph undirected\n2 2\n0 1\n# dup\n1 0\n", 5),
        ("graph undirected\n2 1\n1 1\n", 3),
        ("graph undirected\nx 1\n", 2),
    ];
    for (text, line) in cases {
        match parse_graph(text) {
            Err(reconf_core::Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn exp_level_one_layers() {
    let inst = gen_exp(1).unwrap();
    let dec = layer_decompose(&inst.g, inst.s, inst.t).unwrap();
    let names = |vs: &[Vertex]| vs.iter().map(|&v| inst.g.label(v).unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&dec.layers[1]), (1..=7).map(|i| format!("x[1][{i}]")).collect::<Vec<_>>());
    assert_eq!(names(&dec.layers[2]), (1..=6).map(|i| format!("y[1][{i}]")).collect::<Vec<_>>());
    assert_eq!(dec.layers.len(), 4);
}

/// Minimal recursive-descent check of the DOT subset: header, node statements
/// with optional attribute lists, edge statements, closing brace.
fn check_dot(text: &str) -> Result<(), String> {
    let mut toks = tokenize(text)?.into_iter().peekable();
    let kw = toks.next().ok_or("empty")?;
    let arrow = match kw.as_str() {
        "graph" => "--",
        "digraph" => "->",
        other => return Err(format!("bad keyword {other}")),
    };
    if toks.peek().is_some_and(|t| t != "{") {
        toks.next();
    }
    if toks.next().as_deref() != Some("{") {
        return Err("missing {".into());
    }
    loop {
        let t = toks.next().ok_or("unterminated body")?;
        if t == "}" {
            break;
        }
        if !is_id(&t) {
            return Err(format!("expected id, got {t}"));
        }
        let mut next = toks.next().ok_or("unterminated statement")?;
        while next == arrow {
            let target = toks.next().ok_or("dangling edge")?;
            if !is_id(&target) {
                return Err(format!("bad edge target {target}"));
            }
            next = toks.next().ok_or("unterminated statement")?;
        }
        if next == "--" || next == "->" {
            return Err(format!("wrong edge operator {next}"));
        }
        if next == "[" {
            loop {
                let key = toks.next().ok_or("unterminated attrs")?;
                if key == "]" {
                    break;
                }
                if !is_id(&key) || toks.next().as_deref() != Some("=") {
                    return Err(format!("bad attribute near {key}"));
                }
                let val = toks.next().ok_or("missing value")?;
                if !is_id(&val) {
                    return Err(format!("bad value {val}"));
                }
                if toks.peek().is_some_and(|t| t == ",") {
                    toks.next();
                }
            }
            next = toks.next().ok_or("unterminated statement")?;
        }
        if next != ";" {
            return Err(format!("expected ;, got {next}"));
        }
    }
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(format!("trailing {t}")),
    }
}

fn is_id(t: &str) -> bool {
    t.starts_with('"') || t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn tokenize(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '{' | '}' | '[' | ']' | '=' | ',' | ';' => out.push(c.to_string()),
            '-' => match chars.next() {
                Some('-') => out.push("--".into()),
                Some('>') => out.push("->".into()),
                _ => return Err("stray -".into()),
            },
            '"' => {
                let mut s = String::from('"');
                loop {
                    match chars.next().ok_or("unterminated string")? {
                        '\\' => {
                            s.push('\\');
                            s.push(chars.next().ok_or("bad escape")?);
                        }
                        '"' => break,
                        c => s.push(c),
                    }
                }
                s.push('"');
                out.push(s);
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '.' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(s);
            }
            other => return Err(format!("unexpected {other:?}")),
        }
    }
    Ok(out)
}

#[test]
fn dot_checker_rejects_garbage() {
    assert!(check_dot("graph G { 0 -> 1; }").is_err());
    assert!(check_dot("graph G { 0 -- 1 }").is_err());
    assert!(check_dot("graph G { 0 [label=\"a\"; }").is_err());
    assert!(check_dot("graph G { 0 -- 1; }").is_ok());
}

#[test]
fn dot_output_parses() {
    let k2 = Graph::from_edges(2, &[(0, 1)]);
    let dot = export_dot(&k2, &[]);
    check_dot(&dot).unwrap();
    assert_eq!(dot.matches(';').count(), 3);

    let mut d = Graph::new(3, true);
    d.add_edge(0, 1).unwrap();
    d.add_edge(2, 1).unwrap();
    let dot = export_dot(&d, &[vec![0]]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("2 -> 1;"));
    check_dot(&dot).unwrap();

    let inst = gen_sat(&CnfFormula::from_ints(1, &[&[1]]).unwrap());
    let dot = export_dot(&inst.g, &[inst.p_b.0.clone(), inst.p_e.0.clone()]);
    check_dot(&dot).unwrap();
    assert!(dot.contains("fillcolor=red") && dot.contains("fillcolor=blue"));

    let mut odd = Graph::undirected(1);
    odd.set_label(0, "quote \" and \\ back");
    check_dot(&export_dot(&odd, &[])).unwrap();
}
