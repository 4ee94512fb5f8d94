//! Simple graphs with dense vertex ids, the text file format, BFS distances,
//! shortest-path layering and DOT export.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A finite simple graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted. For directed graphs `out` holds
/// out-neighbours and `inc` in-neighbours; for undirected graphs both are the
/// same symmetric list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    /// Builds an undirected graph from an edge list, panicking on invalid edges.
    /// Meant for literals in tests and generators.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::undirected(n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("invalid edge literal");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Number of edges (each undirected edge counted once).
    pub fn edge_count(&self) -> usize {
        let total: usize = self.out.iter().map(Vec::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidEdge(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidEdge(format!("self-loop at {u}")));
        }
        let pos = match self.out[u].binary_search(&v) {
            Ok(_) => return Err(Error::InvalidEdge(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => pos,
        };
        self.out[u].insert(pos, v);
        if self.directed {
            let pos = self.inc[v].binary_search(&u).unwrap_err();
            self.inc[v].insert(pos, u);
        } else {
            let pos = self.out[v].binary_search(&u).unwrap_err();
            self.out[v].insert(pos, u);
        }
        Ok(())
    }

    /// Out-neighbours (all neighbours for undirected graphs), sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    /// In-neighbours, sorted. Equal to `neighbors` for undirected graphs.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        if self.directed {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    /// Whether the arc `u -> v` exists (the edge `uv` for undirected graphs).
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// Adjacency in the underlying undirected graph.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v) || (self.directed && self.has_edge(v, u))
    }

    /// Edges in canonical order: lexicographic, with `u < v` for undirected graphs.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in &self.out[u] {
                if self.directed || u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// Finds the vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().find(|(_, l)| *l == label).map(|(&v, _)| v)
    }

    /// The same vertex set with every arc made undirected.
    pub fn to_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::undirected(self.n);
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Exhaustive symmetry check of the undirected adjacency structure.
    pub fn is_symmetric(&self) -> bool {
        self.directed
            || self
                .vertices()
                .all(|u| self.out[u].iter().all(|&v| self.has_edge(v, u)))
    }
}

/// Unweighted distances from `src` along edge directions; `None` = unreachable.
pub fn bfs_dist(g: &Graph, src: Vertex) -> Vec<Option<usize>> {
    bfs_with(g, src, |v| g.neighbors(v))
}

/// Distances *to* `dst` (BFS over reversed arcs).
pub fn bfs_dist_to(g: &Graph, dst: Vertex) -> Vec<Option<usize>> {
    bfs_with(g, dst, |v| g.in_neighbors(v))
}

fn bfs_with<'a>(g: &'a Graph, src: Vertex, next: impl Fn(Vertex) -> &'a [Vertex]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[src] = Some(0);
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &v in next(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// The layers `D_0..D_k` of all shortest `(s, t)`-paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub s: Vertex,
    pub t: Vertex,
    /// `dist(s, t)`.
    pub k: usize,
    /// `layers[i]` holds the vertices at distance `i` from `s` and `k - i` from `t`, sorted.
    pub layers: Vec<Vec<Vertex>>,
    layer_of: Vec<Option<usize>>,
}

impl LayerDecomposition {
    pub fn layer_of(&self, v: Vertex) -> Option<usize> {
        self.layer_of.get(v).copied().flatten()
    }

    /// Vertices lying on at least one shortest path, sorted by id.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.layers.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// `G_1`: same vertex ids, keeping only arcs from `D_i` to `D_{i+1}`.
    /// Vertices off every shortest path become isolated.
    pub fn shortest_path_subgraph(&self, g: &Graph) -> Graph {
        let mut g1 = Graph::new(g.n(), g.is_directed());
        for (u, v) in g.edges() {
            let (Some(lu), Some(lv)) = (self.layer_of(u), self.layer_of(v)) else {
                continue;
            };
            let keep = lv == lu + 1 || (!g.is_directed() && lu == lv + 1);
            if keep {
                g1.add_edge(u, v).expect("edge copied from a simple graph");
            }
        }
        g1.labels = g.labels.clone();
        g1
    }
}

pub fn layer_decompose(g: &Graph, s: Vertex, t: Vertex) -> Result<LayerDecomposition> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let from_s = bfs_dist(g, s);
    let to_t = bfs_dist_to(g, t);
    let k = from_s[t].ok_or(Error::NoPath { s, t })?;
    let mut layers = vec![Vec::new(); k + 1];
    let mut layer_of = vec![None; g.n()];
    for v in g.vertices() {
        if let (Some(a), Some(b)) = (from_s[v], to_t[v]) {
            if a + b == k {
                layers[a].push(v);
                layer_of[v] = Some(a);
            }
        }
    }
    Ok(LayerDecomposition { s, t, k, layers, layer_of })
}

/// Parses the text graph format:
///
/// ```text
/// graph undirected
/// <n> <m>
/// <u> <v>        (m lines)
/// label <v> <text>
/// ```
///
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, msg: String| Error::Parse { line, msg };

    let (line, header) = lines.next().ok_or_else(|| perr(0, "empty input".into()))?;
    let directed = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["graph", "undirected"] => false,
        ["graph", "directed"] => true,
        _ => return Err(perr(line, format!("expected `graph undirected|directed`, got `{header}`"))),
    };
    let (line, sizes) = lines.next().ok_or_else(|| perr(line, "missing `<n> <m>` line".into()))?;
    let nums = parse_usizes(sizes).map_err(|m| perr(line, m))?;
    let [n, m] = nums[..] else {
        return Err(perr(line, format!("expected `<n> <m>`, got `{sizes}`")));
    };

    let mut g = Graph::new(n, directed);
    let mut seen_edges = 0;
    for (line, text) in lines {
        if let Some(rest) = text.strip_prefix("label") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(perr(line, format!("unrecognised line `{text}`")));
            }
            let rest = rest.trim_start();
            let (id, label) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let v: Vertex = id.parse().map_err(|_| perr(line, format!("bad vertex id `{id}`")))?;
            if v >= n {
                return Err(perr(line, format!("label vertex {v} out of range (n = {n})")));
            }
            g.set_label(v, label.trim());
            continue;
        }
        let nums = parse_usizes(text).map_err(|m| perr(line, m))?;
        let [u, v] = nums[..] else {
            return Err(perr(line, format!("expected `<u> <v>`, got `{text}`")));
        };
        if seen_edges == m {
            return Err(perr(line, format!("more than the declared {m} edges")));
        }
        g.add_edge(u, v).map_err(|e| perr(line, e.to_string()))?;
        seen_edges += 1;
    }
    if seen_edges != m {
        return Err(perr(0, format!("declared {m} edges, found {seen_edges}")));
    }
    Ok(g)
}

fn parse_usizes(text: &str) -> std::result::Result<Vec<usize>, String> {
    text.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| format!("bad integer `{tok}`")))
        .collect()
}

/// Canonical serialisation: sorted edges, then labels by vertex id.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.directed { "directed" } else { "undirected" };
    writeln!(out, "graph {kind}").unwrap();
    writeln!(out, "{} {}", g.n, g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (v, l) in &g.labels {
        writeln!(out, "label {v} {l}").unwrap();
    }
    out
}

/// Parses a vertex-set line: space-separated ids. `-` alone denotes the empty set.
pub fn parse_vertex_set(text: &str) -> Result<Vec<Vertex>> {
    let body = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if body == "-" {
        return Ok(Vec::new());
    }
    parse_usizes(body).map_err(|msg| Error::Parse { line: 1, msg })
}

const HIGHLIGHT_COLORS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];

/// Renders `g` as Graphviz DOT. Each highlight set gets its own colour; a vertex in
/// several sets takes the style of the last one.
pub fn export_dot(g: &Graph, highlights: &[Vec<Vertex>]) -> String {
    let mut style: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, set) in highlights.iter().enumerate() {
        for &v in set {
            style.insert(v, i);
        }
    }
    let (kw, arrow) = if g.directed { ("digraph", "->") } else { ("graph", "--") };
    let mut out = String::new();
    writeln!(out, "{kw} G {{").unwrap();
    for v in g.vertices() {
        let mut attrs = Vec::new();
        if let Some(l) = g.label(v) {
            attrs.push(format!("label={}", dot_quote(l)));
        }
        if let Some(&i) = style.get(&v) {
            let color = HIGHLIGHT_COLORS[i % HIGHLIGHT_COLORS.len()];
            attrs.push(format!("color={color}"));
            attrs.push("style=filled".to_string());
            attrs.push(format!("fillcolor={color}"));
            attrs.push("fontcolor=white".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} {arrow} {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

/// Connected components of the subgraph induced by `within` (adjacency taken
/// as undirected). Components are sorted internally and ordered by smallest vertex.
pub fn components_within(g: &Graph, within: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut member = vec![false; g.n()];
    for &v in within {
        member[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    let mut comps = Vec::new();
    for &root in &sorted {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let nbrs = g.neighbors(u).iter().chain(if g.is_directed() { g.in_neighbors(u) } else { &[] });
            for &v in nbrs {
                if member[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Connected components of the complement of the subgraph induced by `within`,
/// computed without building the complement: each BFS step moves the
/// still-unvisited non-neighbours of the current vertex into the frontier.
pub fn co_components_within(g: &Graph, within: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut unvisited: Vec<Vertex> = within.to_vec();
    unvisited.sort_unstable();
    let mut comps = Vec::new();
    while !unvisited.is_empty() {
        let root = unvisited.remove(0);
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let (adjacent, rest): (Vec<Vertex>, Vec<Vertex>) =
                unvisited.iter().partition(|&&w| g.adjacent(u, w));
            unvisited = adjacent;
            for w in rest {
                comp.push(w);
                queue.push_back(w);
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the given order.
pub fn induced_subgraph(g: &Graph, vertices: &[Vertex]) -> Graph {
    let mut index = vec![None; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = Some(i);
    }
    let mut h = Graph::new(vertices.len(), g.is_directed());
    for (i, &u) in vertices.iter().enumerate() {
        for &w in g.neighbors(u) {
            if let Some(j) = index[w] {
                if g.is_directed() || i < j {
                    h.add_edge(i, j).expect("induced edge");
                }
            }
        }
        if let Some(l) = g.label(u) {
            h.set_label(i, l);
        }
    }
    h
}
