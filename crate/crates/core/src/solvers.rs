//! Polynomial-time solvers: shortest TJ sequences when the Piran graph is
//! even-hole-free, and TS reconfiguration on cographs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{co_components_within, components_within, Graph, Vertex};
use crate::is_reconfig::{IsSequence, Model, TokenSet};
use crate::search::Outcome;

/// The subgraph induced by `(A \ B) ∪ (B \ A)`. Both sides are independent,
/// so every edge joins `a_side` to `b_side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiranGraph {
    pub a_side: Vec<Vertex>,
    pub b_side: Vec<Vertex>,
    /// Neighbours inside the Piran graph, keyed by base-graph vertex id.
    pub adj: BTreeMap<Vertex, Vec<Vertex>>,
}

impl PiranGraph {
    pub fn vertex_count(&self) -> usize {
        self.a_side.len() + self.b_side.len()
    }

    pub fn edge_count(&self) -> usize {
        self.b_side.iter().map(|v| self.adj[v].len()).sum()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Acyclicity test: a forest has `|E| = |V| - #components`.
    pub fn is_forest(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut components = 0;
        for &root in self.adj.keys() {
            if !seen.insert(root) {
                continue;
            }
            components += 1;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        self.edge_count() + components == self.vertex_count()
    }

    /// Some `b_side` vertex has at most one neighbour in `a_side`.
    pub fn has_lonely_neighbor(&self) -> bool {
        self.b_side.is_empty() || self.b_side.iter().any(|v| self.neighbors(*v).len() <= 1)
    }
}

pub fn piran(g: &Graph, a: &TokenSet, b: &TokenSet) -> Result<PiranGraph> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!("token sets differ in size ({} vs {})", a.len(), b.len())));
    }
    for set in [a, b] {
        if !set.is_independent(g) {
            return Err(Error::InvalidState(format!("{{{set}}} is not an independent set")));
        }
    }
    let a_side = a.minus(b);
    let b_side = b.minus(a);
    let mut adj = BTreeMap::new();
    for &u in a_side.iter().chain(&b_side) {
        adj.insert(u, Vec::new());
    }
    for &u in &a_side {
        for &v in &b_side {
            if g.adjacent(u, v) {
                adj.get_mut(&u).unwrap().push(v);
                adj.get_mut(&v).unwrap().push(u);
            }
        }
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    Ok(PiranGraph { a_side, b_side, adj })
}

/// Shortest TJ sequence of length `|A \ B|`, valid whenever `Π(A, B)` is a forest.
///
/// Keeps a queue (lowest id first) of `b_side` vertices with at most one live
/// `a_side` neighbour; each jump moves that neighbour, or the lowest live
/// `a_side` token if there is none, onto the queued vertex.
pub fn tj_solve_ehf(g: &Graph, a: &TokenSet, b: &TokenSet) -> Result<IsSequence> {
    let pi = piran(g, a, b)?;
    if !pi.is_forest() {
        return Err(Error::NotEvenHoleFree);
    }
    let mut degree: BTreeMap<Vertex, usize> = pi.b_side.iter().map(|&v| (v, pi.neighbors(v).len())).collect();
    let mut queue: BTreeSet<Vertex> = degree.iter().filter(|(_, &d)| d <= 1).map(|(&v, _)| v).collect();
    let mut live_a: BTreeSet<Vertex> = pi.a_side.iter().copied().collect();

    let mut cur = a.clone();
    let mut states = vec![cur.clone()];
    while !live_a.is_empty() {
        let v = queue.pop_first().ok_or_else(|| {
            Error::InvalidState("no token of B \\ A with at most one neighbour in A \\ B".into())
        })?;
        degree.remove(&v);
        let w = pi
            .neighbors(v)
            .iter()
            .copied()
            .find(|u| live_a.contains(u))
            .unwrap_or_else(|| *live_a.first().unwrap());
        live_a.remove(&w);
        for &u in pi.neighbors(w) {
            if let Some(d) = degree.get_mut(&u) {
                *d -= 1;
                if *d <= 1 {
                    queue.insert(u);
                }
            }
        }
        cur = cur.without(w).with(v);
        states.push(cur.clone());
    }
    Ok(IsSequence { model: Model::Tj, states })
}

/// Whether `g` is P4-free: every induced subgraph on two or more vertices is
/// disconnected or has a disconnected complement.
pub fn is_cograph(g: &Graph) -> bool {
    fn rec(g: &Graph, vs: &[Vertex]) -> bool {
        if vs.len() <= 1 {
            return true;
        }
        let comps = components_within(g, vs);
        if comps.len() > 1 {
            return comps.iter().all(|c| rec(g, c));
        }
        let co = co_components_within(g, vs);
        co.len() > 1 && co.iter().all(|c| rec(g, c))
    }
    let all: Vec<Vertex> = g.vertices().collect();
    rec(g, &all)
}

/// TS reconfiguration on a cograph by recursion over components and
/// co-components. Returns a shortest sequence or `NotReconfigurable`.
pub fn ts_solve_p4free(g: &Graph, a: &TokenSet, b: &TokenSet) -> Result<Outcome<IsSequence>> {
    for set in [a, b] {
        if !set.is_independent(g) {
            return Err(Error::InvalidState(format!("{{{set}}} is not an independent set")));
        }
    }
    if !is_cograph(g) {
        return Err(Error::NotCograph);
    }
    if a.len() != b.len() {
        return Ok(Outcome::NotReconfigurable);
    }
    let all: Vec<Vertex> = g.vertices().collect();
    let Some(slides) = solve_cograph(g, &all, a.vertices(), b.vertices())? else {
        return Ok(Outcome::NotReconfigurable);
    };
    let mut cur = a.clone();
    let mut states = vec![cur.clone()];
    for (from, to) in slides {
        cur = cur.without(from).with(to);
        states.push(cur.clone());
    }
    Ok(Outcome::Found(IsSequence { model: Model::Ts, states }))
}

type Slides = Vec<(Vertex, Vertex)>;

fn restrict(set: &[Vertex], part: &[Vertex]) -> Vec<Vertex> {
    set.iter().copied().filter(|v| part.binary_search(v).is_ok()).collect()
}

fn solve_cograph(g: &Graph, vs: &[Vertex], a: &[Vertex], b: &[Vertex]) -> Result<Option<Slides>> {
    if vs.len() == 1 {
        return Ok((a.len() == b.len()).then(Vec::new));
    }
    let comps = components_within(g, vs);
    if comps.len() > 1 {
        let parts: Vec<_> = comps.iter().map(|c| (c, restrict(a, c), restrict(b, c))).collect();
        if parts.iter().any(|(_, ac, bc)| ac.len() != bc.len()) {
            return Ok(None);
        }
        let mut slides = Vec::new();
        for (c, ac, bc) in parts {
            match solve_cograph(g, c, &ac, &bc)? {
                Some(s) => slides.extend(s),
                None => return Ok(None),
            }
        }
        return Ok(Some(slides));
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    match a.len() {
        0 => Ok(Some(Vec::new())),
        1 => Ok(Some(shortest_slides(g, vs, a[0], b[0]))),
        _ => {
            let co = co_components_within(g, vs);
            if co.len() == 1 {
                return Err(Error::NotCograph);
            }
            let home = co.iter().find(|c| c.binary_search(&a[0]).is_ok()).expect("a[0] lies in vs");
            let inside = |x: &[Vertex]| x.iter().all(|v| home.binary_search(v).is_ok());
            if inside(a) && inside(b) {
                solve_cograph(g, home, a, b)
            } else {
                Ok(None)
            }
        }
    }
}

/// Slides along a shortest path from `from` to `to` inside the connected vertex
/// set `vs`, stepping back from `to` through the lowest-id predecessor.
fn shortest_slides(g: &Graph, vs: &[Vertex], from: Vertex, to: Vertex) -> Slides {
    let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    let member = |v: &Vertex| vs.binary_search(v).is_ok();
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &w in g.neighbors(u) {
            if member(&w) && !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        let d = dist[&cur];
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|w| member(w) && dist.get(w) == Some(&(d - 1)))
            .expect("connected vertex set");
        path.push(cur);
    }
    path.reverse();
    path.windows(2).map(|w| (w[0], w[1])).collect()
}
