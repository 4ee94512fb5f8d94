//! Seeded random instances for property sweeps and `oracle --random`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{CnfFormula, Literal};
use crate::graph::{Graph, Vertex};
use crate::is_reconfig::TokenSet;

/// The generator used for every seeded instance.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random forest: each vertex attaches to an earlier one with probability `p_attach`.
pub fn forest<R: Rng>(rng: &mut R, n: usize, p_attach: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(p_attach) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    relabel(rng, n, &edges)
}

/// Random chordal graph: each new vertex is joined to a random clique of the
/// graph built so far, so the insertion order reversed is a perfect elimination order.
pub fn chordal<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::undirected(n);
    for v in 1..n {
        if rng.gen_bool(0.15) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut candidates: Vec<Vertex> = g.neighbors(anchor).iter().copied().filter(|&u| u < v).collect();
        candidates.shuffle(rng);
        for u in candidates {
            if rng.gen_bool(0.5) && clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        for u in clique {
            g.add_edge(u, v).unwrap();
        }
    }
    let edges = g.edges();
    relabel(rng, n, &edges)
}

/// Random cograph from nested disjoint unions and joins.
pub fn cograph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    fn build<R: Rng>(rng: &mut R, vs: &[Vertex], edges: &mut Vec<(Vertex, Vertex)>) {
        if vs.len() <= 1 {
            return;
        }
        let cut = rng.gen_range(1..vs.len());
        let (left, right) = vs.split_at(cut);
        build(rng, left, edges);
        build(rng, right, edges);
        if rng.gen_bool(0.5) {
            for &u in left {
                for &w in right {
                    edges.push((u, w));
                }
            }
        }
    }
    let vs: Vec<Vertex> = (0..n).collect();
    let mut edges = Vec::new();
    build(rng, &vs, &mut edges);
    relabel(rng, n, &edges)
}

fn relabel<R: Rng>(rng: &mut R, n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::undirected(n);
    for &(u, v) in edges {
        g.add_edge(perm[u], perm[v]).unwrap();
    }
    g
}

/// A random independent set of exactly `size` vertices, if greedy sampling finds one.
pub fn independent_set<R: Rng>(rng: &mut R, g: &Graph, size: usize) -> Option<TokenSet> {
    for _ in 0..32 {
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.shuffle(rng);
        let mut chosen: Vec<Vertex> = Vec::new();
        for v in order {
            if chosen.len() == size {
                break;
            }
            if chosen.iter().all(|&u| !g.adjacent(u, v)) {
                chosen.push(v);
            }
        }
        if chosen.len() == size {
            return Some(TokenSet::new(chosen));
        }
    }
    None
}

/// Random CNF with clauses of width 1..=3 over distinct variables.
pub fn cnf<R: Rng>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=n.min(3));
            let mut vars: Vec<usize> = (1..=n).collect();
            vars.shuffle(rng);
            vars[..width].iter().map(|&var| Literal { var, positive: rng.gen_bool(0.5) }).collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("distinct variables per clause")
}
