//! Explicit reconfiguration graphs for tiny instances.
//!
//! States are enumerated up front and adjacency is decided pairwise from the
//! raw rule (Hamming distance one for paths, symmetric-difference shape for
//! token sets). Nothing here goes through the implicit neighbour generators, so
//! distances from these graphs serve as independent oracles for the searches.

use crate::error::{Error, Result};
use crate::graph::{bfs_dist, Graph, Vertex};
use crate::is_reconfig::{Model, TokenSet};
use crate::sp::{sp_enumerate, SpState};

#[derive(Clone, Debug)]
pub struct ExplicitSpace<T> {
    pub states: Vec<T>,
    /// Node `i` stands for `states[i]`.
    pub graph: Graph,
}

impl<T: PartialEq> ExplicitSpace<T> {
    pub fn index_of(&self, state: &T) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    /// Reconfiguration distance, `None` if in different components or absent.
    pub fn distance(&self, a: &T, b: &T) -> Option<usize> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        bfs_dist(&self.graph, i)[j]
    }
}

fn build<T>(states: Vec<T>, adjacent: impl Fn(&T, &T) -> bool) -> ExplicitSpace<T> {
    let mut graph = Graph::undirected(states.len());
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            if adjacent(&states[i], &states[j]) {
                graph.add_edge(i, j).expect("distinct pair");
            }
        }
    }
    ExplicitSpace { states, graph }
}

/// All shortest `(s, t)`-paths, adjacent when they differ in exactly one position.
pub fn sp_space(g: &Graph, s: Vertex, t: Vertex, cap: usize) -> Result<ExplicitSpace<SpState>> {
    let states = sp_enumerate(g, s, t, cap)?;
    Ok(build(states, |p, q| {
        p.vertices().iter().zip(q.vertices()).filter(|(a, b)| a != b).count() == 1
    }))
}

/// Every independent set of `g` (underlying undirected adjacency), in increasing
/// bitmask order. Limited to 24 vertices.
pub fn independent_sets(g: &Graph) -> Result<Vec<TokenSet>> {
    let n = g.n();
    if n > 24 {
        return Err(Error::ResourceLimit(format!("{n} vertices is too many to enumerate independent sets")));
    }
    let nbr_mask: Vec<u32> = g
        .vertices()
        .map(|v| g.vertices().filter(|&u| g.adjacent(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let independent = (0..n).all(|v| mask >> v & 1 == 0 || nbr_mask[v] & mask == 0);
        if independent {
            out.push(TokenSet::new((0..n).filter(|v| mask >> v & 1 == 1).collect()));
        }
    }
    Ok(out)
}

/// The TS/TJ graph on independent sets of size `size`, or the TAR graph (sizes
/// `≥ k - 1`) when `model` is TAR; `size` is ignored for TAR.
pub fn is_space(g: &Graph, model: Model, size: usize) -> Result<ExplicitSpace<TokenSet>> {
    let keep = |s: &TokenSet| match model {
        Model::Tar { k } => s.len() + 1 >= k,
        _ => s.len() == size,
    };
    let states: Vec<TokenSet> = independent_sets(g)?.into_iter().filter(keep).collect();
    Ok(build(states, |a, b| {
        let only_a: Vec<Vertex> = a.vertices().iter().copied().filter(|v| !b.contains(*v)).collect();
        let only_b: Vec<Vertex> = b.vertices().iter().copied().filter(|v| !a.contains(*v)).collect();
        match model {
            Model::Tar { .. } => only_a.len() + only_b.len() == 1,
            Model::Tj => only_a.len() == 1 && only_b.len() == 1,
            Model::Ts => only_a.len() == 1 && only_b.len() == 1 && g.adjacent(only_a[0], only_b[0]),
        }
    }))
}
