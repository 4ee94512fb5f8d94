//! Reduction from shortest-path reconfiguration to independent-set
//! reconfiguration.
//!
//! `G′` lives on the vertices of `G_1` (the union of all shortest `(s, t)`-paths).
//! Each layer `D_i` becomes a clique and the edges between consecutive layers are
//! complemented, so the independent sets of size `k + 1` are exactly the vertex
//! sets of shortest paths. `G′` is numbered compactly: vertex `j` of `G′` is the
//! `j`-th smallest vertex of `G_1`.

use crate::error::{Error, Result};
use crate::graph::{layer_decompose, Graph, LayerDecomposition, Vertex};
use crate::is_reconfig::{tar_to_tj, tj_to_tar, IsSequence, Model, TokenSet};
use crate::sp::{SpSequence, SpSpace, SpState};

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub g_prime: Graph,
    pub layers: LayerDecomposition,
    /// `to_prime[v]` is the `G′` id of `v`, for vertices of `G_1`.
    pub to_prime: Vec<Option<Vertex>>,
    /// `from_prime[j]` is the original id of `G′` vertex `j` (increasing).
    pub from_prime: Vec<Vertex>,
}

impl ReductionOutput {
    /// Token count of the independent sets matching shortest paths: `k + 1`.
    pub fn set_size(&self) -> usize {
        self.layers.k + 1
    }

    /// Layer index of a `G′` vertex.
    pub fn layer_of_prime(&self, j: Vertex) -> usize {
        self.layers.layer_of(self.from_prime[j]).expect("G′ vertices lie on shortest paths")
    }
}

pub fn build_gprime(g: &Graph, s: Vertex, t: Vertex) -> Result<ReductionOutput> {
    let layers = layer_decompose(g, s, t)?;
    let from_prime = layers.vertices();
    let mut to_prime = vec![None; g.n()];
    for (j, &v) in from_prime.iter().enumerate() {
        to_prime[v] = Some(j);
    }
    let id = |v: Vertex| to_prime[v].unwrap();

    let mut gp = Graph::undirected(from_prime.len());
    // Labels carry the original name, or the original id where renumbering changed it.
    for (j, &v) in from_prime.iter().enumerate() {
        match g.label(v) {
            Some(l) => gp.set_label(j, l),
            None if v != j => gp.set_label(j, v.to_string()),
            None => {}
        }
    }
    for (i, layer) in layers.layers.iter().enumerate() {
        for (x, &u) in layer.iter().enumerate() {
            for &w in &layer[x + 1..] {
                gp.add_edge(id(u), id(w))?;
            }
            if let Some(next) = layers.layers.get(i + 1) {
                for &w in next {
                    if !g.has_edge(u, w) {
                        gp.add_edge(id(u), id(w))?;
                    }
                }
            }
        }
    }
    Ok(ReductionOutput { g_prime: gp, layers, to_prime, from_prime })
}

pub fn path_to_set(r: &ReductionOutput, p: &SpState) -> Result<TokenSet> {
    let ids = p
        .vertices()
        .iter()
        .map(|&v| {
            r.to_prime
                .get(v)
                .copied()
                .flatten()
                .ok_or_else(|| Error::InvalidState(format!("vertex {v} is not on a shortest path")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TokenSet::new(ids))
}

pub fn set_to_path(r: &ReductionOutput, ts: &TokenSet) -> Result<SpState> {
    let k = r.layers.k;
    if ts.len() != k + 1 {
        return Err(Error::InvalidState(format!("set has {} tokens, expected {}", ts.len(), k + 1)));
    }
    let mut path = vec![None; k + 1];
    for &j in ts.vertices() {
        if j >= r.from_prime.len() {
            return Err(Error::InvalidState(format!("vertex {j} not in G′")));
        }
        let slot = &mut path[r.layer_of_prime(j)];
        if slot.is_some() {
            return Err(Error::InvalidState(format!("two tokens in layer {}", r.layer_of_prime(j))));
        }
        *slot = Some(r.from_prime[j]);
    }
    Ok(SpState(path.into_iter().map(Option::unwrap).collect()))
}

/// Maps a valid SP sequence of `g` to the corresponding sequence on `G′` under
/// `model`. TS and TJ keep the length; TAR (with `k` = path vertex count) doubles it.
pub fn sp_to_is(g: &Graph, r: &ReductionOutput, seq: &SpSequence, model: Model) -> Result<IsSequence> {
    SpSpace::new(g, r.layers.s, r.layers.t)?.validate_sequence(seq)?;
    let states = seq.states.iter().map(|p| path_to_set(r, p)).collect::<Result<Vec<_>>>()?;
    match model {
        Model::Ts | Model::Tj => Ok(IsSequence { model, states }),
        Model::Tar { k } => {
            if k != r.set_size() {
                return Err(Error::InvalidArgument(format!("TAR threshold must be {}, got {k}", r.set_size())));
            }
            tj_to_tar(&r.g_prime, &IsSequence { model: Model::Tj, states })
        }
    }
}

/// Maps a valid TS/TJ/TAR sequence on `G′` back to an SP sequence of `g`.
/// TAR input goes through compression and peak folding first.
pub fn is_to_sp(g: &Graph, r: &ReductionOutput, seq: &IsSequence) -> Result<SpSequence> {
    let jumps = match seq.model {
        Model::Tar { .. } => tar_to_tj(&r.g_prime, seq)?,
        _ => {
            seq.validate(&r.g_prime)?;
            seq.clone()
        }
    };
    let states = jumps.states.iter().map(|s| set_to_path(r, s)).collect::<Result<Vec<_>>>()?;
    let out = SpSequence::from_states(states)?;
    SpSpace::new(g, r.layers.s, r.layers.t)?.validate_sequence(&out)?;
    Ok(out)
}
