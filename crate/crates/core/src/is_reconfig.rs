//! Independent-set reconfiguration under token sliding (TS), token jumping (TJ)
//! and token addition/removal (TAR), plus the TJ <-> TAR conversions.
//!
//! Adjacency is read in the underlying undirected graph.

use std::fmt;

use indexmap::map::Entry;
use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{Outcome, SearchLimits};

/// A set of tokens, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenSet(Vec<Vertex>);

impl TokenSet {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        TokenSet(vertices)
    }

    pub fn empty() -> Self {
        TokenSet(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn with(&self, v: Vertex) -> TokenSet {
        let mut s = self.clone();
        if let Err(pos) = s.0.binary_search(&v) {
            s.0.insert(pos, v);
        }
        s
    }

    pub fn without(&self, v: Vertex) -> TokenSet {
        let mut s = self.clone();
        if let Ok(pos) = s.0.binary_search(&v) {
            s.0.remove(pos);
        }
        s
    }

    /// Elements of `self` not in `other`.
    pub fn minus(&self, other: &TokenSet) -> Vec<Vertex> {
        self.0.iter().copied().filter(|&v| !other.contains(v)).collect()
    }

    pub fn symmetric_difference(&self, other: &TokenSet) -> Vec<Vertex> {
        let mut d = self.minus(other);
        d.extend(other.minus(self));
        d.sort_unstable();
        d
    }

    pub fn is_independent(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.n())
            && self.0.iter().enumerate().all(|(i, &u)| self.0[i + 1..].iter().all(|&w| !g.adjacent(u, w)))
    }

    /// Whether `v` could join the set without breaking independence (ignoring `skip`).
    fn free_for(&self, g: &Graph, v: Vertex, skip: Option<Vertex>) -> bool {
        !self.contains(v) && self.0.iter().all(|&u| Some(u) == skip || !g.adjacent(u, v))
    }
}

impl From<Vec<Vertex>> for TokenSet {
    fn from(v: Vec<Vertex>) -> Self {
        TokenSet::new(v)
    }
}

impl fmt::Display for TokenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Ts,
    Tj,
    /// Token addition/removal; sizes may never drop below `k - 1`.
    Tar { k: usize },
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Ts => "ts",
            Model::Tj => "tj",
            Model::Tar { .. } => "tar",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reconfiguration sequence of token sets under one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsSequence {
    pub model: Model,
    pub states: Vec<TokenSet>,
}

impl IsSequence {
    pub fn len(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> &TokenSet {
        &self.states[0]
    }

    pub fn last(&self) -> &TokenSet {
        self.states.last().expect("non-empty sequence")
    }

    /// Checks every state is independent and each step is a legal move of the model.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.states.is_empty() {
            return Err(Error::InvalidSequence { step: 0, msg: "empty sequence".into() });
        }
        for (i, st) in self.states.iter().enumerate() {
            if !st.is_independent(g) {
                return Err(Error::InvalidSequence { step: i, msg: format!("{{{st}}} is not independent") });
            }
            if let Model::Tar { k } = self.model {
                if st.len() + 1 < k {
                    return Err(Error::InvalidSequence {
                        step: i,
                        msg: format!("size {} below the floor {}", st.len(), k.saturating_sub(1)),
                    });
                }
            }
        }
        for (i, w) in self.states.windows(2).enumerate() {
            if !is_move(g, self.model, &w[0], &w[1]) {
                return Err(Error::InvalidSequence {
                    step: i + 1,
                    msg: format!("{{{}}} -> {{{}}} is not a {} move", w[0], w[1], self.model),
                });
            }
        }
        Ok(())
    }
}

/// Whether `b` is one move away from `a` under `model` (independence not checked).
pub fn is_move(g: &Graph, model: Model, a: &TokenSet, b: &TokenSet) -> bool {
    let gone = a.minus(b);
    let came = b.minus(a);
    match model {
        Model::Tar { .. } => gone.len() + came.len() == 1,
        Model::Tj => gone.len() == 1 && came.len() == 1,
        Model::Ts => gone.len() == 1 && came.len() == 1 && g.adjacent(gone[0], came[0]),
    }
}

/// All token sets one move away from `a`, sorted.
pub fn is_neighbors(g: &Graph, a: &TokenSet, model: Model) -> Vec<TokenSet> {
    let mut out = Vec::new();
    for_each_neighbor(g, a, model, |b| out.push(b));
    out.sort();
    out
}

fn for_each_neighbor(g: &Graph, a: &TokenSet, model: Model, mut f: impl FnMut(TokenSet)) {
    match model {
        Model::Ts => {
            for &u in a.vertices() {
                let mut targets: Vec<Vertex> = g.neighbors(u).to_vec();
                if g.is_directed() {
                    targets.extend_from_slice(g.in_neighbors(u));
                    targets.sort_unstable();
                    targets.dedup();
                }
                for w in targets {
                    if a.free_for(g, w, Some(u)) {
                        f(a.without(u).with(w));
                    }
                }
            }
        }
        Model::Tj => {
            for &u in a.vertices() {
                for w in g.vertices() {
                    if a.free_for(g, w, Some(u)) {
                        f(a.without(u).with(w));
                    }
                }
            }
        }
        Model::Tar { k } => {
            if a.len() >= k {
                for &u in a.vertices() {
                    f(a.without(u));
                }
            }
            for w in g.vertices() {
                if a.free_for(g, w, None) {
                    f(a.with(w));
                }
            }
        }
    }
}

/// Shortest reconfiguration sequence under `model`, by BFS.
pub fn is_bfs(
    g: &Graph,
    from: &TokenSet,
    to: &TokenSet,
    model: Model,
    limits: SearchLimits,
) -> Result<Outcome<IsSequence>> {
    for (name, set) in [("source", from), ("target", to)] {
        if !set.is_independent(g) {
            return Err(Error::InvalidState(format!("{name} {{{set}}} is not an independent set")));
        }
        if let Model::Tar { k } = model {
            if set.len() < k {
                return Err(Error::InvalidState(format!("{name} has size {} < k = {k}", set.len())));
            }
        }
    }
    if from == to {
        return Ok(Outcome::Found(IsSequence { model, states: vec![from.clone()] }));
    }
    if !matches!(model, Model::Tar { .. }) && from.len() != to.len() {
        return Ok(Outcome::NotReconfigurable);
    }

    let mut seen: IndexMap<TokenSet, usize> = IndexMap::new();
    seen.insert(from.clone(), usize::MAX);
    let mut cursor = 0;
    let mut depth = 0;
    let mut depth_end = 1;
    let mut truncated = false;
    while cursor < seen.len() {
        if cursor == depth_end {
            depth += 1;
            depth_end = seen.len();
        }
        let at_limit = limits.max_len.is_some_and(|l| depth >= l);
        let state = seen.get_index(cursor).unwrap().0.clone();
        let mut found = None;
        for_each_neighbor(g, &state, model, |b| {
            if found.is_some() {
                return;
            }
            if at_limit {
                truncated |= !seen.contains_key(&b);
                return;
            }
            if let Entry::Vacant(e) = seen.entry(b) {
                let hit = e.key() == to;
                e.insert(cursor);
                if hit {
                    found = Some(seen.len() - 1);
                }
            }
        });
        if let Some(mut idx) = found {
            let mut states = Vec::new();
            while idx != usize::MAX {
                let (st, &parent) = seen.get_index(idx).unwrap();
                states.push(st.clone());
                idx = parent;
            }
            states.reverse();
            return Ok(Outcome::Found(IsSequence { model, states }));
        }
        if let Some(cap) = limits.max_states {
            if seen.len() > cap {
                return Err(Error::ResourceLimit(format!("more than {cap} token sets visited")));
            }
        }
        cursor += 1;
    }
    Ok(if truncated { Outcome::BudgetExceeded } else { Outcome::NotReconfigurable })
}

/// Replaces every jump `a -> b` by the removal of `a` followed by the addition of `b`.
pub fn tj_to_tar(g: &Graph, seq: &IsSequence) -> Result<IsSequence> {
    if seq.model != Model::Tj {
        return Err(Error::InvalidArgument(format!("expected a tj sequence, got {}", seq.model)));
    }
    seq.validate(g)?;
    let k = seq.first().len();
    let mut states = vec![seq.first().clone()];
    for w in seq.states.windows(2) {
        let gone = w[0].minus(&w[1])[0];
        states.push(w[0].without(gone));
        states.push(w[1].clone());
    }
    Ok(IsSequence { model: Model::Tar { k }, states })
}

/// Removes every detour `A_i = A_{i+2}` (stack-based, single pass).
pub fn compress(states: &[TokenSet]) -> Vec<TokenSet> {
    let mut out: Vec<TokenSet> = Vec::with_capacity(states.len());
    for st in states {
        if out.len() >= 2 && out[out.len() - 2] == *st {
            out.pop();
        } else {
            out.push(st.clone());
        }
    }
    out
}

/// Result of flattening a TAR path into sizes `k, k-1, k, …, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folded {
    pub states: Vec<TokenSet>,
    /// `Σ|A_i|` after the initial compression, then after each fold (with its recompression).
    pub measures: Vec<usize>,
}

/// Leftmost peak: `|A_p| = |A_{p-1}| + 1 = |A_{p+1}| + 1 ≥ k + 1`.
fn leftmost_peak(states: &[TokenSet], k: usize) -> Option<usize> {
    (1..states.len().saturating_sub(1)).find(|&p| {
        let (a, b, c) = (states[p - 1].len(), states[p].len(), states[p + 1].len());
        b == a + 1 && b == c + 1 && b > k
    })
}

/// Alternates compression and leftmost peak folding until neither applies.
pub fn fold_tar_path(states: &[TokenSet], k: usize) -> Folded {
    let measure = |s: &[TokenSet]| s.iter().map(TokenSet::len).sum::<usize>();
    let mut cur = compress(states);
    let mut measures = vec![measure(&cur)];
    while let Some(p) = leftmost_peak(&cur, k) {
        let added = cur[p].minus(&cur[p - 1])[0];
        let removed = cur[p].minus(&cur[p + 1])[0];
        cur[p] = cur[p].without(added).without(removed);
        cur = compress(&cur);
        measures.push(measure(&cur));
    }
    Folded { states: cur, measures }
}

/// Converts a TAR path between two size-`k` sets into a TJ sequence between
/// the same sets.
pub fn tar_to_tj(g: &Graph, path: &IsSequence) -> Result<IsSequence> {
    let Model::Tar { k } = path.model else {
        return Err(Error::InvalidArgument(format!("expected a tar sequence, got {}", path.model)));
    };
    for (name, set) in [("first", path.first()), ("last", path.last())] {
        if set.len() != k {
            return Err(Error::InvalidArgument(format!("{name} set has size {}, expected k = {k}", set.len())));
        }
    }
    path.validate(g)?;
    let folded = fold_tar_path(&path.states, k);
    let sizes_ok = folded
        .states
        .iter()
        .enumerate()
        .all(|(i, s)| Some(s.len()) == if i % 2 == 0 { Some(k) } else { k.checked_sub(1) });
    if !sizes_ok || folded.states.len().is_multiple_of(2) {
        return Err(Error::InvalidSequence { step: 0, msg: "folding did not reach the k/k-1 profile".into() });
    }
    let states = folded.states.into_iter().step_by(2).collect();
    Ok(IsSequence { model: Model::Tj, states })
}
