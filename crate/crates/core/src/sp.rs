//! Shortest-path reconfiguration: two shortest `(s, t)`-paths are adjacent when
//! they differ, as vertex sequences, in exactly one position.

use indexmap::map::Entry;
use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph::{layer_decompose, Graph, LayerDecomposition, Vertex};
use crate::search::{Outcome, SearchLimits};

/// A shortest `(s, t)`-path as its vertex sequence `v_0 = s, …, v_k = t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpState(pub Vec<Vertex>);

impl SpState {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Vertex>> for SpState {
    fn from(v: Vec<Vertex>) -> Self {
        SpState(v)
    }
}

/// A single switch: the vertex at `position` changes from `old` to `new`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpMove {
    pub position: usize,
    pub old: Vertex,
    pub new: Vertex,
}

impl SpMove {
    pub fn reversed(self) -> SpMove {
        SpMove { position: self.position, old: self.new, new: self.old }
    }
}

/// A reconfiguration sequence of shortest paths with per-step annotations.
/// `moves.len() == states.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpSequence {
    pub states: Vec<SpState>,
    pub moves: Vec<SpMove>,
}

impl SpSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays `moves` from `start`, checking that each move's `old` vertex matches.
    pub fn from_moves(start: SpState, moves: Vec<SpMove>) -> Result<SpSequence> {
        let mut states = Vec::with_capacity(moves.len() + 1);
        let mut cur = start;
        for (step, m) in moves.iter().enumerate() {
            if cur.0.get(m.position) != Some(&m.old) {
                return Err(Error::InvalidSequence {
                    step: step + 1,
                    msg: format!("position {} does not hold vertex {}", m.position, m.old),
                });
            }
            let mut next = cur.clone();
            next.0[m.position] = m.new;
            states.push(std::mem::replace(&mut cur, next));
        }
        states.push(cur);
        Ok(SpSequence { states, moves })
    }

    /// Rebuilds the move annotations from a list of states that pairwise differ
    /// in exactly one position.
    pub fn from_states(states: Vec<SpState>) -> Result<SpSequence> {
        if states.is_empty() {
            return Err(Error::InvalidSequence { step: 0, msg: "empty sequence".into() });
        }
        let mut moves = Vec::with_capacity(states.len() - 1);
        for (step, w) in states.windows(2).enumerate() {
            moves.push(single_difference(&w[0], &w[1]).ok_or_else(|| Error::InvalidSequence {
                step: step + 1,
                msg: "consecutive paths must differ in exactly one position".into(),
            })?);
        }
        Ok(SpSequence { states, moves })
    }

    pub fn first(&self) -> &SpState {
        &self.states[0]
    }

    pub fn last(&self) -> &SpState {
        self.states.last().expect("non-empty sequence")
    }
}

/// The unique differing position of two equal-length paths, if there is exactly one.
pub fn single_difference(p: &SpState, q: &SpState) -> Option<SpMove> {
    if p.len() != q.len() {
        return None;
    }
    let mut diff = p.0.iter().zip(&q.0).enumerate().filter(|(_, (a, b))| a != b);
    let (position, (&old, &new)) = diff.next()?;
    diff.next().is_none().then_some(SpMove { position, old, new })
}

/// The shortest-path reconfiguration space of `(g, s, t)`: validation, neighbour
/// generation and exact search over the implicit state graph.
#[derive(Clone, Debug)]
pub struct SpSpace<'g> {
    g: &'g Graph,
    layers: LayerDecomposition,
}

impl<'g> SpSpace<'g> {
    pub fn new(g: &'g Graph, s: Vertex, t: Vertex) -> Result<Self> {
        Ok(SpSpace { g, layers: layer_decompose(g, s, t)? })
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn layers(&self) -> &LayerDecomposition {
        &self.layers
    }

    /// `Ok(())` if `p` is a shortest `(s, t)`-path, otherwise a diagnostic.
    pub fn check(&self, p: &SpState) -> std::result::Result<(), String> {
        let v = p.vertices();
        let k = self.layers.k;
        if v.len() != k + 1 {
            return Err(format!("path has {} vertices, shortest paths have {}", v.len(), k + 1));
        }
        if v[0] != self.layers.s || v[k] != self.layers.t {
            return Err(format!("path must run from {} to {}", self.layers.s, self.layers.t));
        }
        if let Some(&bad) = v.iter().find(|&&x| x >= self.g.n()) {
            return Err(format!("vertex {bad} out of range"));
        }
        for w in v.windows(2) {
            if !self.g.has_edge(w[0], w[1]) {
                return Err(format!("no edge {} -> {}", w[0], w[1]));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, p: &SpState) -> bool {
        self.check(p).is_ok()
    }

    /// All valid paths at Hamming distance one from `p`, ordered by
    /// `(position, replacement id)`.
    pub fn neighbors(&self, p: &SpState) -> Vec<SpState> {
        let mut out = Vec::new();
        self.for_each_move(p, |m| {
            let mut q = p.clone();
            q.0[m.position] = m.new;
            out.push(q);
        });
        out
    }

    /// Calls `f` for each single-vertex switch available from `p`, in
    /// `(position, replacement id)` order. The replacement at position `i` is a
    /// vertex of `D_i` joined to both flanking path vertices.
    fn for_each_move(&self, p: &SpState, mut f: impl FnMut(SpMove)) {
        let v = p.vertices();
        for i in 1..v.len().saturating_sub(1) {
            let (prev, cur, next) = (v[i - 1], v[i], v[i + 1]);
            for &c in self.g.neighbors(prev) {
                if c != cur && self.layers.layer_of(c) == Some(i) && self.g.has_edge(c, next) {
                    f(SpMove { position: i, old: cur, new: c });
                }
            }
        }
    }

    /// Shortest reconfiguration sequence from `from` to `to` by BFS over the
    /// implicit reconfiguration graph.
    pub fn bfs(&self, from: &SpState, to: &SpState, limits: SearchLimits) -> Result<Outcome<SpSequence>> {
        for (name, p) in [("source", from), ("target", to)] {
            self.check(p).map_err(|e| Error::InvalidState(format!("{name}: {e}")))?;
        }
        if from == to {
            return Ok(Outcome::Found(SpSequence { states: vec![from.clone()], moves: vec![] }));
        }

        // state -> (parent index, move that produced it)
        let mut seen: IndexMap<SpState, (usize, Option<SpMove>)> = IndexMap::new();
        seen.insert(from.clone(), (usize::MAX, None));
        let mut depth_end = 1; // exclusive end of the current BFS layer in `seen`
        let mut depth = 0;
        let mut cursor = 0;
        let mut truncated = false;

        while cursor < seen.len() {
            if cursor == depth_end {
                depth += 1;
                depth_end = seen.len();
            }
            let at_limit = limits.max_len.is_some_and(|l| depth >= l);
            let state = seen.get_index(cursor).unwrap().0.clone();
            let mut found = None;
            let mut overflow = false;
            self.for_each_move(&state, |m| {
                if found.is_some() || overflow {
                    return;
                }
                let mut q = state.clone();
                q.0[m.position] = m.new;
                if at_limit {
                    if !seen.contains_key(&q) {
                        truncated = true;
                    }
                    return;
                }
                if let Entry::Vacant(e) = seen.entry(q) {
                    let is_target = e.key() == to;
                    e.insert((cursor, Some(m)));
                    if is_target {
                        found = Some(seen.len() - 1);
                    }
                }
                if limits.max_states.is_some_and(|cap| seen.len() > cap) {
                    overflow = true;
                }
            });
            if let Some(idx) = found {
                return Ok(Outcome::Found(trace_back(&seen, idx)));
            }
            if overflow {
                return Err(Error::ResourceLimit(format!(
                    "more than {} states visited",
                    limits.max_states.unwrap()
                )));
            }
            cursor += 1;
        }
        Ok(if truncated { Outcome::BudgetExceeded } else { Outcome::NotReconfigurable })
    }

    /// All shortest `(s, t)`-paths by DFS over the layered DAG, in lexicographic order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<SpState>> {
        let k = self.layers.k;
        let mut out = Vec::new();
        let mut path = vec![self.layers.s];
        let mut stack: Vec<usize> = vec![0];
        // Iterative DFS: stack[d] is the next neighbour index to try from path[d].
        while let Some(&idx) = stack.last() {
            let d = path.len() - 1;
            if d == k {
                out.push(SpState(path.clone()));
                if out.len() > cap {
                    return Err(Error::ResourceLimit(format!("more than {cap} shortest paths")));
                }
                stack.pop();
                path.pop();
                continue;
            }
            let nbrs = self.g.neighbors(path[d]);
            match nbrs[idx..].iter().position(|&w| self.layers.layer_of(w) == Some(d + 1)) {
                Some(off) => {
                    *stack.last_mut().unwrap() = idx + off + 1;
                    path.push(nbrs[idx + off]);
                    stack.push(0);
                }
                None => {
                    stack.pop();
                    path.pop();
                }
            }
        }
        Ok(out)
    }

    /// Validates a whole sequence: every state is a shortest path and consecutive
    /// states differ in exactly one position, matching the recorded moves.
    pub fn validate_sequence(&self, seq: &SpSequence) -> Result<()> {
        if seq.states.len() != seq.moves.len() + 1 {
            return Err(Error::InvalidSequence { step: 0, msg: "moves/states length mismatch".into() });
        }
        for (i, st) in seq.states.iter().enumerate() {
            self.check(st).map_err(|msg| Error::InvalidSequence { step: i, msg })?;
        }
        for (i, w) in seq.states.windows(2).enumerate() {
            match single_difference(&w[0], &w[1]) {
                Some(m) if m == seq.moves[i] => {}
                Some(_) => {
                    return Err(Error::InvalidSequence { step: i + 1, msg: "move annotation mismatch".into() })
                }
                None => {
                    return Err(Error::InvalidSequence {
                        step: i + 1,
                        msg: "consecutive paths must differ in exactly one position".into(),
                    })
                }
            }
        }
        Ok(())
    }
}

fn trace_back(seen: &IndexMap<SpState, (usize, Option<SpMove>)>, mut idx: usize) -> SpSequence {
    let mut states = Vec::new();
    let mut moves = Vec::new();
    loop {
        let (state, &(parent, mv)) = seen.get_index(idx).unwrap();
        states.push(state.clone());
        match mv {
            Some(m) => moves.push(m),
            None => break,
        }
        idx = parent;
    }
    states.reverse();
    moves.reverse();
    SpSequence { states, moves }
}

pub fn sp_is_valid(g: &Graph, s: Vertex, t: Vertex, p: &SpState) -> bool {
    SpSpace::new(g, s, t).is_ok_and(|sp| sp.is_valid(p))
}

pub fn sp_neighbors(g: &Graph, s: Vertex, t: Vertex, p: &SpState) -> Result<Vec<SpState>> {
    Ok(SpSpace::new(g, s, t)?.neighbors(p))
}

pub fn sp_bfs(
    g: &Graph,
    from: &SpState,
    to: &SpState,
    limits: SearchLimits,
) -> Result<Outcome<SpSequence>> {
    let (s, t) = endpoints(from)?;
    SpSpace::new(g, s, t)?.bfs(from, to, limits)
}

pub fn sp_enumerate(g: &Graph, s: Vertex, t: Vertex, cap: usize) -> Result<Vec<SpState>> {
    SpSpace::new(g, s, t)?.enumerate(cap)
}

/// `(s, t)` read off the ends of a path.
pub fn endpoints(p: &SpState) -> Result<(Vertex, Vertex)> {
    match (p.0.first(), p.0.last()) {
        (Some(&s), Some(&t)) => Ok((s, t)),
        _ => Err(Error::InvalidState("empty path".into())),
    }
}
