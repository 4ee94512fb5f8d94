//! The Min-SPR instance `(G_φ, s, t, p_b, p_e, 2m(n+2))` built from a CNF formula.
//!
//! Every non-terminal vertex carries four coordinates: level, v-state, c-state and
//! depth. Gadget `G(i, vs)` holds `v(i, vs, cs, j)` for `cs ∈ {0, 1}` and
//! `1 ≤ j ≤ 2m`. Edges always join depth `d` to depth `d + 1`, so the undirected
//! graph's shortest `(s, t)`-paths are exactly the depth-increasing ones.
//! Levels never increase along a path; a path climbs from the begin gadget
//! (level 0) to the end gadget (level `n + 1`) only through reconfiguration.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{Outcome, SearchLimits};
use crate::sp::{SpSequence, SpSpace, SpState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
    Begin,
    End,
    Gadget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexAttrs {
    pub kind: VertexKind,
    pub level: usize,
    pub vs: u8,
    pub cs: u8,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct SatInstance {
    pub formula: CnfFormula,
    pub g: Graph,
    pub s: Vertex,
    pub t: Vertex,
    pub p_b: SpState,
    pub p_e: SpState,
    /// `2m(n + 2)`.
    pub budget: usize,
    pub attrs: Vec<VertexAttrs>,
    /// Formula edges, stored as `(shallower, deeper)`.
    pub formula_edges: BTreeSet<(Vertex, Vertex)>,
}

impl SatInstance {
    fn n(&self) -> usize {
        self.formula.num_vars()
    }

    fn m(&self) -> usize {
        self.formula.num_clauses()
    }

    /// Id of `v(i, vs, cs, j)`: mixed-radix over `(i - 1, vs, cs, j - 1)`.
    pub fn gadget_vertex(&self, i: usize, vs: u8, cs: u8, j: usize) -> Vertex {
        gadget_id(self.m(), i, vs, cs, j)
    }

    pub fn beg(&self, j: usize) -> Vertex {
        8 * self.n() * self.m() + j - 1
    }

    pub fn end(&self, j: usize) -> Vertex {
        8 * self.n() * self.m() + 2 * self.m() + j - 1
    }

    pub fn is_formula_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.formula_edges.contains(&(a, b)) || self.formula_edges.contains(&(b, a))
    }

    pub fn space(&self) -> SpSpace<'_> {
        SpSpace::new(&self.g, self.s, self.t).expect("s reaches t in G_phi")
    }
}

fn gadget_id(m: usize, i: usize, vs: u8, cs: u8, j: usize) -> Vertex {
    ((((i - 1) * 2 + vs as usize) * 2 + cs as usize) * 2 * m) + (j - 1)
}

pub fn gen_sat(phi: &CnfFormula) -> SatInstance {
    let n = phi.num_vars();
    let m = phi.num_clauses();
    let depth_max = 2 * m;
    let gadgets = 8 * n * m;
    let s = gadgets + 4 * m;
    let t = s + 1;
    let v = |i, vs, cs, j| gadget_id(m, i, vs, cs, j);
    let beg = |j: usize| gadgets + j - 1;
    let end = |j: usize| gadgets + 2 * m + j - 1;

    let mut g = Graph::undirected(t + 1);
    let mut attrs = vec![VertexAttrs { kind: VertexKind::Gadget, level: 0, vs: 0, cs: 0, depth: 0 }; t + 1];
    for i in 1..=n {
        for vs in 0..2u8 {
            for cs in 0..2u8 {
                for j in 1..=depth_max {
                    let id = v(i, vs, cs, j);
                    attrs[id] = VertexAttrs { kind: VertexKind::Gadget, level: i, vs, cs, depth: j };
                    g.set_label(id, format!("v({i},{vs},{cs},{j})"));
                }
            }
        }
    }
    for j in 1..=depth_max {
        attrs[beg(j)] = VertexAttrs { kind: VertexKind::Begin, level: 0, vs: 0, cs: 0, depth: j };
        attrs[end(j)] = VertexAttrs { kind: VertexKind::End, level: n + 1, vs: 0, cs: 1, depth: j };
        g.set_label(beg(j), format!("beg{j}"));
        g.set_label(end(j), format!("end{j}"));
    }
    attrs[s] = VertexAttrs { kind: VertexKind::Source, level: 0, vs: 0, cs: 0, depth: 0 };
    attrs[t] = VertexAttrs { kind: VertexKind::Sink, level: 0, vs: 0, cs: 0, depth: depth_max + 1 };
    g.set_label(s, "s");
    g.set_label(t, "t");

    let mut edges = Vec::new();
    let mut formula_edges = BTreeSet::new();
    for i in 1..=n {
        for vs in 0..2u8 {
            // Straight edges inside the gadget.
            for cs in 0..2u8 {
                for j in 1..depth_max {
                    edges.push((v(i, vs, cs, j), v(i, vs, cs, j + 1)));
                }
            }
            // Crossings between clause blocks: depth 2j to depth 2j + 1.
            for j in 1..m {
                edges.push((v(i, vs, 0, 2 * j), v(i, vs, 1, 2 * j + 1)));
                edges.push((v(i, vs, 1, 2 * j), v(i, vs, 0, 2 * j + 1)));
            }
            // Formula edges: x_i = vs satisfies C_j.
            for (jj, clause) in phi.clauses().iter().enumerate() {
                let j = jj + 1;
                if clause.iter().any(|l| l.var == i && l.satisfied_by(vs == 1)) {
                    let e = (v(i, vs, 1, 2 * j - 1), v(i, vs, 0, 2 * j));
                    edges.push(e);
                    formula_edges.insert(e);
                }
            }
        }
    }
    // G(i, vs) connected to G(i + 1, vs') for every vs, vs': the higher level sits
    // one depth above the lower one.
    for i in 1..n {
        for vs in 0..2u8 {
            for vs2 in 0..2u8 {
                for cs in 0..2u8 {
                    for d in 1..depth_max {
                        edges.push((v(i + 1, vs2, cs, d), v(i, vs, cs, d + 1)));
                    }
                    for j in 1..m {
                        edges.push((v(i + 1, vs2, cs, 2 * j), v(i, vs, 1 - cs, 2 * j + 1)));
                    }
                }
            }
        }
    }
    for j in 1..depth_max {
        edges.push((beg(j), beg(j + 1)));
        edges.push((end(j), end(j + 1)));
        for vs in 0..2u8 {
            edges.push((v(1, vs, 0, j), beg(j + 1)));
            edges.push((end(j), v(n, vs, 1, j + 1)));
        }
    }
    for u in 0..s {
        if attrs[u].depth == 1 {
            edges.push((s, u));
        }
        if attrs[u].depth == depth_max {
            edges.push((u, t));
        }
    }
    for (a, b) in edges {
        g.add_edge(a, b).expect("G_phi edges are distinct");
    }

    let mut p_b = vec![s];
    p_b.extend((1..=depth_max).map(beg));
    p_b.push(t);
    let mut p_e = vec![s];
    p_e.extend((1..=depth_max).map(end));
    p_e.push(t);

    SatInstance {
        formula: phi.clone(),
        g,
        s,
        t,
        p_b: SpState(p_b),
        p_e: SpState(p_e),
        budget: 2 * m * (n + 2),
        attrs,
        formula_edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactKind {
    /// Edge does not join consecutive depths.
    Depth,
    /// `l(b) ≤ l(a) ≤ l(b) + 1`.
    LevelStep,
    /// Intra-level odd edge with `cs(a) = 0` needs `cs(b) = 0`.
    IntraOddCState,
    /// Inter-level odd edge keeps the c-state.
    InterOddCState,
    /// Non-formula odd edge keeps the c-state.
    NonFormulaOddCState,
    /// Intra-level edge keeps the v-state.
    IntraVState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactViolation {
    pub fact: FactKind,
    pub edge: (Vertex, Vertex),
}

/// Checks the five structural facts on every edge not touching `s` or `t`.
/// Edges are oriented from the shallower to the deeper endpoint.
pub fn validate_facts(inst: &SatInstance) -> Vec<FactViolation> {
    let mut out = Vec::new();
    for (u, w) in inst.g.edges() {
        let (au, aw) = (inst.attrs[u], inst.attrs[w]);
        let (a, b, la, lb) = if au.depth <= aw.depth { (u, w, au, aw) } else { (w, u, aw, au) };
        let mut flag = |fact| out.push(FactViolation { fact, edge: (a, b) });
        if lb.depth != la.depth + 1 {
            flag(FactKind::Depth);
        }
        if [a, b].iter().any(|&x| x == inst.s || x == inst.t) {
            continue;
        }
        if !(lb.level <= la.level && la.level <= lb.level + 1) {
            flag(FactKind::LevelStep);
        }
        let odd = la.depth % 2 == 1;
        let intra = la.level == lb.level;
        if intra && odd && la.cs == 0 && lb.cs != 0 {
            flag(FactKind::IntraOddCState);
        }
        if !intra && odd && la.cs != lb.cs {
            flag(FactKind::InterOddCState);
        }
        if odd && !inst.is_formula_edge(a, b) && la.cs != lb.cs {
            flag(FactKind::NonFormulaOddCState);
        }
        if intra && la.vs != lb.vs {
            flag(FactKind::IntraVState);
        }
    }
    out
}

/// `Φ(p) = Σ l(v) + cs(v)` over the interior vertices of `p`.
pub fn phi(inst: &SatInstance, p: &SpState) -> usize {
    let v = p.vertices();
    v[1..v.len() - 1].iter().map(|&x| inst.attrs[x].level + inst.attrs[x].cs as usize).sum()
}

/// The constructive sequence `p_b -> p_e` of length `2m(n + 2)` for a satisfying
/// assignment (`theta[i - 1]` is the value of `x_i`).
pub fn sat_witness(phi_: &CnfFormula, theta: &[bool]) -> Result<SpSequence> {
    let n = phi_.num_vars();
    let m = phi_.num_clauses();
    if theta.len() != n {
        return Err(Error::InvalidArgument(format!("assignment has {} values, formula has {n} variables", theta.len())));
    }
    if let Some(j) = phi_.first_unsatisfied(theta) {
        return Err(Error::Unsatisfied { clause: j + 1 });
    }
    let inst = gen_sat(phi_);

    // sat[i][j]: clause j satisfied by theta_1..theta_i (prefix satisfaction).
    let mut sat = vec![vec![false; m]; n + 1];
    for i in 1..=n {
        for j in 0..m {
            sat[i][j] = sat[i - 1][j]
                || phi_.clauses()[j].iter().any(|l| l.var == i && l.satisfied_by(theta[i - 1]));
        }
    }
    // p(i, k): level-i gadget of theta_i, clause block j in c-state sat(k, j).
    let path = |i: usize, k: usize| -> Vec<Vertex> {
        let vs = theta[i - 1] as u8;
        let mut p = vec![inst.s];
        for d in 1..=2 * m {
            let cs = sat[k][(d - 1) / 2] as u8;
            p.push(inst.gadget_vertex(i, vs, cs, d));
        }
        p.push(inst.t);
        p
    };

    let mut waypoints = vec![path(1, 0)];
    for i in 1..=n {
        if i > 1 {
            waypoints.push(path(i, i - 1));
        }
        waypoints.push(path(i, i));
    }
    waypoints.push(inst.p_e.0.clone());

    let mut cur = inst.p_b.0.clone();
    let mut moves = Vec::new();
    for target in waypoints {
        for d in 1..=2 * m {
            if cur[d] != target[d] {
                moves.push(crate::sp::SpMove { position: d, old: cur[d], new: target[d] });
                cur[d] = target[d];
            }
        }
    }
    SpSequence::from_moves(inst.p_b.clone(), moves)
}

/// Reads the assignment off a sequence of length `2m(n + 2)`: the v-state of the
/// level-`i` vertices it visits. `None` if some level is never visited or is
/// visited with both v-states.
pub fn extract_assignment(inst: &SatInstance, seq: &SpSequence) -> Option<Vec<bool>> {
    let mut theta: Vec<Option<u8>> = vec![None; inst.n()];
    for st in &seq.states {
        for &v in st.vertices() {
            let a = inst.attrs[v];
            if a.kind == VertexKind::Gadget {
                match theta[a.level - 1] {
                    None => theta[a.level - 1] = Some(a.vs),
                    Some(x) if x != a.vs => return None,
                    _ => {}
                }
            }
        }
    }
    theta.into_iter().map(|x| x.map(|b| b == 1)).collect()
}

/// Default cap on visited states for [`minspr_decide`].
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

/// Decides Min-SPR on `gen_sat(φ)` by BFS truncated at the budget `2m(n + 2)`.
pub fn minspr_decide(phi_: &CnfFormula) -> Result<bool> {
    minspr_decide_with(phi_, Some(DEFAULT_MAX_STATES))
}

pub fn minspr_decide_with(phi_: &CnfFormula, max_states: Option<usize>) -> Result<bool> {
    let inst = gen_sat(phi_);
    let limits = SearchLimits { max_len: Some(inst.budget), max_states };
    Ok(matches!(inst.space().bfs(&inst.p_b, &inst.p_e, limits)?, Outcome::Found(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, cl: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_ints(n, cl).unwrap()
    }

    #[test]
    fn single_clause_counts() {
        let inst = gen_sat(&f(1, &[&[1]]));
        assert_eq!(inst.g.n(), 14);
        assert_eq!(inst.budget, 6);
        assert_eq!(phi(&inst, &inst.p_b), 0);
        assert_eq!(phi(&inst, &inst.p_e), 6);
        let sp = inst.space();
        sp.check(&inst.p_b).unwrap();
        sp.check(&inst.p_e).unwrap();
        assert_eq!(sp.layers().k, 3);
        assert_eq!(inst.formula_edges.len(), 1);
    }

    #[test]
    fn facts_hold_and_detect_a_level_jump() {
        let mut inst = gen_sat(&f(1, &[&[1]]));
        assert!(validate_facts(&inst).is_empty());
        let (b1, e2) = (inst.beg(1), inst.end(2));
        inst.g.add_edge(b1, e2).unwrap();
        let v = validate_facts(&inst);
        assert!(v.iter().any(|x| x.fact == FactKind::LevelStep && x.edge == (b1, e2)), "{v:?}");
    }

    #[test]
    fn witness_for_x1() {
        let phi_ = f(1, &[&[1]]);
        let seq = sat_witness(&phi_, &[true]).unwrap();
        let inst = gen_sat(&phi_);
        assert_eq!(seq.len(), 6);
        inst.space().validate_sequence(&seq).unwrap();
        assert_eq!(seq.last(), &inst.p_e);
    }

    #[test]
    fn witness_two_clauses() {
        let phi_ = f(2, &[&[1, 2], &[-1, 2]]);
        let inst = gen_sat(&phi_);
        let seq = sat_witness(&phi_, &[false, true]).unwrap();
        assert_eq!(seq.len(), 16);
        inst.space().validate_sequence(&seq).unwrap();
        for w in seq.states.windows(2) {
            assert_eq!(phi(&inst, &w[1]), phi(&inst, &w[0]) + 1);
        }
        assert_eq!(extract_assignment(&inst, &seq), Some(vec![false, true]));
    }

    #[test]
    fn witness_rejects_falsifying_assignment() {
        let phi_ = f(2, &[&[1, 2], &[-1, 2]]);
        assert_eq!(sat_witness(&phi_, &[true, false]).unwrap_err(), Error::Unsatisfied { clause: 2 });
        assert!(matches!(sat_witness(&phi_, &[true]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn decide_tiny() {
        assert!(minspr_decide(&f(1, &[&[1]])).unwrap());
        assert!(!minspr_decide(&f(1, &[&[1], &[-1]])).unwrap());
    }
}
