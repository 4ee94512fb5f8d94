//! The family `G^k` whose shortest-path reconfiguration graph has diameter
//! `Θ(2^k)`, together with the recursive `11(2^k - 1)`-move witness.
//!
//! Level `ℓ` (1 ≤ ℓ ≤ k) contributes `x[ℓ][1..=7]` and `y[ℓ][1..=6]`. Along any
//! shortest path the order is `s, x[k], y[k], x[k-1], …, x[1], y[1], t`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sp::{SpMove, SpSequence, SpState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    X,
    Y,
}

#[derive(Clone, Debug)]
pub struct ExpInstance {
    pub g: Graph,
    pub k: usize,
    pub s: Vertex,
    pub t: Vertex,
    pub p_b: SpState,
    pub p_e: SpState,
    pub name_of: BTreeMap<(Role, usize, usize), Vertex>,
}

const S: Vertex = 0;
const T: Vertex = 1;

/// Vertex id of `x[level][index]` / `y[level][index]` (both 1-based).
pub fn exp_vertex(role: Role, level: usize, index: usize) -> Vertex {
    let base = 2 + 13 * (level - 1);
    match role {
        Role::X => base + index - 1,
        Role::Y => base + 7 + index - 1,
    }
}

fn x(level: usize, i: usize) -> Vertex {
    exp_vertex(Role::X, level, i)
}

fn y(level: usize, i: usize) -> Vertex {
    exp_vertex(Role::Y, level, i)
}

pub fn gen_exp(k: usize) -> Result<ExpInstance> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = 13 * k + 2;
    let mut g = Graph::undirected(n);
    let mut name_of = BTreeMap::new();
    g.set_label(S, "s");
    g.set_label(T, "t");
    for level in 1..=k {
        for i in 1..=7 {
            g.set_label(x(level, i), format!("x[{level}][{i}]"));
            name_of.insert((Role::X, level, i), x(level, i));
        }
        for i in 1..=6 {
            g.set_label(y(level, i), format!("y[{level}][{i}]"));
            name_of.insert((Role::Y, level, i), y(level, i));
        }
    }

    let mut edges = Vec::new();
    for level in 1..=k {
        for i in 1..=6 {
            edges.push((x(level, i), y(level, i)));
            edges.push((x(level, i + 1), y(level, i)));
        }
        if level == 1 {
            edges.extend((1..=6).map(|i| (y(1, i), T)));
        } else {
            for i in [1, 3, 5] {
                edges.extend((1..=7).map(|j| (y(level, i), x(level - 1, j))));
            }
            edges.push((y(level, 2), x(level - 1, 1)));
            edges.push((y(level, 4), x(level - 1, 7)));
            edges.push((y(level, 6), x(level - 1, 1)));
        }
    }
    edges.extend((1..=7).map(|i| (S, x(k, i))));
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }

    let mut p_b = vec![S];
    let mut p_e = vec![S, x(k, 7), y(k, 6)];
    for level in (1..=k).rev() {
        p_b.extend([x(level, 1), y(level, 1)]);
        if level < k {
            p_e.extend([x(level, 1), y(level, 1)]);
        }
    }
    p_b.push(T);
    p_e.push(T);

    Ok(ExpInstance { g, k, s: S, t: T, p_b: SpState(p_b), p_e: SpState(p_e), name_of })
}

/// The recursive witness `p_b -> p_e` in `G^k`, of length exactly `11(2^k - 1)`.
pub fn exp_witness(k: usize) -> Result<SpSequence> {
    let inst = gen_exp(k)?;
    SpSequence::from_moves(inst.p_b, witness_moves(k, k))
}

/// Moves reconfiguring levels `level..=1` from index-1 to the `p_e` shape, inside
/// `G^k`. Level `ℓ`'s x sits at path position `2(k - ℓ) + 1`, its y right after.
fn witness_moves(k: usize, level: usize) -> Vec<SpMove> {
    if level == 0 {
        return Vec::new();
    }
    let xpos = 2 * (k - level) + 1;
    let ypos = xpos + 1;
    let step = |role: Role, i: usize| -> SpMove {
        match role {
            Role::X => SpMove { position: xpos, old: x(level, i - 1), new: x(level, i) },
            Role::Y => SpMove { position: ypos, old: y(level, i - 1), new: y(level, i) },
        }
    };
    let inner = witness_moves(k, level - 1);
    let mut moves = vec![step(Role::X, 2), step(Role::Y, 2), step(Role::X, 3), step(Role::Y, 3)];
    moves.extend(inner.iter().copied());
    moves.extend([step(Role::X, 4), step(Role::Y, 4), step(Role::X, 5), step(Role::Y, 5)]);
    moves.extend(inner.iter().rev().map(|m| m.reversed()));
    moves.extend([step(Role::X, 6), step(Role::Y, 6), step(Role::X, 7)]);
    moves
}
