//! Reconfiguration of shortest paths and independent sets.
//!
//! * [`graph`]: graphs, file format, BFS layering, DOT export
//! * [`sp`]: shortest-path reconfiguration and exact search
//! * [`gadget_exp`]: the exponential-diameter family `G^k`
//! * [`gadget_sat`]: the CNF to Min-SPR reduction
//! * [`is_reconfig`]: TS / TJ / TAR models and TJ <-> TAR conversion
//! * [`solvers`]: Piran-graph TJ solver and cograph TS solver
//! * [`reduce`]: shortest paths to independent sets of `G′`
//! * [`explicit`]: explicit reconfiguration graphs used as oracles

pub mod cnf;
pub mod error;
pub mod explicit;
pub mod gadget_exp;
pub mod gadget_sat;
pub mod graph;
pub mod is_reconfig;
pub mod random;
pub mod reduce;
pub mod search;
pub mod seqfile;
pub mod solvers;
pub mod sp;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use is_reconfig::{IsSequence, Model, TokenSet};
pub use search::{Outcome, SearchLimits};
pub use sp::{SpMove, SpSequence, SpSpace, SpState};
