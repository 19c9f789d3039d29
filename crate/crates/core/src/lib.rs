//! Exact solvers for Dominating Set with Quotas (DSQ) and Set Cover with
//! Quotas (SCQ).
//!
//! A DSQ instance asks for a vertex set `S` of size at most `k` such that
//! every vertex `v` has between `lo(v)` and `up(v)` members of `S` in its
//! closed neighborhood. The main solver is a dynamic program over a nice tree
//! decomposition; brute-force oracles, instance generators for two hardness
//! reductions, a win/win driver and SCQ solvers sit around it.

pub mod bench;
pub mod cli;
pub mod dp;
pub mod error;
pub mod format;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod par;
pub mod random;
pub mod reductions;
pub mod report;
pub mod scq;
pub mod subexp;
pub mod treewidth;

pub use dp::{solve_dp, DpOptions, DsqSolution, JoinMode};
pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{DsqInstance, QuotaPair, ScqInstance, VertexSet};
