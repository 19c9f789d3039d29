use serde::Serialize;

use crate::graph::Graph;
use crate::instance::{DsqInstance, VertexSet};

/// Result of exhaustively applying the deletion rule.
#[derive(Debug, Clone)]
pub struct RuleOutcome {
    pub reduced: DsqInstance,
    /// Deleted vertices, original ids.
    pub removed: VertexSet,
    /// `kept[i]` is the original id of reduced vertex `i`.
    pub kept: Vec<usize>,
    /// Deletions in order, each with its neighborhood at deletion time.
    pub log: Vec<Deletion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deletion {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
}

/// Deletes, until none is left, every vertex `v` with `lo(v) = 0` whose
/// distance-2 ball in the current graph contains only vertices with lower
/// quota 0. Vertices are scanned in id order, repeatedly.
pub fn apply_reduction_rule(inst: &DsqInstance) -> RuleOutcome {
    let g = inst.graph();
    let n = g.n();
    let zero = |v: usize| inst.quota(v).lo == 0;
    let mut alive = vec![true; n];
    let mut log = Vec::new();
    loop {
        let mut changed = false;
        for v in 0..n {
            if alive[v] && zero(v) && ball2(g, &alive, v).into_iter().all(zero) {
                log.push(Deletion {
                    vertex: v,
                    neighbors: g
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&u| alive[u])
                        .collect(),
                });
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let quotas = kept.iter().map(|&v| inst.quota(v)).collect();
    let reduced = DsqInstance::new(g.induced(&kept), quotas, inst.k())
        .expect("induced instance keeps valid quotas");
    RuleOutcome {
        reduced,
        removed: log.iter().map(|d| d.vertex).collect(),
        kept,
        log,
    }
}

/// Vertices within distance 2 of `v` among the alive ones.
fn ball2(g: &Graph, alive: &[bool], v: usize) -> Vec<usize> {
    let mut out = vec![v];
    for &u in g.neighbors(v).iter().filter(|&&u| alive[u]) {
        out.push(u);
        out.extend(g.neighbors(u).iter().copied().filter(|&w| alive[w]));
    }
    out
}

impl RuleOutcome {
    /// Maps a solution of the reduced instance back to the original one.
    ///
    /// Each deleted vertex is restored in reverse order; its neighbors at
    /// deletion time leave the solution, so the restored vertex is dominated
    /// zero times. Every vertex this affects has lower quota 0.
    pub fn lift_witness(&self, reduced: &VertexSet) -> VertexSet {
        let mut d: std::collections::BTreeSet<usize> =
            reduced.iter().map(|v| self.kept[v]).collect();
        for del in self.log.iter().rev() {
            for u in &del.neighbors {
                d.remove(u);
            }
        }
        d.into_iter().collect()
    }
}
