//! Instances of Dominating Set with Quotas (DSQ) and Set Cover with Quotas
//! (SCQ), and their solution verifiers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closed interval `[lo, up]` of admissible domination (or coverage) counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuotaPair {
    pub lo: usize,
    pub up: usize,
}

impl QuotaPair {
    pub fn new(lo: usize, up: usize) -> Result<Self> {
        if lo > up {
            return Err(Error::InvalidInstance(format!(
                "quota <{lo},{up}> has lo > up"
            )));
        }
        Ok(QuotaPair { lo, up })
    }

    #[inline]
    pub fn contains(&self, count: usize) -> bool {
        self.lo <= count && count <= self.up
    }
}

/// Sorted, duplicate-free set of vertex (or set) ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// 1-based, space separated.
    pub fn to_one_based_string(&self) -> String {
        self.0
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// A way in which a candidate solution fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Domination or coverage count of `id` outside its quota.
    Quota {
        id: usize,
        observed: usize,
        expected: QuotaPair,
    },
    /// Solution larger than the budget.
    Budget { size: usize, k: usize },
    /// Id outside the instance.
    OutOfRange { id: usize },
    /// The same set chosen twice.
    Repeated { id: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Quota {
                id,
                observed,
                expected,
            } => write!(
                f,
                "{} is hit {observed} times, quota <{},{}>",
                id + 1,
                expected.lo,
                expected.up
            ),
            Violation::Budget { size, k } => write!(f, "size {size} exceeds k = {k}"),
            Violation::OutOfRange { id } => write!(f, "id {} out of range", id + 1),
            Violation::Repeated { id } => write!(f, "{} chosen twice", id + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsqInstance {
    graph: Graph,
    quotas: Vec<QuotaPair>,
    k: usize,
}

impl DsqInstance {
    pub fn new(graph: Graph, quotas: Vec<QuotaPair>, k: usize) -> Result<Self> {
        if quotas.len() != graph.n() {
            return Err(Error::InvalidInstance(format!(
                "{} quotas for {} vertices",
                quotas.len(),
                graph.n()
            )));
        }
        if let Some((v, q)) = quotas.iter().enumerate().find(|(_, q)| q.lo > q.up) {
            return Err(Error::InvalidInstance(format!(
                "vertex {v} has quota <{},{}> with lo > up",
                q.lo, q.up
            )));
        }
        Ok(DsqInstance { graph, quotas, k })
    }

    /// Classical dominating set: every quota is `<1, k>`.
    pub fn dominating_set(graph: Graph, k: usize) -> Self {
        let quotas = vec![QuotaPair { lo: 1, up: k }; graph.n()];
        DsqInstance { graph, quotas, k }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn quota(&self, v: usize) -> QuotaPair {
        self.quotas[v]
    }

    pub fn quotas(&self) -> &[QuotaPair] {
        &self.quotas
    }

    pub fn with_budget(&self, k: usize) -> Self {
        DsqInstance {
            graph: self.graph.clone(),
            quotas: self.quotas.clone(),
            k,
        }
    }

    /// Upper quota clamped to the budget: no size-`k` set dominates anything
    /// more than `k` times.
    #[inline]
    pub fn effective_up(&self, v: usize) -> usize {
        self.quotas[v].up.min(self.k)
    }

    /// `min(max_v up(v), k)`, the largest domination count worth tracking.
    pub fn max_effective_up(&self) -> usize {
        self.quotas
            .iter()
            .map(|q| q.up)
            .max()
            .unwrap_or(0)
            .min(self.k)
    }

    pub fn verify(&self, solution: &VertexSet) -> Vec<Violation> {
        verify_dsq_solution(self, solution)
    }
}

/// Every vertex whose closed-neighborhood count falls outside its quota, plus
/// a budget violation if `|s| > k`. Empty iff `s` is a solution.
pub fn verify_dsq_solution(inst: &DsqInstance, s: &VertexSet) -> Vec<Violation> {
    let n = inst.n();
    let mut out = Vec::new();
    let mut count = vec![0usize; n];
    for v in s.iter() {
        if v >= n {
            out.push(Violation::OutOfRange { id: v });
            continue;
        }
        count[v] += 1;
        for &u in inst.graph().neighbors(v) {
            count[u] += 1;
        }
    }
    for (v, &c) in count.iter().enumerate() {
        let q = inst.quota(v);
        if !q.contains(c) {
            out.push(Violation::Quota {
                id: v,
                observed: c,
                expected: q,
            });
        }
    }
    if s.len() > inst.k() {
        out.push(Violation::Budget {
            size: s.len(),
            k: inst.k(),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScqInstance {
    universe: usize,
    sets: Vec<Vec<usize>>,
    quotas: Vec<QuotaPair>,
    k: usize,
}

impl ScqInstance {
    /// Sets are sorted and deduplicated; each must be a nonempty subset of
    /// `0..universe`.
    pub fn new(
        universe: usize,
        sets: Vec<Vec<usize>>,
        quotas: Vec<QuotaPair>,
        k: usize,
    ) -> Result<Self> {
        if quotas.len() != universe {
            return Err(Error::InvalidInstance(format!(
                "{} quotas for a universe of {universe}",
                quotas.len()
            )));
        }
        if let Some((e, q)) = quotas.iter().enumerate().find(|(_, q)| q.lo > q.up) {
            return Err(Error::InvalidInstance(format!(
                "element {e} has quota <{},{}> with lo > up",
                q.lo, q.up
            )));
        }
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::InvalidInstance(format!("set {i} is empty")));
            }
            if let Some(&e) = set.iter().find(|&&e| e >= universe) {
                return Err(Error::InvalidInstance(format!(
                    "set {i} contains element {e} outside the universe"
                )));
            }
            clean.push(set);
        }
        Ok(ScqInstance {
            universe,
            sets: clean,
            quotas,
            k,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn quota(&self, e: usize) -> QuotaPair {
        self.quotas[e]
    }

    pub fn quotas(&self) -> &[QuotaPair] {
        &self.quotas
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest set size `d`.
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest element frequency `f`.
    pub fn max_frequency(&self) -> usize {
        let mut freq = vec![0usize; self.universe];
        for set in &self.sets {
            for &e in set {
                freq[e] += 1;
            }
        }
        freq.into_iter().max().unwrap_or(0)
    }

    /// For each element, the indices of the sets containing it.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.universe];
        for (i, set) in self.sets.iter().enumerate() {
            for &e in set {
                occ[e].push(i);
            }
        }
        occ
    }

    pub fn verify(&self, chosen: &[usize]) -> Vec<Violation> {
        verify_scq_solution(self, chosen)
    }
}

/// Coverage multiplicities checked against the quotas, plus the budget.
pub fn verify_scq_solution(inst: &ScqInstance, chosen: &[usize]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut cover = vec![0usize; inst.universe()];
    let mut used = vec![false; inst.sets().len()];
    for &i in chosen {
        if i >= inst.sets().len() {
            out.push(Violation::OutOfRange { id: i });
            continue;
        }
        if used[i] {
            out.push(Violation::Repeated { id: i });
            continue;
        }
        used[i] = true;
        for &e in &inst.sets()[i] {
            cover[e] += 1;
        }
    }
    for (e, &c) in cover.iter().enumerate() {
        let q = inst.quota(e);
        if !q.contains(c) {
            out.push(Violation::Quota {
                id: e,
                observed: c,
                expected: q,
            });
        }
    }
    if chosen.len() > inst.k() {
        out.push(Violation::Budget {
            size: chosen.len(),
            k: inst.k(),
        });
    }
    out
}
