//! Dynamic programming for DSQ over a nice tree decomposition.
//!
//! For a node `t` with bag `X_t`, a state is a pair `(f, S)`: `f(v)` is the
//! number of times bag vertex `v` is dominated by the partial solution inside
//! the subgraph `G_t` built so far, and `S` is the partial solution's
//! intersection with the bag. The table stores the minimum size of a partial
//! solution that realises the state and dominates every forgotten vertex
//! within its quota. Infeasible states are simply absent, as are states that
//! already cost more than `k` or count a vertex above `min(up(v), k)`.
//!
//! States are packed into a `u64` key: the `f` digits in mixed radix with the
//! first bag position most significant, followed by one bit per bag position
//! for `S`. Numeric key order is therefore lexicographic order on `(f, S)`,
//! which is the tie-break used when several child states reach the same
//! minimum.

mod join;
mod rule;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{DsqInstance, VertexSet};
use crate::par;
use crate::treewidth::{NiceKind, NiceTreeDecomposition};

pub use join::{
    convolve_counts, convolve_counts_bounded, join_fast, join_naive, CountCell, JoinInput,
};
pub use rule::{apply_reduction_rule, RuleOutcome};

/// How join nodes are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JoinMode {
    /// Enumerate compatible pairs of child states.
    #[default]
    Naive,
    /// Count-table convolution over `Z_(u+1)^bag` with a total-weight filter.
    Fast,
}

impl JoinMode {
    pub fn name(self) -> &'static str {
        match self {
            JoinMode::Naive => "naive",
            JoinMode::Fast => "fast",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DpOptions {
    pub join: JoinMode,
    pub parallel: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            join: JoinMode::Naive,
            parallel: par::AVAILABLE,
        }
    }
}

/// Back-pointer of an entry whose minimiser is resolved on demand.
pub const NO_BACK: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub cost: u32,
    /// Child key (introduce/forget) or left child key (join).
    pub back: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct Codec {
    len: usize,
    radix: u64,
    pow: Vec<u64>,
}

impl Codec {
    pub(crate) fn new(len: usize, radix: u64) -> Result<Self> {
        let bound = (radix as u128)
            .checked_pow(len as u32)
            .and_then(|x| x.checked_mul(1u128 << len));
        match bound {
            Some(b) if len < 32 && b < u64::MAX as u128 => {}
            _ => {
                return Err(Error::TooWide {
                    bag: len,
                    radix: radix as usize,
                })
            }
        }
        let mut pow = vec![1u64; len];
        for i in (0..len.saturating_sub(1)).rev() {
            pow[i] = pow[i + 1] * radix;
        }
        Ok(Codec { len, radix, pow })
    }

    #[inline]
    pub(crate) fn encode(&self, f: &[u8], s: u32) -> u64 {
        let mut code = 0u64;
        for (d, p) in f.iter().zip(&self.pow) {
            code += *d as u64 * p;
        }
        (code << self.len) | s as u64
    }

    #[inline]
    pub(crate) fn decode(&self, key: u64, f: &mut [u8]) -> u32 {
        let s = (key & ((1u64 << self.len) - 1)) as u32;
        let mut code = key >> self.len;
        for i in (0..self.len).rev() {
            f[i] = (code % self.radix) as u8;
            code /= self.radix;
        }
        s
    }

    /// `2^len * radix^len`, the size of the full state space.
    pub(crate) fn state_space(&self) -> u128 {
        (self.radix as u128).pow(self.len as u32) << self.len
    }
}

/// The table of one decomposition node.
#[derive(Debug, Clone)]
pub struct DpTable {
    bag: Vec<usize>,
    codec: Codec,
    entries: HashMap<u64, Entry>,
}

/// A decoded state: `f` per bag position and `S` as vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DpState {
    pub f: Vec<u8>,
    pub s: Vec<usize>,
}

impl DpTable {
    pub(crate) fn new(bag: Vec<usize>, codec: Codec, entries: HashMap<u64, Entry>) -> Self {
        DpTable {
            bag,
            codec,
            entries,
        }
    }

    pub fn bag(&self) -> &[usize] {
        &self.bag
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn codec(&self) -> &Codec {
        &self.codec
    }

    /// Entries sorted by key.
    pub(crate) fn sorted_entries(&self) -> Vec<(u64, Entry)> {
        let mut v: Vec<(u64, Entry)> = self.entries.iter().map(|(&k, &e)| (k, e)).collect();
        v.sort_unstable_by_key(|&(k, _)| k);
        v
    }

    /// Cost of state `(f, S)` with `S` given as a bitmask over bag positions.
    pub fn cost(&self, f: &[u8], s_mask: u32) -> Option<u32> {
        if f.len() != self.bag.len() || f.iter().any(|&d| d as u64 >= self.codec.radix) {
            return None;
        }
        self.entries
            .get(&self.codec.encode(f, s_mask))
            .map(|e| e.cost)
    }

    /// `(f, S mask) -> cost`, in canonical order.
    pub fn cost_map(&self) -> BTreeMap<(Vec<u8>, u32), u32> {
        let mut f = vec![0u8; self.bag.len()];
        self.entries
            .iter()
            .map(|(&key, e)| {
                let s = self.codec.decode(key, &mut f);
                ((f.clone(), s), e.cost)
            })
            .collect()
    }

    pub fn states(&self) -> Vec<(DpState, u32)> {
        self.cost_map()
            .into_iter()
            .map(|((f, s), c)| {
                let s = (0..self.bag.len())
                    .filter(|&i| s >> i & 1 == 1)
                    .map(|i| self.bag[i])
                    .collect();
                (DpState { f, s }, c)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DpStats {
    pub nodes: usize,
    pub joins: usize,
    pub peak_table: usize,
    pub total_entries: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DsqSolution {
    pub size: usize,
    pub witness: VertexSet,
}

#[derive(Debug, Clone)]
pub struct DpOutcome {
    pub solution: Option<DsqSolution>,
    pub stats: DpStats,
}

/// All tables of a finished run, kept for inspection and witness recovery.
#[derive(Debug)]
pub struct DpRun<'a> {
    inst: &'a DsqInstance,
    ntd: &'a NiceTreeDecomposition,
    tables: Vec<DpTable>,
    stats: DpStats,
}

#[inline]
fn relax(map: &mut HashMap<u64, Entry>, key: u64, cand: Entry) {
    map.entry(key)
        .and_modify(|cur| {
            if (cand.cost, cand.back) < (cur.cost, cur.back) {
                *cur = cand;
            }
        })
        .or_insert(cand);
}

fn merge(parts: Vec<HashMap<u64, Entry>>) -> HashMap<u64, Entry> {
    let mut parts = parts.into_iter();
    let mut acc = parts.next().unwrap_or_default();
    for part in parts {
        for (k, e) in part {
            relax(&mut acc, k, e);
        }
    }
    acc
}

const CHUNK: usize = 4096;

struct Ctx<'a> {
    inst: &'a DsqInstance,
    k: u32,
    radix: u64,
    parallel: bool,
}

impl Ctx<'_> {
    fn caps(&self, bag: &[usize]) -> Vec<u8> {
        bag.iter()
            .map(|&v| self.inst.effective_up(v) as u8)
            .collect()
    }

    fn leaf(&self) -> Result<DpTable> {
        let codec = Codec::new(0, self.radix)?;
        let mut entries = HashMap::new();
        entries.insert(
            0,
            Entry {
                cost: 0,
                back: NO_BACK,
            },
        );
        Ok(DpTable::new(Vec::new(), codec, entries))
    }

    fn introduce_vertex(&self, child: &DpTable, bag: &[usize], v: usize) -> Result<DpTable> {
        let codec = Codec::new(bag.len(), self.radix)?;
        let p = bag.binary_search(&v).expect("introduced vertex in bag");
        let can_take = self.inst.effective_up(v) >= 1;
        let b = bag.len();
        let items = child.sorted_entries();
        let parts = par::chunks(&items, CHUNK, self.parallel, |chunk| {
            let mut out = HashMap::with_capacity(chunk.len() * 2);
            let mut fc = vec![0u8; b - 1];
            let mut f = vec![0u8; b];
            for &(key, e) in chunk {
                let s = child.codec.decode(key, &mut fc);
                f[..p].copy_from_slice(&fc[..p]);
                f[p + 1..].copy_from_slice(&fc[p..]);
                let low = s & ((1u32 << p) - 1);
                let high = (s >> p) << (p + 1);
                f[p] = 0;
                relax(
                    &mut out,
                    codec.encode(&f, low | high),
                    Entry {
                        cost: e.cost,
                        back: key,
                    },
                );
                if can_take && e.cost < self.k {
                    f[p] = 1;
                    relax(
                        &mut out,
                        codec.encode(&f, low | high | (1 << p)),
                        Entry {
                            cost: e.cost + 1,
                            back: key,
                        },
                    );
                }
            }
            out
        });
        Ok(DpTable::new(bag.to_vec(), codec, merge(parts)))
    }

    fn introduce_edge(&self, child: &DpTable, bag: &[usize], u: usize, v: usize) -> DpTable {
        let codec = child.codec.clone();
        let pu = bag.binary_search(&u).expect("edge endpoint in bag");
        let pv = bag.binary_search(&v).expect("edge endpoint in bag");
        let caps = self.caps(bag);
        let items = child.sorted_entries();
        let parts = par::chunks(&items, CHUNK, self.parallel, |chunk| {
            let mut out = HashMap::with_capacity(chunk.len());
            let mut f = vec![0u8; bag.len()];
            for &(key, e) in chunk {
                let s = codec.decode(key, &mut f);
                f[pu] += (s >> pv & 1) as u8;
                f[pv] += (s >> pu & 1) as u8;
                if f[pu] > caps[pu] || f[pv] > caps[pv] {
                    continue;
                }
                relax(
                    &mut out,
                    codec.encode(&f, s),
                    Entry {
                        cost: e.cost,
                        back: key,
                    },
                );
            }
            out
        });
        DpTable::new(bag.to_vec(), codec, merge(parts))
    }

    fn forget(&self, child: &DpTable, bag: &[usize], v: usize) -> Result<DpTable> {
        let codec = Codec::new(bag.len(), self.radix)?;
        let p = child
            .bag
            .binary_search(&v)
            .expect("forgotten vertex in child bag");
        let quota = self.inst.quota(v);
        let cb = child.bag.len();
        let items = child.sorted_entries();
        let parts = par::chunks(&items, CHUNK, self.parallel, |chunk| {
            let mut out = HashMap::with_capacity(chunk.len());
            let mut fc = vec![0u8; cb];
            let mut f = vec![0u8; cb - 1];
            for &(key, e) in chunk {
                let s = child.codec.decode(key, &mut fc);
                if !quota.contains(fc[p] as usize) {
                    continue;
                }
                f[..p].copy_from_slice(&fc[..p]);
                f[p..].copy_from_slice(&fc[p + 1..]);
                let low = s & ((1u32 << p) - 1);
                let high = (s >> (p + 1)) << p;
                relax(
                    &mut out,
                    codec.encode(&f, low | high),
                    Entry {
                        cost: e.cost,
                        back: key,
                    },
                );
            }
            out
        });
        Ok(DpTable::new(bag.to_vec(), codec, merge(parts)))
    }
}

/// Edges between positions of `bag` introduced anywhere in the subtree.
fn subtree_bag_edges(
    ntd: &NiceTreeDecomposition,
    node: usize,
    done: &[Vec<(usize, usize)>],
) -> Vec<(usize, usize)> {
    let n = &ntd.nodes()[node];
    let pos = |x: usize| n.bag.binary_search(&x).ok();
    let lift = |child: usize| -> Vec<(usize, usize)> {
        let cb = &ntd.nodes()[child].bag;
        done[child]
            .iter()
            .filter_map(|&(a, b)| Some((pos(cb[a])?, pos(cb[b])?)))
            .collect()
    };
    match n.kind {
        NiceKind::Leaf => Vec::new(),
        NiceKind::IntroduceVertex(_) | NiceKind::Forget(_) => lift(n.children[0]),
        NiceKind::IntroduceEdge(u, v) => {
            let mut e = lift(n.children[0]);
            let (a, b) = (pos(u).unwrap(), pos(v).unwrap());
            e.push((a.min(b), a.max(b)));
            e
        }
        NiceKind::Join => {
            let mut e = lift(n.children[0]);
            e.extend(lift(n.children[1]));
            e.sort_unstable();
            e
        }
    }
}

/// Runs the table computation bottom-up and keeps every table.
pub fn run_dp<'a>(
    inst: &'a DsqInstance,
    ntd: &'a NiceTreeDecomposition,
    opts: DpOptions,
) -> Result<DpRun<'a>> {
    ntd.check(inst.graph()).map_err(|errs| {
        Error::InvalidInstance(format!(
            "decomposition does not fit the graph: {}",
            errs.join("; ")
        ))
    })?;
    let cap = inst.max_effective_up();
    if cap > u8::MAX as usize - 1 {
        return Err(Error::TooWide {
            bag: ntd.max_bag_size(),
            radix: cap + 1,
        });
    }
    let ctx = Ctx {
        inst,
        k: inst.k() as u32,
        radix: cap as u64 + 1,
        parallel: opts.parallel,
    };
    // Reject oversized decompositions before doing any work.
    Codec::new(ntd.max_bag_size(), ctx.radix)?;

    let nodes = ntd.nodes();
    let mut tables: Vec<DpTable> = Vec::with_capacity(nodes.len());
    let mut bag_edges: Vec<Vec<(usize, usize)>> = Vec::with_capacity(nodes.len());
    let mut stats = DpStats {
        nodes: nodes.len(),
        width: ntd.width(),
        ..DpStats::default()
    };
    for (i, node) in nodes.iter().enumerate() {
        let table = match node.kind {
            NiceKind::Leaf => ctx.leaf()?,
            NiceKind::IntroduceVertex(v) => {
                ctx.introduce_vertex(&tables[node.children[0]], &node.bag, v)?
            }
            NiceKind::IntroduceEdge(u, v) => {
                ctx.introduce_edge(&tables[node.children[0]], &node.bag, u, v)
            }
            NiceKind::Forget(v) => ctx.forget(&tables[node.children[0]], &node.bag, v)?,
            NiceKind::Join => {
                stats.joins += 1;
                let (l, r) = (node.children[0], node.children[1]);
                let input = JoinInput {
                    bag: &node.bag,
                    caps: ctx.caps(&node.bag),
                    k: inst.k(),
                    left: &tables[l],
                    right: &tables[r],
                    left_edges: &bag_edges[l],
                    right_edges: &bag_edges[r],
                    parallel: opts.parallel,
                };
                match opts.join {
                    JoinMode::Naive => join_naive(&input)?,
                    JoinMode::Fast => {
                        let fast = join_fast(&input)?;
                        #[cfg(debug_assertions)]
                        {
                            let naive = join_naive(&input)?;
                            assert_eq!(
                                fast.cost_map(),
                                naive.cost_map(),
                                "fast join diverged at node {i}"
                            );
                        }
                        fast
                    }
                }
            }
        };
        let bound = table.codec.state_space();
        assert!(
            table.len() as u128 <= bound,
            "node {i}: {} entries exceed the state space {bound}",
            table.len()
        );
        stats.peak_table = stats.peak_table.max(table.len());
        stats.total_entries += table.len();
        bag_edges.push(subtree_bag_edges(ntd, i, &bag_edges));
        tables.push(table);
    }
    Ok(DpRun {
        inst,
        ntd,
        tables,
        stats,
    })
}

impl<'a> DpRun<'a> {
    pub fn tables(&self) -> &[DpTable] {
        &self.tables
    }

    pub fn stats(&self) -> DpStats {
        self.stats
    }

    /// Optimum `c[root, ∅, ∅]`, if at most `k`.
    pub fn optimum(&self) -> Option<usize> {
        self.tables[self.ntd.root()]
            .entries
            .get(&0)
            .map(|e| e.cost as usize)
    }

    /// Walks the back-pointers from the root state and collects the solution.
    pub fn extract_witness(&self) -> Option<VertexSet> {
        self.optimum()?;
        let nodes = self.ntd.nodes();
        let mut chosen = BTreeSet::new();
        let mut stack = vec![(self.ntd.root(), 0u64)];
        while let Some((t, key)) = stack.pop() {
            let node = &nodes[t];
            let table = &self.tables[t];
            let entry = table.entries[&key];
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::IntroduceVertex(v) => {
                    let p = node.bag.binary_search(&v).unwrap();
                    if key >> p & 1 == 1 {
                        chosen.insert(v);
                    }
                    stack.push((node.children[0], entry.back));
                }
                NiceKind::IntroduceEdge(..) | NiceKind::Forget(_) => {
                    stack.push((node.children[0], entry.back));
                }
                NiceKind::Join => {
                    let (l, r) = (node.children[0], node.children[1]);
                    let left_key = if entry.back == NO_BACK {
                        self.resolve_join(t, key, entry.cost)
                    } else {
                        entry.back
                    };
                    let right_key = join_partner(table, &self.tables[l], key, left_key);
                    stack.push((l, left_key));
                    stack.push((r, right_key));
                }
            }
        }
        Some(chosen.into_iter().collect())
    }

    /// Smallest left key that, with its compatible right state, achieves `cost`.
    fn resolve_join(&self, t: usize, key: u64, cost: u32) -> u64 {
        let node = &self.ntd.nodes()[t];
        let (l, r) = (node.children[0], node.children[1]);
        let (table, left, right) = (&self.tables[t], &self.tables[l], &self.tables[r]);
        let b = node.bag.len();
        let mut f = vec![0u8; b];
        let s = table.codec.decode(key, &mut f);
        let s_size = s.count_ones();
        let mut f1 = vec![0u8; b];
        let mut f2 = vec![0u8; b];
        left.sorted_entries()
            .into_iter()
            .find(|&(lk, le)| {
                if left.codec.decode(lk, &mut f1) != s {
                    return false;
                }
                for i in 0..b {
                    let want = f[i] as i32 - f1[i] as i32 + (s >> i & 1) as i32;
                    if want < 0 || want as u64 >= right.codec.radix {
                        return false;
                    }
                    f2[i] = want as u8;
                }
                right
                    .entries
                    .get(&right.codec.encode(&f2, s))
                    .is_some_and(|re| le.cost + re.cost == cost + s_size)
            })
            .map(|(lk, _)| lk)
            .expect("join entry has a compatible pair")
    }

    pub fn into_outcome(self) -> DpOutcome {
        let solution = self.optimum().map(|size| DsqSolution {
            size,
            witness: self.extract_witness().expect("feasible root"),
        });
        DpOutcome {
            solution,
            stats: self.stats,
        }
    }

    pub fn instance(&self) -> &DsqInstance {
        self.inst
    }
}

/// Right child key determined by the parent key and the chosen left key.
fn join_partner(parent: &DpTable, left: &DpTable, key: u64, left_key: u64) -> u64 {
    let b = parent.bag.len();
    let mut f = vec![0u8; b];
    let mut f1 = vec![0u8; b];
    let s = parent.codec.decode(key, &mut f);
    left.codec.decode(left_key, &mut f1);
    let f2: Vec<u8> = (0..b).map(|i| f[i] + (s >> i & 1) as u8 - f1[i]).collect();
    parent.codec.encode(&f2, s)
}

/// Minimum solution size and a witness, or `None` when no solution of size
/// at most `k` exists.
pub fn solve_dp(
    inst: &DsqInstance,
    ntd: &NiceTreeDecomposition,
    opts: DpOptions,
) -> Result<DpOutcome> {
    let run = run_dp(inst, ntd, opts)?;
    let outcome = run.into_outcome();
    if let Some(sol) = &outcome.solution {
        debug_assert!(inst.verify(&sol.witness).is_empty());
        debug_assert_eq!(sol.witness.len(), sol.size);
    }
    Ok(outcome)
}

/// Convenience pipeline: heuristic decomposition, nice form, DP.
pub fn solve_with_heuristic(
    inst: &DsqInstance,
    strategy: crate::treewidth::Strategy,
    opts: DpOptions,
) -> Result<DpOutcome> {
    let td = crate::treewidth::heuristic_decomposition(inst.graph(), strategy);
    let ntd = crate::treewidth::make_nice(inst.graph(), &td)?;
    solve_dp(inst, &ntd, opts)
}
