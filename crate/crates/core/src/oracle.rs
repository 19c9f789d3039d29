//! Exhaustive reference solvers. They are deliberately naive and refuse
//! inputs beyond desk scale.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{DsqInstance, ScqInstance, VertexSet};

pub const DSQ_LIMIT: usize = 25;
pub const EC_LIMIT: usize = 12;
pub const IS_LIMIT: usize = 25;
pub const SCQ_LIMIT: usize = 20;

/// Equitable coloring: a proper coloring of `graph` with `r` classes whose
/// sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcInstance {
    pub graph: Graph,
    pub r: usize,
}

impl EcInstance {
    pub fn new(graph: Graph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInstance(
                "equitable coloring needs r >= 1".into(),
            ));
        }
        Ok(EcInstance { graph, r })
    }

    /// `floor(n / r)`.
    pub fn small(&self) -> usize {
        self.graph.n() / self.r
    }

    /// `ceil(n / r)`.
    pub fn large(&self) -> usize {
        self.graph.n().div_ceil(self.r)
    }

    /// True if `coloring` (colors `0..r`) is proper with every class size in
    /// `{floor(n/r), ceil(n/r)}`.
    pub fn is_equitable(&self, coloring: &[usize]) -> bool {
        if coloring.len() != self.graph.n() || coloring.iter().any(|&c| c >= self.r) {
            return false;
        }
        if self.graph.edges().any(|(u, v)| coloring[u] == coloring[v]) {
            return false;
        }
        let mut sizes = vec![0usize; self.r];
        for &c in coloring {
            sizes[c] += 1;
        }
        sizes
            .iter()
            .all(|&s| s == self.small() || s == self.large())
    }
}

/// Independent set of size exactly `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsInstance {
    pub graph: Graph,
    pub r: usize,
}

impl IsInstance {
    pub fn new(graph: Graph, r: usize) -> Self {
        IsInstance { graph, r }
    }

    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        s.len() == self.r
            && s.iter().all(|v| v < self.graph.n())
            && self
                .graph
                .edges()
                .all(|(u, v)| !(s.contains(u) && s.contains(v)))
    }
}

fn guard(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::OracleGuard {
            what,
            limit,
            actual,
        });
    }
    Ok(())
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns true; returns that subset.
pub(crate) fn first_subset(
    n: usize,
    size: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if size > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest solution, trying subsets by increasing size up to `k`.
pub fn brute_dsq(inst: &DsqInstance) -> Result<Option<VertexSet>> {
    guard("DSQ", DSQ_LIMIT, inst.n())?;
    let n = inst.n();
    let g = inst.graph();
    let mut count = vec![0usize; n];
    for size in 0..=inst.k().min(n) {
        let hit = first_subset(n, size, |s| {
            count.iter_mut().for_each(|c| *c = 0);
            for &v in s {
                count[v] += 1;
                for &u in g.neighbors(v) {
                    count[u] += 1;
                }
            }
            (0..n).all(|v| inst.quota(v).contains(count[v]))
        });
        if let Some(s) = hit {
            return Ok(Some(VertexSet::new(s)));
        }
    }
    Ok(None)
}

/// Some equitable `r`-coloring (colors `0..r`), by depth-first search over
/// vertex colors in id order.
pub fn brute_ec(inst: &EcInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.graph.n();
    guard("equitable coloring", EC_LIMIT, n)?;
    let (small, large) = (inst.small(), inst.large());
    // Number of classes that must reach the larger size.
    let n_large = n - small * inst.r;
    let mut color = vec![usize::MAX; n];
    let mut sizes = vec![0usize; inst.r];

    fn go(
        v: usize,
        inst: &EcInstance,
        color: &mut [usize],
        sizes: &mut [usize],
        small: usize,
        large: usize,
        n_large: usize,
    ) -> bool {
        let n = color.len();
        if v == n {
            let big = sizes.iter().filter(|&&s| s == large).count();
            return sizes.iter().all(|&s| s == small || s == large)
                && (small == large || big == n_large);
        }
        for c in 0..inst.r {
            if sizes[c] == large {
                continue;
            }
            if inst.graph.neighbors(v).iter().any(|&u| color[u] == c) {
                continue;
            }
            color[v] = c;
            sizes[c] += 1;
            // Remaining vertices must be able to lift every class to `small`.
            let deficit: usize = sizes.iter().map(|&s| small.saturating_sub(s)).sum();
            if deficit < n - v && go(v + 1, inst, color, sizes, small, large, n_large) {
                return true;
            }
            sizes[c] -= 1;
            color[v] = usize::MAX;
        }
        false
    }

    if go(0, inst, &mut color, &mut sizes, small, large, n_large) {
        debug_assert!(inst.is_equitable(&color));
        Ok(Some(color))
    } else {
        Ok(None)
    }
}

/// Lexicographically first independent set of size exactly `r`.
pub fn brute_is(inst: &IsInstance) -> Result<Option<VertexSet>> {
    let n = inst.graph.n();
    guard("independent set", IS_LIMIT, n)?;
    let hit = first_subset(n, inst.r, |s| {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !inst.graph.has_edge(u, v)))
    });
    Ok(hit.map(VertexSet::new))
}

/// Smallest subfamily meeting every quota, by increasing size up to `k`.
pub fn brute_scq(inst: &ScqInstance) -> Result<Option<Vec<usize>>> {
    let m = inst.sets().len();
    guard("SCQ", SCQ_LIMIT, m)?;
    let mut cover = vec![0usize; inst.universe()];
    for size in 0..=inst.k().min(m) {
        let hit = first_subset(m, size, |s| {
            cover.iter_mut().for_each(|c| *c = 0);
            for &i in s {
                for &e in &inst.sets()[i] {
                    cover[e] += 1;
                }
            }
            cover
                .iter()
                .enumerate()
                .all(|(e, &c)| inst.quota(e).contains(c))
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}
