//! Seeded random instances for tests, benches and the `gen random` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::instance::{DsqInstance, QuotaPair, ScqInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` vertices and `min(m, n(n-1)/2)` distinct edges chosen uniformly.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    pairs.sort_unstable();
    Graph::from_edges(n, &pairs).expect("distinct pairs")
}

/// Quota with `lo <= up <= max_up`.
pub fn random_quota<R: Rng>(rng: &mut R, max_up: usize) -> QuotaPair {
    let up = rng.gen_range(0..=max_up);
    let lo = rng.gen_range(0..=up);
    QuotaPair { lo, up }
}

#[derive(Debug, Clone, Copy)]
pub struct DsqShape {
    pub max_n: usize,
    pub max_m: usize,
    pub max_up: usize,
    pub max_k: usize,
}

impl Default for DsqShape {
    fn default() -> Self {
        DsqShape {
            max_n: 12,
            max_m: 20,
            max_up: 3,
            max_k: 5,
        }
    }
}

pub fn random_dsq<R: Rng>(rng: &mut R, shape: DsqShape) -> DsqInstance {
    let n = rng.gen_range(1..=shape.max_n);
    let m = rng.gen_range(0..=shape.max_m);
    let g = random_graph(rng, n, m);
    let quotas = (0..n).map(|_| random_quota(rng, shape.max_up)).collect();
    let k = rng.gen_range(0..=shape.max_k);
    DsqInstance::new(g, quotas, k).expect("valid quotas")
}

#[derive(Debug, Clone, Copy)]
pub struct ScqShape {
    pub max_universe: usize,
    pub max_sets: usize,
    /// Largest set size.
    pub d: usize,
    pub max_up: usize,
    pub max_k: usize,
}

pub fn random_scq<R: Rng>(rng: &mut R, shape: ScqShape) -> ScqInstance {
    let universe = rng.gen_range(1..=shape.max_universe);
    let n_sets = rng.gen_range(1..=shape.max_sets);
    let elems: Vec<usize> = (0..universe).collect();
    let sets = (0..n_sets)
        .map(|_| {
            let size = rng.gen_range(1..=shape.d.min(universe).max(1));
            elems.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    let quotas = (0..universe)
        .map(|_| random_quota(rng, shape.max_up))
        .collect();
    let k = rng.gen_range(0..=shape.max_k);
    ScqInstance::new(universe, sets, quotas, k).expect("valid instance")
}

/// `rows x cols` grid graph, row-major ids.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("grid edges")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges")
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))
        .collect();
    Graph::from_edges(n, &edges).expect("cycle edges")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("complete edges")
}
