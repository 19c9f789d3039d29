//! Simple undirected graphs with sorted adjacency lists.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted and symmetric; self-loops and parallel
/// edges are rejected at construction time.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// `N[v]` in increasing order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let mut placed = false;
        for &u in &self.adj[v] {
            if !placed && v < u {
                out.push(v);
                placed = true;
            }
            out.push(u);
        }
        if !placed {
            out.push(v);
        }
        out
    }

    /// Subgraph induced by `keep` (sorted, distinct). Vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut m = 0;
        let adj = keep
            .iter()
            .map(|&v| {
                let list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect();
                m += list.len();
                list
            })
            .collect();
        Graph { adj, m: m / 2 }
    }

    /// BFS distances from a set of sources, `None` for unreachable vertices.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices at distance at most `radius` from `v`, including `v`.
    pub fn ball(&self, v: usize, radius: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut frontier = vec![v];
        seen[v] = true;
        let mut out = vec![v];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                        out.push(w);
                    }
                }
            }
            frontier = next;
        }
        out.sort_unstable();
        out
    }
}

/// Degeneracy and an elimination ordering obtained by repeatedly removing a
/// vertex of minimum remaining degree (smallest id on ties).
///
/// Every vertex has at most `d` neighbors that come later in the ordering.
pub fn degeneracy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = g.max_degree();
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    let mut low = 0;
    for _ in 0..n {
        low = low.min(max_deg);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().unwrap();
        d = d.max(low);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
            }
        }
        low = low.saturating_sub(1);
    }
    (d, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn forward_degree_ok(g: &Graph, order: &[usize], d: usize) -> bool {
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        (0..g.n()).all(|v| g.neighbors(v).iter().filter(|&&u| pos[u] > pos[v]).count() <= d)
    }

    #[test]
    fn degeneracy_of_small_graphs() {
        assert_eq!(degeneracy(&complete(3)).0, 2);
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(degeneracy(&star).0, 1);
        assert_eq!(degeneracy(&Graph::empty(4)).0, 0);
        assert_eq!(degeneracy(&Graph::empty(0)), (0, vec![]));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn closed_neighborhood_is_sorted() {
        let g = Graph::from_edges(4, &[(2, 0), (2, 3)]).unwrap();
        assert_eq!(g.closed_neighborhood(2), vec![0, 2, 3]);
        assert_eq!(g.closed_neighborhood(1), vec![1]);
        assert_eq!(g.closed_neighborhood(3), vec![2, 3]);
    }

    #[test]
    fn ball_on_path() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.ball(0, 2), vec![0, 1, 2]);
        assert_eq!(g.ball(2, 1), vec![1, 2, 3]);
    }

    proptest::proptest! {
        #[test]
        fn degeneracy_ordering_is_consistent(n in 1usize..14, raw in proptest::collection::vec((0usize..14, 0usize..14), 0..40)) {
            let mut edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort();
            edges.dedup();
            let g = Graph::from_edges(n, &edges).unwrap();
            let (d, order) = degeneracy(&g);
            proptest::prop_assert!(d <= g.max_degree());
            proptest::prop_assert_eq!(order.len(), n);
            proptest::prop_assert!(forward_degree_ok(&g, &order, d));
        }
    }
}
