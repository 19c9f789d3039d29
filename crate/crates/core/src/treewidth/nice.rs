use serde::Serialize;

use super::{validate_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NiceKind {
    Leaf,
    IntroduceVertex(usize),
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice tree decomposition. Nodes are stored children-first, so a
/// forward scan is a valid bottom-up evaluation order; the root is the last
/// node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    pub fn count_introduce_edges(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NiceKind::IntroduceEdge(..)))
            .count()
    }

    /// The same bags viewed as a plain tree decomposition.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::with_capacity(self.nodes.len().saturating_sub(1));
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            edges,
        }
    }

    /// Checks every structural property of the nice form against `g`.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), Vec<String>> {
        let mut errors = Vec::new();
        if self.nodes.is_empty() {
            return Err(vec!["no nodes".into()]);
        }
        if !self.nodes[self.root()].bag.is_empty() {
            errors.push("root bag is not empty".into());
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        let mut introduced = std::collections::HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                if c >= i {
                    errors.push(format!("node {i} has child {c} stored after it"));
                    continue;
                }
                parent_count[c] += 1;
            }
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                errors.push(format!("node {i} bag is not sorted and distinct"));
            }
            let child_bag = |j: usize| &self.nodes[node.children[j]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::IntroduceVertex(v) => {
                    node.children.len() == 1 && {
                        let cb = child_bag(0);
                        !cb.contains(&v) && with_vertex(cb, v) == node.bag
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && {
                        let cb = child_bag(0);
                        cb.contains(&v) && without_vertex(cb, v) == node.bag
                    }
                }
                NiceKind::IntroduceEdge(u, v) => {
                    *introduced.entry((u.min(v), u.max(v))).or_insert(0) += 1;
                    node.children.len() == 1
                        && *child_bag(0) == node.bag
                        && node.bag.contains(&u)
                        && node.bag.contains(&v)
                        && u < g.n()
                        && v < g.n()
                        && g.has_edge(u, v)
                }
                NiceKind::Join => {
                    node.children.len() == 2
                        && *child_bag(0) == node.bag
                        && *child_bag(1) == node.bag
                }
            };
            if !ok {
                errors.push(format!("node {i} violates the {:?} shape", node.kind));
            }
        }
        for (i, &p) in parent_count.iter().enumerate() {
            let want = usize::from(i != self.root());
            if p != want {
                errors.push(format!("node {i} has {p} parents"));
            }
        }
        for (u, v) in g.edges() {
            match introduced.get(&(u, v)) {
                Some(1) => {}
                Some(c) => errors.push(format!("edge {u}-{v} introduced {c} times")),
                None => errors.push(format!("edge {u}-{v} never introduced")),
            }
        }
        if introduced.len() != g.m() {
            errors.push("introduce-edge nodes for non-edges".into());
        }
        if let Err(td_errors) = validate_decomposition(g, &self.to_tree_decomposition()) {
            errors.extend(td_errors.into_iter().map(|e| e.to_string()));
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }
}

fn with_vertex(bag: &[usize], v: usize) -> Vec<usize> {
    let mut out = bag.to_vec();
    let pos = out.binary_search(&v).unwrap_or_else(|p| p);
    out.insert(pos, v);
    out
}

fn without_vertex(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

struct Builder<'g> {
    g: &'g Graph,
    nodes: Vec<NiceNode>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Forgets `top`'s bag down to `target` then introduces up to it. Each
    /// forget of `u` is preceded by introduce-edge nodes for the edges from
    /// `u` to vertices still in the bag; `u`'s neighbors forgotten earlier
    /// already introduced their edge to `u` the same way.
    fn chain(&mut self, mut top: usize, target: &[usize]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &u in current.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag = self.nodes[top].bag.clone();
            for &w in &bag {
                if w != u && self.g.has_edge(u, w) {
                    top = self.push(NiceKind::IntroduceEdge(u, w), bag.clone(), vec![top]);
                }
            }
            top = self.push(NiceKind::Forget(u), without_vertex(&bag, u), vec![top]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let bag = with_vertex(&self.nodes[top].bag, v);
            top = self.push(NiceKind::IntroduceVertex(v), bag, vec![top]);
        }
        top
    }
}

/// Nice decomposition of the same width, rooted at bag 0 of `td`.
///
/// Multiple children are combined by a left-deep chain of binary joins;
/// introduce and forget chains change one vertex at a time.
pub fn make_nice(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    validate_decomposition(g, td).map_err(Error::InvalidDecomposition)?;
    let adj = td.tree_adjacency();
    let nb = td.bags.len();

    let mut parent = vec![usize::MAX; nb];
    let mut order = Vec::with_capacity(nb);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }

    let mut b = Builder {
        g,
        nodes: Vec::with_capacity(4 * nb),
    };
    let mut top_of = vec![usize::MAX; nb];
    for &t in order.iter().rev() {
        let bag = &td.bags[t];
        let mut tops: Vec<usize> = adj[t]
            .iter()
            .filter(|&&c| c != t && parent[c] == t)
            .map(|&c| b.chain(top_of[c], bag))
            .collect();
        let top = if tops.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            b.chain(leaf, bag)
        } else {
            let mut acc = tops.remove(0);
            for other in tops {
                acc = b.push(NiceKind::Join, bag.clone(), vec![acc, other]);
            }
            acc
        };
        top_of[t] = top;
    }
    let root = b.chain(top_of[0], &[]);
    debug_assert_eq!(root, b.nodes.len() - 1);
    Ok(NiceTreeDecomposition { nodes: b.nodes })
}
