//! Tree decompositions: construction by elimination orderings, validation,
//! PACE `.td` I/O, lower bounds, and conversion to nice form.

mod nice;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{degeneracy, Graph};

pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};

/// A tree of bags. Bags are sorted vertex lists; `edges` are tree edges
/// between bag indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum TdError {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("tree edge ({0}, {1}) references a missing bag")]
    BadTreeEdge(usize, usize),
    #[error("bags do not form a tree")]
    NotATree,
    #[error("bag {bag} references vertex {vertex} outside the graph")]
    VertexOutOfRange { bag: usize, vertex: usize },
    #[error("edge {0}-{1} is not covered by any bag")]
    UncoveredEdge(usize, usize),
    #[error("vertex {0} appears in no bag")]
    MissingVertex(usize),
    #[error("bags containing vertex {0} are not connected")]
    DisconnectedOccurrence(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    MinDegree,
    #[default]
    MinFill,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::MinDegree => "min-degree",
            Strategy::MinFill => "min-fill",
        }
    }
}

impl TreeDecomposition {
    /// Largest bag size minus one (zero for a decomposition of empty bags).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), Vec<TdError>> {
        validate_decomposition(g, self)
    }
}

/// Checks the tree shape, edge coverage, and connectivity of every vertex's
/// occurrence set. Reports every failure found.
pub fn validate_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> std::result::Result<(), Vec<TdError>> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(vec![TdError::NoBags]);
    }
    let mut errors = Vec::new();
    for &(a, b) in &td.edges {
        if a >= nb || b >= nb || a == b {
            errors.push(TdError::BadTreeEdge(a, b));
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let adj = td.tree_adjacency();
    if td.edges.len() != nb - 1 || reachable(&adj, 0, |_| true).len() != nb {
        errors.push(TdError::NotATree);
        return Err(errors);
    }

    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                errors.push(TdError::VertexOutOfRange { bag: i, vertex: v });
            } else {
                occ[v].push(i);
            }
        }
    }
    for (u, v) in g.edges() {
        let covered = occ[u].iter().any(|&b| td.bags[b].contains(&v));
        if !covered {
            errors.push(TdError::UncoveredEdge(u, v));
        }
    }
    let mut member = vec![false; nb];
    for (v, nodes) in occ.iter().enumerate() {
        if nodes.is_empty() {
            errors.push(TdError::MissingVertex(v));
            continue;
        }
        for &b in nodes {
            member[b] = true;
        }
        if reachable(&adj, nodes[0], |b| member[b]).len() != nodes.len() {
            errors.push(TdError::DisconnectedOccurrence(v));
        }
        for &b in nodes {
            member[b] = false;
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out
}

/// Elimination ordering by the given greedy rule; ties go to the smallest id.
pub fn elimination_ordering(g: &Graph, strategy: Strategy) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = match strategy {
            Strategy::MinDegree => *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).unwrap(),
            Strategy::MinFill => *alive
                .iter()
                .min_by_key(|&&v| (fill_in(&adj, v), adj[v].len(), v))
                .unwrap(),
        };
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Decomposition induced by an elimination ordering: the bag of `v` is `v`
/// plus its neighbors at elimination time, attached to the bag of the first
/// of those neighbors to be eliminated. Component roots are chained.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match later.iter().map(|&u| pos[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        for (a_i, &a) in later.iter().enumerate() {
            for &b in &later[a_i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

pub fn heuristic_decomposition(g: &Graph, strategy: Strategy) -> TreeDecomposition {
    decomposition_from_ordering(g, &elimination_ordering(g, strategy))
}

/// `max(degeneracy, minor-min-width)`, a lower bound on the treewidth.
///
/// Minor-min-width repeatedly takes a vertex of minimum degree, records its
/// degree, and contracts it into its minimum-degree neighbor (or deletes it
/// when isolated).
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    let (d, _) = degeneracy(g);
    d.max(minor_min_width(g))
}

fn minor_min_width(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut lb = 0;
    while alive.len() > 1 {
        let v = *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).unwrap();
        lb = lb.max(adj[v].len());
        let target = adj[v].iter().copied().min_by_key(|&u| (adj[u].len(), u));
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        if let Some(t) = target {
            for &u in &nbrs {
                if u != t {
                    adj[u].insert(t);
                    adj[t].insert(u);
                }
            }
        }
        adj[v].clear();
        alive.remove(&v);
    }
    lb
}

/// Parses the PACE 2017 `.td` format (1-based bag ids and vertices).
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let num = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("invalid number '{t}'")))
        };
        match toks[0] {
            "s" => {
                if header.is_some() {
                    return Err(Error::parse(ln, "second 's td' line"));
                }
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(Error::parse(
                        ln,
                        "expected 's td <bags> <max bag size> <n>'",
                    ));
                }
                let h = (num(toks[2])?, num(toks[3])?, num(toks[4])?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (nb, _, n) =
                    header.ok_or_else(|| Error::parse(ln, "bag line before 's td' header"))?;
                let id = toks
                    .get(1)
                    .ok_or_else(|| Error::parse(ln, "missing bag id"))?;
                let id = num(id)?;
                if id == 0 || id > nb {
                    return Err(Error::parse(
                        ln,
                        format!("bag id {id} out of range 1..={nb}"),
                    ));
                }
                let mut bag = Vec::with_capacity(toks.len() - 2);
                for t in &toks[2..] {
                    let v = num(t)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(ln, format!("vertex {v} out of range 1..={n}")));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                if bags[id - 1].replace(bag).is_some() {
                    return Err(Error::parse(ln, format!("bag {id} defined twice")));
                }
            }
            _ => {
                let (nb, _, _) =
                    header.ok_or_else(|| Error::parse(ln, "tree edge before 's td' header"))?;
                if toks.len() != 2 {
                    return Err(Error::parse(ln, "expected tree edge '<i> <j>'"));
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(Error::parse(ln, format!("tree edge {a} {b} out of range")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, max_bag, n) = header.ok_or_else(|| Error::parse(1, "missing 's td' header"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(1, format!("bag {} never defined", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition { bags, edges };
    if td.max_bag_size() != max_bag {
        return Err(Error::parse(
            1,
            format!(
                "header announces max bag size {max_bag}, found {}",
                td.max_bag_size()
            ),
        ));
    }
    Ok((td, n))
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", td.bags.len(), td.max_bag_size(), n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for &v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
