//! Instance generators from Equitable Coloring and Independent Set, with
//! role maps, solution pull-backs and the decomposition lift for the
//! coloring construction.
//!
//! Generated vertices are numbered by role: `x`, then `y`, then `M`, the
//! `c` checkers, the `alpha` forcers, and finally the pendants grouped by
//! hub in that same order.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{DsqInstance, QuotaPair, VertexSet};
use crate::oracle::{EcInstance, IsInstance};
use crate::treewidth::{validate_decomposition, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Ec,
    Is,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Ec => "ec",
            ReductionKind::Is => "is",
        }
    }
}

/// What a generated vertex stands for. Source vertices and colors are
/// 0-based; the coloring reduction uses `i`, the independent set reduction
/// leaves it 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    X {
        v: usize,
        i: usize,
    },
    Y {
        u: usize,
        v: usize,
        i: usize,
    },
    M,
    C {
        i: usize,
    },
    Alpha {
        v: Option<usize>,
    },
    /// `owner` is the generated id of the hub.
    Pendant {
        owner: usize,
        j: usize,
    },
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub kind: ReductionKind,
    pub source: Graph,
    pub r: usize,
    pub dsq: DsqInstance,
    pub roles: Vec<Role>,
}

/// Quota of the `x` vertices in the coloring construction.
pub const X_QUOTA: QuotaPair = QuotaPair { lo: 2, up: 3 };

fn q(lo: usize, up: usize) -> QuotaPair {
    QuotaPair { lo, up }
}

/// Equitable `r`-coloring of `h` to DSQ with budget `2n + r + 1`.
pub fn reduce_ec_to_dsq(h: &Graph, r: usize) -> Result<ReductionArtifact> {
    let ec = EcInstance::new(h.clone(), r)?;
    let n = h.n();
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let (small, large) = (ec.small(), ec.large());
    let pendants = 2 * n + r + 2;

    let x = |v: usize, i: usize| v * r + i;
    let y = |e: usize, i: usize| r * n + e * r + i;
    let m = r * n + r * edges.len();
    let c = |i: usize| m + 1 + i;
    let alpha = |v: usize| m + 1 + r + v;
    let hubs: Vec<usize> = std::iter::once(m)
        .chain((0..r).map(c))
        .chain((0..n).map(alpha))
        .collect();
    let total = m + 1 + r + n + pendants * hubs.len();

    let mut roles = Vec::with_capacity(total);
    let mut quotas = Vec::with_capacity(total);
    // Every x_v^i is dominated by c^i and alpha_v, both forced into any
    // solution, and by itself when chosen.
    for v in 0..n {
        for i in 0..r {
            roles.push(Role::X { v, i });
            quotas.push(X_QUOTA);
        }
    }
    for &(u, v) in &edges {
        for i in 0..r {
            roles.push(Role::Y { u, v, i });
            quotas.push(q(1, 2));
        }
    }
    roles.push(Role::M);
    quotas.push(q(1, 1));
    for i in 0..r {
        roles.push(Role::C { i });
        quotas.push(q(small + 1, large + 1));
    }
    for v in 0..n {
        roles.push(Role::Alpha { v: Some(v) });
        quotas.push(q(2, 2));
    }

    let mut g_edges = Vec::new();
    for (e, &(u, v)) in edges.iter().enumerate() {
        for i in 0..r {
            g_edges.push((x(u, i), y(e, i)));
            g_edges.push((x(v, i), y(e, i)));
            g_edges.push((y(e, i), m));
        }
    }
    for i in 0..r {
        for v in 0..n {
            g_edges.push((x(v, i), c(i)));
        }
    }
    for v in 0..n {
        for i in 0..r {
            g_edges.push((x(v, i), alpha(v)));
        }
    }
    for &hub in &hubs {
        for j in 0..pendants {
            g_edges.push((hub, roles.len()));
            roles.push(Role::Pendant { owner: hub, j });
            quotas.push(q(1, 1));
        }
    }
    debug_assert_eq!(roles.len(), total);
    let g = Graph::from_edges(total, &g_edges)?;
    let dsq = DsqInstance::new(g, quotas, 2 * n + r + 1)?;
    Ok(ReductionArtifact {
        kind: ReductionKind::Ec,
        source: h.clone(),
        r,
        dsq,
        roles,
    })
}

/// Independent set of size `r` in `h` to DSQ with budget `r`.
pub fn reduce_is_to_dsq(h: &Graph, r: usize) -> Result<ReductionArtifact> {
    let n = h.n();
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let alpha = n + edges.len();
    let total = alpha + 2;
    let mut roles = Vec::with_capacity(total);
    let mut quotas = Vec::with_capacity(total);
    let mut g_edges = Vec::new();
    for v in 0..n {
        roles.push(Role::X { v, i: 0 });
        quotas.push(q(0, 1));
        g_edges.push((v, alpha));
    }
    for (e, &(u, v)) in edges.iter().enumerate() {
        roles.push(Role::Y { u, v, i: 0 });
        quotas.push(q(0, 1));
        g_edges.push((u, n + e));
        g_edges.push((v, n + e));
    }
    roles.push(Role::Alpha { v: None });
    quotas.push(q(r, r));
    roles.push(Role::Pendant { owner: alpha, j: 0 });
    quotas.push(q(0, 0));
    g_edges.push((alpha, alpha + 1));
    let g = Graph::from_edges(total, &g_edges)?;
    let dsq = DsqInstance::new(g, quotas, r)?;
    Ok(ReductionArtifact {
        kind: ReductionKind::Is,
        source: h.clone(),
        r,
        dsq,
        roles,
    })
}

impl ReductionArtifact {
    fn check_witness(&self, witness: &VertexSet) -> Result<()> {
        let violations = self.dsq.verify(witness);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidWitness(violations))
        }
    }

    /// Coloring of the source graph (colors `0..r`) read off a DSQ solution.
    pub fn extract_coloring(&self, witness: &VertexSet) -> Result<Vec<usize>> {
        if self.kind != ReductionKind::Ec {
            return Err(Error::Usage("not a coloring reduction".into()));
        }
        self.check_witness(witness)?;
        let mut color = vec![None; self.source.n()];
        for g in witness.iter() {
            if let Role::X { v, i } = self.roles[g] {
                if color[v].replace(i).is_some() {
                    return Err(Error::InvalidInstance(format!(
                        "source vertex {} received two colors",
                        v + 1
                    )));
                }
            }
        }
        let coloring: Option<Vec<usize>> = color.into_iter().collect();
        let coloring = coloring
            .ok_or_else(|| Error::InvalidInstance("some source vertex is uncolored".into()))?;
        let ec = EcInstance::new(self.source.clone(), self.r)?;
        if !ec.is_equitable(&coloring) {
            return Err(Error::InvalidInstance(
                "pulled-back coloring is not equitable".into(),
            ));
        }
        Ok(coloring)
    }

    /// Independent set of the source graph read off a DSQ solution.
    pub fn extract_is(&self, witness: &VertexSet) -> Result<VertexSet> {
        if self.kind != ReductionKind::Is {
            return Err(Error::Usage("not an independent set reduction".into()));
        }
        self.check_witness(witness)?;
        let s: VertexSet = witness
            .iter()
            .filter_map(|g| match self.roles[g] {
                Role::X { v, .. } => Some(v),
                _ => None,
            })
            .collect();
        if !IsInstance::new(self.source.clone(), self.r).is_independent_set(&s) {
            return Err(Error::InvalidInstance(
                "pulled-back set is not an independent set of the requested size".into(),
            ));
        }
        Ok(s)
    }

    fn index(&self) -> BTreeMap<Role, usize> {
        self.roles
            .iter()
            .enumerate()
            .map(|(g, &r)| (r, g))
            .collect()
    }

    /// Role map text: a header, then one `<vertex> <role>` line per
    /// generated vertex. Ids are 1-based.
    pub fn emit_roles(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "p roles {} {} {}",
            self.kind.name(),
            self.source.n(),
            self.r
        )
        .unwrap();
        for (g, role) in self.roles.iter().enumerate() {
            writeln!(out, "{} {}", g + 1, RoleDisplay(self.kind, *role)).unwrap();
        }
        out
    }

    /// Graphviz rendering of the generated instance, labelled by role and
    /// quota.
    pub fn emit_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", self.kind.name()).unwrap();
        writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
        for (g, role) in self.roles.iter().enumerate() {
            let quota = self.dsq.quota(g);
            let shape = match role {
                Role::Pendant { .. } => ", shape=point",
                Role::M | Role::C { .. } | Role::Alpha { .. } => ", shape=box",
                _ => "",
            };
            writeln!(
                out,
                "  n{} [label=\"{}\\n<{},{}>\"{}];",
                g + 1,
                RoleDisplay(self.kind, *role),
                quota.lo,
                quota.up,
                shape
            )
            .unwrap();
        }
        for (u, v) in self.dsq.graph().edges() {
            writeln!(out, "  n{} -- n{};", u + 1, v + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Rebuilds an artifact from a generated instance and its role map.
    /// The source graph is recovered from the `y` roles.
    pub fn from_roles(dsq: DsqInstance, roles_text: &str) -> Result<Self> {
        let (kind, n_h, r, roles) = parse_roles(roles_text, dsq.n())?;
        let mut edges: Vec<(usize, usize)> = roles
            .iter()
            .filter_map(|role| match role {
                Role::Y { u, v, .. } => Some((*u.min(v), *u.max(v))),
                _ => None,
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let source = Graph::from_edges(n_h, &edges)?;
        let expected = match kind {
            ReductionKind::Ec => reduce_ec_to_dsq(&source, r)?,
            ReductionKind::Is => reduce_is_to_dsq(&source, r)?,
        };
        if expected.roles != roles || expected.dsq != dsq {
            return Err(Error::InvalidInstance(
                "instance and role map do not describe a generated reduction".into(),
            ));
        }
        Ok(expected)
    }
}

struct RoleDisplay(ReductionKind, Role);

impl fmt::Display for RoleDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ec = self.0 == ReductionKind::Ec;
        match self.1 {
            Role::X { v, i } if ec => write!(f, "x {} {}", v + 1, i + 1),
            Role::X { v, .. } => write!(f, "x {}", v + 1),
            Role::Y { u, v, i } if ec => write!(f, "y {} {} {}", u + 1, v + 1, i + 1),
            Role::Y { u, v, .. } => write!(f, "y {} {}", u + 1, v + 1),
            Role::M => write!(f, "M"),
            Role::C { i } => write!(f, "c {}", i + 1),
            Role::Alpha { v: Some(v) } => write!(f, "alpha {}", v + 1),
            Role::Alpha { v: None } => write!(f, "alpha"),
            Role::Pendant { owner, j } => write!(f, "pendant {} {}", owner + 1, j + 1),
        }
    }
}

/// Parses a role map for an instance with `n` generated vertices.
pub fn parse_roles(text: &str, n: usize) -> Result<(ReductionKind, usize, usize, Vec<Role>)> {
    let mut header = None;
    let mut roles: Vec<Option<Role>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with("c ") || line == "c" {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |j: usize| -> Result<usize> {
            let t = toks
                .get(j)
                .ok_or_else(|| Error::parse(ln, "missing field"))?;
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("invalid number '{t}'")))
        };
        let one = |j: usize| -> Result<usize> {
            match num(j)? {
                0 => Err(Error::parse(ln, "ids are 1-based")),
                x => Ok(x - 1),
            }
        };
        if toks[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(ln, "duplicate header"));
            }
            if toks.len() != 5 || toks[1] != "roles" {
                return Err(Error::parse(ln, "expected 'p roles <ec|is> <n> <r>'"));
            }
            let kind = match toks[2] {
                "ec" => ReductionKind::Ec,
                "is" => ReductionKind::Is,
                other => return Err(Error::parse(ln, format!("unknown reduction '{other}'"))),
            };
            header = Some((kind, num(3)?, num(4)?));
            continue;
        }
        let (kind, _, _) = header.ok_or_else(|| Error::parse(ln, "role before header"))?;
        let ec = kind == ReductionKind::Ec;
        let g = one(0)?;
        if g >= n {
            return Err(Error::parse(ln, format!("vertex {} out of range", g + 1)));
        }
        let name = *toks
            .get(1)
            .ok_or_else(|| Error::parse(ln, "missing role"))?;
        let (role, arity) = match (name, ec) {
            ("x", true) => (
                Role::X {
                    v: one(2)?,
                    i: one(3)?,
                },
                4,
            ),
            ("x", false) => (Role::X { v: one(2)?, i: 0 }, 3),
            ("y", true) => (
                Role::Y {
                    u: one(2)?,
                    v: one(3)?,
                    i: one(4)?,
                },
                5,
            ),
            ("y", false) => (
                Role::Y {
                    u: one(2)?,
                    v: one(3)?,
                    i: 0,
                },
                4,
            ),
            ("M", true) => (Role::M, 2),
            ("c", true) => (Role::C { i: one(2)? }, 3),
            ("alpha", true) => (Role::Alpha { v: Some(one(2)?) }, 3),
            ("alpha", false) => (Role::Alpha { v: None }, 2),
            ("pendant", _) => (
                Role::Pendant {
                    owner: one(2)?,
                    j: one(3)?,
                },
                4,
            ),
            _ => return Err(Error::parse(ln, format!("unknown role '{name}'"))),
        };
        if toks.len() != arity {
            return Err(Error::parse(ln, "wrong number of fields"));
        }
        if roles[g].replace(role).is_some() {
            return Err(Error::parse(ln, format!("vertex {} listed twice", g + 1)));
        }
    }
    let (kind, n_h, r) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
    let roles: Option<Vec<Role>> = roles.into_iter().collect();
    let roles = roles.ok_or_else(|| Error::parse(0, "some vertex has no role"))?;
    Ok((kind, n_h, r, roles))
}

/// Decomposition of a generated coloring instance from one of its source
/// graph: every occurrence of `v` becomes `alpha_v` and all `x_v^i`, every
/// bag also holds `M` and all checkers, and each `y` and pendant hangs off a
/// node holding its neighbors. `M` joins each `y` bag, since `y` is adjacent
/// to it.
pub fn lift_td_ec(td: &TreeDecomposition, art: &ReductionArtifact) -> Result<TreeDecomposition> {
    if art.kind != ReductionKind::Ec {
        return Err(Error::Usage("not a coloring reduction".into()));
    }
    validate_decomposition(&art.source, td).map_err(Error::InvalidDecomposition)?;
    let idx = art.index();
    let r = art.r;
    let m = idx[&Role::M];
    let hub_core: Vec<usize> = std::iter::once(m)
        .chain((0..r).map(|i| idx[&Role::C { i }]))
        .collect();

    let mut bags: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|bag| {
            let mut b = hub_core.clone();
            for &v in bag {
                b.push(idx[&Role::Alpha { v: Some(v) }]);
                b.extend((0..r).map(|i| idx[&Role::X { v, i }]));
            }
            b.sort_unstable();
            b
        })
        .collect();
    let mut edges = td.edges.clone();
    let home = |pred: &dyn Fn(&[usize]) -> bool| td.bags.iter().position(|b| pred(b)).unwrap();

    for (u, v) in art.source.edges() {
        let at = home(&|b| b.contains(&u) && b.contains(&v));
        for i in 0..r {
            let mut b = vec![
                idx[&Role::X { v: u, i }],
                idx[&Role::Y { u, v, i }],
                idx[&Role::X { v, i }],
                m,
            ];
            b.sort_unstable();
            edges.push((at, bags.len()));
            bags.push(b);
        }
    }
    for (g, role) in art.roles.iter().enumerate() {
        if let Role::Pendant { owner, .. } = *role {
            let at = match art.roles[owner] {
                Role::Alpha { v: Some(v) } => home(&|b| b.contains(&v)),
                _ => 0,
            };
            edges.push((at, bags.len()));
            bags.push(vec![owner.min(g), owner.max(g)]);
        }
    }
    Ok(TreeDecomposition { bags, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy;
    use crate::oracle::{brute_ec, brute_is};
    use crate::random;
    use crate::scq::{dsq_bounded_degree_to_scq, solve_scq_branching};
    use crate::treewidth::{heuristic_decomposition, Strategy};

    fn edge() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    /// Exact DSQ answer through the set-cover bridge.
    fn exact(dsq: &DsqInstance) -> Option<VertexSet> {
        let (scq, map) = dsq_bounded_degree_to_scq(dsq);
        solve_scq_branching(&scq).map(|c| c.into_iter().map(|i| map[i]).collect())
    }

    #[test]
    fn ec_single_edge_two_colors() {
        let art = reduce_ec_to_dsq(&edge(), 2).unwrap();
        assert_eq!(art.dsq.k(), 7);
        let n = 2 * 2 + 2 + 1 + 2 + 2 + (4 + 2 + 2) * (1 + 2 + 2);
        assert_eq!(art.dsq.n(), n);
        let c0 = art.index()[&Role::C { i: 0 }];
        assert_eq!(art.dsq.quota(c0), q(2, 2));
        let sol = exact(&art.dsq).expect("edge is equitably 2-colorable");
        let col = art.extract_coloring(&sol).unwrap();
        assert_ne!(col[0], col[1]);
    }

    #[test]
    fn ec_x_quota_accounts_for_forcer() {
        // With x quotas <1,2> the forced alpha_v pushes the chosen x_v^i to 3.
        let art = reduce_ec_to_dsq(&edge(), 2).unwrap();
        let quotas = art
            .roles
            .iter()
            .zip(art.dsq.quotas())
            .map(|(role, &qt)| {
                if matches!(role, Role::X { .. }) {
                    q(1, 2)
                } else {
                    qt
                }
            })
            .collect();
        let narrow = DsqInstance::new(art.dsq.graph().clone(), quotas, art.dsq.k()).unwrap();
        assert_eq!(exact(&narrow), None);
        assert!(exact(&art.dsq).is_some());
    }

    #[test]
    fn ec_triangle_two_colors_is_no() {
        let k3 = random::complete(3);
        assert_eq!(
            brute_ec(&EcInstance::new(k3.clone(), 2).unwrap()).unwrap(),
            None
        );
        let art = reduce_ec_to_dsq(&k3, 2).unwrap();
        assert_eq!(exact(&art.dsq), None);
    }

    #[test]
    fn ec_four_cycle_pulls_back_to_bipartition() {
        let c4 = random::cycle(4);
        let art = reduce_ec_to_dsq(&c4, 2).unwrap();
        let sol = exact(&art.dsq).unwrap();
        let col = art.extract_coloring(&sol).unwrap();
        assert_eq!(col[0], col[2]);
        assert_eq!(col[1], col[3]);
        assert_ne!(col[0], col[1]);
    }

    #[test]
    fn ec_witness_without_forcer_is_rejected() {
        let art = reduce_ec_to_dsq(&edge(), 2).unwrap();
        let sol = exact(&art.dsq).unwrap();
        let alpha = art.index()[&Role::Alpha { v: Some(0) }];
        let broken: VertexSet = sol.iter().filter(|&g| g != alpha).collect();
        assert!(matches!(
            art.extract_coloring(&broken),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn is_single_edge() {
        let one = reduce_is_to_dsq(&edge(), 1).unwrap();
        assert_eq!(one.dsq.n(), 5);
        assert_eq!(one.dsq.k(), 1);
        let sol = exact(&one.dsq).unwrap();
        assert_eq!(one.extract_is(&sol).unwrap().len(), 1);
        let two = reduce_is_to_dsq(&edge(), 2).unwrap();
        assert_eq!(exact(&two.dsq), None);
        assert_eq!(brute_is(&IsInstance::new(edge(), 2)).unwrap(), None);
    }

    #[test]
    fn is_five_cycle() {
        let art = reduce_is_to_dsq(&random::cycle(5), 2).unwrap();
        let sol = exact(&art.dsq).unwrap();
        let s = art.extract_is(&sol).unwrap();
        assert!(!random::cycle(5).has_edge(s.as_slice()[0], s.as_slice()[1]));
    }

    #[test]
    fn is_witness_with_alpha_is_rejected() {
        let art = reduce_is_to_dsq(&edge(), 1).unwrap();
        let alpha = art.index()[&Role::Alpha { v: None }];
        let bad = VertexSet::new(vec![alpha]);
        assert!(matches!(
            art.extract_is(&bad),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn is_output_has_degeneracy_two() {
        for h in [
            edge(),
            random::cycle(5),
            random::complete(4),
            random::grid(2, 3),
        ] {
            let art = reduce_is_to_dsq(&h, 2).unwrap();
            assert_eq!(degeneracy(art.dsq.graph()).0, 2);
        }
    }

    #[test]
    fn lifted_decomposition_is_valid() {
        let art = reduce_ec_to_dsq(&edge(), 2).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
        };
        let lifted = lift_td_ec(&td, &art).unwrap();
        assert_eq!(validate_decomposition(art.dsq.graph(), &lifted), Ok(()));
        assert!(lifted.width() < 6 * 2);

        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let art = reduce_ec_to_dsq(&tree, 2).unwrap();
        let td = heuristic_decomposition(&tree, Strategy::MinFill);
        assert_eq!(td.width(), 1);
        let lifted = lift_td_ec(&td, &art).unwrap();
        assert_eq!(validate_decomposition(art.dsq.graph(), &lifted), Ok(()));
        assert!(lifted.width() <= 11);
    }

    #[test]
    fn roles_round_trip() {
        for art in [
            reduce_ec_to_dsq(&random::cycle(4), 3).unwrap(),
            reduce_is_to_dsq(&random::cycle(4), 2).unwrap(),
        ] {
            let text = art.emit_roles();
            let back = ReductionArtifact::from_roles(art.dsq.clone(), &text).unwrap();
            assert_eq!(back.roles, art.roles);
            assert_eq!(back.source, art.source);
        }
        let is = reduce_is_to_dsq(&edge(), 1).unwrap().emit_roles();
        assert_eq!(
            is,
            "p roles is 2 1\n1 x 1\n2 x 2\n3 y 1 2\n4 alpha\n5 pendant 4 1\n"
        );
    }

    #[test]
    fn roles_parse_errors() {
        assert!(parse_roles("1 x 1", 1).is_err());
        assert!(parse_roles("p roles is 1 1\n1 x 1\n1 x 1", 1).is_err());
        assert!(parse_roles("p roles is 1 1\n1 bogus", 1).is_err());
        assert!(parse_roles("p roles is 1 1\n", 1).is_err());
    }

    #[test]
    fn dot_mentions_every_vertex() {
        let art = reduce_is_to_dsq(&edge(), 1).unwrap();
        let dot = art.emit_dot();
        assert!(dot.starts_with("graph is {"));
        assert_eq!(dot.matches(" -- ").count(), art.dsq.graph().m());
        assert!(dot.contains("alpha\\n<1,1>"));
    }
}
