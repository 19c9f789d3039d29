//! Line-oriented text formats.
//!
//! DSQ files:
//!
//! ```text
//! c comment
//! p dsq <n> <m> <k>
//! e <u> <v>
//! q <v> <lo> <up>
//! ```
//!
//! SCQ files:
//!
//! ```text
//! p scq <|U|> <|F|> <k>
//! q <e> <lo> <up>
//! s <e1> <e2> ...
//! ```
//!
//! Plain graphs are read from PACE `.gr` (`p tw n m` followed by `u v`
//! lines) or DIMACS (`p edge n m` followed by `e u v` lines). All ids are
//! 1-based in files.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{DsqInstance, QuotaPair, ScqInstance};

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{tok}'")))
}

fn parse_id(tok: Option<&str>, line: usize, bound: usize, what: &str) -> Result<usize> {
    let id = parse_num(tok, line, what)?;
    if id == 0 || id > bound {
        return Err(Error::parse(
            line,
            format!("{what} {id} out of range 1..={bound}"),
        ));
    }
    Ok(id - 1)
}

fn expect_end<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        Some(t) => Err(Error::parse(
            line,
            format!("unexpected trailing token '{t}'"),
        )),
        None => Ok(()),
    }
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse_dsq(text: &str) -> Result<DsqInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'p dsq' header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("dsq") {
        return Err(Error::parse(hline, "expected header 'p dsq <n> <m> <k>'"));
    }
    let n = parse_num(toks.next(), hline, "vertex count")?;
    let m = parse_num(toks.next(), hline, "edge count")?;
    let k = parse_num(toks.next(), hline, "budget")?;
    expect_end(toks, hline)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut quotas: Vec<Option<QuotaPair>> = vec![None; n];
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("e") => {
                let u = parse_id(toks.next(), ln, n, "vertex")?;
                let v = parse_id(toks.next(), ln, n, "vertex")?;
                expect_end(toks, ln)?;
                if u == v {
                    return Err(Error::parse(ln, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(
                        ln,
                        format!("duplicate edge {} {}", u + 1, v + 1),
                    ));
                }
                edges.push((u, v));
            }
            Some("q") => {
                let v = parse_id(toks.next(), ln, n, "vertex")?;
                let lo = parse_num(toks.next(), ln, "lower quota")?;
                let up = parse_num(toks.next(), ln, "upper quota")?;
                expect_end(toks, ln)?;
                if lo > up {
                    return Err(Error::parse(
                        ln,
                        format!("quota <{lo},{up}> of vertex {} has lo > up", v + 1),
                    ));
                }
                if quotas[v].replace(QuotaPair { lo, up }).is_some() {
                    return Err(Error::parse(
                        ln,
                        format!("second quota line for vertex {}", v + 1),
                    ));
                }
            }
            Some(t) => return Err(Error::parse(ln, format!("unknown line type '{t}'"))),
            None => unreachable!(),
        }
    }
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::from_edges(n, &edges)?;
    let quotas = quotas
        .into_iter()
        .map(|q| q.unwrap_or(QuotaPair { lo: 1, up: k }))
        .collect();
    DsqInstance::new(graph, quotas, k)
}

/// Canonical form: edges in lexicographic order, then one quota line per vertex.
pub fn emit_dsq(inst: &DsqInstance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    writeln!(out, "p dsq {} {} {}", g.n(), g.m(), inst.k()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for (v, q) in inst.quotas().iter().enumerate() {
        writeln!(out, "q {} {} {}", v + 1, q.lo, q.up).unwrap();
    }
    out
}

pub fn parse_scq(text: &str) -> Result<ScqInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'p scq' header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("scq") {
        return Err(Error::parse(
            hline,
            "expected header 'p scq <|U|> <|F|> <k>'",
        ));
    }
    let universe = parse_num(toks.next(), hline, "universe size")?;
    let family = parse_num(toks.next(), hline, "family size")?;
    let k = parse_num(toks.next(), hline, "budget")?;
    expect_end(toks, hline)?;

    let mut sets = Vec::with_capacity(family);
    let mut quotas: Vec<Option<QuotaPair>> = vec![None; universe];
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("s") => {
                let mut set = Vec::new();
                for t in toks {
                    set.push(parse_id(Some(t), ln, universe, "element")?);
                }
                if set.is_empty() {
                    return Err(Error::parse(ln, "empty set"));
                }
                sets.push(set);
            }
            Some("q") => {
                let e = parse_id(toks.next(), ln, universe, "element")?;
                let lo = parse_num(toks.next(), ln, "lower quota")?;
                let up = parse_num(toks.next(), ln, "upper quota")?;
                expect_end(toks, ln)?;
                if lo > up {
                    return Err(Error::parse(
                        ln,
                        format!("quota <{lo},{up}> of element {} has lo > up", e + 1),
                    ));
                }
                if quotas[e].replace(QuotaPair { lo, up }).is_some() {
                    return Err(Error::parse(
                        ln,
                        format!("second quota line for element {}", e + 1),
                    ));
                }
            }
            Some(t) => return Err(Error::parse(ln, format!("unknown line type '{t}'"))),
            None => unreachable!(),
        }
    }
    if sets.len() != family {
        return Err(Error::parse(
            hline,
            format!("header announces {family} sets, found {}", sets.len()),
        ));
    }
    let quotas = quotas
        .into_iter()
        .map(|q| q.unwrap_or(QuotaPair { lo: 1, up: k }))
        .collect();
    ScqInstance::new(universe, sets, quotas, k)
}

pub fn emit_scq(inst: &ScqInstance) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p scq {} {} {}",
        inst.universe(),
        inst.sets().len(),
        inst.k()
    )
    .unwrap();
    for (e, q) in inst.quotas().iter().enumerate() {
        writeln!(out, "q {} {} {}", e + 1, q.lo, q.up).unwrap();
    }
    for set in inst.sets() {
        out.push('s');
        for &e in set {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a plain graph from PACE `.gr`, DIMACS `p edge`, or the graph part
/// of a DSQ file.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'p' header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") {
        return Err(Error::parse(hline, "expected 'p <format> <n> <m>' header"));
    }
    let kind = toks.next().unwrap_or("");
    if kind == "dsq" {
        return parse_dsq(text).map(|inst| inst.graph().clone());
    }
    if kind != "tw" && kind != "edge" && kind != "ds" {
        return Err(Error::parse(
            hline,
            format!("unsupported graph format '{kind}'"),
        ));
    }
    let n = parse_num(toks.next(), hline, "vertex count")?;
    let m = parse_num(toks.next(), hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (ln, l) in lines {
        let mut toks = l.split_whitespace().peekable();
        if toks.peek() == Some(&"e") {
            toks.next();
        }
        let u = parse_id(toks.next(), ln, n, "vertex")?;
        let v = parse_id(toks.next(), ln, n, "vertex")?;
        expect_end(toks, ln)?;
        if u == v {
            return Err(Error::parse(ln, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(
                ln,
                format!("duplicate edge {} {}", u + 1, v + 1),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges)
}

/// PACE `.gr` rendering.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p tw {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Whitespace-separated 1-based ids; an optional leading `witness:` or
/// `chosen:` label and `c` comment lines are ignored.
pub fn parse_id_list(text: &str, bound: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (ln, l) in content_lines(text) {
        let body = l
            .strip_prefix("witness:")
            .or_else(|| l.strip_prefix("chosen:"))
            .unwrap_or(l);
        for tok in body.split_whitespace() {
            out.push(parse_id(Some(tok), ln, bound, "id")?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let inst = parse_dsq("p dsq 1 0 0\nq 1 0 0").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.k(), 0);
        assert_eq!(inst.quota(0), QuotaPair { lo: 0, up: 0 });
    }

    #[test]
    fn single_edge_instance() {
        let inst = parse_dsq("p dsq 2 1 1\ne 1 2\nq 1 1 1\nq 2 1 1").unwrap();
        assert!(inst.graph().has_edge(0, 1));
        assert_eq!(inst.quota(0), QuotaPair { lo: 1, up: 1 });
        assert_eq!(inst.quota(1), QuotaPair { lo: 1, up: 1 });
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn duplicate_edge_reports_line() {
        match parse_dsq("p dsq 2 1 1\ne 1 2\ne 1 2") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("p dsq x 0 0", 1),
            ("p dsx 1 0 0", 1),
            ("p dsq 2 0 1\nq 1 2 1", 2),
            ("p dsq 2 1 1\nc hi\ne 1 3", 3),
            ("p dsq 2 1 1\ne 0 1", 2),
            ("p dsq 2 1 1\ne 1 1", 2),
            ("p dsq 2 0 1\nq 1 0 1\nq 1 0 1", 3),
        ];
        for (text, want) in cases {
            match parse_dsq(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn missing_quota_defaults_to_classical_domination() {
        let inst = parse_dsq("c plain DS\np dsq 3 2 2\ne 1 2\ne 2 3\n").unwrap();
        for v in 0..3 {
            assert_eq!(inst.quota(v), QuotaPair { lo: 1, up: 2 });
        }
    }

    #[test]
    fn upper_quota_above_budget_is_kept() {
        let inst = parse_dsq("p dsq 1 0 1\nq 1 0 9\n").unwrap();
        assert_eq!(inst.quota(0).up, 9);
        assert_eq!(inst.effective_up(0), 1);
    }

    #[test]
    fn scq_round_trip() {
        let text = "p scq 2 3 2\nq 1 1 1\nq 2 2 2\ns 1\ns 1 2\ns 2\n";
        let inst = parse_scq(text).unwrap();
        assert_eq!(inst.sets(), &[vec![0], vec![0, 1], vec![1]]);
        assert_eq!(emit_scq(&inst), text);
        assert!(parse_scq("p scq 2 1 1\ns\n").is_err());
        assert!(parse_scq("p scq 2 1 1\ns 3\n").is_err());
    }

    #[test]
    fn graph_formats() {
        let pace = parse_graph("p tw 3 2\n1 2\n2 3\n").unwrap();
        let dimacs = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(pace, dimacs);
        assert_eq!(emit_graph(&pace), "p tw 3 2\n1 2\n2 3\n");
        let from_dsq = parse_graph("p dsq 3 2 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(from_dsq, pace);
    }

    #[test]
    fn id_lists() {
        assert_eq!(parse_id_list("witness: 2 3\n", 3).unwrap(), vec![1, 2]);
        assert_eq!(parse_id_list("", 3).unwrap(), Vec::<usize>::new());
        assert!(parse_id_list("4", 3).is_err());
    }

    proptest::proptest! {
        #[test]
        fn emit_parse_round_trip(
            n in 0usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10), 0..25),
            quotas in proptest::collection::vec((0usize..5, 0usize..5), 10),
            k in 0usize..7,
        ) {
            let mut edges: Vec<(usize, usize)> = if n == 0 { vec![] } else {
                raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.min(b), a.max(b))).collect()
            };
            edges.sort();
            edges.dedup();
            let g = Graph::from_edges(n, &edges).unwrap();
            let q = quotas[..n].iter().map(|&(a, b)| QuotaPair { lo: a.min(b), up: a.max(b) }).collect();
            let inst = DsqInstance::new(g, q, k).unwrap();
            let text = emit_dsq(&inst);
            let back = parse_dsq(&text).unwrap();
            proptest::prop_assert_eq!(&back, &inst);
            proptest::prop_assert_eq!(emit_dsq(&back), text);
        }
    }
}
