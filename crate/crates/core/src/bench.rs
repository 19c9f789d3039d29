//! Corpus runner that times several DSQ solvers and cross-checks them.

use std::path::Path;
use std::time::Instant;

use crate::dp::{solve_with_heuristic, DpOptions, JoinMode};
use crate::error::{Error, Result};
use crate::format::parse_dsq;
use crate::instance::{DsqInstance, VertexSet};
use crate::oracle::brute_dsq;
use crate::par;
use crate::treewidth::Strategy;

type Solver = dyn Fn(&DsqInstance) -> Result<Option<VertexSet>> + Sync + Send;

pub struct BenchAlgo {
    pub name: String,
    pub run: Box<Solver>,
}

impl BenchAlgo {
    pub fn new(
        name: &str,
        run: impl Fn(&DsqInstance) -> Result<Option<VertexSet>> + Sync + Send + 'static,
    ) -> Self {
        BenchAlgo {
            name: name.to_string(),
            run: Box::new(run),
        }
    }
}

/// Naive-join DP, fast-join DP and brute force.
pub fn default_algos(parallel: bool) -> Vec<BenchAlgo> {
    let dp = move |join: JoinMode| {
        move |i: &DsqInstance| {
            let opts = DpOptions { join, parallel };
            Ok(solve_with_heuristic(i, Strategy::MinFill, opts)?
                .solution
                .map(|s| s.witness))
        }
    };
    vec![
        BenchAlgo::new("dp-naive", dp(JoinMode::Naive)),
        BenchAlgo::new("dp-fast", dp(JoinMode::Fast)),
        BenchAlgo::new("brute", brute_dsq),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(usize),
    No,
    /// The solver declined (oracle guard) or failed.
    Skipped(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes(k) => write!(f, "yes({k})"),
            Verdict::No => write!(f, "no"),
            Verdict::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: String,
    pub algo: String,
    pub wall_ms: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub disagreements: Vec<String>,
}

impl BenchOutcome {
    pub fn table(&self) -> String {
        let mut out = String::from("instance\talgo\ttime_ms\tanswer\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{:.3}\t{}\n",
                r.instance, r.algo, r.wall_ms, r.verdict
            ));
        }
        out
    }

    /// 0 when every pair of answers agrees, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            0
        } else {
            3
        }
    }
}

/// Runs every algorithm on every instance. Instances may run in parallel;
/// rows come back in corpus order.
pub fn run_bench(
    corpus: &[(String, DsqInstance)],
    algos: &[BenchAlgo],
    parallel: bool,
) -> BenchOutcome {
    let per_instance = par::map(corpus, parallel, |(name, inst)| {
        let mut rows = Vec::new();
        let mut problems = Vec::new();
        for algo in algos {
            let start = Instant::now();
            let result = (algo.run)(inst);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let verdict = match result {
                Ok(Some(w)) => {
                    let v = inst.verify(&w);
                    if !v.is_empty() {
                        problems.push(format!("{name}: {} returned an invalid witness", algo.name));
                    }
                    Verdict::Yes(w.len())
                }
                Ok(None) => Verdict::No,
                Err(Error::OracleGuard { .. }) => Verdict::Skipped("too large".into()),
                Err(e) => Verdict::Skipped(e.to_string()),
            };
            rows.push(BenchRow {
                instance: name.clone(),
                algo: algo.name.clone(),
                wall_ms,
                verdict,
            });
        }
        let answered: Vec<&BenchRow> = rows
            .iter()
            .filter(|r| !matches!(r.verdict, Verdict::Skipped(_)))
            .collect();
        for pair in answered.windows(2) {
            if pair[0].verdict != pair[1].verdict {
                problems.push(format!(
                    "{name}: {} says {} but {} says {}",
                    pair[0].algo, pair[0].verdict, pair[1].algo, pair[1].verdict
                ));
            }
        }
        (rows, problems)
    });
    let mut out = BenchOutcome::default();
    for (rows, problems) in per_instance {
        out.rows.extend(rows);
        out.disagreements.extend(problems);
    }
    out
}

/// All `*.dsq` files of `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, DsqInstance)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dsq"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p)?;
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let inst = parse_dsq(&text).map_err(|e| match e {
                Error::Parse { line, message } => Error::Parse {
                    line,
                    message: format!("{name}: {message}"),
                },
                other => other,
            })?;
            Ok((name, inst))
        })
        .collect()
}
