//! Command-line surface. `run` parses arguments, writes to the given sinks
//! and returns the process exit code: 0 yes, 1 no, 2 usage or input error,
//! 3 cross-check failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{default_algos, load_corpus, run_bench};
use crate::dp::{apply_reduction_rule, solve_dp, DpOptions, JoinMode};
use crate::error::{Error, Result};
use crate::format::{emit_dsq, parse_dsq, parse_graph, parse_id_list, parse_scq};
use crate::graph::Graph;
use crate::instance::{DsqInstance, ScqInstance, VertexSet};
use crate::oracle::{brute_dsq, brute_scq};
use crate::par;
use crate::random::{self, DsqShape};
use crate::reductions::{reduce_ec_to_dsq, reduce_is_to_dsq, ReductionArtifact, ReductionKind};
use crate::report::{Answer, RunReport};
use crate::scq::{solve_scq_branching, solve_scq_colorcoding, ScqOutcome};
use crate::subexp::{solve_apex, ApexConfig, Ratio};
use crate::treewidth::{
    emit_td, heuristic_decomposition, make_nice, parse_td, validate_decomposition, Strategy,
    TreeDecomposition,
};

#[derive(Parser, Debug)]
#[command(
    name = "dsq",
    version,
    about = "Exact solvers for dominating set and set cover with quotas"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a DSQ instance.
    SolveDsq(SolveDsqArgs),
    /// Solve an SCQ instance.
    SolveScq(SolveScqArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Map a DSQ witness of a generated instance back to the source problem.
    Extract(ExtractArgs),
    /// Build or check tree decompositions.
    #[command(subcommand)]
    Td(TdCommand),
    /// Check a witness and optionally compare solvers against brute force.
    Verify(VerifyArgs),
    /// Run all DSQ solvers over a directory of `.dsq` files and cross-check them.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DsqAlgo {
    Dp,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScqAlgo {
    Colorcoding,
    Branching,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ec,
    Is,
}

impl From<KindArg> for ReductionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ec => ReductionKind::Ec,
            KindArg::Is => ReductionKind::Is,
        }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Emit one JSON object instead of key: value lines.
    #[arg(long)]
    json: bool,
    /// Include trace lines.
    #[arg(long)]
    trace: bool,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct SolveDsqArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "dp")]
    algo: DsqAlgo,
    #[arg(long, value_enum, default_value = "naive")]
    join: JoinMode,
    #[arg(long, value_enum, default_value = "min-fill")]
    td_strategy: Strategy,
    /// Use this decomposition (PACE `.td`) instead of a heuristic one.
    #[arg(long, conflicts_with = "apex")]
    td: Option<PathBuf>,
    /// Apply the distance-2 deletion rule first.
    #[arg(long)]
    reduce: bool,
    /// Win/win driver for apex-minor-free inputs (implies --reduce).
    #[arg(long)]
    apex: bool,
    /// The constant c_H of the excluded apex graph, as a decimal.
    #[arg(long, default_value = "1", requires = "apex")]
    apex_constant: String,
    #[arg(long, requires = "apex")]
    assert_apex_minor_free: bool,
    #[arg(long, requires = "assert_apex_minor_free")]
    allow_no_shortcut: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SolveScqArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "colorcoding")]
    algo: ScqAlgo,
    /// Failure probability of color coding.
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Equitable coloring reduction.
    Ec(GenReductionArgs),
    /// Independent set reduction.
    Is(GenReductionArgs),
    /// Seeded random instance.
    Random(GenRandomArgs),
}

#[derive(Args, Debug)]
struct GenReductionArgs {
    /// Source graph (PACE `.gr` or DIMACS).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    r: usize,
    /// Write PREFIX.dsq and PREFIX.roles instead of printing the instance.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write PREFIX.dot.
    #[arg(long, requires = "out")]
    emit_dot: bool,
}

#[derive(Args, Debug)]
struct GenRandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 20)]
    max_m: usize,
    #[arg(long, default_value_t = 3)]
    max_up: usize,
    #[arg(long, default_value_t = 5)]
    max_k: usize,
    /// Number of instances; more than one requires --out.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Directory for `NNN.dsq` files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(value_enum)]
    kind: KindArg,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    roles: PathBuf,
    /// 1-based ids, or a solve-dsq report containing a `witness:` line.
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Subcommand, Debug)]
enum TdCommand {
    /// Heuristic decomposition of a graph or DSQ file.
    Build {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "min-fill")]
        td_strategy: Strategy,
    },
    /// Validate a decomposition against a graph or DSQ file.
    Check { input: PathBuf, td: PathBuf },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A DSQ or SCQ file.
    instance: PathBuf,
    /// Candidate solution: 1-based vertex or set ids.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Compare the exact solvers with brute force.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    dir: PathBuf,
    #[arg(long)]
    sequential: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::SolveDsq(a) => solve_dsq_cmd(&a, out),
        Command::SolveScq(a) => solve_scq_cmd(&a, out),
        Command::Gen(g) => gen_cmd(&g, out),
        Command::Extract(a) => extract_cmd(&a, out),
        Command::Td(t) => td_cmd(&t, out),
        Command::Verify(a) => verify_cmd(&a, out),
        Command::Bench(a) => bench_cmd(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidWitness(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn is_dsq_text(text: &str) -> bool {
    header_kind(text) == Some("dsq")
}

fn header_kind(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| l.starts_with("p "))
        .and_then(|l| l.split_whitespace().nth(1))
}

/// Graph of a DSQ file or a plain graph file.
fn load_graph(text: &str) -> Result<Graph> {
    if is_dsq_text(text) {
        Ok(parse_dsq(text)?.graph().clone())
    } else {
        parse_graph(text)
    }
}

fn emit(report: &RunReport, json: bool, out: &mut dyn Write) -> Result<()> {
    let text = if json {
        report.to_json()
    } else {
        report.to_lines()
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Keeps the vertices of `kept` (sorted, original ids) and renumbers them.
fn restrict_td(td: &TreeDecomposition, kept: &[usize], n: usize) -> TreeDecomposition {
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    TreeDecomposition {
        bags: td
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .filter_map(|&v| (new_id[v] != usize::MAX).then_some(new_id[v]))
                    .collect()
            })
            .collect(),
        edges: td.edges.clone(),
    }
}

fn solve_dsq_cmd(a: &SolveDsqArgs, out: &mut dyn Write) -> Result<i32> {
    let text = read(&a.instance)?;
    let inst = parse_dsq(&text)?;
    let parallel = !a.out.sequential && par::AVAILABLE;
    let opts = DpOptions {
        join: a.join,
        parallel,
    };
    let start = Instant::now();

    let algo = match (a.algo, a.apex) {
        (DsqAlgo::Brute, _) => "brute",
        (DsqAlgo::Dp, true) => "apex",
        (DsqAlgo::Dp, false) => "dp",
    };
    let mut report = RunReport::new(text.as_bytes(), "solve-dsq", algo);
    let mut trace = Vec::new();
    let solution: Option<VertexSet>;

    match (a.algo, a.apex) {
        (DsqAlgo::Brute, _) => {
            if a.apex || a.reduce || a.td.is_some() {
                return Err(Error::Usage(
                    "--algo brute takes no --apex, --reduce or --td".into(),
                ));
            }
            solution = brute_dsq(&inst)?;
        }
        (DsqAlgo::Dp, true) => {
            let c_h: Ratio = a.apex_constant.parse()?;
            let config = ApexConfig {
                c_h,
                assert_apex_minor_free: a.assert_apex_minor_free,
                allow_no_shortcut: a.allow_no_shortcut,
            };
            report
                .param("apex_constant", c_h)
                .param("join", a.join.name())
                .param("td_strategy", a.td_strategy.name())
                .param("parallel", parallel);
            let res = solve_apex(&inst, &config, a.td_strategy, opts)?;
            report.param("branch", res.branch.name()).param("s", res.s);
            report.peak_table = res.stats.map(|s| s.peak_table);
            trace.extend(res.trace);
            solution = res.solution.map(|s| s.witness);
        }
        (DsqAlgo::Dp, false) => {
            report
                .param("join", a.join.name())
                .param("reduce", a.reduce)
                .param("parallel", parallel);
            let rule = a.reduce.then(|| apply_reduction_rule(&inst));
            let work = rule.as_ref().map_or(&inst, |r| &r.reduced);
            if let Some(r) = &rule {
                trace.push(format!(
                    "rule: removed {} of {} vertices",
                    r.removed.len(),
                    inst.n()
                ));
            }
            let td = match &a.td {
                Some(path) => {
                    report.param("td", "file");
                    let (td, n) = parse_td(&read(path)?)?;
                    if n != inst.n() {
                        return Err(Error::Usage(format!(
                            "decomposition is for {n} vertices, instance has {}",
                            inst.n()
                        )));
                    }
                    validate_decomposition(inst.graph(), &td)
                        .map_err(Error::InvalidDecomposition)?;
                    match &rule {
                        Some(r) => restrict_td(&td, &r.kept, inst.n()),
                        None => td,
                    }
                }
                None => {
                    report.param("td_strategy", a.td_strategy.name());
                    heuristic_decomposition(work.graph(), a.td_strategy)
                }
            };
            let ntd = make_nice(work.graph(), &td)?;
            trace.push(format!(
                "decomposition: width {}, {} nice nodes",
                td.width(),
                ntd.len()
            ));
            let res = solve_dp(work, &ntd, opts)?;
            trace.push(format!(
                "dp: {} joins, peak table {}, {} entries in total",
                res.stats.joins, res.stats.peak_table, res.stats.total_entries
            ));
            report.peak_table = Some(res.stats.peak_table);
            solution = res.solution.map(|s| match &rule {
                Some(r) => r.lift_witness(&s.witness),
                None => s.witness,
            });
        }
    }

    if let Some(w) = &solution {
        let violations = inst.verify(w);
        if !violations.is_empty() {
            return Err(Error::InvalidWitness(violations));
        }
    }
    report.answer = if solution.is_some() {
        Answer::Yes
    } else {
        Answer::No
    };
    report.optimum = solution.as_ref().map(|w| w.len());
    report.witness = solution.as_ref().map(|w| w.to_one_based_string());
    report.wall_ms = start.elapsed().as_millis() as u64;
    if a.out.trace {
        report.trace = trace;
    }
    emit(&report, a.out.json, out)?;
    Ok(report.answer.exit_code())
}

fn solve_scq_cmd(a: &SolveScqArgs, out: &mut dyn Write) -> Result<i32> {
    let text = read(&a.instance)?;
    let inst = parse_scq(&text)?;
    let parallel = !a.out.sequential && par::AVAILABLE;
    let start = Instant::now();
    let name = match a.algo {
        ScqAlgo::Colorcoding => "colorcoding",
        ScqAlgo::Branching => "branching",
        ScqAlgo::Brute => "brute",
    };
    let mut report = RunReport::new(text.as_bytes(), "solve-scq", name);
    let outcome = match a.algo {
        ScqAlgo::Colorcoding => {
            report
                .param("delta", a.delta)
                .param("seed", a.seed)
                .param("parallel", parallel);
            solve_scq_colorcoding(&inst, a.delta, a.seed, parallel)?
        }
        ScqAlgo::Branching => found_or_not(solve_scq_branching(&inst)),
        ScqAlgo::Brute => found_or_not(brute_scq(&inst)?),
    };
    if let Some(chosen) = outcome.chosen() {
        let violations = inst.verify(chosen);
        if !violations.is_empty() {
            return Err(Error::InvalidWitness(violations));
        }
    }
    report.answer = match &outcome {
        ScqOutcome::Found { .. } => Answer::Yes,
        ScqOutcome::Infeasible => Answer::No,
        ScqOutcome::ProbablyInfeasible { .. } => Answer::ProbablyInfeasible,
    };
    if let ScqOutcome::Found { size, chosen } = &outcome {
        report.optimum = Some(*size);
        report.witness = Some(VertexSet::new(chosen.clone()).to_one_based_string());
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    if a.out.trace {
        report.trace.push(format!(
            "instance: {} elements, {} sets, k = {}, d = {}",
            inst.universe(),
            inst.sets().len(),
            inst.k(),
            inst.max_set_size()
        ));
    }
    emit(&report, a.out.json, out)?;
    Ok(report.answer.exit_code())
}

fn found_or_not(chosen: Option<Vec<usize>>) -> ScqOutcome {
    match chosen {
        Some(chosen) => ScqOutcome::Found {
            size: chosen.len(),
            chosen,
        },
        None => ScqOutcome::Infeasible,
    }
}

fn gen_cmd(g: &GenCommand, out: &mut dyn Write) -> Result<i32> {
    let (a, kind) = match g {
        GenCommand::Ec(a) => (a, ReductionKind::Ec),
        GenCommand::Is(a) => (a, ReductionKind::Is),
        GenCommand::Random(r) => return gen_random(r, out),
    };
    let h = parse_graph(&read(&a.graph)?)?;
    let art = match kind {
        ReductionKind::Ec => reduce_ec_to_dsq(&h, a.r)?,
        ReductionKind::Is => reduce_is_to_dsq(&h, a.r)?,
    };
    let dsq = emit_dsq(&art.dsq);
    match &a.out {
        None => out.write_all(dsq.as_bytes())?,
        Some(prefix) => {
            write_file(&with_ext(prefix, "dsq"), &dsq)?;
            write_file(&with_ext(prefix, "roles"), &art.emit_roles())?;
            if a.emit_dot {
                write_file(&with_ext(prefix, "dot"), &art.emit_dot())?;
            }
        }
    }
    Ok(0)
}

fn gen_random(a: &GenRandomArgs, out: &mut dyn Write) -> Result<i32> {
    if a.max_n == 0 {
        return Err(Error::Usage("--max-n must be positive".into()));
    }
    let shape = DsqShape {
        max_n: a.max_n,
        max_m: a.max_m,
        max_up: a.max_up,
        max_k: a.max_k,
    };
    let mut rng = random::rng(a.seed);
    match &a.out {
        None if a.count == 1 => {
            out.write_all(emit_dsq(&random::random_dsq(&mut rng, shape)).as_bytes())?;
        }
        None => return Err(Error::Usage("--count above 1 needs --out".into())),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for i in 0..a.count {
                let inst = random::random_dsq(&mut rng, shape);
                write_file(&dir.join(format!("{i:03}.dsq")), &emit_dsq(&inst))?;
            }
        }
    }
    Ok(0)
}

/// The `witness:` line of a report, or the whole text.
fn witness_text(text: &str) -> Result<&str> {
    if !text.lines().any(|l| l.starts_with("answer:")) {
        return Ok(text);
    }
    text.lines()
        .find(|l| l.starts_with("witness:"))
        .ok_or_else(|| Error::Usage("report has no witness".into()))
}

fn extract_cmd(a: &ExtractArgs, out: &mut dyn Write) -> Result<i32> {
    let dsq = parse_dsq(&read(&a.instance)?)?;
    let art = ReductionArtifact::from_roles(dsq, &read(&a.roles)?)?;
    let want: ReductionKind = a.kind.into();
    if art.kind != want {
        return Err(Error::Usage(format!(
            "role map is for the {} reduction, not {}",
            art.kind.name(),
            want.name()
        )));
    }
    let witness = VertexSet::new(parse_id_list(
        witness_text(&read(&a.witness)?)?,
        art.dsq.n(),
    )?);
    match want {
        ReductionKind::Ec => {
            let coloring = art.extract_coloring(&witness)?;
            let colors: Vec<String> = coloring.iter().map(|c| (c + 1).to_string()).collect();
            writeln!(out, "coloring: {}", colors.join(" "))?;
        }
        ReductionKind::Is => {
            let set = art.extract_is(&witness)?;
            writeln!(out, "independent_set: {}", set.to_one_based_string())?;
        }
    }
    Ok(0)
}

fn td_cmd(t: &TdCommand, out: &mut dyn Write) -> Result<i32> {
    match t {
        TdCommand::Build { input, td_strategy } => {
            let g = load_graph(&read(input)?)?;
            let td = heuristic_decomposition(&g, *td_strategy);
            out.write_all(emit_td(&td, g.n()).as_bytes())?;
            Ok(0)
        }
        TdCommand::Check { input, td } => {
            let g = load_graph(&read(input)?)?;
            let (td, n) = parse_td(&read(td)?)?;
            if n != g.n() {
                writeln!(out, "valid: no")?;
                writeln!(
                    out,
                    "error: decomposition is for {n} vertices, graph has {}",
                    g.n()
                )?;
                return Ok(1);
            }
            match validate_decomposition(&g, &td) {
                Ok(()) => {
                    writeln!(out, "valid: yes\nwidth: {}", td.width())?;
                    Ok(0)
                }
                Err(errors) => {
                    writeln!(out, "valid: no")?;
                    for e in errors {
                        writeln!(out, "error: {e}")?;
                    }
                    Ok(1)
                }
            }
        }
    }
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if a.witness.is_none() && !a.oracle {
        return Err(Error::Usage("give --witness, --oracle or both".into()));
    }
    let text = read(&a.instance)?;
    match header_kind(&text) {
        Some("scq") => verify_scq(a, &parse_scq(&text)?, out),
        _ => verify_dsq(a, &parse_dsq(&text)?, out),
    }
}

fn print_violations(out: &mut dyn Write, v: &[crate::instance::Violation]) -> Result<()> {
    writeln!(out, "valid: {}", if v.is_empty() { "yes" } else { "no" })?;
    for x in v {
        writeln!(out, "violation: {x}")?;
    }
    Ok(())
}

fn verify_dsq(a: &VerifyArgs, inst: &DsqInstance, out: &mut dyn Write) -> Result<i32> {
    let mut code = 0;
    if let Some(path) = &a.witness {
        let w = VertexSet::new(parse_id_list(witness_text(&read(path)?)?, inst.n())?);
        let v = inst.verify(&w);
        print_violations(out, &v)?;
        if !v.is_empty() {
            code = 1;
        }
    }
    if a.oracle {
        let brute = brute_dsq(inst)?.map(|w| w.len());
        let mut answers = vec![("brute", brute)];
        for join in [JoinMode::Naive, JoinMode::Fast] {
            for strategy in [Strategy::MinDegree, Strategy::MinFill] {
                let opts = DpOptions {
                    join,
                    parallel: par::AVAILABLE,
                };
                let res = crate::dp::solve_with_heuristic(inst, strategy, opts)?;
                answers.push((
                    match (join, strategy) {
                        (JoinMode::Naive, Strategy::MinDegree) => "dp-naive-min-degree",
                        (JoinMode::Naive, Strategy::MinFill) => "dp-naive-min-fill",
                        (JoinMode::Fast, Strategy::MinDegree) => "dp-fast-min-degree",
                        (JoinMode::Fast, Strategy::MinFill) => "dp-fast-min-fill",
                    },
                    res.solution.map(|s| s.size),
                ));
            }
        }
        for (name, ans) in &answers {
            writeln!(
                out,
                "{name}: {}",
                ans.map_or("no".to_string(), |k| format!("yes({k})"))
            )?;
        }
        if answers.iter().any(|(_, x)| *x != brute) {
            writeln!(out, "oracle: disagreement")?;
            return Ok(3);
        }
        writeln!(out, "oracle: agree")?;
    }
    Ok(code)
}

fn verify_scq(a: &VerifyArgs, inst: &ScqInstance, out: &mut dyn Write) -> Result<i32> {
    let mut code = 0;
    if let Some(path) = &a.witness {
        let chosen = parse_id_list(witness_text(&read(path)?)?, inst.sets().len())?;
        let v = inst.verify(&chosen);
        print_violations(out, &v)?;
        if !v.is_empty() {
            code = 1;
        }
    }
    if a.oracle {
        let brute = brute_scq(inst)?.map(|c| c.len());
        let branching = solve_scq_branching(inst).map(|c| c.len());
        let fmt = |x: Option<usize>| x.map_or("no".to_string(), |k| format!("yes({k})"));
        writeln!(out, "brute: {}\nbranching: {}", fmt(brute), fmt(branching))?;
        if brute != branching {
            writeln!(out, "oracle: disagreement")?;
            return Ok(3);
        }
        writeln!(out, "oracle: agree")?;
    }
    Ok(code)
}

fn bench_cmd(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if !a.dir.is_dir() {
        return Err(Error::Usage(format!(
            "{} is not a directory",
            a.dir.display()
        )));
    }
    let corpus = load_corpus(&a.dir)?;
    let parallel = !a.sequential && par::AVAILABLE;
    let res = run_bench(&corpus, &default_algos(parallel), parallel);
    out.write_all(res.table().as_bytes())?;
    for d in &res.disagreements {
        writeln!(err, "disagreement: {d}")?;
    }
    Ok(res.exit_code())
}
