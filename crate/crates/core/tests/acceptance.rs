//! Acceptance suite. Runs every criterion, prints one `PASS` or `FAIL` line
//! per criterion and exits nonzero if any failed.
//!
//! Oracle checks use the brute-force solvers; when a generated instance is
//! too large for the DSQ oracle, its feasibility comes from the exact SCQ
//! branch-and-bound over closed neighborhoods, which shares no code with the
//! tree-decomposition DP.

use std::time::{Duration, Instant};

use rand::Rng;

use dsq::dp::apply_reduction_rule;
use dsq::dp::{run_dp, solve_with_heuristic, DpOptions, JoinMode};
use dsq::graph::degeneracy;
use dsq::oracle::{brute_dsq, brute_ec, brute_is, brute_scq, EcInstance, IsInstance, DSQ_LIMIT};
use dsq::random::{self, DsqShape, ScqShape};
use dsq::reductions::{lift_td_ec, reduce_ec_to_dsq, reduce_is_to_dsq};
use dsq::scq::{dsq_bounded_degree_to_scq, solve_scq_branching, solve_scq_colorcoding, ScqOutcome};
use dsq::subexp::is_three_dominating;
use dsq::treewidth::{
    heuristic_decomposition, make_nice, validate_decomposition, NiceKind, Strategy,
};
use dsq::{DsqInstance, Graph, VertexSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const STRATEGIES: [Strategy; 2] = [Strategy::MinDegree, Strategy::MinFill];
const JOINS: [JoinMode; 2] = [JoinMode::Naive, JoinMode::Fast];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exact DSQ feasibility and a minimum witness, independent of the DP.
fn exact_dsq(inst: &DsqInstance) -> Option<VertexSet> {
    if inst.n() <= DSQ_LIMIT {
        return brute_dsq(inst).expect("within guard");
    }
    let (scq, map) = dsq_bounded_degree_to_scq(inst);
    solve_scq_branching(&scq).map(|chosen| VertexSet::new(chosen.iter().map(|&i| map[i]).collect()))
}

/// Random graph with `1..=max_n` vertices and at least `min_m` edges.
fn random_source<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, min_m: usize) -> Graph {
    let n = rng.gen_range(min_n..=max_n);
    let max_m = n * (n - 1) / 2;
    let m = rng.gen_range(min_m.min(max_m)..=max_m);
    random::random_graph(rng, n, m)
}

// ── 1. DSQ oracle equivalence ───────────────────────────────────────────

fn dsq_oracle_equivalence() -> Outcome {
    let mut rng = random::rng(1);
    let mut yes = 0;
    for i in 0..500 {
        let inst = random::random_dsq(&mut rng, DsqShape::default());
        let expected = brute_dsq(&inst).unwrap().map(|w| w.len());
        yes += expected.is_some() as usize;
        for strategy in STRATEGIES {
            for join in JOINS {
                let opts = DpOptions {
                    join,
                    parallel: true,
                };
                let got = solve_with_heuristic(&inst, strategy, opts).map_err(|e| e.to_string())?;
                let size = got.solution.as_ref().map(|s| s.size);
                ensure(size == expected, || {
                    format!(
                        "instance {i} ({}, {}): dp {size:?}, brute {expected:?}",
                        strategy.name(),
                        join.name()
                    )
                })?;
                if let Some(sol) = got.solution {
                    ensure(inst.verify(&sol.witness).is_empty(), || {
                        format!("instance {i}: invalid witness")
                    })?;
                }
            }
        }
    }
    Ok(format!("500 instances x 4 configurations, {yes} feasible"))
}

// ── 2. Join equivalence ─────────────────────────────────────────────────

fn join_equivalence() -> Outcome {
    let mut rng = random::rng(2);
    let shape = DsqShape {
        max_n: 12,
        max_m: 18,
        max_up: 3,
        max_k: 5,
    };
    let mut sampled = 0;
    let mut attempts = 0;
    while sampled < 200 {
        attempts += 1;
        ensure(attempts < 20_000, || {
            format!("only {sampled} joins sampled")
        })?;
        let inst = random::random_dsq(&mut rng, shape);
        let strategy = STRATEGIES[attempts % 2];
        let td = heuristic_decomposition(inst.graph(), strategy);
        let ntd = make_nice(inst.graph(), &td).map_err(|e| e.to_string())?;
        let cap = inst.max_effective_up();
        let naive = run_dp(
            &inst,
            &ntd,
            DpOptions {
                join: JoinMode::Naive,
                parallel: false,
            },
        )
        .map_err(|e| e.to_string())?;
        let fast = run_dp(
            &inst,
            &ntd,
            DpOptions {
                join: JoinMode::Fast,
                parallel: true,
            },
        )
        .map_err(|e| e.to_string())?;
        for (t, node) in ntd.nodes().iter().enumerate() {
            if node.kind != NiceKind::Join || node.bag.len() > 4 || cap > 3 {
                continue;
            }
            if node.children.iter().any(|&c| naive.tables()[c].is_empty()) {
                continue;
            }
            // Identical inputs, then identical outputs.
            for &c in &node.children {
                ensure(
                    naive.tables()[c].cost_map() == fast.tables()[c].cost_map(),
                    || format!("attempt {attempts}: child tables of join {t} differ"),
                )?;
            }
            ensure(
                naive.tables()[t].cost_map() == fast.tables()[t].cost_map(),
                || format!("attempt {attempts}: join {t} tables differ"),
            )?;
            sampled += 1;
        }
    }
    Ok(format!(
        "{sampled} joins of nonempty tables with |bag| <= 4 and cap <= 3 identical"
    ))
}

// ── 3. Equitable coloring reduction ─────────────────────────────────────

fn ec_reduction_equivalence() -> Outcome {
    let mut rng = random::rng(3);
    let mut yes = 0;
    let mut cases = 0;
    for i in 0..100 {
        let h = random_source(&mut rng, 1, 6, 0);
        for r in [2, 3] {
            cases += 1;
            let ec = EcInstance::new(h.clone(), r).map_err(|e| e.to_string())?;
            let expected = brute_ec(&ec).map_err(|e| e.to_string())?;
            let art = reduce_ec_to_dsq(&h, r).map_err(|e| e.to_string())?;
            let got = exact_dsq(&art.dsq);
            ensure(expected.is_some() == got.is_some(), || {
                format!(
                    "graph {i} (n={}, m={}), r={r}: coloring {:?}, dsq {:?}",
                    h.n(),
                    h.m(),
                    expected.is_some(),
                    got.is_some()
                )
            })?;
            if let Some(w) = got {
                yes += 1;
                ensure(art.dsq.verify(&w).is_empty(), || {
                    format!("graph {i}: invalid dsq witness")
                })?;
                let coloring = art.extract_coloring(&w).map_err(|e| e.to_string())?;
                ensure(ec.is_equitable(&coloring), || {
                    format!("graph {i}, r={r}: pulled-back coloring {coloring:?} not equitable")
                })?;
            }
        }
    }
    Ok(format!(
        "{cases} cases, {yes} colorable, all pull-backs equitable"
    ))
}

// ── 4. Independent set reduction ────────────────────────────────────────

fn is_reduction_equivalence() -> Outcome {
    let mut rng = random::rng(4);
    let mut yes = 0;
    for i in 0..100 {
        let h = random_source(&mut rng, 2, 8, 1);
        let r = rng.gen_range(1..=4);
        let expected = brute_is(&IsInstance::new(h.clone(), r)).map_err(|e| e.to_string())?;
        let art = reduce_is_to_dsq(&h, r).map_err(|e| e.to_string())?;
        let deg = degeneracy(art.dsq.graph()).0;
        ensure(deg == 2, || format!("graph {i}: degeneracy {deg}"))?;
        let got = exact_dsq(&art.dsq);
        ensure(expected.is_some() == got.is_some(), || {
            format!(
                "graph {i} (n={}, m={}), r={r}: is {:?}, dsq {:?}",
                h.n(),
                h.m(),
                expected.is_some(),
                got.is_some()
            )
        })?;
        if let Some(w) = got {
            yes += 1;
            let set = art.extract_is(&w).map_err(|e| e.to_string())?;
            ensure(
                IsInstance::new(h.clone(), r).is_independent_set(&set),
                || format!("graph {i}: pulled-back set not independent of size {r}"),
            )?;
        }
    }
    Ok(format!(
        "100 graphs, {yes} with an independent set, degeneracy 2 throughout"
    ))
}

// ── 5. Reduction rule safety ────────────────────────────────────────────

fn rule_safety() -> Outcome {
    let mut rng = random::rng(5);
    let mut removed = 0;
    for i in 0..500 {
        let inst = random::random_dsq(&mut rng, DsqShape::default());
        let rule = apply_reduction_rule(&inst);
        removed += rule.removed.len();
        let before = brute_dsq(&inst).unwrap();
        let after = brute_dsq(&rule.reduced).unwrap();
        ensure(before.is_some() == after.is_some(), || {
            format!("instance {i}: feasibility changed")
        })?;
        ensure(
            before.map(|w| w.len()) == after.as_ref().map(|w| w.len()),
            || format!("instance {i}: optimum changed"),
        )?;
        let dp = solve_with_heuristic(&rule.reduced, Strategy::MinFill, DpOptions::default())
            .map_err(|e| e.to_string())?
            .solution
            .map(|s| s.witness);
        for w in after.iter().chain(dp.iter()) {
            ensure(is_three_dominating(rule.reduced.graph(), w), || {
                format!("instance {i}: witness not 3-dominating in the reduced graph")
            })?;
            let lifted = rule.lift_witness(w);
            ensure(inst.verify(&lifted).is_empty(), || {
                format!("instance {i}: lifted witness invalid")
            })?;
        }
    }
    Ok(format!(
        "500 instances, {removed} vertices removed in total"
    ))
}

// ── 6. Lifted decompositions ────────────────────────────────────────────

fn lifted_decompositions() -> Outcome {
    let mut rng = random::rng(6);
    let mut widest = 0;
    for i in 0..50 {
        let h = random_source(&mut rng, 1, 7, 0);
        let r = rng.gen_range(2..=3);
        let art = reduce_ec_to_dsq(&h, r).map_err(|e| e.to_string())?;
        let td = heuristic_decomposition(&h, STRATEGIES[i % 2]);
        let lifted = lift_td_ec(&td, &art).map_err(|e| e.to_string())?;
        validate_decomposition(art.dsq.graph(), &lifted).map_err(|e| format!("case {i}: {e:?}"))?;
        let bound = (2 * r + 2) * (td.width() + 1) - 1;
        ensure(lifted.width() <= bound, || {
            format!("case {i}: width {} above {bound}", lifted.width())
        })?;
        widest = widest.max(lifted.width());
    }
    Ok(format!("50 cases valid, widest lifted width {widest}"))
}

// ── 7. Set cover with quotas ────────────────────────────────────────────

fn scq_solvers() -> Outcome {
    let mut rng = random::rng(7);
    let mut feasible = 0;
    let mut matched = 0;
    let mut attempts = 0;
    while feasible < 50 {
        attempts += 1;
        ensure(attempts < 10_000, || {
            format!("only {feasible} feasible instances")
        })?;
        let d = rng.gen_range(1..=3);
        let shape = ScqShape {
            max_universe: 8,
            max_sets: 10,
            d,
            max_up: 3,
            max_k: 6 / d,
        };
        let inst = random::random_scq(&mut rng, shape);
        let kd = inst.k().min(inst.sets().len()) * inst.max_set_size();
        if kd > 6 {
            continue;
        }
        let Some(best) = brute_scq(&inst).map_err(|e| e.to_string())? else {
            continue;
        };
        feasible += 1;
        let out =
            solve_scq_colorcoding(&inst, 0.01, attempts as u64, true).map_err(|e| e.to_string())?;
        if let Some(chosen) = out.chosen() {
            ensure(inst.verify(chosen).is_empty(), || {
                format!("attempt {attempts}: invalid colorcoding solution")
            })?;
        }
        if matches!(&out, ScqOutcome::Found { size, .. } if *size == best.len()) {
            matched += 1;
        }
    }
    ensure(matched >= 49, || {
        format!("colorcoding matched {matched} of 50")
    })?;

    for i in 0..100 {
        let shape = ScqShape {
            max_universe: 8,
            max_sets: 10,
            d: 4,
            max_up: 3,
            max_k: 6,
        };
        let inst = random::random_scq(&mut rng, shape);
        let expected = brute_scq(&inst).map_err(|e| e.to_string())?;
        let got = solve_scq_branching(&inst);
        ensure(
            expected.as_ref().map(Vec::len) == got.as_ref().map(Vec::len),
            || format!("instance {i}: branching {got:?}, brute {expected:?}"),
        )?;
        if let Some(chosen) = &got {
            ensure(inst.verify(chosen).is_empty(), || {
                format!("instance {i}: invalid branching solution")
            })?;
        }
    }
    Ok(format!(
        "colorcoding matched {matched}/50, branching matched 100/100"
    ))
}

// ── 8. Scaling ──────────────────────────────────────────────────────────

fn timed_run(name: &str, inst: &DsqInstance, limit: Duration) -> Result<String, String> {
    let td = heuristic_decomposition(inst.graph(), Strategy::MinFill);
    let ntd = make_nice(inst.graph(), &td).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let run = run_dp(inst, &ntd, DpOptions::default()).map_err(|e| e.to_string())?;
    let optimum = run.optimum();
    let elapsed = start.elapsed();
    let radix = inst.max_effective_up() as u64 + 1;
    for (t, table) in run.tables().iter().enumerate() {
        let b = table.bag().len() as u32;
        let bound = 2u64.pow(b) * radix.pow(b);
        ensure(table.len() as u64 <= bound, || {
            format!(
                "{name}: node {t} has {} entries, bound {bound}",
                table.len()
            )
        })?;
    }
    ensure(elapsed < limit, || {
        format!("{name}: {elapsed:?} exceeds {limit:?}")
    })?;
    Ok(format!(
        "{name} width {} in {:.2}s (optimum {optimum:?}, peak table {})",
        td.width(),
        elapsed.as_secs_f64(),
        run.stats().peak_table
    ))
}

fn scaling() -> Outcome {
    let path = DsqInstance::dominating_set(random::path(200), 5);
    let a = timed_run("P200 k=5", &path, Duration::from_secs(5))?;
    let grid = DsqInstance::dominating_set(random::grid(5, 5), 6);
    let b = timed_run("5x5 grid k=6", &grid, Duration::from_secs(120))?;
    // The grid needs 7 vertices, so k=6 is a no-instance; k=7 exercises the yes side.
    let grid7 = DsqInstance::dominating_set(random::grid(5, 5), 7);
    let c = timed_run("5x5 grid k=7", &grid7, Duration::from_secs(120))?;
    Ok(format!("{a}; {b}; {c}"))
}

// ── 9. Determinism ──────────────────────────────────────────────────────

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dsq::cli::run(
        std::iter::once("dsq").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    let text = String::from_utf8(out).unwrap();
    let stable: String = text
        .lines()
        .filter(|l| !l.starts_with("wall_ms:"))
        .map(|l| format!("{l}\n"))
        .collect();
    (code, stable)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut rng = random::rng(9);
    let mut instances = Vec::new();
    for i in 0..10 {
        let inst = random::random_dsq(&mut rng, DsqShape::default());
        let path = p(&format!("r{i}.dsq"));
        std::fs::write(&path, dsq::format::emit_dsq(&inst)).map_err(|e| e.to_string())?;
        instances.push(path);
    }
    let scq = random::random_scq(
        &mut rng,
        ScqShape {
            max_universe: 8,
            max_sets: 8,
            d: 2,
            max_up: 2,
            max_k: 3,
        },
    );
    std::fs::write(p("a.scq"), dsq::format::emit_scq(&scq)).map_err(|e| e.to_string())?;
    std::fs::write(p("h.gr"), "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n").map_err(|e| e.to_string())?;

    let mut commands: Vec<Vec<String>> = Vec::new();
    for path in &instances {
        for extra in [
            &[][..],
            &["--join", "fast"],
            &["--reduce", "--trace"],
            &["--apex", "--json"],
            &["--algo", "brute"],
            &["--sequential"],
        ] {
            let mut c = vec!["solve-dsq".to_string(), path.clone()];
            c.extend(extra.iter().map(|s| s.to_string()));
            commands.push(c);
        }
    }
    let scq_path = p("a.scq");
    for algo in ["colorcoding", "branching", "brute"] {
        commands.push(
            ["solve-scq", &scq_path, "--algo", algo, "--seed", "11"]
                .map(String::from)
                .to_vec(),
        );
    }
    let gr = p("h.gr");
    commands.push(
        ["gen", "ec", "--graph", &gr, "--r", "2"]
            .map(String::from)
            .to_vec(),
    );
    commands.push(
        ["gen", "is", "--graph", &gr, "--r", "2"]
            .map(String::from)
            .to_vec(),
    );
    commands.push(["gen", "random", "--seed", "5"].map(String::from).to_vec());

    for c in &commands {
        let args: Vec<&str> = c.iter().map(String::as_str).collect();
        let first = cli(&args);
        let second = cli(&args);
        ensure(first == second, || {
            format!("`{}` differs between runs", c.join(" "))
        })?;
        ensure(first.0 != 2, || format!("`{}` failed", c.join(" ")))?;
    }

    // Witnesses do not depend on the thread count.
    for path in &instances {
        let (_, par) = cli(&["solve-dsq", path, "--join", "fast"]);
        let (_, seq) = cli(&["solve-dsq", path, "--join", "fast", "--sequential"]);
        let w = |s: &str| {
            s.lines()
                .find(|l| l.starts_with("witness:"))
                .map(str::to_string)
        };
        ensure(w(&par) == w(&seq), || {
            format!("{path}: witness depends on parallelism")
        })?;
    }
    Ok(format!(
        "{} commands reproduced byte for byte",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 dsq oracle equivalence", dsq_oracle_equivalence),
        ("2 join equivalence", join_equivalence),
        ("3 equitable coloring reduction", ec_reduction_equivalence),
        ("4 independent set reduction", is_reduction_equivalence),
        ("5 reduction rule safety", rule_safety),
        ("6 lifted decompositions", lifted_decompositions),
        ("7 set cover with quotas", scq_solvers),
        ("8 scaling", scaling),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
