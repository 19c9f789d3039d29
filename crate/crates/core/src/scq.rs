//! Set Cover with Quotas: color coding for small sets, branch and bound for
//! small frequencies, and the closed-neighborhood bridge from DSQ.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{DsqInstance, QuotaPair, ScqInstance};
use crate::par;

/// Largest `k * d` accepted by color coding.
pub const MAX_KD: usize = 19;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum ScqOutcome {
    Found {
        size: usize,
        chosen: Vec<usize>,
    },
    /// Certainly no solution.
    Infeasible,
    /// No solution found; one exists with probability at most `delta`.
    ProbablyInfeasible {
        delta: f64,
    },
}

impl ScqOutcome {
    pub fn chosen(&self) -> Option<&[usize]> {
        match self {
            ScqOutcome::Found { chosen, .. } => Some(chosen),
            _ => None,
        }
    }
}

/// Element colors in `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.count];
        for (e, &c) in self.colors.iter().enumerate() {
            parts[c].push(e);
        }
        parts
    }

    fn is_colorful(&self, set: &[usize]) -> bool {
        let mut seen = vec![false; self.count];
        set.iter()
            .all(|&e| !std::mem::replace(&mut seen[self.colors[e]], true))
    }
}

fn check_set_sizes(inst: &ScqInstance, d: usize) -> Result<()> {
    match inst.sets().iter().enumerate().find(|(_, s)| s.len() > d) {
        Some((index, s)) => Err(Error::SetTooLarge {
            index,
            size: s.len(),
            d,
        }),
        None => Ok(()),
    }
}

/// Smallest solution that is colorful under `coloring`, in the sense that
/// no two elements of its union share a color, or `None`.
///
/// Sets of size above `d` are rejected. Any returned solution is valid.
pub fn scq_dp_for_coloring(
    inst: &ScqInstance,
    coloring: &Coloring,
    d: usize,
) -> Result<Option<Vec<usize>>> {
    check_set_sizes(inst, d)?;
    let nc = coloring.count;
    let k = inst.k();
    let interesting = |e: usize| inst.quota(e).lo >= 1;

    // Part owner: the interesting element of each color, if any.
    let mut owner: Vec<Option<usize>> = vec![None; nc];
    for e in (0..inst.universe()).filter(|&e| interesting(e)) {
        if owner[coloring.colors[e]].replace(e).is_some() {
            return Ok(None);
        }
    }
    // Elements sharing a part with an interesting one cannot be covered.
    let dead = |e: usize| owner[coloring.colors[e]].is_some_and(|u| u != e);
    let live: Vec<usize> = (0..inst.sets().len())
        .filter(|&j| {
            let s = &inst.sets()[j];
            !s.iter().any(|&e| dead(e)) && coloring.is_colorful(s)
        })
        .collect();
    debug_assert!(coloring.parts().iter().enumerate().all(|(c, part)| {
        let kept: Vec<usize> = part.iter().copied().filter(|&e| !dead(e)).collect();
        match owner[c] {
            Some(u) => kept == [u],
            None => kept.iter().all(|&e| !interesting(e)),
        }
    }));

    // Per color: the bound on X[i] from the element a set brings in.
    let cap = |e: usize| -> usize {
        let q = inst.quota(e);
        q.up.min(k)
    };

    // layers[j]: X -> fewest sets among the first j live sets.
    let mut layers: Vec<HashMap<Vec<u8>, u32>> = Vec::with_capacity(live.len() + 1);
    layers.push(HashMap::from([(vec![0u8; nc], 0)]));
    for &j in &live {
        let set = &inst.sets()[j];
        let prev = layers.last().unwrap();
        let mut next = prev.clone();
        let mut keys: Vec<&Vec<u8>> = prev.keys().collect();
        keys.sort_unstable();
        for x in keys {
            let t = prev[x];
            if t as usize >= k {
                continue;
            }
            let mut y = x.clone();
            let fits = set.iter().all(|&e| {
                let i = coloring.colors[e];
                y[i] += 1;
                (y[i] as usize) <= cap(e)
            });
            if !fits {
                continue;
            }
            let slot = next.entry(y).or_insert(u32::MAX);
            *slot = (*slot).min(t + 1);
        }
        layers.push(next);
    }

    let accepts = |x: &[u8]| {
        (0..nc).all(|i| match owner[i] {
            Some(e) => inst.quota(e).contains(x[i] as usize),
            None => true,
        })
    };
    let last = layers.last().unwrap();
    let Some((mut x, _)) = last
        .iter()
        .filter(|(x, &t)| t as usize <= k && accepts(x))
        .map(|(x, &t)| (x.clone(), t))
        .min_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)))
    else {
        return Ok(None);
    };

    let mut chosen = Vec::new();
    for (pos, &j) in live.iter().enumerate().rev() {
        let t = layers[pos + 1][&x];
        if layers[pos].get(&x) == Some(&t) {
            continue;
        }
        for &e in &inst.sets()[j] {
            x[coloring.colors[e]] -= 1;
        }
        debug_assert_eq!(layers[pos].get(&x), Some(&(t - 1)));
        chosen.push(j);
    }
    chosen.reverse();
    debug_assert!(inst.verify(&chosen).is_empty());
    Ok(Some(chosen))
}

/// `ceil(e^kd * ln(1/delta))`.
pub fn repetitions(kd: usize, delta: f64) -> u64 {
    ((kd as f64).exp() * (1.0 / delta).ln()).ceil().max(1.0) as u64
}

/// Coloring number `j` of the schedule for `seed`.
pub fn seeded_coloring(universe: usize, count: usize, seed: u64, j: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(j);
    Coloring {
        colors: (0..universe).map(|_| rng.gen_range(0..count)).collect(),
        count,
    }
}

/// Runs the per-coloring solver over `R` seeded colorings, or over every
/// coloring of the relevant elements when there are at most `R` of them,
/// and keeps the smallest solution (lowest coloring index on ties).
pub fn solve_scq_colorcoding(
    inst: &ScqInstance,
    delta: f64,
    seed: u64,
    parallel: bool,
) -> Result<ScqOutcome> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Usage(format!(
            "failure probability {delta} is not in (0, 1)"
        )));
    }
    if inst.quotas().iter().all(|q| q.lo == 0) {
        return Ok(ScqOutcome::Found {
            size: 0,
            chosen: Vec::new(),
        });
    }
    let occ = inst.occurrences();
    if inst.k() == 0 || (0..inst.universe()).any(|e| inst.quota(e).lo > 0 && occ[e].is_empty()) {
        return Ok(ScqOutcome::Infeasible);
    }
    let d = inst.max_set_size();
    let kd = inst.k().min(inst.sets().len()) * d;
    if kd > MAX_KD {
        return Err(Error::ColorCodingTooLarge { kd });
    }
    let reps = repetitions(kd, delta);
    let relevant: Vec<usize> = (0..inst.universe())
        .filter(|&e| !occ[e].is_empty())
        .collect();
    let exhaustive = (kd as f64).powi(relevant.len() as i32) <= reps as f64;
    let total = if exhaustive {
        (kd as u64).pow(relevant.len() as u32)
    } else {
        reps
    };

    let coloring_at = |j: u64| -> Coloring {
        if exhaustive {
            let mut colors = vec![0; inst.universe()];
            let mut x = j;
            for &e in &relevant {
                colors[e] = (x % kd as u64) as usize;
                x /= kd as u64;
            }
            Coloring { colors, count: kd }
        } else {
            seeded_coloring(inst.universe(), kd, seed, j)
        }
    };

    const BLOCK: u64 = 256;
    let mut best: Option<Vec<usize>> = None;
    let mut start = 0;
    while start < total {
        let end = (start + BLOCK).min(total);
        let idx: Vec<u64> = (start..end).collect();
        let results = par::map(&idx, parallel, |&j| {
            scq_dp_for_coloring(inst, &coloring_at(j), d)
        });
        for r in results {
            if let Some(chosen) = r? {
                if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                    best = Some(chosen);
                }
            }
        }
        start = end;
    }
    Ok(match best {
        Some(chosen) => {
            let violations = inst.verify(&chosen);
            if !violations.is_empty() {
                return Err(Error::InvalidWitness(violations));
            }
            ScqOutcome::Found {
                size: chosen.len(),
                chosen,
            }
        }
        None if exhaustive => ScqOutcome::Infeasible,
        None => ScqOutcome::ProbablyInfeasible { delta },
    })
}

struct Branch<'a> {
    inst: &'a ScqInstance,
    occ: Vec<Vec<usize>>,
    cover: Vec<usize>,
    chosen: Vec<usize>,
    taken: Vec<bool>,
    forbidden: Vec<bool>,
    best: Option<Vec<usize>>,
}

impl Branch<'_> {
    fn limit(&self) -> usize {
        match &self.best {
            Some(b) => b.len().saturating_sub(1),
            None => self.inst.k(),
        }
    }

    fn available(&self, j: usize) -> bool {
        !self.taken[j]
            && !self.forbidden[j]
            && self.inst.sets()[j]
                .iter()
                .all(|&e| self.cover[e] < self.inst.quota(e).up)
    }

    fn go(&mut self) {
        let inst = self.inst;
        let mut deficit = 0;
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..inst.universe() {
            let lo = inst.quota(e).lo;
            if self.cover[e] >= lo {
                continue;
            }
            deficit = deficit.max(lo - self.cover[e]);
            let avail = self.occ[e].iter().filter(|&&j| self.available(j)).count();
            if pick.is_none_or(|(_, a)| avail < a) {
                pick = Some((e, avail));
            }
        }
        let Some((e, _)) = pick else {
            if self
                .best
                .as_ref()
                .is_none_or(|b| self.chosen.len() < b.len())
            {
                let mut sol = self.chosen.clone();
                sol.sort_unstable();
                self.best = Some(sol);
            }
            return;
        };
        if self.chosen.len() + deficit > self.limit() {
            return;
        }
        let options: Vec<usize> = self.occ[e]
            .iter()
            .copied()
            .filter(|&j| self.available(j))
            .collect();
        for (idx, &j) in options.iter().enumerate() {
            if self.chosen.len() + deficit > self.limit() {
                break;
            }
            self.taken[j] = true;
            self.chosen.push(j);
            for &x in &inst.sets()[j] {
                self.cover[x] += 1;
            }
            self.go();
            for &x in &inst.sets()[j] {
                self.cover[x] -= 1;
            }
            self.chosen.pop();
            self.taken[j] = false;
            self.forbidden[j] = true;
            let _ = idx;
        }
        for &j in &options {
            self.forbidden[j] = false;
        }
    }
}

/// Exact minimum by branching on the sets that could still serve an
/// element below its lower quota, picking the element with fewest options.
pub fn solve_scq_branching(inst: &ScqInstance) -> Option<Vec<usize>> {
    let m = inst.sets().len();
    let mut b = Branch {
        inst,
        occ: inst.occurrences(),
        cover: vec![0; inst.universe()],
        chosen: Vec::new(),
        taken: vec![false; m],
        forbidden: vec![false; m],
        best: None,
    };
    b.go();
    debug_assert!(b.best.as_ref().is_none_or(|s| inst.verify(s).is_empty()));
    b.best
}

/// One set `N[v]` per vertex with the vertex quotas; set `i` is vertex
/// `map[i]`.
pub fn dsq_bounded_degree_to_scq(inst: &DsqInstance) -> (ScqInstance, Vec<usize>) {
    let g = inst.graph();
    let sets = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
    let quotas: Vec<QuotaPair> = inst.quotas().to_vec();
    let scq =
        ScqInstance::new(g.n(), sets, quotas, inst.k()).expect("closed neighborhoods are nonempty");
    (scq, (0..g.n()).collect())
}
