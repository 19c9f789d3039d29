//! Win/win driver for graphs excluding an apex minor.
//!
//! After the reduction rule, either a heuristic decomposition is narrow
//! enough to run the DP directly, or (only when the caller vouches for the
//! graph class) a certified treewidth lower bound larger than the grid
//! threshold rules out a solution. Otherwise the DP runs on whatever
//! decomposition was found.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dp::{apply_reduction_rule, solve_dp, DpOptions, DpStats, DsqSolution};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{DsqInstance, VertexSet};
use crate::treewidth::{heuristic_decomposition, make_nice, treewidth_lower_bound, Strategy};

/// Non-negative rational `num / den`, parsed exactly from a decimal string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// `ceil(self * x)`.
    pub fn ceil_mul(self, x: u64) -> u64 {
        ((self.num as u128 * x as u128).div_ceil(self.den as u128)) as u64
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("'{s}' is not a positive decimal constant"));
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 12
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        if num == 0 {
            return Err(bad());
        }
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Ok(Ratio {
            num: num / a,
            den: den / a,
        })
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ApexConfig {
    pub c_h: Ratio,
    pub assert_apex_minor_free: bool,
    pub allow_no_shortcut: bool,
}

impl Default for ApexConfig {
    fn default() -> Self {
        ApexConfig {
            c_h: Ratio::ONE,
            assert_apex_minor_free: false,
            allow_no_shortcut: false,
        }
    }
}

impl ApexConfig {
    pub fn validate(&self) -> Result<()> {
        if self.allow_no_shortcut && !self.assert_apex_minor_free {
            return Err(Error::Usage(
                "--allow-no-shortcut requires --assert-apex-minor-free".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApexBranch {
    /// Heuristic width within `4s + 4`; DP answer.
    SmallWidth,
    /// Certified lower bound above `s`; answer no.
    NoShortcut,
    /// DP on the wide decomposition.
    NoShortcutUnavailable,
}

impl ApexBranch {
    pub fn name(self) -> &'static str {
        match self {
            ApexBranch::SmallWidth => "small-width",
            ApexBranch::NoShortcut => "no-shortcut",
            ApexBranch::NoShortcutUnavailable => "no-shortcut-unavailable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ApexOutcome {
    /// Solution of the input instance.
    pub solution: Option<DsqSolution>,
    /// The same solution before lifting, in reduced-instance ids.
    pub reduced_witness: Option<VertexSet>,
    pub reduced: DsqInstance,
    pub branch: ApexBranch,
    pub s: u64,
    pub width: usize,
    pub stats: Option<DpStats>,
    pub trace: Vec<String>,
}

pub fn ceil_isqrt(k: u64) -> u64 {
    let r = k.isqrt();
    if r * r == k {
        r
    } else {
        r + 1
    }
}

/// `s = ceil(c_H * 15 * ceil(sqrt k))`.
pub fn grid_threshold(c_h: Ratio, k: usize) -> u64 {
    c_h.ceil_mul(15 * ceil_isqrt(k as u64))
}

pub fn solve_apex(
    inst: &DsqInstance,
    config: &ApexConfig,
    strategy: Strategy,
    opts: DpOptions,
) -> Result<ApexOutcome> {
    config.validate()?;
    let mut trace = Vec::new();
    let rule = apply_reduction_rule(inst);
    trace.push(format!(
        "rule: removed {} of {} vertices",
        rule.removed.len(),
        inst.n()
    ));
    let g = rule.reduced.graph();
    let k = inst.k();
    let s = grid_threshold(config.c_h, k);
    trace.push(format!(
        "threshold: s = ceil({} * 15 * ceil_sqrt({k})) = {s}",
        config.c_h
    ));
    let td = heuristic_decomposition(g, strategy);
    let width = td.width();
    let limit = 4 * s + 4;
    trace.push(format!(
        "decomposition: {} width {width}, limit 4s+4 = {limit}",
        strategy.name()
    ));

    let branch = if (width as u64) <= limit {
        ApexBranch::SmallWidth
    } else if config.allow_no_shortcut && config.assert_apex_minor_free && k >= 1 {
        let lb = treewidth_lower_bound(g) as u64;
        trace.push(format!("lower bound: tw >= {lb}"));
        if lb > s {
            ApexBranch::NoShortcut
        } else {
            ApexBranch::NoShortcutUnavailable
        }
    } else {
        ApexBranch::NoShortcutUnavailable
    };
    trace.push(format!("branch: {}", branch.name()));

    if branch == ApexBranch::NoShortcut {
        let root = (k as f64).sqrt();
        let bound = (225.0 * k as f64 - 12.0 * (15.0 * root - 1.0)) / 49.0;
        trace.push(format!(
            "count bound: (225k - 12(15 sqrt k - 1))/49 = {bound:.3} > k = {k}"
        ));
        return Ok(ApexOutcome {
            solution: None,
            reduced_witness: None,
            reduced: rule.reduced,
            branch,
            s,
            width,
            stats: None,
            trace,
        });
    }

    let ntd = make_nice(g, &td)?;
    let out = solve_dp(&rule.reduced, &ntd, opts)?;
    let reduced_witness = out.solution.as_ref().map(|sol| sol.witness.clone());
    let solution = out.solution.map(|sol| {
        let witness = rule.lift_witness(&sol.witness);
        DsqSolution {
            size: witness.len(),
            witness,
        }
    });
    if let Some(sol) = &solution {
        debug_assert!(inst.verify(&sol.witness).is_empty());
    }
    trace.push(match &solution {
        Some(sol) => format!("dp: optimum {}", sol.size),
        None => "dp: no solution".to_string(),
    });
    Ok(ApexOutcome {
        solution,
        reduced_witness,
        reduced: rule.reduced,
        branch,
        s,
        width,
        stats: Some(out.stats),
        trace,
    })
}

/// Every vertex lies within distance 3 of `s`.
pub fn is_three_dominating(g: &Graph, s: &VertexSet) -> bool {
    g.distances_from(s.as_slice())
        .iter()
        .all(|d| d.is_some_and(|d| d <= 3))
}
