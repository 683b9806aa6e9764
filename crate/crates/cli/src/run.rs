//! Shared solve machinery between the binary and its tests.

use crate::report::{InstanceMeta, OracleReport, RunReport, SelectionReport, SCHEMA_VERSION};
use anyhow::{bail, Result};
use spantree::instances::InstanceSpec;
use spantree::maximizer::{greedy_exact, greedy_th, nstm_maximize};
use spantree::oracle::brute_force_opt;
use spantree::{Error, Selection};
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Exact,
    GreedyTh,
    Nstm,
}

impl Algo {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Algo::Exact),
            "greedy-th" => Ok(Algo::GreedyTh),
            "nstm" => Ok(Algo::Nstm),
            other => bail!("unknown algorithm `{other}` (expected exact, greedy-th, nstm)"),
        }
    }

    /// Whether the algorithm consumes an accuracy parameter.
    pub fn uses_eps(self) -> bool {
        !matches!(self, Algo::Exact)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Exact => "exact",
            Algo::GreedyTh => "greedy-th",
            Algo::Nstm => "nstm",
        })
    }
}

pub fn solve_instance(spec: &InstanceSpec, algo: Algo) -> Result<(Selection, f64)> {
    let t = Instant::now();
    let sel = match algo {
        Algo::Exact => greedy_exact(&spec.base, &spec.candidates, spec.k)?,
        Algo::GreedyTh => greedy_th(&spec.base, &spec.candidates, spec.eps, spec.k)?,
        Algo::Nstm => nstm_maximize(&spec.base, &spec.candidates, spec.eps, spec.k, spec.seed)?,
    };
    Ok((sel, t.elapsed().as_secs_f64() * 1e3))
}

/// Exhaustive comparison when the instance is small enough; an explicit
/// skip note otherwise.
pub fn oracle_compare(spec: &InstanceSpec, sel: &Selection) -> OracleReport {
    match brute_force_opt(&spec.base, &spec.candidates, spec.k) {
        Ok(opt) => {
            let ratio = if opt.log_gain > 0.0 { sel.total_log_gain / opt.log_gain } else { 1.0 };
            OracleReport::Ok { opt_log_gain: opt.log_gain, ratio, subset: opt.subset }
        }
        Err(Error::TooLarge(reason)) => OracleReport::Skipped { reason },
        Err(e) => OracleReport::Skipped { reason: format!("oracle failed: {e}") },
    }
}

pub fn build_report(
    spec: &InstanceSpec,
    path: Option<String>,
    algo: Algo,
    sel: &Selection,
    wall_time_ms: f64,
    oracle: Option<OracleReport>,
) -> RunReport {
    let edges = sel
        .chosen
        .iter()
        .map(|&i| {
            let e = spec.candidates.get(i);
            (e.u, e.v, e.w)
        })
        .collect();
    RunReport {
        schema_version: SCHEMA_VERSION,
        instance: InstanceMeta {
            path,
            label: spec.label.clone(),
            n: spec.base.vertex_count(),
            m: spec.base.edge_count(),
            q: spec.candidates.len(),
            k: spec.k,
        },
        algorithm: algo.to_string(),
        eps: algo.uses_eps().then_some(spec.eps),
        seed: spec.seed,
        selection: SelectionReport {
            chosen: sel.chosen.clone(),
            edges,
            per_step_log_gain: sel.per_step_log_gain.clone(),
            total_log_gain: sel.total_log_gain,
            budget_used: sel.budget_used,
            thresholds: sel.thresholds.clone(),
            diagnostic: sel.diagnostic.clone(),
        },
        wall_time_ms,
        oracle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spantree::instances::gen_star_plus;

    #[test]
    fn solve_and_compare_on_the_reduction_instance() {
        let path: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
        let spec = gen_star_plus(6, &path).unwrap();
        let (sel, _) = solve_instance(&spec, Algo::Nstm).unwrap();
        assert_eq!(sel.budget_used, 5);
        match oracle_compare(&spec, &sel) {
            OracleReport::Ok { ratio, .. } => assert!(ratio > 0.99, "ratio {ratio}"),
            OracleReport::Skipped { reason } => panic!("oracle skipped: {reason}"),
        }
        let report = build_report(&spec, None, Algo::Nstm, &sel, 1.0, None);
        assert_eq!(report.instance.q, 5);
        assert_eq!(report.eps, Some(0.1));
    }

    #[test]
    fn exact_report_has_no_eps() {
        let path: Vec<(usize, usize)> = (0..3).map(|i| (i, i + 1)).collect();
        let spec = gen_star_plus(4, &path).unwrap();
        let (sel, wall) = solve_instance(&spec, Algo::Exact).unwrap();
        let report = build_report(&spec, None, Algo::Exact, &sel, wall, None);
        assert_eq!(report.eps, None);
        assert_eq!(report.algorithm, "exact");
    }
}
