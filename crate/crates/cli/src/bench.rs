//! Wall-time measurement across instance sizes and budgets.
//!
//! Rows are raw measurements for offline plotting; nothing here asserts on
//! absolute times. The maximizer is timed through its selection phase only,
//! so the optional exact-replay ledger (whose cost is linear in k) does not
//! contaminate the trend being measured.

use crate::run::Algo;
use anyhow::{bail, Result};
use spantree::instances::gen_random;
use spantree::maximizer::{greedy_exact, greedy_th, nstm_select};
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub k: usize,
    pub algorithm: Algo,
    pub rep: usize,
    pub wall_ms: f64,
    pub budget_used: usize,
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,m,q,k,algorithm,rep,wall_ms,budget_used\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.3},{}\n",
            r.n, r.m, r.q, r.k, r.algorithm, r.rep, r.wall_ms, r.budget_used
        ));
    }
    out
}

/// Benchmark instances: a random spanning tree plus n/8 extra edges with
/// q = n unit-weight candidates.
pub fn run_bench(
    sizes: &[usize],
    ks: &[usize],
    algos: &[Algo],
    eps: f64,
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        bail!("no sizes given");
    }
    if ks.is_empty() {
        bail!("no budgets given");
    }
    if reps == 0 {
        bail!("repetitions must be at least 1");
    }
    let mut rows = Vec::new();
    for &n in sizes {
        if n < 2 {
            bail!("size {n} is too small");
        }
        let inst = gen_random(n, n / 8, n, (1.0, 1.0), seed ^ (n as u64))?;
        for &k in ks {
            let k = k.clamp(1, inst.candidates.len());
            for algo in algos {
                for rep in 0..reps {
                    let rep_seed = seed.wrapping_add(rep as u64);
                    let t = Instant::now();
                    let budget_used = match algo {
                        Algo::Exact => {
                            greedy_exact(&inst.base, &inst.candidates, k)?.budget_used
                        }
                        Algo::GreedyTh => {
                            greedy_th(&inst.base, &inst.candidates, eps, k)?.budget_used
                        }
                        Algo::Nstm => {
                            nstm_select(&inst.base, &inst.candidates, eps, k, rep_seed)?.0.len()
                        }
                    };
                    rows.push(BenchRow {
                        n,
                        m: inst.base.edge_count(),
                        q: inst.candidates.len(),
                        k,
                        algorithm: *algo,
                        rep,
                        wall_ms: t.elapsed().as_secs_f64() * 1e3,
                        budget_used,
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_produces_expected_row_count() {
        let rows = run_bench(
            &[30, 40],
            &[2, 5],
            &[Algo::Exact, Algo::Nstm],
            0.3,
            2,
            1,
        )
        .unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2 * 2);
        let csv = rows_to_csv(&rows);
        assert_eq!(csv.lines().count(), rows.len() + 1);
        assert!(csv.starts_with("n,m,q,k,"));
    }

    #[test]
    fn empty_sizes_is_an_error() {
        assert!(run_bench(&[], &[1], &[Algo::Exact], 0.3, 1, 1).is_err());
    }
}
