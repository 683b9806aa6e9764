//! Effective resistance: exact single-pair queries and batched (1 ± eps)
//! estimation.
//!
//! The batch estimator sketches W^{1/2} B L^+ (e_u - e_v) with random sign
//! probes: each probe needs one Laplacian solve, after which every queried
//! pair costs O(1). Probes are pre-generated from the seed, so results are
//! identical no matter how the solves are scheduled.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::component_rng;
use crate::spectral::{factorize_default, LaplacianFactor};
use rand::Rng;

/// One batched resistance estimate with its contracted error bound:
/// (1 - eps) er <= value <= (1 + eps) er with high probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResistanceEstimate {
    pub pair: (usize, usize),
    pub value: f64,
    pub epsilon: f64,
}

/// Exact effective resistance (e_u - e_v)^T L^+ (e_u - e_v).
pub fn er_exact(g: &Graph, u: usize, v: usize) -> Result<f64> {
    factorize_default(g)?.pair_resistance(u, v)
}

/// Number of sign probes for a batch at accuracy `eps` on an n-vertex graph.
pub fn probe_count(n: usize, eps: f64) -> usize {
    8 * ((n.max(2) as f64).ln() / (eps * eps)).ceil() as usize
}

/// Batched (1 ± eps) resistance estimates for `pairs`, deterministic in `seed`.
pub fn er_est(
    g: &Graph,
    pairs: &[(usize, usize)],
    eps: f64,
    seed: u64,
) -> Result<Vec<ResistanceEstimate>> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidParameter(format!("eps must be in (0, 1/2], got {eps}")));
    }
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("no query pairs".into()));
    }
    let n = g.vertex_count();
    for &(u, v) in pairs {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { index: 0, u, v, n });
        }
        if u == v {
            return Err(Error::SelfLoop { index: 0, u });
        }
    }
    let factor = factorize_default(g)?;
    let t = probe_count(n, eps);
    let scale = 1.0 / (t as f64).sqrt();
    let mut rng = component_rng(seed, 0x5e);
    let mut sums = vec![0.0; pairs.len()];

    for _ in 0..t {
        // y = B^T W^{1/2} pi for a +/-1 probe pi over edges; y is orthogonal
        // to the all-ones vector by construction
        let mut y = vec![0.0; n];
        for e in g.edges() {
            let s = if rng.gen::<bool>() { scale } else { -scale };
            let c = s * e.w.sqrt();
            y[e.u] += c;
            y[e.v] -= c;
        }
        let z = factor.solve_full(&y)?;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let d = z[u] - z[v];
            sums[i] += d * d;
        }
    }

    Ok(pairs
        .iter()
        .zip(sums)
        .map(|(&pair, value)| ResistanceEstimate { pair, value, epsilon: eps })
        .collect())
}

/// Resistance query against a prebuilt factorization (used by the greedy
/// selectors, which reuse one factorization per graph state).
pub fn er_with_factor(factor: &LaplacianFactor, u: usize, v: usize) -> Result<f64> {
    factor.pair_resistance(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn exact_series_and_parallel() {
        let p3 = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_relative_eq!(er_exact(&p3, 0, 2).unwrap(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(er_exact(&triangle(), 0, 1).unwrap(), 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn exact_k4_by_symmetry() {
        let k4 = Graph::new(
            4,
            &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert_relative_eq!(er_exact(&k4, u, v).unwrap(), 0.5, max_relative = 1e-12);
        }
    }

    #[test]
    fn exact_rejects_same_vertex_and_disconnected() {
        assert!(er_exact(&triangle(), 1, 1).is_err());
        let g = Graph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(er_exact(&g, 0, 2).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn estimates_land_in_contract_band() {
        let p3 = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let est = er_est(&p3, &[(0, 2)], 0.1, 7).unwrap();
        assert!(est[0].value >= 1.8 && est[0].value <= 2.2, "got {}", est[0].value);

        let est = er_est(&triangle(), &[(0, 1)], 0.1, 11).unwrap();
        assert!(est[0].value >= 0.6 && est[0].value <= 0.7334, "got {}", est[0].value);

        let k4 = Graph::new(
            4,
            &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for e in er_est(&k4, &pairs, 0.25, 3).unwrap() {
            assert!(e.value >= 0.375 && e.value <= 0.625, "got {}", e.value);
        }
    }

    #[test]
    fn estimate_is_deterministic_in_seed() {
        let g = triangle();
        let a = er_est(&g, &[(0, 1), (1, 2)], 0.3, 99).unwrap();
        let b = er_est(&g, &[(0, 1), (1, 2)], 0.3, 99).unwrap();
        assert_eq!(a, b);
        let c = er_est(&g, &[(0, 1), (1, 2)], 0.3, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn estimate_rejects_bad_eps() {
        assert!(er_est(&triangle(), &[(0, 1)], 0.0, 1).is_err());
        assert!(er_est(&triangle(), &[(0, 1)], 0.6, 1).is_err());
    }
}
