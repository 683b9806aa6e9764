//! Deterministic generators for the graph families the solver is exercised
//! on, plus seeded random instances for fuzzing.
//!
//! Star centers are always the highest-index vertex, so the grounded vertex
//! of a factorization lines up with the minor convention used everywhere
//! else. All generators are pure functions of their parameters and seed.

use crate::error::{Error, Result};
use crate::graph::{CandidateSet, Graph};
use crate::rng::component_rng;
use rand::Rng;

/// One complete problem instance: base graph, candidates, budget, accuracy
/// and seed. `k` is clamped to the candidate count on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub base: Graph,
    pub candidates: CandidateSet,
    pub k: usize,
    pub eps: f64,
    pub seed: u64,
    pub label: String,
}

impl InstanceSpec {
    fn new(base: Graph, candidates: CandidateSet, k: usize, label: &str) -> Result<Self> {
        if !base.is_connected() {
            return Err(Error::Disconnected);
        }
        if candidates.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        let k = k.clamp(1, candidates.len());
        Ok(InstanceSpec {
            base,
            candidates,
            k,
            eps: 0.1,
            seed: 0,
            label: label.to_string(),
        })
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k < 1 || k > self.candidates.len() {
            return Err(Error::InvalidParameter(format!(
                "k must be in [1, {}], got {k}",
                self.candidates.len()
            )));
        }
        self.k = k;
        Ok(self)
    }

    pub fn with_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 0.5) {
            return Err(Error::InvalidParameter(format!("eps must be in (0, 1/2], got {eps}")));
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Star S_n: leaves 0..n-1, center n.
pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("star needs at least 1 leaf".into()));
    }
    let edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, n, 1.0)).collect();
    Graph::new(n + 1, &edges)
}

/// Path P_n on n vertices.
pub fn gen_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("path needs at least 1 vertex".into()));
    }
    let edges: Vec<(usize, usize, f64)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)).collect();
    Graph::new(n, &edges)
}

/// Cycle C_n on n vertices.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs at least 3 vertices".into()));
    }
    let mut edges: Vec<(usize, usize, f64)> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    edges.push((0, n - 1, 1.0));
    Graph::new(n, &edges)
}

/// Fan F_n: star S_n plus the path over its leaves.
pub fn gen_fan(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("fan needs at least 1 leaf".into()));
    }
    let mut edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, n, 1.0)).collect();
    edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)));
    Graph::new(n + 1, &edges)
}

/// Wheel W_n: star S_n plus the cycle over its leaves.
pub fn gen_wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("wheel needs at least 3 leaves".into()));
    }
    let mut edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, n, 1.0)).collect();
    edges.extend((0..n - 1).map(|i| (i, i + 1, 1.0)));
    edges.push((0, n - 1, 1.0));
    Graph::new(n + 1, &edges)
}

/// The reduction instance: base S_n, candidates E' on the leaves, unit
/// weights, budget n - 1 (clamped to |E'| when E' is sparse).
pub fn gen_star_plus(n: usize, eprime: &[(usize, usize)]) -> Result<InstanceSpec> {
    if n < 2 {
        return Err(Error::InvalidParameter("reduction instance needs n >= 2 leaves".into()));
    }
    if eprime.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, &(u, v)) in eprime.iter().enumerate() {
        if u >= n || v >= n {
            return Err(Error::InvalidParameter(format!(
                "candidate {i} ({u}, {v}) touches the star center or an out-of-range leaf"
            )));
        }
        if u == v {
            return Err(Error::SelfLoop { index: i, u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidParameter(format!("duplicate candidate {i} ({u}, {v})")));
        }
    }
    let base = gen_star(n)?;
    let pairs: Vec<(usize, usize, f64)> = eprime.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    let candidates = CandidateSet::new(&base, &pairs)?;
    InstanceSpec::new(base, candidates, n - 1, "star-plus")
}

/// Build the reduction instance from a (1,2)-distance matrix: the weight-1
/// subgraph becomes the candidate set on the star's leaves.
pub fn gen_tsp12(dist: &[Vec<u8>]) -> Result<InstanceSpec> {
    let n = dist.len();
    if n < 2 {
        return Err(Error::InvalidParameter("distance matrix needs n >= 2".into()));
    }
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidParameter(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for j in 0..n {
            if i != j {
                if !(dist[i][j] == 1 || dist[i][j] == 2) {
                    return Err(Error::InvalidParameter(format!(
                        "dist[{i}][{j}] = {} is not in {{1, 2}}",
                        dist[i][j]
                    )));
                }
                if dist[i][j] != dist[j][i] {
                    return Err(Error::InvalidParameter(format!(
                        "distance matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
    }
    let eprime: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| dist[i][j] == 1)
        .collect();
    if eprime.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut inst = gen_star_plus(n, &eprime)?;
    inst.label = "tsp12".to_string();
    Ok(inst)
}

/// Seeded fuzz instance: a random recursive tree plus `m_extra` random
/// edges, with `q` random candidate pairs. The default budget is roughly a
/// third of the candidates; override with `with_k`.
pub fn gen_random(
    n: usize,
    m_extra: usize,
    q: usize,
    weight_range: (f64, f64),
    seed: u64,
) -> Result<InstanceSpec> {
    if n < 2 {
        return Err(Error::InvalidParameter("random instance needs n >= 2".into()));
    }
    if q < 1 {
        return Err(Error::EmptyCandidates);
    }
    let (lo, hi) = weight_range;
    if !(lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidParameter(format!(
            "weight range must satisfy 0 < lo <= hi, got ({lo}, {hi})"
        )));
    }
    let mut rng = component_rng(seed, 0x17);
    let mut draw_w = {
        let mut r = component_rng(seed, 0x18);
        move || -> f64 {
            if lo == hi {
                lo
            } else {
                r.gen_range(lo..=hi)
            }
        }
    };

    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(n - 1 + m_extra);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, draw_w()));
    }
    for _ in 0..m_extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        edges.push((u, v, draw_w()));
    }
    let base = Graph::new(n, &edges)?;

    let mut pairs = Vec::with_capacity(q);
    for _ in 0..q {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        pairs.push((u, v, draw_w()));
    }
    let candidates = CandidateSet::new(&base, &pairs)?;
    let k = q.div_ceil(3).clamp(1, q);
    let mut inst = InstanceSpec::new(base, candidates, k, "random")?;
    inst.seed = seed;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_2_is_the_triangle() {
        let f2 = gen_fan(2).unwrap();
        assert_eq!(f2.vertex_count(), 3);
        assert_eq!(f2.edge_count(), 3);
        assert!(f2.is_connected());
    }

    #[test]
    fn wheel_3_is_k4() {
        let w3 = gen_wheel(3).unwrap();
        assert_eq!(w3.vertex_count(), 4);
        assert_eq!(w3.edge_count(), 6);
    }

    #[test]
    fn star_4_shape() {
        let s = gen_star(4).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (5, 4));
    }

    #[test]
    fn family_minimums_are_enforced() {
        assert!(gen_star(0).is_err());
        assert!(gen_cycle(2).is_err());
        assert!(gen_wheel(2).is_err());
        assert!(gen_fan(0).is_err());
    }

    #[test]
    fn star_plus_path_budget_and_validation() {
        let inst = gen_star_plus(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(inst.k, 3);
        assert_eq!(inst.candidates.len(), 3);
        // budget clamps when E' is sparser than n - 1
        let clamped = gen_star_plus(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(clamped.k, 2);
        // center references are rejected
        assert!(gen_star_plus(4, &[(0, 4)]).is_err());
        assert!(gen_star_plus(4, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn star_plus_hamiltonian_path_is_the_fan() {
        let n = 6;
        let path: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let inst = gen_star_plus(n, &path).unwrap();
        let mut g = inst.base.clone();
        for e in inst.candidates.edges() {
            g = g.add_edge(e.u, e.v, e.w).unwrap();
        }
        let mut got: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        let mut want: Vec<(usize, usize)> = gen_fan(n)
            .unwrap()
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(got, want);
    }

    #[test]
    fn tsp12_matrix_handling() {
        let all_ones = vec![vec![1u8; 5]; 5];
        let inst = gen_tsp12(&all_ones).unwrap();
        assert_eq!(inst.candidates.len(), 10); // K_5 on the leaves
        assert_eq!(inst.k, 4);

        let mut all_twos = vec![vec![2u8; 4]; 4];
        for i in 0..4 {
            all_twos[i][i] = 0;
        }
        assert_eq!(gen_tsp12(&all_twos).unwrap_err(), Error::EmptyCandidates);

        let mut asym = vec![vec![1u8; 3]; 3];
        asym[0][1] = 2;
        assert!(gen_tsp12(&asym).is_err());
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = gen_random(5, 2, 4, (1.0, 1.0), 7).unwrap();
        let b = gen_random(5, 2, 4, (1.0, 1.0), 7).unwrap();
        assert_eq!(a, b);
        let c = gen_random(5, 2, 4, (1.0, 1.0), 8).unwrap();
        assert_ne!(a, c);
        assert!(a.base.is_connected());
        assert_eq!(a.candidates.len(), 4);
    }

    #[test]
    fn random_minimal_instance() {
        let inst = gen_random(2, 0, 1, (1.0, 1.0), 3).unwrap();
        assert_eq!(inst.base.edge_count(), 1);
        assert_eq!(inst.candidates.len(), 1);
        assert_eq!(inst.k, 1);
    }

    #[test]
    fn random_weights_respect_range() {
        let inst = gen_random(10, 5, 12, (1.0, 4.0), 42).unwrap();
        for e in inst.base.edges().iter().chain(inst.candidates.edges()) {
            assert!(e.w >= 1.0 && e.w <= 4.0);
        }
        assert_eq!(inst.k, 4); // small enough for the brute-force guard
    }
}
