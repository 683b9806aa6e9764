//! Exact and approximate Schur complements onto a terminal set.
//!
//! The exact complement comes from graph elimination and is itself a graph:
//! zero row sums and nonpositive off-diagonals are structural, not numerical.
//! The approximate variant sparsifies the exact complement by leverage-score
//! sampling when (and only when) the exact result is denser than the target
//! edge budget, which keeps desk-scale runs exact while bounding output size
//! on large terminal sets.

use crate::elim;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::er_exact;
use crate::rng::component_rng;
use crate::spectral::factorize_default;
use nalgebra::DMatrix;
use rand::distributions::{Distribution, WeightedIndex};

/// Ordered terminal subset with the mapping between host vertex ids and the
/// local ids of the complement graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSet {
    vertices: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl TerminalSet {
    pub fn new(host_n: usize, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "terminal set needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        let mut local = vec![None; host_n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= host_n {
                return Err(Error::VertexOutOfRange { index: i, u: v, v, n: host_n });
            }
            if local[v].is_some() {
                return Err(Error::InvalidParameter(format!("duplicate terminal {v}")));
            }
            local[v] = Some(i);
        }
        Ok(TerminalSet { vertices: vertices.to_vec(), local })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Host-graph ids in terminal order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn local_of(&self, original: usize) -> Option<usize> {
        self.local.get(original).copied().flatten()
    }

    pub fn original_of(&self, local: usize) -> usize {
        self.vertices[local]
    }
}

/// Exact Schur complement of `g` onto `ts`, as a graph on local terminal ids.
/// Passing the full vertex set returns a re-indexed copy of `g`.
pub fn schur_exact(g: &Graph, ts: &TerminalSet) -> Result<Graph> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if ts.len() == n {
        let edges: Vec<(usize, usize, f64)> = g
            .edges()
            .iter()
            .map(|e| (ts.local_of(e.u).unwrap(), ts.local_of(e.v).unwrap(), e.w))
            .collect();
        return Graph::new(n, &edges);
    }

    let mut keep = vec![false; n];
    for &v in ts.vertices() {
        keep[v] = true;
    }
    let sc = elim::schur_onto(elim::Adjacency::from_graph(g), &keep)?;

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for (li, &orig) in ts.vertices().iter().enumerate() {
        for &(nbr, w) in sc.neighbors(orig) {
            let lj = ts.local_of(nbr).expect("elimination left a non-terminal neighbor");
            if li < lj {
                edges.push((li, lj, w));
            }
        }
    }
    edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Graph::new(ts.len(), &edges)
}

/// Edge budget for the sparsified complement: 40 |C| eps^-2 log2 n.
pub fn sparsity_budget(c: usize, eps: f64, host_n: usize) -> usize {
    (40.0 * c as f64 * (host_n.max(2) as f64).log2() / (eps * eps)).ceil() as usize
}

/// Approximate Schur complement: with probability at least 1 - delta the
/// result S satisfies (1 - eps) SC <= S <= (1 + eps) SC in the quadratic-form
/// order, with at most `sparsity_budget` edges.
pub fn approx_schur(
    g: &Graph,
    ts: &TerminalSet,
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<Graph> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidParameter(format!("eps must be in (0, 1/2], got {eps}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta must be in (0, 1), got {delta}")));
    }

    // two terminals collapse to the exact equivalent resistor
    if ts.len() == 2 {
        let (u, v) = (ts.original_of(0), ts.original_of(1));
        let er = er_exact(g, u, v)?;
        return Graph::new(2, &[(0, 1, 1.0 / er)]);
    }

    let exact = schur_exact(g, ts)?;
    let c = ts.len();
    let cap = sparsity_budget(c, eps, g.vertex_count());
    let concentration =
        (9.0 * c as f64 * (2.0 * c as f64 / delta).ln() / (eps * eps)).ceil() as usize;
    let samples = concentration.min(cap).max(1);
    if exact.edge_count() <= samples {
        return Ok(exact);
    }
    leverage_sample(&exact, samples, seed)
}

/// Sample `samples` edges of `exact` with replacement, proportionally to
/// leverage score w_e * er(e), reweighting each pick by w_e / (p_e * N).
/// The expected Laplacian equals the input's.
fn leverage_sample(exact: &Graph, samples: usize, seed: u64) -> Result<Graph> {
    let factor = factorize_default(exact)?;
    let mut levs = Vec::with_capacity(exact.edge_count());
    for e in exact.edges() {
        let er = factor.pair_resistance(e.u, e.v)?;
        levs.push((e.w * er).max(f64::MIN_POSITIVE));
    }
    let total: f64 = levs.iter().sum();
    let dist = WeightedIndex::new(&levs)
        .map_err(|e| Error::Numerical(format!("leverage sampling: {e}")))?;
    let mut rng = component_rng(seed, 0x5c);
    let mut mass = vec![0.0f64; exact.edge_count()];
    for _ in 0..samples {
        let i = dist.sample(&mut rng);
        mass[i] += levs[i].recip() * total / samples as f64 * exact.edges()[i].w;
    }
    let edges: Vec<(usize, usize, f64)> = exact
        .edges()
        .iter()
        .zip(&mass)
        .filter(|(_, &m)| m > 0.0)
        .map(|(e, &m)| (e.u, e.v, m))
        .collect();
    Graph::new(exact.vertex_count(), &edges)
}

/// Extreme generalized Rayleigh quotients x^T A x / x^T B x over x
/// orthogonal to the all-ones vector. Both graphs must share a vertex set.
pub fn spectral_ratio(a: &Graph, b: &Graph) -> Result<(f64, f64)> {
    let c = a.vertex_count();
    if b.vertex_count() != c {
        return Err(Error::DimensionMismatch { expected: c, got: b.vertex_count() });
    }
    if c < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices".into()));
    }
    if !a.is_connected() || !b.is_connected() {
        return Err(Error::Disconnected);
    }
    let la = a.laplacian();
    let lb = b.laplacian();

    // restrict to the complement of the kernel with the basis e_i - e_{c-1}
    let reduce = |l: &DMatrix<f64>| {
        let m = c - 1;
        let last = c - 1;
        DMatrix::from_fn(m, m, |i, j| l[(i, j)] - l[(i, last)] - l[(last, j)] + l[(last, last)])
    };
    let ar = reduce(&la);
    let br = reduce(&lb);

    let chol = nalgebra::Cholesky::new(br)
        .ok_or_else(|| Error::Numerical("reference Laplacian is not positive definite".into()))?;
    let l = chol.l();
    let y = l
        .solve_lower_triangular(&ar)
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    let m = l
        .solve_lower_triangular(&y.transpose())
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    let eigs = nalgebra::SymmetricEigen::new(m).eigenvalues;
    let lo = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn series_reduction() {
        let ts = TerminalSet::new(3, &[0, 2]).unwrap();
        let sc = schur_exact(&path3(), &ts).unwrap();
        assert_eq!(sc.edge_count(), 1);
        let e = sc.edges()[0];
        assert_eq!((e.u, e.v), (0, 1));
        assert_relative_eq!(e.w, 0.5);
    }

    #[test]
    fn triangle_elimination_merges_parallel_route() {
        let ts = TerminalSet::new(3, &[0, 1]).unwrap();
        let sc = schur_exact(&triangle(), &ts).unwrap();
        assert_eq!(sc.edge_count(), 1);
        assert_relative_eq!(sc.edges()[0].w, 1.5, max_relative = 1e-14);
    }

    #[test]
    fn star_mesh_transform() {
        // star with center 3: eliminating the center meshes the three leaves
        let star = Graph::new(4, &[(0, 3, 1.0), (1, 3, 1.0), (2, 3, 1.0)]).unwrap();
        let ts = TerminalSet::new(4, &[0, 1, 2]).unwrap();
        let sc = schur_exact(&star, &ts).unwrap();
        assert_eq!(sc.edge_count(), 3);
        for e in sc.edges() {
            assert_relative_eq!(e.w, 1.0 / 3.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn full_terminal_set_is_identity() {
        let g = triangle();
        let ts = TerminalSet::new(3, &[0, 1, 2]).unwrap();
        let sc = schur_exact(&g, &ts).unwrap();
        assert_eq!(sc.laplacian(), g.laplacian());
    }

    #[test]
    fn complement_is_a_laplacian() {
        let g = Graph::new(
            6,
            &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.0), (4, 5, 1.0), (0, 5, 3.0), (1, 4, 1.0)],
        )
        .unwrap();
        let ts = TerminalSet::new(6, &[0, 2, 5]).unwrap();
        let sc = schur_exact(&g, &ts).unwrap();
        let l = sc.laplacian();
        for i in 0..3 {
            let row: f64 = (0..3).map(|j| l[(i, j)]).sum();
            assert_relative_eq!(row, 0.0, epsilon = 1e-12);
            for j in 0..3 {
                if i != j {
                    assert!(l[(i, j)] <= 0.0);
                }
            }
        }
    }

    #[test]
    fn transitivity_of_elimination() {
        let g = Graph::new(
            5,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 2.0), (3, 4, 1.0), (0, 4, 1.0), (1, 3, 0.5)],
        )
        .unwrap();
        let big = TerminalSet::new(5, &[0, 1, 3, 4]).unwrap();
        let sc1 = schur_exact(&g, &big).unwrap();
        // terminals {0, 4} sit at local ids {0, 3} inside sc1
        let nested = TerminalSet::new(4, &[0, 3]).unwrap();
        let sc2 = schur_exact(&sc1, &nested).unwrap();
        let direct_ts = TerminalSet::new(5, &[0, 4]).unwrap();
        let direct = schur_exact(&g, &direct_ts).unwrap();
        assert_relative_eq!(
            (sc2.laplacian() - direct.laplacian()).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn approx_on_two_terminals_is_the_exact_resistor() {
        let ts = TerminalSet::new(3, &[0, 2]).unwrap();
        let s = approx_schur(&path3(), &ts, 0.1, 0.01, 1).unwrap();
        assert_eq!(s.edge_count(), 1);
        let r = 1.0 / s.edges()[0].w;
        assert!(r >= 2.0 / 1.1 && r <= 2.0 / 0.9);
    }

    #[test]
    fn approx_returns_exact_when_under_budget() {
        let g = triangle();
        let ts = TerminalSet::new(3, &[0, 1, 2]).unwrap();
        let s = approx_schur(&g, &ts, 0.25, 0.1, 5).unwrap();
        assert_eq!(s.laplacian(), g.laplacian());
    }

    #[test]
    fn forced_sampling_stays_spectrally_close() {
        // complete graph on 12 vertices, sparsified to a third of its edges
        let mut edges = Vec::new();
        for i in 0..12usize {
            for j in (i + 1)..12 {
                edges.push((i, j, 1.0));
            }
        }
        let g = Graph::new(12, &edges).unwrap();
        let sparse = leverage_sample(&g, 600, 7).unwrap();
        assert!(sparse.edge_count() <= 600);
        let (lo, hi) = spectral_ratio(&sparse, &g).unwrap();
        assert!(lo > 0.5 && hi < 1.5, "ratio range ({lo}, {hi})");
    }

    #[test]
    fn ratio_identity_and_scaling() {
        let g = triangle();
        let (lo, hi) = spectral_ratio(&g, &g).unwrap();
        assert_relative_eq!(lo, 1.0, max_relative = 1e-10);
        assert_relative_eq!(hi, 1.0, max_relative = 1e-10);

        let doubled = Graph::new(3, &[(0, 1, 2.0), (1, 2, 2.0), (0, 2, 2.0)]).unwrap();
        let (lo, hi) = spectral_ratio(&doubled, &g).unwrap();
        assert_relative_eq!(lo, 2.0, max_relative = 1e-10);
        assert_relative_eq!(hi, 2.0, max_relative = 1e-10);
    }
}
