//! Linear algebra over Laplacian minors: factorization, solves, and
//! log-determinants.
//!
//! All tree counts are carried in log base 2 throughout the crate; the
//! threshold schedule of the divide-and-conquer maximizer inverts them as
//! `2^th - 1`, and a single base avoids conversion bugs at that boundary.

use crate::elim::{self, ElimStep};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reject factorizations whose weight spread would silently destroy the
/// advertised solve accuracy.
pub const MAX_WEIGHT_RATIO: f64 = 1e12;

/// Default relative-residual tolerance for solves.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-9;

/// Direct factorization of the Laplacian minor L_{-grounded} of a connected
/// graph, supporting linear solves and log-determinant extraction. Immutable
/// once built; concurrent solves are fine.
#[derive(Debug)]
pub struct LaplacianFactor {
    graph: Graph,
    grounded: usize,
    tol: f64,
    steps: Vec<ElimStep>,
    log2_det: f64,
}

/// Factorize with the paper's convention of grounding the highest-index
/// vertex and the default solve tolerance.
pub fn factorize_default(g: &Graph) -> Result<LaplacianFactor> {
    factorize(g, g.vertex_count().saturating_sub(1), DEFAULT_SOLVE_TOL)
}

pub fn factorize(g: &Graph, grounded: usize, tol: f64) -> Result<LaplacianFactor> {
    let n = g.vertex_count();
    if n == 0 || grounded >= n {
        return Err(Error::InvalidParameter(format!(
            "grounded vertex {grounded} out of range for {n} vertices"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ratio = g.weight_ratio();
    if ratio > MAX_WEIGHT_RATIO {
        return Err(Error::IllConditioned { ratio });
    }
    let mut adj = elim::Adjacency::from_graph(g);
    let steps = elim::factor_minor(&mut adj, grounded)?;
    let log2_det = steps.iter().map(|s| s.pivot.log2()).sum();
    Ok(LaplacianFactor { graph: g.clone(), grounded, tol, steps, log2_det })
}

impl LaplacianFactor {
    pub fn grounded(&self) -> usize {
        self.grounded
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn solve_tolerance(&self) -> f64 {
        self.tol
    }

    /// log2 det(L_{-grounded}); by the matrix-tree theorem this is the log2
    /// weighted spanning tree count of the source graph.
    pub fn log2_det(&self) -> f64 {
        self.log2_det
    }

    /// Solve the minor system. `b` lives in minor coordinates: vertex v maps
    /// to index v when v < grounded and v - 1 otherwise.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.graph.vertex_count();
        if b.len() != n - 1 {
            return Err(Error::DimensionMismatch { expected: n - 1, got: b.len() });
        }
        let mut full = vec![0.0; n];
        for (i, &bi) in b.iter().enumerate() {
            full[self.minor_to_vertex(i)] = bi;
        }
        let x = self.solve_full(&full)?;
        Ok((0..n - 1).map(|i| x[self.minor_to_vertex(i)]).collect())
    }

    /// Solve in full-vector coordinates: the grounded slot of `b` is ignored
    /// and the returned grounded slot is zero. One step of iterative
    /// refinement is applied whenever the direct pass misses the tolerance.
    pub fn solve_full(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.graph.vertex_count();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        let mut x = b.to_vec();
        elim::solve_with_steps(&self.steps, self.grounded, &mut x);

        let norm_b = self.minor_norm(b);
        if norm_b == 0.0 {
            return Ok(vec![0.0; n]);
        }
        for _ in 0..3 {
            let r = self.minor_residual(&x, b);
            if self.minor_norm(&r) <= self.tol * norm_b {
                return Ok(x);
            }
            let mut dx = r;
            elim::solve_with_steps(&self.steps, self.grounded, &mut dx);
            for v in 0..n {
                if v != self.grounded {
                    x[v] -= dx[v];
                }
            }
        }
        let r = self.minor_residual(&x, b);
        if self.minor_norm(&r) <= self.tol * norm_b {
            Ok(x)
        } else {
            Err(Error::Numerical(format!(
                "solve residual {:.3e} above tolerance {:.3e}",
                self.minor_norm(&r) / norm_b,
                self.tol
            )))
        }
    }

    /// Effective resistance between two vertices through one solve. Exposed
    /// here so resistance queries can share a factorization.
    pub fn pair_resistance(&self, u: usize, v: usize) -> Result<f64> {
        let n = self.graph.vertex_count();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { index: 0, u, v, n });
        }
        if u == v {
            return Err(Error::SelfLoop { index: 0, u });
        }
        let mut b = vec![0.0; n];
        b[u] += 1.0;
        b[v] -= 1.0;
        let x = self.solve_full(&b)?;
        Ok(x[u] - x[v])
    }

    fn minor_to_vertex(&self, i: usize) -> usize {
        if i < self.grounded {
            i
        } else {
            i + 1
        }
    }

    /// Residual L_minor x - b, computed through the sparse Laplacian with the
    /// grounded coordinate pinned at zero.
    fn minor_residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        let mut xz = x.to_vec();
        xz[self.grounded] = 0.0;
        let mut r = self.graph.laplacian_apply(&xz);
        for v in 0..r.len() {
            if v == self.grounded {
                r[v] = 0.0;
            } else {
                r[v] -= b[v];
            }
        }
        r
    }

    fn minor_norm(&self, v: &[f64]) -> f64 {
        v.iter()
            .enumerate()
            .filter(|&(i, _)| i != self.grounded)
            .map(|(_, &x)| x * x)
            .sum::<f64>()
            .sqrt()
    }
}

/// log2 of the weighted spanning tree count, via the matrix-tree theorem.
pub fn log_tree_count(g: &Graph) -> Result<f64> {
    if g.vertex_count() == 1 {
        // a single vertex has exactly one (empty) spanning tree
        return Ok(0.0);
    }
    Ok(factorize_default(g)?.log2_det())
}

/// Matrix-determinant-lemma update: adding edge (u,v,w) multiplies the tree
/// count by 1 + w * er(u,v), so the log count moves by log2(1 + w * er).
pub fn det_lemma_update(log_t: f64, w: f64, er: f64) -> Result<f64> {
    if er < 0.0 {
        return Err(Error::NegativeResistance(er));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidParameter(format!("weight must be positive, got {w}")));
    }
    Ok(log_t + (w * er).ln_1p() / std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    /// fan graph F_n: star with leaves 0..n-1, center n, plus the leaf path
    fn fan(n: usize) -> Graph {
        let mut edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, n, 1.0)).collect();
        edges.extend((0..n - 1).map(|i| (i, i + 1, 1.0)));
        Graph::new(n + 1, &edges).unwrap()
    }

    #[test]
    fn solve_triangle_minor() {
        let f = factorize(&triangle(), 2, 1e-10).unwrap();
        let x = f.solve(&[1.0, -1.0]).unwrap();
        assert_relative_eq!(x[0], 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(x[1], -1.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn solve_zero_rhs() {
        let f = factorize(&triangle(), 2, 1e-10).unwrap();
        assert_eq!(f.solve(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn solve_path_minor() {
        // minor [[1,-1],[-1,2]] has inverse [[2,1],[1,1]]
        let f = factorize(&path3(), 2, 1e-10).unwrap();
        let x = f.solve(&[1.0, 0.0]).unwrap();
        assert_relative_eq!(x[0], 2.0, max_relative = 1e-12);
        assert_relative_eq!(x[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn solve_rejects_dimension_mismatch() {
        let f = factorize(&triangle(), 2, 1e-10).unwrap();
        assert!(matches!(
            f.solve(&[1.0, 2.0, 3.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn factorize_rejects_disconnected() {
        let g = Graph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(factorize_default(&g).unwrap_err(), Error::Disconnected);
        assert_eq!(log_tree_count(&g).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn factorize_rejects_extreme_weight_spread() {
        let g = Graph::new(3, &[(0, 1, 1e-7), (1, 2, 1e7)]).unwrap();
        assert!(matches!(factorize_default(&g), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn log_tree_count_small_families() {
        assert_relative_eq!(log_tree_count(&triangle()).unwrap(), 3f64.log2(), max_relative = 1e-12);

        let k4 = Graph::new(
            4,
            &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        assert_relative_eq!(log_tree_count(&k4).unwrap(), 4.0, max_relative = 1e-12);

        // fan F_3 has 8 spanning trees
        assert_relative_eq!(log_tree_count(&fan(3)).unwrap(), 3.0, max_relative = 1e-12);
    }

    #[test]
    fn det_lemma_examples() {
        // path P_3 (one tree) plus its closing edge becomes the triangle
        assert_relative_eq!(det_lemma_update(0.0, 1.0, 2.0).unwrap(), 3f64.log2());
        // zero resistance is a no-op
        assert_relative_eq!(det_lemma_update(5.5, 2.0, 0.0).unwrap(), 5.5);
        // pure arithmetic: 3 + log2(5/3)
        assert_relative_eq!(
            det_lemma_update(3.0, 1.0, 2.0 / 3.0).unwrap(),
            3.0 + (5f64 / 3.0).log2(),
            max_relative = 1e-14
        );
        assert!(matches!(
            det_lemma_update(1.0, 1.0, -1e-9),
            Err(Error::NegativeResistance(_))
        ));
    }

    #[test]
    fn update_matches_recount_on_fan() {
        // adding the cycle-closing edge turns F_5 into W_5: 55 -> 121 trees
        let g = fan(5);
        let f = factorize_default(&g).unwrap();
        let er = f.pair_resistance(0, 4).unwrap();
        let updated = det_lemma_update(f.log2_det(), 1.0, er).unwrap();
        let recount = log_tree_count(&g.add_edge(0, 4, 1.0).unwrap()).unwrap();
        assert_relative_eq!(updated, recount, max_relative = 1e-10);
    }

    #[test]
    fn single_vertex_graph_has_one_tree() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(log_tree_count(&g).unwrap(), 0.0);
    }
}
