//! Graph elimination: the single engine behind Laplacian factorization and
//! exact Schur complements.
//!
//! Eliminating a vertex of a weighted graph (star-mesh transform) is exactly
//! one pivot step of Cholesky on its Laplacian. Eliminating every vertex
//! except one yields an LDL^T factorization of the grounded minor; stopping
//! early yields the Schur complement onto the surviving vertices. Pivots are
//! taken in increasing-degree order to limit fill, with ties broken by vertex
//! index so results are bit-reproducible run to run.
//!
//! Adjacency lists are kept as vectors sorted by neighbor id: fill from one
//! pivot merges into each neighbor's list in a single sorted pass, which is
//! the hot loop of the whole crate.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// One recorded pivot: the eliminated vertex, its weighted degree at
/// elimination time, and its surviving non-grounded neighbors.
#[derive(Debug, Clone)]
pub(crate) struct ElimStep {
    pub vertex: usize,
    pub pivot: f64,
    pub lower: Vec<(usize, f64)>,
}

/// Collapsed adjacency with each list sorted by neighbor id.
pub(crate) struct Adjacency {
    lists: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    pub fn from_graph(g: &Graph) -> Self {
        let mut lists: Vec<Vec<(usize, f64)>> = vec![Vec::new(); g.vertex_count()];
        for e in g.edges() {
            lists[e.u].push((e.v, e.w));
            lists[e.v].push((e.u, e.w));
        }
        for list in &mut lists {
            list.sort_unstable_by_key(|&(u, _)| u);
            // collapse parallel edges
            let mut write = 0;
            for read in 0..list.len() {
                if write > 0 && list[write - 1].0 == list[read].0 {
                    list[write - 1].1 += list[read].1;
                } else {
                    list[write] = list[read];
                    write += 1;
                }
            }
            list.truncate(write);
        }
        Adjacency { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.lists[v]
    }
}

/// Merge `fill` (sorted, excluding `target` itself) into `target`'s list,
/// dropping the eliminated vertex on the way through.
fn merge_fill(list: &mut Vec<(usize, f64)>, fill: &[(usize, f64)], eliminated: usize) {
    let mut merged = Vec::with_capacity(list.len() + fill.len());
    let (mut i, mut j) = (0, 0);
    while i < list.len() || j < fill.len() {
        if i < list.len() && list[i].0 == eliminated {
            i += 1;
            continue;
        }
        if j >= fill.len() || (i < list.len() && list[i].0 < fill[j].0) {
            merged.push(list[i]);
            i += 1;
        } else if i >= list.len() || list[i].0 > fill[j].0 {
            merged.push(fill[j]);
            j += 1;
        } else {
            merged.push((list[i].0, list[i].1 + fill[j].1));
            i += 1;
            j += 1;
        }
    }
    *list = merged;
}

/// Star-mesh elimination of `targets` (in min-degree order). When `record`
/// is set, pivot steps are logged with edges to `grounded` folded into the
/// pivot only, which is what the minor's factorization needs.
fn run(
    adj: &mut Adjacency,
    targets: &[usize],
    grounded: Option<usize>,
    mut record: Option<&mut Vec<ElimStep>>,
) -> Result<()> {
    let mut alive = vec![false; adj.len()];
    for &v in targets {
        alive[v] = true;
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = targets
        .iter()
        .map(|&v| Reverse((adj.lists[v].len(), v)))
        .collect();

    let mut fill_buf: Vec<(usize, f64)> = Vec::new();
    while let Some(Reverse((deg, v))) = heap.pop() {
        if !alive[v] {
            continue;
        }
        if deg != adj.lists[v].len() {
            heap.push(Reverse((adj.lists[v].len(), v)));
            continue;
        }
        alive[v] = false;

        let nbrs = std::mem::take(&mut adj.lists[v]);
        let pivot: f64 = nbrs.iter().map(|&(_, w)| w).sum();
        if !(pivot > 0.0) || !pivot.is_finite() {
            // a vertex ran out of neighbors before the terminals were reached
            return Err(Error::Disconnected);
        }

        for (idx, &(a, wa)) in nbrs.iter().enumerate() {
            // fill contributions from v's other neighbors, already sorted
            fill_buf.clear();
            for (jdx, &(b, wb)) in nbrs.iter().enumerate() {
                if jdx != idx {
                    fill_buf.push((b, wa * wb / pivot));
                }
            }
            merge_fill(&mut adj.lists[a], &fill_buf, v);
        }

        if let Some(steps) = record.as_deref_mut() {
            let lower: Vec<(usize, f64)> = nbrs
                .iter()
                .filter(|&&(u, _)| Some(u) != grounded)
                .copied()
                .collect();
            steps.push(ElimStep { vertex: v, pivot, lower });
        }
    }
    Ok(())
}

/// Factorize the Laplacian minor L_{-grounded}: eliminate every vertex except
/// `grounded`, recording the pivot sequence. Fails on disconnected graphs
/// (the minor is singular).
pub(crate) fn factor_minor(adj: &mut Adjacency, grounded: usize) -> Result<Vec<ElimStep>> {
    let targets: Vec<usize> = (0..adj.len()).filter(|&v| v != grounded).collect();
    let mut steps = Vec::with_capacity(targets.len());
    run(adj, &targets, Some(grounded), Some(&mut steps))?;
    Ok(steps)
}

/// Exact Schur complement: eliminate every vertex not in `keep`, returning
/// the surviving adjacency (still indexed by original vertex ids).
pub(crate) fn schur_onto(mut adj: Adjacency, keep: &[bool]) -> Result<Adjacency> {
    let targets: Vec<usize> = (0..adj.len()).filter(|&v| !keep[v]).collect();
    run(&mut adj, &targets, None, None)?;
    Ok(adj)
}

/// Apply L^{-1} of the grounded minor through the recorded pivots.
/// `x` is a full n-vector; the grounded slot is forced to zero and never
/// touched, so on output `x` restricted to the minor solves the system.
pub(crate) fn solve_with_steps(steps: &[ElimStep], grounded: usize, x: &mut [f64]) {
    x[grounded] = 0.0;
    for s in steps {
        let xv = x[s.vertex];
        if xv != 0.0 {
            for &(u, w) in &s.lower {
                x[u] += w / s.pivot * xv;
            }
        }
    }
    for s in steps {
        x[s.vertex] /= s.pivot;
    }
    for s in steps.iter().rev() {
        let mut acc = x[s.vertex];
        for &(u, w) in &s.lower {
            acc += w / s.pivot * x[u];
        }
        x[s.vertex] = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn adjacency_collapses_parallel_edges() {
        let g = Graph::new(3, &[(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)]).unwrap();
        let adj = Adjacency::from_graph(&g);
        assert_eq!(adj.neighbors(0), &[(1, 3.0)]);
        assert_eq!(adj.neighbors(1), &[(0, 3.0), (2, 1.0)]);
    }

    #[test]
    fn factor_solves_against_dense_inverse() {
        // weighted 4-cycle with a chord
        let g = Graph::new(
            4,
            &[(0, 1, 2.0), (1, 2, 1.0), (2, 3, 0.5), (3, 0, 1.5), (0, 2, 1.0)],
        )
        .unwrap();
        let mut adj = Adjacency::from_graph(&g);
        let steps = factor_minor(&mut adj, 3).unwrap();

        let l = g.laplacian();
        let minor = l.view((0, 0), (3, 3)).into_owned();
        let inv = minor.try_inverse().unwrap();

        let b = [1.0, -2.0, 0.5, 0.0];
        let mut x = b;
        solve_with_steps(&steps, 3, &mut x);
        let expect = inv * nalgebra::DVector::from_row_slice(&b[..3]);
        for i in 0..3 {
            assert_relative_eq!(x[i], expect[i], max_relative = 1e-12);
        }
    }

    #[test]
    fn pivot_product_is_minor_determinant() {
        let g = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let mut adj = Adjacency::from_graph(&g);
        let steps = factor_minor(&mut adj, 2).unwrap();
        let det: f64 = steps.iter().map(|s| s.pivot).product();
        assert_relative_eq!(det, 3.0, max_relative = 1e-14); // triangle has 3 spanning trees
    }

    #[test]
    fn disconnected_graph_is_singular() {
        let g = Graph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let mut adj = Adjacency::from_graph(&g);
        assert_eq!(factor_minor(&mut adj, 3).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn schur_series_reduction() {
        let g = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let keep = [true, false, true];
        let sc = schur_onto(Adjacency::from_graph(&g), &keep).unwrap();
        assert_eq!(sc.neighbors(0), &[(2, 0.5)]);
        assert!(sc.neighbors(1).is_empty());
    }

    #[test]
    fn elimination_matches_dense_schur_complement() {
        let g = Graph::new(
            5,
            &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.0), (0, 4, 1.0), (1, 3, 1.5)],
        )
        .unwrap();
        let keep = [true, false, true, false, true];
        let sc = schur_onto(Adjacency::from_graph(&g), &keep).unwrap();

        // dense reference: L_CC - L_CD L_DD^{-1} L_DC with C = {0, 2, 4}
        let l = g.laplacian();
        let (c, d) = (vec![0usize, 2, 4], vec![1usize, 3]);
        let pick = |rows: &[usize], cols: &[usize]| {
            nalgebra::DMatrix::from_fn(rows.len(), cols.len(), |i, j| l[(rows[i], cols[j])])
        };
        let reference = pick(&c, &c)
            - pick(&c, &d) * pick(&d, &d).try_inverse().unwrap() * pick(&d, &c);
        for (i, &ci) in c.iter().enumerate() {
            for (j, &cj) in c.iter().enumerate() {
                if i == j {
                    continue;
                }
                let w = sc
                    .neighbors(ci)
                    .iter()
                    .find(|&&(u, _)| u == cj)
                    .map_or(0.0, |&(_, w)| w);
                assert_relative_eq!(-w, reference[(i, j)], epsilon = 1e-12);
            }
        }
    }
}
