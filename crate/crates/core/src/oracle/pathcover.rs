//! Exact minimum path cover by bitmask dynamic programming.
//!
//! Two phases: first every subset is marked with the endpoints of Hamiltonian
//! paths inside it, then a partition DP over submasks finds the fewest parts
//! whose union covers all vertices. Singleton parts (paths of length zero)
//! are always available, so a cover exists for any graph.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hard size guard: the partition DP walks all 3^n submask pairs.
pub const MAX_PATH_COVER_VERTICES: usize = 14;

/// Vertex-disjoint paths covering every vertex; singletons are paths of
/// length zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    pub paths: Vec<Vec<usize>>,
}

impl PathCover {
    pub fn count(&self) -> usize {
        self.paths.len()
    }

    pub fn singleton_count(&self) -> usize {
        self.paths.iter().filter(|p| p.len() == 1).count()
    }

    /// Edge counts per path.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p.len() - 1).collect()
    }
}

pub fn min_path_cover(g: &Graph) -> Result<PathCover> {
    let n = g.vertex_count();
    if n > MAX_PATH_COVER_VERTICES {
        return Err(Error::TooLarge(format!(
            "minimum path cover is exact only up to {MAX_PATH_COVER_VERTICES} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(PathCover { paths: vec![] });
    }

    let mut adj = vec![0u16; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }

    let full: usize = (1 << n) - 1;
    // ends[mask]: bitmask of vertices at which some Hamiltonian path of the
    // induced subset `mask` can end
    let mut ends = vec![0u16; full + 1];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let mut e = ends[mask];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = adj[v] as usize & !mask;
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | (1 << u)] |= 1 << u;
            }
        }
    }

    // parts[mask]: fewest paths covering exactly `mask`
    let mut parts = vec![u8::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    parts[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let mut s = mask;
        while s > 0 {
            if s & low != 0 && ends[s] != 0 {
                let cand = parts[mask ^ s] + 1;
                if cand < parts[mask] {
                    parts[mask] = cand;
                    choice[mask] = s;
                }
            }
            s = (s - 1) & mask;
        }
    }

    let mut paths = Vec::with_capacity(parts[full] as usize);
    let mut mask = full;
    while mask > 0 {
        let part = choice[mask];
        paths.push(reconstruct_path(part, &ends, &adj));
        mask ^= part;
    }
    for p in &mut paths {
        if p.first() > p.last() {
            p.reverse();
        }
    }
    paths.sort_by_key(|p| p[0]);
    Ok(PathCover { paths })
}

/// Walk one Hamiltonian path of `part` backwards from its lowest feasible end.
fn reconstruct_path(part: usize, ends: &[u16], adj: &[u16]) -> Vec<usize> {
    let mut v = ends[part].trailing_zeros() as usize;
    let mut remaining = part;
    let mut path = vec![v];
    while remaining.count_ones() > 1 {
        remaining ^= 1 << v;
        let preds = ends[remaining] as usize & adj[v] as usize & remaining;
        debug_assert!(preds != 0, "dynamic program admitted an unreachable end");
        v = preds.trailing_zeros() as usize;
        path.push(v);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_path, gen_star};

    #[test]
    fn single_path_covers_itself() {
        let cover = min_path_cover(&gen_path(5).unwrap()).unwrap();
        assert_eq!(cover.count(), 1);
        assert_eq!(cover.paths[0], vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn isolated_vertices_are_singletons() {
        let g = Graph::new(3, &[]).unwrap();
        let cover = min_path_cover(&g).unwrap();
        assert_eq!(cover.count(), 3);
        assert_eq!(cover.singleton_count(), 3);
        assert_eq!(cover.lengths(), vec![0, 0, 0]);
    }

    #[test]
    fn star_needs_two_paths() {
        // K_{1,3}: one two-edge path through the center plus a leftover leaf
        let cover = min_path_cover(&gen_star(3).unwrap()).unwrap();
        assert_eq!(cover.count(), 2);
        assert_eq!(cover.singleton_count(), 1);
    }

    #[test]
    fn cover_partitions_vertices_and_follows_edges() {
        let g = Graph::new(
            7,
            &[(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        let cover = min_path_cover(&g).unwrap();
        assert_eq!(cover.count(), 2); // the 6-chain and the isolated vertex
        let mut seen: Vec<usize> = cover.paths.iter().flatten().copied().collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..7).collect::<Vec<_>>());
        let adjacent = |u: usize, v: usize| {
            g.edges().iter().any(|e| (e.u, e.v) == (u, v) || (e.v, e.u) == (u, v))
        };
        for p in &cover.paths {
            for w in p.windows(2) {
                assert!(adjacent(w[0], w[1]), "({}, {}) is not an edge", w[0], w[1]);
            }
        }
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let g = gen_path(15).unwrap();
        assert!(matches!(min_path_cover(&g), Err(Error::TooLarge(_))));
    }
}
