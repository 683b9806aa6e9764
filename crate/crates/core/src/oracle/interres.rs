//! Resistance bounds for edges joining paths of a cover inside a star.
//!
//! The setting: a star S_n plus the edges of a path cover of its leaves, and
//! one extra candidate edge (u, v) outside the cover. Depending on where its
//! endpoints sit, the effective resistance between them (measured before the
//! extra edge is added) is bounded by a small constant:
//!
//!   1. u interior to a path, v on some path        -> er <= 7/6
//!   2. u interior to a path, v a singleton         -> er <= 3/2
//!   3. u, v endpoints of the same path             -> er <  sqrt(5) - 1

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::er_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterResCase {
    /// Extra edge from a path-interior vertex to a covered, non-isolated vertex.
    InteriorToPath,
    /// Extra edge from a path-interior vertex to a singleton.
    InteriorToSingleton,
    /// Extra edge closing a path into a cycle.
    SameEndpoints,
}

impl InterResCase {
    /// The resistance bound the case promises.
    pub fn bound(self) -> f64 {
        match self {
            InterResCase::InteriorToPath => 7.0 / 6.0,
            InterResCase::InteriorToSingleton => 1.5,
            InterResCase::SameEndpoints => 5f64.sqrt() - 1.0,
        }
    }
}

/// A labeled configuration: leaves 0..n-1 of a star with center n, a path
/// cover of the leaves, and the extra edge being measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterResConfig {
    pub leaves: usize,
    pub cover: Vec<Vec<usize>>,
    pub extra: (usize, usize),
    pub case: InterResCase,
}

/// Canonical configuration of each case at a given leaf count.
pub fn interres_case_config(case: InterResCase, n: usize) -> Result<InterResConfig> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "case configurations need at least 6 leaves, got {n}"
        )));
    }
    let cfg = match case {
        InterResCase::InteriorToPath => InterResConfig {
            leaves: n,
            cover: vec![(0..n).collect()],
            extra: (1, n - 2),
            case,
        },
        InterResCase::InteriorToSingleton => InterResConfig {
            leaves: n,
            cover: vec![(0..n - 1).collect(), vec![n - 1]],
            extra: (1, n - 1),
            case,
        },
        InterResCase::SameEndpoints => InterResConfig {
            leaves: n,
            cover: vec![(0..n).collect()],
            extra: (0, n - 1),
            case,
        },
    };
    Ok(cfg)
}

fn malformed(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// True iff the configured extra edge respects its case's resistance bound,
/// measured by exact resistance in the star-plus-cover graph.
pub fn check_interres_bounds(cfg: &InterResConfig) -> Result<bool> {
    let n = cfg.leaves;
    let (u, v) = cfg.extra;
    if u == v || u >= n || v >= n {
        return Err(malformed(format!("extra edge ({u}, {v}) is not a leaf pair")));
    }

    // cover must partition the leaves
    let mut owner = vec![None; n];
    for (pi, path) in cfg.cover.iter().enumerate() {
        if path.is_empty() {
            return Err(malformed(format!("path {pi} is empty")));
        }
        for &x in path {
            if x >= n {
                return Err(malformed(format!("path {pi} mentions non-leaf {x}")));
            }
            if owner[x].replace(pi).is_some() {
                return Err(malformed(format!("leaf {x} appears in two paths")));
            }
        }
    }
    if owner.iter().any(Option::is_none) {
        return Err(malformed("cover does not reach every leaf".into()));
    }

    let position = |x: usize| {
        let pi = owner[x].unwrap();
        let path = &cfg.cover[pi];
        let at = path.iter().position(|&y| y == x).unwrap();
        (pi, at, path.len())
    };
    let (pu, at_u, len_u) = position(u);
    let (pv, at_v, len_v) = position(v);
    let interior = |at: usize, len: usize| len >= 3 && at > 0 && at + 1 < len;

    match cfg.case {
        InterResCase::InteriorToPath => {
            if !interior(at_u, len_u) {
                return Err(malformed(format!("leaf {u} is not interior to a path")));
            }
            if len_v < 2 {
                return Err(malformed(format!("leaf {v} is isolated")));
            }
        }
        InterResCase::InteriorToSingleton => {
            if !interior(at_u, len_u) {
                return Err(malformed(format!("leaf {u} is not interior to a path")));
            }
            if len_v != 1 {
                return Err(malformed(format!("leaf {v} is not a singleton")));
            }
        }
        InterResCase::SameEndpoints => {
            let ends_match = (at_u == 0 && at_v == len_u - 1) || (at_v == 0 && at_u == len_u - 1);
            if pu != pv || len_u < 2 || !ends_match {
                return Err(malformed(format!(
                    "({u}, {v}) are not the two endpoints of one path"
                )));
            }
        }
    }
    // the extra edge may not be a cover edge
    for path in &cfg.cover {
        for w in path.windows(2) {
            if (w[0], w[1]) == (u, v) || (w[1], w[0]) == (u, v) {
                return Err(malformed(format!("({u}, {v}) already belongs to the cover")));
            }
        }
    }

    let mut edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, n, 1.0)).collect();
    for path in &cfg.cover {
        for w in path.windows(2) {
            edges.push((w[0], w[1], 1.0));
        }
    }
    let g = Graph::new(n + 1, &edges)?;
    let er = er_exact(&g, u, v)?;
    Ok(match cfg.case {
        InterResCase::SameEndpoints => er < cfg.case.bound(),
        _ => er <= cfg.case.bound(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_cases_hold_at_n8() {
        for case in [
            InterResCase::InteriorToPath,
            InterResCase::InteriorToSingleton,
            InterResCase::SameEndpoints,
        ] {
            let cfg = interres_case_config(case, 8).unwrap();
            assert!(check_interres_bounds(&cfg).unwrap(), "case {case:?}");
        }
    }

    #[test]
    fn hamiltonian_endpoints_of_f6() {
        let cfg = interres_case_config(InterResCase::SameEndpoints, 6).unwrap();
        assert!(check_interres_bounds(&cfg).unwrap());
    }

    #[test]
    fn malformed_configs_are_rejected() {
        // extra edge equal to a cover edge
        let cfg = InterResConfig {
            leaves: 6,
            cover: vec![(0..6).collect()],
            extra: (1, 2),
            case: InterResCase::InteriorToPath,
        };
        assert!(check_interres_bounds(&cfg).is_err());

        // claimed interior vertex is actually an endpoint
        let cfg = InterResConfig {
            leaves: 6,
            cover: vec![(0..6).collect()],
            extra: (0, 3),
            case: InterResCase::InteriorToPath,
        };
        assert!(check_interres_bounds(&cfg).is_err());

        // cover missing a leaf
        let cfg = InterResConfig {
            leaves: 6,
            cover: vec![vec![0, 1, 2, 3, 4]],
            extra: (1, 3),
            case: InterResCase::InteriorToPath,
        };
        assert!(check_interres_bounds(&cfg).is_err());
    }

    #[test]
    fn case_three_bound_is_tight_ish() {
        // closing resistance of long fans approaches sqrt(5) - 1 from below
        let cfg = interres_case_config(InterResCase::SameEndpoints, 12).unwrap();
        let mut edges: Vec<(usize, usize, f64)> = (0..12).map(|i| (i, 12, 1.0)).collect();
        edges.extend((0..11).map(|i| (i, i + 1, 1.0)));
        let g = Graph::new(13, &edges).unwrap();
        let er = er_exact(&g, 0, 11).unwrap();
        assert!(er > 1.2 && er < 5f64.sqrt() - 1.0);
        assert!(check_interres_bounds(&cfg).unwrap());
    }
}
