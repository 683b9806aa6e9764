//! Weighted undirected multigraph with Laplacian assembly.
//!
//! Vertices are dense indices `0..n`. Parallel edges are kept distinct in the
//! edge list (selection ledgers need to tell them apart) and are only collapsed
//! when the Laplacian is assembled. Self-loops and non-positive weights are
//! rejected at construction.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// A single weighted edge. Endpoint order carries no meaning beyond the
/// arbitrary orientation used for incidence vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge { u, v, w }
    }
}

/// Signed incidence vector b_{u,v} = e_u - e_v, kept in index form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidenceVector {
    pub u: usize,
    pub v: usize,
}

impl IncidenceVector {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::SelfLoop { index: 0, u });
        }
        Ok(IncidenceVector { u, v })
    }

    /// Densify into an n-vector: +1 at `u`, -1 at `v`.
    pub fn to_dense(&self, n: usize) -> DVector<f64> {
        let mut b = DVector::zeros(n);
        b[self.u] = 1.0;
        b[self.v] = -1.0;
        b
    }
}

/// Immutable weighted undirected multigraph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

fn validate_edge(index: usize, u: usize, v: usize, w: f64, n: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(Error::VertexOutOfRange { index, u, v, n });
    }
    if u == v {
        return Err(Error::SelfLoop { index, u });
    }
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::NonPositiveWeight { index, u, v, w });
    }
    Ok(())
}

impl Graph {
    /// Build a graph from an edge list, preserving insertion order.
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut list = Vec::with_capacity(edges.len());
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            validate_edge(i, u, v, w, n)?;
            list.push(Edge::new(u, v, w));
        }
        Ok(Graph { n, edges: list })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Value-semantic edge addition: returns a new graph, leaving `self` untouched.
    pub fn add_edge(&self, u: usize, v: usize, w: f64) -> Result<Graph> {
        validate_edge(self.edges.len(), u, v, w, self.n)?;
        let mut g = self.clone();
        g.edges.push(Edge::new(u, v, w));
        Ok(g)
    }

    /// Add several edges at once (same value semantics as `add_edge`).
    pub fn add_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for e in extra {
            validate_edge(g.edges.len(), e.u, e.v, e.w, g.n)?;
            g.edges.push(*e);
        }
        Ok(g)
    }

    /// Dense Laplacian L = B^T W B: weighted degrees on the diagonal,
    /// negated collapsed weights off-diagonal. Row sums are exactly zero
    /// because the diagonal is accumulated from the same edge terms.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            l[(e.u, e.u)] += e.w;
            l[(e.v, e.v)] += e.w;
            l[(e.u, e.v)] -= e.w;
            l[(e.v, e.u)] -= e.w;
        }
        l
    }

    /// Sparse Laplacian-times-vector without materializing the matrix.
    pub fn laplacian_apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for e in &self.edges {
            let d = e.w * (x[e.u] - x[e.v]);
            y[e.u] += d;
            y[e.v] -= d;
        }
        y
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        // union-find over the edge list
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut components = self.n;
        for e in &self.edges {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        components == 1
    }

    /// Max/min edge weight ratio; 1.0 for edgeless graphs.
    pub fn weight_ratio(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for e in &self.edges {
            lo = lo.min(e.w);
            hi = hi.max(e.w);
        }
        if self.edges.is_empty() {
            1.0
        } else {
            hi / lo
        }
    }
}

/// Candidate edges for augmentation. Stored order is the canonical processing
/// order everywhere (ties, interval splits, reproducibility).
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    edges: Vec<Edge>,
}

impl CandidateSet {
    /// Validates against the host graph's vertex range. Candidates may
    /// duplicate base edges (parallel edges are part of the problem).
    pub fn new(host: &Graph, pairs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (i, &(u, v, w)) in pairs.iter().enumerate() {
            validate_edge(i, u, v, w, host.vertex_count())?;
            edges.push(Edge::new(u, v, w));
        }
        Ok(CandidateSet { edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn get(&self, i: usize) -> Edge {
        self.edges[i]
    }
}
