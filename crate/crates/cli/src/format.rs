//! The plain-text instance file format.
//!
//! ```text
//! # optional comments anywhere
//! nstm 1 <n> <m> <q> <k>
//! e <u> <v> <w>            (m base edges)
//! c <u> <v> <w>            (q candidate edges)
//! ```
//!
//! Weights print through Rust's shortest round-trip `f64` formatting, so
//! serialize-then-parse reproduces every instance bit for bit.

use spantree::instances::InstanceSpec;
use spantree::{CandidateSet, Graph};
use std::fmt;

/// A parse failure with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// The file-carried part of an instance: graph shape, candidates, budget.
/// Accuracy, seed, and label are run parameters, not file content.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub n: usize,
    pub base_edges: Vec<(usize, usize, f64)>,
    pub candidate_edges: Vec<(usize, usize, f64)>,
    pub k: usize,
}

impl InstanceFile {
    pub fn from_spec(spec: &InstanceSpec) -> Self {
        InstanceFile {
            n: spec.base.vertex_count(),
            base_edges: spec.base.edges().iter().map(|e| (e.u, e.v, e.w)).collect(),
            candidate_edges: spec.candidates.edges().iter().map(|e| (e.u, e.v, e.w)).collect(),
            k: spec.k,
        }
    }

    /// Validate and lift into a full instance with default accuracy and seed.
    pub fn to_spec(&self, label: &str) -> anyhow::Result<InstanceSpec> {
        let base = Graph::new(self.n, &self.base_edges)?;
        if !base.is_connected() {
            anyhow::bail!("base graph is disconnected");
        }
        let candidates = CandidateSet::new(&base, &self.candidate_edges)?;
        if candidates.is_empty() {
            anyhow::bail!("instance has no candidate edges");
        }
        if self.k < 1 || self.k > candidates.len() {
            anyhow::bail!("k = {} is outside [1, {}]", self.k, candidates.len());
        }
        Ok(InstanceSpec {
            base,
            candidates,
            k: self.k,
            eps: 0.1,
            seed: 0,
            label: label.to_string(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or_else(|| err(0, "empty instance file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 || fields[0] != "nstm" {
            return Err(err(header_line, "expected header `nstm 1 <n> <m> <q> <k>`"));
        }
        if fields[1] != "1" {
            return Err(err(header_line, format!("unsupported format version `{}`", fields[1])));
        }
        let parse_count = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| err(header_line, format!("bad {what} `{s}`")))
        };
        let n = parse_count(fields[2], "vertex count")?;
        let m = parse_count(fields[3], "edge count")?;
        let q = parse_count(fields[4], "candidate count")?;
        let k = parse_count(fields[5], "budget")?;

        let mut base_edges = Vec::with_capacity(m);
        let mut candidate_edges = Vec::with_capacity(q);
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || !(fields[0] == "e" || fields[0] == "c") {
                return Err(err(line_no, format!("expected `e u v w` or `c u v w`, got `{line}`")));
            }
            let u = fields[1]
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad vertex `{}`", fields[1])))?;
            let v = fields[2]
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad vertex `{}`", fields[2])))?;
            let w = fields[3]
                .parse::<f64>()
                .map_err(|_| err(line_no, format!("bad weight `{}`", fields[3])))?;
            if u >= n || v >= n {
                return Err(err(line_no, format!("vertex out of range for n = {n}")));
            }
            if u == v {
                return Err(err(line_no, format!("self-loop at vertex {u}")));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(err(line_no, format!("non-positive weight {w}")));
            }
            if fields[0] == "e" {
                base_edges.push((u, v, w));
            } else {
                candidate_edges.push((u, v, w));
            }
        }
        if base_edges.len() != m {
            return Err(err(0, format!("header claims {m} base edges, found {}", base_edges.len())));
        }
        if candidate_edges.len() != q {
            return Err(err(
                0,
                format!("header claims {q} candidates, found {}", candidate_edges.len()),
            ));
        }
        Ok(InstanceFile { n, base_edges, candidate_edges, k })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "nstm 1 {} {} {} {}\n",
            self.n,
            self.base_edges.len(),
            self.candidate_edges.len(),
            self.k
        ));
        for &(u, v, w) in &self.base_edges {
            out.push_str(&format!("e {u} {v} {w}\n"));
        }
        for &(u, v, w) in &self.candidate_edges {
            out.push_str(&format!("c {u} {v} {w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a path with one closing candidate
nstm 1 3 2 1 1
e 0 1 1
e 1 2 1
c 0 2 2.5
";

    #[test]
    fn parse_sample() {
        let inst = InstanceFile::parse(SAMPLE).unwrap();
        assert_eq!(inst.n, 3);
        assert_eq!(inst.base_edges, vec![(0, 1, 1.0), (1, 2, 1.0)]);
        assert_eq!(inst.candidate_edges, vec![(0, 2, 2.5)]);
        assert_eq!(inst.k, 1);
    }

    #[test]
    fn round_trip_is_identity() {
        let inst = InstanceFile::parse(SAMPLE).unwrap();
        let again = InstanceFile::parse(&inst.serialize()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "nstm 1 3 1 0 1\ne 0 3 1\n";
        let e = InstanceFile::parse(bad).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"));

        let bad = "nstm 2 3 0 0 1\n";
        assert_eq!(InstanceFile::parse(bad).unwrap_err().line, 1);

        let bad = "nstm 1 3 2 0 1\ne 0 1 1\n";
        assert!(InstanceFile::parse(bad).unwrap_err().message.contains("claims 2 base edges"));
    }

    #[test]
    fn count_and_weight_validation() {
        assert!(InstanceFile::parse("nstm 1 2 1 0 1\ne 0 1 0\n").is_err());
        assert!(InstanceFile::parse("nstm 1 2 1 0 1\ne 1 1 1\n").is_err());
        assert!(InstanceFile::parse("").is_err());
    }
}
