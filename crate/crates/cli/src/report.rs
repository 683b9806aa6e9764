//! Machine-readable run reports. One JSON object per run with a stable
//! schema version; re-running with the same instance and seed reproduces the
//! selection exactly.

use serde::{Deserialize, Serialize};
use spantree::Selection;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub path: Option<String>,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionReport {
    pub chosen: Vec<usize>,
    pub edges: Vec<(usize, usize, f64)>,
    pub per_step_log_gain: Vec<f64>,
    pub total_log_gain: f64,
    pub budget_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleReport {
    Ok { opt_log_gain: f64, ratio: f64, subset: Vec<usize> },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub instance: InstanceMeta,
    pub algorithm: String,
    pub eps: Option<f64>,
    pub seed: u64,
    pub selection: SelectionReport,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl RunReport {
    pub fn selection_report(sel: &Selection, edges: Vec<(usize, usize, f64)>) -> SelectionReport {
        SelectionReport {
            chosen: sel.chosen.clone(),
            edges,
            per_step_log_gain: sel.per_step_log_gain.clone(),
            total_log_gain: sel.total_log_gain,
            budget_used: sel.budget_used,
            thresholds: sel.thresholds.clone(),
            diagnostic: sel.diagnostic.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// One-row CSV rendering (header + row) for spreadsheet-style use.
    pub fn to_csv(&self) -> String {
        format!(
            "label,algorithm,n,m,q,k,eps,seed,budget_used,total_log_gain,wall_time_ms,oracle_ratio\n\
             {},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.instance.label,
            self.algorithm,
            self.instance.n,
            self.instance.m,
            self.instance.q,
            self.instance.k,
            self.eps.map_or(String::new(), |e| e.to_string()),
            self.seed,
            self.selection.budget_used,
            self.selection.total_log_gain,
            self.wall_time_ms,
            match &self.oracle {
                Some(OracleReport::Ok { ratio, .. }) => ratio.to_string(),
                _ => String::new(),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            instance: InstanceMeta {
                path: None,
                label: "test".into(),
                n: 4,
                m: 3,
                q: 2,
                k: 1,
            },
            algorithm: "nstm".into(),
            eps: Some(0.1),
            seed: 7,
            selection: SelectionReport {
                chosen: vec![1],
                edges: vec![(0, 2, 1.0)],
                per_step_log_gain: vec![1.5],
                total_log_gain: 1.5,
                budget_used: 1,
                thresholds: Some(vec![2.0]),
                diagnostic: None,
            },
            wall_time_ms: 0.25,
            oracle: Some(OracleReport::Ok { opt_log_gain: 1.5, ratio: 1.0, subset: vec![1] }),
        };
        let parsed: RunReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(parsed.selection.chosen, vec![1]);
        assert_eq!(parsed.schema_version, SCHEMA_VERSION);
        assert!(report.to_csv().lines().count() == 2);
    }
}
