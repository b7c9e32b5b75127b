//! JSON form of the growth report.

use pow2qe_core::pipeline::{GrowthReport, IterationReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationJson {
    pub phase: String,
    #[serde(rename = "length_Dn_weighted")]
    pub length_dn_weighted: usize,
    pub length_symbols: usize,
    pub rcf_calls: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReportJson {
    pub iterations: Vec<IterationJson>,
    pub result_length: usize,
}

impl From<&IterationReport> for IterationJson {
    fn from(r: &IterationReport) -> Self {
        IterationJson {
            phase: r.phase.clone(),
            length_dn_weighted: r.length_dn_weighted,
            length_symbols: r.length_symbols,
            rcf_calls: r.rcf_calls,
            millis: r.millis,
        }
    }
}

impl From<&GrowthReport> for GrowthReportJson {
    fn from(r: &GrowthReport) -> Self {
        GrowthReportJson { iterations: r.iterations.iter().map(IterationJson::from).collect(), result_length: r.result_length }
    }
}

impl GrowthReportJson {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Call counts and times never decrease from one iteration to the next.
    pub fn is_monotone(&self) -> bool {
        self.iterations.windows(2).all(|w| w[0].rcf_calls <= w[1].rcf_calls && w[0].millis <= w[1].millis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        let r = GrowthReportJson {
            iterations: vec![IterationJson { phase: "step1".into(), length_dn_weighted: 3, length_symbols: 2, rcf_calls: 1, millis: 0 }],
            result_length: 2,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["iterations"][0]["length_Dn_weighted"], 3);
        assert_eq!(v["result_length"], 2);
        assert!(r.is_monotone());
    }
}
