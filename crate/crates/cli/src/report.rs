//! JSON wire formats.
//!
//! Big integers are written as decimal strings so consumers never lose
//! precision. Key order is stable.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use qcube_core::{DistanceProfile, FaceDistribution, IdentityReport, PointSet, RankBounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub side: String,
    pub label: String,
    pub value: String,
}

/// One identity evaluation. Sweep lines add `family` and `status`; failed
/// evaluations carry `error` instead of the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub identity: String,
    pub params: IndexMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
}

impl ReportJson {
    pub fn from_report(report: &IdentityReport, with_terms: bool) -> Self {
        let terms = with_terms.then(|| {
            let side = |name: &str, terms: &[qcube_core::Term]| {
                terms
                    .iter()
                    .map(|t| TermJson { side: name.to_string(), label: t.label.clone(), value: t.value.to_string() })
                    .collect::<Vec<_>>()
            };
            let mut all = side("lhs", &report.lhs_terms);
            all.extend(side("rhs", &report.rhs_terms));
            all
        });
        ReportJson {
            identity: report.identity.to_string(),
            params: report.params.iter().map(|(k, v)| (k.to_string(), v)).collect(),
            family: None,
            lhs: Some(report.lhs.to_string()),
            rhs: Some(report.rhs.to_string()),
            equal: Some(report.equal),
            status: None,
            error: None,
            terms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub lower: String,
    pub upper: String,
    pub holds: bool,
}

impl BoundsJson {
    pub fn new(bounds: &RankBounds, rank: usize) -> Self {
        BoundsJson { lower: bounds.lower.to_string(), upper: bounds.upper.to_string(), holds: bounds.contains(rank) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankJson {
    pub q: u32,
    pub n: usize,
    pub size: usize,
    pub duplicates_dropped: usize,
    pub rank: usize,
    pub distance_sum: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_rank: Option<usize>,
}

impl RankJson {
    pub fn new(
        set: &PointSet,
        duplicates: usize,
        rank: usize,
        profile: &DistanceProfile,
        bounds: Option<&RankBounds>,
        closed_rank: Option<usize>,
    ) -> Self {
        RankJson {
            q: set.params().q(),
            n: set.params().n(),
            size: set.len(),
            duplicates_dropped: duplicates,
            rank,
            distance_sum: profile.total().to_string(),
            bounds: bounds.map(|b| BoundsJson::new(b, rank)),
            closed_rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountJson {
    pub e: u64,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub counts: Vec<CountJson>,
    pub total: String,
    pub expected_total: String,
    pub conserved: bool,
}

impl DistributionJson {
    pub fn new(dist: &FaceDistribution, size: usize) -> Self {
        DistributionJson {
            q: dist.params().q(),
            n: dist.params().n(),
            k: dist.k(),
            size,
            counts: dist.iter().map(|(e, c)| CountJson { e, count: c.to_string() }).collect(),
            total: dist.total().to_string(),
            expected_total: qcube_core::face_count(dist.params(), dist.k()).to_string(),
            conserved: dist.is_conserved(),
        }
    }
}

/// `e,count` rows with a header line.
pub fn distribution_csv(dist: &FaceDistribution) -> String {
    let mut out = String::from("e,count\n");
    for (e, c) in dist.iter() {
        out.push_str(&format!("{e},{c}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryCounts {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub known_errata: u64,
    pub errors: u64,
}

/// Final line of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub summary: SummaryCounts,
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcube_core::{parse_pointset, verify_main, CubeParams, EvalOptions};

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(value: &T) {
        let text = serde_json::to_string(value).unwrap();
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, value);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn identity_report_schema() {
        let a = parse_pointset("000\n011\n101\n110", CubeParams::binary(3)).unwrap().set;
        let report = verify_main(&a, 2, 2, &EvalOptions::default()).unwrap();
        let json = ReportJson::from_report(&report, false);
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"main","params":{"q":2,"n":3,"size":4,"k":2,"s":2},"lhs":"6","rhs":"6","equal":true}"#
        );
        round_trip(&json);
        round_trip(&ReportJson::from_report(&report, true));
    }

    #[test]
    fn distribution_formats() {
        let a = parse_pointset("000\n011\n101\n110", CubeParams::binary(3)).unwrap().set;
        let dist = qcube_core::distribution(&a, 2, &Default::default()).unwrap();
        assert_eq!(distribution_csv(&dist), "e,count\n0,0\n2,6\n");
        let json = DistributionJson::new(&dist, a.len());
        assert!(json.conserved);
        assert_eq!(json.expected_total, "6");
        round_trip(&json);
    }

    #[test]
    fn summary_schema() {
        let s = SummaryJson { summary: SummaryCounts { total: 3, passed: 2, failed: 0, known_errata: 1, errors: 0 } };
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"summary":{"total":3,"passed":2,"failed":0,"known_errata":1,"errors":0}}"#
        );
        round_trip(&s);
    }
}
