//! JSON report schema shared by the CLI subcommands. Field order is fixed by
//! struct declaration, so identical analyses serialize byte-identically;
//! timings live in their own top-level key so they can be stripped for
//! determinism comparisons.

use crate::newton::NewtonBoundary;
use crate::nondeg::{ClassificationReport, Property, Provenance, PropertyVerdict, Status};
use crate::semiholo::{MConditions, SConditions};
use crate::solver::{SolveStats, SolverConfig, Witness};
use serde::Serialize;

#[derive(Serialize)]
pub struct ReportBoundary {
    pub vertices: Vec<(u32, u32)>,
    pub faces: Vec<ReportFace>,
    pub convenient: ConvenientFlags,
}

#[derive(Serialize)]
pub struct ReportFace {
    pub p: [u64; 2],
    pub k: String,
    pub lattice_points: Vec<(u32, u32)>,
}

#[derive(Serialize)]
pub struct ConvenientFlags {
    pub u: bool,
    pub v: bool,
}

impl ReportBoundary {
    pub fn from_boundary(b: &NewtonBoundary) -> Self {
        ReportBoundary {
            vertices: b.vertices.clone(),
            faces: b
                .one_faces
                .iter()
                .map(|f| ReportFace {
                    p: [f.weight.p1, f.weight.p2],
                    k: format!("{}/{}", f.weight.p1, f.weight.p2),
                    lattice_points: f.lattice_points.clone(),
                })
                .collect(),
            convenient: ConvenientFlags {
                u: b.u_convenient,
                v: b.v_convenient,
            },
        }
    }
}

#[derive(Serialize)]
pub struct ReportProperty {
    pub name: String,
    pub verdict: String,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReportWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub certificate: ReportStats,
}

#[derive(Serialize)]
pub struct ReportWitness {
    pub u: [f64; 2],
    pub v: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub certification: String,
}

#[derive(Serialize)]
pub struct ReportStats {
    pub boxes_processed: u64,
    pub max_depth_reached: u32,
    pub samples: u32,
    pub exact_probes: u32,
}

impl From<&SolveStats> for ReportStats {
    fn from(s: &SolveStats) -> Self {
        ReportStats {
            boxes_processed: s.boxes_processed,
            max_depth_reached: s.max_depth_reached,
            samples: s.samples,
            exact_probes: s.exact_probes,
        }
    }
}

fn witness_json(w: &Witness) -> ReportWitness {
    ReportWitness {
        u: w.u,
        v: w.v,
        exact: w.exact.clone(),
        certification: match w.certification {
            crate::solver::Certification::ExactArithmetic => "exact".into(),
            crate::solver::Certification::Krawczyk => "krawczyk".into(),
        },
    }
}

pub fn property_json(v: &PropertyVerdict) -> ReportProperty {
    let (verdict, witness, reason) = match &v.status {
        Status::Holds => ("holds".to_string(), None, None),
        Status::Fails { witness } => ("fails".to_string(), Some(witness_json(witness)), None),
        Status::Unknown { reason } => ("unknown".to_string(), None, Some(reason.clone())),
    };
    ReportProperty {
        name: v.property.name().to_string(),
        verdict,
        provenance: match &v.provenance {
            Provenance::Checked => "checked".into(),
            Provenance::Implied { rule } => format!("implied: {rule}"),
        },
        witness,
        reason,
        certificate: (&v.stats).into(),
    }
}

#[derive(Serialize)]
pub struct ConditionRecord {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn condition_json(name: &str, s: &Status) -> ConditionRecord {
    ConditionRecord {
        name: name.to_string(),
        verdict: match s {
            Status::Holds => "holds".into(),
            Status::Fails { .. } => "fails".into(),
            Status::Unknown { .. } => "unknown".into(),
        },
        reason: match s {
            Status::Unknown { reason } => Some(reason.clone()),
            _ => None,
        },
    }
}

#[derive(Serialize)]
pub struct SemiholoReport {
    pub conditions: Vec<ConditionRecord>,
    pub equivalence_enabled: bool,
    pub non_isolated: Option<ReportWitness>,
}

impl SemiholoReport {
    pub fn from_s(rec: &SConditions) -> Self {
        SemiholoReport {
            conditions: vec![
                condition_json("S-i", &rec.s_i),
                condition_json("S-ii", &rec.s_ii),
            ],
            equivalence_enabled: rec.equivalence_enabled,
            non_isolated: rec.non_isolated.as_ref().map(witness_json),
        }
    }

    pub fn from_m(rec: &MConditions) -> Self {
        SemiholoReport {
            conditions: vec![
                condition_json("M-i", &rec.m_i),
                condition_json("M-ii", &rec.m_ii),
                condition_json("M-iii", &rec.m_iii),
            ],
            equivalence_enabled: rec.equivalence_enabled,
            non_isolated: rec.non_isolated.as_ref().map(witness_json),
        }
    }
}

/// Top-level analysis report.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub boundary: ReportBoundary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rwh_weight: Option<[u64; 2]>,
    pub properties: Vec<ReportProperty>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semiholomorphic: Option<SemiholoReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor_conditions: Option<SemiholoReport>,
    pub config: SolverConfig,
    /// Wall-clock data; excluded from determinism comparisons.
    pub timings: Timings,
}

#[derive(Serialize, Default)]
pub struct Timings {
    pub total_ms: u128,
}

impl AnalysisReport {
    pub fn from_classification(rep: &ClassificationReport) -> Self {
        let order = [
            Property::Nd,
            Property::Snd,
            Property::Ind,
            Property::Sind,
            Property::Pnd,
            Property::Spnd,
            Property::WeaklyIsolated,
            Property::Isolated,
            Property::Smc,
        ];
        let mut properties = Vec::new();
        for p in order {
            if let Some(v) = rep.get(p) {
                properties.push(property_json(v));
            }
        }
        AnalysisReport {
            input: rep.input.clone(),
            boundary: ReportBoundary::from_boundary(&rep.boundary),
            rwh_weight: rep.rwh.map(|w| [w.p1, w.p2]),
            properties,
            semiholomorphic: None,
            milnor_conditions: None,
            config: rep.config,
            timings: Timings::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nondeg::classify;
    use crate::parse::parse;

    #[test]
    fn report_serializes_deterministically() {
        let f = parse("u^2 + v^3").unwrap();
        let cfg = SolverConfig::default();
        let rep1 = AnalysisReport::from_classification(&classify(&f, &cfg).unwrap()).to_json();
        let rep2 = AnalysisReport::from_classification(&classify(&f, &cfg).unwrap()).to_json();
        assert_eq!(rep1, rep2);
        assert!(rep1.contains("\"verdict\": \"holds\""));
    }
}
