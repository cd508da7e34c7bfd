//! Arc certificates: a claimed arc with enough context to re-check it from
//! scratch. Verification rebuilds the field from the recorded modulus and
//! alpha, re-parses every point and recomputes every property; nothing stored
//! in the certificate is trusted.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{count_three_secants, is_complete, is_valid, secants, ArcKind};
use crate::gf::{FieldDescriptor, FieldError, FieldSpec};
use crate::plane::{Plane, PlaneError, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Valid,
    Complete,
    MinimalComplete,
    Maximal,
}

impl Claim {
    pub fn requires_completeness(self) -> bool {
        !matches!(self, Claim::Valid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcStats {
    pub k: usize,
    pub three_secant_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    MinComplete,
    Max,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::MinComplete => "min-complete",
            SearchMode::Max => "max",
        })
    }
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-complete" | "min_complete" | "min" => Ok(SearchMode::MinComplete),
            "max" | "max-size" | "max_size" => Ok(SearchMode::Max),
            other => Err(format!("unknown search mode {other:?}")),
        }
    }
}

/// The search that produced a minimal or maximal claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchMeta {
    pub q: u32,
    pub kind: ArcKind,
    pub mode: SearchMode,
    pub fix_frame: bool,
    pub permutation_reduction: bool,
    /// Smallest size examined (min-complete) or the size cap used (max).
    pub k_floor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_ceiling: Option<usize>,
    /// Upper bound used to stop a max search early, with its source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<(usize, String)>,
    pub answer: Option<usize>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCertificate {
    pub field: FieldDescriptor,
    pub kind: ArcKind,
    pub points: Vec<String>,
    pub claim: Claim,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<ArcStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_meta: Option<SearchMeta>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed field: {0}")]
    Field(#[from] FieldError),
    #[error("malformed point: {0}")]
    Point(#[from] PlaneError),
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("empty certificate file")]
    Empty,
}

impl ArcCertificate {
    /// Certificate for `points` with freshly computed stats.
    pub fn new(plane: &Plane, kind: ArcKind, points: &[ProjPoint], claim: Claim) -> Self {
        let mut sorted = points.to_vec();
        sorted.sort();
        let t = secants(plane, &sorted).values().filter(|p| p.len() == 3).count();
        ArcCertificate {
            field: plane.field().descriptor(),
            kind,
            points: sorted.iter().map(|p| plane.format_point(p)).collect(),
            claim,
            stats: Some(ArcStats {
                k: sorted.len(),
                three_secant_count: t,
            }),
            search_meta: None,
        }
    }

    pub fn with_search_meta(mut self, meta: SearchMeta) -> Self {
        self.search_meta = Some(meta);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

/// How a minimal or maximal claim is backed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attestation {
    NotClaimed,
    /// An exhaustive search log for this kind and size accompanies it.
    AttestedBySearchLog,
    Unattested,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub q: u32,
    pub kind: ArcKind,
    pub claim: Claim,
    pub k: usize,
    pub kind_valid: bool,
    pub complete: Option<bool>,
    pub recomputed_three_secants: Option<usize>,
    pub stats_ok: bool,
    pub extremality: Attestation,
    pub problems: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Re-checks a certificate from scratch. Errors only for encodings that
/// cannot be read; every failed property lands in `problems`.
pub fn verify_certificate(cert: &ArcCertificate) -> Result<VerificationReport, CertificateError> {
    let field = FieldSpec::from_descriptor(&cert.field)?;
    let plane = Plane::new(field)?;
    let points: Vec<ProjPoint> = cert
        .points
        .iter()
        .map(|s| plane.parse_point(s))
        .collect::<Result<_, _>>()?;
    let mut problems = Vec::new();

    let mut distinct = points.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != points.len() {
        problems.push(format!(
            "{} repeated point(s)",
            points.len() - distinct.len()
        ));
    }
    let k = distinct.len();

    let kind_valid = is_valid(&plane, &distinct, cert.kind);
    if !kind_valid {
        problems.push(format!("not a valid {} arc", cert.kind));
    }

    let complete = if cert.claim.requires_completeness() && kind_valid {
        let c = is_complete(&plane, &distinct, cert.kind).expect("validity checked above");
        if !c {
            problems.push(format!("not complete as a {} arc", cert.kind));
        }
        Some(c)
    } else {
        None
    };

    let recomputed = match count_three_secants(&plane, &distinct) {
        Ok(t) => Some(t),
        Err(e) => {
            if kind_valid {
                problems.push(e.to_string());
            }
            None
        }
    };
    let mut stats_ok = true;
    if let Some(stats) = cert.stats {
        if stats.k != k {
            stats_ok = false;
            problems.push(format!("stats.k = {} but the set has {k} points", stats.k));
        }
        if Some(stats.three_secant_count) != recomputed {
            stats_ok = false;
            problems.push(format!(
                "stats.three_secant_count = {} but recomputed {}",
                stats.three_secant_count,
                recomputed.map_or("n/a".to_string(), |t| t.to_string())
            ));
        }
    }

    let extremality = match cert.claim {
        Claim::Valid | Claim::Complete => Attestation::NotClaimed,
        Claim::MinimalComplete | Claim::Maximal => {
            let wanted = if cert.claim == Claim::Maximal {
                SearchMode::Max
            } else {
                SearchMode::MinComplete
            };
            match &cert.search_meta {
                Some(m)
                    if m.exhaustive
                        && m.mode == wanted
                        && m.kind == cert.kind
                        && m.q == plane.q()
                        && m.answer == Some(k) =>
                {
                    Attestation::AttestedBySearchLog
                }
                _ => {
                    problems.push(format!(
                        "{:?} claim lacks a matching exhaustive search log",
                        cert.claim
                    ));
                    Attestation::Unattested
                }
            }
        }
    };

    Ok(VerificationReport {
        q: plane.q(),
        kind: cert.kind,
        claim: cert.claim,
        k,
        kind_valid,
        complete,
        recomputed_three_secants: recomputed,
        stats_ok,
        extremality,
        problems,
    })
}

/// Certificates in a file: a single certificate, a JSON array of them, or a
/// bundle object with a `certificates` field.
pub fn parse_certificates(text: &str) -> Result<Vec<ArcCertificate>, CertificateError> {
    if text.trim().is_empty() {
        return Err(CertificateError::Empty);
    }
    let value: serde_json::Value = serde_json::from_str(text)?;
    let list = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value)?,
        serde_json::Value::Object(ref map) if map.contains_key("certificates") => {
            serde_json::from_value(map["certificates"].clone())?
        }
        other => vec![serde_json::from_value(other)?],
    };
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4_plane() -> Plane {
        Plane::new(FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap()).unwrap()
    }

    fn hyperoval_plus_point(plane: &Plane) -> Vec<ProjPoint> {
        ["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]", "[a:a^2:1]", "[a^2:a:1]", "[1:0:1]"]
            .iter()
            .map(|s| plane.parse_point(s).unwrap())
            .collect()
    }

    #[test]
    fn round_trip_and_verify() {
        let plane = gf4_plane();
        let cert = ArcCertificate::new(&plane, ArcKind::Generalized, &hyperoval_plus_point(&plane), Claim::Complete);
        let back = parse_certificates(&cert.to_json()).unwrap();
        assert_eq!(back, vec![cert.clone()]);
        let report = verify_certificate(&cert).unwrap();
        assert!(report.passed(), "{:?}", report.problems);
        assert_eq!(report.complete, Some(true));
    }

    #[test]
    fn stale_three_secant_count_is_rejected() {
        let plane = gf4_plane();
        let mut cert =
            ArcCertificate::new(&plane, ArcKind::Generalized, &hyperoval_plus_point(&plane), Claim::Valid);
        let true_t = cert.stats.unwrap().three_secant_count;
        cert.stats.as_mut().unwrap().three_secant_count = true_t + 1;
        let report = verify_certificate(&cert).unwrap();
        assert!(!report.passed());
        assert!(!report.stats_ok);
        assert_eq!(report.recomputed_three_secants, Some(true_t));
    }

    #[test]
    fn extremal_claims_need_a_search_log() {
        let plane = gf4_plane();
        let cert =
            ArcCertificate::new(&plane, ArcKind::Generalized, &hyperoval_plus_point(&plane), Claim::Maximal);
        let report = verify_certificate(&cert).unwrap();
        assert_eq!(report.extremality, Attestation::Unattested);
        assert!(!report.passed());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_certificates("  \n"), Err(CertificateError::Empty)));
        assert!(matches!(parse_certificates("{\"kind\": 3}"), Err(CertificateError::Json(_))));
        let plane = gf4_plane();
        let mut cert = ArcCertificate::new(&plane, ArcKind::Arc, &hyperoval_plus_point(&plane)[..4], Claim::Valid);
        cert.points[0] = "[1:b:0]".into();
        assert!(matches!(verify_certificate(&cert), Err(CertificateError::Point(_))));
        cert.field.modulus = vec![1, 0, 1];
        assert!(matches!(verify_certificate(&cert), Err(CertificateError::Field(_))));
    }
}
