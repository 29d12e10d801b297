//! Serializable report of one classification run.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use transum_core::numeric::{reduced_value, NumericResult};
use transum_core::{OkadaReport, ReducedSum, Verdict, VerdictKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub reduced: ReducedJson,
    pub okada: Option<OkadaJson>,
    pub verdict: VerdictJson,
    pub numeric: NumericJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedJson {
    pub q: u64,
    pub offset: String,
    pub terms: Vec<(u64, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OkadaJson {
    pub condition_j: Vec<(u64, String)>,
    pub condition_p: Vec<(u64, String)>,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kind: String,
    pub value: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericJson {
    pub value: f64,
    pub error_bound: f64,
}

fn residuals(rows: &[(u64, BigRational)]) -> Vec<(u64, String)> {
    rows.iter().map(|(k, v)| (*k, v.to_string())).collect()
}

pub fn kind_name(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::RationalValue => "RationalValue",
        VerdictKind::Transcendental => "Transcendental",
    }
}

impl From<&OkadaReport> for OkadaJson {
    fn from(r: &OkadaReport) -> Self {
        OkadaJson {
            condition_j: residuals(&r.condition_j),
            condition_p: residuals(&r.condition_p),
            vanishes: r.vanishes,
        }
    }
}

impl From<&ReducedSum> for ReducedJson {
    fn from(rs: &ReducedSum) -> Self {
        ReducedJson {
            q: rs.q,
            offset: rs.offset.to_string(),
            terms: residuals(&rs.terms),
        }
    }
}

impl From<NumericResult> for NumericJson {
    fn from(n: NumericResult) -> Self {
        NumericJson {
            value: n.value,
            error_bound: n.error_bound,
        }
    }
}

impl Report {
    pub fn new(numerator: String, denominator: String, verdict: &Verdict) -> Self {
        Report {
            input: InputEcho {
                numerator,
                denominator,
            },
            reduced: (&verdict.reduced).into(),
            okada: verdict.certificate.as_ref().map(Into::into),
            verdict: VerdictJson {
                kind: kind_name(verdict.kind).into(),
                value: verdict.value.as_ref().map(ToString::to_string),
                notes: verdict.notes.clone(),
            },
            numeric: reduced_value(&verdict.reduced).into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let list = |rows: &[(u64, String)], key: &str| {
            rows.iter()
                .map(|(k, v)| format!("{key}={k}: {v}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(out, "input:       ({}) / ({})", self.input.numerator, self.input.denominator).unwrap();
        writeln!(out, "reduced:     q={} offset={}", self.reduced.q, self.reduced.offset).unwrap();
        writeln!(out, "  terms:     {}", list(&self.reduced.terms, "r")).unwrap();
        match &self.okada {
            Some(o) => {
                writeln!(out, "okada:       vanishes={}", o.vanishes).unwrap();
                writeln!(out, "  units:     {}", list(&o.condition_j, "a")).unwrap();
                writeln!(out, "  primes:    {}", list(&o.condition_p, "p")).unwrap();
            }
            None => writeln!(out, "okada:       not needed (no periodic part)").unwrap(),
        }
        match &self.verdict.value {
            Some(v) => writeln!(out, "verdict:     {} {v}", self.verdict.kind).unwrap(),
            None => writeln!(out, "verdict:     {}", self.verdict.kind).unwrap(),
        }
        for note in &self.verdict.notes {
            writeln!(out, "  note:      {note}").unwrap();
        }
        writeln!(
            out,
            "numeric:     {} +/- {}",
            format_value(self.numeric.value),
            format_bound(self.numeric.error_bound)
        )
        .unwrap();
        out
    }
}

/// Fixed notation with 12 significant digits; values below the last printed place show as zero.
pub fn format_value(v: f64) -> String {
    if v.abs() < 1e-11 {
        return "0.00000000000".into();
    }
    let decimals = (11 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn format_bound(b: f64) -> String {
    format!("{b:.1e}")
}
