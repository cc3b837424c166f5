use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};

/// Outcome of one named comparison `lhs` vs `rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    /// When set the tolerance is scaled by `max(|lhs|, |rhs|, 1)`.
    pub relative: bool,
    pub pass: bool,
    pub n_samples: Option<u64>,
    pub notes: String,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64, relative: bool) -> Self {
        let mut r = VerificationReport {
            check_id: check_id.into(),
            lhs,
            rhs,
            tolerance,
            relative,
            pass: false,
            n_samples: None,
            notes: String::new(),
        };
        r.pass = r.within_tolerance();
        r
    }

    pub fn absolute(check_id: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(check_id, lhs, rhs, tolerance, false)
    }

    pub fn relative(check_id: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(check_id, lhs, rhs, tolerance, true)
    }

    /// A check whose inputs could not be computed; always fails.
    pub fn errored(check_id: impl Into<String>, err: &Error) -> Self {
        Self::absolute(check_id, f64::NAN, f64::NAN, 0.0).with_notes(format!("error: {err}"))
    }

    /// A qualitative condition: `lhs` is 0 when it holds and 1 when it is violated.
    pub fn condition(check_id: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self::absolute(check_id, if holds { 0.0 } else { 1.0 }, 0.0, 0.0).with_notes(detail)
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.n_samples = Some(n as u64);
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        let notes = notes.into();
        if !notes.is_empty() {
            if !self.notes.is_empty() {
                self.notes.push_str("; ");
            }
            self.notes.push_str(&notes);
        }
        self
    }

    pub fn deviation(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn within_tolerance(&self) -> bool {
        let scale = if self.relative {
            self.lhs.abs().max(self.rhs.abs()).max(1.0)
        } else {
            1.0
        };
        self.deviation() <= self.tolerance * scale
    }
}

const FIELDS: [&str; 8] = [
    "check_id",
    "lhs",
    "rhs",
    "tolerance",
    "relative",
    "pass",
    "n_samples",
    "notes",
];

fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_float(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { fmt_float(x) } else { "null".into() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

#[derive(Serialize)]
struct JsonOut<'a> {
    check_id: &'a str,
    lhs: Box<RawValue>,
    rhs: Box<RawValue>,
    tolerance: Box<RawValue>,
    relative: bool,
    pass: bool,
    n_samples: Option<u64>,
    notes: &'a str,
}

#[derive(Deserialize)]
struct JsonIn {
    check_id: String,
    lhs: Option<f64>,
    rhs: Option<f64>,
    tolerance: Option<f64>,
    relative: bool,
    pass: bool,
    n_samples: Option<u64>,
    notes: String,
}

/// JSON array of reports, floats with 17 significant digits; non-finite values become `null`.
pub fn report_to_json(reports: &[VerificationReport]) -> String {
    let rows: Vec<JsonOut> = reports
        .iter()
        .map(|r| JsonOut {
            check_id: &r.check_id,
            lhs: json_float(r.lhs),
            rhs: json_float(r.rhs),
            tolerance: json_float(r.tolerance),
            relative: r.relative,
            pass: r.pass,
            n_samples: r.n_samples,
            notes: &r.notes,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("reports serialize")
}

pub fn parse_json(text: &str) -> Result<Vec<VerificationReport>> {
    let rows: Vec<JsonIn> = serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
    Ok(rows
        .into_iter()
        .map(|r| VerificationReport {
            check_id: r.check_id,
            lhs: r.lhs.unwrap_or(f64::NAN),
            rhs: r.rhs.unwrap_or(f64::NAN),
            tolerance: r.tolerance.unwrap_or(f64::NAN),
            relative: r.relative,
            pass: r.pass,
            n_samples: r.n_samples,
            notes: r.notes,
        })
        .collect())
}

/// CSV with a fixed header row, floats with 17 significant digits.
pub fn report_to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FIELDS).expect("in-memory write");
    for r in reports {
        w.write_record([
            r.check_id.as_str(),
            &fmt_float(r.lhs),
            &fmt_float(r.rhs),
            &fmt_float(r.tolerance),
            if r.relative { "true" } else { "false" },
            if r.pass { "true" } else { "false" },
            &r.n_samples.map(|n| n.to_string()).unwrap_or_default(),
            &r.notes,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

pub fn parse_csv(text: &str) -> Result<Vec<VerificationReport>> {
    let bad = |e: &dyn std::fmt::Display| Error::Serialization(e.to_string());
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| bad(&e))?.clone();
    if header.iter().ne(FIELDS) {
        return Err(Error::Serialization(format!("unexpected header {header:?}")));
    }
    let float = |s: &str| s.parse::<f64>().map_err(|e| bad(&e));
    let flag = |s: &str| s.parse::<bool>().map_err(|e| bad(&e));
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| bad(&e))?;
        let n_samples = match &rec[6] {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|e| bad(&e))?),
        };
        out.push(VerificationReport {
            check_id: rec[0].to_string(),
            lhs: float(&rec[1])?,
            rhs: float(&rec[2])?,
            tolerance: float(&rec[3])?,
            relative: flag(&rec[4])?,
            pass: flag(&rec[5])?,
            n_samples,
            notes: rec[7].to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule() {
        assert!(VerificationReport::absolute("a", 1.0, 1.0 + 1e-9, 1e-8).pass);
        assert!(!VerificationReport::absolute("a", 1.0, 1.1, 1e-8).pass);
        assert!(VerificationReport::relative("r", 1e6, 1e6 + 1.0, 1e-5).pass);
        assert!(!VerificationReport::absolute("n", f64::NAN, 0.0, 1.0).pass);
        assert!(!VerificationReport::condition("c", false, "").pass);
    }

    #[test]
    fn empty_csv_has_header() {
        assert_eq!(report_to_csv(&[]).trim_end(), FIELDS.join(","));
        assert!(parse_csv(&report_to_csv(&[])).unwrap().is_empty());
    }
}
