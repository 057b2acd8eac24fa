//! CSV and JSON rendering. Energies are printed to 12 significant digits,
//! coefficients exactly.

use std::io::Write;

use bienergy_core::harness::{ComparisonRecord, ExtremalReport, SignGridReport, VerifyReport};
use bienergy_core::{EnergyMethod, EnergyResult, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

/// `v` rounded to 12 significant digits, in plain decimal notation.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-6..=15).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn num12(v: f64) -> Value {
    sig12(v).parse::<f64>().map_or(Value::Null, |x| json!(x))
}

fn short_e(v: f64) -> String {
    format!("{v:.3e}")
}

fn method_name(m: &EnergyMethod) -> String {
    match m {
        EnergyMethod::Eigenvalue => "eigenvalue".into(),
        EnergyMethod::CoulsonExplicit => "coulson-explicit".into(),
        EnergyMethod::CoulsonDifference { reference } => format!("coulson-difference-relative-to({reference})"),
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Usage(format!("cannot write output: {e}"))
}

fn to_csv<R: Serialize>(header: &[&str], rows: &[R]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

pub fn comparisons_csv(records: &[ComparisonRecord]) -> Result<String> {
    let rows: Vec<_> = records
        .iter()
        .map(|r| {
            (
                r.n,
                r.t,
                sig12(r.e_p66),
                sig12(r.e_r),
                sig12(r.difference),
                sig12(r.coulson_difference),
                r.methods_agree,
            )
        })
        .collect();
    to_csv(
        &["n", "t", "e_p66", "e_r", "difference", "coulson_difference", "methods_agree"],
        &rows,
    )
}

pub struct Emitter {
    json: bool,
}

impl Emitter {
    pub fn new(json: bool) -> Self {
        Emitter { json }
    }

    fn print(&self, s: &str) -> Result<()> {
        let mut out = std::io::stdout().lock();
        out.write_all(s.as_bytes()).map_err(csv_err)?;
        out.flush().map_err(csv_err)
    }

    pub fn json_records(&self, records: &[Value]) -> Result<()> {
        self.json_object(json!({ "records": records }))
    }

    fn json_object(&self, v: Value) -> Result<()> {
        let s = serde_json::to_string_pretty(&v).map_err(csv_err)?;
        self.print(&format!("{s}\n"))
    }

    pub fn energies(&self, label: &str, results: &[EnergyResult]) -> Result<()> {
        if self.json {
            let recs: Vec<Value> = results
                .iter()
                .map(|e| {
                    json!({
                        "graph": label,
                        "method": method_name(&e.method),
                        "energy": num12(e.value),
                        "error_bound": e.error_bound,
                        "eigenvalues": e.eigenvalues.as_ref().map(|v| v.iter().map(|x| num12(*x)).collect::<Vec<_>>()),
                    })
                })
                .collect();
            return self.json_records(&recs);
        }
        let rows: Vec<_> = results
            .iter()
            .map(|e| (label, method_name(&e.method), sig12(e.value), short_e(e.error_bound)))
            .collect();
        self.print(&to_csv(&["graph", "method", "energy", "error_bound"], &rows)?)
    }

    pub fn comparisons(&self, records: &[ComparisonRecord]) -> Result<()> {
        if self.json {
            let recs: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "t": r.t,
                        "e_p66": num12(r.e_p66),
                        "e_r": num12(r.e_r),
                        "difference": num12(r.difference),
                        "coulson_difference": num12(r.coulson_difference),
                        "methods_agree": r.methods_agree,
                    })
                })
                .collect();
            return self.json_records(&recs);
        }
        self.print(&comparisons_csv(records)?)
    }

    pub fn signgrid(&self, r: &SignGridReport) -> Result<()> {
        eprintln!(
            "signgrid {}: {} points, {} evaluations, {} violations",
            r.quantity,
            r.points,
            r.evaluations,
            r.violations.len()
        );
        if self.json {
            return self.json_object(json!({
                "quantity": r.quantity,
                "points": r.points,
                "evaluations": r.evaluations,
                "passed": r.passed(),
                "records": r.violations,
            }));
        }
        let rows: Vec<_> = r
            .violations
            .iter()
            .map(|v| (r.quantity.to_string(), &v.check, v.n, v.t, v.x, short_e(v.value)))
            .collect();
        self.print(&to_csv(&["quantity", "check", "n", "t", "x", "value"], &rows)?)
    }

    pub fn extremal(&self, r: &ExtremalReport) -> Result<()> {
        eprintln!(
            "extremal n = {}: {} graphs, winner is P66: {}, unique: {}, margin {}",
            r.n,
            r.class_size,
            r.winner_is_p66,
            r.unique,
            sig12(r.margin)
        );
        if self.json {
            let recs: Vec<Value> = r
                .top
                .iter()
                .map(|g| {
                    json!({
                        "rank": g.rank,
                        "energy": num12(g.energy),
                        "error_bound": g.error_bound,
                        "is_p66": g.is_p66,
                        "canonical": g.canonical.to_string(),
                    })
                })
                .collect();
            return self.json_object(json!({
                "n": r.n,
                "class_size": r.class_size,
                "unique": r.unique,
                "winner_is_p66": r.winner_is_p66,
                "margin": num12(r.margin),
                "records": recs,
            }));
        }
        let rows: Vec<_> = r
            .top
            .iter()
            .map(|g| (g.rank, sig12(g.energy), short_e(g.error_bound), g.is_p66, g.canonical.to_string()))
            .collect();
        self.print(&to_csv(&["rank", "energy", "error_bound", "is_p66", "canonical"], &rows)?)
    }

    pub fn verify(&self, r: &VerifyReport) -> Result<()> {
        let b = &r.base_case;
        if self.json {
            return self.json_object(json!({
                "passed": r.passed(),
                "records": r.checks,
                "base_case": {
                    "e_r_10_10": num12(b.e_r_10_10),
                    "e_p66_20": num12(b.e_p66_20),
                    "e_p66_12": num12(b.e_p66_12),
                    "r_minus_p66_20": num12(b.r_minus_p66_20),
                    "r_minus_p66_12": num12(b.r_minus_p66_12),
                },
            }));
        }
        eprintln!(
            "base case: E(R(10,10)) = {}, E(P66(20)) = {}, E(P66(12)) = {}",
            sig12(b.e_r_10_10),
            sig12(b.e_p66_20),
            sig12(b.e_p66_12)
        );
        let rows: Vec<_> = r
            .checks
            .iter()
            .map(|c| (&c.name, c.passed, format!("{:.2}", c.seconds), &c.detail))
            .collect();
        self.print(&to_csv(&["check", "passed", "seconds", "detail"], &rows)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(26.471588869936866), "26.4715888699");
        assert_eq!(sig12(2.0), "2.00000000000");
        assert_eq!(sig12(-0.16510005734104283), "-0.165100057341");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(128.2926271043212), "128.292627104");
    }
}
