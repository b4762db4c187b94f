use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{run_scenario, Report, Scenario, StepStatus};
use crate::error::Result;

/// Bundled scenarios: row label, file name, source.
pub const BUNDLED: &[(&str, &str, &str)] = &[
    ("curve-product induction", "induction.json", include_str!("../../scenarios/induction.json")),
    ("Kummer invariance", "kummer_n2.json", include_str!("../../scenarios/kummer_n2.json")),
    ("CY even (Enriques-type)", "enriques.json", include_str!("../../scenarios/enriques.json")),
    ("CY odd (bielliptic)", "bielliptic.json", include_str!("../../scenarios/bielliptic.json")),
    ("Cynk-Hulek m=2", "ch_z2_depth8.json", include_str!("../../scenarios/ch_z2_depth8.json")),
    ("Cynk-Hulek m=3", "ch_z3_depth6.json", include_str!("../../scenarios/ch_z3_depth6.json")),
    ("restriction to fibers", "restriction.json", include_str!("../../scenarios/restriction.json")),
];

/// A bundled scenario by file name.
pub fn bundled(file: &str) -> Option<Result<Scenario>> {
    BUNDLED
        .iter()
        .find(|(_, f, _)| *f == file)
        .map(|(_, f, text)| Scenario::from_json(text, f))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixRow {
    pub row: String,
    pub file: String,
    pub tag: Option<String>,
    pub pass: bool,
    pub steps_passed: usize,
    pub steps_total: usize,
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationMatrix {
    pub rows: Vec<MatrixRow>,
    pub pass: bool,
}

impl VerificationMatrix {
    pub fn without_timings(mut self) -> Self {
        for r in &mut self.rows {
            r.report.timings = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }

    pub fn render_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.row.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let pad = width - r.row.chars().count();
            let millis: f64 = r.report.timings.iter().flatten().map(|t| t.millis).sum();
            let _ = writeln!(
                out,
                "{}{} | {} | {}/{} steps | {:>9.1} ms",
                r.row,
                " ".repeat(pad),
                if r.pass { "PASS" } else { "FAIL" },
                r.steps_passed,
                r.steps_total,
                millis
            );
        }
        let _ = writeln!(out, "{}", if self.pass { "ALL PASS" } else { "FAILED" });
        out
    }
}

/// Runs the bundled suite, optionally restricted to one tag, in parallel.
pub fn emit_verification_matrix(only: Option<&str>) -> Result<VerificationMatrix> {
    let selected: Vec<(&str, &str, Scenario)> = BUNDLED
        .iter()
        .map(|(row, file, text)| Scenario::from_json(text, file).map(|s| (*row, *file, s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, _, s)| only.is_none_or(|t| s.tag.as_deref() == Some(t)))
        .collect();
    let rows = selected
        .par_iter()
        .map(|(row, file, s)| {
            let report = run_scenario(s)?;
            Ok(MatrixRow {
                row: (*row).to_string(),
                file: (*file).to_string(),
                tag: s.tag.clone(),
                pass: report.pass,
                steps_passed: report.steps.iter().filter(|x| x.status == StepStatus::Pass).count(),
                steps_total: report.steps.len(),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationMatrix {
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse_and_resolve() {
        for (_, f, text) in BUNDLED {
            Scenario::from_json(text, f).unwrap().resolve().unwrap();
        }
        assert!(bundled("nope.json").is_none());
    }

    #[test]
    fn ch_filter_gives_two_rows() {
        let m = emit_verification_matrix(Some("ch")).unwrap();
        assert_eq!(m.rows.len(), 2);
        assert!(m.pass, "{}", m.render_text());
    }
}
