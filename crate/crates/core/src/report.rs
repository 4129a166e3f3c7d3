//! Deterministic check reports: fixed ordering, fixed formatting, no
//! timestamps, so repeated runs with the same seed are byte-identical.

use std::fmt::Write as _;

/// Outcome of one named verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: String,
    /// Key parameters in `key=value` form, comma separated; may be empty.
    pub params: String,
    /// Worst observed defect, in the check's natural units.
    pub defect: f64,
    /// Pass threshold the defect was compared against.
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn from_defect(id: &str, params: String, defect: f64, tolerance: f64) -> Self {
        CheckResult {
            id: id.to_string(),
            params,
            defect,
            tolerance,
            pass: defect <= tolerance,
        }
    }

    /// A check with a boolean verdict and no meaningful defect scale.
    pub fn from_flag(id: &str, params: String, pass: bool) -> Self {
        CheckResult {
            id: id.to_string(),
            params,
            defect: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass,
        }
    }
}

/// A sorted collection of check results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    results: Vec<CheckResult>,
}

impl Report {
    pub fn new(mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| a.id.cmp(&b.id));
        Report { results }
    }

    pub fn push(&mut self, r: CheckResult) {
        let at = self
            .results
            .partition_point(|existing| existing.id.as_str() <= r.id.as_str());
        self.results.insert(at, r);
    }

    pub fn results(&self) -> &[CheckResult] {
        &self.results
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    /// Human-readable table, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .results
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(0)
            .max(5);
        for r in &self.results {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "{verdict}  {id:<width$}  defect={defect:.6e}  tol={tol:.6e}",
                id = r.id,
                defect = r.defect,
                tol = r.tolerance,
            );
            if !r.params.is_empty() {
                let _ = write!(out, "  [{}]", r.params);
            }
            out.push('\n');
        }
        let passed = self.results.iter().filter(|r| r.pass).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.results.len());
        out
    }

    /// Machine-readable twin of the text table.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("id,defect,tolerance,pass,params\n");
        for r in &self.results {
            let _ = writeln!(
                out,
                "{},{:.6e},{:.6e},{},{}",
                r.id,
                r.defect,
                r.tolerance,
                r.pass,
                csv_quote(&r.params)
            );
        }
        out
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new(vec![
            CheckResult::from_defect("weyl", "K=32".into(), 3.2e-12, 1e-10),
            CheckResult::from_defect("locality", "N=256, overlap=no".into(), 2.0e-7, 1e-6),
            CheckResult::from_flag("holder", "phi=blaschke".into(), true),
        ])
    }

    #[test]
    fn sorted_and_stable() {
        let r = sample();
        let ids: Vec<&str> = r.results().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, vec!["holder", "locality", "weyl"]);
        assert_eq!(r.render_text(), sample().render_text());
    }

    #[test]
    fn push_keeps_order() {
        let mut r = sample();
        r.push(CheckResult::from_defect("klein", String::new(), 0.0, 0.0));
        let ids: Vec<&str> = r.results().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, vec!["holder", "klein", "locality", "weyl"]);
    }

    #[test]
    fn verdicts_and_failures() {
        let mut r = sample();
        assert!(r.all_pass());
        r.push(CheckResult::from_defect("semigroup", String::new(), 0.5, 1e-4));
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
        assert!(r.render_text().contains("FAIL  semigroup"));
    }

    #[test]
    fn csv_escapes_commas() {
        let r = Report::new(vec![CheckResult::from_defect(
            "x",
            "a=1, b=2".into(),
            0.0,
            1.0,
        )]);
        assert!(r.render_csv().contains("\"a=1, b=2\""));
        assert!(r.render_csv().starts_with("id,defect,tolerance,pass,params\n"));
    }
}
