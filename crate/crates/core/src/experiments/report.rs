//! CSV tables, acceptance checks and the summary files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;

/// A numeric table written as CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(file: impl Into<String>, header: &[&str]) -> Self {
        Self { file: file.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[c]).collect())
    }

    /// Values use 17 significant digits so that reruns compare byte for byte.
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// How a reproduced value is compared with its reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|value - reference| <= tolerance`.
    Within,
    /// `value >= reference - tolerance`.
    AtLeast,
    /// `value <= reference + tolerance`.
    AtMost,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Within => "within",
            Relation::AtLeast => "at_least",
            Relation::AtMost => "at_most",
        }
    }
}

/// One reproduced number against its reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub criterion: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Check {
    pub fn within(criterion: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Self {
        Self { criterion: criterion.into(), value, reference, tolerance, relation: Relation::Within }
    }

    pub fn at_least(criterion: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { criterion: criterion.into(), value, reference: bound, tolerance: 0.0, relation: Relation::AtLeast }
    }

    pub fn at_most(criterion: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { criterion: criterion.into(), value, reference: bound, tolerance: 0.0, relation: Relation::AtMost }
    }

    pub fn pass(&self) -> bool {
        if !self.value.is_finite() {
            return false;
        }
        match self.relation {
            Relation::Within => (self.value - self.reference).abs() <= self.tolerance,
            Relation::AtLeast => self.value >= self.reference - self.tolerance,
            Relation::AtMost => self.value <= self.reference + self.tolerance,
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {}: value {} {} {}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.criterion,
            format_g(self.value),
            self.relation.as_str(),
            format_g(self.reference)
        );
        if self.tolerance != 0.0 {
            s.push_str(&format!(" (tol {})", format_g(self.tolerance)));
        }
        s
    }
}

fn format_g(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e5) {
        format!("{v:.4e}")
    } else {
        let s = format!("{v:.10}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Everything a scenario produced.
#[derive(Clone, Debug, Default)]
pub struct ScenarioOutcome {
    pub name: String,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    /// Free-text lines for the console and `notes.txt`.
    pub notes: Vec<String>,
}

impl ScenarioOutcome {
    pub fn new(name: &str) -> Self {
        Self { name: name.to_string(), ..Self::default() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn check(&self, criterion: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.criterion == criterion)
    }
}

pub fn summary_csv(checks: &[Check]) -> String {
    let mut s = String::from("criterion,value,reference,tolerance,relation,pass\n");
    for c in checks {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            c.criterion,
            format_value(c.value),
            format_value(c.reference),
            format_value(c.tolerance),
            c.relation.as_str(),
            c.pass()
        );
    }
    s
}

/// A gnuplot script that draws every column of every table against the first.
pub fn plot_script(tables: &[Table]) -> String {
    let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\n");
    for t in tables {
        if t.header.len() < 2 {
            continue;
        }
        let stem = t.file.trim_end_matches(".csv");
        let _ = writeln!(s, "set output '{stem}.png'");
        let _ = writeln!(s, "set xlabel '{}'", t.header[0]);
        let series: Vec<String> =
            (2..=t.header.len()).map(|c| format!("'{}' using 1:{c} with lines", t.file)).collect();
        let _ = writeln!(s, "plot {}", series.join(", \\\n     "));
    }
    s
}

/// Writes the tables, `summary.csv`, `notes.txt`, `plot.gp` and the
/// effective configuration into `dir`.
pub fn emit_report(outcome: &ScenarioOutcome, config_text: &str, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for t in &outcome.tables {
        fs::write(dir.join(&t.file), t.to_csv())?;
    }
    fs::write(dir.join("summary.csv"), summary_csv(&outcome.checks))?;
    let mut notes = outcome.notes.join("\n");
    notes.push('\n');
    fs::write(dir.join("notes.txt"), notes)?;
    fs::write(dir.join("plot.gp"), plot_script(&outcome.tables))?;
    fs::write(dir.join("config.txt"), config_text)?;
    Ok(())
}
