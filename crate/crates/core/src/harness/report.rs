//! Verification reports: JSON persistence and CSV sweep export.

use crate::check::{Comparison, Summary};
use crate::error::Result;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Relative tolerance applied to floating point inequality checks.
pub const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub version: String,
    pub seed: u64,
    /// Seconds since the Unix epoch. Taken from `SOURCE_DATE_EPOCH` when
    /// set and 0 otherwise, so identical configurations give identical
    /// reports.
    pub timestamp: u64,
}

impl Meta {
    pub fn new(seed: u64) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp,
        }
    }
}

/// One inequality `lhs <= rhs`; `pass = margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    /// The mathematical statement the check is about.
    pub paper_anchor: String,
    /// Descriptor of the inputs (grid, exponent, sizes).
    pub inputs: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn scaled_tol(lhs: f64, rhs: f64) -> f64 {
    REL_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

impl CheckEntry {
    /// `lhs <= rhs` with an absolute tolerance.
    pub fn new(
        id: &str,
        anchor: &str,
        inputs: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let margin = rhs - lhs;
        CheckEntry {
            id: id.to_string(),
            paper_anchor: anchor.to_string(),
            inputs: inputs.into(),
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
        }
    }

    /// `lhs <= rhs` with the relative tolerance [`REL_TOL`].
    pub fn inequality(
        id: &str,
        anchor: &str,
        inputs: impl Into<String>,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        Self::new(id, anchor, inputs, lhs, rhs, scaled_tol(lhs, rhs))
    }

    /// Exact `lhs <= rhs` (zero tolerance).
    pub fn exact(id: &str, anchor: &str, inputs: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::new(id, anchor, inputs, lhs, rhs, 0.0)
    }

    /// `count` failures among `total` cases, passing only at zero.
    pub fn count(
        id: &str,
        anchor: &str,
        inputs: impl Into<String>,
        failures: usize,
        total: usize,
    ) -> Self {
        let mut e = Self::exact(id, anchor, inputs, failures as f64, 0.0);
        e.inputs = format!("{}; cases={total}", e.inputs);
        e
    }

    pub fn from_comparison(
        id: &str,
        anchor: &str,
        inputs: impl Into<String>,
        c: &Comparison,
    ) -> Self {
        Self::inequality(
            id,
            anchor,
            format!("{}; {}", inputs.into(), c.label),
            c.lhs,
            c.rhs,
        )
    }

    /// Worst comparison of a summary; an empty summary passes vacuously.
    pub fn from_summary(id: &str, anchor: &str, inputs: impl Into<String>, s: &Summary) -> Self {
        let inputs = format!("{}; checked={}", inputs.into(), s.checked);
        match &s.worst {
            Some(w) => Self::inequality(
                id,
                anchor,
                format!("{inputs}; worst at {}", w.label),
                w.lhs,
                w.rhs,
            ),
            None => Self::exact(id, anchor, inputs, 0.0, 0.0),
        }
    }

    /// A check that failed to run (error or panic).
    pub fn failure(id: &str, anchor: &str, reason: impl Into<String>) -> Self {
        CheckEntry {
            id: id.to_string(),
            paper_anchor: anchor.to_string(),
            inputs: reason.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            tolerance: 0.0,
            pass: false,
        }
    }
}

/// One sweep measurement: named values for a `(family, p, n)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub family: String,
    pub p: f64,
    pub n: usize,
    pub values: BTreeMap<String, f64>,
}

impl From<crate::harness::sweep::SweepRow> for SweepEntry {
    fn from(r: crate::harness::sweep::SweepRow) -> Self {
        SweepEntry {
            family: r.family.name().to_string(),
            p: r.p,
            n: r.n,
            values: r.values,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub meta: Meta,
    pub checks: Vec<CheckEntry>,
    pub sweeps: Vec<SweepEntry>,
}

impl CheckReport {
    pub fn new(seed: u64) -> Self {
        CheckReport {
            meta: Meta::new(seed),
            checks: Vec::new(),
            sweeps: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON. Non-finite numbers are written as `null`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serialisable");
        s.push('\n');
        s
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_json().as_bytes())?;
        Ok(())
    }

    pub fn write_sweeps_csv<W: Write>(&self, w: W) -> Result<()> {
        write_sweeps_csv(&self.sweeps, w)
    }
}

/// `family,p,n,key,value` rows, one per named value.
pub fn write_sweeps_csv<W: Write>(rows: &[SweepEntry], mut w: W) -> Result<()> {
    writeln!(w, "family,p,n,key,value")?;
    for r in rows {
        for (k, v) in &r.values {
            writeln!(w, "{},{:?},{},{},{:?}", r.family, r.p, r.n, k, v)?;
        }
    }
    Ok(())
}
