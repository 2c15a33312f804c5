//! A tiny vocabulary for inequality checks shared by all modules.

use serde::Serialize;

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Comparison {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Comparison {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    /// `rhs - lhs`; negative means the inequality is violated.
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    /// True when the margin is at least `-tol`. NaN never holds.
    pub fn holds(&self, tol: f64) -> bool {
        self.margin() >= -tol
    }
}

/// The comparison with the smallest margin (NaN margins sort first).
pub fn worst(items: &[Comparison]) -> Option<&Comparison> {
    items.iter().min_by(|a, b| {
        let (x, y) = (a.margin(), b.margin());
        match (x.is_nan(), y.is_nan()) {
            (true, _) => std::cmp::Ordering::Less,
            (_, true) => std::cmp::Ordering::Greater,
            _ => x.partial_cmp(&y).unwrap(),
        }
    })
}

/// Running summary of many comparisons: how many were checked and the one
/// with the smallest margin. Used where storing every comparison would be
/// wasteful (table invariants check O(n^3) pairs).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub label: String,
    pub checked: usize,
    pub worst: Option<Comparison>,
}

impl Summary {
    pub fn new(label: impl Into<String>) -> Self {
        Summary {
            label: label.into(),
            checked: 0,
            worst: None,
        }
    }

    fn is_worse(&self, margin: f64) -> bool {
        match &self.worst {
            None => true,
            Some(w) => !w.margin().is_nan() && (margin.is_nan() || margin < w.margin()),
        }
    }

    pub fn push(&mut self, c: Comparison) {
        self.checked += 1;
        if self.is_worse(c.margin()) {
            self.worst = Some(c);
        }
    }

    /// Record `lhs <= rhs` under a label built lazily (only kept if worst).
    pub fn record(&mut self, lhs: f64, rhs: f64, label: impl FnOnce() -> String) {
        self.checked += 1;
        if self.is_worse(rhs - lhs) {
            self.worst = Some(Comparison::new(label(), lhs, rhs));
        }
    }

    pub fn merge(&mut self, other: Summary) {
        let n = other.checked;
        if let Some(w) = other.worst {
            self.push(w);
            self.checked += n - 1;
        }
    }

    /// Smallest margin seen (`+inf` when nothing was checked).
    pub fn min_margin(&self) -> f64 {
        self.worst
            .as_ref()
            .map_or(f64::INFINITY, Comparison::margin)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.worst.as_ref().map_or(true, |w| w.holds(tol))
    }
}
