//! Serializable run reports.
//!
//! Every entry of [`RunReport::results`] carries `theorem_id`, `margin` and
//! `pass` at its top level, whatever its kind.

use radconvex_core::{InequalityReport, IntegralReport, RadicalProfile};
use serde::{Deserialize, Serialize};

pub const CLASSIFY_ID: &str = "RADICAL_ORDER";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub spec_text: String,
    pub results: Vec<ResultEntry>,
    /// RFC 3339 UTC timestamp.
    pub started_at: String,
    pub duration_ms: u64,
    pub overall_pass: bool,
}

impl RunReport {
    pub fn new(command: String, spec_text: String, results: Vec<ResultEntry>) -> Self {
        let overall_pass = results.iter().all(ResultEntry::pass);
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            command,
            spec_text,
            results,
            started_at: String::new(),
            duration_ms: 0,
            overall_pass,
        }
    }

    /// Copy with the timing fields blanked, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        Self { started_at: String::new(), duration_ms: 0, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultEntry {
    Inequality(InequalityReport),
    Integral(IntegralReport),
    Classification(Classification),
}

impl ResultEntry {
    pub fn pass(&self) -> bool {
        match self {
            ResultEntry::Inequality(r) => r.pass,
            ResultEntry::Integral(r) => r.pass,
            ResultEntry::Classification(c) => c.pass,
        }
    }

    pub fn margin(&self) -> f64 {
        match self {
            ResultEntry::Inequality(r) => r.margin,
            ResultEntry::Integral(r) => r.margin,
            ResultEntry::Classification(c) => c.margin,
        }
    }

    pub fn theorem_id(&self) -> &str {
        match self {
            ResultEntry::Inequality(r) => r.theorem_id.as_str(),
            ResultEntry::Integral(r) => r.theorem_id.as_str(),
            ResultEntry::Classification(c) => &c.theorem_id,
        }
    }

    /// Left-hand value, or the first link of a chain.
    pub fn lhs(&self) -> f64 {
        match self {
            ResultEntry::Inequality(r) => r.lhs_total(),
            ResultEntry::Integral(r) => r.lhs,
            ResultEntry::Classification(c) => c.profile.p_max_estimate,
        }
    }

    pub fn rhs(&self) -> f64 {
        match self {
            ResultEntry::Inequality(r) => r.rhs,
            ResultEntry::Integral(r) => r.rhs,
            ResultEntry::Classification(c) => c.p_cap,
        }
    }
}

/// Outcome of `classify`.
///
/// `pass` means the grid estimate and the average-value screen agree: no
/// screened order at or below the largest passing probe is refuted, and the
/// probe trace is downward closed. `margin` is the smallest `rhs - lhs` over
/// those screened orders (0 when there are none).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub theorem_id: String,
    pub grid_n: usize,
    pub x_max: f64,
    pub tol: f64,
    pub p_cap: f64,
    pub iters: u32,
    pub profile: RadicalProfile,
    /// Screened orders refuted by the average-value test.
    pub refuted_orders: Vec<f64>,
    pub verdict: String,
    pub margin: f64,
    pub pass: bool,
}
