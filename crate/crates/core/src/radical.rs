//! Numeric decision of p-radical convexity.
//!
//! `f` is p-radical convex when `g(u) = f(u^{1/p})` is convex on `[0, ∞)`.
//! [`is_p_radical`] checks the discrete second differences of `g` on a
//! uniform u-grid. The set of admissible orders is downward closed (an
//! order-p function is order-q for every `1 <= q <= p`), which is what lets
//! [`max_radical_order`] bisect on `p`.

use alloc::vec::Vec;

use crate::error::Error;
use crate::funcspec::FunctionSpec;
use crate::math::{root, scale};
use crate::quadrature::{integrate, DEFAULT_TOL};

pub const DEFAULT_GRID_N: usize = 1025;
pub const DEFAULT_X_MAX: f64 = 10.0;
pub const DEFAULT_TOL_CONVEX: f64 = 1e-8;
pub const DEFAULT_P_CAP: f64 = 16.0;
pub const DEFAULT_ITERS: u32 = 40;
/// Slack on the average-value inequality, relative to `max(1, rhs)`.
pub const NECESSARY_RTOL: f64 = 1e-9;

/// Outcome of the grid convexity test for one order `p`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvexityVerdict {
    pub p: f64,
    pub grid_n: usize,
    pub x_max: f64,
    pub pass: bool,
    /// Smallest second difference `g(u₋) - 2g(u) + g(u₊)` divided by
    /// `max(1, g(x_max))`.
    pub worst_violation: f64,
    /// Grid node (in u) where `worst_violation` occurs.
    pub witness_x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Probe {
    pub p: f64,
    pub pass: bool,
}

/// One evaluation of `∫₀ˣ f <= x f(x) / (p+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NecessaryCheck {
    pub p: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadicalProfile {
    /// Midpoint of the final bisection bracket; `p_cap` if the cap itself
    /// passed; `0` if the function failed already at `p = 1`.
    pub p_max_estimate: f64,
    pub bracket: (f64, f64),
    pub trace: Vec<Probe>,
    pub necessary_checks: Vec<NecessaryCheck>,
}

impl RadicalProfile {
    /// Sentinel for "not even 1-radical convex".
    pub const NOT_RADICAL: f64 = 0.0;

    /// No probe passed at an order above a probe that failed.
    pub fn is_monotone_consistent(&self) -> bool {
        let lowest_fail = self
            .trace
            .iter()
            .filter(|pr| !pr.pass)
            .map(|pr| pr.p)
            .fold(f64::INFINITY, f64::min);
        self.trace.iter().all(|pr| !pr.pass || pr.p <= lowest_fail + 1e-6)
    }
}

/// Grid test of convexity of `g(u) = f(u^{1/p})` on `[0, x_max]`.
///
/// Passes when every interior second difference is at least
/// `-tol · max(1, g(x_max))`.
pub fn is_p_radical(
    f: &FunctionSpec,
    p: f64,
    grid_n: usize,
    x_max: f64,
    tol: f64,
) -> Result<ConvexityVerdict, Error> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid("radical order p must be >= 1"));
    }
    if grid_n < 3 {
        return Err(Error::invalid("grid_n must be >= 3"));
    }
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::invalid("x_max must be positive and finite"));
    }
    f.check_domain(root(x_max, p))?;

    let h = x_max / (grid_n - 1) as f64;
    let g: Vec<f64> = (0..grid_n)
        .map(|i| {
            let u = if i == grid_n - 1 { x_max } else { i as f64 * h };
            f.eval_unchecked(root(u, p))
        })
        .collect();
    let norm = scale(g[grid_n - 1]);
    let (mut worst, mut witness) = (f64::INFINITY, h);
    for i in 1..grid_n - 1 {
        let d2 = (g[i - 1] - 2.0 * g[i] + g[i + 1]) / norm;
        if d2 < worst {
            worst = d2;
            witness = i as f64 * h;
        }
    }
    Ok(ConvexityVerdict {
        p,
        grid_n,
        x_max,
        pass: worst >= -tol,
        worst_violation: worst,
        witness_x: witness,
    })
}

/// Largest order passing [`is_p_radical`], by bisection on `[1, p_cap]`.
///
/// The final bracket has width `(p_cap - 1) / 2^iters` or less.
pub fn max_radical_order(
    f: &FunctionSpec,
    p_cap: f64,
    iters: u32,
    grid_n: usize,
    x_max: f64,
    tol: f64,
) -> Result<RadicalProfile, Error> {
    if !(p_cap >= 1.0 && p_cap.is_finite()) {
        return Err(Error::invalid("p_cap must be >= 1"));
    }
    if iters < 1 {
        return Err(Error::invalid("iters must be >= 1"));
    }
    let mut trace = Vec::new();
    let probe = |p: f64, trace: &mut Vec<Probe>| -> Result<bool, Error> {
        let pass = is_p_radical(f, p, grid_n, x_max, tol)?.pass;
        trace.push(Probe { p, pass });
        Ok(pass)
    };

    if !probe(1.0, &mut trace)? {
        return Ok(RadicalProfile {
            p_max_estimate: RadicalProfile::NOT_RADICAL,
            bracket: (0.0, 1.0),
            trace,
            necessary_checks: Vec::new(),
        });
    }
    if probe(p_cap, &mut trace)? {
        return Ok(RadicalProfile {
            p_max_estimate: p_cap,
            bracket: (p_cap, p_cap),
            trace,
            necessary_checks: Vec::new(),
        });
    }
    let (mut lo, mut hi) = (1.0, p_cap);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if probe(mid, &mut trace)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RadicalProfile {
        p_max_estimate: 0.5 * (lo + hi),
        bracket: (lo, hi),
        trace,
        necessary_checks: Vec::new(),
    })
}

/// Evaluates `∫₀ˣ f(t) dt <= x f(x) / (p+1)` at each `x`.
///
/// Every p-radical convex function satisfies it, with equality for
/// `f = c·x^p`. A failure therefore refutes order `p`; a pass proves nothing.
pub fn necessary_condition(
    f: &FunctionSpec,
    p: f64,
    xs: &[f64],
) -> Result<Vec<NecessaryCheck>, Error> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid("radical order p must be >= 1"));
    }
    xs.iter()
        .map(|&x| {
            if !(x > 0.0) {
                return Err(Error::invalid("necessary-condition points must be > 0"));
            }
            let fx = f.evaluate(x)?;
            let lhs = integrate(|t| f.eval_unchecked(t), 0.0, x, DEFAULT_TOL * x.max(1.0))?.value;
            let rhs = x * fx / (p + 1.0);
            Ok(NecessaryCheck { p, x, lhs, rhs, pass: lhs <= rhs + NECESSARY_RTOL * scale(rhs) })
        })
        .collect()
}
