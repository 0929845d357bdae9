//! Adaptive Simpson quadrature.
//!
//! Every integral in the crate goes through [`integrate`]. Intervals are
//! bisected until the Richardson estimate `|S₂ - S₁| / 15` on a panel drops
//! below that panel's share of the tolerance, or below the rounding floor of
//! the panel's own magnitude.

use core::fmt;

use crate::funcspec::FunctionSpec;

/// Absolute tolerance per unit of interval length used by the analyses.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Bisection depth at which an integral is declared non-convergent.
pub const MAX_DEPTH: u32 = 60;
const ROUNDOFF_FLOOR: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the local Richardson error estimates.
    pub err_estimate: f64,
    pub evals: usize,
}

impl QuadResult {
    /// Multiplies value and error estimate by `c`.
    pub fn scaled(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            err_estimate: self.err_estimate * libm::fabs(c),
            evals: self.evals,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadError {
    /// `a > b` or a non-finite endpoint.
    InvalidInterval { a: f64, b: f64 },
    /// The integrand returned NaN or ±∞.
    NonFinite { x: f64 },
    /// A panel still failed the error test at [`MAX_DEPTH`].
    NoConvergence { a: f64, b: f64 },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::InvalidInterval { a, b } => write!(f, "invalid interval [{a}, {b}]"),
            QuadError::NonFinite { x } => write!(f, "integrand is not finite at x = {x}"),
            QuadError::NoConvergence { a, b } => write!(
                f,
                "no convergence on [{a}, {b}] after {MAX_DEPTH} bisections \
                 (singular or discontinuous integrand?)"
            ),
        }
    }
}

impl core::error::Error for QuadError {}

struct Acc {
    value: f64,
    err: f64,
    evals: usize,
}

struct Panel {
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, fa: f64, fm: f64, b: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn sample<F: FnMut(f64) -> f64>(f: &mut F, x: f64, acc: &mut Acc) -> Result<f64, QuadError> {
    acc.evals += 1;
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QuadError::NonFinite { x })
    }
}

fn refine<F: FnMut(f64) -> f64>(
    f: &mut F,
    p: Panel,
    tol: f64,
    depth: u32,
    acc: &mut Acc,
) -> Result<(), QuadError> {
    let lm = 0.5 * (p.a + p.m);
    let rm = 0.5 * (p.m + p.b);
    let flm = sample(f, lm, acc)?;
    let frm = sample(f, rm, acc)?;
    let left = simpson(p.a, p.fa, flm, p.m, p.fm);
    let right = simpson(p.m, p.fm, frm, p.b, p.fb);
    let delta = left + right - p.whole;
    let floor = ROUNDOFF_FLOOR * (libm::fabs(left) + libm::fabs(right));
    if libm::fabs(delta) <= 15.0 * tol.max(floor) {
        acc.value += left + right + delta / 15.0;
        acc.err += libm::fabs(delta) / 15.0;
        return Ok(());
    }
    if depth >= MAX_DEPTH || lm <= p.a || rm >= p.b {
        return Err(QuadError::NoConvergence { a: p.a, b: p.b });
    }
    let half = 0.5 * tol;
    refine(
        f,
        Panel { a: p.a, fa: p.fa, m: lm, fm: flm, b: p.m, fb: p.fm, whole: left },
        half,
        depth + 1,
        acc,
    )?;
    refine(
        f,
        Panel { a: p.m, fa: p.fm, m: rm, fm: frm, b: p.b, fb: p.fb, whole: right },
        half,
        depth + 1,
        acc,
    )
}

/// `∫ₐᵇ f` to absolute tolerance `tol`.
///
/// Deterministic for fixed inputs. Fails when the integrand produces a
/// non-finite value or a panel does not converge within [`MAX_DEPTH`] levels.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let mut acc = Acc { value: 0.0, err: 0.0, evals: 0 };
    let m = 0.5 * (a + b);
    let fa = sample(&mut f, a, &mut acc)?;
    let fm = sample(&mut f, m, &mut acc)?;
    let fb = sample(&mut f, b, &mut acc)?;
    if a == b {
        return Ok(QuadResult { value: 0.0, err_estimate: 0.0, evals: acc.evals });
    }
    let whole = simpson(a, fa, fm, b, fb);
    refine(&mut f, Panel { a, fa, m, fm, b, fb, whole }, tol, 0, &mut acc)?;
    Ok(QuadResult { value: acc.value, err_estimate: acc.err, evals: acc.evals })
}

/// The refinement term of the second Hermite–Hadamard refinement,
///
/// ```text
/// (1/(b-a)) ∫₀^{(b-a)/2} 4x f(x) / sqrt((b-a)² - 4x²) dx
/// ```
///
/// evaluated in the smooth parameterisation `2 ∫₀^{1/2} f(sqrt(t(1-t)) (b-a)) dt`
/// (substitute `x = sqrt(t(1-t)) (b-a)`). The x-form is never evaluated: its
/// integrand has an inverse-square-root singularity at the upper end.
pub fn integrate_hh_refine_term(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult, crate::Error> {
    if !(a >= 0.0 && b >= a && b.is_finite()) {
        return Err(crate::Error::invalid("need 0 <= a <= b"));
    }
    let width = b - a;
    f.check_domain(0.5 * width)?;
    let r = integrate(
        |t| f.eval_unchecked(libm::sqrt(t * (1.0 - t)) * width),
        0.0,
        0.5,
        0.5 * tol,
    )?;
    Ok(r.scaled(2.0))
}
