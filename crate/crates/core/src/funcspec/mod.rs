//! Candidate functions `f: [0, D) -> [0, ∞)` with `f(0) = 0`.
//!
//! A [`FunctionSpec`] wraps an immutable [`Expr`] tree together with the
//! exclusive right end `D` of its domain. Every node kind keeps the two
//! properties the analyses rely on: the value at zero is exactly zero, and
//! the function is nonnegative, nondecreasing and convex on its domain.
//!
//! Specs are usually built from the small DSL accepted by [`parse`]:
//!
//! ```text
//! expr  := term { "+" term }
//! term  := [ NUMBER "*" ] atom
//! atom  := IDENT "(" args ")" | "(" expr ")"
//! args  := value { "," value }
//! ```
//!
//! with identifiers `pow`, `exptrunc`, `geomtrunc`, `neglogtrunc`, `series`
//! and `compose`. The [`Display`](core::fmt::Display) impl prints the same
//! grammar, so `parse(&spec.to_string())` rebuilds an equal tree.

mod parse;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::math::{powf, powi};

pub use parse::{parse, ParseError};

/// Below this argument the truncated exponential is summed from its tail.
const EXP_SERIES_CUTOFF: f64 = 0.5;
/// Below this argument the truncated logarithm is summed from its tail.
const LOG_SERIES_CUTOFF: f64 = 0.75;
const MAX_TAIL_TERMS: usize = 1000;
const INVERSE_RTOL: f64 = 1e-10;

/// Expression tree of a candidate function.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// `x^p`, `p >= 1`.
    Pow(f64),
    /// `e^x - Σ_{n=0}^{k} x^n / n!`.
    ExpTrunc(u32),
    /// `1/(1-x) - Σ_{n=0}^{k} x^n` on `[0, 1)`.
    GeomTrunc(u32),
    /// `-ln(1-x) - Σ_{n=1}^{k} x^n / n` on `[0, 1)`.
    NegLogTrunc(u32),
    /// `Σ coeffs[i] x^{start+i}` with `start >= 1` and nonnegative coefficients.
    Series { start: u32, coeffs: Vec<f64> },
    /// `c · inner`, `c > 0`.
    Scale(f64, Box<Expr>),
    /// `left + right`.
    Sum(Box<Expr>, Box<Expr>),
    /// `outer ∘ inner`.
    Compose(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn scale(c: f64, inner: Expr) -> Self {
        Expr::Scale(c, Box::new(inner))
    }

    pub fn sum(left: Expr, right: Expr) -> Self {
        Expr::Sum(Box::new(left), Box::new(right))
    }

    pub fn compose(outer: Expr, inner: Expr) -> Self {
        Expr::Compose(Box::new(outer), Box::new(inner))
    }

    /// Checks the per-node parameter constraints.
    fn validate(&self) -> Result<(), String> {
        match self {
            Expr::Pow(p) => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(alloc::format!("pow exponent must be >= 1, got {p}"));
                }
            }
            Expr::ExpTrunc(_) | Expr::GeomTrunc(_) | Expr::NegLogTrunc(_) => {}
            Expr::Series { start, coeffs } => {
                if *start < 1 {
                    return Err("series must start at n0 >= 1".into());
                }
                if coeffs.is_empty() {
                    return Err("series needs at least one coefficient".into());
                }
                if let Some(c) = coeffs.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
                    return Err(alloc::format!("series coefficients must be nonnegative, got {c}"));
                }
            }
            Expr::Scale(c, inner) => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(alloc::format!("scale factor must be > 0, got {c}"));
                }
                inner.validate()?;
            }
            Expr::Sum(l, r) | Expr::Compose(l, r) => {
                l.validate()?;
                r.validate()?;
            }
        }
        Ok(())
    }

    /// Exclusive right end of the natural domain.
    fn domain_end(&self) -> f64 {
        match self {
            Expr::Pow(_) | Expr::ExpTrunc(_) | Expr::Series { .. } => f64::INFINITY,
            Expr::GeomTrunc(_) | Expr::NegLogTrunc(_) => 1.0,
            Expr::Scale(_, inner) => inner.domain_end(),
            Expr::Sum(l, r) => l.domain_end().min(r.domain_end()),
            Expr::Compose(outer, inner) => {
                let inner_end = inner.domain_end();
                let outer_end = outer.domain_end();
                if outer_end.is_infinite() {
                    inner_end
                } else {
                    preimage_end(inner, outer_end, inner_end)
                }
            }
        }
    }

    /// Evaluates without a domain check.
    pub(crate) fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Pow(p) => powf(x, *p),
            Expr::ExpTrunc(k) => exp_trunc(*k, x),
            Expr::GeomTrunc(k) => powi(x, k + 1) / (1.0 - x),
            Expr::NegLogTrunc(k) => neglog_trunc(*k, x),
            Expr::Series { start, coeffs } => {
                let poly = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
                poly * powi(x, *start)
            }
            Expr::Scale(c, inner) => c * inner.eval(x),
            Expr::Sum(l, r) => l.eval(x) + r.eval(x),
            Expr::Compose(outer, inner) => outer.eval(inner.eval(x)),
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(..) | Expr::Scale(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Pow(p) => write!(f, "pow({p})"),
            Expr::ExpTrunc(k) => write!(f, "exptrunc({k})"),
            Expr::GeomTrunc(k) => write!(f, "geomtrunc({k})"),
            Expr::NegLogTrunc(k) => write!(f, "neglogtrunc({k})"),
            Expr::Series { start, coeffs } => {
                write!(f, "series({start}")?;
                for c in coeffs {
                    write!(f, ", {c}")?;
                }
                f.write_str(")")
            }
            Expr::Scale(c, inner) => {
                write!(f, "{c}*")?;
                inner.fmt_atom(f)
            }
            Expr::Sum(l, r) => {
                write!(f, "{l} + ")?;
                match **r {
                    Expr::Sum(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            Expr::Compose(outer, inner) => write!(f, "compose({outer}, {inner})"),
        }
    }
}

/// Sup of `{x < inner_end : inner(x) < level}` for a nondecreasing `inner`.
fn preimage_end(inner: &Expr, level: f64, inner_end: f64) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi;
    if inner_end.is_finite() {
        hi = inner_end;
        let near = inner_end * (1.0 - f64::EPSILON);
        if inner.eval(near) < level {
            return inner_end;
        }
    } else {
        hi = 1.0;
        while inner.eval(hi) < level {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return f64::INFINITY;
            }
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inner.eval(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn exp_trunc(k: u32, x: f64) -> f64 {
    if x < EXP_SERIES_CUTOFF.max(k as f64) {
        // Tail Σ_{n>k} x^n/n!; every term is positive so nothing cancels.
        let mut term = 1.0;
        for n in 1..=k + 1 {
            term *= x / n as f64;
        }
        let mut sum = 0.0;
        let mut n = k + 1;
        for _ in 0..MAX_TAIL_TERMS {
            sum += term;
            n += 1;
            term *= x / n as f64;
            if term <= f64::EPSILON * 0.25 * sum {
                break;
            }
        }
        sum
    } else {
        let mut partial = 0.0;
        let mut term = 1.0;
        for n in 0..=k {
            if n > 0 {
                term *= x / n as f64;
            }
            partial += term;
        }
        libm::exp(x) - partial
    }
}

fn neglog_trunc(k: u32, x: f64) -> f64 {
    if x < LOG_SERIES_CUTOFF {
        let mut pow = powi(x, k + 1);
        let mut sum = 0.0;
        for n in (k + 1..).take(MAX_TAIL_TERMS) {
            let term = pow / n as f64;
            sum += term;
            if term <= f64::EPSILON * 0.25 * sum {
                break;
            }
            pow *= x;
        }
        sum
    } else {
        let mut partial = 0.0;
        let mut pow = 1.0;
        for n in 1..=k {
            pow *= x;
            partial += pow / n as f64;
        }
        -libm::log1p(-x) - partial
    }
}

/// A validated candidate function with its domain `[0, domain_end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    expr: Expr,
    domain_end: f64,
    label: String,
}

impl FunctionSpec {
    /// Validates `expr` and computes its domain. The label defaults to the
    /// canonical printed form.
    pub fn new(expr: Expr) -> Result<Self, Error> {
        expr.validate().map_err(Error::InvalidArgument)?;
        let domain_end = expr.domain_end();
        if !(domain_end > 0.0) {
            return Err(Error::invalid("composition has an empty domain"));
        }
        let label = expr.to_string();
        Ok(Self { expr, domain_end, label })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= 0.0 && x < self.domain_end
    }

    pub(crate) fn check_domain(&self, x: f64) -> Result<(), Error> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain { x, domain_end: self.domain_end })
        }
    }

    /// `f(x)` for `x` in `[0, domain_end)`.
    pub fn evaluate(&self, x: f64) -> Result<f64, Error> {
        self.check_domain(x)?;
        Ok(self.expr.eval(x))
    }

    /// `f(x)`, or NaN outside the domain. Used inside integrands, where the
    /// integrator turns non-finite samples into an error.
    pub(crate) fn eval_or_nan(&self, x: f64) -> f64 {
        if self.contains(x) {
            self.expr.eval(x)
        } else {
            f64::NAN
        }
    }

    /// Evaluates without checking the domain; caller guarantees `x` is inside.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        self.expr.eval(x)
    }

    /// Solves `f(x) = y` on `[0, x_hi]`.
    ///
    /// Powers use the closed form `y^{1/p}`; everything else bisects until
    /// `|f(x) - y| <= 1e-10 · max(1, y)` or the bracket stops shrinking.
    pub fn inverse(&self, y: f64, x_hi: f64) -> Result<f64, Error> {
        if !(y >= 0.0) {
            return Err(Error::invalid("inverse target must be >= 0"));
        }
        let f_hi = self.evaluate(x_hi)?;
        if f_hi < y {
            return Err(Error::Bracket { y, x_hi, f_hi });
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if let Expr::Pow(p) = self.expr {
            return Ok(crate::math::root(y, p));
        }
        let tol = INVERSE_RTOL * y.max(1.0);
        let (mut lo, mut hi) = (0.0_f64, x_hi);
        loop {
            let mid = 0.5 * (lo + hi);
            let v = self.expr.eval(mid);
            if libm::fabs(v - y) <= tol || mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if v < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl core::str::FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = core::f64::consts::E;

    fn spec(s: &str) -> FunctionSpec {
        parse(s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(spec("pow(2)").evaluate(3.0).unwrap(), 9.0);
        let f1 = spec("exptrunc(1)").evaluate(1.0).unwrap();
        assert!((f1 - (E - 2.0)).abs() < 1e-15);
        let g = spec("geomtrunc(1)").evaluate(0.5).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exp_trunc_small_x_keeps_relative_accuracy() {
        // e^x - 1 - x = x^2/2 + x^3/6 + ... ; compare against the leading terms.
        let f = spec("exptrunc(1)");
        let x = 1e-6;
        let expect = x * x / 2.0 + x * x * x / 6.0;
        let got = f.evaluate(x).unwrap();
        assert!(((got - expect) / expect).abs() < 1e-12);

        let x = 0.3_f64;
        let expect = libm::expm1(x) - x;
        assert!(((f.evaluate(x).unwrap() - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn neglog_trunc_matches_closed_form() {
        let f = spec("neglogtrunc(1)");
        for &x in &[0.1, 0.5, 0.7, 0.8, 0.95] {
            let expect = -libm::log1p(-x) - x;
            let got = f.evaluate(x).unwrap();
            assert!(((got - expect) / expect).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn zero_anchor_is_exact() {
        for s in [
            "pow(1.5)",
            "exptrunc(0)",
            "exptrunc(3)",
            "geomtrunc(2)",
            "neglogtrunc(1)",
            "series(2, 1, 0.5)",
            "2*pow(3) + exptrunc(1)",
            "compose(geomtrunc(0), 0.5*pow(2))",
        ] {
            assert_eq!(spec(s).evaluate(0.0).unwrap(), 0.0, "{s}");
        }
    }

    #[test]
    fn domain_errors() {
        let g = spec("geomtrunc(0)");
        assert_eq!(g.domain_end(), 1.0);
        assert!(matches!(g.evaluate(1.0), Err(Error::Domain { .. })));
        assert!(matches!(spec("pow(2)").evaluate(-0.1), Err(Error::Domain { .. })));
        assert_eq!(spec("pow(2) + neglogtrunc(1)").domain_end(), 1.0);
    }

    #[test]
    fn compose_domain_is_preimage() {
        // inner 4x^2 reaches 1 at x = 1/2.
        let f = spec("compose(geomtrunc(0), 4*pow(2))");
        assert!((f.domain_end() - 0.5).abs() < 1e-15);
        assert!(f.evaluate(0.49).unwrap().is_finite());
        // inner with bounded domain that never reaches the outer limit.
        let f = spec("compose(geomtrunc(0), 0.1*neglogtrunc(1))");
        assert!(f.domain_end() <= 1.0 && f.domain_end() > 0.99);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(spec("pow(4)").inverse(16.0, 10.0).unwrap(), 2.0);
        assert_eq!(spec("pow(2)").inverse(0.0, 10.0).unwrap(), 0.0);
        let x = spec("exptrunc(1)").inverse(E - 2.0, 10.0).unwrap();
        assert!((x - 1.0).abs() < 1e-9);
        assert!(matches!(
            spec("pow(2)").inverse(200.0, 10.0),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn printer_output() {
        assert_eq!(spec("pow(2)+3*pow(4)").to_string(), "pow(2) + 3*pow(4)");
        assert_eq!(spec("series(1,1.0)").to_string(), "series(1, 1)");
        assert_eq!(
            spec("2*(pow(2) + pow(3))").to_string(),
            "2*(pow(2) + pow(3))"
        );
    }
}
