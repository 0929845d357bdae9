//! Integral inequalities for 2-radical (and, for Hardy, p-radical) functions.
//!
//! Each operation composes [`quadrature::integrate`](crate::quadrature::integrate)
//! results into an [`IntegralReport`]. Reports carry the accumulated
//! quadrature error; a report passes when
//! `margin >= -(1e-8 + 10·quad_err) · max(1, |rhs|)`, so integrator noise
//! cannot produce a false violation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::funcspec::FunctionSpec;
use crate::math::{powf, scale};
use crate::pointwise::Term;
use crate::quadrature::{integrate, integrate_hh_refine_term, QuadResult, DEFAULT_TOL};
use crate::radical::necessary_condition;

/// Base margin slack, relative to `max(1, |rhs|)`.
pub const MARGIN_RTOL: f64 = 1e-8;
/// Upper limits of integrals over `[0, 1)` domains are pulled in by this much.
pub const ENDPOINT_CLIP: f64 = 1e-6;
/// Nodes of the prefix-integral grid used by [`hardy_finite`].
pub const HARDY_GRID_N: usize = 4097;
/// Samples used to validate the range of `g` in [`continuous_jensen`].
const G_RANGE_SAMPLES: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum IntegralTheorem {
    HhFirst,
    HhSecond,
    UnitInt,
    SplitInt,
    HhGeneral,
    ContJensen,
    Hardy,
    AvgValue,
}

impl IntegralTheorem {
    pub fn as_str(self) -> &'static str {
        match self {
            IntegralTheorem::HhFirst => "HH_FIRST",
            IntegralTheorem::HhSecond => "HH_SECOND",
            IntegralTheorem::UnitInt => "UNIT_INT",
            IntegralTheorem::SplitInt => "SPLIT_INT",
            IntegralTheorem::HhGeneral => "HH_GENERAL",
            IntegralTheorem::ContJensen => "CONT_JENSEN",
            IntegralTheorem::Hardy => "HARDY",
            IntegralTheorem::AvgValue => "AVG_VALUE",
        }
    }
}

/// One integral inequality `lhs <= rhs`, or a three-link chain
/// `left <= middle <= right` (then `lhs = left`, `rhs = right` and `margin`
/// is the smaller of the two gaps).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntegralReport {
    pub theorem_id: IntegralTheorem,
    pub interval: (f64, f64),
    pub p: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub components: Vec<Term>,
    pub margin: f64,
    pub pass: bool,
    pub quad_err: f64,
}

impl IntegralReport {
    fn new(
        theorem_id: IntegralTheorem,
        interval: (f64, f64),
        lhs: f64,
        rhs: f64,
        margin: f64,
        components: Vec<Term>,
        quad_err: f64,
    ) -> Self {
        let pass = margin >= -(MARGIN_RTOL + 10.0 * quad_err) * scale(rhs);
        Self { theorem_id, interval, p: None, lhs, rhs, components, margin, pass, quad_err }
    }

    fn chain(
        theorem_id: IntegralTheorem,
        interval: (f64, f64),
        left: f64,
        middle: f64,
        right: f64,
        quad_err: f64,
    ) -> Self {
        let margin = (middle - left).min(right - middle);
        Self::new(
            theorem_id,
            interval,
            left,
            right,
            margin,
            vec![Term::new("left", left), Term::new("middle", middle), Term::new("right", right)],
            quad_err,
        )
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

fn check_interval(f: &FunctionSpec, a: f64, b: f64) -> Result<(), Error> {
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(Error::invalid(alloc::format!("need 0 <= a < b, got a = {a}, b = {b}")));
    }
    f.check_domain(b)
}

/// `∫ₗᵘ f` with the per-unit-length default tolerance.
fn integral_of(f: &FunctionSpec, lo: f64, hi: f64) -> Result<QuadResult, Error> {
    Ok(integrate(|x| f.eval_or_nan(x), lo, hi, DEFAULT_TOL * (hi - lo).max(1.0))?)
}

/// Mean value `(1/(b-a)) ∫ₐᵇ h` with the error scaled alongside.
fn mean_of<H: FnMut(f64) -> f64>(h: H, a: f64, b: f64) -> Result<QuadResult, Error> {
    let w = b - a;
    Ok(integrate(h, a, b, DEFAULT_TOL * w)?.scaled(1.0 / w))
}

/// Upper integration limit for `[0, 1]` integrals, clipped for `[0, 1)` domains.
fn unit_upper(f: &FunctionSpec) -> Result<f64, Error> {
    let d = f.domain_end();
    if d > 1.0 {
        Ok(1.0)
    } else if d == 1.0 {
        Ok(1.0 - ENDPOINT_CLIP)
    } else {
        Err(Error::Domain { x: 1.0, domain_end: d })
    }
}

/// `f((a+b)/2) + (2/(b-a)) ∫₀^{(b-a)/2} f <= (1/(b-a)) ∫ₐᵇ f`.
pub fn hh_first(f: &FunctionSpec, a: f64, b: f64) -> Result<IntegralReport, Error> {
    check_interval(f, a, b)?;
    let w = b - a;
    let mid = f.evaluate(0.5 * (a + b))?;
    let refine = mean_of(|x| f.eval_or_nan(x), 0.0, 0.5 * w)?;
    let mean = mean_of(|x| f.eval_or_nan(x), a, b)?;
    Ok(IntegralReport::new(
        IntegralTheorem::HhFirst,
        (a, b),
        mid + refine.value,
        mean.value,
        mean.value - mid - refine.value,
        vec![
            Term::new("midpoint", mid),
            Term::new("refine", refine.value),
            Term::new("mean", mean.value),
        ],
        refine.err_estimate + mean.err_estimate,
    ))
}

/// `(1/(b-a)) ∫ₐᵇ f + (1/(b-a)) ∫₀^{(b-a)/2} 4x f(x)/sqrt((b-a)²-4x²) dx <= (f(a)+f(b))/2`.
pub fn hh_second(f: &FunctionSpec, a: f64, b: f64) -> Result<IntegralReport, Error> {
    check_interval(f, a, b)?;
    let mean = mean_of(|x| f.eval_or_nan(x), a, b)?;
    let refine = integrate_hh_refine_term(f, a, b, DEFAULT_TOL)?;
    let rhs = 0.5 * (f.evaluate(a)? + f.evaluate(b)?);
    let lhs = mean.value + refine.value;
    Ok(IntegralReport::new(
        IntegralTheorem::HhSecond,
        (a, b),
        lhs,
        rhs,
        rhs - lhs,
        vec![
            Term::new("mean", mean.value),
            Term::new("refine", refine.value),
            Term::new("endpoint_mean", rhs),
        ],
        mean.err_estimate + refine.err_estimate,
    ))
}

/// Shared chain `f(m) <= mean[f((x+m)/2) + f(|x-m|/2)] <= mean f` over
/// `[a, b]`, `m = (a+b)/2`. `right_hi` is the upper limit used for the last
/// link (it differs from `b` only when a `[0, 1)` domain is clipped).
fn midpoint_chain(
    f: &FunctionSpec,
    theorem: IntegralTheorem,
    a: f64,
    b: f64,
    right_hi: f64,
) -> Result<IntegralReport, Error> {
    let m = 0.5 * (a + b);
    let w = b - a;
    let left = f.evaluate(m)?;
    let h = |x: f64| f.eval_or_nan(0.5 * (x + m)) + f.eval_or_nan(0.5 * (x - m).abs());
    // Split at the kink of |x - m|.
    let lo = integrate(h, a, m, DEFAULT_TOL * 0.5 * w)?;
    let hi = integrate(h, m, b, DEFAULT_TOL * 0.5 * w)?;
    let middle = (lo.value + hi.value) / w;
    let right = integrate(|x| f.eval_or_nan(x), a, right_hi, DEFAULT_TOL * w)?.scaled(1.0 / w);
    let err = (lo.err_estimate + hi.err_estimate) / w + right.err_estimate;
    Ok(IntegralReport::chain(theorem, (a, b), left, middle, right.value, err))
}

/// `f(1/2) <= ∫₀¹ [f((x+½)/2) + f(|x-½|/2)] dx <= ∫₀¹ f`.
pub fn unit_interval_chain(f: &FunctionSpec) -> Result<IntegralReport, Error> {
    let upper = unit_upper(f)?;
    midpoint_chain(f, IntegralTheorem::UnitInt, 0.0, 1.0, upper)
}

/// `3 ∫₀^{1/4} f + ∫_{1/4}^{3/4} f <= ∫_{3/4}^{1} f`.
pub fn split_interval_bound(f: &FunctionSpec) -> Result<IntegralReport, Error> {
    let upper = unit_upper(f)?;
    let q1 = integral_of(f, 0.0, 0.25)?;
    let q2 = integral_of(f, 0.25, 0.75)?;
    let q3 = integral_of(f, 0.75, upper)?;
    let lhs = 3.0 * q1.value + q2.value;
    Ok(IntegralReport::new(
        IntegralTheorem::SplitInt,
        (0.0, 1.0),
        lhs,
        q3.value,
        q3.value - lhs,
        vec![
            Term::new("first_quarter", q1.value),
            Term::new("middle_half", q2.value),
            Term::new("last_quarter", q3.value),
        ],
        3.0 * q1.err_estimate + q2.err_estimate + q3.err_estimate,
    ))
}

/// `f((a+b)/2) <= (1/(b-a)) ∫ₐᵇ [f((x+m)/2) + f(|x-m|/2)] dx <= (1/(b-a)) ∫ₐᵇ f`.
///
/// `hh_general(f, 0, 1)` is [`unit_interval_chain`].
pub fn hh_general(f: &FunctionSpec, a: f64, b: f64) -> Result<IntegralReport, Error> {
    check_interval(f, a, b)?;
    midpoint_chain(f, IntegralTheorem::HhGeneral, a, b, b)
}

/// Continuous Jensen refinement for `g: [a, b] -> [0, ∞)`:
///
/// ```text
/// f(ḡ) <= (1/(b-a)) ∫ₐᵇ [f((g(x)+ḡ)/2) + f(|g(x)-ḡ|/2)] dx <= (1/(b-a)) ∫ₐᵇ f(g(x)) dx
/// ```
///
/// with `ḡ` the mean of `g`. When the raw-variable form
/// `(1/(b-a)) ∫ₐᵇ [f((x+ḡ)/2) + f(|x-ḡ|/2)] dx` is defined it is reported as
/// the `raw_middle` component; it coincides with the middle link for `g(x) = x`.
pub fn continuous_jensen<G: Fn(f64) -> f64>(
    f: &FunctionSpec,
    g: G,
    a: f64,
    b: f64,
) -> Result<IntegralReport, Error> {
    if !(b > a && a.is_finite() && b.is_finite()) {
        return Err(Error::invalid(alloc::format!("need a < b, got a = {a}, b = {b}")));
    }
    let gbar_q = mean_of(&g, a, b)?;
    let gbar = gbar_q.value;
    let step = (b - a) / (G_RANGE_SAMPLES - 1) as f64;
    for i in 0..G_RANGE_SAMPLES {
        let gx = g(a + i as f64 * step);
        if !(gx >= 0.0) {
            return Err(Error::invalid(alloc::format!("g must be >= 0, got {gx}")));
        }
        f.check_domain(gx)?;
        f.check_domain(0.5 * (gx + gbar))?;
    }
    let left = f.evaluate(gbar)?;
    let middle = mean_of(
        |x| {
            let gx = g(x);
            f.eval_or_nan(0.5 * (gx + gbar)) + f.eval_or_nan(0.5 * (gx - gbar).abs())
        },
        a,
        b,
    )?;
    let right = mean_of(|x| f.eval_or_nan(g(x)), a, b)?;
    let raw_middle = mean_of(
        |x| f.eval_or_nan(0.5 * (x + gbar)) + f.eval_or_nan(0.5 * (x - gbar).abs()),
        a,
        b,
    )
    .ok();

    let mut r = IntegralReport::chain(
        IntegralTheorem::ContJensen,
        (a, b),
        left,
        middle.value,
        right.value,
        middle.err_estimate + right.err_estimate,
    );
    r.components.push(Term::new("g_mean", gbar));
    if let Some(raw) = raw_middle {
        r.components.push(Term::new("raw_middle", raw.value));
    }
    Ok(r)
}

/// Cumulative `F(x) = ∫₀ˣ f` on a uniform grid with cubic interpolation.
struct PrefixIntegral {
    h: f64,
    values: Vec<f64>,
    /// Richardson estimate of the error in `F(end)`.
    err: f64,
}

impl PrefixIntegral {
    fn build(f: &FunctionSpec, end: f64, n: usize) -> Self {
        let cells = n - 1;
        let h = end / cells as f64;
        let node = |i: usize| if i == cells { end } else { i as f64 * h };
        let fx: Vec<f64> = (0..n).map(|i| f.eval_unchecked(node(i))).collect();
        let mut values = Vec::with_capacity(n);
        values.push(0.0);
        let mut acc = 0.0;
        for i in 0..cells {
            let fm = f.eval_unchecked(0.5 * (node(i) + node(i + 1)));
            acc += h / 6.0 * (fx[i] + 4.0 * fm + fx[i + 1]);
            values.push(acc);
        }
        // Simpson on doubled cells reuses the grid nodes as midpoints.
        let mut coarse = 0.0;
        let mut i = 0;
        while i + 2 <= cells {
            coarse += 2.0 * h / 6.0 * (fx[i] + 4.0 * fx[i + 1] + fx[i + 2]);
            i += 2;
        }
        let fine_even = values[i];
        let err = (fine_even - coarse).abs() / 15.0;
        Self { h, values, err }
    }

    /// Four-point Lagrange interpolation.
    fn at(&self, x: f64) -> f64 {
        let n = self.values.len();
        let s = x / self.h;
        let i = (libm::floor(s) as usize).clamp(1, n - 3);
        let u = s - i as f64;
        let (y0, y1, y2, y3) =
            (self.values[i - 1], self.values[i], self.values[i + 1], self.values[i + 2]);
        // nodes at offsets -1, 0, 1, 2
        -u * (u - 1.0) * (u - 2.0) / 6.0 * y0 + (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0 * y1
            - (u + 1.0) * u * (u - 2.0) / 2.0 * y2
            + (u + 1.0) * u * (u - 1.0) / 6.0 * y3
    }
}

/// Hardy-type inequality on a finite interval:
///
/// ```text
/// ∫_α^β ((1/x) ∫₀ˣ f(t) dt)^p dx <= (1/(p+1))^p ∫_α^β f(x)^p dx
/// ```
///
/// sharp for `f = x^p`. For `[0, 1)` domains `β` is clipped to `1 - 1e-6`.
pub fn hardy_finite(f: &FunctionSpec, p: f64, alpha: f64, beta: f64) -> Result<IntegralReport, Error> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid("p must be >= 1"));
    }
    let beta = if f.domain_end().is_finite() {
        beta.min(f.domain_end() - ENDPOINT_CLIP)
    } else {
        beta
    };
    if !(alpha > 0.0 && beta > alpha && beta.is_finite()) {
        return Err(Error::invalid(alloc::format!(
            "need 0 < alpha < beta, got alpha = {alpha}, beta = {beta}"
        )));
    }
    f.check_domain(beta)?;

    let prefix = PrefixIntegral::build(f, beta, HARDY_GRID_N);
    let w = beta - alpha;
    let outer = integrate(|x| powf(prefix.at(x) / x, p), alpha, beta, DEFAULT_TOL * w)?;
    let power = integrate(|x| powf(f.eval_or_nan(x), p), alpha, beta, DEFAULT_TOL * w)?;
    let factor = powf(1.0 / (p + 1.0), p);
    let lhs = outer.value;
    let rhs = factor * power.value;

    // Relative error δF/F at α propagates as p·δF/F into the outer integral.
    let f_alpha = prefix.at(alpha);
    let inner_err = if f_alpha > 0.0 { p * lhs * prefix.err / f_alpha } else { prefix.err };
    let quad_err = outer.err_estimate + factor * power.err_estimate + inner_err;

    let mut r = IntegralReport::new(
        IntegralTheorem::Hardy,
        (alpha, beta),
        lhs,
        rhs,
        rhs - lhs,
        vec![
            Term::new("prefix_at_beta", *prefix.values.last().unwrap_or(&0.0)),
            Term::new("average_power_integral", lhs),
            Term::new("power_integral", power.value),
            Term::new("factor", factor),
        ],
        quad_err,
    );
    r.p = Some(p);
    Ok(r)
}

/// The average-value bound `(1/x) ∫₀ˣ f <= f(x)/(p+1)` at one point, with the
/// classical Hermite–Hadamard value `f(x)/2` for comparison.
pub fn average_value_report(f: &FunctionSpec, p: f64, x: f64) -> Result<IntegralReport, Error> {
    let check = necessary_condition(f, p, &[x])?[0];
    let avg = check.lhs / x;
    let bound = check.rhs / x;
    let classical = 0.5 * f.evaluate(x)?;
    let mut r = IntegralReport::new(
        IntegralTheorem::AvgValue,
        (0.0, x),
        avg,
        bound,
        bound - avg,
        vec![
            Term::new("average", avg),
            Term::new("radical_bound", bound),
            Term::new("classical_bound", classical),
        ],
        0.0,
    );
    r.p = Some(p);
    r.pass = check.pass;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::parse;

    fn spec(s: &str) -> FunctionSpec {
        parse(s).unwrap()
    }

    #[test]
    fn hh_first_closed_forms() {
        let r = hh_first(&spec("pow(2)"), 1.0, 3.0).unwrap();
        assert!((r.lhs - 13.0 / 3.0).abs() < 1e-10);
        assert!((r.rhs - 13.0 / 3.0).abs() < 1e-10);
        assert!(r.pass);
        let r = hh_first(&spec("pow(4)"), 1.0, 3.0).unwrap();
        assert!((r.lhs - 16.2).abs() < 1e-9 && (r.rhs - 24.2).abs() < 1e-9);
        let r = hh_first(&spec("exptrunc(1)"), 1.0, 2.0).unwrap();
        assert!(r.pass && r.margin > 0.0);
    }

    #[test]
    fn hh_second_closed_forms() {
        let r = hh_second(&spec("pow(2)"), 1.0, 3.0).unwrap();
        assert!((r.lhs - 5.0).abs() < 1e-9 && r.rhs == 5.0);
        assert!(r.pass);
        let r = hh_second(&spec("pow(2)"), 2.0 - 1e-6, 2.0).unwrap();
        assert!(r.margin.abs() < 1e-8 && r.pass);
    }

    #[test]
    fn interval_preconditions() {
        let f = spec("pow(2)");
        assert!(hh_first(&f, -1.0, 1.0).is_err());
        assert!(hh_first(&f, 1.0, 1.0).is_err());
        assert!(hh_first(&f, 2.0, 1.0).is_err());
        assert!(matches!(hh_second(&spec("geomtrunc(0)"), 0.5, 1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn unit_chain_for_square() {
        let r = unit_interval_chain(&spec("pow(2)")).unwrap();
        assert!((r.component("left").unwrap() - 0.25).abs() < 1e-12);
        assert!((r.component("middle").unwrap() - 7.0 / 24.0).abs() < 1e-10);
        assert!((r.component("right").unwrap() - 1.0 / 3.0).abs() < 1e-10);
        assert!(r.pass);
    }

    #[test]
    fn unit_chain_for_identity_holds() {
        // f(x) = x: middle = ∫ (x/2 + 1/4) + |x - 1/2|/2 = 1/2 + 1/8.
        let r = unit_interval_chain(&spec("series(1, 1)")).unwrap();
        assert!((r.component("middle").unwrap() - 0.625).abs() < 1e-10);
        assert!(r.component("left").unwrap() <= r.component("middle").unwrap());
        // middle > right = 1/2: the upper link needs the 2-radical hypothesis.
        assert!(!r.pass);
    }

    #[test]
    fn split_interval_both_directions() {
        let r = split_interval_bound(&spec("pow(2)")).unwrap();
        assert!((r.lhs - 29.0 / 192.0).abs() < 1e-10 && (r.rhs - 37.0 / 192.0).abs() < 1e-10);
        assert!(r.pass);
        let r = split_interval_bound(&spec("series(1, 1)")).unwrap();
        assert!((r.lhs - 11.0 / 32.0).abs() < 1e-10 && (r.rhs - 7.0 / 32.0).abs() < 1e-10);
        assert!(!r.pass);
    }

    #[test]
    fn unit_domain_is_clipped() {
        let r = split_interval_bound(&spec("neglogtrunc(1)")).unwrap();
        assert!(r.pass);
        assert!(unit_interval_chain(&spec("compose(geomtrunc(0), 4*pow(1))")).is_err());
    }

    #[test]
    fn hh_general_closed_form() {
        let r = hh_general(&spec("pow(2)"), 1.0, 3.0).unwrap();
        assert!((r.component("left").unwrap() - 4.0).abs() < 1e-12);
        assert!((r.component("middle").unwrap() - 25.0 / 6.0).abs() < 1e-10);
        assert!((r.component("right").unwrap() - 13.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn continuous_jensen_specialisations() {
        let f = spec("pow(2)");
        let r = continuous_jensen(&f, |x| x, 0.0, 1.0).unwrap();
        assert!((r.component("left").unwrap() - 0.25).abs() < 1e-12);
        assert!((r.component("middle").unwrap() - 7.0 / 24.0).abs() < 1e-10);
        assert!((r.component("right").unwrap() - 1.0 / 3.0).abs() < 1e-10);
        assert!((r.component("raw_middle").unwrap() - r.component("middle").unwrap()).abs() < 1e-12);

        let r = continuous_jensen(&f, |_| 1.5, 0.0, 2.0).unwrap();
        for name in ["left", "middle", "right"] {
            assert!((r.component(name).unwrap() - 2.25).abs() < 1e-12);
        }
        assert!(r.pass);
        assert!(continuous_jensen(&f, |x| x - 1.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn hardy_examples() {
        let r = hardy_finite(&spec("pow(4)"), 2.0, 1.0, 2.0).unwrap();
        assert!((r.lhs / r.rhs - 9.0 / 25.0).abs() < 1e-9);
        let r = hardy_finite(&spec("pow(3)"), 3.0, 1.0, 2.0).unwrap();
        assert!((r.lhs - r.rhs).abs() <= 1e-7 * r.rhs);
        assert!(r.pass);
        let r = hardy_finite(&spec("exptrunc(1)"), 2.0, 0.5, 2.0).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn hardy_clips_unit_domain() {
        let r = hardy_finite(&spec("neglogtrunc(1)"), 2.0, 0.5, 1.0).unwrap();
        assert_eq!(r.interval.1, 1.0 - ENDPOINT_CLIP);
        assert!(r.pass);
    }

    #[test]
    fn average_value_examples() {
        let r = average_value_report(&spec("pow(2)"), 2.0, 5.0).unwrap();
        assert!((r.lhs - 25.0 / 3.0).abs() < 1e-10);
        assert!((r.rhs - 25.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.component("classical_bound"), Some(12.5));
        assert!(r.pass);
        let r = average_value_report(&spec("exptrunc(0)"), 2.0, 1.0).unwrap();
        assert!(!r.pass);
        assert!((r.lhs - 0.718281828459045).abs() < 1e-9);
        assert!((r.rhs - 0.5727606094863483).abs() < 1e-12);
    }
}
