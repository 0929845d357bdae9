//! Pointwise (quadrature-free) refinements of the convexity inequality.
//!
//! Each operation evaluates both sides of one inequality for a given `f`
//! and returns an [`InequalityReport`]. The radical-order hypotheses are not
//! enforced: a report for a function that lacks the required order may fail,
//! and that failure is the interesting output.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::funcspec::FunctionSpec;
use crate::math::{powf, scale};

/// Margin slack, relative to `max(1, |rhs|)`.
pub const MARGIN_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TheoremId {
    /// Two-point refinement `f(M) + f(sqrt(t(1-t))|a-b|) <= (1-t)f(a) + t f(b)`.
    #[cfg_attr(feature = "serde", serde(rename = "JENSEN2"))]
    Jensen2,
    /// Weighted chain `Q₁ <= … <= Q₅`.
    #[cfg_attr(feature = "serde", serde(rename = "JENSEN_N"))]
    JensenN,
    #[cfg_attr(feature = "serde", serde(rename = "UPPER_CURVE"))]
    UpperCurve,
    #[cfg_attr(feature = "serde", serde(rename = "AMGM"))]
    Amgm,
    #[cfg_attr(feature = "serde", serde(rename = "SUPERADD"))]
    Superadd,
    #[cfg_attr(feature = "serde", serde(rename = "MRADICAL"))]
    MRadical,
    #[cfg_attr(feature = "serde", serde(rename = "FOURRADICAL"))]
    FourRadical,
    #[cfg_attr(feature = "serde", serde(rename = "ALGEBRAIC_ID"))]
    AlgebraicId,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Jensen2 => "JENSEN2",
            TheoremId::JensenN => "JENSEN_N",
            TheoremId::UpperCurve => "UPPER_CURVE",
            TheoremId::Amgm => "AMGM",
            TheoremId::Superadd => "SUPERADD",
            TheoremId::MRadical => "MRADICAL",
            TheoremId::FourRadical => "FOURRADICAL",
            TheoremId::AlgebraicId => "ALGEBRAIC_ID",
        }
    }
}

/// Inputs of one inequality instance; unused fields stay empty.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Params {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub weights: Vec<f64>,
    pub points: Vec<f64>,
    pub m: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Term {
    pub name: String,
    pub value: f64,
}

impl Term {
    pub fn new(name: &str, value: f64) -> Self {
        Self { name: name.into(), value }
    }
}

/// Both sides of one pointwise inequality.
///
/// Sum-form reports certify `Σ lhs_terms <= rhs` and set
/// `margin = rhs - Σ lhs_terms`. Chain-form reports (`chain` non-empty)
/// certify `chain[0] <= chain[1] <= …`, with `lhs_terms` naming every link
/// but the last, `rhs` the last link, and `margin` the smallest gap.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub inputs: Params,
    pub lhs_terms: Vec<Term>,
    pub rhs: f64,
    pub chain: Vec<f64>,
    pub margin: f64,
    pub pass: bool,
}

impl InequalityReport {
    fn sum_form(theorem_id: TheoremId, inputs: Params, lhs_terms: Vec<Term>, rhs: f64) -> Self {
        let total: f64 = lhs_terms.iter().map(|t| t.value).sum();
        let margin = rhs - total;
        Self {
            theorem_id,
            inputs,
            lhs_terms,
            rhs,
            chain: Vec::new(),
            margin,
            pass: margin >= -MARGIN_RTOL * scale(rhs),
        }
    }

    fn chain_form(theorem_id: TheoremId, inputs: Params, links: &[(&str, f64)]) -> Self {
        let chain: Vec<f64> = links.iter().map(|l| l.1).collect();
        let rhs = *chain.last().expect("chain has at least two links");
        let margin = chain.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let lhs_terms = links[..links.len() - 1]
            .iter()
            .map(|(n, v)| Term::new(n, *v))
            .collect();
        Self {
            theorem_id,
            inputs,
            lhs_terms,
            rhs,
            chain,
            margin,
            pass: margin >= -MARGIN_RTOL * scale(rhs),
        }
    }

    /// Sum of the left-hand terms, or the first link of a chain.
    pub fn lhs_total(&self) -> f64 {
        match self.chain.first() {
            Some(first) => *first,
            None => self.lhs_terms.iter().map(|t| t.value).sum(),
        }
    }

    /// Gaps between consecutive chain links.
    pub fn chain_margins(&self) -> Vec<f64> {
        self.chain.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.lhs_terms.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

fn check_t(t: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::invalid("t must lie in [0, 1]"))
    }
}

fn check_nonneg(name: &str, v: f64) -> Result<(), Error> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!("{name} must be finite and >= 0")))
    }
}

fn check_weights(w: &[f64], x: &[f64]) -> Result<(), Error> {
    if w.is_empty() || w.len() != x.len() {
        return Err(Error::invalid("weights and points must be non-empty and of equal length"));
    }
    if w.iter().any(|wi| !(*wi >= 0.0)) {
        return Err(Error::invalid("weights must be >= 0"));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(alloc::format!("weights must sum to 1, got {total}")));
    }
    Ok(())
}

/// `(1-t)a² + tb² - t(1-t)(a-b)² - ((1-t)a+tb)²`, identically zero.
pub fn algebraic_identity_residual(a: f64, b: f64, t: f64) -> f64 {
    let s = 1.0 - t;
    s * a * a + t * b * b - t * s * (a - b) * (a - b) - (s * a + t * b) * (s * a + t * b)
}

/// The identity `(1-t)a² + tb² = ((1-t)a+tb)² + t(1-t)(a-b)²` as a report.
pub fn algebraic_identity(a: f64, b: f64, t: f64) -> Result<InequalityReport, Error> {
    check_nonneg("a", a)?;
    check_nonneg("b", b)?;
    check_t(t)?;
    let s = 1.0 - t;
    let mean = s * a + t * b;
    Ok(InequalityReport::sum_form(
        TheoremId::AlgebraicId,
        Params { a: Some(a), b: Some(b), t: Some(t), ..Params::default() },
        vec![Term::new("mean_sq", mean * mean), Term::new("spread", t * s * (a - b) * (a - b))],
        s * a * a + t * b * b,
    ))
}

/// `f((1-t)a+tb) + f(sqrt(t(1-t))|a-b|) <= (1-t)f(a) + t f(b)`.
pub fn jensen2_refined(f: &FunctionSpec, a: f64, b: f64, t: f64) -> Result<InequalityReport, Error> {
    check_nonneg("a", a)?;
    check_nonneg("b", b)?;
    check_t(t)?;
    let s = 1.0 - t;
    let main = f.evaluate(s * a + t * b)?;
    let refine = f.evaluate(libm::sqrt(t * s) * (a - b).abs())?;
    let rhs = s * f.evaluate(a)? + t * f.evaluate(b)?;
    Ok(InequalityReport::sum_form(
        TheoremId::Jensen2,
        Params { a: Some(a), b: Some(b), t: Some(t), ..Params::default() },
        vec![Term::new("main", main), Term::new("refine", refine)],
        rhs,
    ))
}

/// The five-link weighted chain
///
/// ```text
/// f(x̄) <= Σ wᵢ f((x̄+xᵢ)/2)
///      <= Σ wᵢ [f((x̄+xᵢ)/2) + f(|x̄-xᵢ|/2)]
///      <= (f(x̄) + Σ wᵢ f(xᵢ)) / 2
///      <= Σ wᵢ f(xᵢ)
/// ```
///
/// with `x̄ = Σ wⱼ xⱼ`.
pub fn jensen_n_chain(f: &FunctionSpec, w: &[f64], x: &[f64]) -> Result<InequalityReport, Error> {
    check_weights(w, x)?;
    for &xi in x {
        f.check_domain(xi)?;
    }
    let mean: f64 = w.iter().zip(x).map(|(wi, xi)| wi * xi).sum();
    let q1 = f.evaluate(mean)?;
    let mut mid = 0.0;
    let mut spread = 0.0;
    let mut q5 = 0.0;
    for (&wi, &xi) in w.iter().zip(x) {
        mid += wi * f.evaluate(0.5 * (mean + xi))?;
        spread += wi * f.evaluate(0.5 * (mean - xi).abs())?;
        q5 += wi * f.evaluate(xi)?;
    }
    let q2 = mid;
    let q3 = mid + spread;
    let q4 = 0.5 * (q1 + q5);
    Ok(InequalityReport::chain_form(
        TheoremId::JensenN,
        Params { weights: w.to_vec(), points: x.to_vec(), ..Params::default() },
        &[("q1", q1), ("q2", q2), ("q3", q3), ("q4", q4), ("q5", q5)],
    ))
}

/// `(f(t), f(1)t - f(sqrt(t(1-t))), f(1)t)`, ordered for 2-radical `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperCurve {
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
}

impl UpperCurve {
    pub fn report(&self, t: f64) -> InequalityReport {
        InequalityReport::chain_form(
            TheoremId::UpperCurve,
            Params { t: Some(t), ..Params::default() },
            &[("value", self.lhs), ("curve", self.mid), ("line", self.rhs)],
        )
    }
}

pub fn upper_curve(f: &FunctionSpec, t: f64) -> Result<UpperCurve, Error> {
    check_t(t)?;
    let f1 = f.evaluate(1.0)?;
    let lhs = f.evaluate(t)?;
    let mid = f1 * t - f.evaluate(libm::sqrt(t * (1.0 - t)))?;
    Ok(UpperCurve { lhs, mid, rhs: f1 * t })
}

/// Refined weighted AM–GM:
/// `Π xᵢ^{wᵢ} <= Σ wᵢ [f((ȳ+yᵢ)/2) + f(|ȳ-yᵢ|/2)] <= Σ wᵢ xᵢ`
/// where `yᵢ = f⁻¹(xᵢ)` (found on `[0, x_hi]`) and `ȳ = Σ wⱼ yⱼ`.
pub fn amgm_refined(
    f: &FunctionSpec,
    w: &[f64],
    x: &[f64],
    x_hi: f64,
) -> Result<InequalityReport, Error> {
    check_weights(w, x)?;
    if x.iter().any(|xi| !(*xi > 0.0 && xi.is_finite())) {
        return Err(Error::invalid("AM-GM points must be > 0"));
    }
    let y = x.iter().map(|&xi| f.inverse(xi, x_hi)).collect::<Result<Vec<_>, _>>()?;
    let ybar: f64 = w.iter().zip(&y).map(|(wi, yi)| wi * yi).sum();
    let geo = libm::exp(w.iter().zip(x).map(|(wi, xi)| wi * libm::log(*xi)).sum::<f64>());
    let mut mid = 0.0;
    for (&wi, &yi) in w.iter().zip(&y) {
        mid += wi * (f.evaluate(0.5 * (ybar + yi))? + f.evaluate(0.5 * (ybar - yi).abs())?);
    }
    let arith: f64 = w.iter().zip(x).map(|(wi, xi)| wi * xi).sum();
    Ok(InequalityReport::chain_form(
        TheoremId::Amgm,
        Params { weights: w.to_vec(), points: x.to_vec(), ..Params::default() },
        &[("geometric", geo), ("refined", mid), ("arithmetic", arith)],
    ))
}

/// `f(a) + f(b) + f(sqrt(2ab)) <= f(a+b)`.
pub fn superadditivity_refined(f: &FunctionSpec, a: f64, b: f64) -> Result<InequalityReport, Error> {
    check_nonneg("a", a)?;
    check_nonneg("b", b)?;
    let rhs = f.evaluate(a + b)?;
    Ok(InequalityReport::sum_form(
        TheoremId::Superadd,
        Params { a: Some(a), b: Some(b), ..Params::default() },
        vec![
            Term::new("f_a", f.evaluate(a)?),
            Term::new("f_b", f.evaluate(b)?),
            Term::new("refine", f.evaluate(libm::sqrt(2.0 * a * b))?),
        ],
        rhs,
    ))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Term `k` of the m-radical expansion:
/// `C(m/2,k)^{1/m} (t(1-t))^{k/m} |a-b|^{2k/m} M^{1-2k/m}` with `0⁰ = 1`.
fn mradical_arg(m: u32, k: u32, t: f64, diff: f64, mean: f64) -> f64 {
    let mf = m as f64;
    let kf = k as f64;
    powf(binomial(m / 2, k), 1.0 / mf)
        * powf(t * (1.0 - t), kf / mf)
        * powf(diff, 2.0 * kf / mf)
        * powf(mean, 1.0 - 2.0 * kf / mf)
}

/// Multi-term refinement for even `m`:
/// `Σ_{k=0}^{m/2} f(C(m/2,k)^{1/m} (t(1-t))^{k/m} |a-b|^{2k/m} M^{1-2k/m}) <= (1-t)f(a) + t f(b)`
/// where `M = (1-t)a + tb`.
pub fn mradical_bound(
    f: &FunctionSpec,
    m: u32,
    a: f64,
    b: f64,
    t: f64,
) -> Result<InequalityReport, Error> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::invalid(alloc::format!("m must be an even integer >= 2, got {m}")));
    }
    check_nonneg("a", a)?;
    check_nonneg("b", b)?;
    check_t(t)?;
    let mean = (1.0 - t) * a + t * b;
    let diff = (a - b).abs();
    let mut terms = Vec::with_capacity(m as usize / 2 + 1);
    for k in 0..=m / 2 {
        let v = f.evaluate(mradical_arg(m, k, t, diff, mean))?;
        terms.push(Term { name: alloc::format!("k{k}"), value: v });
    }
    let rhs = (1.0 - t) * f.evaluate(a)? + t * f.evaluate(b)?;
    Ok(InequalityReport::sum_form(
        TheoremId::MRadical,
        Params { a: Some(a), b: Some(b), t: Some(t), m: Some(m), ..Params::default() },
        terms,
        rhs,
    ))
}

/// Three-term bound for 4-radical `f`:
/// `f(M) + f(sqrt(t(1-t))|a-b|) + f((2t(1-t))^{1/4} sqrt(|a-b| M)) <= (1-t)f(a) + t f(b)`.
/// This is the `m = 4` case of [`mradical_bound`] and shares its terms.
pub fn fourradical_bound(f: &FunctionSpec, a: f64, b: f64, t: f64) -> Result<InequalityReport, Error> {
    let mut r = mradical_bound(f, 4, a, b, t)?;
    r.theorem_id = TheoremId::FourRadical;
    for (term, name) in r.lhs_terms.iter_mut().zip(["main", "cross", "refine"]) {
        term.name = name.into();
    }
    Ok(r)
}
