use rayon::prelude::*;

use radconvex_core::funcspec::parse;
use radconvex_core::integral::{
    average_value_report, continuous_jensen, hardy_finite, hh_first, hh_general, hh_second,
    split_interval_bound, unit_interval_chain,
};
use radconvex_core::pointwise::{
    algebraic_identity, amgm_refined, fourradical_bound, jensen2_refined, jensen_n_chain,
    mradical_bound, superadditivity_refined, upper_curve,
};
use radconvex_core::radical::{max_radical_order, necessary_condition};
use radconvex_core::FunctionSpec;

use crate::args::{BoundArgs, ClassifyArgs, Theorem, VerifyArgs};
use crate::error::CliError;
use crate::report::{Classification, ResultEntry, RunReport, CLASSIFY_ID};
use crate::sampling::{self, Instance};

/// Finite domains `[0, D)` are used only up to `DOMAIN_FRACTION · D`.
pub const DOMAIN_FRACTION: f64 = 0.95;
/// Points of the average-value screen, before clipping to the domain.
pub const SCREEN_POINTS: [f64; 5] = [0.5, 1.0, 2.0, 3.0, 5.0];
/// Orders of the average-value screen; the grid estimate is appended.
pub const SCREEN_ORDERS: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

pub fn parse_spec(text: &str) -> Result<FunctionSpec, CliError> {
    parse(text).map_err(|error| CliError::Spec { text: text.to_owned(), error })
}

/// Largest usable point of `f`'s domain below `x_max`.
pub fn usable_end(f: &FunctionSpec, x_max: f64) -> f64 {
    x_max.min(DOMAIN_FRACTION * f.domain_end())
}

fn check_finite(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be finite")))
    }
}

pub fn classify(args: &ClassifyArgs) -> Result<RunReport, CliError> {
    let f = parse_spec(&args.spec)?;
    for (name, v) in [("p-cap", args.p_cap), ("x-max", args.x_max), ("tol", args.tol)] {
        check_finite(name, v)?;
    }
    // x_max^{1/p} must stay inside the domain for every p in [1, p_cap].
    let end = DOMAIN_FRACTION * f.domain_end();
    let x_max = if end >= 1.0 { args.x_max.min(end) } else { args.x_max.min(end.powf(args.p_cap)) };

    let mut profile = max_radical_order(&f, args.p_cap, args.iters, args.grid_n, x_max, args.tol)?;
    let mut orders = SCREEN_ORDERS.to_vec();
    if profile.p_max_estimate >= 1.0 && !orders.contains(&profile.p_max_estimate) {
        orders.push(profile.p_max_estimate);
    }
    let mut xs: Vec<f64> = SCREEN_POINTS.iter().map(|&x| x.min(end)).collect();
    xs.dedup();
    for &p in &orders {
        profile.necessary_checks.extend(necessary_condition(&f, p, &xs)?);
    }

    let confirmed = profile.bracket.0;
    let mut refuted: Vec<f64> = Vec::new();
    let mut margin = f64::INFINITY;
    let mut consistent = profile.is_monotone_consistent();
    for c in &profile.necessary_checks {
        if !c.pass && !refuted.contains(&c.p) {
            refuted.push(c.p);
        }
        if c.p <= confirmed {
            margin = margin.min(c.rhs - c.lhs);
            consistent &= c.pass;
        }
    }
    if !margin.is_finite() {
        margin = 0.0;
    }

    let mut verdict = if profile.p_max_estimate == 0.0 {
        "not radical convex: the grid test fails at p = 1".to_owned()
    } else if profile.p_max_estimate >= args.p_cap {
        format!("p-radical convex for every p <= {} (cap reached)", args.p_cap)
    } else {
        format!("p-radical convex for p <= {:.4} on the grid", profile.p_max_estimate)
    };
    if !refuted.is_empty() {
        let list: Vec<String> = refuted.iter().map(|p| format!("not {}-radical", fmt_order(*p))).collect();
        verdict.push_str(&format!("; average-value test: {}", list.join(", ")));
    }
    if !consistent {
        verdict.push_str("; INCONSISTENT: an order at or below the grid estimate is refuted");
    }

    let c = Classification {
        theorem_id: CLASSIFY_ID.to_owned(),
        grid_n: args.grid_n,
        x_max,
        tol: args.tol,
        p_cap: args.p_cap,
        iters: args.iters,
        profile,
        refuted_orders: refuted,
        verdict,
        margin,
        pass: consistent,
    };
    Ok(RunReport::new("classify".into(), args.spec.clone(), vec![ResultEntry::Classification(c)]))
}

fn fmt_order(p: f64) -> String {
    if p.fract() == 0.0 {
        format!("{p}")
    } else {
        format!("{p:.6}")
    }
}

/// Explicit instance from the flags, with per-theorem defaults.
fn explicit_instance(args: &VerifyArgs, f: &FunctionSpec) -> Result<Instance, CliError> {
    let (da, db) = match args.theorem {
        Theorem::Cjensen => (0.0, 1.0),
        t if t.is_integral() => (1.0, 2.0),
        _ => (0.0, 1.0),
    };
    let a = args.a.unwrap_or(da);
    let b = args.b.unwrap_or(db);
    let points = if !args.points.is_empty() {
        args.points.clone()
    } else if args.theorem == Theorem::Amgm {
        vec![1.0, 9.0]
    } else {
        vec![a, b]
    };
    let weights = if args.weights.is_empty() {
        vec![1.0 / points.len() as f64; points.len()]
    } else {
        args.weights.clone()
    };
    let x_hi = if args.theorem == Theorem::Amgm {
        let target = points.iter().cloned().fold(0.0, f64::max);
        inverse_bracket(f, target)
    } else {
        0.0
    };
    Ok(Instance { a, b, t: args.t, x: args.x, weights, points, x_hi })
}

/// An `x_hi` with `f(x_hi) >= y`, or the edge of the domain.
fn inverse_bracket(f: &FunctionSpec, y: f64) -> f64 {
    if f.domain_end().is_finite() {
        return f.domain_end() * (1.0 - 1e-12);
    }
    let mut hi = 1.0;
    while hi < 1e300 && f.evaluate(hi).is_ok_and(|v| v < y) {
        hi *= 2.0;
    }
    hi
}

fn run_instance(
    theorem: Theorem,
    f: &FunctionSpec,
    g: &FunctionSpec,
    args: &VerifyArgs,
    i: &Instance,
) -> Result<ResultEntry, radconvex_core::Error> {
    use ResultEntry::{Inequality as Ineq, Integral as Int};
    Ok(match theorem {
        Theorem::Jensen2 => Ineq(jensen2_refined(f, i.a, i.b, i.t)?),
        Theorem::Jensen => Ineq(jensen_n_chain(f, &i.weights, &i.points)?),
        Theorem::Upper => Ineq(upper_curve(f, i.t)?.report(i.t)),
        Theorem::Amgm => Ineq(amgm_refined(f, &i.weights, &i.points, i.x_hi)?),
        Theorem::Superadd => Ineq(superadditivity_refined(f, i.a, i.b)?),
        Theorem::Mradical => Ineq(mradical_bound(f, args.m, i.a, i.b, i.t)?),
        Theorem::Fourradical => Ineq(fourradical_bound(f, i.a, i.b, i.t)?),
        Theorem::Identity => Ineq(algebraic_identity(i.a, i.b, i.t)?),
        Theorem::Hh1 => Int(hh_first(f, i.a, i.b)?),
        Theorem::Hh2 => Int(hh_second(f, i.a, i.b)?),
        Theorem::Unit => Int(unit_interval_chain(f)?),
        Theorem::Split => Int(split_interval_bound(f)?),
        Theorem::Hhgen => Int(hh_general(f, i.a, i.b)?),
        Theorem::Cjensen => {
            let gx = |x: f64| g.evaluate(x).unwrap_or(f64::NAN);
            Int(continuous_jensen(f, gx, i.a, i.b)?)
        }
        Theorem::Hardy => Int(hardy_finite(f, args.p, i.a, i.b)?),
        Theorem::Avg => Int(average_value_report(f, args.p, i.x)?),
    })
}

pub fn verify(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let f = parse_spec(&args.spec)?;
    let g = parse_spec(args.g.as_deref().unwrap_or("series(1, 1)"))?;
    for (name, v) in [("t", args.t), ("p", args.p), ("x", args.x), ("x-max", args.x_max)] {
        check_finite(name, v)?;
    }
    let instances = match args.samples {
        Some(0) => return Err(CliError::Usage("--samples must be at least 1".into())),
        Some(n) if !matches!(args.theorem, Theorem::Unit | Theorem::Split) => {
            let end = usable_end(&f, args.x_max);
            if !(end > 0.0) {
                return Err(CliError::Usage("--x-max must be positive".into()));
            }
            sampling::draw(args.theorem, &f, end, n, args.seed)
        }
        _ => vec![explicit_instance(args, &f)?],
    };
    let results = instances
        .par_iter()
        .map(|i| run_instance(args.theorem, &f, &g, args, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::new(format!("verify {}", args.theorem.name()), args.spec.clone(), results))
}

pub fn bound(args: &BoundArgs) -> Result<RunReport, CliError> {
    let f = parse_spec(&args.spec)?;
    let mut results = vec![ResultEntry::Inequality(jensen2_refined(&f, args.a, args.b, args.t)?)];
    if f.contains(1.0) {
        results.push(ResultEntry::Inequality(upper_curve(&f, args.t)?.report(args.t)));
    }
    let m = match (args.m, args.p) {
        (Some(m), _) => Some(m),
        (None, Some(p)) if p >= 2.0 && p.is_finite() => Some(2 * (p / 2.0).floor() as u32),
        (None, Some(p)) => {
            return Err(CliError::Usage(format!("--p must be >= 2 for the m-radical terms, got {p}")))
        }
        (None, None) => None,
    };
    if let Some(m) = m {
        results.push(ResultEntry::Inequality(mradical_bound(&f, m, args.a, args.b, args.t)?));
    }
    Ok(RunReport::new("bound".into(), args.spec.clone(), results))
}
