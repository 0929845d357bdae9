use proptest::prelude::*;
use radconvex_core::funcspec::parse;
use radconvex_core::integral::{
    hardy_finite, hh_first, hh_general, hh_second, split_interval_bound, unit_interval_chain,
};
use radconvex_core::pointwise::{
    algebraic_identity_residual, jensen2_refined, jensen_n_chain, mradical_bound,
    superadditivity_refined,
};
use radconvex_core::radical::{is_p_radical, DEFAULT_GRID_N, DEFAULT_TOL_CONVEX};
use radconvex_core::{Expr, FunctionSpec};

fn scale(v: f64) -> f64 {
    v.abs().max(1.0)
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (1.0..6.0f64).prop_map(Expr::Pow),
        (1u32..6).prop_map(|k| Expr::Pow(k as f64)),
        (0u32..4).prop_map(Expr::ExpTrunc),
        (0u32..3).prop_map(Expr::GeomTrunc),
        (0u32..3).prop_map(Expr::NegLogTrunc),
        (1u32..4, prop::collection::vec(0.0..5.0f64, 1..4))
            .prop_map(|(start, coeffs)| Expr::Series { start, coeffs }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (0.1..10.0f64, inner.clone()).prop_map(|(c, e)| Expr::scale(c, e)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::sum(l, r)),
            (leaf(), inner).prop_map(|(o, i)| Expr::compose(o, i)),
        ]
    })
}

/// Builtins with their largest integer radical order.
const ORDERED: &[(&str, f64)] = &[
    ("pow(1)", 1.0),
    ("pow(2)", 2.0),
    ("pow(3)", 3.0),
    ("pow(4)", 4.0),
    ("pow(5.5)", 5.5),
    ("exptrunc(0)", 1.0),
    ("exptrunc(1)", 2.0),
    ("exptrunc(2)", 3.0),
    ("geomtrunc(0)", 1.0),
    ("geomtrunc(1)", 2.0),
    ("neglogtrunc(1)", 2.0),
    ("neglogtrunc(2)", 3.0),
];

/// 2-radical battery.
const TWO_RADICAL: &[&str] =
    &["pow(2)", "pow(3)", "pow(4)", "exptrunc(1)", "exptrunc(2)", "geomtrunc(1)", "neglogtrunc(1)"];

fn spec(s: &str) -> FunctionSpec {
    parse(s).unwrap()
}

/// Grid end keeping `x_max^{1/p}` below `min(cap, 0.9 D)`.
fn grid_end(f: &FunctionSpec, p: f64, cap: f64) -> f64 {
    cap.min(0.9 * f.domain_end()).powf(p)
}

fn radical(f: &FunctionSpec, p: f64, x_max: f64) -> bool {
    is_p_radical(f, p, DEFAULT_GRID_N, x_max, DEFAULT_TOL_CONVEX).unwrap().pass
}

fn dirichlet(raw: &[f64]) -> Vec<f64> {
    let e: Vec<f64> = raw.iter().map(|u| 1e-9 - (1.0 - u).ln()).collect();
    let total: f64 = e.iter().sum();
    let mut w: Vec<f64> = e.iter().map(|v| v / total).collect();
    let rest: f64 = w[1..].iter().sum();
    w[0] = 1.0 - rest;
    w
}

proptest! {
    #[test]
    fn format_then_parse_round_trips(e in expr()) {
        let f = FunctionSpec::new(e.clone()).unwrap();
        let text = f.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.expr(), &e, "{}", text);
    }

    #[test]
    fn zero_anchor(e in expr()) {
        let f = FunctionSpec::new(e).unwrap();
        prop_assert_eq!(f.evaluate(0.0).unwrap(), 0.0);
    }

    #[test]
    fn builtins_are_monotone(e in leaf(), u1 in 0.0..1.0f64, u2 in 0.0..1.0f64) {
        let f = FunctionSpec::new(e).unwrap();
        let hi = f.domain_end().min(20.0) * 0.999;
        let (x1, x2) = (u1.min(u2) * hi, u1.max(u2) * hi);
        let (y1, y2) = (f.evaluate(x1).unwrap(), f.evaluate(x2).unwrap());
        prop_assert!(y1 >= 0.0);
        prop_assert!(y1 <= y2, "{} at {} -> {}, {} -> {}", f, x1, y1, x2, y2);
    }

    #[test]
    fn trees_are_monotone(e in expr(), u1 in 0.0..1.0f64, u2 in 0.0..1.0f64) {
        let f = FunctionSpec::new(e).unwrap();
        let hi = f.domain_end().min(2.0) * 0.999;
        let (x1, x2) = (u1.min(u2) * hi, u1.max(u2) * hi);
        let (y1, y2) = (f.evaluate(x1).unwrap(), f.evaluate(x2).unwrap());
        prop_assert!(y1 >= 0.0);
        prop_assert!(y1 <= y2 + 1e-14 * y2.abs(), "{} at {} -> {}, {} -> {}", f, x1, y1, x2, y2);
    }

    #[test]
    fn sum_and_scale_are_linear(l in leaf(), r in leaf(), c in 0.1..10.0f64, u in 0.0..1.0f64) {
        let fl = FunctionSpec::new(l.clone()).unwrap();
        let fr = FunctionSpec::new(r.clone()).unwrap();
        let sum = FunctionSpec::new(Expr::sum(l.clone(), r)).unwrap();
        let scaled = FunctionSpec::new(Expr::scale(c, l)).unwrap();
        let x = u * sum.domain_end().min(10.0) * 0.999;
        let expect = fl.evaluate(x).unwrap() + fr.evaluate(x).unwrap();
        prop_assert!((sum.evaluate(x).unwrap() - expect).abs() <= 1e-14 * expect.abs());
        let expect = c * fl.evaluate(x).unwrap();
        prop_assert!((scaled.evaluate(x).unwrap() - expect).abs() <= 1e-14 * expect.abs());
    }

    #[test]
    fn identity_residual_vanishes(a in 0.0..100.0f64, b in 0.0..100.0f64, t in 0.0..=1.0f64) {
        let r = algebraic_identity_residual(a, b, t);
        prop_assert!(r.abs() <= 1e-12 * (a * a).max(b * b).max(1.0), "{}", r);
    }

    #[test]
    fn jensen2_is_exact_for_square(a in 0.0..50.0f64, b in 0.0..50.0f64, t in 0.0..=1.0f64) {
        let r = jensen2_refined(&spec("pow(2)"), a, b, t).unwrap();
        prop_assert!(r.margin.abs() <= 1e-12 * scale(r.rhs), "{}", r.margin);
        prop_assert!(r.pass);
    }

    #[test]
    fn jensen2_is_symmetric(i in 0..TWO_RADICAL.len(), ua in 0.0..1.0f64, ub in 0.0..1.0f64, t in 0.0..=1.0f64) {
        let f = spec(TWO_RADICAL[i]);
        let hi = f.domain_end().min(5.0) * 0.99;
        let (a, b) = (ua * hi, ub * hi);
        let r1 = jensen2_refined(&f, a, b, t).unwrap();
        let r2 = jensen2_refined(&f, b, a, 1.0 - t).unwrap();
        for (x, y) in r1.lhs_terms.iter().zip(&r2.lhs_terms) {
            prop_assert!((x.value - y.value).abs() <= 1e-12 * scale(x.value));
        }
        prop_assert!((r1.rhs - r2.rhs).abs() <= 1e-12 * scale(r1.rhs));
    }

    #[test]
    fn two_radical_reports_hold(i in 0..TWO_RADICAL.len(), ua in 0.0..1.0f64, ub in 0.0..1.0f64, t in 0.0..=1.0f64) {
        let f = spec(TWO_RADICAL[i]);
        let hi = f.domain_end().min(5.0) * 0.99;
        let (a, b) = (ua * hi, ub * hi);
        let r = jensen2_refined(&f, a, b, t).unwrap();
        prop_assert!(r.pass, "{} at ({}, {}, {}): {}", TWO_RADICAL[i], a, b, t, r.margin);
        // Dropping the refinement leaves classical Jensen.
        prop_assert!(r.term("main").unwrap() <= r.rhs + 1e-9 * scale(r.rhs));

        let (a, b) = (0.5 * a, 0.5 * b);
        let s = superadditivity_refined(&f, a, b).unwrap();
        prop_assert!(s.pass, "{} at ({}, {}): {}", TWO_RADICAL[i], a, b, s.margin);
        prop_assert!(s.term("f_a").unwrap() + s.term("f_b").unwrap() <= s.rhs + 1e-9 * scale(s.rhs));
    }

    #[test]
    fn mradical_two_is_jensen2(i in 0..ORDERED.len(), ua in 0.0..1.0f64, ub in 0.0..1.0f64, t in 0.0..=1.0f64) {
        let f = spec(ORDERED[i].0);
        let hi = f.domain_end().min(5.0) * 0.99;
        let (a, b) = (ua * hi, ub * hi);
        let m = mradical_bound(&f, 2, a, b, t).unwrap();
        let j = jensen2_refined(&f, a, b, t).unwrap();
        prop_assert_eq!(m.lhs_terms.len(), 2);
        for (x, y) in m.lhs_terms.iter().zip(&j.lhs_terms) {
            prop_assert!((x.value - y.value).abs() <= 1e-12 * scale(y.value));
        }
        prop_assert_eq!(m.rhs, j.rhs);
    }

    #[test]
    fn jensen_chain_is_ordered(
        i in 0..TWO_RADICAL.len(),
        raw in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..=8),
    ) {
        let f = spec(TWO_RADICAL[i]);
        let hi = f.domain_end().min(5.0) * 0.99;
        let w = dirichlet(&raw.iter().map(|r| r.0).collect::<Vec<_>>());
        let x: Vec<f64> = raw.iter().map(|r| r.1 * hi).collect();
        let r = jensen_n_chain(&f, &w, &x).unwrap();
        prop_assert!(r.pass, "{}: {:?}", TWO_RADICAL[i], r.chain);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radical_order_is_downward_closed(i in 0..ORDERED.len(), p in 1.0..6.0f64, frac in 0.0..=1.0f64) {
        let f = spec(ORDERED[i].0);
        let q = 1.0 + frac * (p - 1.0);
        // Equal grid settings at both orders.
        let x_max = if f.domain_end().is_finite() { 0.95 } else { 10.0 };
        if radical(&f, p, x_max) {
            prop_assert!(radical(&f, q, x_max), "{} passes at {} but not {}", ORDERED[i].0, p, q);
            prop_assert!(radical(&f, 1.0, x_max));
        }
    }

    #[test]
    fn sum_is_closed(i in 0..ORDERED.len(), j in 0..ORDERED.len(), fp in 0.0..=1.0f64, fq in 0.0..=1.0f64) {
        let (sf, of) = ORDERED[i];
        let (sg, og) = ORDERED[j];
        let p = 1.0 + fp * (of - 1.0);
        let q = 1.0 + fq * (og - 1.0);
        let sum = spec(&format!("{sf} + {sg}"));
        let x_max = grid_end(&sum, 1.0, 5.0);
        prop_assert!(radical(&spec(sf), p, x_max) && radical(&spec(sg), q, x_max));
        prop_assert!(radical(&sum, p.min(q), x_max), "{} at {}", sum, p.min(q));
    }

    #[test]
    fn compose_is_closed(i in 0..ORDERED.len(), j in 0..ORDERED.len(), fp in 0.0..=1.0f64) {
        let (inner, order) = ORDERED[j];
        let p = 1.0 + fp * (order - 1.0);
        let f = spec(&format!("compose({}, {inner})", ORDERED[i].0));
        let x_max = grid_end(&f, p, 2.0);
        prop_assert!(radical(&spec(inner), p, x_max));
        prop_assert!(radical(&f, p, x_max), "{} at {}", f, p);
    }

    #[test]
    fn hermite_hadamard_is_exact_for_square(x1 in 0.1..50.0f64, x2 in 0.1..50.0f64) {
        prop_assume!((x1 - x2).abs() > 1e-3);
        let (a, b) = (x1.min(x2), x1.max(x2));
        let f = spec("pow(2)");
        for r in [hh_first(&f, a, b).unwrap(), hh_second(&f, a, b).unwrap()] {
            prop_assert!(r.margin.abs() <= 1e-8 * scale(r.rhs), "{:?}", r);
            prop_assert!(r.pass);
        }
    }

    #[test]
    fn hermite_hadamard_holds_for_two_radical(i in 0..TWO_RADICAL.len(), u1 in 0.0..1.0f64, u2 in 0.0..1.0f64) {
        let f = spec(TWO_RADICAL[i]);
        let hi = f.domain_end().min(5.0) * 0.99;
        let (a, b) = (u1.min(u2) * hi, u1.max(u2) * hi);
        prop_assume!(b - a > 1e-3);
        let first = hh_first(&f, a, b).unwrap();
        let second = hh_second(&f, a, b).unwrap();
        let general = hh_general(&f, a, b).unwrap();
        prop_assert!(first.pass && second.pass && general.pass);
        // Refinement terms are nonnegative, so classical HH follows.
        prop_assert!(first.component("refine").unwrap() >= 0.0);
        prop_assert!(second.component("refine").unwrap() >= 0.0);
    }

    #[test]
    fn hardy_is_additive(i in 0..3usize, p in 1.0..4.0f64, x1 in 0.2..3.0f64, x2 in 0.2..3.0f64, x3 in 0.2..3.0f64) {
        let f = spec(["pow(2)", "pow(3)", "exptrunc(1)"][i]);
        let mut x = [x1, x2, x3];
        x.sort_by(f64::total_cmp);
        prop_assume!(x[1] - x[0] > 1e-2 && x[2] - x[1] > 1e-2);
        let whole = hardy_finite(&f, p, x[0], x[2]).unwrap();
        let left = hardy_finite(&f, p, x[0], x[1]).unwrap();
        let right = hardy_finite(&f, p, x[1], x[2]).unwrap();
        let tol = 1e-7 * scale(whole.lhs) + 10.0 * (whole.quad_err + left.quad_err + right.quad_err);
        prop_assert!((whole.lhs - left.lhs - right.lhs).abs() <= tol);
        prop_assert!((whole.rhs - left.rhs - right.rhs).abs() <= tol);
    }
}

#[test]
fn hh_general_on_unit_interval_is_the_unit_chain() {
    for s in ["pow(2)", "pow(4)", "pow(1)", "exptrunc(1)", "series(2, 1, 0.5)", "compose(pow(2), exptrunc(0))"] {
        let f = spec(s);
        let g = hh_general(&f, 0.0, 1.0).unwrap();
        let u = unit_interval_chain(&f).unwrap();
        for name in ["left", "middle", "right"] {
            let (x, y) = (g.component(name).unwrap(), u.component(name).unwrap());
            assert!((x - y).abs() <= 1e-12 * scale(y), "{s} {name}: {x} vs {y}");
        }
    }
}

#[test]
fn split_interval_follows_the_hypothesis() {
    for s in TWO_RADICAL {
        assert!(split_interval_bound(&spec(s)).unwrap().pass, "{s}");
    }
    for s in ["pow(1)", "series(1, 1)", "exptrunc(0)", "pow(1.5)"] {
        let r = split_interval_bound(&spec(s)).unwrap();
        assert!(!r.pass, "{s}: {:?}", r);
    }
}

#[test]
fn necessary_condition_fails_above_two_for_square() {
    use radconvex_core::radical::necessary_condition;
    let f = spec("pow(2)");
    let xs = [0.1, 0.5, 1.0, 3.0, 7.5];
    for p in [2.1, 2.5, 3.0, 6.0] {
        assert!(necessary_condition(&f, p, &xs).unwrap().iter().all(|c| !c.pass), "p = {p}");
    }
    assert!(necessary_condition(&f, 2.0, &xs).unwrap().iter().all(|c| c.pass));
}
