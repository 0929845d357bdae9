use std::io::Write;

use radconvex_core::{InequalityReport, IntegralReport, Term};

use crate::args::Format;
use crate::error::CliError;
use crate::report::{Classification, ResultEntry, RunReport};

/// Results listed individually in table output; longer runs are summarised.
const TABLE_ROWS: usize = 20;

pub fn write_report<W: Write>(out: &mut W, report: &RunReport, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(out, report)?,
        Format::Table => write_table(out, report)?,
    }
    Ok(())
}

/// `name=value` pairs of the instance parameters, `;`-separated.
pub fn params(entry: &ResultEntry) -> String {
    let mut parts = Vec::new();
    let mut num = |k: &str, v: Option<f64>| {
        if let Some(v) = v {
            parts.push(format!("{k}={v}"));
        }
    };
    match entry {
        ResultEntry::Inequality(r) => {
            let p = &r.inputs;
            num("a", p.a);
            num("b", p.b);
            num("t", p.t);
            num("m", p.m.map(f64::from));
            if !p.weights.is_empty() {
                parts.push(format!("weights={}", list(&p.weights)));
            }
            if !p.points.is_empty() {
                parts.push(format!("points={}", list(&p.points)));
            }
        }
        ResultEntry::Integral(r) => {
            num("a", Some(r.interval.0));
            num("b", Some(r.interval.1));
            num("p", r.p);
        }
        ResultEntry::Classification(c) => {
            num("p_cap", Some(c.p_cap));
            num("x_max", Some(c.x_max));
            num("grid_n", Some(c.grid_n as f64));
        }
    }
    parts.join(";")
}

fn list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(" "))
}

fn write_csv<W: Write>(out: &mut W, report: &RunReport) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theorem_id", "spec", "params", "lhs", "rhs", "margin", "pass"])?;
    for r in &report.results {
        w.write_record([
            r.theorem_id().to_owned(),
            report.spec_text.clone(),
            params(r),
            r.lhs().to_string(),
            r.rhs().to_string(),
            r.margin().to_string(),
            r.pass().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e7).contains(&a) {
        let s = format!("{v:.12}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_owned()
    } else {
        format!("{v:.6e}")
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_terms<W: Write>(out: &mut W, terms: &[Term]) -> std::io::Result<()> {
    let width = terms.iter().map(|t| t.name.len()).max().unwrap_or(0);
    for t in terms {
        writeln!(out, "  {:<width$}  {}", t.name, num(t.value))?;
    }
    Ok(())
}

fn write_inequality<W: Write>(out: &mut W, r: &InequalityReport) -> std::io::Result<()> {
    if r.chain.is_empty() {
        let mut terms = r.lhs_terms.clone();
        terms.push(Term::new("= sum", r.lhs_total()));
        terms.push(Term::new("rhs", r.rhs));
        write_terms(out, &terms)?;
    } else {
        let links: Vec<String> = r.chain.iter().map(|v| num(*v)).collect();
        let mut terms = r.lhs_terms.clone();
        if let Some(last) = r.chain.last() {
            terms.push(Term::new("rhs", *last));
        }
        write_terms(out, &terms)?;
        writeln!(out, "  chain  {}", links.join(" <= "))?;
    }
    Ok(())
}

fn write_integral<W: Write>(out: &mut W, r: &IntegralReport) -> std::io::Result<()> {
    write_terms(out, &r.components)?;
    writeln!(out, "  lhs {}  rhs {}  quad_err {:.1e}", num(r.lhs), num(r.rhs), r.quad_err)
}

fn write_classification<W: Write>(out: &mut W, c: &Classification) -> std::io::Result<()> {
    let p = &c.profile;
    writeln!(out, "  p_max     {}", num(p.p_max_estimate))?;
    writeln!(out, "  bracket   [{}, {}]", num(p.bracket.0), num(p.bracket.1))?;
    writeln!(out, "  grid      n = {}, u in [0, {}], tol = {:e}", c.grid_n, num(c.x_max), c.tol)?;
    let passes = p.trace.iter().filter(|pr| pr.pass).count();
    writeln!(out, "  probes    {} ({} passed, downward closed: {})", p.trace.len(), passes, p.is_monotone_consistent())?;
    writeln!(out, "  average-value screen  int_0^x f <= x f(x)/(p+1)")?;
    writeln!(out, "  {:>14} {:>8} {:>18} {:>18}", "p", "x", "lhs", "rhs")?;
    for n in &p.necessary_checks {
        writeln!(
            out,
            "  {:>14} {:>8} {:>18} {:>18}  {}",
            num(n.p),
            num(n.x),
            num(n.lhs),
            num(n.rhs),
            if n.pass { "ok" } else { "refuted" }
        )?;
    }
    writeln!(out, "  verdict   {}", c.verdict)
}

fn write_entry<W: Write>(out: &mut W, r: &ResultEntry) -> std::io::Result<()> {
    writeln!(out, "{} {}  margin {}  {}", r.theorem_id(), params(r), num(r.margin()), verdict(r.pass()))?;
    match r {
        ResultEntry::Inequality(r) => write_inequality(out, r),
        ResultEntry::Integral(r) => write_integral(out, r),
        ResultEntry::Classification(c) => write_classification(out, c),
    }
}

fn write_table<W: Write>(out: &mut W, report: &RunReport) -> std::io::Result<()> {
    writeln!(out, "{}  {}", report.command, report.spec_text)?;
    let n = report.results.len();
    if n <= TABLE_ROWS {
        for r in &report.results {
            write_entry(out, r)?;
        }
    } else {
        let failed: Vec<&ResultEntry> = report.results.iter().filter(|r| !r.pass()).collect();
        writeln!(out, "{} instances, {} passed, {} failed", n, n - failed.len(), failed.len())?;
        let worst = report
            .results
            .iter()
            .min_by(|x, y| x.margin().total_cmp(&y.margin()))
            .expect("non-empty");
        writeln!(out, "smallest margin:")?;
        write_entry(out, worst)?;
        for r in failed.iter().take(TABLE_ROWS) {
            if !std::ptr::eq(*r, worst) {
                write_entry(out, r)?;
            }
        }
    }
    writeln!(out, "overall {}", verdict(report.overall_pass))
}
