//! Human-readable and CSV renderings of a report.

use std::fmt::Write as _;

use crate::{Outcome, Report};

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn human(report: &Report, top: usize) -> String {
    let mut s = String::new();
    match &report.result {
        Outcome::Check(c) => {
            let _ = writeln!(s, "N = {} = {}, f(x) = {}x + {}x^2", c.n, c.factorization, c.f1, c.f2);
            if c.valid {
                let _ = writeln!(s, "valid permutation polynomial");
                let _ = writeln!(s, "irreducible:      {}", opt(&c.irreducible));
                let _ = writeln!(s, "inverse degree:   {}", opt(&c.inverse_degree));
                let _ = writeln!(s, "inverse count:    {}", opt(&c.inverse_count));
                let _ = writeln!(s, "quasi-cyclic period: {}", opt(&c.qc_period));
            } else {
                let _ = writeln!(s, "invalid: {}", opt(&c.reason));
            }
        }
        Outcome::Inverse(r) => {
            let _ = writeln!(s, "f(x) = {}x + {}x^2 (mod {})", r.f1, r.f2, r.n);
            let _ = writeln!(s, "least inverse degree {} ({} inverses)", r.degree, r.inverse_count);
            let _ = writeln!(s, "g(x) = {}", r.inverse_text);
            for floors in &r.f2_exponent_floors {
                let parts: Vec<String> = floors.exponents.iter().map(|(p, e)| format!("n_{p} >= {e}")).collect();
                let _ = writeln!(s, "degree <= {} needs f2 exponents {}", floors.degree, parts.join(", "));
            }
            if let Some(v) = r.verified {
                let _ = writeln!(s, "supplied inverse: {}", if v { "verified" } else { "NOT an inverse" });
            }
        }
        Outcome::Bounds(b) => {
            let _ = writeln!(s, "N = {}, nu = {}, inverse class {}", b.modulus, b.nu, b.inverse_class);
            for e in &b.entries {
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    s,
                    "  {:<16} {:<14} {:>5}  {}",
                    e.id.to_string(),
                    if e.applicable { "applies" } else { "n/a" },
                    opt(&e.bound),
                    params.join(" ")
                );
            }
            let _ = writeln!(s, "combined bound: {}", opt(&b.combined_bound));
        }
        Outcome::Dmin(d) => {
            let _ = writeln!(
                s,
                "N = {}, {}x + {}x^2, nu = {}, {:?} termination, {:?}",
                d.n, d.f1, d.f2, d.nu, d.mode, d.method
            );
            match &d.result {
                Some(r) => {
                    let _ = writeln!(s, "dmin {} multiplicity {} (exact: {})", opt(&r.dmin), r.multiplicity, r.exact);
                    for w in &r.witnesses {
                        let _ = writeln!(s, "  witness inputs {w:?}");
                    }
                }
                None => {
                    let _ = writeln!(s, "budget exhausted; best upper bound {}", opt(&d.best_upper));
                }
            }
        }
        Outcome::Search(r) => {
            let _ = writeln!(
                s,
                "N = {}, {} candidates ({}irreducible only, class {}), {} exact evaluations, class bound {}",
                r.n,
                r.candidates,
                if r.irreducible_only { "" } else { "not " },
                r.inverse_class,
                r.exact_evaluations,
                opt(&r.class_bound.combined_bound)
            );
            let _ = writeln!(s, "linear permutation polynomials are not searched");
            let _ = writeln!(s, "{:>8} {:>8} {:>5} {:>6} {:>10} {:>6}  verdict", "f1", "f2", "L", "dmin", "mult", "bound");
            for e in r.entries.iter().take(top) {
                let _ = writeln!(
                    s,
                    "{:>8} {:>8} {:>5} {:>6} {:>10} {:>6}  {:?}",
                    e.qpp.f1(),
                    e.qpp.f2(),
                    e.inverse_degree,
                    opt(&e.result.dmin),
                    e.result.multiplicity,
                    opt(&e.bound.combined_bound),
                    e.verdict
                );
            }
        }
        Outcome::Regress(r) => {
            let _ = writeln!(s, "dataset version {} ({})", r.dataset_version, r.dataset_sha256);
            for row in &r.rows {
                let e = &row.expected;
                let _ = writeln!(
                    s,
                    "{:>6} {:>5} {:>5}  {:?}: got {}/{} expected {}/{}  {}",
                    e.n,
                    e.f1,
                    e.f2,
                    row.method,
                    opt(&row.dmin),
                    row.multiplicity,
                    e.dmin,
                    e.multiplicity,
                    if row.pass { "pass" } else { "FAIL" }
                );
            }
            let _ = writeln!(s, "{} passed, {} failed", r.passed(), r.failed());
        }
        Outcome::LteTable(t) => {
            let _ = writeln!(s, "version {} ({}), {} rows", t.version, t.sha256, t.rows.len());
            for r in &t.rows {
                let _ = writeln!(s, "{:>6} {:>5} {:>5} {:>4} {:>7}", r.n, r.f1, r.f2, r.dmin, r.multiplicity);
            }
        }
    }
    s
}

pub fn csv(report: &Report) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let b = |v: bool| v.to_string();
    match &report.result {
        Outcome::Check(c) => {
            w.write_record(["N", "f1", "f2", "valid", "irreducible", "inverse_degree", "qc_period"])?;
            w.write_record([
                c.n.to_string(),
                c.f1.to_string(),
                c.f2.to_string(),
                b(c.valid),
                opt(&c.irreducible),
                opt(&c.inverse_degree),
                opt(&c.qc_period),
            ])?;
        }
        Outcome::Inverse(r) => {
            w.write_record(["N", "f1", "f2", "degree", "inverse"])?;
            let g: Vec<String> = r.inverse.iter().map(u64::to_string).collect();
            w.write_record([r.n.to_string(), r.f1.to_string(), r.f2.to_string(), r.degree.to_string(), g.join(" ")])?;
        }
        Outcome::Bounds(r) => {
            w.write_record(["N", "nu", "class", "bound_id", "applicable", "bound"])?;
            for e in &r.entries {
                w.write_record([
                    r.modulus.to_string(),
                    r.nu.to_string(),
                    r.inverse_class.to_string(),
                    e.id.to_string(),
                    b(e.applicable),
                    opt(&e.bound),
                ])?;
            }
        }
        Outcome::Dmin(d) => {
            w.write_record(["N", "f1", "f2", "dmin", "multiplicity", "exact"])?;
            let (dmin, mult, exact) = match &d.result {
                Some(r) => (opt(&r.dmin), r.multiplicity.to_string(), b(r.exact)),
                None => (opt(&d.best_upper), "-".to_string(), b(false)),
            };
            w.write_record([d.n.to_string(), d.f1.to_string(), d.f2.to_string(), dmin, mult, exact])?;
        }
        Outcome::Search(r) => {
            w.write_record(["N", "f1", "f2", "dmin", "multiplicity", "exact", "bound"])?;
            for e in &r.entries {
                w.write_record([
                    r.n.to_string(),
                    e.qpp.f1().to_string(),
                    e.qpp.f2().to_string(),
                    opt(&e.result.dmin),
                    e.result.multiplicity.to_string(),
                    b(e.result.exact),
                    opt(&e.bound.combined_bound),
                ])?;
            }
        }
        Outcome::Regress(r) => {
            w.write_record([
                "N",
                "f1",
                "f2",
                "dmin",
                "multiplicity",
                "exact",
                "expected_dmin",
                "expected_multiplicity",
                "pass",
            ])?;
            for row in &r.rows {
                let e = &row.expected;
                w.write_record([
                    e.n.to_string(),
                    e.f1.to_string(),
                    e.f2.to_string(),
                    opt(&row.dmin),
                    row.multiplicity.to_string(),
                    b(row.method == qpp_core::dataset::Method::Exact),
                    e.dmin.to_string(),
                    e.multiplicity.to_string(),
                    b(row.pass),
                ])?;
            }
        }
        Outcome::LteTable(t) => {
            w.write_record(["N", "f1", "f2", "dmin", "multiplicity"])?;
            for r in &t.rows {
                w.write_record([
                    r.n.to_string(),
                    r.f1.to_string(),
                    r.f2.to_string(),
                    r.dmin.to_string(),
                    r.multiplicity.to_string(),
                ])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
