use std::io::{self, Write};

use ceresa_core::ceresa::{f_value, klein_value, multiples_scan, nonintegrality_check, table1, Verdict};
use ceresa_core::error::Error;
use ceresa_core::fermat::FermatCurve;
use ceresa_core::selftest::{delta_quadrature_checks, dixon_trials, random_quadruples};
use ceresa_core::specfun::QuadratureSpec;

use crate::output::{self, Row};
use crate::{Command, Common, Format, Status};

/// Agreement required between closed form and quadrature.
const QUADRATURE_TOLERANCE: f64 = 1e-8;

fn from_core(e: Error) -> Status {
    match e {
        Error::InvalidModulus(_)
        | Error::KOutOfRange { .. }
        | Error::NotInIndexSet { .. }
        | Error::Precondition(_)
        | Error::InsufficientPrecision(_) => Status::Usage(e.to_string()),
        other => Status::Failed(other.to_string()),
    }
}

fn from_io(e: io::Error) -> Status {
    Status::Failed(format!("write failed: {e}"))
}

fn need_curve(n: u32) -> Result<(), Status> {
    FermatCurve::new(n).map(|_| ()).map_err(from_core)
}

pub fn dispatch(cmd: &Command, common: &Common, out: &mut dyn Write) -> Status {
    match run(cmd, common, out) {
        Ok(s) | Err(s) => s,
    }
}

fn run(cmd: &Command, c: &Common, out: &mut dyn Write) -> Result<Status, Status> {
    let fmt = c.format;
    match *cmd {
        Command::Table { n_max, k } => {
            if n_max <= 4 {
                return Err(Status::Usage(format!("--n-max must exceed 4, got {n_max}")));
            }
            let rows: Vec<Row> =
                table1(4..n_max, k, c.digits).into_iter().map(|(n, r)| (n, k, r.map_err(|e| e.to_string()))).collect();
            if let Some((n, _, Err(e))) = rows.iter().find(|r| r.2.is_err()) {
                // a k beyond the genus bound is a usage error for every row
                if n_max <= 5 || rows.iter().all(|r| r.2.is_err()) {
                    return Err(Status::Usage(format!("N = {n}: {e}")));
                }
            }
            output::rows(out, fmt, &rows).map_err(from_io)?;
            Ok(match rows.iter().find(|r| r.2.is_err()) {
                Some((n, _, Err(e))) => Status::Failed(format!("row N = {n} failed: {e}")),
                _ => Status::Ok,
            })
        }
        Command::Value { n, k } => {
            need_curve(n)?;
            let r = f_value(n, k, c.digits).map_err(from_core)?;
            output::single(out, fmt, &format!("f({n},{k})"), &r).map_err(from_io)?;
            Ok(Status::Ok)
        }
        Command::Check { n, k } => {
            need_curve(n)?;
            let o = nonintegrality_check(n, k, c.digits).map_err(from_core)?;
            output::single(out, fmt, &format!("f({n},{k})"), &o.result).map_err(from_io)?;
            if let Some(d) = o.retry_digits {
                eprintln!("inconclusive at {} digits; retry with --digits {d}", c.digits);
            }
            Ok(match o.result.verdict {
                Verdict::NonIntegral => Status::Ok,
                Verdict::Inconclusive => Status::Inconclusive,
            })
        }
        Command::Scan { n, k, m_max } => {
            need_curve(n)?;
            let r = multiples_scan(n, k, m_max, c.digits).map_err(from_core)?;
            let first = r.first_inconclusive.map(|m| m.to_string()).unwrap_or_default();
            let verdict = if r.complete() { "non-integral" } else { "inconclusive" };
            match fmt {
                Format::Json => output::json(out, &r),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["n", "k", "m_max", "verified_up_to", "first_inconclusive", "verdict"])
                        .and_then(|_| {
                            w.write_record([
                                n.to_string(),
                                k.to_string(),
                                m_max.to_string(),
                                r.verified_up_to.to_string(),
                                first,
                                verdict.into(),
                            ])
                        })
                        .map_err(io::Error::from)
                        .and_then(|_| w.flush())
                }
                Format::Text => {
                    writeln!(out, "m f({n},{k}) for 1 <= m <= {m_max}: non-integral up to m = {}", r.verified_up_to).and_then(
                        |_| match r.first_inconclusive {
                            Some(m) => writeln!(out, "first inconclusive multiple: m = {m}"),
                            None => writeln!(out, "verdict: {verdict}"),
                        },
                    )
                }
            }
            .map_err(from_io)?;
            Ok(if r.complete() { Status::Ok } else { Status::Inconclusive })
        }
        Command::Klein { k } => {
            let r = klein_value(k, c.digits).map_err(from_core)?;
            output::single(out, fmt, &format!("Klein quartic value, k = {k}"), &r).map_err(from_io)?;
            Ok(Status::Ok)
        }
        Command::DixonTest { count, seed } => {
            let quads = random_quadruples(count, seed);
            let trials = dixon_trials(&quads, c.digits).map_err(from_core)?;
            let failed = trials.iter().filter(|t| !t.passed()).count();
            match fmt {
                Format::Json => output::json(out, &trials),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    let mut res = w.write_record(["a1", "b1", "a2", "b2", "evaluated", "spread", "status"]);
                    for t in &trials {
                        res = res.and_then(|_| {
                            w.write_record([
                                t.params[0].clone(),
                                t.params[1].clone(),
                                t.params[2].clone(),
                                t.params[3].clone(),
                                t.evaluated.to_string(),
                                format!("{:.3e}", t.spread),
                                if t.passed() { "agree".into() } else { "disagree".into() },
                            ])
                        });
                    }
                    res.map_err(io::Error::from).and_then(|_| w.flush())
                }
                Format::Text => (|| {
                    for t in &trials {
                        let status = match t.disagreement {
                            None if t.evaluated > 0 => "agree".to_string(),
                            None => "no convergent member".to_string(),
                            Some((i, j)) => format!("members {i} and {j} disagree"),
                        };
                        writeln!(
                            out,
                            "({}, {}, {}, {}): {} members, spread {:.3e}, {status}",
                            t.params[0], t.params[1], t.params[2], t.params[3], t.evaluated, t.spread
                        )?;
                    }
                    writeln!(out, "{} of {} quadruples agree", trials.len() - failed, trials.len())
                })(),
            }
            .map_err(from_io)?;
            Ok(if failed == 0 { Status::Ok } else { Status::Failed(format!("{failed} quadruples disagree")) })
        }
        Command::OracleTest { n } => {
            let curve = FermatCurve::new(n).map_err(from_core)?;
            let checks = delta_quadrature_checks(curve, &QuadratureSpec::default()).map_err(from_core)?;
            let bad = checks.iter().filter(|x| !(x.difference < QUADRATURE_TOLERANCE)).count();
            let worst = checks.iter().map(|x| x.difference).fold(0.0, f64::max);
            match fmt {
                Format::Json => output::json(out, &checks),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    let mut res = w.write_record(["a1", "b1", "a2", "b2", "closed_form", "quadrature", "difference"]);
                    for x in &checks {
                        res = res.and_then(|_| {
                            w.write_record([
                                x.first.0.to_string(),
                                x.first.1.to_string(),
                                x.second.0.to_string(),
                                x.second.1.to_string(),
                                format!("{:.15e}", x.closed_form),
                                format!("{:.15e}", x.quadrature),
                                format!("{:.3e}", x.difference),
                            ])
                        });
                    }
                    res.map_err(io::Error::from).and_then(|_| w.flush())
                }
                Format::Text => writeln!(
                    out,
                    "N = {n}: {} index pairs, largest difference {worst:.3e}, {bad} above {QUADRATURE_TOLERANCE:e}",
                    checks.len()
                ),
            }
            .map_err(from_io)?;
            Ok(if bad == 0 { Status::Ok } else { Status::Failed(format!("{bad} pairs disagree with quadrature")) })
        }
    }
}
