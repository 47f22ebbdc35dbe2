use std::io::{self, Write};

use ceresa_core::ceresa::{fixed, CeresaResult};

/// One table row: a result, or the error that prevented it.
pub type Row = (u32, u32, Result<CeresaResult, String>);

fn err_text(e: f64) -> String {
    format!("{e:.3e}")
}

pub fn csv_rows(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "frac", "err", "verdict"])?;
    for (n, k, r) in rows {
        match r {
            Ok(r) => w.write_record([
                n.to_string(),
                k.to_string(),
                fixed(&r.frac, r.digits as usize),
                err_text(r.err),
                r.verdict.to_string(),
            ])?,
            Err(e) => w.write_record([n.to_string(), k.to_string(), String::new(), String::new(), format!("error: {e}")])?,
        }
    }
    w.flush()
}

pub fn json_rows(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    let vals: Vec<serde_json::Value> = rows
        .iter()
        .map(|(n, k, r)| match r {
            Ok(r) => serde_json::to_value(r).expect("result serializes"),
            Err(e) => serde_json::json!({ "n": n, "k": k, "error": e }),
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &vals)?;
    writeln!(out)
}

/// `N | fractional part` with six significant digits, as in the printed table.
pub fn text_rows(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    let k = rows.first().map(|r| r.1).unwrap_or(1);
    writeln!(out, "{:>4} | frac f(N,{k})", "N")?;
    writeln!(out, "-----+-------------")?;
    for (n, _, r) in rows {
        match r {
            Ok(r) => writeln!(out, "{n:>4} | {}", r.frac_short())?,
            Err(e) => writeln!(out, "{n:>4} | error: {e}")?,
        }
    }
    Ok(())
}

pub fn rows(out: &mut dyn Write, format: crate::Format, rows: &[Row]) -> io::Result<()> {
    match format {
        crate::Format::Csv => csv_rows(out, rows),
        crate::Format::Json => json_rows(out, rows),
        crate::Format::Text => text_rows(out, rows),
    }
}

/// A single result in detail.
pub fn single(out: &mut dyn Write, format: crate::Format, label: &str, r: &CeresaResult) -> io::Result<()> {
    match format {
        crate::Format::Csv => csv_rows(out, &[(r.n, r.k, Ok(r.clone()))]),
        crate::Format::Json => {
            serde_json::to_writer_pretty(&mut *out, r)?;
            writeln!(out)
        }
        crate::Format::Text => {
            let d = r.digits as usize;
            writeln!(out, "{label} = {}", fixed(r.value.value(), d))?;
            writeln!(out, "frac = {}", fixed(&r.frac, d))?;
            writeln!(out, "err = {}", err_text(r.err))?;
            writeln!(out, "distance to nearest integer = {}", err_text(r.int_distance.to_f64()))?;
            writeln!(out, "verdict: {}", r.verdict)
        }
    }
}

pub fn json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}
