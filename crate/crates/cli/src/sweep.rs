//! Parameter sweeps over `(p, α, β)` rows, optionally crossed with dimensions.

use std::fmt::Write as _;

use llab_core::critdim::{DEFAULT_REL_TOL, critical_dimension, literature_bounds};
use llab_core::fields::io::format_number;
use llab_core::params::{Exponents, classify_regime};
use llab_core::{LabError, Result};
use rayon::prelude::*;

/// One validated input row, with the 1-based line it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub line: u64,
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SweepRow {
    pub fn exponents(&self) -> Exponents {
        Exponents::new(self.p, self.alpha, self.beta).expect("validated at parse time")
    }
}

pub const HEADER: &str = "p,alpha,beta,N,regime,bracket_lo,bracket_hi,n_crit,cowan,fazly,status";

fn parse_error(line: u64, column: &str, message: impl Into<String>) -> LabError {
    LabError::Parse {
        line,
        column: column.into(),
        message: message.into(),
    }
}

/// Parse a `p,alpha,beta` CSV (header required, `#` comment lines skipped).
pub fn parse_sweep(text: &str) -> Result<Vec<SweepRow>> {
    // Comments are stripped here rather than by the reader so that every
    // record keeps the line number it had in the original text.
    let mut origin = Vec::new();
    let mut body = String::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim_start().starts_with('#') || l.trim().is_empty() {
            continue;
        }
        origin.push(i as u64 + 1);
        body.push_str(l);
        body.push('\n');
    }
    let line_of = |pos: Option<&csv::Position>| {
        pos.and_then(|p| origin.get((p.line() as usize).checked_sub(1)?).copied())
            .unwrap_or(0)
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let header_line = origin.first().copied().unwrap_or(1);
    let headers = reader
        .headers()
        .map_err(|e| parse_error(header_line, "header", e.to_string()))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| parse_error(header_line, name, "missing column"))
    };
    let idx = [column("p")?, column("alpha")?, column("beta")?];

    let mut rows = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| parse_error(line_of(e.position()), "row", e.to_string()))?;
        let line = line_of(record.position());
        let mut vals = [0.0; 3];
        for ((v, &i), name) in vals.iter_mut().zip(&idx).zip(["p", "alpha", "beta"]) {
            let raw = record.get(i).unwrap_or("");
            *v = raw
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| parse_error(line, name, format!("not a finite number: `{raw}`")))?;
        }
        let [p, alpha, beta] = vals;
        if p <= 1.0 {
            return Err(parse_error(line, "p", format!("p must exceed 1, got {p}")));
        }
        if alpha <= -4.0 {
            return Err(parse_error(
                line,
                "alpha",
                format!("alpha must exceed -4, got {alpha}"),
            ));
        }
        if beta < 0.0 {
            return Err(parse_error(
                line,
                "beta",
                format!("beta must be nonnegative, got {beta}"),
            ));
        }
        rows.push(SweepRow {
            line,
            p,
            alpha,
            beta,
        });
    }
    Ok(rows)
}

/// Free-text status with the separator removed.
fn status_text(s: &str) -> String {
    s.replace(',', ";")
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// CSV lines for one input row; the flag is set when the root solve failed.
fn evaluate(row: &SweepRow, n_values: &[f64]) -> (Vec<String>, bool) {
    let e = row.exponents();
    let head = format!(
        "{},{},{}",
        format_number(row.p),
        format_number(row.alpha),
        format_number(row.beta)
    );
    let bounds = literature_bounds(&e);
    let crit = critical_dimension(&e, DEFAULT_REL_TOL);
    let tail = |regime: &str, status: &str| match &crit {
        Ok(c) => format!(
            "{regime},{},{},{},{},{},{}",
            format_number(c.bracket_lo),
            format_number(c.bracket_hi),
            format_number(c.root),
            opt(bounds.cowan),
            opt(bounds.fazly),
            status_text(status)
        ),
        Err(err) => format!(
            "{regime},,,,{},{},{}",
            opt(bounds.cowan),
            opt(bounds.fazly),
            status_text(&format!("error: {err}"))
        ),
    };
    let status = if crit.is_ok() { "ok" } else { "" };
    let lines = if n_values.is_empty() {
        vec![format!("{head},,{}", tail("", status))]
    } else {
        n_values
            .iter()
            .map(|&n| {
                let regime = e
                    .with_dimension(n)
                    .map_err(|err| err.to_string())
                    .and_then(|q| match &crit {
                        Ok(c) => classify_regime(&q, c.root)
                            .map(|t| t.to_string())
                            .map_err(|err| err.to_string()),
                        Err(_) => Ok(String::new()),
                    });
                match regime {
                    Ok(tag) => format!("{head},{},{}", format_number(n), tail(&tag, status)),
                    Err(msg) => format!(
                        "{head},{},{}",
                        format_number(n),
                        tail("", &format!("skipped: {msg}"))
                    ),
                }
            })
            .collect()
    };
    (lines, crit.is_err())
}

/// Evaluate every row × N on `jobs` worker threads and assemble the output in
/// input order. Returns the CSV text and whether any root solve failed.
pub fn sweep_csv(
    rows: &[SweepRow],
    n_values: &[f64],
    jobs: Option<usize>,
) -> Result<(String, bool)> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| LabError::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<(Vec<String>, bool)> =
        pool.install(|| rows.par_iter().map(|r| evaluate(r, n_values)).collect());

    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    let mut failed = false;
    for (lines, f) in results {
        failed |= f;
        for l in lines {
            writeln!(out, "{l}").unwrap();
        }
    }
    Ok((out, failed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_row() {
        let rows = parse_sweep("p,alpha,beta\n3,0,0\n").unwrap();
        assert_eq!(
            rows,
            vec![SweepRow {
                line: 2,
                p: 3.0,
                alpha: 0.0,
                beta: 0.0
            }]
        );
    }

    #[test]
    fn rejects_small_p_with_line() {
        let err = parse_sweep("p,alpha,beta\n0.5,0,0\n").unwrap_err();
        assert_eq!(
            err,
            LabError::Parse {
                line: 2,
                column: "p".into(),
                message: "p must exceed 1, got 0.5".into()
            }
        );
    }

    #[test]
    fn skips_comments() {
        let rows = parse_sweep("p,alpha,beta\n3,0,0\n# comment\n5,1,2\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].line, 4);
        assert_eq!((rows[1].p, rows[1].alpha, rows[1].beta), (5.0, 1.0, 2.0));
    }

    #[test]
    fn names_the_bad_column() {
        match parse_sweep("# sweep\np,alpha,beta\n3,x,0\n").unwrap_err() {
            LabError::Parse { line, column, .. } => {
                assert_eq!((line, column.as_str()), (3, "alpha"))
            }
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_sweep("p,alpha\n3,0\n"),
            Err(LabError::Parse { .. })
        ));
        assert!(matches!(
            parse_sweep("p,alpha,beta\n3,0,-1\n"),
            Err(LabError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn sweep_rows_in_input_order() {
        let rows = parse_sweep("p,alpha,beta\n3,0,0\n2,1,1\n").unwrap();
        let (text, failed) = sweep_csv(&rows, &[12.0, 19.0], Some(2)).unwrap();
        assert!(!failed);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], HEADER);
        assert!(lines[1].starts_with("3.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,1.2000000000000000e1,Window,"));
        assert!(lines[2].contains(",AtOrAboveCritDim,"));
        assert!(lines[3].starts_with("2.0000000000000000e0,"));
        assert!(lines.iter().skip(1).all(|l| l.ends_with(",ok")));
    }

    #[test]
    fn inadmissible_dimension_is_reported_not_fatal() {
        let rows = parse_sweep("p,alpha,beta\n3,0,5\n").unwrap();
        let (text, failed) = sweep_csv(&rows, &[12.0], Some(1)).unwrap();
        assert!(!failed);
        assert!(text.lines().nth(1).unwrap().contains(",skipped: "));
    }
}
