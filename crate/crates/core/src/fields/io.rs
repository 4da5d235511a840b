//! CSV dump of a field: `r`, then `f_k, f_k_prime, f_k_second` per mode.

use std::io::{Read, Write};

use crate::error::{LabError, Result};
use crate::params::SystemParams;
use crate::quad;

use super::field::{Field, ZonalMode};
use super::grid::RadialGrid;

/// Seventeen significant digits in scientific notation; round-trips every `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(e: impl std::fmt::Display) -> LabError {
    LabError::InvalidArgument(format!("i/o: {e}"))
}

/// Write `field` with optional leading `#` comment lines.
pub fn write_field_csv<W: Write>(field: &Field, comments: &[String], mut out: W) -> Result<()> {
    for c in comments {
        writeln!(out, "# {c}").map_err(io_err)?;
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["r".to_string()];
    for m in field.modes() {
        let k = m.degree();
        header.extend([
            format!("f_{k}"),
            format!("f_{k}_prime"),
            format!("f_{k}_second"),
        ]);
    }
    w.write_record(&header).map_err(io_err)?;
    for (i, r) in field.grid().radii().iter().enumerate() {
        let mut row = vec![format_number(*r)];
        for m in field.modes() {
            row.extend((0..3).map(|j| format_number(m.derivative(j)[i])));
        }
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(())
}

/// Read a dump back. Third and fourth derivatives are recovered by
/// differencing, so the result reports non-analytic derivatives.
pub fn read_field_csv<R: Read>(params: &SystemParams, input: R) -> Result<Field> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = rdr.headers().map_err(io_err)?.clone();
    if header.get(0) != Some("r") || (header.len() - 1) % 3 != 0 {
        return Err(LabError::Parse {
            line: 1,
            column: header.get(0).unwrap_or("").to_string(),
            message: "expected `r` followed by three columns per mode".into(),
        });
    }
    let mut degrees = Vec::new();
    for chunk in 0..(header.len() - 1) / 3 {
        let name = &header[1 + 3 * chunk];
        let k = name
            .strip_prefix("f_")
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| LabError::Parse {
                line: 1,
                column: name.to_string(),
                message: "mode column must be named f_<degree>".into(),
            })?;
        degrees.push(k);
    }
    let mut radii = Vec::new();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); header.len() - 1];
    for rec in rdr.records() {
        let rec = rec.map_err(io_err)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let parse = |c: usize| -> Result<f64> {
            rec.get(c)
                .ok_or_else(|| LabError::Parse {
                    line,
                    column: header[c].to_string(),
                    message: "missing value".into(),
                })?
                .parse::<f64>()
                .map_err(|e| LabError::Parse {
                    line,
                    column: header[c].to_string(),
                    message: e.to_string(),
                })
        };
        radii.push(parse(0)?);
        for (c, col) in cols.iter_mut().enumerate() {
            col.push(parse(c + 1)?);
        }
    }
    let grid = RadialGrid::from_radii(radii)?;
    let mut cols = cols.into_iter();
    let mut modes = Vec::with_capacity(degrees.len());
    for k in degrees {
        let f = cols.next().unwrap();
        let f1 = cols.next().unwrap();
        let f2 = cols.next().unwrap();
        let f3 = quad::derivative_all(&grid, &f2)?;
        let f4 = quad::derivative_all(&grid, &f3)?;
        modes.push(ZonalMode::new(params.n(), k, [f, f1, f2, f3, f4]));
    }
    Field::new(*params, grid, modes, false)
}
