//! CSV and JSON emission and parsing.
//!
//! CSV output is locale-independent (period decimal separator, `\n`-terminated
//! rows, UTF-8) and writes every float with Rust's shortest round-trip
//! formatting, so parsing a file back reproduces the original bits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{TimeGrid, Trajectory};

/// Write a trajectory as CSV with header `t,x1,...,xp`. Trajectories with
/// impulses gain a trailing `jump` indicator column: 1 on rows whose state is
/// the post-impulse right limit, 0 elsewhere.
pub fn write_trajectory_csv<W: Write>(w: &mut W, traj: &Trajectory) -> Result<()> {
    let with_jumps = !traj.jumps.is_empty();
    write!(w, "t")?;
    for i in 1..=traj.dim {
        write!(w, ",x{i}")?;
    }
    if with_jumps {
        write!(w, ",jump")?;
    }
    writeln!(w)?;
    for j in 0..traj.grid.len() {
        write!(w, "{}", traj.grid.t(j))?;
        for v in traj.state(j) {
            write!(w, ",{v}")?;
        }
        if with_jumps {
            let flag = traj.jumps.iter().any(|jm| jm.index == j) as u8;
            write!(w, ",{flag}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Parse a trajectory CSV produced by [`write_trajectory_csv`].
///
/// Returns the trajectory and the indices of rows flagged in the `jump`
/// column (empty when the column is absent). Impulse *vectors* are not part
/// of the CSV, so the returned trajectory carries no jump records — only the
/// flagged indices report where impulses occurred.
pub fn read_trajectory_csv<R: BufRead>(r: R) -> Result<(Trajectory, Vec<usize>)> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("empty CSV: missing header".into()))??;
    let cols: Vec<&str> = header.trim().split(',').collect();
    if cols.first() != Some(&"t") {
        return Err(Error::Config(format!("CSV header must start with 't', got '{header}'")));
    }
    let with_jumps = cols.last() == Some(&"jump");
    let dim = cols.len() - 1 - usize::from(with_jumps);
    if dim == 0 {
        return Err(Error::Config("CSV has no state columns".into()));
    }
    let mut ts = Vec::new();
    let mut states = Vec::new();
    let mut jump_rows = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != cols.len() {
            return Err(Error::Config(format!(
                "CSV row {} has {} fields, header has {}",
                row + 2,
                fields.len(),
                cols.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number '{s}' in CSV row {}", row + 2)))
        };
        ts.push(parse(fields[0])?);
        for f in &fields[1..=dim] {
            states.push(parse(f)?);
        }
        if with_jumps && parse(fields[dim + 1])? != 0.0 {
            jump_rows.push(row);
        }
    }
    if ts.len() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "CSV has {} data rows; at least 2 are needed",
            ts.len()
        )));
    }
    let h = ts[1] - ts[0];
    if !(h > 0.0) {
        return Err(Error::Config(format!("CSV time column is not increasing: h = {h}")));
    }
    for (j, &t) in ts.iter().enumerate() {
        let expect = ts[0] + h * j as f64;
        if (t - expect).abs() > 1e-9 * h.max(t.abs()) {
            return Err(Error::Config(format!(
                "CSV time column is not uniform at row {}: {} vs expected {}",
                j + 2,
                t,
                expect
            )));
        }
    }
    let grid = TimeGrid::new(ts[0], h, ts.len())?;
    Ok((Trajectory::new(grid, dim, states)?, jump_rows))
}

/// Write named columns of equal length as CSV.
pub fn write_columns_csv<W: Write>(w: &mut W, headers: &[&str], columns: &[&[f64]]) -> Result<()> {
    if headers.len() != columns.len() || columns.is_empty() {
        return Err(Error::Config(format!(
            "{} headers for {} columns",
            headers.len(),
            columns.len()
        )));
    }
    let rows = columns[0].len();
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::Config("CSV columns must have equal length".into()));
    }
    writeln!(w, "{}", headers.join(","))?;
    for j in 0..rows {
        for (i, col) in columns.iter().enumerate() {
            if i > 0 {
                write!(w, ",")?;
            }
            write!(w, "{}", col[j])?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Write a serializable report as pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(w: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

/// Read a whole file (or stdin for `-`) into a string.
pub fn read_input(path: &Path) -> Result<String> {
    let mut buf = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut buf)?;
    } else {
        File::open(path)?.read_to_string(&mut buf)?;
    }
    Ok(buf)
}

/// Buffered writer on the given path, or stdout when `None`.
pub fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

/// Buffered reader on the given path, or stdin for `-`.
pub fn input_reader(path: &Path) -> Result<Box<dyn BufRead>> {
    Ok(if path.as_os_str() == "-" {
        Box::new(BufReader::new(std::io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(path)?))
    })
}
