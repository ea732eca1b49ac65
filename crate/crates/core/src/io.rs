//! Text and image formats used by the command-line tool.
//!
//! Signals are one `re,im` pair per line. Transform outputs are split into `<prefix>_re.csv`
//! and `<prefix>_im.csv` (N rows of R comma-separated values) plus `<prefix>_orders.csv`
//! (one row of R orders). Values are written with 17 significant digits, so every `f64`
//! survives a write/parse round trip; integral values are written without a fraction.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::foundation::{ComplexMatrix, ComplexSignal};
use crate::multiangle::MultiangleResult;

/// Lossless decimal rendering of a finite `f64`.
pub fn format_value(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

fn parse_value(field: &str, line: usize) -> Result<f64> {
    let field = field.trim();
    let v: f64 = field.parse().map_err(|_| Error::Parse { line, message: format!("invalid number '{field}'") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, message: format!("non-finite value '{field}'") });
    }
    Ok(v)
}

pub fn write_signal<W: Write>(x: &ComplexSignal, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for z in x.as_slice() {
        writeln!(out, "{},{}", format_value(z.re), format_value(z.im))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_signal<R: Read>(input: R) -> Result<ComplexSignal> {
    let mut samples = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 2 {
            return Err(Error::Parse { line: line_no, message: format!("expected 're,im', got '{trimmed}'") });
        }
        samples.push(Complex64::new(parse_value(fields[0], line_no)?, parse_value(fields[1], line_no)?));
    }
    if samples.is_empty() {
        return Err(Error::Parse { line: 0, message: "no samples".into() });
    }
    ComplexSignal::new(samples)
}

pub fn write_signal_file(x: &ComplexSignal, path: &Path) -> Result<()> {
    write_signal(x, File::create(path)?)
}

pub fn read_signal_file(path: &Path) -> Result<ComplexSignal> {
    read_signal(File::open(path)?)
}

fn write_rows<W: Write>(out: W, rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut out = BufWriter::new(out);
    for row in rows {
        let line: Vec<String> = row.into_iter().map(format_value).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn read_rows<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row = trimmed.split(',').map(|f| parse_value(f, i + 1)).collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first().map(|r: &Vec<f64>| r.len()) {
            if row.len() != first {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {first} columns, got {}", row.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Paths `<prefix>_re.csv`, `<prefix>_im.csv`, `<prefix>_orders.csv`.
pub fn output_paths(prefix: &Path) -> [PathBuf; 3] {
    let base = prefix.as_os_str().to_owned();
    ["_re.csv", "_im.csv", "_orders.csv"].map(|suffix| {
        let mut s = base.clone();
        s.push(suffix);
        PathBuf::from(s)
    })
}

pub fn write_result(result: &MultiangleResult, prefix: &Path) -> Result<()> {
    let [re_path, im_path, orders_path] = output_paths(prefix);
    let x = &result.x;
    write_rows(File::create(re_path)?, (0..x.rows()).map(|r| x.row(r).iter().map(|z| z.re).collect()))?;
    write_rows(File::create(im_path)?, (0..x.rows()).map(|r| x.row(r).iter().map(|z| z.im).collect()))?;
    write_rows(File::create(orders_path)?, std::iter::once(result.orders.clone()))?;
    Ok(())
}

/// Reads the `_re`/`_im` pair back into a complex matrix.
pub fn read_result_matrix(prefix: &Path) -> Result<ComplexMatrix> {
    let [re_path, im_path, _] = output_paths(prefix);
    let re = read_rows(File::open(&re_path)?)?;
    let im = read_rows(File::open(&im_path)?)?;
    if re.is_empty() {
        return Err(Error::Parse { line: 0, message: format!("{} is empty", re_path.display()) });
    }
    let rows = re.len();
    let cols = re[0].len();
    if im.len() != rows || im.first().map_or(0, |r| r.len()) != cols {
        return Err(Error::Parse { line: 0, message: "real and imaginary parts differ in shape".into() });
    }
    let data = re.iter().flatten().zip(im.iter().flatten()).map(|(&a, &b)| Complex64::new(a, b)).collect();
    ComplexMatrix::from_row_major(rows, cols, data)
}

pub fn read_orders(prefix: &Path) -> Result<Vec<f64>> {
    let [_, _, orders_path] = output_paths(prefix);
    let rows = read_rows(File::open(orders_path)?)?;
    match rows.as_slice() {
        [row] => Ok(row.clone()),
        _ => Err(Error::Parse { line: 0, message: "orders file must contain exactly one row".into() }),
    }
}

/// Binary PGM (P5) of `|X|`, width = columns, height = rows, scaled so the peak is 255.
pub fn write_pgm<W: Write>(x: &ComplexMatrix, out: W) -> Result<()> {
    let peak = x.max_abs();
    if peak == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let mut out = BufWriter::new(out);
    write!(out, "P5\n{} {}\n255\n", x.cols(), x.rows())?;
    let pixels: Vec<u8> = x.as_slice().iter().map(|z| (255.0 * z.norm() / peak).round().clamp(0.0, 255.0) as u8).collect();
    out.write_all(&pixels)?;
    out.flush()?;
    Ok(())
}
