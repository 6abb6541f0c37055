//! Matrix Market reading and writing for dense point matrices.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::CMatrix;

fn bad(msg: impl Into<String>) -> Error {
    Error::MatrixMarket(msg.into())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

/// Parses `coordinate` or `array` files with `real`, `integer` or `complex`
/// fields. Symmetric, Hermitian and skew-symmetric storage is expanded.
pub fn parse_matrix_market(text: &str) -> Result<CMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let h: Vec<String> = header.split_whitespace().map(|s| s.to_ascii_lowercase()).collect();
    if h.len() != 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" {
        return Err(bad(format!("malformed header: {header}")));
    }
    let coordinate = match h[2].as_str() {
        "coordinate" => true,
        "array" => false,
        f => return Err(bad(format!("unsupported format {f}"))),
    };
    let complex = match h[3].as_str() {
        "real" | "integer" | "double" => false,
        "complex" => true,
        f => return Err(bad(format!("unsupported field {f}"))),
    };
    let sym = match h[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        s => return Err(bad(format!("unsupported symmetry {s}"))),
    };
    let mut body = lines.map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('%'));
    let size_line = body.next().ok_or_else(|| bad("missing size line"))?;
    let sizes: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("bad size line: {size_line}"))))
        .collect::<Result<_>>()?;
    let (rows, cols) = match sizes.as_slice() {
        [r, c, _] if coordinate => (*r, *c),
        [r, c] if !coordinate => (*r, *c),
        _ => return Err(bad(format!("bad size line: {size_line}"))),
    };
    if sym != Symmetry::General && rows != cols {
        return Err(bad("symmetric storage requires a square matrix"));
    }
    let num = |t: Option<&str>| -> Result<f64> {
        t.ok_or_else(|| bad("missing value"))?.parse::<f64>().map_err(|_| bad("bad value"))
    };
    let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut place = |i: usize, j: usize, v: Complex64| -> Result<()> {
        if i >= rows || j >= cols {
            return Err(bad(format!("entry ({}, {}) out of bounds", i + 1, j + 1)));
        }
        data[i * cols + j] = v;
        if i != j {
            match sym {
                Symmetry::General => {}
                Symmetry::Symmetric => data[j * cols + i] = v,
                Symmetry::Hermitian => data[j * cols + i] = v.conj(),
                Symmetry::SkewSymmetric => data[j * cols + i] = -v,
            }
        }
        Ok(())
    };
    let read_value = |it: &mut std::str::SplitWhitespace| -> Result<Complex64> {
        let re = num(it.next())?;
        let im = if complex { num(it.next())? } else { 0.0 };
        Ok(Complex64::new(re, im))
    };
    if coordinate {
        let nnz = sizes[2];
        for _ in 0..nnz {
            let line = body.next().ok_or_else(|| bad("fewer entries than declared"))?;
            let mut it = line.split_whitespace();
            let idx = |t: Option<&str>| -> Result<usize> {
                let k: usize = t.ok_or_else(|| bad("missing index"))?.parse().map_err(|_| bad("bad index"))?;
                k.checked_sub(1).ok_or_else(|| bad("indices are 1-based"))
            };
            let (i, j) = (idx(it.next())?, idx(it.next())?);
            let v = read_value(&mut it)?;
            place(i, j, v)?;
        }
    } else {
        // column-major; symmetric storage lists the lower triangle only
        for j in 0..cols {
            let start = if sym == Symmetry::General {
                0
            } else if sym == Symmetry::SkewSymmetric {
                j + 1
            } else {
                j
            };
            for i in start..rows {
                let line = body.next().ok_or_else(|| bad("fewer entries than declared"))?;
                let mut it = line.split_whitespace();
                let v = read_value(&mut it)?;
                place(i, j, v)?;
            }
        }
    }
    CMatrix::from_vec(rows, cols, data)
}

pub fn load_matrix_market(path: &Path) -> Result<CMatrix> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

/// Coordinate/general format; shortest round-trip decimals keep entries
/// bit-identical on reading back.
pub fn format_matrix_market(m: &CMatrix) -> String {
    let complex = !m.is_real();
    let mut s = String::new();
    let field = if complex { "complex" } else { "real" };
    let _ = writeln!(s, "%%MatrixMarket matrix coordinate {field} general");
    let entries: Vec<(usize, usize, Complex64)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, m[(i, j)]))
        .filter(|e| e.2 != Complex64::new(0.0, 0.0))
        .collect();
    let _ = writeln!(s, "{} {} {}", m.rows(), m.cols(), entries.len());
    for (i, j, v) in entries {
        if complex {
            let _ = writeln!(s, "{} {} {:?} {:?}", i + 1, j + 1, v.re, v.im);
        } else {
            let _ = writeln!(s, "{} {} {:?}", i + 1, j + 1, v.re);
        }
    }
    s
}

pub fn write_matrix_market(path: &Path, m: &CMatrix) -> Result<()> {
    fs::write(path, format_matrix_market(m))?;
    Ok(())
}
