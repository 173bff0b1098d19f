//! Plain-text bit-matrix format: a `rows cols` header line, then one line of
//! `0`/`1` characters per row.

use std::io::{self, Write};

use super::matrix::F2Matrix;
use crate::error::{Error, Result};

pub fn write_matrix_text<W: Write>(m: &F2Matrix, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    let mut line = vec![b'0'; m.cols() + 1];
    line[m.cols()] = b'\n';
    for i in 0..m.rows() {
        for (j, c) in line[..m.cols()].iter_mut().enumerate() {
            *c = if m.get(i, j) { b'1' } else { b'0' };
        }
        w.write_all(&line)?;
    }
    Ok(())
}

pub fn matrix_to_text(m: &F2Matrix) -> String {
    let mut buf = Vec::with_capacity(m.rows() * (m.cols() + 1) + 16);
    write_matrix_text(m, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("format is ASCII")
}

pub fn parse_matrix_text(s: &str) -> Result<F2Matrix> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!("header must be \"rows cols\", got {header:?}")));
    };
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("dimensions must be positive".into()));
    }
    let mut m = F2Matrix::zeros(rows, cols);
    let mut seen = 0;
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if i >= rows {
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        if line.len() != cols {
            return Err(Error::Parse(format!("row {i} has {} columns, expected {cols}", line.len())));
        }
        for (j, c) in line.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => m.set(i, j, true),
                _ => return Err(Error::Parse(format!("row {i}: unexpected {:?}", c as char))),
            }
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse(format!("expected {rows} rows, got {seen}")));
    }
    Ok(m)
}
