//! Matrix Market coordinate I/O.
//!
//! Only `matrix coordinate real {symmetric|general}` is supported. Symmetric
//! files hold one triangle and are expanded on load; writers always emit the
//! lower triangle in symmetric form.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{DiagonalMatrix, SparseSymMatrix, TripletMode};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<SparseSymMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(Error::parse(1, format!("bad banner: {header}")));
    }
    if fields[2] != "coordinate" || fields[3] != "real" {
        return Err(Error::parse(
            1,
            format!("unsupported format {} {}", fields[2], fields[3]),
        ));
    }
    let mode = match fields[4].as_str() {
        "symmetric" => TripletMode::Symmetrize,
        "general" => TripletMode::Strict,
        other => return Err(Error::parse(1, format!("unsupported symmetry {other}"))),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut triplets = Vec::new();
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match size {
            None => {
                if tok.len() != 3 {
                    return Err(Error::parse(lineno, "expected `rows cols entries`"));
                }
                let rows = parse_usize(tok[0], lineno)?;
                let cols = parse_usize(tok[1], lineno)?;
                let nnz = parse_usize(tok[2], lineno)?;
                if rows != cols {
                    return Err(Error::parse(lineno, format!("matrix is {rows}x{cols}, not square")));
                }
                size = Some((rows, nnz));
                triplets.reserve(nnz);
            }
            Some((n, _)) => {
                if tok.len() != 3 {
                    return Err(Error::parse(lineno, "expected `row col value`"));
                }
                let i = parse_usize(tok[0], lineno)?;
                let j = parse_usize(tok[1], lineno)?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::parse(lineno, format!("index ({i}, {j}) out of range")));
                }
                let v: f64 = tok[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad value {}", tok[2])))?;
                if mode == TripletMode::Symmetrize && j > i {
                    return Err(Error::parse(lineno, "symmetric file entry above the diagonal"));
                }
                triplets.push((i - 1, j - 1, v));
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| Error::parse(1, "missing size line"))?;
    if triplets.len() != nnz {
        return Err(Error::parse(
            0,
            format!("expected {nnz} entries, found {}", triplets.len()),
        ));
    }
    SparseSymMatrix::from_triplets(n, &triplets, mode)
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {s}")))
}

pub fn read(path: &Path) -> Result<SparseSymMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text)
}

pub fn to_string(m: &SparseSymMatrix) -> String {
    let lower: Vec<_> = m.iter().filter(|&(i, j, _)| i >= j).collect();
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    out.push_str(&format!("{} {} {}\n", m.n(), m.n(), lower.len()));
    for (i, j, v) in lower {
        out.push_str(&format!("{} {} {:e}\n", i + 1, j + 1, v));
    }
    out
}

pub fn write(path: &Path, m: &SparseSymMatrix) -> Result<()> {
    write_text(path, &to_string(m))
}

/// Writes a diagonal matrix as a symmetric coordinate file.
pub fn write_diagonal(path: &Path, d: &DiagonalMatrix) -> Result<()> {
    let n = d.n();
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    out.push_str(&format!("{n} {n} {n}\n"));
    for (i, v) in d.entries().iter().enumerate() {
        out.push_str(&format!("{} {} {:e}\n", i + 1, i + 1, v));
    }
    write_text(path, &out)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}
