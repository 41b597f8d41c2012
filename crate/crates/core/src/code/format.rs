//! Text formats for parity-check matrices.
//!
//! * dense: `rows cols` header, then one line of space-separated bits per row.
//!   Lines starting with `#` are comments.
//! * alist (MacKay): `N M`, max column/row weights, per-column weights,
//!   per-row weights, then 1-based row indices per column and 1-based column
//!   indices per row, zero-padded.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixFormat {
    #[default]
    Dense,
    Alist,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dense" => Ok(MatrixFormat::Dense),
            "alist" => Ok(MatrixFormat::Alist),
            other => Err(Error::InvalidArgument(format!("unknown matrix format '{other}'"))),
        }
    }
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<BitMatrix> {
    match format {
        MatrixFormat::Dense => parse_dense(text),
        MatrixFormat::Alist => parse_alist(text),
    }
}

pub fn write_matrix(m: &BitMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Dense => write_dense(m),
        MatrixFormat::Alist => write_alist(m),
    }
}

/// Numbered (1-based) lines with content, skipping blanks and `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, l))
    })
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, col, format!("expected a non-negative integer, found '{tok}'")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    want: usize,
    what: &str,
    last_line: usize,
) -> Result<(usize, Vec<usize>)> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, 1, format!("missing {what}")))?;
    let toks = tokens(line);
    if toks.len() != want {
        return Err(Error::parse(
            ln,
            1,
            format!("{what}: expected {want} values, found {}", toks.len()),
        ));
    }
    let vals = toks.into_iter().map(|t| number(ln, t)).collect::<Result<Vec<_>>>()?;
    Ok((ln, vals))
}

fn parse_dense(text: &str) -> Result<BitMatrix> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (_, dims) = header(&mut lines, 2, "'rows cols' header", last)?;
    let (rows, cols) = (dims[0], dims[1]);
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last, 1, format!("expected {rows} rows, found {r}")))?;
        let toks = tokens(line);
        if toks.len() != cols {
            return Err(Error::parse(
                ln,
                1,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for (c, (col, tok)) in toks.into_iter().enumerate() {
            match tok {
                "0" => {}
                "1" => m.set(r, c, true),
                _ => return Err(Error::parse(ln, col, format!("expected 0 or 1, found '{tok}'"))),
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, 1, "trailing content after last row"));
    }
    Ok(m)
}

fn write_dense(m: &BitMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    s.push_str(&m.to_string());
    s
}

fn parse_index_lists<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    weights: &[usize],
    bound: usize,
    what: &str,
    last: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last, 1, format!("missing {what} list {}", i + 1)))?;
        let mut idx = Vec::new();
        for t in tokens(line) {
            let v = number(ln, t)?;
            if v == 0 {
                continue;
            }
            if v > bound {
                return Err(Error::parse(ln, t.0, format!("index {v} exceeds {bound}")));
            }
            idx.push(v - 1);
        }
        if idx.len() != w {
            return Err(Error::parse(
                ln,
                1,
                format!("{what} {} lists {} entries but its weight is {w}", i + 1, idx.len()),
            ));
        }
        out.push(idx);
    }
    Ok(out)
}

fn parse_alist(text: &str) -> Result<BitMatrix> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (_, dims) = header(&mut lines, 2, "'N M' header", last)?;
    let (n, m) = (dims[0], dims[1]);
    let (_, _max) = header(&mut lines, 2, "maximum weights", last)?;
    let (_, col_w) = header(&mut lines, n, "column weights", last)?;
    let (_, row_w) = header(&mut lines, m, "row weights", last)?;
    let col_lists = parse_index_lists(&mut lines, &col_w, m, "column", last)?;
    let row_lists = parse_index_lists(&mut lines, &row_w, n, "row", last)?;

    let mut mat = BitMatrix::zeros(m, n);
    for (r, list) in row_lists.iter().enumerate() {
        for &c in list {
            mat.set(r, c, true);
        }
    }
    let mut check = BitMatrix::zeros(m, n);
    for (c, list) in col_lists.iter().enumerate() {
        for &r in list {
            check.set(r, c, true);
        }
    }
    if check != mat {
        return Err(Error::parse(last, 1, "column lists disagree with row lists"));
    }
    Ok(mat)
}

fn write_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let col_w: Vec<usize> = (0..m.cols()).map(|c| t.row_weight(c)).collect();
    let row_w: Vec<usize> = (0..m.rows()).map(|r| m.row_weight(r)).collect();
    let max_c = col_w.iter().copied().max().unwrap_or(0);
    let max_r = row_w.iter().copied().max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.cols(), m.rows());
    let _ = writeln!(s, "{max_c} {max_r}");
    let _ = writeln!(s, "{}", join(&col_w));
    let _ = writeln!(s, "{}", join(&row_w));
    let padded = |supp: Vec<usize>, width: usize| {
        let mut v: Vec<usize> = supp.into_iter().map(|i| i + 1).collect();
        // Always emit at least one token so empty lists keep their line.
        v.resize(width.max(1).max(v.len()), 0);
        join(&v)
    };
    for c in 0..m.cols() {
        let _ = writeln!(s, "{}", padded(t.row_support(c), max_c));
    }
    for r in 0..m.rows() {
        let _ = writeln!(s, "{}", padded(m.row_support(r), max_r));
    }
    s
}
