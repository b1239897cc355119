//! Plain-text formats for graphs, matrices and signals.
//!
//! Graph:
//! ```text
//! n <num_vertices>
//! coords            # optional, followed by n lines `x y`
//! 0.12 0.98
//! ...
//! <u> <v> <w>       # one line per edge, 0-based
//! ```
//!
//! Matrix: a `<rows> <cols>` header, then one row per line.
//! Signal: an `n <len>` header, then one value per line.
//!
//! Blank lines and `#` comments are ignored. Floats are written in Rust's
//! shortest round-trip representation, so reading back is exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(extra) => Err(parse_err(line, format!("unexpected token `{extra}`"))),
        None => Ok(()),
    }
}

fn length_header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<usize> {
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("n") {
        return Err(parse_err(no, "expected header `n <count>`"));
    }
    let n = field(no, toks.next(), "count")?;
    expect_end(no, toks)?;
    Ok(n)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.num_vertices());
    if let Some(coords) = g.coords() {
        out.push_str("coords\n");
        for [x, y] in coords {
            let _ = writeln!(out, "{x} {y}");
        }
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).peekable();
    let n: usize = length_header(&mut lines)?;

    let mut coords = None;
    if let Some(&(_, "coords")) = lines.peek() {
        let (start, _) = lines.next().unwrap();
        let mut pts = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, line) = lines
                .next()
                .ok_or_else(|| parse_err(start, format!("coords block needs {n} lines")))?;
            let mut toks = line.split_whitespace();
            let x = field(no, toks.next(), "x coordinate")?;
            let y = field(no, toks.next(), "y coordinate")?;
            expect_end(no, toks)?;
            pts.push([x, y]);
        }
        coords = Some(pts);
    }

    let mut edges = Vec::new();
    for (no, line) in lines {
        let mut toks = line.split_whitespace();
        let u = field(no, toks.next(), "vertex u")?;
        let v = field(no, toks.next(), "vertex v")?;
        let weight = field(no, toks.next(), "weight")?;
        expect_end(no, toks)?;
        edges.push(Edge { u, v, weight });
    }
    Graph::new(n, edges, coords)
}

pub fn write_matrix(m: &DMatrix<f64>) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<DMatrix<f64>> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    let rows: usize = field(no, toks.next(), "row count")?;
    let cols: usize = field(no, toks.next(), "column count")?;
    expect_end(no, toks)?;

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (no, line) in lines {
        seen += 1;
        if seen > rows {
            return Err(parse_err(no, format!("more than {rows} rows")));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(field::<f64>(no, Some(tok), "entry")?);
        }
        if data.len() - before != cols {
            return Err(parse_err(no, format!("expected {cols} entries")));
        }
    }
    if seen != rows {
        return Err(parse_err(no, format!("expected {rows} rows, found {seen}")));
    }
    Ok(DMatrix::from_row_slice(rows, cols, &data))
}

pub fn write_signal(x: &DVector<f64>) -> String {
    let mut out = format!("n {}\n", x.len());
    for v in x.iter() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn parse_signal(text: &str) -> Result<DVector<f64>> {
    let mut lines = content_lines(text);
    let n: usize = length_header(&mut lines)?;
    let mut values = Vec::with_capacity(n);
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        let mut toks = line.split_whitespace();
        values.push(field(no, toks.next(), "value")?);
        expect_end(no, toks)?;
    }
    if values.len() != n {
        return Err(parse_err(last, format!("expected {n} values, found {}", values.len())));
    }
    Ok(DVector::from_vec(values))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn read_signal(path: &Path) -> Result<DVector<f64>> {
    parse_signal(&fs::read_to_string(path)?)
}
