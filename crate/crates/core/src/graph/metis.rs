//! METIS adjacency format: a header `n m [fmt [ncon]]` followed by one line
//! of 1-indexed neighbours per vertex. Lines starting with `%` are comments.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::Weight;

#[derive(Debug, Clone, Copy)]
struct Format {
    vertex_sizes: bool,
    vertex_weights: usize,
    edge_weights: bool,
}

fn parse_format(code: Option<&str>, ncon: Option<&str>, line: usize) -> Result<Format> {
    let code = code.unwrap_or("0");
    if code.len() > 3 || !code.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::parse(line, format!("unsupported format code `{code}`")));
    }
    let padded = format!("{code:0>3}");
    let bytes = padded.as_bytes();
    let vertex_weights = if bytes[1] == b'1' {
        match ncon {
            Some(s) => s
                .parse()
                .map_err(|_| Error::parse(line, format!("bad constraint count `{s}`")))?,
            None => 1,
        }
    } else {
        0
    };
    Ok(Format {
        vertex_sizes: bytes[0] == b'1',
        vertex_weights,
        edge_weights: bytes[2] == b'1',
    })
}

fn number(token: &str, line: usize, what: &str) -> Result<i64> {
    token
        .parse::<i64>()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{token}`")))
}

/// Parses METIS text. Parallel edges are merged, self-loops dropped with a
/// warning, and asymmetric adjacency or nonpositive weights rejected.
pub fn parse_metis(text: &str) -> Result<StaticGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));

    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(Error::parse(header_line, "header must read `n m [fmt [ncon]]`"));
    }
    let n = number(fields[0], header_line, "vertex count")?;
    let m = number(fields[1], header_line, "edge count")?;
    if n < 0 || m < 0 {
        return Err(Error::parse(header_line, "negative size in header"));
    }
    let (n, m) = (n as usize, m as usize);
    let format = parse_format(fields.get(2).copied(), fields.get(3).copied(), header_line)?;

    let mut half: Vec<(usize, usize, Weight)> = Vec::with_capacity(2 * m);
    let mut line_of = Vec::with_capacity(n);
    for u in 0..n {
        let (line, body) = lines
            .next()
            .ok_or_else(|| Error::parse(header_line, format!("expected {n} vertex lines, found {u}")))?;
        line_of.push(line);
        let mut tokens = body.split_whitespace();
        let skip = usize::from(format.vertex_sizes) + format.vertex_weights;
        for _ in 0..skip {
            tokens
                .next()
                .ok_or_else(|| Error::parse(line, "missing vertex size or weight"))?;
        }
        while let Some(tok) = tokens.next() {
            let v = number(tok, line, "neighbour id")?;
            if v < 1 || v as usize > n {
                return Err(Error::parse(line, format!("neighbour {v} outside 1..={n}")));
            }
            let v = v as usize - 1;
            let w = if format.edge_weights {
                let tok = tokens
                    .next()
                    .ok_or_else(|| Error::parse(line, format!("missing weight for neighbour {}", v + 1)))?;
                let w = number(tok, line, "edge weight")?;
                if w <= 0 {
                    return Err(Error::parse(line, format!("nonpositive edge weight {w}")));
                }
                w as Weight
            } else {
                1
            };
            if u == v {
                warn!("line {line}: dropping self-loop at vertex {}", u + 1);
                continue;
            }
            half.push((u, v, w));
        }
    }
    if let Some((line, rest)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(line, format!("unexpected trailing content `{}`", rest.trim())));
    }
    if half.len() != 2 * m {
        return Err(Error::parse(
            header_line,
            format!("header declares {m} edges but adjacency lists hold {} half-edges", half.len()),
        ));
    }

    // Merge parallel half-edges, then demand a matching reverse for each.
    half.sort_unstable_by_key(|&(u, v, _)| (u, v));
    let mut merged: Vec<(usize, usize, Weight)> = Vec::with_capacity(half.len());
    for (u, v, w) in half {
        match merged.last_mut() {
            Some(last) if (last.0, last.1) == (u, v) => {
                last.2 = last.2.checked_add(w).ok_or(Error::Overflow)?;
            }
            _ => merged.push((u, v, w)),
        }
    }
    for &(u, v, w) in &merged {
        let back = merged
            .binary_search_by_key(&(v, u), |&(a, b, _)| (a, b))
            .map(|i| merged[i].2);
        match back {
            Ok(bw) if bw == w => {}
            Ok(bw) => {
                return Err(Error::parse(
                    line_of[u],
                    format!("edge {}-{} has weight {w} but its reverse has {bw}", u + 1, v + 1),
                ))
            }
            Err(_) => {
                return Err(Error::parse(
                    line_of[u],
                    format!("edge {}-{} has no reverse entry", u + 1, v + 1),
                ))
            }
        }
    }
    StaticGraph::from_half_edges(n, merged)
}

pub fn load_metis(path: impl AsRef<Path>) -> Result<StaticGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_metis(&text)
}

/// Writes `g` in METIS format. Unit-weight graphs omit the format code.
pub fn write_metis<W: Write>(g: &StaticGraph, out: &mut W) -> io::Result<()> {
    let weighted = !g.is_unit_weight();
    if weighted {
        writeln!(out, "{} {} 1", g.n(), g.m())?;
    } else {
        writeln!(out, "{} {}", g.n(), g.m())?;
    }
    for v in 0..g.n() {
        let mut first = true;
        for (t, w) in g.neighbors(v) {
            if !first {
                write!(out, " ")?;
            }
            first = false;
            if weighted {
                write!(out, "{} {}", t + 1, w)?;
            } else {
                write!(out, "{}", t + 1)?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn save_metis(g: &StaticGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_metis(g, &mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}
