//! The graph6 text format.
//!
//! A graph on `n` vertices is written as `N(n)` followed by the upper
//! triangle of its adjacency matrix in column order (`x(0,1)`, `x(0,2)`,
//! `x(1,2)`, `x(0,3)`, ...), six bits per byte, each byte offset by 63.
//! An optional `>>graph6<<` header is accepted on input.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn bad(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 { offset, message: message.into() }
}

fn sextet(bytes: &[u8], at: usize) -> Result<usize> {
    match bytes.get(at) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
        Some(&b) => Err(bad(at, format!("byte 0x{b:02x} is outside the graph6 range 63..=126"))),
        None => Err(bad(at, "unexpected end of input")),
    }
}

/// Decodes one graph6 string. Error offsets count bytes from the start of `s`.
pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let mut pos = if s.starts_with(HEADER) { HEADER.len() } else { 0 };
    let end = bytes.iter().rposition(|b| !b.is_ascii_whitespace()).map_or(0, |p| p + 1);
    let bytes = &bytes[..end];

    let first = sextet(bytes, pos)?;
    let n = if first < 63 {
        pos += 1;
        first
    } else if bytes.get(pos + 1) == Some(&126) {
        let mut n = 0;
        for i in 0..6 {
            n = (n << 6) | sextet(bytes, pos + 2 + i)?;
        }
        pos += 8;
        n
    } else {
        let mut n = 0;
        for i in 0..3 {
            n = (n << 6) | sextet(bytes, pos + 1 + i)?;
        }
        pos += 4;
        n
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(bad(
            pos,
            format!("expected {need} data bytes for {n} vertices, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::new(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let at = pos + bit / 6;
            if sextet(bytes, at)? >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    for at in pos..bytes.len() {
        sextet(bytes, at)?;
    }
    Ok(g)
}

/// Decodes every non-blank line; errors name the line and byte offset.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        out.push(decode(line).map_err(|e| match e {
            Error::Graph6 { offset, message } => {
                Error::Graph6 { offset, message: format!("line {}: {message}", lineno + 1) }
            }
            other => other,
        })?);
    }
    Ok(out)
}
