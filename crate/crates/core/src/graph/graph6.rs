//! McKay's graph6 format.
//!
//! A record is a vertex-count header followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per printable byte `63..=126`, zero-padded.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LONG_MAX: usize = (1 << 36) - 1;
const HEADER: &str = ">>graph6<<";

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

fn sextet(byte: u8, pos: usize) -> Result<u8> {
    if (BIAS..=126).contains(&byte) {
        Ok(byte - BIAS)
    } else {
        Err(err(format!(
            "byte {byte:#04x} at offset {pos} is outside the graph6 alphabet"
        )))
    }
}

fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| err("empty record"))?;
    if first != b'~' {
        return Ok((sextet(first, 0)? as usize, 1));
    }
    let (width, start) = if bytes.get(1) == Some(&b'~') {
        (6, 2)
    } else {
        (3, 1)
    };
    let field = bytes
        .get(start..start + width)
        .ok_or_else(|| err("truncated vertex-count header"))?;
    let mut n = 0usize;
    for (i, &b) in field.iter().enumerate() {
        n = (n << 6) | sextet(b, start + i)? as usize;
    }
    let min = if width == 3 {
        SHORT_MAX + 1
    } else {
        MEDIUM_MAX + 1
    };
    if n < min {
        return Err(err(format!(
            "non-canonical header: {n} vertices in a {width}-byte count"
        )));
    }
    Ok((n, start + width))
}

fn encode_n(n: usize, out: &mut String) -> Result<()> {
    let push = |out: &mut String, width: usize| {
        for i in (0..width).rev() {
            out.push(char::from(((n >> (6 * i)) & 0x3f) as u8 + BIAS));
        }
    };
    if n <= SHORT_MAX {
        push(out, 1);
    } else if n <= MEDIUM_MAX {
        out.push('~');
        push(out, 3);
    } else if n <= LONG_MAX {
        out.push_str("~~");
        push(out, 6);
    } else {
        return Err(err(format!("{n} vertices exceeds the graph6 limit")));
    }
    Ok(())
}

/// Parses one graph6 record. Surrounding whitespace and an optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, offset) = decode_n(bytes)?;
    let body = &bytes[offset..];
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(err(format!(
            "truncated bit field: expected {needed} bytes, found {}",
            body.len()
        )));
    }
    if body.len() > needed {
        return Err(err(format!(
            "{} trailing bytes after the bit field",
            body.len() - needed
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = sextet(body[k / 6], offset + k / 6)?;
            if byte & (0x20 >> (k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    // Validate any padding-only trailing byte.
    for (i, &b) in body.iter().enumerate() {
        sextet(b, offset + i)?;
    }
    Graph::from_edges(n, edges)
}

/// Canonical graph6 encoding, without header or newline.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    let mut out = String::new();
    encode_n(n, &mut out)?;
    let bits = n * n.saturating_sub(1) / 2;
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            k += 1;
            if k % 6 == 0 {
                out.push(char::from(acc + BIAS));
                acc = 0;
            }
        }
    }
    if bits % 6 != 0 {
        acc <<= 6 - bits % 6;
        out.push(char::from(acc + BIAS));
    }
    Ok(out)
}
