//! graph6 encoding and decoding.
//!
//! The body lists the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per printable byte offset by
//! 63. Orders up to 62 use a one-byte size prefix, larger orders the `~`
//! prefix followed by three bytes.

use crate::error::Graph6Error;
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_SIZE: u8 = 126;
const HEADER: &str = ">>graph6<<";

fn check_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (OFFSET..=126).contains(&byte) {
        Ok(byte - OFFSET)
    } else {
        Err(Graph6Error::ByteOutOfRange { offset, byte })
    }
}

/// Parses one graph6 string. A trailing line terminator and the optional
/// `>>graph6<<` header are accepted; anything else outside the body is an error.
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }

    let (n, mut pos) = if bytes[0] == LONG_SIZE {
        if bytes.len() >= 2 && bytes[1] == LONG_SIZE {
            // 8-byte form is only used for n > 258047
            return Err(Graph6Error::TooManyVertices(258_048));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = n << 6 | check_byte(i + 1, b)? as usize;
        }
        (n, 4)
    } else {
        (
            check_byte(0, bytes[0]).map_err(|_| Graph6Error::BadHeader)? as usize,
            1,
        )
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }

    let bit_count = n * n.saturating_sub(1) / 2;
    let body_len = bit_count.div_ceil(6);
    let available = bytes.len() - pos;
    if available < body_len {
        return Err(Graph6Error::Truncated {
            expected: body_len,
            got: available,
        });
    }
    if available > body_len {
        return Err(Graph6Error::TrailingGarbage(available - body_len));
    }

    let mut g = Graph::empty(n).map_err(|_| Graph6Error::TooManyVertices(n))?;
    let mut bit = 0usize;
    let mut chunk = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                chunk = check_byte(pos, bytes[pos])?;
                pos += 1;
            }
            if chunk >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) && chunk & ((1u8 << (6 - bit % 6)) - 1) != 0 {
        return Err(Graph6Error::NonzeroPadding);
    }
    Ok(g)
}

/// Encodes `g` in graph6 without header or line terminator.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_SIZE);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut chunk = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(chunk + OFFSET);
                chunk = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((chunk << (6 - bits)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses a newline-separated catalog, skipping blank lines.
pub fn read_catalog(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| from_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}
