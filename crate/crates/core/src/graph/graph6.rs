//! graph6 encoding and DOT output.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write;

const HEADER: &str = ">>graph6<<";

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

/// graph6 string of `g` (labels are not encoded).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses one graph6 record. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; anything else malformed is an error.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside 63..=126")));
    }
    let take = |range: std::ops::Range<usize>| -> Result<usize> {
        let chunk = bytes
            .get(range)
            .ok_or_else(|| Error::Graph6("truncated size field".into()))?;
        Ok(chunk
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, body) = match bytes.first() {
        None => return Err(Error::Graph6("empty input".into())),
        Some(&126) if bytes.get(1) == Some(&126) => (take(2..8)?, 8),
        Some(&126) => (take(1..4)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let data = &bytes[body..];
    if data.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} data bytes for {n} vertices, found {}",
            data.len()
        )));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let bit = (data[k / 6] - 63) >> (5 - k % 6) & 1;
            if bit == 1 {
                g.set(i, j, true);
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 {
        let pad = (data[need - 1] - 63) & ((1u8 << (6 - pairs % 6)) - 1);
        if pad != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// DOT rendering; vertex names are the external labels.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{}\" {{", name.replace('"', "'"));
    for v in 0..g.order() {
        let _ = writeln!(s, "  \"{}\";", g.label(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  \"{}\" -- \"{}\";", g.label(u), g.label(v));
    }
    s.push_str("}\n");
    s
}
