//! Graph file formats: standard graph6 for loopless graphs, and a plain
//! text "loopgraph" format for graphs with loops (graph6 cannot carry them).
//!
//! loopgraph layout: a header line `LG n`, then one line `i j` per edge with
//! 0-based endpoints, i <= j, where i == j encodes a loop.

use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::graph::Graph;

/// Supported on-disk formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Loopgraph,
}

impl Format {
    /// Picks a format from a file extension; `.g6` means graph6, anything
    /// else falls back to loopgraph.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            _ => Format::Loopgraph,
        }
    }
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

/// Encodes a loopless graph in graph6 (McKay's format).
///
/// The upper triangle is read column by column — x(0,1), x(0,2), x(1,2),
/// x(0,3), ... — packed big-endian into 6-bit groups offset by 63.
pub fn to_graph6(g: &Graph) -> Result<String, Error> {
    if g.loops_enabled() && g.loop_count() > 0 {
        return Err(Error::LoopsInGraph6);
    }
    let n = g.n();
    let mut out = Vec::new();
    encode_graph6_order(n, &mut out)?;

    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ascii"))
}

fn encode_graph6_order(n: usize, out: &mut Vec<u8>) -> Result<(), Error> {
    if n <= 62 {
        out.push(n as u8 + 63);
        Ok(())
    } else if n <= 258_047 {
        out.push(126);
        let v = n as u32;
        out.push(((v >> 12) & 0x3f) as u8 + 63);
        out.push(((v >> 6) & 0x3f) as u8 + 63);
        out.push((v & 0x3f) as u8 + 63);
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "graph6 writer supports n <= 258047, got {n}"
        )))
    }
}

/// Decodes a single graph6 line into a loopless graph.
pub fn from_graph6(s: &str) -> Result<Graph, Error> {
    let bytes = s.trim_end().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            msg: "empty graph6 input".into(),
        });
    }
    let (n, mut pos) = decode_graph6_order(bytes)?;
    if n == 0 {
        return Err(Error::Parse {
            offset: 0,
            msg: "graph6 order 0 is not supported".into(),
        });
    }

    let nbits = n * (n - 1) / 2;
    let expected_bytes = nbits.div_ceil(6);
    if bytes.len() - pos != expected_bytes {
        return Err(Error::Parse {
            offset: pos,
            msg: format!(
                "graph6 body for n={n} needs {expected_bytes} bytes, found {}",
                bytes.len() - pos
            ),
        });
    }

    let mut g = Graph::empty(n, false);
    let mut bit_idx = 0usize;
    let mut pair = {
        // iterator over (i, j) in column order
        let mut pairs = Vec::with_capacity(nbits);
        for j in 1..n {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        pairs.into_iter()
    };
    while pos < bytes.len() {
        let b = bytes[pos];
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                offset: pos,
                msg: format!("invalid graph6 byte 0x{b:02x}"),
            });
        }
        let v = b - 63;
        for k in (0..6).rev() {
            if bit_idx >= nbits {
                if v >> k & 1 == 1 {
                    return Err(Error::Parse {
                        offset: pos,
                        msg: "nonzero padding bits in graph6 body".into(),
                    });
                }
                continue;
            }
            if v >> k & 1 == 1 {
                let (i, j) = pair.next().expect("pair iterator in sync");
                g.set_pair(i, j, true);
            } else {
                pair.next();
            }
            bit_idx += 1;
        }
        pos += 1;
    }
    Ok(g)
}

fn decode_graph6_order(bytes: &[u8]) -> Result<(usize, usize), Error> {
    let b0 = bytes[0];
    if b0 == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Parse {
                offset: 1,
                msg: "graph6 orders above 258047 are not supported".into(),
            });
        }
        if bytes.len() < 4 {
            return Err(Error::Parse {
                offset: 0,
                msg: "truncated graph6 order field".into(),
            });
        }
        let mut n = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse {
                    offset: 1 + k,
                    msg: format!("invalid graph6 order byte 0x{b:02x}"),
                });
            }
            n = (n << 6) | (b - 63) as usize;
        }
        Ok((n, 4))
    } else if (63..=125).contains(&b0) {
        Ok(((b0 - 63) as usize, 1))
    } else {
        Err(Error::Parse {
            offset: 0,
            msg: format!("invalid graph6 header byte 0x{b0:02x}"),
        })
    }
}

// ---------------------------------------------------------------------------
// loopgraph
// ---------------------------------------------------------------------------

/// Encodes a loop-enabled (or loopless) graph in the loopgraph text format.
pub fn to_loopgraph(g: &Graph) -> String {
    let mut out = format!("LG {}\n", g.n());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    for v in 0..g.n() {
        if g.has_loop(v) {
            out.push_str(&format!("{v} {v}\n"));
        }
    }
    out
}

/// Decodes a loopgraph document. The result is always loop-enabled.
pub fn from_loopgraph(s: &str) -> Result<Graph, Error> {
    let mut offset = 0usize;
    let mut lines = s.lines();
    let header = lines.next().ok_or(Error::Parse {
        offset: 0,
        msg: "empty loopgraph input".into(),
    })?;
    let n: usize = header
        .strip_prefix("LG ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or(Error::Parse {
            offset: 0,
            msg: format!("expected header 'LG n', got {header:?}"),
        })?;
    if n == 0 {
        return Err(Error::Parse {
            offset: 0,
            msg: "loopgraph order must be positive".into(),
        });
    }
    offset += header.len() + 1;

    let mut g = Graph::empty(n, true);
    for line in lines {
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            let mut it = trimmed.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize, Error> {
                tok.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
                    offset,
                    msg: format!("expected edge line 'i j', got {line:?}"),
                })
            };
            let i = parse(it.next())?;
            let j = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    offset,
                    msg: format!("trailing tokens on edge line {line:?}"),
                });
            }
            if i > j || j >= n {
                return Err(Error::Parse {
                    offset,
                    msg: format!("edge ({i}, {j}) out of range for n={n} (need i <= j < n)"),
                });
            }
            if i == j {
                g.set_loop(i, true);
            } else {
                g.set_pair(i, j, true);
            }
        }
        offset += line.len() + 1;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// file-level helpers
// ---------------------------------------------------------------------------

pub fn write_graph(g: &Graph, path: &Path, format: Format) -> Result<(), Error> {
    let body = match format {
        Format::Graph6 => {
            let mut s = to_graph6(g)?;
            s.push('\n');
            s
        }
        Format::Loopgraph => to_loopgraph(g),
    };
    fs::write(path, body)?;
    Ok(())
}

pub fn read_graph(path: &Path, format: Format) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)?;
    match format {
        Format::Graph6 => from_graph6(&text),
        Format::Loopgraph => from_loopgraph(&text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Seed;
    use crate::numeric::EdgeProbability;

    #[test]
    fn k3_encodes_to_bw() {
        // header byte 63+3 = 'B', body bits 111 padded to 111000 = 56 -> 'w'
        let k3 = Graph::complete(3, false);
        assert_eq!(to_graph6(&k3).unwrap(), "Bw");
    }

    #[test]
    fn known_small_codes() {
        // Empty graph on 5 vertices: body is all-zero bits.
        let e5 = Graph::empty(5, false);
        assert_eq!(to_graph6(&e5).unwrap(), "D??");
        // Single edge (0,1) on 2 vertices.
        let k2 = Graph::complete(2, false);
        assert_eq!(to_graph6(&k2).unwrap(), "A_");
    }

    #[test]
    fn roundtrip_random_graphs() {
        let p = "0.4".parse::<EdgeProbability>().unwrap();
        for seed in 0..50u64 {
            let n = 1 + (seed as usize * 7) % 30;
            let g = Graph::sample_gnp(n, &p, Seed(seed), false);
            let enc = to_graph6(&g).unwrap();
            assert_eq!(from_graph6(&enc).unwrap(), g, "roundtrip failed for seed {seed}");
        }
    }

    #[test]
    fn roundtrip_large_order_header() {
        let g = Graph::empty(100, false);
        let enc = to_graph6(&g).unwrap();
        let h = from_graph6(&enc).unwrap();
        assert_eq!(h.n(), 100);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn graph6_rejects_loops() {
        let mut g = Graph::empty(3, true);
        g.set_loop(1, true);
        assert!(matches!(to_graph6(&g), Err(Error::LoopsInGraph6)));
        // a loop-enabled graph without loops is still encodable
        let h = Graph::empty(3, true);
        assert_eq!(to_graph6(&h).unwrap(), "B?");
    }

    #[test]
    fn graph6_parse_errors_carry_offsets() {
        let err = from_graph6("B\u{7f}").unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 1),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(from_graph6("").is_err());
        // wrong body length
        assert!(from_graph6("Bww").is_err());
    }

    #[test]
    fn loopgraph_roundtrip() {
        let p = "0.5".parse::<EdgeProbability>().unwrap();
        for seed in 0..20u64 {
            let g = Graph::sample_gnp(9, &p, Seed(seed), true);
            let enc = to_loopgraph(&g);
            assert_eq!(from_loopgraph(&enc).unwrap(), g);
        }
    }

    #[test]
    fn loopgraph_parse_errors() {
        assert!(from_loopgraph("").is_err());
        assert!(from_loopgraph("LG x\n").is_err());
        assert!(from_loopgraph("LG 3\n2 1\n").is_err()); // i > j
        assert!(from_loopgraph("LG 3\n1 5\n").is_err()); // out of range
        assert!(from_loopgraph("LG 3\n0 1 2\n").is_err()); // trailing token
    }

    #[test]
    fn file_roundtrip_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let p = "0.5".parse::<EdgeProbability>().unwrap();

        let g = Graph::sample_gnp(12, &p, Seed(3), false);
        let path = dir.path().join("g.g6");
        write_graph(&g, &path, Format::Graph6).unwrap();
        assert_eq!(read_graph(&path, Format::Graph6).unwrap(), g);

        let h = Graph::sample_gnp(8, &p, Seed(4), true);
        let path = dir.path().join("h.lg");
        write_graph(&h, &path, Format::Loopgraph).unwrap();
        assert_eq!(read_graph(&path, Format::Loopgraph).unwrap(), h);
    }
}
