//! graph6 codec, bit-compatible with the nauty/gtools `graph6` format.
//!
//! A record is a size header followed by the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six
//! bits per byte (most significant first) and offset by 63. Padding bits in
//! the final byte must be zero.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const BIAS: u8 = 63;
const LONG_HEADER: u8 = 126;
/// Largest order expressible with the four-byte header.
pub const MAX_HEADER_ORDER: usize = 258_047;
const BANNER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    #[error("empty record")]
    Empty,
    #[error("byte {0:#04x} outside the printable range 63..=126")]
    InvalidByte(u8),
    #[error("record too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("record too long: expected {expected} bytes, found {found}")]
    TrailingBytes { expected: usize, found: usize },
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
    #[error("orders above {MAX_HEADER_ORDER} (eight-byte header) are not supported")]
    UnsupportedHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph6 decode failure, with the byte offset inside the record.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

fn header_len(n: usize) -> usize {
    if n <= 62 {
        1
    } else {
        4
    }
}

/// Number of bytes in the record for a graph of order `n`.
pub fn record_len(n: usize) -> usize {
    header_len(n) + (n * n.saturating_sub(1) / 2).div_ceil(6)
}

fn parse_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or_else(|| err(0, Graph6ErrorKind::Empty))?;
    if first < LONG_HEADER {
        return Ok(((first - BIAS) as usize, 1));
    }
    if bytes.get(1) == Some(&LONG_HEADER) {
        return Err(err(1, Graph6ErrorKind::UnsupportedHeader));
    }
    if bytes.len() < 4 {
        return Err(err(
            bytes.len(),
            Graph6ErrorKind::Truncated {
                expected: 4,
                found: bytes.len(),
            },
        ));
    }
    let n = bytes[1..4]
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
    Ok((n, 4))
}

/// Decodes one graph6 record. A trailing `\n` or `\r\n` is ignored.
pub fn decode_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(err(0, Graph6ErrorKind::Empty));
    }
    if let Some(pos) = bytes.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(err(pos, Graph6ErrorKind::InvalidByte(bytes[pos])));
    }
    let (n, body_start) = parse_order(bytes)?;
    if n == 0 {
        return Err(err(0, GraphError::NoVertices.into()));
    }
    if n > MAX_VERTICES {
        return Err(err(0, GraphError::TooLarge { n }.into()));
    }
    let expected = record_len(n);
    if bytes.len() < expected {
        return Err(err(
            bytes.len(),
            Graph6ErrorKind::Truncated {
                expected,
                found: bytes.len(),
            },
        ));
    }
    if bytes.len() > expected {
        return Err(err(
            expected,
            Graph6ErrorKind::TrailingBytes {
                expected,
                found: bytes.len(),
            },
        ));
    }

    let nbits = n * (n - 1) / 2;
    let body = &bytes[body_start..];
    let pad = body.len() * 6 - nbits;
    if pad > 0 {
        let last = body[body.len() - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(bytes.len() - 1, Graph6ErrorKind::NonzeroPadding));
        }
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows))
}

/// Encodes a graph as its canonical graph6 string (no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(record_len(n));
    if n <= 62 {
        out.push(BIAS + n as u8);
    } else {
        out.push(LONG_HEADER);
        for shift in [12, 6, 0] {
            out.push(BIAS + (n >> shift & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// What a stream does with a malformed record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnError {
    #[default]
    FailFast,
    /// Log a warning and continue with the next line.
    Skip,
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("record {record}: {source}")]
    Decode {
        record: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("read failed after record {record}: {source}")]
    Io {
        record: usize,
        #[source]
        source: std::io::Error,
    },
}

/// Lazy graph6 line reader. Record indices count physical lines from 1.
pub struct Graph6Stream<R> {
    reader: R,
    line: String,
    index: usize,
    on_error: OnError,
    done: bool,
}

/// Streams graph6 records from `reader`, skipping blank lines and `>` banners.
pub fn stream_decode<R: BufRead>(reader: R, on_error: OnError) -> Graph6Stream<R> {
    Graph6Stream {
        reader,
        line: String::new(),
        index: 0,
        on_error,
        done: false,
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<(usize, Graph), StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.line.clear();
            match self.reader.read_line(&mut self.line) {
                Ok(0) => {
                    self.done = true;
                    return None;
                }
                Ok(_) => self.index += 1,
                Err(source) => {
                    self.done = true;
                    return Some(Err(StreamError::Io {
                        record: self.index,
                        source,
                    }));
                }
            }
            let mut text = self.line.trim_end_matches(['\n', '\r']);
            // nauty writes the banner glued to the first record
            if let Some(rest) = text.strip_prefix(BANNER) {
                text = rest;
            } else if text.starts_with('>') {
                continue;
            }
            if text.trim().is_empty() {
                continue;
            }
            match decode_graph6(text) {
                Ok(g) => return Some(Ok((self.index, g))),
                Err(source) => match self.on_error {
                    OnError::FailFast => {
                        self.done = true;
                        return Some(Err(StreamError::Decode {
                            record: self.index,
                            source,
                        }));
                    }
                    OnError::Skip => {
                        log::warn!("skipping graph6 record {}: {}", self.index, source);
                    }
                },
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_records() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(encode_graph6(&k4), "C~");
        assert_eq!(decode_graph6("C~").unwrap(), k4);
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(encode_graph6(&k1), "@");
        assert_eq!(decode_graph6("@\n").unwrap(), k1);
    }

    #[test]
    fn known_nauty_strings() {
        // geng output for the 4-cycle 0-1-2-3-0 and the path 0-1-2-3
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(encode_graph6(&c4), "Cl");
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(encode_graph6(&p4), "Ch");
        // the Petersen graph as listed by House of Graphs
        let petersen = decode_graph6("IheA@GUAo").unwrap();
        assert_eq!((petersen.order(), petersen.edge_count()), (10, 15));
        assert!((0..10).all(|v| petersen.degree(v) == 3));
    }

    #[test]
    fn long_header() {
        let g = Graph::new(63, [(0, 62), (5, 6)]).unwrap();
        let s = encode_graph6(&g);
        assert_eq!(&s[..4], "~??~");
        assert_eq!(s.len(), record_len(63));
        assert_eq!(decode_graph6(&s).unwrap(), g);
        let big = Graph::complete(64).unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn record_length_formula() {
        for n in 1..=62 {
            let g = Graph::empty(n).unwrap();
            assert_eq!(encode_graph6(&g).len(), 1 + (n * (n - 1) / 2).div_ceil(6));
        }
    }

    #[test]
    fn rejects_malformed() {
        let e = decode_graph6("").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::Empty);
        let e = decode_graph6("C ").unwrap_err();
        assert_eq!((e.offset, e.kind), (1, Graph6ErrorKind::InvalidByte(b' ')));
        let e = decode_graph6("E~").unwrap_err();
        assert!(matches!(e.kind, Graph6ErrorKind::Truncated { expected: 4, found: 2 }));
        let e = decode_graph6("C~~").unwrap_err();
        assert!(matches!(e.kind, Graph6ErrorKind::TrailingBytes { .. }));
        assert_eq!(e.offset, 2);
        // K3 needs three bits; "B@" sets a padding bit
        let e = decode_graph6("B@").unwrap_err();
        assert_eq!((e.offset, e.kind), (1, Graph6ErrorKind::NonzeroPadding));
        assert_eq!(decode_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        let e = decode_graph6("?").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::Graph(GraphError::NoVertices));
        let e = decode_graph6("~~??????").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::UnsupportedHeader);
        let e = decode_graph6("~?@@").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::Graph(GraphError::TooLarge { n: 65 }));
    }

    #[test]
    fn stream_examples() {
        let k4 = Graph::complete(4).unwrap();
        let k1 = Graph::complete(1).unwrap();
        let got: Vec<_> = stream_decode("C~\n@\n".as_bytes(), OnError::FailFast)
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(got, vec![(1, k4.clone()), (2, k1)]);

        assert_eq!(stream_decode("".as_bytes(), OnError::FailFast).count(), 0);

        let got: Vec<_> = stream_decode(">>graph6<<\nC~\n".as_bytes(), OnError::FailFast)
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(got, vec![(2, k4.clone())]);

        let got: Vec<_> = stream_decode(">>graph6<<C~\n\n@".as_bytes(), OnError::FailFast)
            .map(|r| r.unwrap().0)
            .collect();
        assert_eq!(got, vec![1, 3]);
    }

    #[test]
    fn stream_error_policies() {
        let input = "C~\nC~~\n@\n";
        let mut s = stream_decode(input.as_bytes(), OnError::FailFast);
        assert!(s.next().unwrap().is_ok());
        match s.next().unwrap() {
            Err(StreamError::Decode { record, .. }) => assert_eq!(record, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(s.next().is_none());

        let got: Vec<usize> = stream_decode(input.as_bytes(), OnError::Skip)
            .map(|r| r.unwrap().0)
            .collect();
        assert_eq!(got, vec![1, 3]);
    }
}
