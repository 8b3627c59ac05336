//! Graph interchange formats and line-delimited scan reports.
//!
//! graph6 and sparse6 follow the format description distributed with nauty:
//! size field N(n) with offset 63, six data bits per byte, big-endian within
//! each byte. graph6 stores the upper triangle column by column
//! (x(0,1), x(0,2), x(1,2), x(0,3), ...).

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

/// Largest order accepted by [`encode_graph6`].
pub const MAX_ENCODE_ORDER: usize = 1 << 18;

const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("truncated size field")]
    TruncatedSize,
    #[error("expected {expected} data bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("nonzero padding bits in the final byte")]
    NonzeroPadding,
    #[error("graph order {0} exceeds the encoder limit")]
    TooLarge(usize),
    #[error("incremental sparse6 (';' prefix) is not supported")]
    Incremental,
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

fn data_byte(byte: u8, offset: usize) -> Result<u8, FormatError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(FormatError::BadByte { byte, offset })
    }
}

/// Parses N(n); returns n and the number of bytes consumed.
fn decode_size(bytes: &[u8]) -> Result<(usize, usize), FormatError> {
    let first = *bytes.first().ok_or(FormatError::Empty)?;
    let first = data_byte(first, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let second = *bytes.get(1).ok_or(FormatError::TruncatedSize)?;
    let (len, start) = if second == 126 { (6, 2) } else { (3, 1) };
    let mut n = 0usize;
    for i in 0..len {
        let off = start + i;
        let b = *bytes.get(off).ok_or(FormatError::TruncatedSize)?;
        n = (n << 6) | data_byte(b, off)? as usize;
    }
    Ok((n, start + len))
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn strip_line<'a>(line: &'a str, header: &str) -> &'a str {
    let line = line.trim_end_matches(['\n', '\r']);
    line.strip_prefix(header).unwrap_or(line)
}

pub fn decode_graph6(line: &str) -> Result<Graph, FormatError> {
    let body = strip_line(line, GRAPH6_HEADER).as_bytes();
    if body.is_empty() {
        return Err(FormatError::Empty);
    }
    let (n, used) = decode_size(body)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[used..];
    if data.len() != expected {
        return Err(FormatError::BadLength { expected, found: data.len() });
    }
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0;
    for (idx, &b) in data.iter().enumerate() {
        let v = data_byte(b, used + idx)?;
        for shift in (0..6).rev() {
            let bit = (v >> shift) & 1;
            if k >= bits {
                if bit != 0 {
                    return Err(FormatError::NonzeroPadding);
                }
                continue;
            }
            if bit == 1 {
                edges.push((i, j));
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > MAX_ENCODE_ORDER {
        return Err(FormatError::TooLarge(n));
    }
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let (mut acc, mut nbits) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes a sparse6 line (leading ':'). Multi-edges and loops are rejected
/// because [`Graph`] is simple.
pub fn decode_sparse6(line: &str) -> Result<Graph, FormatError> {
    let body = strip_line(line, SPARSE6_HEADER).as_bytes();
    match body.first() {
        None => return Err(FormatError::Empty),
        Some(b';') => return Err(FormatError::Incremental),
        Some(b':') => {}
        Some(&b) => return Err(FormatError::BadByte { byte: b, offset: 0 }),
    }
    let body = &body[1..];
    let (n, used) = decode_size(body)?;
    let k = if n <= 1 { 0 } else { usize::BITS - (n - 1).leading_zeros() } as usize;
    let mut bits = Vec::with_capacity((body.len() - used) * 6);
    for (idx, &b) in body[used..].iter().enumerate() {
        let v = data_byte(b, used + idx + 1)?;
        bits.extend((0..6).rev().map(|s| (v >> s) & 1));
    }
    let mut edges = Vec::new();
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + k].iter().fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
        pos += 1 + k;
        if b == 1 {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Decodes a graph6 or sparse6 line, dispatching on the leading byte.
pub fn decode_any(line: &str) -> Result<Graph, FormatError> {
    let t = line.trim_end_matches(['\n', '\r']);
    if t.starts_with(':') || t.starts_with(';') || t.starts_with(SPARSE6_HEADER) {
        decode_sparse6(t)
    } else {
        decode_graph6(t)
    }
}

/// Reads every graph in a graph6/sparse6 file. Blank lines and lines
/// starting with `#` (annotation lines in counterexample dumps) are skipped.
pub fn read_graph6_file(text: &str) -> Result<Vec<Graph>, FormatError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(decode_any)
        .collect()
}

/// Convex orderings of the two sides of a biconvex graph, as carried in
/// edge-list headers and graph6 sidecar files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingLines {
    pub order_x: Vec<Vertex>,
    pub order_y: Vec<Vertex>,
}

impl OrderingLines {
    pub fn to_lines(&self) -> String {
        let join = |v: &[Vertex]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        format!("orderX {}\norderY {}\n", join(&self.order_x), join(&self.order_y))
    }

    /// Parses `orderX ...` / `orderY ...` lines, ignoring anything else.
    pub fn parse(text: &str) -> Option<OrderingLines> {
        let mut x = None;
        let mut y = None;
        for line in text.lines() {
            let mut toks = line.split_whitespace();
            let target = match toks.next() {
                Some("orderX") => &mut x,
                Some("orderY") => &mut y,
                _ => continue,
            };
            *target = toks.map(|t| t.parse().ok()).collect::<Option<Vec<Vertex>>>();
        }
        Some(OrderingLines { order_x: x?, order_y: y? })
    }
}

/// Parses the edge-list format: first line `n m`, optional `orderX`/`orderY`
/// header lines, then `m` lines `u v` with 0-based ids. `#` starts a comment.
pub fn read_edge_list_with_orderings(text: &str) -> Result<(Graph, Option<OrderingLines>), FormatError> {
    let err = |line: usize, msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(hline, "header must be `n m`")))
        .collect::<Result<_, _>>()?;
    let [n, m] = nums[..] else {
        return Err(err(hline, "header must be `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    let mut order_text = String::new();
    for (lno, line) in lines {
        if line.starts_with("orderX") || line.starts_with("orderY") {
            order_text.push_str(line);
            order_text.push('\n');
            continue;
        }
        let toks: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(lno, "expected two vertex ids")))
            .collect::<Result<_, _>>()?;
        let [u, v] = toks[..] else {
            return Err(err(lno, "expected two vertex ids"));
        };
        if u >= n || v >= n {
            return Err(err(lno, &format!("vertex id out of range 0..{n}")));
        }
        if u == v {
            return Err(err(lno, &format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(hline, &format!("header declares {m} edges, found {}", edges.len())));
    }
    let orders = if order_text.is_empty() {
        None
    } else {
        Some(OrderingLines::parse(&order_text).ok_or_else(|| err(hline, "incomplete orderX/orderY header"))?)
    };
    let g = Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => err(0, &format!("duplicate edge {u} {v}")),
        other => FormatError::Graph(other),
    })?;
    Ok((g, orders))
}

pub fn read_edge_list(text: &str) -> Result<Graph, FormatError> {
    read_edge_list_with_orderings(text).map(|(g, _)| g)
}

pub fn write_edge_list(g: &Graph) -> String {
    write_edge_list_with_orderings(g, None)
}

pub fn write_edge_list_with_orderings(g: &Graph, orders: Option<&OrderingLines>) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    if let Some(o) = orders {
        out.push_str(&o.to_lines());
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Nonnegative-denominator rational, serialized as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = if den < 0 { -1 } else { 1 };
        Rational { num: s * num / g.max(1), den: s * den / g.max(1) }
    }

    pub fn integer(v: i64) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid rational `{s}`");
        match s.split_once('/') {
            Some((p, q)) => {
                let den: i64 = q.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(Rational::new(p.trim().parse().map_err(|_| bad())?, den))
            }
            None => Ok(Rational::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Theorem,
    Conjecture,
}

/// One evaluated inequality: `name` spells the relation, `value` is the
/// right-hand side evaluated with the exact γ and ρ of the record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub value: Rational,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Solved,
    Inconclusive,
}

/// Per-graph scan result, serialized as one JSON object per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub graph_id: String,
    pub class: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub graph6: String,
    pub status: SolveStatus,
    pub gamma: Option<usize>,
    pub rho: Option<usize>,
    pub checks: Vec<BoundCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<BTreeMap<String, Vec<Vertex>>>,
}

impl ScanRecord {
    pub fn theorem_failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.kind == BoundKind::Theorem && !c.satisfied)
    }

    pub fn conjecture_violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.kind == BoundKind::Conjecture && !c.satisfied)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExtreme {
    pub ratio: Rational,
    pub graph_id: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTally {
    pub checked: usize,
    pub violated: usize,
}

/// Final line of a scan report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    pub solved: usize,
    pub inconclusive: usize,
    pub theorem_failures: usize,
    pub conjecture_violations: usize,
    pub predicates: BTreeMap<String, PredicateTally>,
    pub max_ratio: BTreeMap<String, ClassExtreme>,
}

impl ScanSummary {
    pub fn absorb(&mut self, rec: &ScanRecord) {
        self.records += 1;
        match rec.status {
            SolveStatus::Solved => self.solved += 1,
            SolveStatus::Inconclusive => self.inconclusive += 1,
        }
        for c in &rec.checks {
            let t = self.predicates.entry(c.name.clone()).or_default();
            t.checked += 1;
            if !c.satisfied {
                t.violated += 1;
                match c.kind {
                    BoundKind::Theorem => self.theorem_failures += 1,
                    BoundKind::Conjecture => self.conjecture_violations += 1,
                }
            }
        }
        if let (Some(g), Some(r)) = (rec.gamma, rec.rho) {
            if r > 0 {
                let ratio = Rational::new(g as i64, r as i64);
                let slot = self.max_ratio.get(&rec.class);
                if slot.is_none_or(|e| ratio > e.ratio) {
                    self.max_ratio.insert(rec.class.clone(), ClassExtreme { ratio, graph_id: rec.graph_id.clone() });
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReportLine {
    Graph(ScanRecord),
    Summary(ScanSummary),
}

impl ReportLine {
    pub fn parse(line: &str) -> Result<ReportLine, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Serializes report lines to a sink, one JSON object per line, flushing
/// after each so partially written reports stay parseable.
pub struct ReportWriter<W: Write> {
    sink: W,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(sink: W) -> Self {
        ReportWriter { sink }
    }

    pub fn write(&mut self, line: &ReportLine) -> io::Result<()> {
        serde_json::to_writer(&mut self.sink, line)?;
        self.sink.write_all(b"\n")?;
        self.sink.flush()
    }

    pub fn into_inner(self) -> W {
        self.sink
    }
}

pub fn write_report<'a, I, W>(records: I, sink: W) -> io::Result<()>
where
    I: IntoIterator<Item = &'a ScanRecord>,
    W: Write,
{
    let mut w = ReportWriter::new(sink);
    for rec in records {
        w.write(&ReportLine::Graph(rec.clone()))?;
    }
    Ok(())
}
