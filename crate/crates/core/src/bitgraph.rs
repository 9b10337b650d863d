//! Fixed-capacity bitsets and the k-partite graph container.
//!
//! Vertex ids are global and 0-based. Part `i` occupies the contiguous id
//! range `bounds[i]..bounds[i + 1]`, so restricting a neighbor row to a part
//! is a word-range operation.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};

use thiserror::Error;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(capacity: usize) -> usize {
    capacity.div_ceil(WORD_BITS)
}

/// A set of vertex ids below a fixed capacity, one bit per id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet { capacity, words: vec![0; words_for(capacity)] }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::new(capacity);
        set.fill();
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Inserts `v`; returns `true` if it was absent.
    ///
    /// Panics if `v >= capacity`.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "vertex {v} out of range for capacity {}", self.capacity);
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        let absent = *w & bit == 0;
        *w |= bit;
        absent
    }

    /// Removes `v`; returns `true` if it was present.
    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn fill(&mut self) {
        self.words.iter_mut().for_each(|w| *w = u64::MAX);
        let tail = self.capacity % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn copy_from(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.copy_from_slice(&other.words);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// `|self ∩ other|` without materializing the intersection.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of members in the id range `lo..hi`.
    pub fn range_len(&self, lo: usize, hi: usize) -> usize {
        range_popcount(&self.words, lo, hi)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| BitIter { word: w, base: wi * WORD_BITS })
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// Popcount of `words` restricted to bit positions `lo..hi`.
#[inline]
pub(crate) fn range_popcount(words: &[u64], lo: usize, hi: usize) -> usize {
    if lo >= hi {
        return 0;
    }
    let (wlo, whi) = (lo / WORD_BITS, (hi - 1) / WORD_BITS);
    let lo_mask = u64::MAX << (lo % WORD_BITS);
    let hi_mask = u64::MAX >> (WORD_BITS - 1 - (hi - 1) % WORD_BITS);
    if wlo == whi {
        return (words[wlo] & lo_mask & hi_mask).count_ones() as usize;
    }
    let mut count = (words[wlo] & lo_mask).count_ones() as usize;
    for w in &words[wlo + 1..whi] {
        count += w.count_ones() as usize;
    }
    count + (words[whi] & hi_mask).count_ones() as usize
}

/// Popcount of `a & b` restricted to bit positions `lo..hi`.
#[inline]
pub(crate) fn range_and_popcount(a: &[u64], b: &[u64], lo: usize, hi: usize) -> usize {
    if lo >= hi {
        return 0;
    }
    let (wlo, whi) = (lo / WORD_BITS, (hi - 1) / WORD_BITS);
    let lo_mask = u64::MAX << (lo % WORD_BITS);
    let hi_mask = u64::MAX >> (WORD_BITS - 1 - (hi - 1) % WORD_BITS);
    if wlo == whi {
        return (a[wlo] & b[wlo] & lo_mask & hi_mask).count_ones() as usize;
    }
    let mut count = (a[wlo] & b[wlo] & lo_mask).count_ones() as usize;
    for i in wlo + 1..whi {
        count += (a[i] & b[i]).count_ones() as usize;
    }
    count + (a[whi] & b[whi] & hi_mask).count_ones() as usize
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {id} out of range (n = {n})")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("edge ({u}, {v}) joins two vertices of part {part}")]
    IntraPartEdge { u: usize, v: usize, part: usize },
    #[error("part sizes must be positive (part {0} is empty)")]
    EmptyPart(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

/// An undirected k-partite graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct KPartiteGraph {
    n: usize,
    bounds: Vec<usize>,
    part_of: Vec<u32>,
    adjacency: Vec<VertexSet>,
    edge_count: usize,
}

impl std::fmt::Debug for KPartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KPartiteGraph")
            .field("n", &self.n)
            .field("k", &self.k())
            .field("edges", &self.edge_count)
            .finish()
    }
}

impl KPartiteGraph {
    /// Builds a graph from part sizes and an edge list. Duplicate edges
    /// collapse.
    pub fn build(part_sizes: &[usize], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if let Some(p) = part_sizes.iter().position(|&s| s == 0) {
            return Err(GraphError::EmptyPart(p));
        }
        let mut g = Self::empty_with_parts(part_sizes);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edgeless graph with the given part sizes. Zero-sized parts are
    /// allowed here; they make every k-clique search come back empty.
    pub fn empty_with_parts(part_sizes: &[usize]) -> Self {
        let mut bounds = Vec::with_capacity(part_sizes.len() + 1);
        bounds.push(0);
        for s in part_sizes {
            bounds.push(bounds.last().unwrap() + s);
        }
        let n = *bounds.last().unwrap();
        let mut part_of = Vec::with_capacity(n);
        for (i, s) in part_sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i as u32, *s));
        }
        KPartiteGraph { n, bounds, part_of, adjacency: vec![VertexSet::new(n); n], edge_count: 0 }
    }

    /// Adds the edge `{u, v}`; returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        for id in [u, v] {
            if id >= self.n {
                return Err(GraphError::VertexOutOfRange { id, n: self.n });
            }
        }
        if self.part(u) == self.part(v) {
            return Err(GraphError::IntraPartEdge { u, v, part: self.part(u) });
        }
        let new = self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        if new {
            self.edge_count += 1;
        }
        Ok(new)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn part_range(&self, part: usize) -> std::ops::Range<usize> {
        self.bounds[part]..self.bounds[part + 1]
    }

    pub fn part_size(&self, part: usize) -> usize {
        self.bounds[part + 1] - self.bounds[part]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.bounds.windows(2).map(|w| w[1] - w[0]).collect()
    }

    #[inline]
    pub fn part(&self, v: usize) -> usize {
        self.part_of[v] as usize
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adjacency[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub(crate) fn from_rows(part_sizes: &[usize], adjacency: Vec<VertexSet>) -> Self {
        let mut g = Self::empty_with_parts(part_sizes);
        debug_assert_eq!(adjacency.len(), g.n);
        g.edge_count = adjacency.iter().map(VertexSet::len).sum::<usize>() / 2;
        g.adjacency = adjacency;
        g
    }

    /// Serializes to the KPG text format.
    pub fn write_kpg(&self) -> String {
        let mut out = String::with_capacity(32 + self.edge_count * 16);
        let _ = writeln!(out, "p kpg {} {} {}", self.n, self.edge_count, self.k());
        out.push('q');
        for s in self.part_sizes() {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn write_kpg_to<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        use std::io::Write;
        let mut w = std::io::BufWriter::new(&mut w);
        writeln!(w, "p kpg {} {} {}", self.n, self.edge_count, self.k())?;
        write!(w, "q")?;
        for s in self.part_sizes() {
            write!(w, " {s}")?;
        }
        writeln!(w)?;
        for (u, v) in self.edges() {
            writeln!(w, "e {u} {v}")?;
        }
        w.flush()
    }

    /// Parses KPG text; gzip input is detected by its magic bytes.
    pub fn read_kpg<R: Read>(reader: R) -> Result<Self, GraphError> {
        let mut reader = BufReader::new(reader);
        let is_gzip = {
            let head = reader.fill_buf()?;
            head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b
        };
        if is_gzip {
            parse_kpg(BufReader::new(flate2::bufread::MultiGzDecoder::new(reader)))
        } else {
            parse_kpg(reader)
        }
    }

    pub fn parse_kpg(text: &str) -> Result<Self, GraphError> {
        parse_kpg(text.as_bytes())
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

fn parse_kpg<R: BufRead>(reader: R) -> Result<KPartiteGraph, GraphError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph: Option<KPartiteGraph> = None;
    let mut seen_edges = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| parse_err(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let mut toks = line.split_ascii_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` line"));
                }
                if toks.next() != Some("kpg") {
                    return Err(parse_err(lineno, "expected `p kpg <n> <m> <k>`"));
                }
                let n = parse_num(toks.next(), lineno, "vertex count")?;
                let m = parse_num(toks.next(), lineno, "edge count")?;
                let k = parse_num(toks.next(), lineno, "part count")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens in header"));
                }
                header = Some((n, m, k));
            }
            Some("q") => {
                let (n, _, k) = header.ok_or_else(|| parse_err(lineno, "`q` line before header"))?;
                if graph.is_some() {
                    return Err(parse_err(lineno, "duplicate `q` line"));
                }
                let sizes = toks.map(|t| parse_num(Some(t), lineno, "part size")).collect::<Result<Vec<_>, _>>()?;
                if sizes.len() != k {
                    return Err(parse_err(lineno, format!("header declares {k} parts, found {}", sizes.len())));
                }
                let total = sizes.iter().try_fold(0usize, |acc, &s| acc.checked_add(s));
                if total != Some(n) {
                    return Err(parse_err(lineno, format!("part sizes sum to {total:?}, header declares n = {n}")));
                }
                graph = Some(KPartiteGraph::empty_with_parts(&sizes));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| parse_err(lineno, "edge before `p`/`q` lines"))?;
                let u = parse_num(toks.next(), lineno, "edge endpoint")?;
                let v = parse_num(toks.next(), lineno, "edge endpoint")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens in edge line"));
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self loop at {u}")));
                }
                g.add_edge(u, v).map_err(|e| parse_err(lineno, e.to_string()))?;
                seen_edges += 1;
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type {other:?}"))),
            None => unreachable!(),
        }
    }
    let (_, m, _) = header.ok_or_else(|| parse_err(0, "missing `p kpg` header"))?;
    let g = graph.ok_or_else(|| parse_err(0, "missing `q` line"))?;
    if seen_edges != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {seen_edges}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(sizes: &[usize]) -> KPartiteGraph {
        let g = KPartiteGraph::empty_with_parts(sizes);
        let edges: Vec<_> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| g.part(u) != g.part(v))
            .collect();
        KPartiteGraph::build(sizes, &edges).unwrap()
    }

    #[test]
    fn complete_bipartite_has_four_edges() {
        let g = complete(&[2, 2]);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.k(), 2);
    }

    #[test]
    fn single_vertex_graph() {
        let g = KPartiteGraph::build(&[1], &[]).unwrap();
        assert_eq!((g.n(), g.k(), g.edge_count()), (1, 1, 0));
    }

    #[test]
    fn complete_tripartite_degrees() {
        let g = complete(&[2, 2, 2]);
        assert!((0..6).all(|v| g.degree(v) == 4));
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = KPartiteGraph::build(&[1, 1], &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn intra_part_edge_rejected() {
        let err = KPartiteGraph::build(&[2, 1], &[(0, 1)]).unwrap_err();
        assert_eq!(err, GraphError::IntraPartEdge { u: 0, v: 1, part: 0 });
    }

    #[test]
    fn out_of_range_rejected() {
        let err = KPartiteGraph::build(&[1, 1], &[(0, 7)]).unwrap_err();
        assert_eq!(err, GraphError::VertexOutOfRange { id: 7, n: 2 });
    }

    #[test]
    fn range_popcount_matches_naive() {
        let mut s = VertexSet::new(200);
        for v in (0..200).step_by(3) {
            s.insert(v);
        }
        for lo in [0, 1, 63, 64, 65, 127, 130] {
            for hi in [lo, lo + 1, 64, 128, 129, 200] {
                let naive = (lo..hi).filter(|&v| s.contains(v)).count();
                assert_eq!(s.range_len(lo, hi), naive, "{lo}..{hi}");
            }
        }
    }

    #[test]
    fn write_is_sorted_and_parses_back() {
        let g = KPartiteGraph::build(&[2, 1, 2], &[(4, 0), (2, 1), (0, 2), (3, 1)]).unwrap();
        let text = g.write_kpg();
        assert_eq!(text, "p kpg 5 4 3\nq 2 1 2\ne 0 2\ne 0 4\ne 1 2\ne 1 3\n");
        assert_eq!(KPartiteGraph::parse_kpg(&text).unwrap(), g);
    }

    #[test]
    fn inconsistent_header_rejected() {
        let err = KPartiteGraph::parse_kpg("p kpg 4 0 2\nq 2 3\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn duplicate_header_rejected() {
        let err = KPartiteGraph::parse_kpg("p kpg 2 0 2\np kpg 2 0 2\nq 1 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn parse_rejects_intra_part_edge_with_line() {
        let err = KPartiteGraph::parse_kpg("c hello\np kpg 3 1 2\nq 2 1\ne 0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn gzip_input_is_transparent() {
        use std::io::Write;
        let g = complete(&[2, 3]);
        let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::fast());
        enc.write_all(g.write_kpg().as_bytes()).unwrap();
        let bytes = enc.finish().unwrap();
        assert_eq!(KPartiteGraph::read_kpg(&bytes[..]).unwrap(), g);
    }
}
