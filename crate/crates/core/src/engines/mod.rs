//! k-clique finders for k-partite graphs.
//!
//! [`Kpkc`] branches on vertices in increasing order of their neighbor count
//! and discards each vertex after its subtree. [`FindClique`] branches on
//! every vertex of a smallest remaining part. [`brute_cliques`] enumerates
//! the cartesian product of the parts and is the test oracle for both.

mod brute;
mod findclique;
mod kpkc;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use brute::{brute_cliques, BruteError, BRUTE_LIMIT};
pub use findclique::FindClique;
pub use kpkc::{Kpkc, DEFAULT_PREC_DEPTH};

use crate::bitgraph::KPartiteGraph;

/// One vertex per part, listed by part index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(pub Vec<usize>);

impl Clique {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Sorts by part index; parts are contiguous id ranges, so this is an
    /// id sort.
    fn canonical(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        Clique(vertices)
    }

    /// Exactly one vertex per part and all pairs adjacent in `g`.
    pub fn is_valid_in(&self, g: &KPartiteGraph) -> bool {
        if self.0.len() != g.k() || self.0.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let parts_ok = self.0.iter().enumerate().all(|(i, &v)| g.part(v) == i);
        parts_ok && self.0.iter().enumerate().all(|(x, &u)| self.0[x + 1..].iter().all(|&v| g.are_adjacent(u, v)))
    }
}

impl fmt::Debug for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clique{:?}", self.0)
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", ids.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Kpkc,
    FindClique,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Kpkc => "kpkc",
            Algorithm::FindClique => "findclique",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kpkc" => Ok(Algorithm::Kpkc),
            "findclique" => Ok(Algorithm::FindClique),
            "brute" => Ok(Algorithm::Brute),
            other => Err(format!("unknown algorithm {other:?} (expected kpkc, findclique or brute)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A k-clique, re-verified edge by edge.
    Found(Clique),
    /// The search was exhausted without finding a k-clique.
    NotFound,
    Timeout,
}

/// Iterators that can stop at a deadline report it here, so that an early
/// end of iteration is never mistaken for an exhausted search.
pub trait CliqueSearch: Iterator<Item = Clique> {
    fn timed_out(&self) -> bool;
}

impl CliqueSearch for Kpkc<'_> {
    fn timed_out(&self) -> bool {
        Kpkc::timed_out(self)
    }
}

impl CliqueSearch for FindClique<'_> {
    fn timed_out(&self) -> bool {
        FindClique::timed_out(self)
    }
}

/// Boxed search over `g` with the chosen algorithm. The brute-force oracle
/// materializes its result first and ignores the deadline beyond a check
/// before it starts.
pub fn search<'g>(
    g: &'g KPartiteGraph,
    algorithm: Algorithm,
    deadline: Option<Instant>,
) -> Result<Box<dyn CliqueSearch + 'g>, BruteError> {
    Ok(match algorithm {
        Algorithm::Kpkc => Box::new(Kpkc::new(g).with_deadline(deadline)),
        Algorithm::FindClique => Box::new(FindClique::new(g).with_deadline(deadline)),
        Algorithm::Brute => Box::new(BruteSearch { inner: brute_cliques(g)?.into_iter() }),
    })
}

struct BruteSearch {
    inner: std::collections::btree_set::IntoIter<Clique>,
}

impl Iterator for BruteSearch {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        self.inner.next()
    }
}

impl CliqueSearch for BruteSearch {
    fn timed_out(&self) -> bool {
        false
    }
}

/// Looks for one k-clique. A `Found` witness has been re-checked pair by
/// pair; `NotFound` is only returned after an exhaustive search.
pub fn has_kclique(g: &KPartiteGraph, algorithm: Algorithm, timeout: Option<Duration>) -> Result<SearchOutcome, BruteError> {
    let deadline = timeout.map(|t| Instant::now() + t);
    let mut it = search(g, algorithm, deadline)?;
    match it.next() {
        Some(c) => {
            assert!(c.is_valid_in(g), "{algorithm} produced an invalid clique {c:?}");
            Ok(SearchOutcome::Found(c))
        }
        None if it.timed_out() => Ok(SearchOutcome::Timeout),
        None => Ok(SearchOutcome::NotFound),
    }
}

/// Result of counting all k-cliques under a deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountOutcome {
    Complete(u64),
    Timeout(u64),
}

pub fn count_cliques(g: &KPartiteGraph, algorithm: Algorithm, timeout: Option<Duration>) -> Result<CountOutcome, BruteError> {
    let deadline = timeout.map(|t| Instant::now() + t);
    let mut it = search(g, algorithm, deadline)?;
    let count = it.by_ref().count() as u64;
    Ok(if it.timed_out() { CountOutcome::Timeout(count) } else { CountOutcome::Complete(count) })
}

/// All cliques found by an algorithm, as a set.
pub fn clique_set(g: &KPartiteGraph, algorithm: Algorithm) -> Result<BTreeSet<Clique>, BruteError> {
    Ok(search(g, algorithm, None)?.collect())
}

/// Remaining deadline checks happen every `DEADLINE_STRIDE` steps.
pub(crate) const DEADLINE_STRIDE: u32 = 1 << 10;

/// Shared helpers for the bitset searches.
pub(crate) mod scan {
    use crate::bitgraph::{range_and_popcount, range_popcount};

    /// Nonzero word range of `words` within `lo..hi`, shrunk from both ends.
    #[inline]
    pub fn shrink(words: &[u64], mut lo: usize, mut hi: usize) -> (usize, usize) {
        while lo < hi && words[lo] == 0 {
            lo += 1;
        }
        while hi > lo && words[hi - 1] == 0 {
            hi -= 1;
        }
        (lo, hi)
    }

    /// Writes `parent & row` into `child` over `lo..hi` and zeroes the rest
    /// of the previous child range.
    #[inline]
    pub fn intersect_into(child: &mut [u64], child_prev: (usize, usize), parent: &[u64], row: &[u64], lo: usize, hi: usize) {
        for w in &mut child[child_prev.0..child_prev.1] {
            *w = 0;
        }
        for i in lo..hi {
            child[i] = parent[i] & row[i];
        }
    }

    /// Per-part popcounts of `active` written to `counts` for parts not yet
    /// covered; returns `false` if such a part has no active vertex.
    #[inline]
    pub fn part_counts(active: &[u64], bounds: &[usize], done: &[bool], counts: &mut [u32]) -> bool {
        let mut ok = true;
        for q in 0..counts.len() {
            if done[q] {
                counts[q] = 0;
                continue;
            }
            let c = range_popcount(active, bounds[q], bounds[q + 1]) as u32;
            counts[q] = c;
            ok &= c > 0;
        }
        ok
    }

    /// Number of active neighbors of a vertex with adjacency `row`, or
    /// `None` if the vertex has no active neighbor in some open part other
    /// than its own.
    #[inline]
    pub fn weight(row: &[u64], active: &[u64], bounds: &[usize], done: &[bool], own: usize) -> Option<u32> {
        let mut total = 0u32;
        for q in 0..done.len() {
            if done[q] || q == own {
                continue;
            }
            let c = range_and_popcount(row, active, bounds[q], bounds[q + 1]) as u32;
            if c == 0 {
                return None;
            }
            total += c;
        }
        Some(total)
    }
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
    fn complete_tripartite_has_eight_cliques_everywhere() {
        let g = complete(&[2, 2, 2]);
        let k = clique_set(&g, Algorithm::Kpkc).unwrap();
        let f = clique_set(&g, Algorithm::FindClique).unwrap();
        let b = clique_set(&g, Algorithm::Brute).unwrap();
        assert_eq!(k.len(), 8);
        assert_eq!(k, f);
        assert_eq!(k, b);
    }

    #[test]
    fn edgeless_pair_has_no_clique() {
        let g = KPartiteGraph::build(&[1, 1], &[]).unwrap();
        for alg in [Algorithm::Kpkc, Algorithm::FindClique, Algorithm::Brute] {
            assert_eq!(has_kclique(&g, alg, None).unwrap(), SearchOutcome::NotFound);
        }
    }

    #[test]
    fn zero_parts_yield_the_empty_clique_once() {
        let g = KPartiteGraph::build(&[], &[]).unwrap();
        for alg in [Algorithm::Kpkc, Algorithm::FindClique, Algorithm::Brute] {
            let all: Vec<_> = search(&g, alg, None).unwrap().collect();
            assert_eq!(all, vec![Clique(vec![])], "{alg}");
        }
    }

    #[test]
    fn empty_part_yields_nothing() {
        let g = KPartiteGraph::empty_with_parts(&[2, 0, 3]);
        for alg in [Algorithm::Kpkc, Algorithm::FindClique, Algorithm::Brute] {
            assert_eq!(search(&g, alg, None).unwrap().count(), 0, "{alg}");
        }
    }

    #[test]
    fn witness_reverifies() {
        let g = complete(&[2, 2, 2]);
        match has_kclique(&g, Algorithm::Kpkc, None).unwrap() {
            SearchOutcome::Found(c) => assert!(c.is_valid_in(&g)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn algorithm_names_parse() {
        for alg in [Algorithm::Kpkc, Algorithm::FindClique, Algorithm::Brute] {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("cliquer".parse::<Algorithm>().is_err());
    }
}
