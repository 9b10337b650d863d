use std::time::Instant;

use super::{scan, Clique, DEADLINE_STRIDE};
use crate::bitgraph::KPartiteGraph;

/// Number of levels, counted from the root, at which the candidates are
/// re-sorted by neighbor count on entry.
pub const DEFAULT_PREC_DEPTH: usize = 5;

const WORD_BITS: usize = 64;

struct Frame {
    active: Vec<u64>,
    range: (usize, usize),
    counts: Vec<u32>,
    order: Vec<u32>,
    pos: usize,
    pending: Option<u32>,
    prec: usize,
}

impl Frame {
    fn new(words: usize, k: usize, n: usize) -> Self {
        Frame {
            active: vec![0; words],
            range: (0, 0),
            counts: vec![0; k],
            order: Vec::with_capacity(n),
            pos: 0,
            pending: None,
            prec: 0,
        }
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.active[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.active[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    fn next_active(&mut self) -> Option<usize> {
        while self.pos < self.order.len() {
            let v = self.order[self.pos] as usize;
            self.pos += 1;
            if self.contains(v) {
                return Some(v);
            }
        }
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Finished,
}

/// Lazy k-clique enumeration for k-partite graphs.
///
/// Each level keeps the surviving vertices as a bitset. Vertices are tried
/// in increasing order of their number of surviving neighbors and dropped
/// once their subtree is exhausted. Sorting also drops vertices that miss a
/// part entirely. A level whose part shrinks to one vertex is re-sorted, and
/// a level whose part runs empty is abandoned.
///
/// All scratch space is allocated in [`Kpkc::new`]; see
/// [`Kpkc::scratch_allocations`].
pub struct Kpkc<'g> {
    g: &'g KPartiteGraph,
    frames: Vec<Frame>,
    keyed: Vec<(u32, u32)>,
    depth: usize,
    clique: Vec<usize>,
    done: Vec<bool>,
    state: State,
    prec_depth: usize,
    deadline: Option<Instant>,
    timed_out: bool,
    tick: u32,
    nodes: u64,
    allocations: usize,
}

impl<'g> Kpkc<'g> {
    pub fn new(g: &'g KPartiteGraph) -> Self {
        let (n, k) = (g.n(), g.k());
        let words = n.div_ceil(WORD_BITS);
        let frames: Vec<Frame> = (0..k).map(|_| Frame::new(words, k, n)).collect();
        Kpkc {
            g,
            allocations: 3 * frames.len() + 1,
            frames,
            keyed: Vec::with_capacity(n),
            depth: 0,
            clique: Vec::with_capacity(k),
            done: vec![false; k],
            state: State::Fresh,
            prec_depth: DEFAULT_PREC_DEPTH,
            deadline: None,
            timed_out: false,
            tick: 0,
            nodes: 0,
        }
    }

    pub fn with_prec_depth(mut self, prec_depth: usize) -> Self {
        self.prec_depth = prec_depth;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Search nodes entered so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Scratch buffers allocated since construction, including the initial
    /// ones. The count does not change while iterating.
    pub fn scratch_allocations(&self) -> usize {
        self.allocations
    }

    /// Sorts the candidates of frame `f` by surviving neighbor count and
    /// drops vertices that miss an open part. With `fixpoint`, repeats until
    /// a pass drops nothing. Returns `false` if an open part ran empty.
    fn sort(&mut self, f: usize, fixpoint: bool) -> bool {
        let Kpkc { g, frames, keyed, done, .. } = self;
        let bounds = g.bounds();
        let frame = &mut frames[f];
        loop {
            let mut dropped = false;
            keyed.clear();
            for wi in frame.range.0..frame.range.1 {
                let mut word = frame.active[wi];
                while word != 0 {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    let v = wi * WORD_BITS + bit;
                    let p = g.part(v);
                    match scan::weight(g.neighbors(v).words(), &frame.active, bounds, done, p) {
                        Some(w) => keyed.push((w, v as u32)),
                        None => {
                            frame.active[wi] &= !(1u64 << bit);
                            frame.counts[p] -= 1;
                            if frame.counts[p] == 0 {
                                return false;
                            }
                            dropped = true;
                        }
                    }
                }
            }
            if !(dropped && fixpoint) {
                break;
            }
        }
        keyed.sort_unstable();
        frame.order.clear();
        frame.order.extend(keyed.iter().map(|&(_, v)| v));
        frame.pos = 0;
        frame.range = scan::shrink(&frame.active, frame.range.0, frame.range.1);
        true
    }

    fn start(&mut self) -> Option<Clique> {
        self.state = State::Running;
        let g = self.g;
        if g.k() == 0 {
            self.state = State::Finished;
            return Some(Clique(Vec::new()));
        }
        if g.part_sizes().contains(&0) {
            self.state = State::Finished;
            return None;
        }
        let root = &mut self.frames[0];
        for v in 0..g.n() {
            root.active[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        }
        root.range = (0, root.active.len());
        for (q, c) in root.counts.iter_mut().enumerate() {
            *c = g.part_size(q) as u32;
        }
        root.prec = self.prec_depth;
        root.pending = None;
        root.order.clear();
        root.pos = 0;
        self.nodes = 1;
        if self.prec_depth > 0 {
            if !self.sort(0, true) {
                self.state = State::Finished;
                return None;
            }
        } else {
            self.frames[0].order.extend(0..g.n() as u32);
        }
        self.depth = 1;
        self.run()
    }

    fn out_of_time(&mut self) -> bool {
        let Some(deadline) = self.deadline else { return false };
        self.tick += 1;
        if self.tick < DEADLINE_STRIDE {
            return false;
        }
        self.tick = 0;
        if Instant::now() >= deadline {
            self.timed_out = true;
            return true;
        }
        false
    }

    fn run(&mut self) -> Option<Clique> {
        let g = self.g;
        let k = g.k();
        let bounds = g.bounds();
        loop {
            if self.depth == 0 {
                self.state = State::Finished;
                return None;
            }
            if self.out_of_time() {
                self.state = State::Finished;
                return None;
            }
            let f = self.depth - 1;
            if let Some(v) = self.frames[f].pending.take() {
                let v = v as usize;
                let p = g.part(v);
                self.clique.pop();
                self.done[p] = false;
                let frame = &mut self.frames[f];
                frame.remove(v);
                frame.counts[p] -= 1;
                let left = frame.counts[p];
                match left {
                    0 => {
                        self.depth -= 1;
                        continue;
                    }
                    1 if !self.sort(f, false) => {
                        self.depth -= 1;
                        continue;
                    }
                    _ => {}
                }
            }
            let Some(v) = self.frames[f].next_active() else {
                self.depth -= 1;
                continue;
            };
            let p = g.part(v);
            self.frames[f].pending = Some(v as u32);
            self.clique.push(v);
            self.done[p] = true;
            if self.clique.len() == k {
                return Some(Clique::canonical(self.clique.clone()));
            }

            let (head, tail) = self.frames.split_at_mut(f + 1);
            let (parent, child) = (&head[f], &mut tail[0]);
            let row = g.neighbors(v).words();
            let (lo, hi) = parent.range;
            scan::intersect_into(&mut child.active, child.range, &parent.active, row, lo, hi);
            child.range = scan::shrink(&child.active, lo, hi);
            if !scan::part_counts(&child.active, bounds, &self.done, &mut child.counts) {
                continue;
            }
            child.prec = parent.prec.saturating_sub(1);
            child.pending = None;
            child.pos = 0;
            self.nodes += 1;
            if child.prec > 0 {
                if !self.sort(f + 1, false) {
                    continue;
                }
            } else {
                let Frame { active, order, .. } = child;
                order.clear();
                order.extend(
                    parent.order[parent.pos..].iter().copied().filter(|&u| active[u as usize / WORD_BITS] >> (u as usize % WORD_BITS) & 1 == 1),
                );
            }
            self.depth += 1;
        }
    }
}

impl Iterator for Kpkc<'_> {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        match self.state {
            State::Fresh => self.start(),
            State::Running => self.run(),
            State::Finished => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(sizes: &[usize], edges: &[(usize, usize)]) -> KPartiteGraph {
        KPartiteGraph::build(sizes, edges).unwrap()
    }

    #[test]
    fn triangle_in_three_singletons() {
        let g = graph(&[1, 1, 1], &[(0, 1), (0, 2), (1, 2)]);
        let all: Vec<_> = Kpkc::new(&g).collect();
        assert_eq!(all, vec![Clique(vec![0, 1, 2])]);
    }

    #[test]
    fn missing_edge_kills_the_only_candidate() {
        let g = graph(&[1, 1, 1], &[(0, 1), (0, 2)]);
        assert_eq!(Kpkc::new(&g).count(), 0);
    }

    #[test]
    fn every_prec_depth_finds_the_same_cliques() {
        // parts {0,1} {2,3} {4,5}; vertex 1 only sees part 1
        let edges = [(0, 2), (0, 3), (0, 4), (2, 4), (3, 4), (3, 5), (0, 5), (1, 2), (1, 3)];
        let g = graph(&[2, 2, 2], &edges);
        let reference: Vec<_> = {
            let mut v: Vec<_> = Kpkc::new(&g).with_prec_depth(0).collect();
            v.sort();
            v
        };
        assert_eq!(reference, vec![Clique(vec![0, 2, 4]), Clique(vec![0, 3, 4]), Clique(vec![0, 3, 5])]);
        for d in 1..8 {
            let mut v: Vec<_> = Kpkc::new(&g).with_prec_depth(d).collect();
            v.sort();
            assert_eq!(v, reference, "prec_depth {d}");
        }
    }

    #[test]
    fn no_scratch_growth_while_iterating() {
        let sizes = [3, 3, 3, 3];
        let g0 = KPartiteGraph::empty_with_parts(&sizes);
        let edges: Vec<_> = (0..12)
            .flat_map(|u| (u + 1..12).map(move |v| (u, v)))
            .filter(|&(u, v)| g0.part(u) != g0.part(v) && (u + v) % 5 != 0)
            .collect();
        let g = graph(&sizes, &edges);
        let mut it = Kpkc::new(&g);
        let before = it.scratch_allocations();
        let found = it.by_ref().count();
        assert!(found > 0);
        assert_eq!(it.scratch_allocations(), before);
    }

    #[test]
    fn expired_deadline_reports_timeout() {
        let sizes = [4usize; 8];
        let g0 = KPartiteGraph::empty_with_parts(&sizes);
        let n = g0.n();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| g0.part(u) != g0.part(v))
            .collect();
        let g = graph(&sizes, &edges);
        let mut it = Kpkc::new(&g).with_deadline(Some(Instant::now()));
        let seen = it.by_ref().count();
        assert!(it.timed_out());
        assert!(seen < 4usize.pow(8));
    }
}
