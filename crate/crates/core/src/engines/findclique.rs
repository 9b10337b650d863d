use std::time::Instant;

use super::{scan, Clique, DEADLINE_STRIDE};
use crate::bitgraph::KPartiteGraph;

const WORD_BITS: usize = 64;

struct Frame {
    active: Vec<u64>,
    range: (usize, usize),
    counts: Vec<u32>,
    candidates: Vec<u32>,
    pos: usize,
    pending: Option<u32>,
}

/// Lazy k-clique enumeration that branches on every surviving vertex of a
/// smallest open part (lowest index on ties).
pub struct FindClique<'g> {
    g: &'g KPartiteGraph,
    frames: Vec<Frame>,
    depth: usize,
    clique: Vec<usize>,
    done: Vec<bool>,
    started: bool,
    finished: bool,
    deadline: Option<Instant>,
    timed_out: bool,
    tick: u32,
}

impl<'g> FindClique<'g> {
    pub fn new(g: &'g KPartiteGraph) -> Self {
        let (n, k) = (g.n(), g.k());
        let words = n.div_ceil(WORD_BITS);
        FindClique {
            g,
            frames: (0..k)
                .map(|_| Frame {
                    active: vec![0; words],
                    range: (0, 0),
                    counts: vec![0; k],
                    candidates: Vec::new(),
                    pos: 0,
                    pending: None,
                })
                .collect(),
            depth: 0,
            clique: Vec::with_capacity(k),
            done: vec![false; k],
            started: false,
            finished: false,
            deadline: None,
            timed_out: false,
            tick: 0,
        }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Fills the candidate list of `frame` with the survivors of its
    /// smallest open part; `false` if that part is empty.
    fn pick_part(g: &KPartiteGraph, frame: &mut Frame, done: &[bool]) -> bool {
        let best = (0..frame.counts.len()).filter(|&q| !done[q]).min_by_key(|&q| (frame.counts[q], q));
        let Some(q) = best else { return false };
        if frame.counts[q] == 0 {
            return false;
        }
        frame.candidates.clear();
        frame.candidates.extend(
            g.part_range(q).filter(|&v| frame.active[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1).map(|v| v as u32),
        );
        frame.pos = 0;
        frame.pending = None;
        true
    }

    fn start(&mut self) -> Option<Clique> {
        self.started = true;
        let g = self.g;
        if g.k() == 0 {
            self.finished = true;
            return Some(Clique(Vec::new()));
        }
        let root = &mut self.frames[0];
        for v in 0..g.n() {
            root.active[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        }
        root.range = (0, root.active.len());
        for (q, c) in root.counts.iter_mut().enumerate() {
            *c = g.part_size(q) as u32;
        }
        if !Self::pick_part(g, root, &self.done) {
            self.finished = true;
            return None;
        }
        self.depth = 1;
        self.run()
    }

    fn run(&mut self) -> Option<Clique> {
        let g = self.g;
        let k = g.k();
        loop {
            if self.depth == 0 {
                self.finished = true;
                return None;
            }
            if let Some(deadline) = self.deadline {
                self.tick += 1;
                if self.tick >= DEADLINE_STRIDE {
                    self.tick = 0;
                    if Instant::now() >= deadline {
                        self.timed_out = true;
                        self.finished = true;
                        return None;
                    }
                }
            }
            let f = self.depth - 1;
            if let Some(v) = self.frames[f].pending.take() {
                self.clique.pop();
                self.done[g.part(v as usize)] = false;
            }
            let frame = &mut self.frames[f];
            if frame.pos == frame.candidates.len() {
                self.depth -= 1;
                continue;
            }
            let v = frame.candidates[frame.pos] as usize;
            frame.pos += 1;
            frame.pending = Some(v as u32);
            self.clique.push(v);
            self.done[g.part(v)] = true;
            if self.clique.len() == k {
                return Some(Clique::canonical(self.clique.clone()));
            }
            let (head, tail) = self.frames.split_at_mut(f + 1);
            let (parent, child) = (&head[f], &mut tail[0]);
            let (lo, hi) = parent.range;
            scan::intersect_into(&mut child.active, child.range, &parent.active, g.neighbors(v).words(), lo, hi);
            child.range = scan::shrink(&child.active, lo, hi);
            scan::part_counts(&child.active, g.bounds(), &self.done, &mut child.counts);
            if Self::pick_part(g, child, &self.done) {
                self.depth += 1;
            }
        }
    }
}

impl Iterator for FindClique<'_> {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        if self.finished {
            return None;
        }
        if !self.started {
            return self.start();
        }
        self.run()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_on_the_smallest_part() {
        let g = KPartiteGraph::build(&[3, 1], &[(0, 3), (2, 3)]).unwrap();
        let mut it = FindClique::new(&g);
        assert_eq!(it.next(), Some(Clique(vec![0, 3])));
        assert_eq!(it.next(), Some(Clique(vec![2, 3])));
        assert_eq!(it.next(), None);
        assert!(!it.timed_out());
    }
}
