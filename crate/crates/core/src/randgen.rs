//! Random k-partite graphs for benchmarking.
//!
//! Both families draw from `ChaCha8Rng` seeded with `seed_from_u64`, in a
//! fixed order: part sizes, then one probability per vertex in id order
//! (Grünert only), then one coin per cross-part pair `(u, v)`, `u < v`, in
//! lexicographic order. The same seed gives the same graph.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitgraph::KPartiteGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("part sizes must satisfy 1 <= min_p <= max_p, got {min_p}..={max_p}")]
    PartSizes { min_p: usize, max_p: usize },
    #[error("probabilities must satisfy 0 <= a <= b <= 1, got a={a} b={b}")]
    Probabilities { a: f64, b: f64 },
}

/// Parts of uniform random size in `min_p..=max_p`; vertex `v` draws
/// `p_v` uniformly from `[a, b]` and `v, w` are joined with probability
/// `(p_v + p_w) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrunertParams {
    pub k: usize,
    pub min_p: usize,
    pub max_p: usize,
    pub a: f64,
    pub b: f64,
    pub seed: u64,
}

impl GrunertParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.min_p == 0 || self.min_p > self.max_p {
            return Err(ParamsError::PartSizes { min_p: self.min_p, max_p: self.max_p });
        }
        if !(0.0 <= self.a && self.a <= self.b && self.b <= 1.0) {
            return Err(ParamsError::Probabilities { a: self.a, b: self.b });
        }
        Ok(())
    }
}

impl fmt::Display for GrunertParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} p={}..{} a={} b={} seed={}", self.k, self.min_p, self.max_p, self.a, self.b, self.seed)
    }
}

/// Part `i` (1-based) has `1 + ⌊i (max_p - 1) / k⌋` vertices. Parts of sizes
/// `s, t` are joined with probability `f(min(s, t))`, `f` affine with
/// `f(1) = 1` and `f(max_p) = a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RareAttractionParams {
    pub k: usize,
    pub max_p: usize,
    pub a: f64,
    pub seed: u64,
}

impl RareAttractionParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.max_p == 0 {
            return Err(ParamsError::PartSizes { min_p: 1, max_p: 0 });
        }
        if !(0.0..=1.0).contains(&self.a) {
            return Err(ParamsError::Probabilities { a: self.a, b: 1.0 });
        }
        Ok(())
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        (1..=self.k).map(|i| 1 + i * (self.max_p - 1) / self.k).collect()
    }

    /// Edge probability between parts whose smaller size is `s`.
    pub fn probability(&self, s: usize) -> f64 {
        if self.max_p == 1 {
            return 1.0;
        }
        let t = (s - 1) as f64 / (self.max_p - 1) as f64;
        1.0 + t * (self.a - 1.0)
    }
}

impl fmt::Display for RareAttractionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} max_p={} a={} seed={}", self.k, self.max_p, self.a, self.seed)
    }
}

fn coin(rng: &mut ChaCha8Rng, p: f64) -> bool {
    rng.random::<f64>() < p
}

fn fill_edges(sizes: &[usize], rng: &mut ChaCha8Rng, mut p: impl FnMut(usize, usize) -> f64) -> KPartiteGraph {
    let mut g = KPartiteGraph::empty_with_parts(sizes);
    let n = g.n();
    for u in 0..n {
        for v in g.part_range(g.part(u)).end..n {
            if coin(rng, p(u, v)) {
                g.add_edge(u, v).expect("cross-part pair");
            }
        }
    }
    g
}

pub fn gen_grunert(p: &GrunertParams) -> Result<KPartiteGraph, ParamsError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let sizes: Vec<usize> = (0..p.k).map(|_| rng.random_range(p.min_p..=p.max_p)).collect();
    let n: usize = sizes.iter().sum();
    let pv: Vec<f64> = (0..n).map(|_| p.a + (p.b - p.a) * rng.random::<f64>()).collect();
    Ok(fill_edges(&sizes, &mut rng, |u, v| (pv[u] + pv[v]) / 2.0))
}

pub fn gen_rare(p: &RareAttractionParams) -> Result<KPartiteGraph, ParamsError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let sizes = p.part_sizes();
    let part_of: Vec<usize> = sizes.iter().enumerate().flat_map(|(q, &s)| std::iter::repeat_n(q, s)).collect();
    Ok(fill_edges(&sizes, &mut rng, |u, v| p.probability(sizes[part_of[u]].min(sizes[part_of[v]]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grunert(k: usize, min_p: usize, max_p: usize, a: f64, b: f64, seed: u64) -> KPartiteGraph {
        gen_grunert(&GrunertParams { k, min_p, max_p, a, b, seed }).unwrap()
    }

    #[test]
    fn fixed_size_parts() {
        assert_eq!(grunert(5, 50, 50, 0.3, 0.6, 1).part_sizes(), vec![50; 5]);
    }

    #[test]
    fn probability_one_is_complete() {
        let g = grunert(4, 2, 5, 1.0, 1.0, 9);
        let sizes = g.part_sizes();
        let n: usize = sizes.iter().sum();
        let cross = (n * n - sizes.iter().map(|s| s * s).sum::<usize>()) / 2;
        assert_eq!(g.edge_count(), cross);
    }

    #[test]
    fn density_matches_the_binomial_model() {
        let mut edges = 0usize;
        let mut pairs = 0usize;
        for seed in 0..30 {
            let g = grunert(5, 50, 50, 0.2, 0.2, seed);
            edges += g.edge_count();
            pairs += 10 * 50 * 50;
        }
        let (n, p) = (pairs as f64, 0.2);
        let sd = (n * p * (1.0 - p)).sqrt();
        assert!((edges as f64 - n * p).abs() < 4.0 * sd, "{edges} of {pairs}");
    }

    #[test]
    fn rare_sizes() {
        let p = RareAttractionParams { k: 5, max_p: 10, a: 0.1, seed: 0 };
        assert_eq!(p.part_sizes(), vec![2, 4, 6, 8, 10]);
        let p = RareAttractionParams { k: 50, max_p: 50, a: 0.1, seed: 0 };
        assert_eq!(p.part_sizes()[49], 50);
        assert!(p.part_sizes().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn affine_probability_endpoints() {
        let p = RareAttractionParams { k: 3, max_p: 7, a: 0.25, seed: 0 };
        assert_eq!(p.probability(1), 1.0);
        assert!((p.probability(7) - 0.25).abs() < 1e-12);
        let one = RareAttractionParams { k: 3, max_p: 1, a: 0.0, seed: 0 };
        assert_eq!(one.probability(1), 1.0);
    }

    #[test]
    fn singleton_part_sees_everything() {
        let p = RareAttractionParams { k: 20, max_p: 6, a: 0.0, seed: 3 };
        let g = gen_rare(&p).unwrap();
        let sizes = g.part_sizes();
        for q in (0..g.k()).filter(|&q| sizes[q] == 1) {
            let v = g.part_range(q).start;
            assert_eq!(g.degree(v), g.n() - 1);
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let p = GrunertParams { k: 6, min_p: 3, max_p: 9, a: 0.3, b: 0.8, seed: 77 };
        assert_eq!(gen_grunert(&p).unwrap().write_kpg(), gen_grunert(&p).unwrap().write_kpg());
        let r = RareAttractionParams { k: 12, max_p: 9, a: 0.4, seed: 5 };
        assert_eq!(gen_rare(&r).unwrap().write_kpg(), gen_rare(&r).unwrap().write_kpg());
    }

    #[test]
    fn rejects_bad_params() {
        let p = GrunertParams { k: 3, min_p: 4, max_p: 2, a: 0.1, b: 0.2, seed: 0 };
        assert!(gen_grunert(&p).is_err());
        let p = GrunertParams { k: 3, min_p: 1, max_p: 2, a: 0.5, b: 0.2, seed: 0 };
        assert!(gen_grunert(&p).is_err());
        assert!(gen_rare(&RareAttractionParams { k: 3, max_p: 0, a: 0.5, seed: 0 }).is_err());
    }
}
