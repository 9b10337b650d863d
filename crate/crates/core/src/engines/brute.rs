use std::collections::BTreeSet;

use thiserror::Error;

use super::Clique;
use crate::bitgraph::KPartiteGraph;

/// Largest cartesian product the oracle will walk.
pub const BRUTE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BruteError {
    #[error("brute force would visit {0} tuples, more than the limit of {BRUTE_LIMIT}")]
    TooLarge(u128),
}

/// Every k-clique, found by checking each tuple of the product of the parts.
pub fn brute_cliques(g: &KPartiteGraph) -> Result<BTreeSet<Clique>, BruteError> {
    let sizes = g.part_sizes();
    let product = sizes.iter().try_fold(1u128, |acc, &s| acc.checked_mul(s as u128)).unwrap_or(u128::MAX);
    if product > BRUTE_LIMIT {
        return Err(BruteError::TooLarge(product));
    }
    let mut out = BTreeSet::new();
    if sizes.contains(&0) {
        return Ok(out);
    }
    let k = sizes.len();
    let mut choice = vec![0usize; k];
    loop {
        let tuple: Vec<usize> = (0..k).map(|q| g.part_range(q).start + choice[q]).collect();
        let ok = (0..k).all(|x| (x + 1..k).all(|y| g.are_adjacent(tuple[x], tuple[y])));
        if ok {
            out.insert(Clique(tuple));
        }
        let mut q = k;
        loop {
            if q == 0 {
                return Ok(out);
            }
            q -= 1;
            choice[q] += 1;
            if choice[q] < sizes[q] {
                break;
            }
            choice[q] = 0;
        }
    }
}
