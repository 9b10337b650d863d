//! Color partitions, Tverberg partitions and the rainbow test.
//!
//! Subsets of the ten points are `u16` bitmasks. Rainbow testing compares
//! "same piece" and "same class" pair masks: a partition is rainbow for a
//! coloring iff no pair of points shares both a piece and a color class.

use std::fmt;

use crate::chirotope::IntersectionQuad;

pub const POINTS: usize = 10;

/// Index of the unordered pair `{i, j}` among the 45 pairs of `0..10`.
const fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // pairs (0,1)..(0,9), (1,2).., lexicographic
    i * (2 * POINTS - i - 1) / 2 + (j - i - 1)
}

/// Bitmask over the 45 pairs of elements that both lie in `set`.
pub fn pair_mask(set: u16) -> u64 {
    let mut mask = 0u64;
    let mut rest = set;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            mask |= 1 << pair_index(i, j);
        }
    }
    mask
}

fn members(set: u16) -> Vec<usize> {
    (0..16).filter(|&i| set >> i & 1 == 1).collect()
}

fn min_elem(set: u16) -> u32 {
    set.trailing_zeros()
}

/// Orders blocks by size descending, then by smallest element.
fn canonical_blocks(blocks: &mut [u16]) {
    blocks.sort_by_key(|&b| (std::cmp::Reverse(b.count_ones()), min_elem(b)));
}

/// A partition of `0..10` into color classes of size at most 3, with no two
/// classes mergeable (profiles 3331, 3322 and 22222).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPartition {
    classes: Vec<u16>,
}

impl ColorPartition {
    /// Builds a canonical color partition. Returns `None` unless `classes`
    /// partition `0..10` into one of the three admissible profiles.
    pub fn new(classes: &[Vec<usize>]) -> Option<Self> {
        let mut masks = Vec::with_capacity(classes.len());
        let mut seen = 0u16;
        for class in classes {
            let mut m = 0u16;
            for &x in class {
                if x >= POINTS || m >> x & 1 == 1 {
                    return None;
                }
                m |= 1 << x;
            }
            if m & seen != 0 || m == 0 {
                return None;
            }
            seen |= m;
            masks.push(m);
        }
        if seen != (1 << POINTS) - 1 {
            return None;
        }
        canonical_blocks(&mut masks);
        let cp = ColorPartition { classes: masks };
        Profile::of(&cp.sizes()).map(|_| cp)
    }

    pub fn classes(&self) -> &[u16] {
        &self.classes
    }

    pub fn class_members(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|&c| members(c)).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.count_ones() as usize).collect()
    }

    pub fn profile(&self) -> Profile {
        Profile::of(&self.sizes()).expect("constructed with admissible profile")
    }

    /// Pairs of points sharing a color class.
    pub fn same_color_mask(&self) -> u64 {
        self.classes.iter().fold(0, |m, &c| m | pair_mask(c))
    }
}

impl fmt::Debug for ColorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_blocks(&self.classes))
    }
}

impl fmt::Display for ColorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn fmt_blocks(blocks: &[u16]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|&b| format!("{{{}}}", members(b).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("({})", inner.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    P3331,
    P3322,
    P22222,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::P3331, Profile::P3322, Profile::P22222];

    fn of(sizes: &[usize]) -> Option<Profile> {
        match sizes {
            [3, 3, 3, 1] => Some(Profile::P3331),
            [3, 3, 2, 2] => Some(Profile::P3322),
            [2, 2, 2, 2, 2] => Some(Profile::P22222),
            _ => None,
        }
    }

    pub fn sizes(self) -> &'static [usize] {
        match self {
            Profile::P3331 => &[3, 3, 3, 1],
            Profile::P3322 => &[3, 3, 2, 2],
            Profile::P22222 => &[2, 2, 2, 2, 2],
        }
    }
}

/// All set partitions of the elements of `universe` whose block-size
/// multiset equals `sizes` (descending), as raw block lists.
fn partitions_with_sizes(universe: u16, sizes: &[usize]) -> Vec<Vec<u16>> {
    fn rec(remaining: u16, sizes: &mut Vec<usize>, current: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if remaining == 0 {
            if sizes.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let first = remaining & remaining.wrapping_neg();
        let others = remaining & !first;
        let mut tried = Vec::new();
        for idx in 0..sizes.len() {
            let size = sizes[idx];
            if tried.contains(&size) {
                continue;
            }
            tried.push(size);
            sizes.remove(idx);
            for extra in subsets_of_size(others, size - 1) {
                current.push(first | extra);
                rec(remaining & !(first | extra), sizes, current, out);
                current.pop();
            }
            sizes.insert(idx, size);
        }
    }
    let mut out = Vec::new();
    rec(universe, &mut sizes.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Subsets of `set` with exactly `size` elements, ascending as integers.
pub(crate) fn subsets_of_size(set: u16, size: usize) -> Vec<u16> {
    let elems = members(set);
    let mut out = Vec::new();
    fn rec(elems: &[usize], start: usize, size: usize, acc: u16, out: &mut Vec<u16>) {
        if size == 0 {
            out.push(acc);
            return;
        }
        for i in start..elems.len() {
            if elems.len() - i < size {
                break;
            }
            rec(elems, i + 1, size - 1, acc | 1 << elems[i], out);
        }
    }
    rec(&elems, 0, size, 0, &mut out);
    out
}

/// All 10,045 admissible color partitions: profile 3331 first, then 3322,
/// then 22222; within a profile, by canonical class list.
pub fn enumerate_color_partitions() -> Vec<ColorPartition> {
    let full = (1u16 << POINTS) - 1;
    let mut out = Vec::with_capacity(10_045);
    for profile in Profile::ALL {
        let mut batch: Vec<ColorPartition> = partitions_with_sizes(full, profile.sizes())
            .into_iter()
            .map(|mut blocks| {
                canonical_blocks(&mut blocks);
                ColorPartition { classes: blocks }
            })
            .collect();
        batch.sort();
        batch.dedup();
        out.extend(batch);
    }
    out
}

/// A partition of the ten points into four pieces with intersecting convex
/// hulls, of type 3331 or 3322.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TverbergPartition {
    pieces: [u16; 4],
}

impl TverbergPartition {
    /// Builds a canonical partition from four disjoint pieces covering
    /// `0..10` with profile 3331 or 3322.
    pub fn new(pieces: [u16; 4]) -> Option<Self> {
        let union = pieces.iter().fold(0u16, |acc, &p| acc | p);
        let total: u32 = pieces.iter().map(|p| p.count_ones()).sum();
        if union != (1 << POINTS) - 1 || total != POINTS as u32 {
            return None;
        }
        let mut pieces = pieces;
        canonical_blocks(&mut pieces);
        let sizes: Vec<u32> = pieces.iter().map(|p| p.count_ones()).collect();
        matches!(sizes.as_slice(), [3, 3, 3, 1] | [3, 3, 2, 2]).then_some(TverbergPartition { pieces })
    }

    pub fn pieces(&self) -> [u16; 4] {
        self.pieces
    }

    pub fn piece_members(&self) -> Vec<Vec<usize>> {
        self.pieces.iter().map(|&p| members(p)).collect()
    }

    pub fn is_3331(&self) -> bool {
        self.pieces[3].count_ones() == 1
    }

    /// For type 3322, the intersection point of the two 2-pieces.
    pub fn quad(&self) -> Option<IntersectionQuad> {
        if self.is_3331() {
            return None;
        }
        let p = members(self.pieces[2]);
        let q = members(self.pieces[3]);
        IntersectionQuad::new(p[0], p[1], q[0], q[1])
    }

    /// Pairs of points sharing a piece.
    pub fn same_piece_mask(&self) -> u64 {
        self.pieces.iter().fold(0, |m, &p| m | pair_mask(p))
    }
}

impl fmt::Debug for TverbergPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_blocks(&self.pieces))
    }
}

/// Every piece meets every color class in at most one element.
pub fn is_rainbow(tp: &TverbergPartition, cp: &ColorPartition) -> bool {
    tp.same_piece_mask() & cp.same_color_mask() == 0
}

/// The ten ways to split six points into two triangles, as `(X1, X2)` with
/// the smallest point in `X1`.
pub(crate) fn triangle_splits(six: u16) -> Vec<(u16, u16)> {
    debug_assert_eq!(six.count_ones(), 6);
    let first = six & six.wrapping_neg();
    subsets_of_size(six & !first, 2).into_iter().map(|t| (first | t, six & !(first | t))).collect()
}

/// The 280 ways to split nine points into three triangles.
pub(crate) fn triple_splits(nine: u16) -> Vec<[u16; 3]> {
    debug_assert_eq!(nine.count_ones(), 9);
    let first = nine & nine.wrapping_neg();
    let mut out = Vec::with_capacity(280);
    for t in subsets_of_size(nine & !first, 2) {
        let x1 = first | t;
        for (x2, x3) in triangle_splits(nine & !x1) {
            out.push([x1, x2, x3]);
        }
    }
    out
}

pub(crate) fn mask_members3(set: u16) -> [usize; 3] {
    let m = members(set);
    [m[0], m[1], m[2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_a_bijection() {
        let mut seen = [false; 45];
        for i in 0..10 {
            for j in i + 1..10 {
                let idx = pair_index(i, j);
                assert!(!seen[idx]);
                seen[idx] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn census_per_profile() {
        let all = enumerate_color_partitions();
        let count = |p| all.iter().filter(|cp| cp.profile() == p).count();
        assert_eq!(count(Profile::P3331), 2800);
        assert_eq!(count(Profile::P3322), 6300);
        assert_eq!(count(Profile::P22222), 945);
        assert_eq!(all.len(), 10_045);
    }

    #[test]
    fn transversal_is_rainbow() {
        let tp = TverbergPartition::new([0b111, 0b111 << 3, 0b111 << 6, 1 << 9]).unwrap();
        let cp = ColorPartition::new(&[vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8], vec![9]]).unwrap();
        assert!(is_rainbow(&tp, &cp));
        let bad = ColorPartition::new(&[vec![0, 1, 6], vec![3, 4, 7], vec![2, 5, 8], vec![9]]).unwrap();
        assert!(!is_rainbow(&tp, &bad));
    }

    #[test]
    fn inadmissible_profiles_rejected() {
        assert!(ColorPartition::new(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7], vec![8], vec![9]]).is_none());
        assert!(ColorPartition::new(&[vec![0, 1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).is_none());
        assert!(ColorPartition::new(&[vec![0, 1, 2], vec![2, 4, 5], vec![6, 7, 8], vec![3, 9]]).is_none());
    }

    #[test]
    fn split_counts() {
        assert_eq!(triangle_splits(0b111111).len(), 10);
        assert_eq!(triple_splits(0b111111111).len(), 280);
    }

    #[test]
    fn partition_canonical_form_ignores_piece_order() {
        let a = TverbergPartition::new([1 << 9, 0b111, 0b111 << 6, 0b111 << 3]).unwrap();
        let b = TverbergPartition::new([0b111 << 3, 0b111 << 6, 0b111, 1 << 9]).unwrap();
        assert_eq!(a, b);
        assert!(a.is_3331());
        let c = TverbergPartition::new([0b11, 0b1100, 0b111 << 4, 0b111 << 7]).unwrap();
        assert_eq!(c.quad(), IntersectionQuad::new(0, 1, 2, 3));
    }
}
