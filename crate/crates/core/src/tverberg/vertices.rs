//! Orientation vertices: partial extensions of a chirotope by one valid
//! intersection point `y = ab ∩ cd`, recorded as the signs `χ(i, j, y)` of
//! the opposite-region pairs.

use std::fmt;

use super::partitions::{mask_members3, triangle_splits, triple_splits, TverbergPartition, POINTS};
use super::TverbergError;
use crate::chirotope::{Chirotope, IntersectionQuad, Sign};

/// A quad together with everything derived from the chirotope that the
/// vertex rules need: regions of the remaining points and the list of
/// opposite-region pairs.
#[derive(Clone)]
pub struct QuadFrame<'a> {
    chi: &'a Chirotope,
    quad: IntersectionQuad,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    rest: Vec<usize>,
    region: [(Sign, Sign); POINTS],
    opposite: Vec<(usize, usize)>,
}

impl<'a> QuadFrame<'a> {
    pub fn new(chi: &'a Chirotope, quad: IntersectionQuad) -> Self {
        assert_eq!(chi.n(), POINTS, "the Tverberg pipeline works on ten points");
        let [a, b, c, d] = quad.elements();
        let rest = quad.rest(POINTS);
        let mut region = [(0, 0); POINTS];
        for &h in &rest {
            region[h] = (chi.chi(a, b, h), chi.chi(c, d, h));
        }
        let mut opposite = Vec::new();
        for (x, &i) in rest.iter().enumerate() {
            for &j in &rest[x + 1..] {
                if region[i].0 != region[j].0 && region[i].1 != region[j].1 {
                    opposite.push((i, j));
                }
            }
        }
        QuadFrame { chi, quad, a, b, c, d, rest, region, opposite }
    }

    pub fn chi(&self) -> &'a Chirotope {
        self.chi
    }

    pub fn quad(&self) -> IntersectionQuad {
        self.quad
    }

    pub fn rest(&self) -> &[usize] {
        &self.rest
    }

    /// Opposite-region pairs `(i, j)`, `i < j`, lexicographic.
    pub fn opposite_pairs(&self) -> &[(usize, usize)] {
        &self.opposite
    }

    pub fn region(&self, h: usize) -> (Sign, Sign) {
        self.region[h]
    }

    fn is_opposite(&self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.region[i], self.region[j]);
        ri.0 != rj.0 && ri.1 != rj.1
    }

    fn is_same(&self, i: usize, j: usize) -> bool {
        self.region[i] == self.region[j]
    }

    fn pair_slot(&self, i: usize, j: usize) -> Option<(usize, Sign)> {
        let (lo, hi, orient) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.opposite.iter().position(|&p| p == (lo, hi)).map(|s| (s, orient))
    }

    /// `χ(i, j, y)` for a neighboring pair, from whichever line the pair
    /// lies on the same side of:
    /// `χ(e,f,y) = χ(c,d,a)·χ(c,d,f)·χ(a,b,e)` when `e, f` agree on `ab`.
    fn neighboring_sign(&self, e: usize, f: usize) -> Sign {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let chi = self.chi;
        if self.region[e].0 == self.region[f].0 {
            chi.chi(c, d, a) * chi.chi(c, d, f) * chi.chi(a, b, e)
        } else {
            chi.chi(a, b, c) * chi.chi(a, b, f) * chi.chi(c, d, e)
        }
    }

    /// The same quantity via the other expression,
    /// `-χ(a,b,c)·χ(c,d,f)·χ(a,b,e)`; the two agree for crossing quads.
    pub fn neighboring_sign_first_form(&self, e: usize, f: usize) -> Sign {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let chi = self.chi;
        if self.region[e].0 == self.region[f].0 {
            -chi.chi(a, b, c) * chi.chi(c, d, f) * chi.chi(a, b, e)
        } else {
            -chi.chi(c, d, a) * chi.chi(a, b, f) * chi.chi(c, d, e)
        }
    }

    /// `χ(i, j, y)` as far as the chirotope and the given opposite-pair signs
    /// determine it; `None` for same-region pairs.
    pub fn sign_with(&self, signs: &[Sign], i: usize, j: usize) -> Option<Sign> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let chi = self.chi;
        if i == j {
            return Some(0);
        }
        let pair = (i.min(j), i.max(j));
        if pair == (a, b) || pair == (c, d) {
            return Some(0);
        }
        // y lies on line ab (and cd): χ(a,h,y) = -χ(a,b,h), χ(b,h,y) = χ(a,b,h).
        if i == a {
            return Some(-chi.chi(a, b, j));
        }
        if i == b {
            return Some(chi.chi(a, b, j));
        }
        if j == a || j == b {
            return self.sign_with(signs, j, i).map(|s| -s);
        }
        if i == c {
            return Some(-chi.chi(c, d, j));
        }
        if i == d {
            return Some(chi.chi(c, d, j));
        }
        if j == c || j == d {
            return self.sign_with(signs, j, i).map(|s| -s);
        }
        if self.is_same(i, j) {
            None
        } else if self.is_opposite(i, j) {
            let (slot, orient) = self.pair_slot(i, j).expect("opposite pair is indexed");
            Some(orient * signs[slot])
        } else {
            Some(self.neighboring_sign(i, j))
        }
    }

    /// Whether `y ∈ conv(tri)` under the given opposite-pair signs.
    pub fn contains_y_with(&self, signs: &[Sign], tri: [usize; 3]) -> Result<bool, TverbergError> {
        let [p, q, r] = tri;
        if tri.iter().any(|&x| self.quad.contains(x)) || p == q || q == r || p == r {
            return Err(TverbergError::TriangleTouchesQuad(tri, self.quad));
        }
        match self.triangle_case(tri) {
            TriangleCase::NoOpposite => Ok(false),
            TriangleCase::Apex { i, j, k } => {
                let sij = self.known(signs, i, j)?;
                let sik = self.known(signs, i, k)?;
                Ok(sij != sik)
            }
            TriangleCase::Spread { i, j, .. } => {
                let (a, b, c, d) = (self.a, self.b, self.c, self.d);
                let target = -self.chi.chi(a, b, c) * self.chi.chi(c, d, i) * self.chi.chi(a, b, i);
                Ok(self.known(signs, i, j)? == target)
            }
        }
    }

    fn known(&self, signs: &[Sign], i: usize, j: usize) -> Result<Sign, TverbergError> {
        self.sign_with(signs, i, j).ok_or(TverbergError::UndeterminedSign { quad: self.quad, i, j })
    }

    /// Relabels a triangle of remaining points into the normal forms of the
    /// containment test.
    fn triangle_case(&self, tri: [usize; 3]) -> TriangleCase {
        for x in 0..3 {
            let (i, j, k) = (tri[x], tri[(x + 1) % 3], tri[(x + 2) % 3]);
            if self.is_opposite(i, j) && self.is_opposite(i, k) {
                return TriangleCase::Apex { i, j, k };
            }
        }
        for x in 0..3 {
            let (p, q, r) = (tri[x], tri[(x + 1) % 3], tri[(x + 2) % 3]);
            if self.is_opposite(p, q) {
                // r neighbors both p and q; i shares r's side of ab.
                let (i, j) = if self.region[p].0 == self.region[r].0 { (p, q) } else { (q, p) };
                debug_assert!(self.region[i].0 == self.region[r].0 && self.region[j].1 == self.region[r].1);
                return TriangleCase::Spread { i, j, k: r };
            }
        }
        TriangleCase::NoOpposite
    }

    /// Checks one assignment of opposite-pair signs against the enabled
    /// obstruction families.
    fn admissible(&self, signs: &[Sign], filters: VertexFilters) -> bool {
        let chi = self.chi;
        let s = |i: usize, j: usize| -> Sign {
            let (slot, orient) = self.pair_slot(i, j).expect("opposite pair");
            orient * signs[slot]
        };
        if filters.non_crossing {
            for (slot, &(i, j)) in self.opposite.iter().enumerate() {
                for (p, q) in [(self.a, self.b), (self.c, self.d)] {
                    let sp = chi.chi(i, j, p);
                    if sp == chi.chi(i, j, q) && signs[slot] != sp {
                        return false;
                    }
                }
            }
        }
        if filters.extension {
            let rest = &self.rest;
            for x in 0..rest.len() {
                for y in x + 1..rest.len() {
                    for z in y + 1..rest.len() {
                        let tri = [rest[x], rest[y], rest[z]];
                        match self.triangle_case(tri) {
                            TriangleCase::NoOpposite => {}
                            TriangleCase::Apex { i, j, k } => {
                                let sij = s(i, j);
                                if sij != s(i, k) && sij != chi.chi(i, j, k) {
                                    return false;
                                }
                            }
                            TriangleCase::Spread { i, j, k } => {
                                let (a, b, c, d) = (self.a, self.b, self.c, self.d);
                                let target = -chi.chi(a, b, c) * chi.chi(c, d, i) * chi.chi(a, b, i);
                                if s(i, j) == target && chi.chi(i, j, k) != target {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        if filters.advanced {
            for (p, q) in [(self.a, self.b), (self.c, self.d)] {
                for &(u1, v1) in &self.opposite {
                    for &(u2, v2) in &self.opposite {
                        if (u1, v1) == (u2, v2) {
                            continue;
                        }
                        // orient both pairs so the first points share a region
                        let (i1, j1, i2, j2) = if self.region[u1] == self.region[u2] {
                            (u1, v1, u2, v2)
                        } else if self.region[u1] == self.region[v2] {
                            (u1, v1, v2, u2)
                        } else {
                            continue;
                        };
                        if i1 == i2 || j1 == j2 {
                            continue;
                        }
                        if chi.chi(i1, j1, p) == chi.chi(i1, j1, q) || chi.chi(i2, j2, p) == chi.chi(i2, j2, q) {
                            continue;
                        }
                        let s1 = s(i1, j1);
                        if chi.chi(i1, j1, i2) == -s1 && chi.chi(i1, j1, j2) == -s1 && s(i2, j2) != s1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

enum TriangleCase {
    NoOpposite,
    /// `j`, `k` share a region and `i` is opposite to both.
    Apex { i: usize, j: usize, k: usize },
    /// `i`, `j` opposite; `k` shares `i`'s side of `ab` and `j`'s side of `cd`.
    Spread { i: usize, j: usize, k: usize },
}

/// Which obstruction families the enumeration applies. All are on by
/// default; switching one off is only useful for testing that each family
/// actually removes vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexFilters {
    /// Triangle containment forces the triangle's own orientation.
    pub extension: bool,
    /// A pair whose line does not separate a line's endpoints inherits
    /// their common orientation.
    pub non_crossing: bool,
    /// Two nested crossing pairs on opposite regions share their sign.
    pub advanced: bool,
}

impl Default for VertexFilters {
    fn default() -> Self {
        VertexFilters { extension: true, non_crossing: true, advanced: true }
    }
}

/// One candidate extension: a sign `χ(i, j, y)` for each opposite-region
/// pair `(i, j)`, `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationVertex {
    quad: IntersectionQuad,
    pairs: Vec<(u8, u8)>,
    signs: Vec<Sign>,
}

impl OrientationVertex {
    pub fn new(quad: IntersectionQuad, pairs: Vec<(usize, usize)>, signs: Vec<Sign>) -> Self {
        assert_eq!(pairs.len(), signs.len());
        OrientationVertex { quad, pairs: pairs.into_iter().map(|(i, j)| (i as u8, j as u8)).collect(), signs }
    }

    pub fn quad(&self) -> IntersectionQuad {
        self.quad
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(i, j)| (i as usize, j as usize))
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Stored sign of an opposite pair, oriented as asked.
    pub fn stored(&self, i: usize, j: usize) -> Option<Sign> {
        let (lo, hi, o) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.pairs.iter().position(|&p| p == (lo as u8, hi as u8)).map(|s| o * self.signs[s])
    }
}

impl fmt::Debug for OrientationVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.quad)?;
        for (&(i, j), &s) in self.pairs.iter().zip(&self.signs) {
            write!(f, " {i}{j}{}", if s > 0 { '+' } else { '-' })?;
        }
        write!(f, " ]")
    }
}

/// A frame together with one vertex's signs, for repeated queries.
pub struct VertexView<'a> {
    frame: QuadFrame<'a>,
    signs: Vec<Sign>,
}

impl<'a> VertexView<'a> {
    pub fn new(chi: &'a Chirotope, v: &OrientationVertex) -> Result<Self, TverbergError> {
        let frame = QuadFrame::new(chi, v.quad);
        let expected: Vec<(u8, u8)> = frame.opposite.iter().map(|&(i, j)| (i as u8, j as u8)).collect();
        if expected != v.pairs {
            return Err(TverbergError::VertexDomainMismatch(v.quad));
        }
        Ok(VertexView { frame, signs: v.signs.clone() })
    }

    pub fn frame(&self) -> &QuadFrame<'a> {
        &self.frame
    }

    pub fn sign(&self, i: usize, j: usize) -> Option<Sign> {
        self.frame.sign_with(&self.signs, i, j)
    }

    pub fn contains_y(&self, tri: [usize; 3]) -> Result<bool, TverbergError> {
        self.frame.contains_y_with(&self.signs, tri)
    }

    /// Type-3322 partitions through `y`: both triangles of a split of the
    /// remaining six points contain `y`.
    pub fn partitions_3322(&self) -> Result<Vec<TverbergPartition>, TverbergError> {
        let q = self.frame.quad;
        let six = self.frame.rest.iter().fold(0u16, |m, &x| m | 1 << x);
        let ab = (1u16 << q.a) | (1 << q.b);
        let cd = (1u16 << q.c) | (1 << q.d);
        let mut out = Vec::new();
        for (x1, x2) in triangle_splits(six) {
            if self.contains_y(mask_members3(x1))? && self.contains_y(mask_members3(x2))? {
                out.push(TverbergPartition::new([x1, x2, ab, cd]).expect("3322 shape"));
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `χ(i, j, y)` for the vertex's intersection point: 0 on the two lines,
/// forced by the chirotope where a rule applies, the stored sign for
/// opposite pairs, `None` (unknown) for same-region pairs.
pub fn determined_sign(chi: &Chirotope, v: &OrientationVertex, i: usize, j: usize) -> Result<Option<Sign>, TverbergError> {
    Ok(VertexView::new(chi, v)?.sign(i, j))
}

pub fn triangle_contains_y(chi: &Chirotope, v: &OrientationVertex, tri: [usize; 3]) -> Result<bool, TverbergError> {
    VertexView::new(chi, v)?.contains_y(tri)
}

pub fn tverberg_3322_at(chi: &Chirotope, v: &OrientationVertex) -> Result<Vec<TverbergPartition>, TverbergError> {
    VertexView::new(chi, v)?.partitions_3322()
}

/// Type-3331 partitions: the singleton lies in each of the three triangles.
pub fn tverberg_3331(chi: &Chirotope) -> Vec<TverbergPartition> {
    assert_eq!(chi.n(), POINTS);
    let full = (1u16 << POINTS) - 1;
    let mut out = Vec::new();
    for p in 0..POINTS {
        for split in triple_splits(full & !(1 << p)) {
            let inside = split.iter().all(|&t| {
                let [e, f, g] = mask_members3(t);
                chi.in_triangle(p, e, f, g)
            });
            if inside {
                out.push(TverbergPartition::new([split[0], split[1], split[2], 1 << p]).expect("3331 shape"));
            }
        }
    }
    out.sort();
    out
}

/// All sign assignments to the opposite-region pairs of a valid quad that
/// pass every obstruction family, ordered lexicographically by sign vector
/// (`-1 < +1`).
pub fn enumerate_orientation_vertices(chi: &Chirotope, quad: IntersectionQuad) -> Vec<OrientationVertex> {
    enumerate_orientation_vertices_with(chi, quad, VertexFilters::default())
}

pub fn enumerate_orientation_vertices_with(
    chi: &Chirotope,
    quad: IntersectionQuad,
    filters: VertexFilters,
) -> Vec<OrientationVertex> {
    let frame = QuadFrame::new(chi, quad);
    let m = frame.opposite.len();
    let mut out = Vec::new();
    let mut signs = vec![0 as Sign; m];
    for code in 0u32..(1 << m) {
        for (slot, s) in signs.iter_mut().enumerate() {
            *s = if code >> (m - 1 - slot) & 1 == 1 { 1 } else { -1 };
        }
        if frame.admissible(&signs, filters) {
            out.push(OrientationVertex::new(quad, frame.opposite.clone(), signs.clone()));
        }
    }
    out
}
