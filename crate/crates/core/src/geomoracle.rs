//! Exact geometric ground truth for small planar configurations.
//!
//! Everything here works on integer input points and rational intersection
//! points in homogeneous form, with `i128` arithmetic and no floating point.
//! It does not share predicates with the chirotope pipeline, so the two can
//! be checked against each other.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::chirotope::{Chirotope, ChirotopeError, IntPoint, IntersectionQuad, Sign, MAX_COORD};
use crate::tverberg::{
    enumerate_color_partitions, ColorPartition, OrientationVertex, QuadFrame, TverbergError, TverbergPartition,
};

/// Coordinates are bounded by 2^16, so line-intersection denominators stay
/// below 2^35 and numerators below 2^53. An orientation with at most one
/// such point sums six products of at most 2^69 each.
const INTERSECTION_NUMERATOR_BITS: u32 = 53;
const _: () = assert!(MAX_COORD == 1 << 16);
const _: () = assert!(16 + INTERSECTION_NUMERATOR_BITS + 3 < 127);

/// Largest number of rejected draws before [`sample_config`] gives up.
pub const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("lines {0:?} and {1:?} are parallel")]
    Parallel((usize, usize), (usize, usize)),
    #[error("no configuration in strong general position after {0} rejections")]
    Sampling(usize),
    #[error("expected {expected} points, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    Pipeline(#[from] TverbergError),
}

/// A point `(x / den, y / den)` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct RationalPoint {
    x: i128,
    y: i128,
    den: i128,
}

impl RationalPoint {
    pub fn integer(p: IntPoint) -> Self {
        RationalPoint { x: p[0] as i128, y: p[1] as i128, den: 1 }
    }

    pub fn new(x: i128, y: i128, den: i128) -> Option<Self> {
        match den.signum() {
            0 => None,
            1 => Some(RationalPoint { x, y, den }),
            _ => Some(RationalPoint { x: -x, y: -y, den: -den }),
        }
    }

    pub fn x(&self) -> (i128, i128) {
        (self.x, self.den)
    }

    pub fn y(&self) -> (i128, i128) {
        (self.y, self.den)
    }

    pub fn same_point(&self, other: &RationalPoint) -> bool {
        self.x * other.den == other.x * self.den && self.y * other.den == other.y * self.den
    }
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("orientation leaves the exact i128 range")
}

/// Sign of the orientation determinant of three points.
pub fn orient(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> Sign {
    let minor = |u1: i128, u2: i128, v1: i128, v2: i128| mul(u1, v2) - mul(v1, u2);
    let det = mul(p.x, minor(q.y, q.den, r.y, r.den)) - mul(p.y, minor(q.x, q.den, r.x, r.den))
        + mul(p.den, minor(q.x, q.y, r.x, r.y));
    det.signum() as Sign
}

fn orient_int(p: IntPoint, q: IntPoint, r: IntPoint) -> Sign {
    let (ux, uy) = ((q[0] - p[0]) as i128, (q[1] - p[1]) as i128);
    let (vx, vy) = ((r[0] - p[0]) as i128, (r[1] - p[1]) as i128);
    (ux * vy - uy * vx).signum() as Sign
}

/// Intersection of line `ab` with line `cd`, `None` if they are parallel.
pub fn line_intersection(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Option<RationalPoint> {
    let cross = |u: [i128; 2], v: [i128; 2]| u[0] * v[1] - u[1] * v[0];
    let diff = |p: IntPoint, q: IntPoint| [(p[0] - q[0]) as i128, (p[1] - q[1]) as i128];
    let (ab, cd, ac) = (diff(b, a), diff(d, c), diff(c, a));
    let den = cross(ab, cd);
    let t = cross(ac, cd);
    RationalPoint::new(a[0] as i128 * den + ab[0] * t, a[1] as i128 * den + ab[1] * t, den)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// No three points collinear, and no three lines through pairwise disjoint
/// point pairs pass through a common point.
pub fn strong_general_position(points: &[IntPoint]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient_int(points[i], points[j], points[k]) == 0 {
                    return false;
                }
            }
        }
    }
    let lines = pairs(n);
    let disjoint = |l: (usize, usize), m: (usize, usize)| l.0 != m.0 && l.0 != m.1 && l.1 != m.0 && l.1 != m.1;
    for (x, &l) in lines.iter().enumerate() {
        for (z, &m) in lines.iter().enumerate().skip(x + 1) {
            if !disjoint(l, m) {
                continue;
            }
            let Some(y) = line_intersection(points[l.0], points[l.1], points[m.0], points[m.1]) else { continue };
            for &o in &lines[z + 1..] {
                if disjoint(o, l) && disjoint(o, m) {
                    let (p, q) = (RationalPoint::integer(points[o.0]), RationalPoint::integer(points[o.1]));
                    if orient(&p, &q, &y) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Ten points with coordinates in `0..2^16`, drawn uniformly from
/// `ChaCha8Rng` seeded with `seed` and redrawn until they are in strong
/// general position.
pub fn sample_config(seed: u64) -> Result<[IntPoint; 10], OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let mut pts = [[0i64; 2]; 10];
        for p in &mut pts {
            *p = [rng.random_range(0..MAX_COORD), rng.random_range(0..MAX_COORD)];
        }
        if strong_general_position(&pts) {
            return Ok(pts);
        }
    }
    Err(OracleError::Sampling(MAX_REJECTIONS))
}

/// Ten points on the parabola `y = x^2` in strong general position; in
/// this order every triple is counterclockwise.
pub fn convex_config() -> [IntPoint; 10] {
    [0, 3, 7, 12, 20, 31, 45, 62, 83, 109].map(|x| [x, x * x])
}

/// The intersection point `y = ab ∩ cd` of a quad.
pub fn intersection_point(points: &[IntPoint], quad: IntersectionQuad) -> Result<RationalPoint, OracleError> {
    let [a, b, c, d] = quad.elements();
    line_intersection(points[a], points[b], points[c], points[d]).ok_or(OracleError::Parallel((a, b), (c, d)))
}

/// The orientation vertex realized by the actual intersection point: each
/// opposite-region pair `(i, j)` gets `orient(p_i, p_j, y)`.
pub fn true_orientation_vertex(points: &[IntPoint], quad: IntersectionQuad) -> Result<OrientationVertex, OracleError> {
    let chi = Chirotope::from_points(points)?;
    let frame = QuadFrame::new(&chi, quad);
    let y = intersection_point(points, quad)?;
    let signs = frame
        .opposite_pairs()
        .iter()
        .map(|&(i, j)| orient(&RationalPoint::integer(points[i]), &RationalPoint::integer(points[j]), &y))
        .collect();
    Ok(OrientationVertex::new(quad, frame.opposite_pairs().to_vec(), signs))
}

fn inside_triangle(t: [IntPoint; 3], y: &RationalPoint) -> bool {
    let [e, f, g] = t.map(RationalPoint::integer);
    let s = orient(&e, &f, y);
    s != 0 && orient(&f, &g, y) == s && orient(&g, &e, y) == s
}

fn members(set: u16) -> Vec<usize> {
    (0..16).filter(|&x| set >> x & 1 == 1).collect()
}

fn triangle(points: &[IntPoint], set: u16) -> [IntPoint; 3] {
    let m = members(set);
    [points[m[0]], points[m[1]], points[m[2]]]
}

/// Splits of `set` (of size 3 * parts) into `parts` triples.
fn triples(set: u16, parts: usize) -> Vec<Vec<u16>> {
    if parts == 0 {
        return vec![Vec::new()];
    }
    let m = members(set);
    let first = m[0];
    let mut out = Vec::new();
    for x in 1..m.len() {
        for z in x + 1..m.len() {
            let t = (1u16 << first) | (1 << m[x]) | (1 << m[z]);
            for mut rest in triples(set & !t, parts - 1) {
                rest.insert(0, t);
                out.push(rest);
            }
        }
    }
    out
}

fn segments_cross(points: &[IntPoint], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
    orient_int(pa, pb, pc) * orient_int(pa, pb, pd) < 0 && orient_int(pc, pd, pa) * orient_int(pc, pd, pb) < 0
}

/// All Tverberg partitions of ten points in strong general position, found
/// by testing every split of type 3,3,3,1 and 3,3,2,2 directly.
pub fn geometric_tverberg_partitions(points: &[IntPoint]) -> Result<BTreeSet<TverbergPartition>, OracleError> {
    if points.len() != 10 {
        return Err(OracleError::WrongSize { expected: 10, got: points.len() });
    }
    let full: u16 = (1 << 10) - 1;
    let mut out = BTreeSet::new();
    for p in 0..10 {
        let y = RationalPoint::integer(points[p]);
        for split in triples(full & !(1 << p), 3) {
            if split.iter().all(|&t| inside_triangle(triangle(points, t), &y)) {
                out.insert(TverbergPartition::new([split[0], split[1], split[2], 1 << p]).expect("3331"));
            }
        }
    }
    let all = pairs(10);
    for (x, &s) in all.iter().enumerate() {
        for &t in &all[x + 1..] {
            let disjoint = s.0 != t.0 && s.0 != t.1 && s.1 != t.0 && s.1 != t.1;
            if !disjoint || !segments_cross(points, s, t) {
                continue;
            }
            let y = line_intersection(points[s.0], points[s.1], points[t.0], points[t.1]).expect("crossing");
            let (ms, mt) = ((1u16 << s.0) | (1 << s.1), (1u16 << t.0) | (1 << t.1));
            for split in triples(full & !ms & !mt, 2) {
                if split.iter().all(|&tri| inside_triangle(triangle(points, tri), &y)) {
                    out.insert(TverbergPartition::new([split[0], split[1], ms, mt]).expect("3322"));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremCheck {
    /// Every color partition has a rainbow Tverberg partition.
    Ok,
    /// The first color partition without one.
    Counterexample(ColorPartition),
}

/// For each color partition, the first geometric Tverberg partition that is
/// rainbow for it, if any.
pub fn rainbow_witnesses(points: &[IntPoint]) -> Result<Vec<(ColorPartition, Option<TverbergPartition>)>, OracleError> {
    let tps: Vec<TverbergPartition> = geometric_tverberg_partitions(points)?.into_iter().collect();
    let rainbow = |tp: &TverbergPartition, cp: &ColorPartition| {
        tp.pieces().iter().all(|&piece| cp.classes().iter().all(|&class| (piece & class).count_ones() <= 1))
    };
    Ok(enumerate_color_partitions()
        .into_par_iter()
        .map(|cp| {
            let w = tps.iter().find(|tp| rainbow(tp, &cp)).copied();
            (cp, w)
        })
        .collect())
}

pub fn check_theorem_for_config(points: &[IntPoint]) -> Result<TheoremCheck, OracleError> {
    let witnesses = rainbow_witnesses(points)?;
    Ok(match witnesses.into_iter().find(|(_, w)| w.is_none()) {
        Some((cp, _)) => TheoremCheck::Counterexample(cp),
        None => TheoremCheck::Ok,
    })
}

/// Outcome of comparing the chirotope pipeline with the geometry of one
/// configuration. `failures` is empty when everything agrees.
#[derive(Debug, Clone, Default)]
pub struct CrossCheck {
    pub valid_quads: usize,
    pub graph_vertices: usize,
    pub partitions: usize,
    pub signs_checked: usize,
    pub theorem_checked: bool,
    pub failures: Vec<String>,
}

impl CrossCheck {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for one configuration, that every true orientation vertex is
/// enumerated, that the true vertices are pairwise adjacent in H, that the
/// pipeline's Tverberg partitions equal the geometric ones, and that every
/// sign the pipeline claims to know matches the geometry. With `theorem`,
/// also checks that every coloring has a rainbow partition.
pub fn crosscheck(points: &[IntPoint], theorem: bool) -> Result<CrossCheck, OracleError> {
    use crate::tverberg::{build_h, determined_sign, tverberg_3322_at, tverberg_3331};

    if !strong_general_position(points) {
        return Ok(CrossCheck { failures: vec!["not in strong general position".into()], ..Default::default() });
    }
    let chi = Chirotope::from_points(points)?;
    let h = build_h(&chi)?;
    let mut report = CrossCheck { valid_quads: h.quads().len(), graph_vertices: h.graph().n(), ..Default::default() };
    let mut pipeline: BTreeSet<TverbergPartition> = tverberg_3331(&chi).into_iter().collect();
    let mut ids = Vec::new();
    for &quad in h.quads() {
        let v = true_orientation_vertex(points, quad)?;
        match h.id_of_vertex(&v) {
            Some(id) => ids.push(id),
            None => report.failures.push(format!("true vertex {v:?} not enumerated")),
        }
        pipeline.extend(tverberg_3322_at(&chi, &v)?);
        let y = intersection_point(points, quad)?;
        for i in 0..points.len() {
            for j in (0..points.len()).filter(|&j| j != i) {
                if let Some(s) = determined_sign(&chi, &v, i, j)? {
                    report.signs_checked += 1;
                    let actual = orient(&RationalPoint::integer(points[i]), &RationalPoint::integer(points[j]), &y);
                    if actual != s {
                        report.failures.push(format!("{quad}: sign of ({i}, {j}, y) is {actual}, pipeline says {s}"));
                    }
                }
            }
        }
    }
    for (x, &u) in ids.iter().enumerate() {
        for &w in &ids[x + 1..] {
            if !h.graph().are_adjacent(u, w) {
                report.failures.push(format!("true vertices {} and {} not adjacent", h.node(u), h.node(w)));
            }
        }
    }
    let geometric = geometric_tverberg_partitions(points)?;
    report.partitions = geometric.len();
    for tp in geometric.symmetric_difference(&pipeline) {
        let side = if geometric.contains(tp) { "missing from the pipeline" } else { "not realized" };
        report.failures.push(format!("Tverberg partition {tp:?} {side}"));
    }
    if theorem {
        report.theorem_checked = true;
        if let TheoremCheck::Counterexample(cp) = check_theorem_for_config(points)? {
            report.failures.push(format!("coloring {cp} has no rainbow Tverberg partition"));
        }
    }
    Ok(report)
}
