use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::partitions::{enumerate_color_partitions, is_rainbow, ColorPartition, TverbergPartition, POINTS};
use super::vertices::{enumerate_orientation_vertices, tverberg_3331, OrientationVertex, VertexView};
use super::TverbergError;
use crate::bitgraph::{KPartiteGraph, VertexSet};
use crate::chirotope::{valid_quads, Chirotope, IntersectionQuad, Sign};
use crate::engines::{search, Algorithm, Clique};

const UNKNOWN: Sign = 2;

/// `χ(i, j, y)` for all pairs at one vertex, `UNKNOWN` where undetermined.
struct SignTable {
    quad: IntersectionQuad,
    t: [[Sign; POINTS]; POINTS],
}

impl SignTable {
    fn new(view: &VertexView<'_>) -> Self {
        let mut t = [[UNKNOWN; POINTS]; POINTS];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, s) in row.iter_mut().enumerate() {
                *s = view.sign(i, j).unwrap_or(UNKNOWN);
            }
        }
        SignTable { quad: view.frame().quad(), t }
    }
}

fn shared_line(p: IntersectionQuad, q: IntersectionQuad) -> Option<(usize, usize)> {
    p.lines().into_iter().find(|l| q.lines().contains(l))
}

fn other_line(q: IntersectionQuad, line: (usize, usize)) -> (usize, usize) {
    if q.line_ab() == line {
        q.line_cd()
    } else {
        q.line_ab()
    }
}

/// Checks every instance of the shared-line certificate with `v` in the
/// role of `y = ab ∩ cd` and `w` in the role of `y' = ab ∩ c'd'`.
fn certificate_holds(chi: &Chirotope, v: &SignTable, w: &SignTable, (a, b): (usize, usize)) -> bool {
    let (c, d) = other_line(v.quad, (a, b));
    let (c1, d1) = other_line(w.quad, (a, b));
    let side = chi.chi(a, b, c);
    let (c1, d1) = if chi.chi(a, b, c1) == side { (c1, d1) } else { (d1, c1) };
    let target = v.t[c1][d1];
    if target == UNKNOWN {
        return true;
    }
    let skip = |x: usize| x == a || x == b || x == c1 || x == d1;
    for i in (0..POINTS).filter(|&i| !skip(i) && chi.chi(a, b, i) == side) {
        for j in (0..POINTS).filter(|&j| !skip(j) && chi.chi(a, b, j) == -side) {
            let at_y = v.t[i][j];
            if at_y == UNKNOWN || at_y == target {
                continue;
            }
            let at_w = w.t[i][j];
            if at_w == UNKNOWN || at_w == 0 {
                continue;
            }
            if at_w != -target {
                return false;
            }
            let cd_w = w.t[c][d];
            if cd_w != UNKNOWN && cd_w != -target {
                return false;
            }
        }
    }
    true
}

fn ip_edge_tables(chi: &Chirotope, v: &SignTable, w: &SignTable) -> bool {
    if v.quad == w.quad {
        return false;
    }
    match shared_line(v.quad, w.quad) {
        None => true,
        Some(line) => certificate_holds(chi, v, w, line) && certificate_holds(chi, w, v, line),
    }
}

/// Whether two orientation vertices on different intersection points are
/// joined in H. Vertices on quads without a common line are always joined;
/// otherwise the shared-line certificate is checked with each vertex in
/// both roles.
pub fn ip_edge(chi: &Chirotope, v: &OrientationVertex, w: &OrientationVertex) -> Result<bool, TverbergError> {
    let tv = SignTable::new(&VertexView::new(chi, v)?);
    let tw = SignTable::new(&VertexView::new(chi, w)?);
    Ok(ip_edge_tables(chi, &tv, &tw))
}

/// Whether `v` is joined to `cp`: no global 3,3,3,1 partition and no
/// 3,3,2,2 partition through `v`'s point is rainbow for `cp`.
pub fn color_edge(
    chi: &Chirotope,
    v: &OrientationVertex,
    cp: &ColorPartition,
    cached_3331: &[TverbergPartition],
) -> Result<bool, TverbergError> {
    if cached_3331.iter().any(|tp| is_rainbow(tp, cp)) {
        return Ok(false);
    }
    let at_v = VertexView::new(chi, v)?.partitions_3322()?;
    Ok(!at_v.iter().any(|tp| is_rainbow(tp, cp)))
}

/// Identity of a graph vertex of H.
#[derive(Debug, Clone, Copy)]
pub enum HNode<'a> {
    Orientation { part: usize, vertex: &'a OrientationVertex },
    Color(&'a ColorPartition),
}

impl fmt::Display for HNode<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HNode::Orientation { vertex, .. } => write!(f, "{vertex:?}"),
            HNode::Color(cp) => write!(f, "{cp}"),
        }
    }
}

/// H together with the maps from graph ids back to what they stand for.
/// Ids `0..vertices().len()` are orientation vertices, grouped by quad in
/// quad order; the remaining ids are color partitions in canonical order.
pub struct HGraph {
    graph: KPartiteGraph,
    quads: Vec<IntersectionQuad>,
    vertices: Vec<OrientationVertex>,
    color_partitions: Vec<ColorPartition>,
    partitions_3331: Vec<TverbergPartition>,
}

impl HGraph {
    pub fn graph(&self) -> &KPartiteGraph {
        &self.graph
    }

    pub fn into_graph(self) -> KPartiteGraph {
        self.graph
    }

    /// Valid quads, one part each, in canonical order.
    pub fn quads(&self) -> &[IntersectionQuad] {
        &self.quads
    }

    pub fn vertices(&self) -> &[OrientationVertex] {
        &self.vertices
    }

    pub fn color_partitions(&self) -> &[ColorPartition] {
        &self.color_partitions
    }

    pub fn partitions_3331(&self) -> &[TverbergPartition] {
        &self.partitions_3331
    }

    /// Quads for which no orientation vertex survived; H then has no
    /// k-clique.
    pub fn empty_quads(&self) -> Vec<IntersectionQuad> {
        self.quads.iter().enumerate().filter(|&(q, _)| self.graph.part_size(q) == 0).map(|(_, &quad)| quad).collect()
    }

    pub fn color_part_size(&self) -> usize {
        self.color_partitions.len()
    }

    pub fn node(&self, id: usize) -> HNode<'_> {
        if id < self.vertices.len() {
            HNode::Orientation { part: self.graph.part(id), vertex: &self.vertices[id] }
        } else {
            HNode::Color(&self.color_partitions[id - self.vertices.len()])
        }
    }

    pub fn id_of_vertex(&self, v: &OrientationVertex) -> Option<usize> {
        let part = self.quads.binary_search(&v.quad()).ok()?;
        let range = self.graph.part_range(part);
        self.vertices[range.clone()].iter().position(|u| u == v).map(|x| range.start + x)
    }
}

/// Builds H for a ten-point acyclic chirotope.
pub fn build_h(chi: &Chirotope) -> Result<HGraph, TverbergError> {
    if chi.n() != POINTS {
        return Err(TverbergError::WrongSize(chi.n()));
    }
    if !chi.check_axioms().is_ok() {
        return Err(TverbergError::NotAChirotope);
    }
    if !chi.is_acyclic() {
        return Err(TverbergError::Cyclic);
    }
    let quads = valid_quads(chi);
    let per_quad: Vec<Vec<OrientationVertex>> =
        quads.par_iter().map(|&q| enumerate_orientation_vertices(chi, q)).collect();
    let mut sizes: Vec<usize> = per_quad.iter().map(Vec::len).collect();
    let vertices: Vec<OrientationVertex> = per_quad.into_iter().flatten().collect();
    let color_partitions = enumerate_color_partitions();
    sizes.push(color_partitions.len());
    let partitions_3331 = tverberg_3331(chi);

    let nv = vertices.len();
    let n = nv + color_partitions.len();
    let views: Vec<VertexView<'_>> =
        vertices.iter().map(|v| VertexView::new(chi, v)).collect::<Result<_, _>>()?;
    let tables: Vec<SignTable> = views.iter().map(SignTable::new).collect();
    let piece_masks: Vec<Vec<u64>> = views
        .iter()
        .map(|view| Ok(view.partitions_3322()?.iter().map(TverbergPartition::same_piece_mask).collect()))
        .collect::<Result<_, TverbergError>>()?;
    let color_masks: Vec<Option<u64>> = color_partitions
        .iter()
        .map(|cp| (!partitions_3331.iter().any(|tp| is_rainbow(tp, cp))).then(|| cp.same_color_mask()))
        .collect();

    let mut rows: Vec<VertexSet> = (0..nv)
        .into_par_iter()
        .map(|u| {
            let mut row = VertexSet::new(n);
            for w in 0..nv {
                if ip_edge_tables(chi, &tables[u], &tables[w]) {
                    row.insert(w);
                }
            }
            for (x, mask) in color_masks.iter().enumerate() {
                if let Some(mask) = mask {
                    if piece_masks[u].iter().all(|&piece| piece & mask != 0) {
                        row.insert(nv + x);
                    }
                }
            }
            row
        })
        .collect();
    let mut color_rows: Vec<VertexSet> = (0..color_partitions.len()).map(|_| VertexSet::new(n)).collect();
    for (u, row) in rows.iter().enumerate() {
        for x in row.iter().filter(|&x| x >= nv) {
            color_rows[x - nv].insert(u);
        }
    }
    rows.extend(color_rows);
    let graph = KPartiteGraph::from_rows(&sizes, rows);
    Ok(HGraph { graph, quads, vertices, color_partitions, partitions_3331 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// The search was exhausted: H has no k-clique.
    Verified,
    Counterexample(Clique),
    Timeout,
}

impl VerifyOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            VerifyOutcome::Verified => "verified",
            VerifyOutcome::Counterexample(_) => "counterexample",
            VerifyOutcome::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub outcome: VerifyOutcome,
    pub parts: usize,
    pub vertices: usize,
    pub edges: usize,
    pub color_part: usize,
    pub empty_quads: Vec<IntersectionQuad>,
    pub build_time: Duration,
    pub search_time: Duration,
}

impl VerifyReport {
    pub fn millis(&self) -> u128 {
        (self.build_time + self.search_time).as_millis()
    }

    /// `index status parts vertices edges millis`
    pub fn line(&self, index: impl fmt::Display) -> String {
        format!(
            "{index} {} {} {} {} {}",
            self.outcome.status(),
            self.parts,
            self.vertices,
            self.edges,
            self.millis()
        )
    }
}

/// Builds H and searches it for a k-clique. The timeout covers the search
/// only.
pub fn verify_chirotope(
    chi: &Chirotope,
    engine: Algorithm,
    timeout: Option<Duration>,
) -> Result<VerifyReport, TverbergError> {
    let started = Instant::now();
    let h = build_h(chi)?;
    let build_time = started.elapsed();
    let g = h.graph();
    let searched = Instant::now();
    let deadline = timeout.map(|t| searched + t);
    let mut it = search(g, engine, deadline)?;
    let outcome = match it.next() {
        Some(c) => {
            assert!(c.is_valid_in(g), "{engine} produced an invalid clique");
            VerifyOutcome::Counterexample(c)
        }
        None if it.timed_out() => VerifyOutcome::Timeout,
        None => VerifyOutcome::Verified,
    };
    Ok(VerifyReport {
        outcome,
        parts: g.k(),
        vertices: g.n(),
        edges: g.edge_count(),
        color_part: h.color_part_size(),
        empty_quads: h.empty_quads(),
        build_time,
        search_time: searched.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tverberg::enumerate_orientation_vertices;

    fn quad(a: usize, b: usize, c: usize, d: usize) -> IntersectionQuad {
        IntersectionQuad::new(a, b, c, d).unwrap()
    }

    #[test]
    fn disjoint_lines_always_connect() {
        let chi = Chirotope::convex(10);
        let vs = enumerate_orientation_vertices(&chi, quad(0, 5, 2, 7));
        let ws = enumerate_orientation_vertices(&chi, quad(1, 6, 3, 8));
        assert!(!vs.is_empty() && !ws.is_empty());
        for v in &vs {
            for w in &ws {
                assert!(ip_edge(&chi, v, w).unwrap());
            }
        }
    }

    #[test]
    fn ip_edge_is_symmetric() {
        let chi = Chirotope::convex(10);
        let vs = enumerate_orientation_vertices(&chi, quad(0, 5, 2, 7));
        let ws = enumerate_orientation_vertices(&chi, quad(0, 5, 3, 8));
        for v in &vs {
            for w in &ws {
                assert_eq!(ip_edge(&chi, v, w).unwrap(), ip_edge(&chi, w, v).unwrap());
            }
        }
    }

    #[test]
    fn convex_has_no_3331_so_color_edges_follow_3322() {
        let chi = Chirotope::convex(10);
        assert!(tverberg_3331(&chi).is_empty());
        let v = &enumerate_orientation_vertices(&chi, quad(0, 5, 2, 7))[0];
        let at_v = VertexView::new(&chi, v).unwrap().partitions_3322().unwrap();
        for cp in enumerate_color_partitions().iter().step_by(97) {
            let expected = !at_v.iter().any(|tp| is_rainbow(tp, cp));
            assert_eq!(color_edge(&chi, v, cp, &[]).unwrap(), expected);
        }
    }

    #[test]
    fn rejects_wrong_size() {
        assert_eq!(build_h(&Chirotope::convex(9)).err(), Some(TverbergError::WrongSize(9)));
    }
}
