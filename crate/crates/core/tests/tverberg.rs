use std::collections::BTreeSet;

use tenpoints::chirotope::valid_quads;
use tenpoints::geomoracle::{
    convex_config, geometric_tverberg_partitions, intersection_point, line_intersection, orient, sample_config,
    true_orientation_vertex, RationalPoint,
};
use tenpoints::tverberg::{
    build_h, color_edge, enumerate_color_partitions, enumerate_orientation_vertices,
    enumerate_orientation_vertices_with, ip_edge, is_rainbow, tverberg_3331, ColorPartition, QuadFrame,
    VertexFilters,
};
use tenpoints::{Chirotope, IntersectionQuad};

fn total_vertices(chi: &Chirotope, filters: VertexFilters) -> usize {
    valid_quads(chi).into_iter().map(|q| enumerate_orientation_vertices_with(chi, q, filters).len()).sum()
}

const NONE: VertexFilters = VertexFilters { extension: false, non_crossing: false, advanced: false };

#[test]
fn each_filter_family_is_live_on_its_own() {
    let chi = Chirotope::from_points(&sample_config(0).unwrap()).unwrap();
    let none = total_vertices(&chi, NONE);
    for only in [
        VertexFilters { extension: true, ..NONE },
        VertexFilters { non_crossing: true, ..NONE },
        VertexFilters { advanced: true, ..NONE },
    ] {
        let fewer = total_vertices(&chi, only);
        assert!(fewer < none, "{only:?} gives {fewer} of {none}");
    }
    assert!(total_vertices(&chi, VertexFilters { extension: false, ..Default::default() }) > total_vertices(&chi, VertexFilters::default()));
    assert!(total_vertices(&chi, VertexFilters { non_crossing: false, ..Default::default() }) > total_vertices(&chi, VertexFilters::default()));
}

// In convex position every opposite-region chord separates both lines, so
// the non-crossing family never applies; the advanced family is implied by
// the extension family there.
#[test]
fn convex_position_needs_only_the_extension_family() {
    let chi = Chirotope::convex(10);
    assert_eq!(total_vertices(&chi, VertexFilters::default()), 740);
    assert_eq!(total_vertices(&chi, VertexFilters { extension: true, ..NONE }), 740);
    assert_eq!(total_vertices(&chi, VertexFilters { non_crossing: true, ..NONE }), total_vertices(&chi, NONE));
    assert!(total_vertices(&chi, VertexFilters { extension: false, ..Default::default() }) > 740);
}

#[test]
fn neighboring_sign_forms_agree_with_geometry() {
    for seed in 0..4 {
        let pts = sample_config(seed).unwrap();
        let chi = Chirotope::from_points(&pts).unwrap();
        for quad in valid_quads(&chi) {
            let frame = QuadFrame::new(&chi, quad);
            let y = intersection_point(&pts, quad).unwrap();
            let rest = frame.rest().to_vec();
            for &e in &rest {
                for &f in &rest {
                    let (re, rf) = (frame.region(e), frame.region(f));
                    if e == f || (re.0 == rf.0) == (re.1 == rf.1) {
                        continue;
                    }
                    let geo = orient(&RationalPoint::integer(pts[e]), &RationalPoint::integer(pts[f]), &y);
                    assert_eq!(frame.sign_with(&[], e, f), Some(geo), "seed {seed} {quad} ({e},{f})");
                    assert_eq!(frame.neighboring_sign_first_form(e, f), geo, "seed {seed} {quad} ({e},{f})");
                }
            }
        }
    }
}

#[test]
fn lines_without_common_point_always_join() {
    let chi = Chirotope::convex(10);
    let a = IntersectionQuad::new(0, 5, 2, 7).unwrap();
    let b = IntersectionQuad::new(1, 4, 3, 8).unwrap();
    for v in enumerate_orientation_vertices(&chi, a) {
        for w in enumerate_orientation_vertices(&chi, b) {
            assert!(ip_edge(&chi, &v, &w).unwrap());
        }
    }
}

#[test]
fn shared_line_certificate_rejects_some_pairs() {
    let chi = Chirotope::convex(10);
    let quads = valid_quads(&chi);
    let mut missing = 0;
    let mut checked = 0;
    for (x, &q) in quads.iter().enumerate() {
        for &r in &quads[x + 1..] {
            let shared = q.lines().iter().any(|l| r.lines().contains(l));
            if !shared {
                continue;
            }
            for v in enumerate_orientation_vertices(&chi, q) {
                for w in enumerate_orientation_vertices(&chi, r) {
                    checked += 1;
                    let e = ip_edge(&chi, &v, &w).unwrap();
                    assert_eq!(e, ip_edge(&chi, &w, &v).unwrap());
                    missing += usize::from(!e);
                }
            }
        }
        if missing > 0 && checked > 10_000 {
            break;
        }
    }
    assert!(missing > 0, "no non-edge among {checked} pairs");
}

#[test]
fn true_vertices_form_a_clique_on_the_parabola() {
    let pts = convex_config();
    let chi = Chirotope::from_points(&pts).unwrap();
    assert_eq!(chi, Chirotope::convex(10));
    let truth: Vec<_> = valid_quads(&chi).into_iter().map(|q| true_orientation_vertex(&pts, q).unwrap()).collect();
    for (x, v) in truth.iter().enumerate() {
        for w in &truth[x + 1..] {
            assert!(ip_edge(&chi, v, w).unwrap(), "{v:?} {w:?}");
        }
    }
}

#[test]
fn color_edges_match_geometric_partitions() {
    for pts in [convex_config(), sample_config(7).unwrap()] {
        let chi = Chirotope::from_points(&pts).unwrap();
        let geo = geometric_tverberg_partitions(&pts).unwrap();
        let cached = tverberg_3331(&chi);
        let geo_3331: BTreeSet<_> = geo.iter().filter(|tp| tp.is_3331()).copied().collect();
        assert_eq!(cached.iter().copied().collect::<BTreeSet<_>>(), geo_3331);
        let cps = enumerate_color_partitions();
        for quad in valid_quads(&chi).into_iter().step_by(7) {
            let v = true_orientation_vertex(&pts, quad).unwrap();
            let here: Vec<_> = geo.iter().filter(|tp| tp.is_3331() || tp.quad() == Some(quad)).collect();
            for cp in cps.iter().step_by(5) {
                let expected = !here.iter().any(|tp| is_rainbow(tp, cp));
                assert_eq!(color_edge(&chi, &v, cp, &cached).unwrap(), expected, "{quad} {cp}");
            }
        }
    }
}

#[test]
fn color_edge_at_a_named_quad() {
    let pts = convex_config();
    let chi = Chirotope::from_points(&pts).unwrap();
    let quad = IntersectionQuad::new(0, 5, 2, 7).unwrap();
    let v = true_orientation_vertex(&pts, quad).unwrap();
    let cp = ColorPartition::new(&[vec![0, 2, 9], vec![5, 7, 1], vec![3, 6], vec![4, 8]]).unwrap();
    let geo = geometric_tverberg_partitions(&pts).unwrap();
    assert!(geo.iter().all(|tp| !tp.is_3331()));
    let expected = !geo.iter().filter(|tp| tp.quad() == Some(quad)).any(|tp| is_rainbow(tp, &cp));
    assert_eq!(color_edge(&chi, &v, &cp, &[]).unwrap(), expected);
}

#[test]
fn every_notation_names_the_same_point() {
    let pts = sample_config(3).unwrap();
    let chi = Chirotope::from_points(&pts).unwrap();
    for quad in valid_quads(&chi) {
        let y = intersection_point(&pts, quad).unwrap();
        for [a, b, c, d] in quad.notations() {
            assert_eq!(IntersectionQuad::new(a, b, c, d), Some(quad));
            let z = line_intersection(pts[a], pts[b], pts[c], pts[d]).unwrap();
            assert!(z.same_point(&y));
        }
    }
}

#[test]
fn h_ids_map_back_to_vertices() {
    let h = build_h(&Chirotope::convex(10)).unwrap();
    assert_eq!(h.graph().k(), 71);
    for (id, v) in h.vertices().iter().enumerate().step_by(37) {
        assert_eq!(h.id_of_vertex(v), Some(id));
    }
    assert_eq!(h.color_part_size(), 10_045);
    assert_eq!(h.graph().n(), h.vertices().len() + h.color_part_size());
}
