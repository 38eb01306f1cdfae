mod common;

use common::{in_basic, random_frame, random_scalene, rng};
use pcd_core::geom::{phi_e, region_area, Point2, ShapeClass, TriangleFrame};
use pcd_core::partitions::{
    edge_region_of, region_polygon, resolve_center, vertex_region_of, CenterSpec, Method, PartitionScheme, Target,
};
use proptest::prelude::*;

fn scheme(target: Target, method: Method) -> PartitionScheme {
    PartitionScheme { target, method }
}

fn area_sum(f: &TriangleFrame, m: CenterSpec, s: PartitionScheme) -> f64 {
    (1..=3).map(|i| region_area(&region_polygon(f, m, s, i).unwrap()).unwrap()).sum()
}

#[test]
fn partitions_tile_the_triangle() {
    let mut g = rng(11);
    for _ in 0..100 {
        let f = random_frame(&mut g);
        let a = f.area();
        let custom = CenterSpec::Custom(in_basic(&f, &mut g));
        let mut cases = vec![
            (CenterSpec::CM, scheme(Target::Vertex, Method::Lines)),
            (CenterSpec::IC, scheme(Target::Vertex, Method::Lines)),
            (custom, scheme(Target::Vertex, Method::Lines)),
            (CenterSpec::CM, scheme(Target::Edge, Method::Lines)),
            (CenterSpec::IC, scheme(Target::Edge, Method::Lines)),
            (CenterSpec::CC, scheme(Target::Vertex, Method::Orthogonal)),
        ];
        if f.shape_class == ShapeClass::Acute {
            cases.push((CenterSpec::CC, scheme(Target::Vertex, Method::Lines)));
            cases.push((CenterSpec::OC, scheme(Target::Edge, Method::Lines)));
        }
        for (m, s) in cases {
            let total = area_sum(&f, m, s);
            assert!((total - a).abs() <= 1e-9 * a, "{m:?} {s:?}: {total} vs {a}");
        }
    }
}

#[test]
fn cc_orthogonal_is_nearest_vertex() {
    let mut g = rng(12);
    let mut checked = 0;
    while checked < 10_000 {
        let f = random_frame(&mut g);
        for _ in 0..100 {
            let q = in_basic(&f, &mut g);
            let x = f.from_basic.apply(q);
            let mut d: Vec<(f64, usize)> = f.vertices.iter().enumerate().map(|(i, y)| (x.dist(*y), i + 1)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            if d[1].0 - d[0].0 < 1e-7 {
                continue;
            }
            assert_eq!(vertex_region_of(x, &f, CenterSpec::CC, Method::Orthogonal).unwrap(), d[0].1);
            checked += 1;
        }
    }
}

fn seg_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let t = ((p - a).dot(b - a) / (b - a).norm2()).clamp(0.0, 1.0);
    p.dist(a + (b - a) * t)
}

#[test]
fn ic_edge_region_is_nearest_edge() {
    let mut g = rng(13);
    let mut checked = 0;
    while checked < 10_000 {
        let f = random_frame(&mut g);
        let v = f.vertices;
        for _ in 0..100 {
            let x = f.from_basic.apply(in_basic(&f, &mut g));
            let mut d: Vec<(f64, usize)> =
                (0..3).map(|i| (seg_dist(x, v[(i + 1) % 3], v[(i + 2) % 3]), i + 1)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            if d[1].0 - d[0].0 < 1e-7 {
                continue;
            }
            assert_eq!(edge_region_of(x, &f, CenterSpec::IC).unwrap(), d[0].1);
            checked += 1;
        }
    }
}

/// φ_e is affine, so it keeps the centroid and every λ-defined region.
#[test]
fn cm_regions_survive_phi_e_but_ic_regions_do_not() {
    let te = TriangleFrame::equilateral();
    let mut g = rng(14);
    let mut ic_differs = false;
    for _ in 0..20 {
        let f = random_scalene(&mut g);
        for _ in 0..500 {
            let q = in_basic(&f, &mut g);
            let (x, xe) = (f.from_basic.apply(q), phi_e(q, &f));
            let a = vertex_region_of(x, &f, CenterSpec::CM, Method::Lines).unwrap();
            let b = vertex_region_of(xe, &te, CenterSpec::CM, Method::Lines).unwrap();
            let l = f.bary(q);
            let mut s = l.map(|v| v * 3.0);
            s.sort_by(f64::total_cmp);
            if s[2] - s[1] > 1e-7 {
                assert_eq!(a, b);
            }
            let ic = vertex_region_of(x, &f, CenterSpec::IC, Method::Lines).unwrap();
            let ic_e = vertex_region_of(xe, &te, CenterSpec::IC, Method::Lines).unwrap();
            ic_differs |= ic != ic_e;
        }
    }
    assert!(ic_differs, "expected an incenter region to change under φ_e");
}

#[test]
fn orthogonal_needs_feet_on_edges() {
    // The centroid of a flat obtuse triangle projects past the short side.
    let f = TriangleFrame::basic(0.05, 0.1).unwrap();
    assert!(resolve_center(&f, CenterSpec::CM).is_ok());
    assert!(vertex_region_of(Point2::new(0.5, 0.01), &f, CenterSpec::CM, Method::Orthogonal).is_err());
}

proptest! {
    #[test]
    fn custom_centers_tile(c1 in 0.05f64..0.5, h in 0.1f64..1.0, u in 0.05f64..0.9, v in 0.05f64..0.9) {
        let c2 = h * (1.0 - (1.0 - c1).powi(2)).sqrt().max(0.05);
        let f = TriangleFrame::basic(c1, c2).unwrap();
        let [a, b, c] = f.basic_vertices();
        let s = u.sqrt();
        let m = a * (1.0 - s) + b * (s * (1.0 - v)) + c * (s * v);
        for s in [scheme(Target::Vertex, Method::Lines), scheme(Target::Edge, Method::Lines)] {
            let total = area_sum(&f, CenterSpec::Custom(m), s);
            prop_assert!((total - f.area()).abs() <= 1e-9 * f.area());
        }
    }
}
