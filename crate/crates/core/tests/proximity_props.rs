mod common;

use common::{in_basic, random_frame, random_scalene, rng};
use pcd_core::geom::{phi_e, region_area, Point2, ShapeClass, TriangleFrame};
use pcd_core::partitions::{CenterSpec, Method};
use pcd_core::proximity::{PreparedMap, ProximityMapSpec, Ratio};
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

fn pe(r: f64, center: CenterSpec, method: Method) -> ProximityMapSpec {
    ProximityMapSpec::PropEdge { r: Ratio::Finite(r), center, method }
}

fn cs(tau: f64) -> ProximityMapSpec {
    ProximityMapSpec::CentralSim { tau, center: CenterSpec::CM }
}

/// One representative spec per family, with a random parameter.
fn families(g: &mut ChaCha8Rng, f: &TriangleFrame) -> Vec<ProximityMapSpec> {
    let mut v = vec![
        pe(g.random_range(1.0..3.0), CenterSpec::CM, Method::Lines),
        pe(g.random_range(1.0..3.0), CenterSpec::CC, Method::Orthogonal),
        cs(g.random_range(0.0..1.0)),
        ProximityMapSpec::ArcSlice { center: CenterSpec::CC, method: Method::Orthogonal },
        ProximityMapSpec::DirDouble { center: CenterSpec::CM },
        ProximityMapSpec::DoubleX,
        ProximityMapSpec::Spherical,
    ];
    if f.shape_class == ShapeClass::Acute {
        v.push(ProximityMapSpec::ArcSlice { center: CenterSpec::CM, method: Method::Lines });
    }
    v
}

#[test]
fn catches_matches_materialized_region() {
    let mut g = rng(21);
    let mut per_family = std::collections::BTreeMap::<String, usize>::new();
    for _ in 0..200 {
        let f = random_frame(&mut g);
        for spec in families(&mut g, &f) {
            let m = PreparedMap::new(&f, spec).unwrap();
            for _ in 0..100 {
                let qx = in_basic(&f, &mut g);
                let region = m.region_basic(qx).unwrap();
                for _ in 0..6 {
                    // Half the targets near x, so that small regions get hit too.
                    let qy = if g.random::<bool>() {
                        in_basic(&f, &mut g)
                    } else {
                        qx + Point2::new(g.random_range(-0.2..0.2), g.random_range(-0.2..0.2))
                    };
                    if m.decision_margin(qx, qy) < 1e-7 {
                        continue;
                    }
                    assert_eq!(m.catches_basic(qx, qy), region.contains(qy), "{spec} x={qx:?} y={qy:?}");
                    *per_family.entry(spec.to_string().split(':').next().unwrap().to_string()).or_default() += 1;
                }
            }
        }
    }
    for (fam, n) in per_family {
        assert!(n >= 100_000, "{fam}: only {n} pairs");
    }
}

#[test]
fn region_area_matches_rejection_sampling() {
    let mut g = rng(22);
    let mut done = 0;
    while done < 50 {
        let f = random_frame(&mut g);
        let specs = families(&mut g, &f);
        let spec = specs[g.random_range(0..specs.len())];
        let m = PreparedMap::new(&f, spec).unwrap();
        let x = f.from_basic.apply(in_basic(&f, &mut g));
        let region = m.region(x).unwrap();
        let area = region_area(&region).unwrap();
        if area <= 0.0 {
            continue;
        }
        // Sample the bounding box of the region itself; the spherical disk
        // is not clipped to T.
        let pts = region.vertices().unwrap();
        let (x0, x1) = (pts.iter().map(|p| p.x).fold(f64::MAX, f64::min), pts.iter().map(|p| p.x).fold(f64::MIN, f64::max));
        let (y0, y1) = (pts.iter().map(|p| p.y).fold(f64::MAX, f64::min), pts.iter().map(|p| p.y).fold(f64::MIN, f64::max));
        let box_area = (x1 - x0) * (y1 - y0);
        let n = 40_000;
        let hits = (0..n)
            .filter(|_| region.contains(Point2::new(g.random_range(x0..x1), g.random_range(y0..y1))))
            .count();
        let p = hits as f64 / n as f64;
        let est = p * box_area;
        let se = box_area * (p * (1.0 - p) / n as f64).sqrt();
        assert!((est - area).abs() <= 3.0 * se + 1e-12, "{spec}: {area} vs {est} ± {se}");
        done += 1;
    }
}

#[test]
fn regions_contain_their_center_point() {
    let mut g = rng(23);
    for _ in 0..200 {
        let f = random_frame(&mut g);
        for spec in families(&mut g, &f) {
            let m = PreparedMap::new(&f, spec).unwrap();
            for _ in 0..50 {
                let qx = in_basic(&f, &mut g);
                if let ProximityMapSpec::CentralSim { tau, .. } = spec {
                    if tau == 0.0 {
                        continue;
                    }
                }
                assert!(m.region_basic(qx).unwrap().contains_tol(qx, 1e-9), "{spec}");
            }
        }
    }
}

#[test]
fn monotone_in_parameters() {
    let mut g = rng(24);
    for _ in 0..100 {
        let f = random_frame(&mut g);
        let (r1, r2) = (g.random_range(1.0..2.5), g.random_range(0.0..1.0));
        let (t1, t2): (f64, f64) = (g.random_range(0.0..1.0), g.random_range(0.0..1.0));
        let a = PreparedMap::new(&f, pe(r1, CenterSpec::CM, Method::Lines)).unwrap();
        let b = PreparedMap::new(&f, pe(r1 + r2, CenterSpec::CM, Method::Lines)).unwrap();
        let c = PreparedMap::new(&f, cs(t1.min(t2))).unwrap();
        let d = PreparedMap::new(&f, cs(t1.max(t2))).unwrap();
        for _ in 0..200 {
            let (qx, qy) = (in_basic(&f, &mut g), in_basic(&f, &mut g));
            assert!(!a.catches_basic(qx, qy) || b.catches_basic(qx, qy));
            assert!(!c.catches_basic(qx, qy) || d.catches_basic(qx, qy));
        }
    }
}

/// The arc x → y survives the map to the equilateral triangle for the
/// centroid-based families; the double-X map does not.
#[test]
fn geometry_invariance() {
    let te = TriangleFrame::equilateral();
    let mut g = rng(25);
    let mut dx_disagree = 0;
    for _ in 0..20 {
        let f = random_scalene(&mut g);
        let r = g.random_range(1.0..3.0);
        let tau = g.random_range(0.0..1.0);
        for spec in [pe(r, CenterSpec::CM, Method::Lines), cs(tau), ProximityMapSpec::DoubleX] {
            let m = PreparedMap::new(&f, spec).unwrap();
            let me = PreparedMap::new(&te, spec).unwrap();
            for _ in 0..10_000 {
                let (qx, qy) = (in_basic(&f, &mut g), in_basic(&f, &mut g));
                let (ex, ey) = (phi_e(qx, &f), phi_e(qy, &f));
                if m.decision_margin(qx, qy) < 1e-7 || me.decision_margin(ex, ey) < 1e-7 {
                    continue;
                }
                let (a, b) = (m.catches_basic(qx, qy), me.catches_basic(ex, ey));
                if spec == ProximityMapSpec::DoubleX {
                    dx_disagree += usize::from(a != b);
                } else {
                    assert_eq!(a, b, "{spec}");
                }
            }
        }
    }
    assert!(dx_disagree > 0);
}

/// Closed description of N_CS(x, M_C) for x in the edge region of e_3,
/// in basic coordinates.
fn cs_e3_form(c1: f64, c2: f64, tau: f64, x: Point2, p: Point2) -> [f64; 3] {
    let (x0, y0) = (x.x, x.y);
    [
        p.y - y0 * (1.0 - tau),
        (y0 * (tau + c1) + c2 * (p.x - x0)) / c1 - p.y,
        (y0 * (1.0 - c1 + tau) - c2 * (p.x - x0)) / (1.0 - c1) - p.y,
    ]
}

#[test]
fn central_similarity_matches_e3_closed_form() {
    use pcd_core::partitions::edge_region_of;
    let mut g = rng(26);
    let mut checked = 0;
    for _ in 0..200 {
        let f = random_frame(&mut g);
        let basic = pcd_core::geom::TriangleFrame::basic(f.c1, f.c2).unwrap();
        let tau = g.random_range(0.05..1.0);
        let m = PreparedMap::new(&basic, cs(tau)).unwrap();
        for _ in 0..500 {
            let (qx, qy) = (in_basic(&basic, &mut g), in_basic(&basic, &mut g));
            if edge_region_of(qx, &basic, CenterSpec::CM).unwrap() != 3 {
                continue;
            }
            let s = cs_e3_form(f.c1, f.c2, tau, qx, qy);
            if s.iter().any(|v| v.abs() < 1e-9) || m.decision_margin(qx, qy) < 1e-9 {
                continue;
            }
            assert_eq!(m.catches_basic(qx, qy), s.iter().all(|&v| v >= 0.0));
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}
