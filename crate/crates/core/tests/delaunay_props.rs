use pcd_core::delaunay::{triangulate, Location, Triangulation};
use pcd_core::Point2;
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_structure(t: &Triangulation) {
    assert!(t.is_delaunay());
    let m = t.sites.len();
    let h = t.hull.len();
    assert_eq!(t.triangles.len(), 2 * m - 2 - h);
    let total: f64 = (0..t.triangles.len()).map(|i| t.triangle_area(i)).sum();
    assert!((total - t.hull_area()).abs() <= 1e-9 * t.hull_area().abs().max(1.0));
    for (i, adj) in t.adjacency.iter().enumerate() {
        assert!(t.triangle_area(i) > 0.0);
        for n in adj.iter().flatten() {
            assert!(t.adjacency[*n].contains(&Some(i)));
        }
    }
}

#[test]
fn fifty_uniform_sites() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let sites: Vec<Point2> = (0..50).map(|_| Point2::new(rng.random(), rng.random())).collect();
        check_structure(&triangulate(&sites).unwrap());
    }
}

#[test]
fn lattice_subsets_with_cocircular_quadruples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let mut sites = Vec::new();
        for i in 0..12 {
            for j in 0..12 {
                if rng.random_bool(0.5) {
                    sites.push(Point2::new(i as f64, j as f64));
                }
            }
        }
        if let Ok(t) = triangulate(&sites) {
            check_structure(&t);
        }
    }
}

#[test]
fn locate_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sites: Vec<Point2> = (0..200).map(|_| Point2::new(rng.random(), rng.random())).collect();
    let t = triangulate(&sites).unwrap();
    for _ in 0..10_000 {
        let p = Point2::new(rng.random_range(-0.1..1.1), rng.random_range(-0.1..1.1));
        assert_eq!(t.locate(p), t.locate_scan(p));
    }
    let g = t.triangle_points(0);
    assert_eq!(t.locate((g[0] + g[1] + g[2]) * (1.0 / 3.0)), Location::Cell(0));
    assert_eq!(t.locate(Point2::new(5.0, 5.0)), Location::Outside);
}

#[test]
fn large_input_is_delaunay() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sites: Vec<Point2> = (0..3000).map(|_| Point2::new(rng.random(), rng.random())).collect();
    let t = triangulate(&sites).unwrap();
    assert_eq!(t.triangles.len(), 2 * 3000 - 2 - t.hull.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_sets_triangulate(pts in prop::collection::vec((-100i32..100, -100i32..100), 3..60)) {
        let mut sites: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x as f64 / 7.0, y as f64 / 3.0)).collect();
        sites.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        sites.dedup();
        if let Ok(t) = triangulate(&sites) {
            check_structure(&t);
            let again = triangulate(&sites).unwrap();
            prop_assert_eq!(again.triangles, t.triangles);
        }
    }
}
