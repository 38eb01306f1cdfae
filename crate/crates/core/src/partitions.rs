//! M-vertex and M-edge regions of a triangle. With β the barycentric
//! coordinates of M, the line construction gives
//! R_M(y_i) = {λ_i/β_i maximal} and R_M(e_i) = {λ_i/β_i minimal}; the
//! orthogonal construction cuts along the perpendiculars from M to the edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{triangle_center, CenterKind, HalfPlane, Point2, ProximityRegion, ShapeClass, TriangleFrame, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CenterSpec {
    CC,
    IC,
    CM,
    OC,
    /// A point in basic coordinates.
    Custom(Point2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Lines,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionScheme {
    pub target: Target,
    pub method: Method,
}

/// The center in basic coordinates.
pub fn resolve_center(frame: &TriangleFrame, m: CenterSpec) -> Result<Point2> {
    Ok(match m {
        CenterSpec::CC => triangle_center(frame, CenterKind::CC),
        CenterSpec::IC => triangle_center(frame, CenterKind::IC),
        CenterSpec::CM => triangle_center(frame, CenterKind::CM),
        CenterSpec::OC => {
            if frame.shape_class != ShapeClass::Acute {
                return Err(Error::InvalidScheme("OC regions need an acute triangle".into()));
            }
            triangle_center(frame, CenterKind::OC)
        }
        CenterSpec::Custom(p) => Point2::try_new(p.x, p.y)?,
    })
}

/// Barycentric coordinates of a resolved center that lies in the open interior.
pub fn interior_center(frame: &TriangleFrame, m: CenterSpec) -> Result<[f64; 3]> {
    let b = frame.bary(resolve_center(frame, m)?);
    if b.iter().any(|&l| l <= EPS) {
        return Err(Error::CenterOutsideTriangle);
    }
    Ok(b)
}

/// Perpendicular feet from M to the three edges must lie on the closed edges.
pub fn check_orthogonal(frame: &TriangleFrame, m: Point2) -> Result<()> {
    let y = frame.basic_vertices();
    for k in 0..3 {
        let (a, b) = (y[(k + 1) % 3], y[(k + 2) % 3]);
        let t = (m - a).dot(b - a) / (b - a).norm2();
        if !(-EPS..=1.0 + EPS).contains(&t) {
            return Err(Error::ProjectionOffEdge(k + 1));
        }
    }
    Ok(())
}

fn first_extreme(v: [f64; 3], max: bool) -> usize {
    let best = if max { v.iter().cloned().fold(f64::MIN, f64::max) } else { v.iter().cloned().fold(f64::MAX, f64::min) };
    (0..3).find(|&i| if max { v[i] >= best - EPS } else { v[i] <= best + EPS }).unwrap()
}

/// Resolved vertex-region rule for one frame; evaluation works on basic
/// coordinates and returns 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VertexRule {
    Lines { beta: [f64; 3] },
    Orthogonal { m: Point2 },
}

impl VertexRule {
    pub fn new(frame: &TriangleFrame, m: CenterSpec, method: Method) -> Result<VertexRule> {
        match method {
            Method::Lines => Ok(VertexRule::Lines { beta: interior_center(frame, m)? }),
            Method::Orthogonal => {
                let c = resolve_center(frame, m)?;
                check_orthogonal(frame, c)?;
                Ok(VertexRule::Orthogonal { m: c })
            }
        }
    }

    pub fn classify(&self, frame: &TriangleFrame, q: Point2) -> usize {
        match *self {
            VertexRule::Lines { beta } => {
                let l = frame.bary(q);
                first_extreme([l[0] / beta[0], l[1] / beta[1], l[2] / beta[2]], true)
            }
            VertexRule::Orthogonal { m } => {
                let y = frame.basic_vertices();
                let d = q - m;
                let f3 = d.dot(y[0] - y[1]);
                let f2 = d.dot(y[0] - y[2]);
                let f1 = d.dot(y[1] - y[2]);
                if f3 >= -EPS && f2 >= -EPS {
                    0
                } else if f3 <= EPS && f1 >= -EPS {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// Half-planes (basic coordinates) cutting vertex region i out of the plane.
    pub fn halfplanes(&self, frame: &TriangleFrame, i: usize) -> Vec<HalfPlane> {
        match *self {
            VertexRule::Lines { beta } => (0..3)
                .filter(|&j| j != i)
                .map(|j| ratio_halfplane(frame, beta, j, i))
                .collect(),
            VertexRule::Orthogonal { m } => {
                let y = frame.basic_vertices();
                (0..3)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let e = y[j] - y[i];
                        HalfPlane::new([e.x, e.y], e.dot(m))
                    })
                    .collect()
            }
        }
    }
}

/// {λ_j/β_j − λ_i/β_i ≤ 0}.
fn ratio_halfplane(frame: &TriangleFrame, beta: [f64; 3], j: usize, i: usize) -> HalfPlane {
    let (gj, hj) = frame.bary_functional(j);
    let (gi, hi) = frame.bary_functional(i);
    HalfPlane::from_le_zero(
        [gj[0] / beta[j] - gi[0] / beta[i], gj[1] / beta[j] - gi[1] / beta[i]],
        hj / beta[j] - hi / beta[i],
    )
}

/// Half-planes of the closed basic triangle.
pub fn basic_triangle_halfplanes(frame: &TriangleFrame) -> Vec<HalfPlane> {
    (0..3)
        .map(|i| {
            let (g, h) = frame.bary_functional(i);
            HalfPlane::from_le_zero([-g[0], -g[1]], -h)
        })
        .collect()
}

pub(crate) fn to_basic_checked(frame: &TriangleFrame, x: Point2) -> Result<Point2> {
    let q = frame.to_basic.apply(x);
    if frame.bary(q).iter().any(|&l| l < -EPS) {
        return Err(Error::OutsideTriangle);
    }
    Ok(q)
}

/// 1-based vertex region index of `x` (original coordinates).
pub fn vertex_region_of(x: Point2, frame: &TriangleFrame, m: CenterSpec, method: Method) -> Result<usize> {
    let rule = VertexRule::new(frame, m, method)?;
    let q = to_basic_checked(frame, x)?;
    Ok(rule.classify(frame, q) + 1)
}

/// 0-based edge region from barycentric data; edge i is opposite vertex i.
pub fn edge_index(l: [f64; 3], beta: [f64; 3]) -> usize {
    first_extreme([l[0] / beta[0], l[1] / beta[1], l[2] / beta[2]], false)
}

/// 1-based edge region index of `x` (original coordinates).
pub fn edge_region_of(x: Point2, frame: &TriangleFrame, m: CenterSpec) -> Result<usize> {
    let beta = interior_center(frame, m)?;
    let q = to_basic_checked(frame, x)?;
    Ok(edge_index(frame.bary(q), beta) + 1)
}

pub(crate) fn edge_region_halfplanes(frame: &TriangleFrame, beta: [f64; 3], i: usize) -> Vec<HalfPlane> {
    (0..3).filter(|&j| j != i).map(|j| ratio_halfplane(frame, beta, i, j)).collect()
}

/// Closed region `index` (1-based) in original coordinates.
pub fn region_polygon(frame: &TriangleFrame, m: CenterSpec, scheme: PartitionScheme, index: usize) -> Result<ProximityRegion> {
    if !(1..=3).contains(&index) {
        return Err(Error::InvalidParam(format!("region index {index} not in 1..=3")));
    }
    let i = index - 1;
    let mut hs = basic_triangle_halfplanes(frame);
    match (scheme.target, scheme.method) {
        (Target::Edge, Method::Orthogonal) => {
            return Err(Error::InvalidScheme("edge regions have no orthogonal construction".into()))
        }
        (Target::Edge, Method::Lines) => hs.extend(edge_region_halfplanes(frame, interior_center(frame, m)?, i)),
        (Target::Vertex, method) => hs.extend(VertexRule::new(frame, m, method)?.halfplanes(frame, i)),
    }
    Ok(ProximityRegion::from_halfplanes(hs).mapped(&frame.from_basic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{normalize_to_basic, region_area};

    fn te() -> TriangleFrame {
        TriangleFrame::equilateral()
    }

    fn basic(c1: f64, c2: f64) -> TriangleFrame {
        normalize_to_basic([Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(c1, c2)]).unwrap()
    }

    #[test]
    fn cm_lines_examples() {
        let f = te();
        let r = |x, y| vertex_region_of(Point2::new(x, y), &f, CenterSpec::CM, Method::Lines).unwrap();
        let g = triangle_center(&f, CenterKind::CM);
        let to_orig = |p: Point2| f.from_basic.apply(p);
        assert_eq!(vertex_region_of(to_orig(Point2::new(0.1, 0.05)), &f, CenterSpec::CM, Method::Lines).unwrap(), 1);
        assert_eq!(vertex_region_of(to_orig(Point2::new(0.9, 0.05)), &f, CenterSpec::CM, Method::Lines).unwrap(), 2);
        let gc = to_orig(g);
        assert_eq!(r(gc.x, gc.y), 1);
        assert_eq!(edge_region_of(to_orig(Point2::new(0.5, 0.05)), &f, CenterSpec::CM).unwrap(), 3);
        assert_eq!(edge_region_of(gc, &f, CenterSpec::CM).unwrap(), 1);
    }

    #[test]
    fn equal_thirds_in_equilateral() {
        let f = te();
        let sch = PartitionScheme { target: Target::Vertex, method: Method::Lines };
        for i in 1..=3 {
            let a = region_area(&region_polygon(&f, CenterSpec::CM, sch, i).unwrap()).unwrap();
            assert!((a - f.area() / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn obtuse_cc_orthogonal_partitions() {
        let f = basic(0.2, 0.15);
        assert_eq!(f.shape_class, ShapeClass::Obtuse);
        let sch = PartitionScheme { target: Target::Vertex, method: Method::Orthogonal };
        let s: f64 = (1..=3).map(|i| region_area(&region_polygon(&f, CenterSpec::CC, sch, i).unwrap()).unwrap()).sum();
        assert!((s - f.area()).abs() < 1e-12 * f.area().max(1.0));
        let lines = PartitionScheme { target: Target::Vertex, method: Method::Lines };
        assert_eq!(region_polygon(&f, CenterSpec::CC, lines, 1), Err(Error::CenterOutsideTriangle));
    }

    #[test]
    fn orthogonal_cm_condition() {
        let bad = basic(0.45, 0.1);
        assert!(2.0 * 0.45f64.powi(2) + 2.0 * 0.01 - 0.45 < 0.0);
        assert!(matches!(VertexRule::new(&bad, CenterSpec::CM, Method::Orthogonal), Err(Error::ProjectionOffEdge(_))));
        let good = basic(0.4, 0.3);
        assert!(VertexRule::new(&good, CenterSpec::CM, Method::Orthogonal).is_ok());
    }

    #[test]
    fn edge_orthogonal_rejected() {
        let sch = PartitionScheme { target: Target::Edge, method: Method::Orthogonal };
        assert!(matches!(region_polygon(&te(), CenterSpec::CM, sch, 1), Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn oc_needs_acute() {
        let f = basic(0.2, 0.15);
        assert!(matches!(resolve_center(&f, CenterSpec::OC), Err(Error::InvalidScheme(_))));
    }
}
