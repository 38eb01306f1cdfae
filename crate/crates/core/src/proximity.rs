//! Proximity maps on one triangle. All evaluation happens in basic
//! coordinates through barycentric coordinates λ, with β = λ(M).
//!
//! - proportional-edge: N = {p ∈ T : 1 − λ_v(p) ≤ r (1 − λ_v(x))}, v the vertex region of x
//! - central similarity: for x ∈ R_M(e_i) and s = τ λ_i(x)/β_i,
//!   N = {p : λ_j(p) ≥ λ_j(x) − s β_j for all j}
//! - directional doubling: N = {p ∈ T : λ_i(p) ≤ 2 λ_i(x)}, i the edge region of x

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    canonical_piece, Disk, HalfPlane, Point2, ProximityRegion, RegionUnion, TriangleFrame, EPS,
};
use crate::partitions::{
    basic_triangle_halfplanes, edge_index, edge_region_halfplanes, interior_center, resolve_center,
    CenterSpec, Method, VertexRule,
};

/// Expansion factor of the proportional-edge map; `Infinite` means N(x) = T.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Ratio {
    Finite(f64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ProximityMapSpec {
    Spherical,
    ArcSlice { center: CenterSpec, method: Method },
    PropEdge { r: Ratio, center: CenterSpec, method: Method },
    CentralSim { tau: f64, center: CenterSpec },
    DirDouble { center: CenterSpec },
    DoubleX,
}

impl ProximityMapSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProximityMapSpec::PropEdge { r: Ratio::Finite(r), .. } if !(r.is_finite() && r >= 1.0) => {
                Err(Error::InvalidSpec(format!("proportional-edge needs r >= 1, got {r}")))
            }
            ProximityMapSpec::CentralSim { tau, .. } if !(0.0..=1.0).contains(&tau) => {
                Err(Error::InvalidSpec(format!("central similarity needs 0 <= tau <= 1, got {tau}")))
            }
            _ => Ok(()),
        }
    }

    /// Families whose regions stay inside the containing triangle.
    pub fn is_cell_local(&self) -> bool {
        !matches!(self, ProximityMapSpec::Spherical)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Spherical,
    Arc { rule: VertexRule },
    PropEdge { rule: VertexRule, r: Option<f64> },
    CentralSim { beta: [f64; 3], tau: f64 },
    DirDouble { beta: [f64; 3] },
    DoubleX,
}

/// A map resolved against one frame; reuse it for many evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedMap {
    pub frame: TriangleFrame,
    pub spec: ProximityMapSpec,
    kind: Kind,
}

fn near_vertex(frame: &TriangleFrame, q: Point2) -> Option<usize> {
    frame.basic_vertices().iter().position(|y| y.dist(q) <= EPS)
}

fn in_basic(l: [f64; 3]) -> bool {
    l.iter().all(|&v| v >= -EPS)
}

fn ge_halfplane(frame: &TriangleFrame, i: usize, c: f64) -> HalfPlane {
    let (g, h) = frame.bary_functional(i);
    HalfPlane::from_le_zero([-g[0], -g[1]], c - h)
}

fn le_halfplane(frame: &TriangleFrame, i: usize, c: f64) -> HalfPlane {
    let (g, h) = frame.bary_functional(i);
    HalfPlane::from_le_zero(g, h - c)
}

impl PreparedMap {
    pub fn new(frame: &TriangleFrame, spec: ProximityMapSpec) -> Result<PreparedMap> {
        spec.validate()?;
        let kind = match spec {
            ProximityMapSpec::Spherical => Kind::Spherical,
            ProximityMapSpec::ArcSlice { center, method } => Kind::Arc { rule: VertexRule::new(frame, center, method)? },
            ProximityMapSpec::PropEdge { r, center, method } => Kind::PropEdge {
                rule: VertexRule::new(frame, center, method)?,
                r: match r {
                    Ratio::Finite(r) => Some(r),
                    Ratio::Infinite => None,
                },
            },
            ProximityMapSpec::CentralSim { tau, center } => {
                Kind::CentralSim { beta: interior_center(frame, center)?, tau }
            }
            ProximityMapSpec::DirDouble { center } => Kind::DirDouble { beta: interior_center(frame, center)? },
            ProximityMapSpec::DoubleX => Kind::DoubleX,
        };
        Ok(PreparedMap { frame: frame.clone(), spec, kind })
    }

    pub fn to_basic(&self, x: Point2) -> Point2 {
        self.frame.to_basic.apply(x)
    }

    /// Arc test x → y for points in basic coordinates, evaluated directly
    /// from the defining inequalities.
    pub fn catches_basic(&self, qx: Point2, qy: Point2) -> bool {
        let f = &self.frame;
        if let Kind::Spherical = self.kind {
            let r = f.basic_vertices().iter().map(|y| qx.dist(*y)).fold(f64::MAX, f64::min);
            return qx.dist(qy) < r;
        }
        let ly = f.bary(qy);
        if !in_basic(ly) {
            return false;
        }
        let point = || qx.dist(qy) <= EPS;
        let lx = f.bary(qx);
        match self.kind {
            Kind::Spherical => unreachable!(),
            Kind::Arc { rule } => {
                let v = rule.classify(f, qx);
                qx.dist(qy) <= qx.dist(f.basic_vertices()[v]) + EPS
            }
            Kind::PropEdge { rule, r } => {
                if near_vertex(f, qx).is_some() {
                    return point();
                }
                let Some(r) = r else { return true };
                let v = rule.classify(f, qx);
                ly[v] >= 1.0 - r * (1.0 - lx[v]) - EPS
            }
            Kind::CentralSim { beta, tau } => {
                if tau == 0.0 || lx.iter().any(|&l| l <= EPS) {
                    return point();
                }
                let i = edge_index(lx, beta);
                let s = tau * lx[i] / beta[i];
                (0..3).all(|j| ly[j] >= lx[j] - s * beta[j] - EPS)
            }
            Kind::DirDouble { beta } => {
                let i = edge_index(lx, beta);
                if lx[i] <= EPS {
                    return ly[i] <= EPS;
                }
                ly[i] <= 2.0 * lx[i] + EPS
            }
            Kind::DoubleX => {
                if near_vertex(f, qx).is_some_and(|v| v < 2) {
                    return point();
                }
                if qx.x <= 0.5 {
                    qy.x <= 2.0 * qx.x + EPS
                } else {
                    qy.x >= 2.0 * qx.x - 1.0 - EPS
                }
            }
        }
    }

    /// Smallest slack (in λ units, or basic abscissa for the double-X map)
    /// among the comparisons that decide the arc x → y.
    pub fn decision_margin(&self, qx: Point2, qy: Point2) -> f64 {
        let f = &self.frame;
        let lx = f.bary(qx);
        let ly = f.bary(qy);
        let tri = ly.iter().cloned().fold(f64::MAX, |m, v| m.min(v.abs()));
        let gap = |v: [f64; 3], max: bool| {
            let mut s = v;
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if max {
                s[2] - s[1]
            } else {
                s[1] - s[0]
            }
        };
        match self.kind {
            Kind::Spherical => {
                let r = f.basic_vertices().iter().map(|y| qx.dist(*y)).fold(f64::MAX, f64::min);
                (qx.dist(qy) - r).abs()
            }
            Kind::Arc { rule } => {
                let v = rule.classify(f, qx);
                let slack = (qx.dist(qy) - qx.dist(f.basic_vertices()[v])).abs();
                let part = match rule {
                    VertexRule::Lines { beta } => gap(std::array::from_fn(|i| lx[i] / beta[i]), true),
                    VertexRule::Orthogonal { .. } => f64::MAX,
                };
                slack.min(part).min(tri)
            }
            Kind::PropEdge { rule, r } => {
                let Some(r) = r else { return tri };
                let v = rule.classify(f, qx);
                let slack = (ly[v] - (1.0 - r * (1.0 - lx[v]))).abs();
                let part = match rule {
                    VertexRule::Lines { beta } => gap(std::array::from_fn(|i| lx[i] / beta[i]), true),
                    VertexRule::Orthogonal { .. } => f64::MAX,
                };
                slack.min(part).min(tri)
            }
            Kind::CentralSim { beta, tau } => {
                let i = edge_index(lx, beta);
                let s = tau * lx[i] / beta[i];
                let slack = (0..3).map(|j| (ly[j] - (lx[j] - s * beta[j])).abs()).fold(f64::MAX, f64::min);
                slack.min(gap(std::array::from_fn(|k| lx[k] / beta[k]), false)).min(tri)
            }
            Kind::DirDouble { beta } => {
                let i = edge_index(lx, beta);
                let slack = (ly[i] - 2.0 * lx[i]).abs();
                slack.min(gap(std::array::from_fn(|k| lx[k] / beta[k]), false)).min(tri)
            }
            Kind::DoubleX => {
                let slack = if qx.x <= 0.5 { qy.x - 2.0 * qx.x } else { qy.x - (2.0 * qx.x - 1.0) };
                slack.abs().min((qx.x - 0.5).abs()).min(tri)
            }
        }
    }

    pub fn catches(&self, x: Point2, y: Point2) -> Result<bool> {
        let qx = self.to_basic(x);
        if self.kind != Kind::Spherical && !in_basic(self.frame.bary(qx)) {
            return Err(Error::OutsideTriangle);
        }
        Ok(self.catches_basic(qx, self.to_basic(y)))
    }

    /// N(x) in basic coordinates.
    pub fn region_basic(&self, qx: Point2) -> Result<ProximityRegion> {
        let f = &self.frame;
        let lx = f.bary(qx);
        if self.kind != Kind::Spherical && !in_basic(lx) {
            return Err(Error::OutsideTriangle);
        }
        let mut hs = basic_triangle_halfplanes(f);
        let region = match self.kind {
            Kind::Spherical => {
                let r = f.basic_vertices().iter().map(|y| qx.dist(*y)).fold(f64::MAX, f64::min);
                ProximityRegion { halfplanes: vec![], disk: Some(Disk { center: qx, radius: r, open: true }), degenerate: None }
            }
            Kind::Arc { rule } => {
                if near_vertex(f, qx).is_some() {
                    return Ok(ProximityRegion::point(qx));
                }
                let v = rule.classify(f, qx);
                let radius = qx.dist(f.basic_vertices()[v]);
                ProximityRegion { halfplanes: hs, disk: Some(Disk { center: qx, radius, open: false }), degenerate: None }
            }
            Kind::PropEdge { rule, r } => {
                if near_vertex(f, qx).is_some() {
                    return Ok(ProximityRegion::point(qx));
                }
                if let Some(r) = r {
                    let v = rule.classify(f, qx);
                    hs.push(ge_halfplane(f, v, 1.0 - r * (1.0 - lx[v])));
                }
                ProximityRegion::from_halfplanes(hs)
            }
            Kind::CentralSim { beta, tau } => {
                if tau == 0.0 || lx.iter().any(|&l| l <= EPS) {
                    return Ok(ProximityRegion::point(qx));
                }
                let i = edge_index(lx, beta);
                let s = tau * lx[i] / beta[i];
                ProximityRegion::from_halfplanes((0..3).map(|j| ge_halfplane(f, j, lx[j] - s * beta[j])).collect())
            }
            Kind::DirDouble { beta } => {
                let i = edge_index(lx, beta);
                let y = f.basic_vertices();
                if lx[i] <= EPS {
                    return Ok(ProximityRegion::segment(y[(i + 1) % 3], y[(i + 2) % 3]));
                }
                hs.push(le_halfplane(f, i, 2.0 * lx[i]));
                ProximityRegion::from_halfplanes(hs)
            }
            Kind::DoubleX => {
                if near_vertex(f, qx).is_some_and(|v| v < 2) {
                    return Ok(ProximityRegion::point(qx));
                }
                if qx.x <= 0.5 {
                    hs.push(HalfPlane::new([1.0, 0.0], 2.0 * qx.x));
                } else {
                    hs.push(HalfPlane::new([-1.0, 0.0], 1.0 - 2.0 * qx.x));
                }
                ProximityRegion::from_halfplanes(hs)
            }
        };
        Ok(region)
    }

    /// N(x) in original coordinates.
    pub fn region(&self, x: Point2) -> Result<ProximityRegion> {
        Ok(self.region_basic(self.to_basic(x))?.mapped(&self.frame.from_basic))
    }

    /// Points whose region is the whole triangle, in basic coordinates.
    pub fn superset_basic(&self) -> Result<RegionUnion> {
        let f = &self.frame;
        let tri = basic_triangle_halfplanes(f);
        let pieces = |extra: &dyn Fn(usize) -> Vec<HalfPlane>| -> Result<RegionUnion> {
            let mut out = Vec::new();
            for i in 0..3 {
                let mut hs = tri.clone();
                hs.extend(extra(i));
                let p = canonical_piece(ProximityRegion::from_halfplanes(hs))?;
                if p.degenerate != Some(crate::geom::Degenerate::Empty) {
                    out.push(p);
                }
            }
            Ok(RegionUnion { pieces: out })
        };
        match (self.kind, self.spec) {
            (Kind::Spherical, _) => Err(Error::InvalidSpec("spherical regions have no superset region".into())),
            (Kind::PropEdge { r: None, .. }, _) => Ok(RegionUnion::single(ProximityRegion::from_halfplanes(tri))),
            (Kind::PropEdge { rule, r: Some(r) }, _) => pieces(&|i| {
                let mut hs = rule.halfplanes(f, i);
                hs.push(le_halfplane(f, i, 1.0 - 1.0 / r));
                hs
            }),
            (Kind::CentralSim { beta, tau }, _) => {
                if tau < 1.0 {
                    Ok(RegionUnion::empty())
                } else {
                    Ok(RegionUnion::single(ProximityRegion::point(f.from_bary(beta))))
                }
            }
            (Kind::Arc { .. }, ProximityMapSpec::ArcSlice { center: CenterSpec::CC, method: Method::Orthogonal }) => {
                let m = resolve_center(f, CenterSpec::CC)?;
                if in_basic(f.bary(m)) {
                    Ok(RegionUnion::single(ProximityRegion::point(m)))
                } else {
                    Ok(RegionUnion::empty())
                }
            }
            (Kind::Arc { rule }, _) => {
                let y = f.basic_vertices();
                pieces(&|i| {
                    let mut hs = rule.halfplanes(f, i);
                    for j in (0..3).filter(|&j| j != i) {
                        let e = (y[i] - y[j]) * 2.0;
                        hs.push(HalfPlane::new([e.x, e.y], y[i].norm2() - y[j].norm2()));
                    }
                    hs
                })
            }
            (Kind::DirDouble { beta }, _) => pieces(&|i| {
                let mut hs = edge_region_halfplanes(f, beta, i);
                hs.push(ge_halfplane(f, i, 0.5));
                hs
            }),
            (Kind::DoubleX, _) => {
                let top = f.c2 * 0.5 / (1.0 - f.c1);
                Ok(RegionUnion::single(ProximityRegion::segment(Point2::new(0.5, 0.0), Point2::new(0.5, top))))
            }
        }
    }

    pub fn superset_region(&self) -> Result<RegionUnion> {
        Ok(self.superset_basic()?.mapped(&self.frame.from_basic))
    }

    pub fn lambda0(&self) -> Lambda0 {
        let v = self.frame.vertices;
        match self.kind {
            Kind::Spherical | Kind::Arc { .. } | Kind::PropEdge { .. } => Lambda0::Points(v.to_vec()),
            Kind::CentralSim { tau, .. } if tau == 0.0 => Lambda0::Whole,
            Kind::CentralSim { .. } | Kind::DirDouble { .. } => Lambda0::Boundary,
            Kind::DoubleX => Lambda0::Points(vec![v[0], v[1]]),
        }
    }
}

/// The zero-area locus of a map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Lambda0 {
    Points(Vec<Point2>),
    Boundary,
    Whole,
}

pub fn region(x: Point2, frame: &TriangleFrame, spec: ProximityMapSpec) -> Result<ProximityRegion> {
    PreparedMap::new(frame, spec)?.region(x)
}

pub fn catches(x: Point2, y: Point2, frame: &TriangleFrame, spec: ProximityMapSpec) -> Result<bool> {
    PreparedMap::new(frame, spec)?.catches(x, y)
}

pub fn superset_region(frame: &TriangleFrame, spec: ProximityMapSpec) -> Result<RegionUnion> {
    PreparedMap::new(frame, spec)?.superset_region()
}

pub fn lambda0_region(frame: &TriangleFrame, spec: ProximityMapSpec) -> Result<Lambda0> {
    Ok(PreparedMap::new(frame, spec)?.lambda0())
}

fn check_tr(r: f64) -> Result<()> {
    if !(1.0..1.5).contains(&r) {
        return Err(Error::InvalidSpec(format!("the inner triangle needs 1 <= r < 3/2, got {r}")));
    }
    Ok(())
}

/// Corners t1, t2, t3 of {λ_i ≥ 1 − 1/r for all i}, in basic coordinates.
pub fn t_r_corners(frame: &TriangleFrame, r: f64) -> Result<[Point2; 3]> {
    check_tr(r)?;
    let a = 1.0 - 1.0 / r;
    let b = 1.0 - 2.0 * a;
    Ok(std::array::from_fn(|i| {
        let mut l = [a; 3];
        l[i] = b;
        frame.from_bary(l)
    }))
}

/// The inner triangle as a region, in original coordinates.
pub fn t_r_triangle(frame: &TriangleFrame, r: f64) -> Result<ProximityRegion> {
    check_tr(r)?;
    let hs = (0..3).map(|i| ge_halfplane(frame, i, 1.0 - 1.0 / r)).collect();
    Ok(ProximityRegion::from_halfplanes(hs).mapped(&frame.from_basic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::region_area;

    fn te() -> TriangleFrame {
        TriangleFrame::equilateral()
    }

    fn pe(r: f64) -> ProximityMapSpec {
        ProximityMapSpec::PropEdge { r: Ratio::Finite(r), center: CenterSpec::CM, method: Method::Lines }
    }

    #[test]
    fn medial_triangle_points_get_whole_triangle() {
        let f = te();
        let n = region(Point2::new(0.5, 0.25), &f, pe(2.0)).unwrap();
        assert!((region_area(&n).unwrap() - f.area()).abs() < 1e-12);
        let y1 = region(f.vertices[0], &f, pe(2.0)).unwrap();
        assert_eq!(region_area(&y1).unwrap(), 0.0);
    }

    #[test]
    fn central_similarity_at_center() {
        let f = te();
        let cs = ProximityMapSpec::CentralSim { tau: 1.0, center: CenterSpec::CM };
        let m = Point2::new(0.5, 3f64.sqrt() / 6.0);
        let n = region(m, &f, cs).unwrap();
        assert!((region_area(&n).unwrap() - f.area()).abs() < 1e-12);
        assert!(catches(Point2::new(0.4, 0.2), Point2::new(0.4, 0.2), &f, cs).unwrap());
    }

    #[test]
    fn arc_slice_at_circumcenter() {
        let f = te();
        let spec = ProximityMapSpec::ArcSlice { center: CenterSpec::CC, method: Method::Orthogonal };
        let n = region(f.from_basic.apply(resolve_center(&f, CenterSpec::CC).unwrap()), &f, spec).unwrap();
        assert!((region_area(&n).unwrap() - f.area()).abs() < 1e-9);
    }

    #[test]
    fn double_x_tie_goes_left() {
        let f = te();
        let n = region(Point2::new(0.5, 0.3), &f, ProximityMapSpec::DoubleX).unwrap();
        assert!((region_area(&n).unwrap() - f.area()).abs() < 1e-12);
    }

    #[test]
    fn pe_r1_area_is_similarity_squared() {
        let f = te();
        let x = Point2::new(0.2, 0.05);
        let l = f.bary(f.to_basic.apply(x));
        let a = region_area(&region(x, &f, pe(1.0)).unwrap()).unwrap();
        assert!((a - (1.0 - l[0]).powi(2) * f.area()).abs() < 1e-12);
    }

    #[test]
    fn inner_triangle_corners() {
        let f = te();
        let t = t_r_corners(&f, 1.25).unwrap();
        let s3 = 3f64.sqrt();
        assert!(t[0].dist(Point2::new(0.3, s3 / 10.0)) < 1e-12);
        assert!(t[1].dist(Point2::new(0.7, s3 / 10.0)) < 1e-12);
        assert!(t[2].dist(Point2::new(0.5, 3.0 * s3 / 10.0)) < 1e-12);
        let near = t_r_corners(&f, 1.5 - 1e-12).unwrap();
        for c in near {
            assert!(c.dist(Point2::new(0.5, s3 / 6.0)) < 1e-9);
        }
        assert!(t_r_triangle(&f, 1.5).is_err());
    }

    #[test]
    fn superset_regions() {
        let f = te();
        assert!(superset_region(&f, pe(1.4)).unwrap().is_empty());
        let at = superset_region(&f, pe(1.5)).unwrap();
        assert_eq!(at.area().unwrap(), 0.0);
        assert!(at.contains(Point2::new(0.5, 3f64.sqrt() / 6.0)));
        let s = superset_region(&f, pe(2.0)).unwrap();
        assert!((s.area().unwrap() - f.area() / 4.0).abs() < 1e-12);
        assert!(superset_region(&f, ProximityMapSpec::Spherical).is_err());
    }

    #[test]
    fn lambda0() {
        let f = te();
        assert_eq!(lambda0_region(&f, pe(2.0)).unwrap(), Lambda0::Points(f.vertices.to_vec()));
        let cs0 = ProximityMapSpec::CentralSim { tau: 0.0, center: CenterSpec::CM };
        assert_eq!(lambda0_region(&f, cs0).unwrap(), Lambda0::Whole);
        assert_eq!(lambda0_region(&f, ProximityMapSpec::DoubleX).unwrap(), Lambda0::Points(f.vertices[..2].to_vec()));
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(PreparedMap::new(&te(), pe(0.5)), Err(Error::InvalidSpec(_))));
        let cs = ProximityMapSpec::CentralSim { tau: 1.5, center: CenterSpec::CM };
        assert!(matches!(PreparedMap::new(&te(), cs), Err(Error::InvalidSpec(_))));
        assert_eq!(region(Point2::new(2.0, 2.0), &te(), pe(2.0)), Err(Error::OutsideTriangle));
    }
}
