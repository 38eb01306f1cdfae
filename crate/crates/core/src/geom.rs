//! Planar primitives, triangle normalization, the equilateral shear and
//! convex regions given as half-plane systems.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for on-boundary decisions in basic coordinates.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    /// Panics on non-finite input; use [`Point2::try_new`] for untrusted data.
    pub fn new(x: f64, y: f64) -> Point2 {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point2 { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Point2> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn dist2(self, o: Point2) -> f64 {
        (self - o).norm2()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2 { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2 { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2 { x: self.x * k, y: self.y * k }
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2 { x: -self.x, y: -self.y }
    }
}

fn coord(p: Point2) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// Exact sign of the orientation determinant: positive for a left turn a→b→c.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Exact incircle determinant; positive when d lies inside the circle through
/// the counterclockwise triple a, b, c.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    Rigid,
    RigidScale,
    Shear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: [[f64; 2]; 2],
    pub offset: [f64; 2],
    pub kind: MapKind,
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap { linear: [[1.0, 0.0], [0.0, 1.0]], offset: [0.0, 0.0], kind: MapKind::Rigid }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let l = &self.linear;
        Point2 {
            x: l[0][0] * p.x + l[0][1] * p.y + self.offset[0],
            y: l[1][0] * p.x + l[1][1] * p.y + self.offset[1],
        }
    }

    pub fn det(&self) -> f64 {
        let l = &self.linear;
        l[0][0] * l[1][1] - l[0][1] * l[1][0]
    }

    pub fn inverse(&self) -> AffineMap {
        let l = &self.linear;
        let d = self.det();
        let inv = [[l[1][1] / d, -l[0][1] / d], [-l[1][0] / d, l[0][0] / d]];
        let o = self.offset;
        AffineMap {
            linear: inv,
            offset: [
                -(inv[0][0] * o[0] + inv[0][1] * o[1]),
                -(inv[1][0] * o[0] + inv[1][1] * o[1]),
            ],
            kind: self.kind,
        }
    }

    /// Uniform scale factor of a similarity.
    pub fn scale(&self) -> f64 {
        self.det().abs().sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeClass {
    Acute,
    Right,
    Obtuse,
    DegenerateInterval,
}

/// A triangle together with its similarity onto the basic triangle
/// ((0,0),(1,0),(c1,c2)). `vertices[i]` is the original point sent to basic
/// vertex i, and `input_index[i]` its position in the caller's input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleFrame {
    pub vertices: [Point2; 3],
    pub input_index: [usize; 3],
    pub c1: f64,
    pub c2: f64,
    pub to_basic: AffineMap,
    pub from_basic: AffineMap,
    pub shape_class: ShapeClass,
}

impl TriangleFrame {
    /// The basic triangle ((0,0),(1,0),(c1,c2)) itself, with identity maps.
    pub fn basic(c1: f64, c2: f64) -> Result<TriangleFrame> {
        if !(c1 > 0.0 && c1 <= 0.5 && c2 > 0.0 && (1.0 - c1).powi(2) + c2 * c2 <= 1.0 + 1e-12) {
            return Err(Error::InvalidParam(format!("({c1}, {c2}) is not a basic-triangle apex")));
        }
        let mut f = normalize_to_basic([Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(c1, c2)])?;
        f.vertices = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(c1, c2)];
        f.input_index = [0, 1, 2];
        f.c1 = c1;
        f.c2 = c2;
        f.to_basic = AffineMap::identity();
        f.from_basic = AffineMap::identity();
        Ok(f)
    }

    pub fn equilateral() -> TriangleFrame {
        TriangleFrame::basic(0.5, 3f64.sqrt() / 2.0).unwrap()
    }

    pub fn basic_vertices(&self) -> [Point2; 3] {
        [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(self.c1, self.c2)]
    }

    /// Barycentric coordinates of a point given in basic coordinates.
    pub fn bary(&self, q: Point2) -> [f64; 3] {
        let l3 = q.y / self.c2;
        let l2 = q.x - self.c1 * l3;
        [1.0 - l2 - l3, l2, l3]
    }

    pub fn from_bary(&self, l: [f64; 3]) -> Point2 {
        Point2 { x: l[1] + l[2] * self.c1, y: l[2] * self.c2 }
    }

    /// The barycentric coordinate λ_i as an affine functional g·q + h of basic coordinates.
    pub fn bary_functional(&self, i: usize) -> ([f64; 2], f64) {
        let (c1, c2) = (self.c1, self.c2);
        match i {
            0 => ([-1.0, (c1 - 1.0) / c2], 1.0),
            1 => ([1.0, -c1 / c2], 0.0),
            _ => ([0.0, 1.0 / c2], 0.0),
        }
    }

    pub fn area(&self) -> f64 {
        let k = self.from_basic.scale();
        0.5 * self.c2 * k * k
    }

    pub fn basic_area(&self) -> f64 {
        0.5 * self.c2
    }

    pub fn is_equilateral(&self) -> bool {
        (self.c1 - 0.5).abs() < EPS && (self.c2 - 3f64.sqrt() / 2.0).abs() < EPS
    }
}

/// Maps a triangle onto the basic triangle by translation, rotation,
/// reflection and scaling.
pub fn normalize_to_basic(t: [Point2; 3]) -> Result<TriangleFrame> {
    for p in &t {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    let o = orient(t[0], t[1], t[2]);
    let len2: [f64; 3] = std::array::from_fn(|k| t[(k + 1) % 3].dist2(t[(k + 2) % 3]));
    let lmax2 = len2.iter().cloned().fold(0.0, f64::max);
    if o == 0.0 || o.abs() <= 1e-12 * lmax2 {
        return Err(Error::DegenerateTriangle);
    }
    let mut k = 0;
    for i in 1..3 {
        if len2[i] > len2[k] * (1.0 + 1e-12) {
            k = i;
        }
    }
    let apex = t[k];
    let (mut ia, mut ib) = ((k + 1) % 3, (k + 2) % 3);
    let l = len2[k].sqrt();
    let s = (apex - t[ia]).dot(t[ib] - t[ia]) / len2[k];
    let lex = |p: Point2, q: Point2| (p.x, p.y) < (q.x, q.y);
    if (s - 0.5).abs() <= 1e-12 {
        if lex(t[ib], t[ia]) {
            std::mem::swap(&mut ia, &mut ib);
        }
    } else if s > 0.5 {
        std::mem::swap(&mut ia, &mut ib);
    }
    let (a, b) = (t[ia], t[ib]);
    let u = (b - a) * (1.0 / l);
    let flip = if u.cross(apex - a) < 0.0 { -1.0 } else { 1.0 };
    let linear = [[u.x / l, u.y / l], [-flip * u.y / l, flip * u.x / l]];
    let offset = [
        -(linear[0][0] * a.x + linear[0][1] * a.y),
        -(linear[1][0] * a.x + linear[1][1] * a.y),
    ];
    let to_basic = AffineMap { linear, offset, kind: MapKind::RigidScale };
    let q = to_basic.apply(apex);
    let c1 = q.x.clamp(f64::MIN_POSITIVE, 0.5);
    let c2 = q.y;
    let d = c2 * c2 - (c1 - c1 * c1);
    let shape_class = if d.abs() <= 1e-12 {
        ShapeClass::Right
    } else if d > 0.0 {
        ShapeClass::Acute
    } else {
        ShapeClass::Obtuse
    };
    Ok(TriangleFrame {
        vertices: [a, b, apex],
        input_index: [ia, ib, k],
        c1,
        c2,
        to_basic,
        from_basic: to_basic.inverse(),
        shape_class,
    })
}

/// The shear/scale sending the basic triangle of `frame` onto the standard
/// equilateral triangle; `p` is in basic coordinates.
pub fn phi_e(p: Point2, frame: &TriangleFrame) -> Point2 {
    phi_e_map(frame).apply(p)
}

pub fn phi_e_inverse(p: Point2, frame: &TriangleFrame) -> Point2 {
    let s3 = 3f64.sqrt();
    Point2 { x: p.x - (1.0 - 2.0 * frame.c1) / s3 * p.y, y: 2.0 * frame.c2 / s3 * p.y }
}

pub fn phi_e_map(frame: &TriangleFrame) -> AffineMap {
    let s3 = 3f64.sqrt();
    AffineMap {
        linear: [[1.0, (1.0 - 2.0 * frame.c1) / (2.0 * frame.c2)], [0.0, s3 / (2.0 * frame.c2)]],
        offset: [0.0, 0.0],
        kind: MapKind::Shear,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CenterKind {
    CC,
    IC,
    CM,
    OC,
}

/// Triangle center in basic coordinates.
pub fn triangle_center(frame: &TriangleFrame, which: CenterKind) -> Point2 {
    let (c1, c2) = (frame.c1, frame.c2);
    match which {
        CenterKind::CC => Point2::new(0.5, (c1 * c1 - c1 + c2 * c2) / (2.0 * c2)),
        CenterKind::IC => {
            let a1 = ((1.0 - c1).powi(2) + c2 * c2).sqrt();
            let a2 = (c1 * c1 + c2 * c2).sqrt();
            let p = a1 + a2 + 1.0;
            Point2::new((a2 + c1) / p, c2 / p)
        }
        CenterKind::CM => Point2::new((1.0 + c1) / 3.0, c2 / 3.0),
        CenterKind::OC => Point2::new(c1, c1 * (1.0 - c1) / c2),
    }
}

/// The constraint a·p ≤ b.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: [f64; 2],
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: [f64; 2], offset: f64) -> HalfPlane {
        HalfPlane { normal, offset }
    }

    /// The half-plane {g·p + h ≤ 0}.
    pub fn from_le_zero(g: [f64; 2], h: f64) -> HalfPlane {
        HalfPlane { normal: g, offset: -h }
    }

    pub fn eval(&self, p: Point2) -> f64 {
        self.normal[0] * p.x + self.normal[1] * p.y - self.offset
    }

    fn mapped(&self, m: &AffineMap) -> HalfPlane {
        let l = &m.linear;
        let a = self.normal;
        HalfPlane {
            normal: [a[0] * l[0][0] + a[1] * l[1][0], a[0] * l[0][1] + a[1] * l[1][1]],
            offset: self.offset - (a[0] * m.offset[0] + a[1] * m.offset[1]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
    pub open: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Degenerate {
    Point(Point2),
    Segment(Point2, Point2),
    Empty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProximityRegion {
    pub halfplanes: Vec<HalfPlane>,
    pub disk: Option<Disk>,
    pub degenerate: Option<Degenerate>,
}

impl ProximityRegion {
    pub fn from_halfplanes(halfplanes: Vec<HalfPlane>) -> ProximityRegion {
        ProximityRegion { halfplanes, disk: None, degenerate: None }
    }

    pub fn point(p: Point2) -> ProximityRegion {
        ProximityRegion { halfplanes: vec![], disk: None, degenerate: Some(Degenerate::Point(p)) }
    }

    pub fn segment(a: Point2, b: Point2) -> ProximityRegion {
        ProximityRegion { halfplanes: vec![], disk: None, degenerate: Some(Degenerate::Segment(a, b)) }
    }

    pub fn empty() -> ProximityRegion {
        ProximityRegion { halfplanes: vec![], disk: None, degenerate: Some(Degenerate::Empty) }
    }

    /// Closed membership with slack `tol` (open disks stay strict).
    pub fn contains_tol(&self, p: Point2, tol: f64) -> bool {
        match self.degenerate {
            Some(Degenerate::Empty) => return false,
            Some(Degenerate::Point(q)) => return p.dist(q) <= tol,
            Some(Degenerate::Segment(a, b)) => return point_segment_dist(p, a, b) <= tol,
            None => {}
        }
        for h in &self.halfplanes {
            let n = (h.normal[0].hypot(h.normal[1])).max(1e-300);
            if h.eval(p) > tol * n {
                return false;
            }
        }
        if let Some(d) = self.disk {
            let r = p.dist(d.center);
            if d.open {
                if r >= d.radius {
                    return false;
                }
            } else if r > d.radius + tol {
                return false;
            }
        }
        true
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.contains_tol(p, EPS)
    }

    /// Pushes the region through an affine map (used to move regions between
    /// basic and original coordinates).
    pub fn mapped(&self, m: &AffineMap) -> ProximityRegion {
        let inv = m.inverse();
        let degenerate = self.degenerate.map(|d| match d {
            Degenerate::Point(p) => Degenerate::Point(m.apply(p)),
            Degenerate::Segment(a, b) => Degenerate::Segment(m.apply(a), m.apply(b)),
            Degenerate::Empty => Degenerate::Empty,
        });
        ProximityRegion {
            halfplanes: self.halfplanes.iter().map(|h| h.mapped(&inv)).collect(),
            disk: self.disk.map(|d| Disk { center: m.apply(d.center), radius: d.radius * m.scale(), open: d.open }),
            degenerate,
        }
    }

    fn bounding_halfplanes(&self) -> Vec<HalfPlane> {
        let mut hs = self.halfplanes.clone();
        if let Some(d) = self.disk {
            let c = d.center;
            hs.push(HalfPlane::new([1.0, 0.0], c.x + d.radius));
            hs.push(HalfPlane::new([-1.0, 0.0], -(c.x - d.radius)));
            hs.push(HalfPlane::new([0.0, 1.0], c.y + d.radius));
            hs.push(HalfPlane::new([0.0, -1.0], -(c.y - d.radius)));
        }
        hs
    }

    /// Counterclockwise vertex cycle of the half-plane polygon (disk ignored,
    /// except that its bounding box participates).
    pub fn vertices(&self) -> Result<Vec<Point2>> {
        if self.degenerate.is_some() {
            return Ok(match self.degenerate {
                Some(Degenerate::Point(p)) => vec![p],
                Some(Degenerate::Segment(a, b)) => vec![a, b],
                _ => vec![],
            });
        }
        let hs = self.bounding_halfplanes();
        check_bounded(&hs)?;
        Ok(polygon_vertices(&hs))
    }
}

fn point_segment_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let l2 = d.norm2();
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / l2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

fn check_bounded(hs: &[HalfPlane]) -> Result<()> {
    let mut angles: Vec<f64> = hs
        .iter()
        .filter(|h| h.normal[0] != 0.0 || h.normal[1] != 0.0)
        .map(|h| h.normal[1].atan2(h.normal[0]))
        .collect();
    if angles.len() < 3 {
        return Err(Error::UnboundedRegion);
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    if gap >= PI - 1e-12 {
        return Err(Error::UnboundedRegion);
    }
    Ok(())
}

fn polygon_vertices(hs: &[HalfPlane]) -> Vec<Point2> {
    let scale = hs.iter().map(|h| h.offset.abs()).fold(1.0, f64::max);
    let tol = 1e-10 * scale;
    let mut pts: Vec<Point2> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let (a, b) = (hs[i], hs[j]);
            let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
            let na = a.normal[0].hypot(a.normal[1]);
            let nb = b.normal[0].hypot(b.normal[1]);
            if det.abs() <= 1e-14 * na * nb {
                continue;
            }
            let x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
            let y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
            let p = Point2 { x, y };
            if !p.x.is_finite() || !p.y.is_finite() {
                continue;
            }
            let ok = hs.iter().all(|h| h.eval(p) <= tol * h.normal[0].hypot(h.normal[1]));
            if ok && !pts.iter().any(|q| q.dist(p) <= 1e-11 * scale) {
                pts.push(p);
            }
        }
    }
    if pts.len() < 3 {
        return pts;
    }
    let n = pts.len() as f64;
    let c = pts.iter().fold(Point2 { x: 0.0, y: 0.0 }, |s, p| s + *p) * (1.0 / n);
    pts.sort_by(|p, q| {
        let a = (p.y - c.y).atan2(p.x - c.x);
        let b = (q.y - c.y).atan2(q.x - c.x);
        a.partial_cmp(&b).unwrap()
    });
    pts
}

fn shoelace(pts: &[Point2]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..pts.len() {
        s += pts[i].cross(pts[(i + 1) % pts.len()]);
    }
    0.5 * s
}

/// Signed area of disk(0, r) ∩ triangle(0, a, b).
fn disk_wedge_area(a: Point2, b: Point2, r: f64) -> f64 {
    let sector = |u: Point2, v: Point2| 0.5 * r * r * u.cross(v).atan2(u.dot(v));
    let r2 = r * r;
    if a.norm2() <= r2 && b.norm2() <= r2 {
        return 0.5 * a.cross(b);
    }
    let d = b - a;
    let qa = d.norm2();
    if qa == 0.0 {
        return 0.0;
    }
    let qb = 2.0 * a.dot(d);
    let qc = a.norm2() - r2;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return sector(a, b);
    }
    let s = disc.sqrt();
    let t1 = (-qb - s) / (2.0 * qa);
    let t2 = (-qb + s) / (2.0 * qa);
    if t2 <= 0.0 || t1 >= 1.0 {
        return sector(a, b);
    }
    let p1 = a + d * t1.max(0.0);
    let p2 = a + d * t2.min(1.0);
    sector(a, p1) + 0.5 * p1.cross(p2) + sector(p2, b)
}

pub fn region_area(r: &ProximityRegion) -> Result<f64> {
    if r.degenerate.is_some() {
        return Ok(0.0);
    }
    let pts = r.vertices()?;
    if pts.len() < 3 {
        return Ok(0.0);
    }
    match r.disk {
        None => Ok(shoelace(&pts).abs()),
        Some(d) => {
            if d.radius <= 0.0 {
                return Ok(0.0);
            }
            let mut s = 0.0;
            for i in 0..pts.len() {
                let a = pts[i] - d.center;
                let b = pts[(i + 1) % pts.len()] - d.center;
                s += disk_wedge_area(a, b, d.radius);
            }
            Ok(s.abs())
        }
    }
}

/// A union of convex pieces with pairwise disjoint interiors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionUnion {
    pub pieces: Vec<ProximityRegion>,
}

impl RegionUnion {
    pub fn empty() -> RegionUnion {
        RegionUnion { pieces: vec![] }
    }

    pub fn single(r: ProximityRegion) -> RegionUnion {
        RegionUnion { pieces: vec![r] }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.iter().all(|p| matches!(p.degenerate, Some(Degenerate::Empty)))
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.pieces.iter().any(|r| r.contains(p))
    }

    pub fn area(&self) -> Result<f64> {
        let mut s = 0.0;
        for p in &self.pieces {
            s += region_area(p)?;
        }
        Ok(s)
    }

    pub fn mapped(&self, m: &AffineMap) -> RegionUnion {
        RegionUnion { pieces: self.pieces.iter().map(|r| r.mapped(m)).collect() }
    }

    /// Convex hull of all piece vertices, counterclockwise.
    pub fn hull_vertices(&self) -> Result<Vec<Point2>> {
        let mut pts = Vec::new();
        for p in &self.pieces {
            pts.extend(p.vertices()?);
        }
        Ok(convex_hull(pts))
    }
}

/// Replaces a piece whose polygon collapses to fewer than three vertices by
/// the matching degenerate tag.
pub fn canonical_piece(r: ProximityRegion) -> Result<ProximityRegion> {
    if r.degenerate.is_some() {
        return Ok(r);
    }
    let v = r.vertices()?;
    Ok(match v.len() {
        0 => ProximityRegion::empty(),
        1 => ProximityRegion::point(v[0]),
        2 => ProximityRegion::segment(v[0], v[1]),
        _ => {
            if shoelace(&v).abs() <= 1e-14 {
                let (mut a, mut b) = (v[0], v[1]);
                for p in &v {
                    for q in &v {
                        if p.dist(*q) > a.dist(b) {
                            a = *p;
                            b = *q;
                        }
                    }
                }
                ProximityRegion::segment(a, b)
            } else {
                r
            }
        }
    })
}

pub fn convex_hull(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) <= 1e-12);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn triangle_halfplanes(t: [Point2; 3]) -> Vec<HalfPlane> {
    let sign = if orient(t[0], t[1], t[2]) > 0.0 { 1.0 } else { -1.0 };
    (0..3)
        .map(|i| {
            let a = t[(i + 1) % 3];
            let b = t[(i + 2) % 3];
            let e = b - a;
            let n = [sign * e.y, -sign * e.x];
            HalfPlane::new(n, n[0] * a.x + n[1] * a.y)
        })
        .collect()
}
