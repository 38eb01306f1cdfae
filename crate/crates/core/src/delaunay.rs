//! Delaunay triangulation by lexicographic incremental insertion and Lawson
//! flips. Cocircular quadruples are resolved by lifting site i to
//! |p_i|² + ε_i with ε growing with the site index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{incircle, orient, Point2};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangulation {
    pub sites: Vec<Point2>,
    /// Counterclockwise vertex triples (site indices).
    pub triangles: Vec<[usize; 3]>,
    /// `adjacency[t][i]` is the triangle across the edge opposite vertex i.
    pub adjacency: Vec<[Option<usize>; 3]>,
    /// Boundary cycle, counterclockwise.
    pub hull: Vec<usize>,
    #[serde(skip)]
    grid: Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    Cell(usize),
    Outside,
}

impl Location {
    pub fn cell(self) -> Option<usize> {
        match self {
            Location::Cell(c) => Some(c),
            Location::Outside => None,
        }
    }
}

/// Perturbed incircle sign for the counterclockwise triple (a,b,c) and query d.
fn incircle_sos(pts: &[Point2], a: usize, b: usize, c: usize, d: usize) -> f64 {
    let (pa, pb, pc, pd) = (pts[a], pts[b], pts[c], pts[d]);
    let det = incircle(pa, pb, pc, pd);
    if det != 0.0 {
        return det;
    }
    let mut idx = [a, b, c, d];
    idx.sort_unstable_by(|x, y| y.cmp(x));
    for k in idx {
        let cof = if k == a {
            orient(pd, pb, pc)
        } else if k == b {
            orient(pa, pd, pc)
        } else if k == c {
            orient(pa, pb, pd)
        } else {
            -orient(pa, pb, pc)
        };
        if cof != 0.0 {
            return cof;
        }
    }
    0.0
}

struct Builder<'a> {
    pts: &'a [Point2],
    tri: Vec<[usize; 3]>,
    adj: Vec<[usize; 3]>,
    hull_next: Vec<usize>,
    hull_prev: Vec<usize>,
    hull_tri: Vec<usize>,
    stack: Vec<(usize, usize)>,
}

impl<'a> Builder<'a> {
    fn add_triangle(&mut self, v: [usize; 3]) -> usize {
        self.tri.push(v);
        self.adj.push([NONE; 3]);
        self.tri.len() - 1
    }

    fn edge_slot(&self, t: usize, a: usize, b: usize) -> usize {
        let v = self.tri[t];
        for i in 0..3 {
            let (p, q) = (v[(i + 1) % 3], v[(i + 2) % 3]);
            if (p == a && q == b) || (p == b && q == a) {
                return i;
            }
        }
        unreachable!("edge not in triangle")
    }

    fn set_neighbor(&mut self, t: usize, a: usize, b: usize, n: usize) {
        if t != NONE {
            let s = self.edge_slot(t, a, b);
            self.adj[t][s] = n;
        }
    }

    fn legalize(&mut self) {
        while let Some((t, i)) = self.stack.pop() {
            let u = self.adj[t][i];
            if u == NONE {
                continue;
            }
            let v = self.tri[t];
            let (a, b, c) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
            let j = self.edge_slot(u, b, c);
            let d = self.tri[u][j];
            if incircle_sos(self.pts, a, b, c, d) <= 0.0 {
                continue;
            }
            let n_ab = self.adj[t][(i + 2) % 3];
            let n_ca = self.adj[t][(i + 1) % 3];
            let ju = self.tri[u];
            let n_bd = self.adj[u][(0..3).find(|&k| ju[k] == c).unwrap()];
            let n_dc = self.adj[u][(0..3).find(|&k| ju[k] == b).unwrap()];
            self.tri[t] = [a, b, d];
            self.adj[t] = [n_bd, u, n_ab];
            self.tri[u] = [a, d, c];
            self.adj[u] = [n_dc, n_ca, t];
            if n_bd != NONE {
                self.set_neighbor(n_bd, b, d, t);
            } else {
                self.hull_tri[b] = t;
            }
            if n_ca != NONE {
                self.set_neighbor(n_ca, c, a, u);
            } else {
                self.hull_tri[c] = u;
            }
            if n_ab == NONE {
                self.hull_tri[a] = t;
            }
            if n_dc == NONE {
                self.hull_tri[d] = u;
            }
            self.stack.extend([(t, 0), (t, 2), (u, 0), (u, 2)]);
        }
    }

    fn visible(&self, u: usize, p: usize) -> bool {
        orient(self.pts[u], self.pts[self.hull_next[u]], self.pts[p]) < 0.0
    }

    fn insert(&mut self, p: usize, last: usize) {
        let mut start = NONE;
        if self.visible(last, p) {
            start = last;
        } else if self.visible(self.hull_prev[last], p) {
            start = self.hull_prev[last];
        } else {
            let mut u = self.hull_next[last];
            while u != last {
                if self.visible(u, p) {
                    start = u;
                    break;
                }
                u = self.hull_next[u];
            }
        }
        assert!(start != NONE, "lexicographic insertion must see a hull edge");
        let mut first = start;
        while self.visible(self.hull_prev[first], p) && self.hull_prev[first] != start {
            first = self.hull_prev[first];
        }
        let mut chain = vec![first];
        let mut u = first;
        while self.visible(u, p) {
            u = self.hull_next[u];
            chain.push(u);
            if u == first {
                break;
            }
        }
        let mut prev_new = NONE;
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            let old = self.hull_tri[a];
            let t = self.add_triangle([b, a, p]);
            self.adj[t][2] = old;
            self.set_neighbor(old, a, b, t);
            if prev_new != NONE {
                self.adj[t][0] = prev_new;
                self.adj[prev_new][1] = t;
            }
            prev_new = t;
            self.stack.push((t, 2));
        }
        let last_v = *chain.last().unwrap();
        for &v in &chain[1..chain.len() - 1] {
            self.hull_next[v] = NONE;
            self.hull_prev[v] = NONE;
        }
        let first_tri = self.tri.len() - (chain.len() - 1);
        self.hull_next[first] = p;
        self.hull_prev[p] = first;
        self.hull_next[p] = last_v;
        self.hull_prev[last_v] = p;
        self.hull_tri[first] = first_tri;
        self.hull_tri[p] = prev_new;
        self.legalize();
    }
}

pub fn triangulate(sites: &[Point2]) -> Result<Triangulation> {
    let m = sites.len();
    if m < 3 {
        return Err(Error::TooFewSites(m));
    }
    if sites.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| (sites[i].x, sites[i].y, i).partial_cmp(&(sites[j].x, sites[j].y, j)).unwrap());
    for w in order.windows(2) {
        if sites[w[0]] == sites[w[1]] {
            return Err(Error::DuplicateSites(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let k = (2..m)
        .find(|&k| orient(sites[order[0]], sites[order[1]], sites[order[k]]) != 0.0)
        .ok_or(Error::AllCollinear)?;
    let mut b = Builder {
        pts: sites,
        tri: Vec::with_capacity(2 * m),
        adj: Vec::with_capacity(2 * m),
        hull_next: vec![NONE; m],
        hull_prev: vec![NONE; m],
        hull_tri: vec![NONE; m],
        stack: Vec::new(),
    };
    let apex = order[k];
    let left = orient(sites[order[0]], sites[order[1]], sites[apex]) > 0.0;
    let line: Vec<usize> = if left { order[..k].to_vec() } else { order[..k].iter().rev().cloned().collect() };
    let mut prev = NONE;
    for w in line.windows(2) {
        let t = b.add_triangle([w[0], w[1], apex]);
        b.hull_tri[w[0]] = t;
        b.hull_next[w[0]] = w[1];
        b.hull_prev[w[1]] = w[0];
        if prev != NONE {
            b.adj[t][1] = prev;
            b.adj[prev][0] = t;
        }
        prev = t;
    }
    let (lo, hi) = (line[0], line[k - 1]);
    b.hull_next[hi] = apex;
    b.hull_prev[apex] = hi;
    b.hull_next[apex] = lo;
    b.hull_prev[lo] = apex;
    b.hull_tri[hi] = prev;
    b.hull_tri[apex] = 0;
    for t in 0..b.tri.len() {
        b.stack.push((t, 0));
        b.stack.push((t, 1));
    }
    b.legalize();
    let mut last = apex;
    for &p in &order[k + 1..] {
        b.insert(p, last);
        last = p;
    }
    let mut hull = vec![last];
    let mut u = b.hull_next[last];
    while u != last {
        hull.push(u);
        u = b.hull_next[u];
    }
    let adjacency = b.adj.iter().map(|a| a.map(|t| if t == NONE { None } else { Some(t) })).collect();
    let triangles = b.tri;
    let grid = Grid::build(sites, &triangles);
    Ok(Triangulation { sites: sites.to_vec(), triangles, adjacency, hull, grid })
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Grid {
    x0: f64,
    y0: f64,
    cw: f64,
    ch: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<usize>>,
}

impl Grid {
    fn build(sites: &[Point2], tris: &[[usize; 3]]) -> Grid {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in sites {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let side = (tris.len() as f64).sqrt().ceil().max(1.0) as usize;
        let (nx, ny) = (side, side);
        let cw = ((x1 - x0) / nx as f64).max(f64::MIN_POSITIVE);
        let ch = ((y1 - y0) / ny as f64).max(f64::MIN_POSITIVE);
        let mut g = Grid { x0, y0, cw, ch, nx, ny, cells: vec![Vec::new(); nx * ny] };
        for (t, v) in tris.iter().enumerate() {
            let ps = v.map(|i| sites[i]);
            let bx0 = g.col(ps.iter().map(|p| p.x).fold(f64::MAX, f64::min));
            let bx1 = g.col(ps.iter().map(|p| p.x).fold(f64::MIN, f64::max));
            let by0 = g.row(ps.iter().map(|p| p.y).fold(f64::MAX, f64::min));
            let by1 = g.row(ps.iter().map(|p| p.y).fold(f64::MIN, f64::max));
            for r in by0..=by1 {
                for c in bx0..=bx1 {
                    g.cells[r * nx + c].push(t);
                }
            }
        }
        g
    }

    fn col(&self, x: f64) -> usize {
        (((x - self.x0) / self.cw).floor().max(0.0) as usize).min(self.nx - 1)
    }

    fn row(&self, y: f64) -> usize {
        (((y - self.y0) / self.ch).floor().max(0.0) as usize).min(self.ny - 1)
    }
}

impl Triangulation {
    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        self.triangles[t].map(|i| self.sites[i])
    }

    pub fn contains_closed(&self, t: usize, p: Point2) -> bool {
        let [a, b, c] = self.triangle_points(t);
        orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0
    }

    /// Cell containing `p`; boundary points go to the lowest-index incident cell.
    pub fn locate(&self, p: Point2) -> Location {
        let g = &self.grid;
        if g.cells.is_empty() {
            return self.locate_scan(p);
        }
        let eps_x = g.cw * g.nx as f64;
        let eps_y = g.ch * g.ny as f64;
        if p.x < g.x0 || p.y < g.y0 || p.x > g.x0 + eps_x || p.y > g.y0 + eps_y {
            return Location::Outside;
        }
        let cell = &g.cells[g.row(p.y) * g.nx + g.col(p.x)];
        let mut best = None;
        for &t in cell {
            if self.contains_closed(t, p) && best.is_none_or(|b| t < b) {
                best = Some(t);
            }
        }
        best.map_or(Location::Outside, Location::Cell)
    }

    /// Exhaustive oracle for [`Triangulation::locate`].
    pub fn locate_scan(&self, p: Point2) -> Location {
        (0..self.triangles.len())
            .find(|&t| self.contains_closed(t, p))
            .map_or(Location::Outside, Location::Cell)
    }

    pub fn hull_area(&self) -> f64 {
        let h = &self.hull;
        let mut s = 0.0;
        for i in 0..h.len() {
            s += self.sites[h[i]].cross(self.sites[h[(i + 1) % h.len()]]);
        }
        0.5 * s
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_points(t);
        0.5 * (b - a).cross(c - a)
    }

    /// True when no site lies strictly inside any circumcircle.
    pub fn is_delaunay(&self) -> bool {
        self.triangles.iter().all(|&[a, b, c]| {
            let (pa, pb, pc) = (self.sites[a], self.sites[b], self.sites[c]);
            self.sites.iter().all(|&d| incircle(pa, pb, pc, d) <= 0.0)
        })
    }

    pub fn circumcenter(&self, t: usize) -> (Point2, f64) {
        let [a, b, c] = self.triangle_points(t);
        let (b, c) = (b - a, c - a);
        let d = 2.0 * b.cross(c);
        let ux = (c.y * b.norm2() - b.y * c.norm2()) / d;
        let uy = (b.x * c.norm2() - c.x * b.norm2()) / d;
        let u = Point2 { x: ux, y: uy };
        (a + u, u.norm())
    }
}
