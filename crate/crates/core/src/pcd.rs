//! Proximity catch digraphs over X given Y, their relative arc density and
//! domination numbers, plus the 1-D class cover catch digraph.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::delaunay::{triangulate, Triangulation};
use crate::error::{Error, Result};
use crate::geom::{normalize_to_basic, Point2};
use crate::proximity::{PreparedMap, ProximityMapSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct PcDigraph {
    pub n: usize,
    /// `arcs[i]` holds the successors of vertex i; no self-loops.
    pub arcs: Vec<FixedBitSet>,
    /// Delaunay cell of each vertex; `None` for the 1-D construction.
    pub cell_of: Vec<Option<usize>>,
    /// Input position of each vertex.
    pub index_map: Vec<usize>,
    /// Input positions of X points outside the convex hull of Y.
    pub excluded: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalFixture {
    pub y_points: Vec<f64>,
    pub x_points: Vec<f64>,
}

impl IntervalFixture {
    pub fn new(mut y_points: Vec<f64>, x_points: Vec<f64>) -> Result<IntervalFixture> {
        if y_points.iter().chain(&x_points).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if y_points.is_empty() {
            return Err(Error::TooFewSites(0));
        }
        y_points.sort_by(f64::total_cmp);
        if let Some(w) = y_points.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSites(w, w + 1));
        }
        Ok(IntervalFixture { y_points, x_points })
    }
}

impl PcDigraph {
    pub fn empty(n: usize) -> PcDigraph {
        PcDigraph {
            n,
            arcs: vec![FixedBitSet::with_capacity(n); n],
            cell_of: vec![None; n],
            index_map: (0..n).collect(),
            excluded: Vec::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> PcDigraph {
        let mut g = PcDigraph::empty(n);
        for &(i, j) in arcs {
            g.add_arc(i, j);
        }
        g
    }

    pub fn add_arc(&mut self, i: usize, j: usize) {
        if i != j {
            self.arcs[i].insert(j);
        }
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs[i].contains(j)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn arc_list(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().enumerate().flat_map(|(i, s)| s.ones().map(move |j| (i, j))).collect()
    }

    /// Closed out-neighborhood of every vertex.
    fn closed(&self) -> Vec<FixedBitSet> {
        self.arcs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut c = s.clone();
                c.insert(i);
                c
            })
            .collect()
    }

    /// Vertex sets of the weakly connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (i, j) in self.arc_list() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..self.n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn induced(&self, vs: &[usize]) -> PcDigraph {
        let mut local = vec![usize::MAX; self.n];
        for (k, &v) in vs.iter().enumerate() {
            local[v] = k;
        }
        let mut g = PcDigraph::empty(vs.len());
        for (k, &v) in vs.iter().enumerate() {
            for j in self.arcs[v].ones() {
                if local[j] != usize::MAX {
                    g.add_arc(k, local[j]);
                }
            }
        }
        g
    }
}

/// Builds the digraph with arc i → j iff X_j ∈ N(X_i). X points outside the
/// hull of Y are dropped and listed in `excluded`.
pub fn build(x_points: &[Point2], y_points: &[Point2], spec: ProximityMapSpec) -> Result<PcDigraph> {
    if x_points.is_empty() {
        return Err(Error::EmptyX);
    }
    if x_points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
        return Err(Error::NonFinite);
    }
    spec.validate()?;
    let tri = triangulate(y_points)?;
    let maps: Vec<PreparedMap> = (0..tri.triangles.len())
        .map(|t| PreparedMap::new(&normalize_to_basic(tri.triangle_points(t))?, spec))
        .collect::<Result<_>>()?;

    let mut index_map = Vec::new();
    let mut cell_of = Vec::new();
    let mut excluded = Vec::new();
    for (k, p) in x_points.iter().enumerate() {
        match tri.locate(*p).cell() {
            Some(c) => {
                index_map.push(k);
                cell_of.push(Some(c));
            }
            None => excluded.push(k),
        }
    }
    let n = index_map.len();
    let mut g = PcDigraph::empty(n);
    g.index_map = index_map;
    g.cell_of = cell_of.clone();
    g.excluded = excluded;
    let pts: Vec<Point2> = g.index_map.iter().map(|&k| x_points[k]).collect();

    if spec.is_cell_local() {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); tri.triangles.len()];
        for (v, c) in cell_of.iter().enumerate() {
            members[c.unwrap()].push(v);
        }
        let rows: Vec<Vec<(usize, usize)>> = members
            .par_iter()
            .enumerate()
            .map(|(c, vs)| {
                let m = &maps[c];
                let basic: Vec<Point2> = vs.iter().map(|&v| m.to_basic(pts[v])).collect();
                let mut out = Vec::new();
                for (a, &i) in vs.iter().enumerate() {
                    for (b, &j) in vs.iter().enumerate() {
                        if a != b && m.catches_basic(basic[a], basic[b]) {
                            out.push((i, j));
                        }
                    }
                }
                out
            })
            .collect();
        for (i, j) in rows.into_iter().flatten() {
            assert_eq!(g.cell_of[i], g.cell_of[j], "arc crosses cells");
            g.add_arc(i, j);
        }
    } else {
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let r = spherical_radius(&tri, pts[i]);
                (0..n).filter(|&j| j != i && pts[i].dist(pts[j]) < r).collect()
            })
            .collect();
        for (i, js) in rows.into_iter().enumerate() {
            for j in js {
                g.add_arc(i, j);
            }
        }
    }
    Ok(g)
}

fn spherical_radius(tri: &Triangulation, x: Point2) -> f64 {
    tri.sites.iter().map(|y| x.dist(*y)).fold(f64::INFINITY, f64::min)
}

/// The interval construction: arc i → j iff |x_j − x_i| < min_y |x_i − y|.
pub fn build_interval_cccd(f: &IntervalFixture) -> PcDigraph {
    let n = f.x_points.len();
    let mut g = PcDigraph::empty(n);
    for (i, &xi) in f.x_points.iter().enumerate() {
        let k = f.y_points.partition_point(|&y| y < xi);
        let mut r = f64::INFINITY;
        if k < f.y_points.len() {
            r = r.min(f.y_points[k] - xi);
        }
        if k > 0 {
            r = r.min(xi - f.y_points[k - 1]);
        }
        for (j, &xj) in f.x_points.iter().enumerate() {
            if (xj - xi).abs() < r {
                g.add_arc(i, j);
            }
        }
    }
    g
}

/// |A| / (n(n − 1)) over the retained vertices.
pub fn relative_density(g: &PcDigraph) -> Result<f64> {
    if g.n < 2 {
        return Err(Error::TooFewVertices(g.n));
    }
    Ok(g.arc_count() as f64 / (g.n as f64 * (g.n as f64 - 1.0)))
}

/// Size of the set built by repeatedly taking the vertex whose closed
/// neighborhood covers the most uncovered vertices, lowest index on ties.
pub fn domination_greedy(g: &PcDigraph) -> usize {
    greedy_set(&g.closed(), g.n).len()
}

fn greedy_set(closed: &[FixedBitSet], n: usize) -> Vec<usize> {
    let mut uncovered = FixedBitSet::with_capacity(n);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while !uncovered.is_clear() {
        let (best, _) = closed
            .iter()
            .enumerate()
            .map(|(v, c)| (v, c.intersection_count(&uncovered)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        uncovered.difference_with(&closed[best]);
        chosen.push(best);
    }
    chosen
}

/// Resource limits for the exact search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactLimits {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for ExactLimits {
    fn default() -> ExactLimits {
        ExactLimits { max_vertices: 2048, max_nodes: 200_000_000 }
    }
}

pub fn domination_exact(g: &PcDigraph) -> Result<usize> {
    domination_exact_with(g, ExactLimits::default())
}

/// Minimum dominating set size. Components are solved independently; each is
/// searched by increasing cardinality, branching on the uncovered vertex
/// with the fewest dominators.
pub fn domination_exact_with(g: &PcDigraph, limits: ExactLimits) -> Result<usize> {
    if g.n == 0 {
        return Err(Error::TooFewVertices(0));
    }
    let mut total = 0;
    let mut budget = limits.max_nodes;
    for comp in g.components() {
        if comp.len() > limits.max_vertices {
            return Err(Error::InstanceTooLarge(format!(
                "component with {} vertices exceeds the exact-search cap {}",
                comp.len(),
                limits.max_vertices
            )));
        }
        total += if comp.len() == 1 { 1 } else { exact_component(&g.induced(&comp), &mut budget)? };
    }
    Ok(total)
}

struct Search<'a> {
    closed: &'a [FixedBitSet],
    dominators: Vec<Vec<usize>>,
    max_cover: usize,
    budget: &'a mut u64,
}

impl Search<'_> {
    fn feasible(&mut self, uncovered: &FixedBitSet, k: usize) -> Result<bool> {
        if *self.budget == 0 {
            return Err(Error::InstanceTooLarge("exact domination search exceeded its node budget".into()));
        }
        *self.budget -= 1;
        let left = uncovered.count_ones(..);
        if left == 0 {
            return Ok(true);
        }
        if k == 0 || left > k * self.max_cover {
            return Ok(false);
        }
        let u = uncovered
            .ones()
            .min_by_key(|&u| self.dominators[u].len())
            .expect("nonempty");
        if k == 1 {
            return Ok(self.dominators[u].iter().any(|&v| uncovered.is_subset(&self.closed[v])));
        }
        let mut cands: Vec<(usize, usize)> =
            self.dominators[u].iter().map(|&v| (self.closed[v].intersection_count(uncovered), v)).collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, v) in cands {
            let mut next = uncovered.clone();
            next.difference_with(&self.closed[v]);
            if self.feasible(&next, k - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn exact_component(g: &PcDigraph, budget: &mut u64) -> Result<usize> {
    let closed = g.closed();
    let upper = greedy_set(&closed, g.n).len();
    let mut dominators = vec![Vec::new(); g.n];
    for (v, c) in closed.iter().enumerate() {
        for u in c.ones() {
            dominators[u].push(v);
        }
    }
    let max_cover = closed.iter().map(|c| c.count_ones(..)).max().unwrap_or(1);
    let lower = g.n.div_ceil(max_cover);
    let mut all = FixedBitSet::with_capacity(g.n);
    all.insert_range(..);
    let mut s = Search { closed: &closed, dominators, max_cover, budget };
    for k in lower..upper {
        if s.feasible(&all, k)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::CenterSpec;
    use crate::proximity::Ratio;

    fn star(n: usize) -> PcDigraph {
        PcDigraph::from_arcs(n, &(1..n).map(|j| (0, j)).collect::<Vec<_>>())
    }

    #[test]
    fn density_examples() {
        let full = PcDigraph::from_arcs(3, &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
        assert_eq!(relative_density(&full).unwrap(), 1.0);
        assert_eq!(relative_density(&PcDigraph::empty(5)).unwrap(), 0.0);
        let g = PcDigraph::from_arcs(3, &[(0, 1), (1, 0), (0, 2)]);
        assert_eq!(relative_density(&g).unwrap(), 0.5);
        assert!(matches!(relative_density(&PcDigraph::empty(1)), Err(Error::TooFewVertices(1))));
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_exact(&star(6)).unwrap(), 1);
        assert_eq!(domination_greedy(&star(6)), 1);
        assert_eq!(domination_exact(&PcDigraph::empty(4)).unwrap(), 4);
        assert_eq!(domination_greedy(&PcDigraph::empty(4)), 4);
        assert_eq!(domination_exact(&PcDigraph::from_arcs(3, &[(0, 1)])).unwrap(), 2);
    }

    #[test]
    fn two_hubs() {
        // {5, 7} covers every vertex.
        let arcs = [(0, 1), (0, 2), (0, 3), (0, 4), (5, 1), (5, 6), (5, 3), (7, 2), (7, 8), (7, 4), (7, 9), (5, 9)];
        let mut g = PcDigraph::from_arcs(10, &arcs);
        g.add_arc(5, 0);
        let exact = domination_exact(&g).unwrap();
        assert!(domination_greedy(&g) >= exact);
        assert_eq!(exact, 2);
    }

    #[test]
    fn budget_exhaustion() {
        let g = PcDigraph::empty(30);
        let lim = ExactLimits { max_vertices: 10, max_nodes: 10 };
        assert!(matches!(domination_exact_with(&g, lim), Ok(30)));
        let g = PcDigraph::from_arcs(30, &(0..29).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(matches!(domination_exact_with(&g, lim), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn interval_examples() {
        let f = IntervalFixture::new(vec![1.0, 0.0], vec![0.3]).unwrap();
        assert_eq!(build_interval_cccd(&f).arc_count(), 0);
        let f = IntervalFixture::new(vec![0.0, 1.0], vec![0.3, 0.5]).unwrap();
        let g = build_interval_cccd(&f);
        assert!(g.has_arc(0, 1) && g.has_arc(1, 0));
        let f = IntervalFixture::new(vec![0.0, 1.0], vec![0.3, 0.62]).unwrap();
        let g = build_interval_cccd(&f);
        assert!(!g.has_arc(0, 1) && g.has_arc(1, 0));
    }

    fn square_y() -> Vec<Point2> {
        vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)]
    }

    #[test]
    fn build_basics() {
        let pe = ProximityMapSpec::PropEdge { r: Ratio::Finite(2.0), center: CenterSpec::CM, method: crate::partitions::Method::Lines };
        let g = build(&[Point2::new(0.3, 0.2)], &square_y(), pe).unwrap();
        assert_eq!((g.n, g.arc_count()), (1, 0));
        let x = [Point2::new(0.9, 0.2), Point2::new(0.1, 0.8), Point2::new(3.0, 3.0)];
        let g = build(&x, &square_y(), pe).unwrap();
        assert_ne!(g.cell_of[0], g.cell_of[1]);
        assert_eq!(g.arc_count(), 0);
        assert_eq!(g.excluded, vec![2]);
        assert!(matches!(build(&[], &square_y(), pe), Err(Error::EmptyX)));
        let inf = ProximityMapSpec::PropEdge { r: Ratio::Infinite, center: CenterSpec::CM, method: crate::partitions::Method::Lines };
        let x: Vec<Point2> = (1..6).map(|k| Point2::new(0.15 * k as f64, 0.1 * k as f64 * 0.9)).collect();
        let g = build(&x, &square_y(), inf).unwrap();
        assert_eq!(relative_density(&g).unwrap(), 1.0);
    }

    #[test]
    fn cc_lines_rejected_on_obtuse_cell() {
        let y = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.4, 0.1)];
        let spec = ProximityMapSpec::PropEdge { r: Ratio::Finite(1.5), center: CenterSpec::CC, method: crate::partitions::Method::Lines };
        assert!(build(&[Point2::new(0.4, 0.05)], &y, spec).is_err());
    }
}
