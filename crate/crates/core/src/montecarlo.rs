//! Reproducible simulation. Replicate k draws from ChaCha8 seeded with the
//! run seed on stream k, so results do not depend on the worker count.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{gamma_limit, CenterCase};
use crate::delaunay::{triangulate, Triangulation};
use crate::error::{Error, Result};
use crate::geom::{normalize_to_basic, Point2, TriangleFrame};
use crate::partitions::CenterSpec;
use crate::pcd::{build, domination_exact, relative_density};
use crate::proximity::{t_r_corners, PreparedMap, ProximityMapSpec, Ratio};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// The standard equilateral triangle ((0,0),(1,0),(1/2,√3/2)).
    Equilateral,
    SingleTriangle { vertices: [Point2; 3] },
    Hull { y_points: Vec<Point2> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    pub replicates: usize,
    pub n_x: usize,
    pub map: ProximityMapSpec,
    pub support: Support,
    #[serde(default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub experiment: String,
    pub estimates: BTreeMap<String, f64>,
    pub std_errors: BTreeMap<String, f64>,
    pub replicates: usize,
    /// Kept out of the JSON so that reruns are byte-identical.
    #[serde(skip)]
    pub wall_clock: f64,
    /// Per-replicate statistics, for the long-form CSV.
    #[serde(skip)]
    pub per_replicate: Vec<BTreeMap<String, f64>>,
}

impl SimResult {
    /// Long-form rows (replicate, statistic, value).
    pub fn csv_rows(&self) -> Vec<(usize, String, f64)> {
        self.per_replicate
            .iter()
            .enumerate()
            .flat_map(|(k, m)| m.iter().map(move |(n, v)| (k, n.clone(), *v)))
            .collect()
    }
}

pub fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    rng
}

/// Runs `f` for every replicate on a pool of `workers` threads and returns
/// the results in replicate order.
fn run_replicates<T, F>(cfg: &SimConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    if cfg.replicates == 0 {
        return Err(Error::InvalidParam("replicates must be >= 1".into()));
    }
    if cfg.workers == 0 {
        return Err(Error::InvalidParam("workers must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..cfg.replicates)
            .into_par_iter()
            .map(|k| f(&mut replicate_rng(cfg.seed, k)))
            .collect::<Result<Vec<T>>>()
    })
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (m, f64::NAN);
    }
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Uniform point in a triangle: with s = √u1, p = (1 − s)a + s(1 − u2)b + s·u2·c.
pub fn sample_in(t: [Point2; 3], rng: &mut ChaCha8Rng) -> Point2 {
    let s = rng.random::<f64>().sqrt();
    let u2 = rng.random::<f64>();
    t[0] * (1.0 - s) + t[1] * (s * (1.0 - u2)) + t[2] * (s * u2)
}

pub fn sample_uniform_triangle(frame: &TriangleFrame, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    (0..n).map(|_| sample_in(frame.vertices, rng)).collect()
}

/// The sampling domain resolved once per run.
enum Domain {
    Triangle(TriangleFrame),
    Hull { tri: Triangulation, weights: WeightedIndex<f64> },
}

impl Domain {
    fn new(s: &Support) -> Result<Domain> {
        Ok(match s {
            Support::Equilateral => Domain::Triangle(TriangleFrame::equilateral()),
            Support::SingleTriangle { vertices } => Domain::Triangle(normalize_to_basic(*vertices)?),
            Support::Hull { y_points } => {
                let tri = triangulate(y_points)?;
                let areas: Vec<f64> = (0..tri.triangles.len()).map(|t| tri.triangle_area(t)).collect();
                let weights =
                    WeightedIndex::new(&areas).map_err(|e| Error::InvalidParam(format!("hull weights: {e}")))?;
                Domain::Hull { tri, weights }
            }
        })
    }

    fn y_points(&self) -> Vec<Point2> {
        match self {
            Domain::Triangle(f) => f.vertices.to_vec(),
            Domain::Hull { tri, .. } => tri.sites.clone(),
        }
    }

    fn frames(&self) -> Result<Vec<TriangleFrame>> {
        match self {
            Domain::Triangle(f) => Ok(vec![f.clone()]),
            Domain::Hull { tri, .. } => {
                (0..tri.triangles.len()).map(|t| normalize_to_basic(tri.triangle_points(t))).collect()
            }
        }
    }

    /// A uniform point and the index of the cell it was drawn in.
    fn sample(&self, rng: &mut ChaCha8Rng) -> (usize, Point2) {
        match self {
            Domain::Triangle(f) => (0, sample_in(f.vertices, rng)),
            Domain::Hull { tri, weights } => {
                let t = weights.sample(rng);
                (t, sample_in(tri.triangle_points(t), rng))
            }
        }
    }
}

/// Fraction of iid uniform pairs (X1, X2) with X2 ∈ N(X1); each replicate
/// draws `n_x` pairs.
pub fn estimate_arc_probability(cfg: &SimConfig) -> Result<SimResult> {
    let start = Instant::now();
    if cfg.n_x == 0 {
        return Err(Error::InvalidParam("n_x must be >= 1".into()));
    }
    let dom = Domain::new(&cfg.support)?;
    let maps: Vec<PreparedMap> = dom.frames()?.iter().map(|f| PreparedMap::new(f, cfg.map)).collect::<Result<_>>()?;
    let ys = dom.y_points();
    let spherical = !cfg.map.is_cell_local();
    let fractions = run_replicates(cfg, |rng| {
        let mut hits = 0usize;
        for _ in 0..cfg.n_x {
            let (c1, x1) = dom.sample(rng);
            let (c2, x2) = dom.sample(rng);
            let caught = if spherical {
                x1.dist(x2) < ys.iter().map(|y| x1.dist(*y)).fold(f64::INFINITY, f64::min)
            } else {
                c1 == c2 && maps[c1].catches_basic(maps[c1].to_basic(x1), maps[c1].to_basic(x2))
            };
            hits += usize::from(caught);
        }
        Ok(hits as f64 / cfg.n_x as f64)
    })?;
    let (m, se) = mean_se(&fractions);
    Ok(SimResult {
        experiment: "arc_probability".into(),
        estimates: [("arc_probability".to_string(), m)].into(),
        std_errors: [("arc_probability".to_string(), se)].into(),
        replicates: cfg.replicates,
        wall_clock: start.elapsed().as_secs_f64(),
        per_replicate: fractions.iter().map(|&f| [("arc_probability".to_string(), f)].into()).collect(),
    })
}

fn sample_x(dom: &Domain, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    (0..n).map(|_| dom.sample(rng).1).collect()
}

/// Relative arc density of the PCD on `n_x` uniform points, per replicate.
pub fn estimate_relative_density(cfg: &SimConfig) -> Result<SimResult> {
    let start = Instant::now();
    if cfg.n_x < 2 {
        return Err(Error::InvalidParam("n_x must be >= 2".into()));
    }
    let dom = Domain::new(&cfg.support)?;
    let ys = dom.y_points();
    let rho = run_replicates(cfg, |rng| relative_density(&build(&sample_x(&dom, cfg.n_x, rng), &ys, cfg.map)?))?;
    let (m, se) = mean_se(&rho);
    let var = if rho.len() > 1 { se * se * rho.len() as f64 } else { f64::NAN };
    Ok(SimResult {
        experiment: "relative_density".into(),
        estimates: [("relative_density".to_string(), m), ("n_times_variance".to_string(), cfg.n_x as f64 * var)].into(),
        std_errors: [("relative_density".to_string(), se)].into(),
        replicates: cfg.replicates,
        wall_clock: start.elapsed().as_secs_f64(),
        per_replicate: rho.iter().map(|&f| [("relative_density".to_string(), f)].into()).collect(),
    })
}

/// Frequency table of the exact domination number of the proportional-edge
/// PCD with expansion `r`. `TVertex` puts M at the corner t_1(r) of the inner
/// triangle, `Centroid` at M_C; other cases keep the configured center.
pub fn estimate_gamma_distribution(cfg: &SimConfig, r: f64, center_case: CenterCase) -> Result<SimResult> {
    let start = Instant::now();
    let ProximityMapSpec::PropEdge { center, method, .. } = cfg.map else {
        return Err(Error::InvalidSpec("domination experiments need a proportional-edge map".into()));
    };
    if cfg.n_x == 0 {
        return Err(Error::InvalidParam("n_x must be >= 1".into()));
    }
    let dom = Domain::new(&cfg.support)?;
    let center = match center_case {
        CenterCase::TVertex => match &dom {
            Domain::Triangle(f) => CenterSpec::Custom(t_r_corners(f, r)?[0]),
            Domain::Hull { .. } => {
                return Err(Error::InvalidParam("t_1(r) centers need a single-triangle support".into()))
            }
        },
        CenterCase::Centroid => CenterSpec::CM,
        _ => center,
    };
    let spec = ProximityMapSpec::PropEdge { r: Ratio::Finite(r), center, method };
    spec.validate()?;
    let ys = dom.y_points();
    let gammas = run_replicates(cfg, |rng| Ok(domination_exact(&build(&sample_x(&dom, cfg.n_x, rng), &ys, spec)?)? as f64))?;

    let mut estimates = BTreeMap::new();
    let mut std_errors = BTreeMap::new();
    let reps = gammas.len() as f64;
    let (m, se) = mean_se(&gammas);
    estimates.insert("gamma_mean".to_string(), m);
    std_errors.insert("gamma_mean".to_string(), se);
    let top = gammas.iter().fold(0.0f64, |a, &b| a.max(b)) as u32;
    for k in 1..=top.max(3) {
        let p = gammas.iter().filter(|&&g| g == f64::from(k)).count() as f64 / reps;
        estimates.insert(format!("p_gamma_{k}"), p);
        std_errors.insert(format!("p_gamma_{k}"), (p * (1.0 - p) / reps).sqrt());
    }
    if let Ok(lim) = gamma_limit(r, center_case) {
        estimates.insert("limit_gamma_mean".to_string(), lim.mean());
        for k in 1..=3 {
            estimates.insert(format!("limit_p_gamma_{k}"), lim.pmf(k));
        }
    }
    Ok(SimResult {
        experiment: "gamma_distribution".into(),
        estimates,
        std_errors,
        replicates: cfg.replicates,
        wall_clock: start.elapsed().as_secs_f64(),
        per_replicate: gammas.iter().map(|&g| [("gamma".to_string(), g)].into()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub width: f64,
    pub height: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleStat {
    pub angles: [f64; 3],
    pub edges: [f64; 3],
    pub area: f64,
    /// Inverse area of the set of circumcenters for which a triangle of this
    /// circumradius is kept; weighting by it gives typical-triangle averages.
    pub weight: f64,
}

fn angle_at(a: Point2, b: Point2, c: Point2) -> f64 {
    let (u, v) = (b - a, c - a);
    u.cross(v).abs().atan2(u.dot(v))
}

/// Delaunay triangles of a Poisson sample of intensity λ in [0,w]×[0,h],
/// keeping only triangles whose circumdisk lies inside the window.
pub fn sample_poisson_delaunay(lambda: f64, window: Window, rng: &mut ChaCha8Rng) -> Result<Vec<TriangleStat>> {
    if !(lambda.is_finite() && lambda > 0.0 && window.width > 0.0 && window.height > 0.0) {
        return Err(Error::InvalidParam("intensity and window sides must be positive".into()));
    }
    let (w, h) = (window.width, window.height);
    let mean = lambda * w * h;
    let count = Poisson::new(mean).map_err(|e| Error::InvalidParam(format!("poisson: {e}")))?.sample(rng) as usize;
    if count < 3 {
        return Err(Error::DegenerateSample(format!("{count} points in the window")));
    }
    let pts: Vec<Point2> =
        (0..count).map(|_| Point2::new(rng.random::<f64>() * w, rng.random::<f64>() * h)).collect();
    let tri = match triangulate(&pts) {
        Ok(t) => t,
        Err(Error::AllCollinear | Error::DuplicateSites(..)) => {
            return Err(Error::DegenerateSample("points do not span the window".into()))
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for t in 0..tri.triangles.len() {
        let (c, r) = tri.circumcenter(t);
        if c.x - r < 0.0 || c.x + r > w || c.y - r < 0.0 || c.y + r > h {
            continue;
        }
        let [a, b, d] = tri.triangle_points(t);
        out.push(TriangleStat {
            angles: [angle_at(a, b, d), angle_at(b, d, a), angle_at(d, a, b)],
            edges: [b.dist(d), d.dist(a), a.dist(b)],
            area: tri.triangle_area(t),
            weight: 1.0 / ((w - 2.0 * r) * (h - 2.0 * r)),
        });
    }
    Ok(out)
}

/// Typical-triangle averages over replicated Poisson–Delaunay samples.
pub fn estimate_poisson_delaunay(seed: u64, replicates: usize, workers: usize, lambda: f64, window: Window) -> Result<SimResult> {
    let start = Instant::now();
    let cfg = SimConfig { seed, replicates, n_x: 0, map: ProximityMapSpec::Spherical, support: Support::Equilateral, workers };
    let names = ["mean_area", "obtuse_fraction", "mean_angle", "mean_max_angle", "mean_edge"];
    let rows = run_replicates(&cfg, |rng| {
        let stats = sample_poisson_delaunay(lambda, window, rng)?;
        let mut sums = [0.0; 5];
        let mut wsum = 0.0;
        for s in &stats {
            let max = s.angles.iter().fold(0.0f64, |a, &b| a.max(b));
            let g = [
                s.area,
                f64::from(u8::from(max > std::f64::consts::FRAC_PI_2)),
                s.angles.iter().sum::<f64>() / 3.0,
                max,
                s.edges.iter().sum::<f64>() / 3.0,
            ];
            for (acc, v) in sums.iter_mut().zip(g) {
                *acc += s.weight * v;
            }
            wsum += s.weight;
        }
        Ok((sums, wsum, stats.len()))
    })?;
    let mut estimates = BTreeMap::new();
    let mut std_errors = BTreeMap::new();
    let wtot: f64 = rows.iter().map(|r| r.1).sum();
    for (i, name) in names.iter().enumerate() {
        let pooled = rows.iter().map(|r| r.0[i]).sum::<f64>() / wtot;
        let per: Vec<f64> = rows.iter().filter(|r| r.1 > 0.0).map(|r| r.0[i] / r.1).collect();
        estimates.insert(name.to_string(), pooled);
        std_errors.insert(name.to_string(), mean_se(&per).1);
    }
    let kept: usize = rows.iter().map(|r| r.2).sum();
    estimates.insert("kept_triangles".to_string(), kept as f64);
    Ok(SimResult {
        experiment: "poisson_delaunay".into(),
        estimates,
        std_errors,
        replicates,
        wall_clock: start.elapsed().as_secs_f64(),
        per_replicate: rows
            .iter()
            .map(|r| {
                let mut m: BTreeMap<String, f64> =
                    names.iter().enumerate().map(|(i, n)| (n.to_string(), r.0[i] / r.1)).collect();
                m.insert("kept_triangles".to_string(), r.2 as f64);
                m
            })
            .collect(),
    })
}

/// What `run` should compute; the CLI reads this next to a `SimConfig`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Experiment {
    ArcProbability,
    RelativeDensity,
    GammaDistribution { r: f64, center_case: CenterCase },
    PoissonDelaunay { lambda: f64, window: Window },
}

pub fn run(cfg: &SimConfig, experiment: &Experiment) -> Result<SimResult> {
    match experiment {
        Experiment::ArcProbability => estimate_arc_probability(cfg),
        Experiment::RelativeDensity => estimate_relative_density(cfg),
        Experiment::GammaDistribution { r, center_case } => estimate_gamma_distribution(cfg, *r, *center_case),
        Experiment::PoissonDelaunay { lambda, window } => {
            estimate_poisson_delaunay(cfg.seed, cfg.replicates, cfg.workers, *lambda, *window)
        }
    }
}
