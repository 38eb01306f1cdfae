mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcd_core::asymptotics::{mu_cs, mu_pe, nu_cs, nu_pe, p_r};
use pcd_core::delaunay::triangulate;
use pcd_core::montecarlo::{run, Experiment, SimConfig};
use pcd_core::pcd::{build, domination_exact, domination_greedy, relative_density};
use pcd_core::proximity::ProximityMapSpec;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::io::{beside, ensure_dir, read_points, write_json, write_rows, RunManifest};

pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn user(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Failure {
        Failure { code: 4, msg: msg.into() }
    }
}

impl From<pcd_core::Error> for Failure {
    fn from(e: pcd_core::Error) -> Failure {
        let code = if matches!(e, pcd_core::Error::InstanceTooLarge(_)) { 3 } else { 2 };
        Failure { code, msg: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "pcd", version, about = "Proximity catch digraphs on two-class planar data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GammaMode {
    Exact,
    Greedy,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Pe,
    Cs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Delaunay triangulation of a site file.
    Triangulate {
        #[arg(long)]
        sites: PathBuf,
        /// Triangle CSV; hull, summary and manifest are written beside it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a proximity catch digraph and report density and domination numbers.
    Pcd {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// e.g. "pe:r=2,M=CM,method=lines", "cs:tau=1", "as:M=CC", "dd:M=CM", "dx", "sph"
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value = "both")]
        gamma: GammaMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate asymptotic mean and variance over a parameter grid.
    Limits {
        #[arg(long, value_enum)]
        family: Family,
        /// "start:stop:step" or a comma-separated list.
        #[arg(long)]
        param_grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Limit of P(γ = 2) for the proportional-edge PCD at the inner-triangle corners.
    Pr {
        #[arg(long)]
        r: f64,
    },
    /// Run a Monte Carlo experiment described by a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = std::panic::catch_unwind(|| dispatch(cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(Failure::internal(format!("internal error: {msg}")))
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Triangulate { sites, out } => cmd_triangulate(&sites, &out),
        Cmd::Pcd { x, y, map, gamma, out } => cmd_pcd(&x, &y, &map, gamma, &out),
        Cmd::Limits { family, param_grid, out } => cmd_limits(family, &param_grid, &out),
        Cmd::Pr { r } => cmd_pr(r),
        Cmd::Simulate { config, seed, out } => cmd_simulate(&config, seed, &out),
    }
}

fn cmd_triangulate(sites: &Path, out: &Path) -> Result<(), Failure> {
    let pts = read_points(sites)?;
    let tri = triangulate(&pts)?;
    let mut m = RunManifest::new("triangulate", json!({ "sites": sites.display().to_string() }), None);
    m.input(sites)?;
    write_rows(out, &["a", "b", "c"], tri.triangles.iter().map(|t| (t[0], t[1], t[2])))?;
    m.output(out);
    let hull = beside(out, "hull.csv");
    write_rows(&hull, &["index"], tri.hull.iter().map(|&h| (h,)))?;
    m.output(&hull);
    let summary = beside(out, "summary.json");
    write_json(
        &summary,
        &json!({
            "sites": pts.len(),
            "triangles": tri.triangles.len(),
            "hull_size": tri.hull.len(),
            "hull_area": tri.hull_area(),
        }),
    )?;
    m.output(&summary);
    m.write(&beside(out, "manifest.json"))
}

fn cmd_pcd(x: &Path, y: &Path, map: &str, gamma: GammaMode, out: &Path) -> Result<(), Failure> {
    let spec: ProximityMapSpec = map.parse()?;
    let xs = read_points(x)?;
    let ys = read_points(y)?;
    let g = build(&xs, &ys, spec)?;
    let density = if g.n >= 2 { Some(relative_density(&g)?) } else { None };
    let mut gamma_exact = None;
    let mut gamma_exact_error = None;
    if gamma != GammaMode::Greedy && g.n > 0 {
        match domination_exact(&g) {
            Ok(v) => gamma_exact = Some(v),
            Err(e @ pcd_core::Error::InstanceTooLarge(_)) if gamma == GammaMode::Both => {
                gamma_exact_error = Some(e.to_string())
            }
            Err(e) => return Err(e.into()),
        }
    }
    let gamma_greedy = (gamma != GammaMode::Exact && g.n > 0).then(|| domination_greedy(&g));

    ensure_dir(out)?;
    let mut m = RunManifest::new("pcd", json!({ "map": spec.to_string(), "gamma": gamma }), None);
    m.input(x)?;
    m.input(y)?;
    let arcs = out.join("arcs.csv");
    write_rows(&arcs, &["i", "j"], g.arc_list().into_iter().map(|(i, j)| (g.index_map[i], g.index_map[j])))?;
    m.output(&arcs);
    let summary = out.join("summary.json");
    write_json(
        &summary,
        &json!({
            "map": spec.to_string(),
            "n": g.n,
            "n_input": xs.len(),
            "arcs": g.arc_count(),
            "density": density,
            "gamma_exact": gamma_exact,
            "gamma_exact_error": gamma_exact_error,
            "gamma_greedy": gamma_greedy,
            "excluded": g.excluded,
            "excluded_count": g.excluded.len(),
        }),
    )?;
    m.output(&summary);
    m.write(&out.join("manifest.json"))
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::user(format!("Parse: bad grid value '{t}'")));
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if !(step > 0.0 && b >= a) {
                return Err(Failure::user("Parse: grid needs start <= stop and step > 0"));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            (0..=n).map(|k| a + k as f64 * step).collect()
        }
        [_] => s.split(',').map(num).collect::<Result<Vec<f64>, _>>()?,
        _ => return Err(Failure::user(format!("Parse: bad grid '{s}'"))),
    };
    if grid.is_empty() {
        return Err(Failure::user("Parse: empty grid"));
    }
    Ok(grid)
}

#[derive(Serialize)]
struct LimitRow {
    param: f64,
    mu: f64,
    nu: f64,
    p_r: Option<f64>,
}

fn cmd_limits(family: Family, grid: &str, out: &Path) -> Result<(), Failure> {
    let params = parse_grid(grid)?;
    let rows = params
        .iter()
        .map(|&t| {
            Ok(match family {
                Family::Pe => LimitRow {
                    param: t,
                    mu: mu_pe(t)?,
                    nu: nu_pe(t)?,
                    p_r: if t < 1.5 { Some(p_r(t)?) } else { None },
                },
                Family::Cs => LimitRow { param: t, mu: mu_cs(t)?, nu: nu_cs(t)?, p_r: None },
            })
        })
        .collect::<Result<Vec<_>, pcd_core::Error>>()?;
    let header: &[&str] = match family {
        Family::Pe => &["r", "mu", "nu", "p_r"],
        Family::Cs => &["tau", "mu", "nu"],
    };
    match family {
        Family::Pe => write_rows(out, header, rows.iter().map(|r| (r.param, r.mu, r.nu, r.p_r)))?,
        Family::Cs => write_rows(out, header, rows.iter().map(|r| (r.param, r.mu, r.nu)))?,
    }
    let mut m = RunManifest::new("limits", json!({ "family": family, "param_grid": grid }), None);
    m.output(out);
    m.write(&beside(out, "manifest.json"))
}

fn cmd_pr(r: f64) -> Result<(), Failure> {
    println!("{}", p_r(r)?);
    Ok(())
}

#[derive(Deserialize, Serialize)]
struct SimFile {
    #[serde(flatten)]
    config: SimConfig,
    experiment: Experiment,
}

fn cmd_simulate(config: &Path, seed: Option<u64>, out: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| Failure::user(format!("cannot read {}: {e}", config.display())))?;
    let mut file: SimFile =
        serde_json::from_str(&text).map_err(|e| Failure::user(format!("Parse: config schema: {e}")))?;
    if let Some(s) = seed {
        file.config.seed = s;
    }
    let result = run(&file.config, &file.experiment)?;
    ensure_dir(out)?;
    let resolved = serde_json::to_value(&file).map_err(|e| Failure::internal(e.to_string()))?;
    let mut m = RunManifest::new("simulate", resolved, Some(file.config.seed));
    m.input(config)?;
    let res = out.join("result.json");
    write_json(&res, &result)?;
    m.output(&res);
    let reps = out.join("replicates.csv");
    write_rows(&reps, &["replicate", "statistic", "value"], result.csv_rows())?;
    m.output(&reps);
    m.write(&out.join("manifest.json"))
}
