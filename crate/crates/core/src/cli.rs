//! Command-line front end.
//!
//! A scenario is one JSON document:
//!
//! ```json
//! {
//!   "frequency_hz": 3.0e9,
//!   "radius_m": 0.1,
//!   "sources": { "random": { "count": 200, "seed": 7 } },
//!   "L_min": 0,
//!   "L_max": 18,
//!   "seed": 1
//! }
//! ```
//!
//! `sources` may instead be `{"file": {"path": "ensemble.json"}}` (relative
//! paths resolve against the scenario's directory) or
//! `{"dipole": {"moment_re": [0,0,1], "moment_im": [0,0,0]}}`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{error_bound, error_sweep, ErrorSweep, SweepScenario};
use crate::context::FrequencyContext;
use crate::discretization::{dipole_at_origin, random_current_ensemble, sphere_grid, CurrentEnsemble, SampledField};
use crate::expansion::project_onto_vl;
use crate::radiation::direct_far_field;
use crate::{Error, Result};

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceSpec {
    Random { count: usize, seed: u64 },
    File { path: PathBuf },
    Dipole { moment_re: [f64; 3], moment_im: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub frequency_hz: f64,
    pub radius_m: f64,
    pub sources: SourceSpec,
    #[serde(rename = "L_min", default)]
    pub l_min: usize,
    #[serde(rename = "L_max")]
    pub l_max: usize,
    #[serde(default)]
    pub seed: u64,
    /// Default output path when `--out` is not given.
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    base_dir: PathBuf,
}

impl Scenario {
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self> {
        let mut s: Scenario = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.base_dir = base_dir.to_path_buf();
        s.validate()?;
        Ok(s)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    fn validate(&self) -> Result<()> {
        if !(self.frequency_hz.is_finite() && self.frequency_hz > 0.0) {
            return Err(Error::domain(format!("frequency_hz must be positive, got {}", self.frequency_hz)));
        }
        if !(self.radius_m.is_finite() && self.radius_m > 0.0) {
            return Err(Error::domain(format!("radius_m must be positive, got {}", self.radius_m)));
        }
        if self.l_min > self.l_max {
            return Err(Error::domain(format!("L_min = {} exceeds L_max = {}", self.l_min, self.l_max)));
        }
        Ok(())
    }

    pub fn context(&self) -> Result<FrequencyContext> {
        FrequencyContext::new(self.frequency_hz, self.radius_m)
    }

    pub fn ensemble(&self) -> Result<CurrentEnsemble> {
        let e = match &self.sources {
            SourceSpec::Random { count, seed } => random_current_ensemble(self.radius_m, *count, *seed)?,
            SourceSpec::File { path } => {
                let p = self.base_dir.join(path);
                CurrentEnsemble::from_json(&std::fs::read_to_string(p)?)?
            }
            SourceSpec::Dipole { moment_re, moment_im } => {
                dipole_at_origin([0, 1, 2].map(|i| Complex64::new(moment_re[i], moment_im[i])))
            }
        };
        e.check_contained(self.radius_m)?;
        Ok(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "farfield", version, about = "Far-field radiation operators and multipole truncation error")]
pub struct Cli {
    /// Worker threads (overrides FARFIELD_THREADS)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the truncation-error bound for L_B ≤ L ≤ L_max
    Bound {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
    /// Empirical truncation error versus degree
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
        /// Fill the wall_time_s column (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Sample the far field of the scenario's sources
    Radiate {
        #[command(flatten)]
        common: Common,
        /// Grid degree; defaults to the scenario's L_max
        #[arg(long)]
        grid_l_max: Option<usize>,
    },
    /// Project a sampled field onto vector spherical harmonics of degree ≤ L
    Project {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to the largest degree the input grid resolves
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Debug, Serialize)]
struct BoundRow {
    #[serde(rename = "L")]
    l: usize,
    beta: f64,
    bound: f64,
}

#[derive(Debug, Serialize)]
struct BoundTable {
    #[serde(rename = "L_B")]
    l_b: usize,
    alpha: f64,
    ka: f64,
    rows: Vec<BoundRow>,
}

fn bound_table(s: &Scenario) -> Result<BoundTable> {
    let b = error_bound(&s.context()?)?;
    let rows = (b.l_b()..=s.l_max)
        .map(|l| Ok(BoundRow { l, beta: b.beta(l)?, bound: b.evaluate(l)? }))
        .collect::<Result<_>>()?;
    Ok(BoundTable { l_b: b.l_b(), alpha: b.alpha(), ka: b.ka(), rows })
}

pub fn cmd_bound(s: &Scenario, json: bool) -> Result<String> {
    let t = bound_table(s)?;
    if json {
        return Ok(serde_json::to_string_pretty(&t)? + "\n");
    }
    let mut out = format!("# L_B={} alpha={:.16e} ka={:.16e}\nL,beta,bound\n", t.l_b, t.alpha, t.ka);
    for r in &t.rows {
        out += &format!("{},{:.16e},{:.16e}\n", r.l, r.beta, r.bound);
    }
    Ok(out)
}

pub fn cmd_sweep(s: &Scenario) -> Result<ErrorSweep> {
    let scenario = SweepScenario::new(s.context()?, s.ensemble()?, s.l_min, s.l_max, s.seed);
    error_sweep(&scenario)
}

pub fn cmd_radiate(s: &Scenario, grid_l_max: Option<usize>) -> Result<SampledField> {
    let grid = Arc::new(sphere_grid(grid_l_max.unwrap_or(s.l_max)));
    direct_far_field(&s.ensemble()?, &grid, &s.context()?)
}

pub fn cmd_project(field: &SampledField, degree: Option<usize>) -> Result<SampledField> {
    let grid_l = field.grid().l_max();
    let degree = match degree {
        Some(d) => d,
        None => grid_l
            .checked_sub(1)
            .ok_or_else(|| Error::domain("the input grid resolves no projection degree"))?,
    };
    project_onto_vl(field, degree)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("FARFIELD_THREADS") {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("FARFIELD_THREADS={v:?} is not a thread count")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(Error::domain("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::domain(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Bound { common, json } => {
            let s = Scenario::from_path(&common.scenario)?;
            let out = common.out.or_else(|| s.out.clone());
            emit(out.as_deref(), &cmd_bound(&s, json)?)?;
        }
        Command::Sweep { common, json, timing } => {
            let s = Scenario::from_path(&common.scenario)?;
            let sweep = cmd_sweep(&s)?;
            let text = if json { sweep.to_json()? + "\n" } else { sweep.to_csv(timing) };
            let out = common.out.or_else(|| s.out.clone());
            emit(out.as_deref(), &text)?;
            if !sweep.all_converged() {
                eprintln!("warning: operator-norm estimate did not converge for some L");
                return Ok(EXIT_NOT_CONVERGED);
            }
        }
        Command::Radiate { common, grid_l_max } => {
            let s = Scenario::from_path(&common.scenario)?;
            let out = common.out.or_else(|| s.out.clone());
            emit(out.as_deref(), &cmd_radiate(&s, grid_l_max)?.to_csv())?;
        }
        Command::Project { input, out, degree } => {
            let field = SampledField::from_csv(&std::fs::read_to_string(&input)?)?;
            emit(out.as_deref(), &cmd_project(&field, degree)?.to_csv())?;
        }
    }
    Ok(0)
}

/// Parses `std::env::args` and runs the selected command.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
