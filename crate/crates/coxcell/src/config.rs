//! Command-line arguments and the validated run configuration.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use coxcell_core::coxeter::{Family, LatticeSpec, Variant, WeightCoord};
use coxcell_core::polytope::FaceBudget;
use coxcell_core::project::WindowRule;

use crate::CliError;

/// Largest rank accepted without `--allow-large-rank`.
pub const DEFAULT_RANK_CAP: usize = 8;

/// Face selection for `project`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// Dual Delone faces as windows; an exact tiling
    Dual,
    /// Face centres against the projected Voronoi cell; tiles may overlap
    FaceCentre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Cartan matrix, roots, weights and group data
    Info,
    /// Orbit polytope of a dominant weight (`--weight`)
    Orbit,
    /// Root polytope
    Root,
    /// Voronoi cell V(0)
    Voronoi,
    /// Delone cells at the origin
    Delone,
    /// Contact polytope
    Contact,
    /// Face counts, enumerated and from the closed forms
    Facets,
    /// Exact volumes with oracle cross-checks
    Volume,
    /// Full check suite for one lattice
    Verify,
    /// Coxeter-plane tiling patch
    Project,
    /// Dossier of every check up to `--max-rank`
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Off,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    RootPolytope,
    Voronoi,
}

#[derive(Debug, Parser)]
#[command(name = "coxcell", version, about = "Exact Voronoi and Delone cells of the A_n and D_n lattices")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Lattice family: A or D
    #[arg(long)]
    pub family: Option<Family>,
    /// Rank n; D needs n >= 3
    #[arg(long)]
    pub rank: Option<usize>,
    /// root or weight
    #[arg(long, default_value = "root")]
    pub variant: Variant,
    /// Write the artifact here; the format defaults to the file extension
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; printed to stdout when there is no --out
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Vertex budget for face enumeration
    #[arg(long, default_value_t = 50_000)]
    pub max_vertices: usize,
    /// Relative tolerance for oracle comparisons
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Radius of the projected patch
    #[arg(long, default_value_t = 5.0)]
    pub radius: f64,
    /// Scale of the perpendicular-space window
    #[arg(long, default_value_t = 1.0)]
    pub window_scale: f64,
    /// How `project` selects faces
    #[arg(long, value_enum, default_value_t = Rule::Dual)]
    pub window_rule: Rule,
    /// Dynkin labels of the orbit weight, e.g. 1,0,0,1
    #[arg(long)]
    pub weight: Option<WeightCoord>,
    /// Restrict `facets` to one polytope
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// Largest rank covered by `report`
    #[arg(long, default_value_t = 5)]
    pub max_rank: usize,
    /// Add triangulation oracle values to `volume`
    #[arg(long)]
    pub oracle: bool,
    /// Extra JSON copy of the `project` patch
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Lift the rank cap of 8
    #[arg(long)]
    pub allow_large_rank: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Absent only for `report`.
    pub spec: Option<LatticeSpec>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub budget: FaceBudget,
    pub max_rank: usize,
    pub rank_cap: usize,
    pub tolerance: f64,
    pub radius: f64,
    pub window_scale: f64,
    pub window_rule: WindowRule,
    pub weight: Option<WeightCoord>,
    pub target: Option<Target>,
    pub json_out: Option<PathBuf>,
    pub oracle: bool,
}

fn format_from_path(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()? {
        "json" => Some(Format::Json),
        "off" => Some(Format::Off),
        "csv" => Some(Format::Csv),
        "svg" => Some(Format::Svg),
        _ => None,
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let rank_cap = if cli.allow_large_rank {
            coxcell_core::coxeter::MAX_SUPPORTED_RANK
        } else {
            DEFAULT_RANK_CAP
        };
        let spec = if cli.command == Command::Report {
            None
        } else {
            let family = cli
                .family
                .ok_or_else(|| CliError::Usage("--family is required".into()))?;
            let rank = cli.rank.ok_or_else(|| CliError::Usage("--rank is required".into()))?;
            if rank == 0 || rank > rank_cap {
                return Err(CliError::Usage(format!("--rank {rank} outside [1, {rank_cap}]")));
            }
            if family == Family::D && rank < 3 {
                return Err(CliError::Usage(format!("--rank {rank}: D needs rank >= 3")));
            }
            Some(LatticeSpec::new(family, rank, cli.variant).map_err(|e| CliError::Usage(e.to_string()))?)
        };
        if cli.command == Command::Report && cli.max_rank > rank_cap {
            return Err(CliError::Usage(format!(
                "--max-rank {} above cap {rank_cap}",
                cli.max_rank
            )));
        }
        if cli.command == Command::Orbit && cli.weight.is_none() {
            return Err(CliError::Usage("orbit needs --weight".into()));
        }
        if !(cli.tolerance > 0.0) {
            return Err(CliError::Usage(format!("--tolerance {} must be positive", cli.tolerance)));
        }
        let format = match (cli.format, &cli.out) {
            (Some(f), _) => Some(f),
            (None, Some(path)) => Some(format_from_path(path).unwrap_or(Format::Json)),
            (None, None) => None,
        };
        Ok(RunConfig {
            command: cli.command,
            spec,
            format,
            out: cli.out,
            budget: FaceBudget {
                max_vertices: cli.max_vertices,
                ..FaceBudget::default()
            },
            max_rank: cli.max_rank,
            rank_cap,
            tolerance: cli.tolerance,
            radius: cli.radius,
            window_scale: cli.window_scale,
            window_rule: match cli.window_rule {
                Rule::Dual => WindowRule::Dual,
                Rule::FaceCentre => WindowRule::FaceCentre,
            },
            weight: cli.weight,
            target: cli.target,
            json_out: cli.json,
            oracle: cli.oracle,
        })
    }

    /// The lattice of a per-lattice command.
    pub fn spec(&self) -> LatticeSpec {
        self.spec.expect("validated for every command but report")
    }
}
