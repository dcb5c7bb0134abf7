//! Command-line arguments, the optional TOML config file, and their merge
//! into a [`JobConfig`].
//!
//! Precedence: flags, then the config file, then built-in defaults. The file
//! path comes from `--config` or the `ORIGAMI_CONFIG` environment variable.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use origami_core::construction::{DEFAULT_LEVELS, DEFAULT_POINT_CAP};
use origami_core::preview::DEFAULT_EPSILON;
use origami_core::ring::SearchBounds;
use serde::Deserialize;

use crate::decimal::DEFAULT_PRECISION;
use crate::CliError;

pub const CONFIG_ENV: &str = "ORIGAMI_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Exact construction and ring analysis of origami sets M(U)")]
pub struct Args {
    /// TOML file with default settings
    #[arg(long, env = CONFIG_ENV, global = true)]
    pub config: Option<PathBuf>,
    /// Slopes as fractions of π, comma separated (`0,1/3,2/3` means 0, π/3, 2π/3)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub slopes: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Fractional digits in decimal output
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Largest denominator exponent tried in membership searches
    #[arg(long, global = true)]
    pub max_den_exp: Option<u32>,
    /// Largest numerator degree tried in membership searches
    #[arg(long, global = true)]
    pub max_num_deg: Option<u32>,
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Discrete lattice or dense
    Classify,
    /// Decide whether M(U) is a ring
    Ring,
    /// Construct the levels M_0, ..., M_k
    Generate {
        #[arg(long)]
        levels: Option<usize>,
        /// Stop adding points once a level exceeds this many
        #[arg(long)]
        cap: Option<usize>,
        /// Non-certified f64 construction; accepts slopes in radians
        #[arg(long)]
        float_preview: bool,
        /// Deduplication distance for the float preview
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Decide membership of an exact value in M_R
    Member {
        /// e.g. `sqrt(3)`, `cos(pi/5) + 1/2`
        value: String,
    },
    /// Table of p(γ) for the slopes of U
    Pvalues,
}

#[derive(Deserialize, Debug, Default)]
#[serde(untagged)]
enum SlopeList {
    #[default]
    Missing,
    Joined(String),
    List(Vec<String>),
}

/// Contents of the config file; every key is optional.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    slopes: SlopeList,
    levels: Option<usize>,
    cap: Option<usize>,
    max_den_exp: Option<u32>,
    max_num_deg: Option<u32>,
    format: Option<Format>,
    out: Option<PathBuf>,
    precision: Option<usize>,
    epsilon: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {}", path.display(), e)))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Classify,
    Ring,
    Generate,
    Member(String),
    PValues,
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub slopes: Vec<String>,
    pub levels: usize,
    pub cap: usize,
    pub bounds: SearchBounds,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub precision: usize,
    pub float_preview: bool,
    pub epsilon: f64,
}

pub fn split_slopes(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}

impl JobConfig {
    pub fn resolve(args: &Args) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        Self::merge(args, file)
    }

    pub fn merge(args: &Args, file: FileConfig) -> Result<Self, CliError> {
        let slopes = match (&args.slopes, file.slopes) {
            (Some(s), _) => split_slopes(s),
            (None, SlopeList::Joined(s)) => split_slopes(&s),
            (None, SlopeList::List(v)) => v,
            (None, SlopeList::Missing) => {
                return Err(CliError::Usage("no slopes given; pass --slopes such as 0,1/3,2/3".into()))
            }
        };
        let (mut levels, mut cap, mut float_preview, mut epsilon) = (None, None, false, None);
        let command = match &args.command {
            CommandArgs::Classify => Command::Classify,
            CommandArgs::Ring => Command::Ring,
            CommandArgs::Member { value } => Command::Member(value.clone()),
            CommandArgs::Pvalues => Command::PValues,
            CommandArgs::Generate { levels: l, cap: c, float_preview: f, epsilon: e } => {
                (levels, cap, float_preview, epsilon) = (*l, *c, *f, *e);
                Command::Generate
            }
        };
        let defaults = SearchBounds::default();
        let job = JobConfig {
            command,
            slopes,
            levels: levels.or(file.levels).unwrap_or(DEFAULT_LEVELS),
            cap: cap.or(file.cap).unwrap_or(DEFAULT_POINT_CAP),
            bounds: SearchBounds {
                max_den_exp: args.max_den_exp.or(file.max_den_exp).unwrap_or(defaults.max_den_exp),
                max_num_deg: args.max_num_deg.or(file.max_num_deg).unwrap_or(defaults.max_num_deg),
            },
            format: args.format.or(file.format).unwrap_or(Format::Text),
            out: args.out.clone().or(file.out),
            precision: args.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION),
            float_preview,
            epsilon: epsilon.or(file.epsilon).unwrap_or(DEFAULT_EPSILON),
        };
        if job.precision > 200 {
            return Err(CliError::Usage(format!("--precision {} is above the limit of 200", job.precision)));
        }
        if !(job.epsilon > 0.0 && job.epsilon.is_finite()) {
            return Err(CliError::Usage(format!("--epsilon must be positive, got {}", job.epsilon)));
        }
        Ok(job)
    }
}
