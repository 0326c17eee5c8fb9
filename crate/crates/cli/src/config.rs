//! Run configuration: flags merged over an optional `key=value` config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use kahan_core::verify::{DEFAULT_EXCLUSION_RADIUS, DEFAULT_SEED};
use kahan_core::{Family, FamilyParams, Point2, Region, Suite, SystemSpec};

use crate::CliError;

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
    Svg,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::JsonLines => "jsonl",
            Format::Svg => "svg",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::JsonLines),
            "svg" => Ok(Format::Svg),
            other => Err(CliError::usage(format!(
                "unknown format '{other}' (valid: csv, jsonl, svg)"
            ))),
        }
    }
}

/// Flags shared by every subcommand. Values are kept as text so that flags and
/// config-file entries go through the same parser.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// System family: quartic or sextic
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated family parameters (5 for quartic, 6 for sextic)
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Step size
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Initial x coordinate
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Initial y coordinate
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    /// Number of steps
    #[arg(long)]
    pub steps: Option<String>,
    /// Output path (stdout when omitted, except for verify reports)
    #[arg(long)]
    pub out: Option<String>,
    /// Output format: csv, jsonl or svg
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for sampling
    #[arg(long)]
    pub seed: Option<String>,
    /// Sampling region or plot window: x_min,x_max,y_min,y_max
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,
    /// Verification suite: conservation, measure, reversibility, order, drift-scan
    #[arg(long)]
    pub suite: Option<String>,
    /// Number of orbits for the phase portrait
    #[arg(long)]
    pub orbits: Option<String>,
    /// Number of accepted samples for sampled suites
    #[arg(long)]
    pub samples: Option<String>,
    /// Time horizon for the order suite
    #[arg(long, allow_hyphen_values = true)]
    pub horizon: Option<String>,
    /// Seed segment for phase portraits: x_start,y_start,x_end,y_end
    #[arg(long, allow_hyphen_values = true)]
    pub segment: Option<String>,
    /// Exclusion radius around singular lines
    #[arg(long)]
    pub exclusion: Option<String>,
    /// Singularity threshold for the Kahan solve
    #[arg(long = "det-tol")]
    pub det_tol: Option<String>,
    /// Pole threshold for the modified Hamiltonian and the measure
    #[arg(long = "pole-tol")]
    pub pole_tol: Option<String>,
    /// Plain-text file of key=value lines; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 18] = [
    "family",
    "params",
    "h",
    "x0",
    "y0",
    "steps",
    "out",
    "format",
    "seed",
    "region",
    "suite",
    "orbits",
    "samples",
    "horizon",
    "segment",
    "exclusion",
    "det-tol",
    "pole-tol",
];

impl RunArgs {
    fn flag_entries(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("family", &self.family),
            ("params", &self.params),
            ("h", &self.h),
            ("x0", &self.x0),
            ("y0", &self.y0),
            ("steps", &self.steps),
            ("out", &self.out),
            ("format", &self.format),
            ("seed", &self.seed),
            ("region", &self.region),
            ("suite", &self.suite),
            ("orbits", &self.orbits),
            ("samples", &self.samples),
            ("horizon", &self.horizon),
            ("segment", &self.segment),
            ("exclusion", &self.exclusion),
            ("det-tol", &self.det_tol),
            ("pole-tol", &self.pole_tol),
        ]
    }

    /// Config-file entries overlaid with the flags that were given.
    pub fn merged(&self) -> Result<BTreeMap<String, String>, CliError> {
        let mut map = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        for (key, value) in self.flag_entries() {
            if let Some(v) = value {
                map.insert(key.to_string(), v.clone());
            }
        }
        Ok(map)
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!(
                "config line {}: unknown key '{key}'",
                i + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("--{key}: cannot parse '{value}'")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value.split(',').map(|v| parse_num(key, v)).collect()
}

fn parse_fixed<const N: usize>(key: &str, value: &str) -> Result<[f64; N], CliError> {
    let v = parse_list(key, value)?;
    v.try_into().map_err(|v: Vec<f64>| {
        CliError::usage(format!("--{key} expects {N} values, got {}", v.len()))
    })
}

/// Fully parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: FamilyParams,
    pub h: Option<f64>,
    pub start: Point2,
    pub steps: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub region: Option<Region>,
    pub suite: Option<String>,
    pub orbits: usize,
    pub samples: usize,
    pub horizon: Option<f64>,
    pub segment: Option<[f64; 4]>,
    pub exclusion: f64,
    pub det_tol: Option<f64>,
    pub pole_tol: Option<f64>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self, CliError> {
        Self::from_map(&args.merged()?)
    }

    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let family: Family = get("family")
            .ok_or_else(|| CliError::usage("--family is required (quartic or sextic)"))?
            .parse()
            .map_err(|e: kahan_core::Error| CliError::usage(e.to_string()))?;
        let values = parse_list(
            "params",
            get("params").ok_or_else(|| {
                CliError::usage(format!(
                    "--params is required ({} values for {family})",
                    family.arity()
                ))
            })?,
        )?;
        let params = FamilyParams::from_slice(family, &values)
            .map_err(|e| CliError::usage(e.to_string()))?;

        let opt_f64 = |k: &str| get(k).map(|v| parse_num::<f64>(k, v)).transpose();
        let h = opt_f64("h")?;
        if let Some(h) = h {
            if !h.is_finite() {
                return Err(CliError::usage("--h must be finite"));
            }
        }
        let region = get("region")
            .map(|v| {
                let [x0, x1, y0, y1] = parse_fixed::<4>("region", v)?;
                Region::new(x0, x1, y0, y1).map_err(|e| CliError::usage(e.to_string()))
            })
            .transpose()?;
        Ok(Self {
            params,
            h,
            start: Point2::new(opt_f64("x0")?.unwrap_or(1.0), opt_f64("y0")?.unwrap_or(1.0)),
            steps: get("steps")
                .map(|v| parse_num("steps", v))
                .transpose()?
                .unwrap_or(100),
            out: get("out").map(PathBuf::from),
            format: get("format")
                .map(str::parse)
                .transpose()?
                .unwrap_or(Format::Csv),
            seed: get("seed")
                .map(|v| parse_num("seed", v))
                .transpose()?
                .unwrap_or(DEFAULT_SEED),
            region,
            suite: get("suite").map(str::to_string),
            orbits: get("orbits")
                .map(|v| parse_num("orbits", v))
                .transpose()?
                .unwrap_or(5),
            samples: get("samples")
                .map(|v| parse_num("samples", v))
                .transpose()?
                .unwrap_or(1000),
            horizon: opt_f64("horizon")?,
            segment: get("segment")
                .map(|v| parse_fixed::<4>("segment", v))
                .transpose()?,
            exclusion: opt_f64("exclusion")?.unwrap_or(DEFAULT_EXCLUSION_RADIUS),
            det_tol: opt_f64("det-tol")?,
            pole_tol: opt_f64("pole-tol")?,
        })
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn system(&self) -> Result<SystemSpec, CliError> {
        let sys = SystemSpec::build(self.params).map_err(|e| CliError::usage(e.to_string()))?;
        Ok(match self.pole_tol {
            Some(tol) => sys.with_pole_tol(tol),
            None => sys,
        })
    }

    /// The step size, or a usage error naming the command that needs it.
    pub fn require_h(&self, command: &str) -> Result<f64, CliError> {
        self.h
            .ok_or_else(|| CliError::usage(format!("{command}: --h is required")))
    }

    pub fn suite(&self) -> Result<Suite, CliError> {
        let valid = Suite::ALL.map(|s| s.as_str()).join(", ");
        let name = self
            .suite
            .as_deref()
            .ok_or_else(|| CliError::usage(format!("--suite is required (valid: {valid})")))?;
        name.parse()
            .map_err(|e: kahan_core::Error| CliError::usage(e.to_string()))
    }

    /// Sampling region: the configured one, else a family default that keeps the
    /// canonical parameters' samples off their singular lines.
    pub fn region_or_default(&self) -> Region {
        self.region.unwrap_or_else(|| match self.family() {
            Family::Quartic => Region::new(0.2, 2.0, -2.0, 2.0).unwrap(),
            Family::Sextic => Region::new(-2.0, 2.0, -2.0, 2.0).unwrap(),
        })
    }
}
