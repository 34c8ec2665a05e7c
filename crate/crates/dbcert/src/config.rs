//! Run configuration: embedded defaults, an optional TOML file layered on
//! top, then command-line flags.

use std::path::{Path, PathBuf};

use dbcert_core::proof::h3::claim_ids;
use dbcert_core::proof::ProveMode;
use dbcert_core::{SlackConfig, SpaceTag};
use serde::Deserialize;

use crate::grid::GridSpec;
use crate::{config_err, CliError};

pub const DEFAULTS: &str = r#"
[general]
delta = 5.9604644775390625e-8   # 2^-24
precision_bits = 53
jobs = 0                        # 0: one worker per core
out_dir = "."

[s3]
mode = "full"
grid = "0.5:9.5:0.5:9.5:181"

[h3]
mode = "spot"
claims = []                     # empty: first and last claim in full, the rest sampled
sample_rows = 3
grid = "0.1:20:0.1:20:200"
"#;

pub const CERT_DIR_ENV: &str = "BUBBLE_CERT_DIR";

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct General {
    delta: Option<f64>,
    precision_bits: Option<u32>,
    jobs: Option<usize>,
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceSection {
    mode: Option<String>,
    claims: Option<Vec<String>>,
    sample_rows: Option<u64>,
    grid: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    general: General,
    #[serde(default)]
    s3: SpaceSection,
    #[serde(default)]
    h3: SpaceSection,
}

impl FileConfig {
    fn overlay(mut self, o: FileConfig) -> FileConfig {
        fn pick<T>(a: &mut Option<T>, b: Option<T>) {
            if b.is_some() {
                *a = b;
            }
        }
        pick(&mut self.general.delta, o.general.delta);
        pick(&mut self.general.precision_bits, o.general.precision_bits);
        pick(&mut self.general.jobs, o.general.jobs);
        pick(&mut self.general.out_dir, o.general.out_dir);
        for (a, b) in [(&mut self.s3, o.s3), (&mut self.h3, o.h3)] {
            pick(&mut a.mode, b.mode);
            pick(&mut a.claims, b.claims);
            pick(&mut a.sample_rows, b.sample_rows);
            pick(&mut a.grid, b.grid);
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Full,
    Spot,
    Ray,
}

impl std::str::FromStr for ModeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(ModeArg::Full),
            "spot" => Ok(ModeArg::Spot),
            "ray" => Ok(ModeArg::Ray),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

impl ModeArg {
    pub fn name(self) -> &'static str {
        match self {
            ModeArg::Full => "full",
            ModeArg::Spot => "spot",
            ModeArg::Ray => "ray",
        }
    }
}

/// Flags that override the file configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub mode: Option<ModeArg>,
    pub claims: Option<Vec<String>>,
    pub delta: Option<f64>,
    pub precision_bits: Option<u32>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub grid: Option<GridSpec>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub space: SpaceTag,
    pub mode: ModeArg,
    pub claims: Vec<String>,
    pub sample_rows: u64,
    pub slack: SlackConfig,
    pub jobs: usize,
    pub out_dir: PathBuf,
    /// Explicit output file; wins over `out_dir`.
    pub out: Option<PathBuf>,
    pub grid: GridSpec,
}

fn parse_file(text: &str, origin: &str) -> Result<FileConfig, CliError> {
    toml::from_str(text).map_err(|e| config_err(format!("{origin}: {e}")))
}

impl RunConfig {
    /// Defaults, then `file`, then `env_dir` for the output directory, then flags.
    pub fn resolve(
        space: SpaceTag,
        file: Option<&Path>,
        env_dir: Option<PathBuf>,
        o: Overrides,
    ) -> Result<RunConfig, CliError> {
        let mut fc = parse_file(DEFAULTS, "embedded defaults")?;
        if let Some(p) = file {
            let text = std::fs::read_to_string(p).map_err(|e| config_err(format!("{}: {e}", p.display())))?;
            fc = fc.overlay(parse_file(&text, &p.display().to_string())?);
        }
        let sec = match space {
            SpaceTag::S3 => &fc.s3,
            SpaceTag::H3 => &fc.h3,
            SpaceTag::R3 => return Err(config_err("space must be s3 or h3")),
        };
        let mode = match o.mode {
            Some(m) => m,
            None => sec.mode.as_deref().unwrap_or("full").parse().map_err(config_err)?,
        };
        let claims = o.claims.or_else(|| sec.claims.clone()).unwrap_or_default();
        let known: Vec<&str> = claim_ids().collect();
        if let Some(c) = claims.iter().find(|c| !known.contains(&c.as_str())) {
            return Err(config_err(format!("unknown claim {c:?}; known: {}", known.join(","))));
        }
        if space == SpaceTag::S3 && (mode == ModeArg::Ray || !claims.is_empty()) {
            return Err(config_err("claims and ray mode apply to h3 only"));
        }
        let slack = SlackConfig {
            delta: o.delta.or(fc.general.delta).unwrap_or(SlackConfig::default().delta),
            precision_bits: o.precision_bits.or(fc.general.precision_bits).unwrap_or(53),
        };
        slack.validate().map_err(config_err)?;
        let grid = match o.grid {
            Some(g) => g,
            None => sec.grid.as_deref().unwrap_or("0:0:0:0:0").parse().map_err(config_err)?,
        };
        Ok(RunConfig {
            space,
            mode,
            claims,
            sample_rows: sec.sample_rows.unwrap_or(3),
            slack,
            jobs: o.jobs.or(fc.general.jobs).unwrap_or(0),
            out_dir: env_dir.or(fc.general.out_dir).unwrap_or_else(|| PathBuf::from(".")),
            out: o.out,
            grid,
        })
    }

    pub fn prove_mode(&self) -> ProveMode {
        match (self.mode, self.claims.is_empty()) {
            (ModeArg::Ray, _) => ProveMode::Ray,
            (ModeArg::Full, true) => ProveMode::Full,
            (_, false) => ProveMode::Spot { claims: self.claims.clone(), sampled: Vec::new(), sample_rows: 0 },
            (ModeArg::Spot, true) => match ProveMode::default_spot() {
                ProveMode::Spot { claims, sampled, .. } => {
                    ProveMode::Spot { claims, sampled, sample_rows: self.sample_rows }
                }
                m => m,
            },
        }
    }

    pub fn output_path(&self, stem: &str, ext: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| self.out_dir.join(format!("{stem}.{ext}")))
    }

    pub fn worker_count(&self) -> usize {
        if self.jobs == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.jobs
        }
    }
}
