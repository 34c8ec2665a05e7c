use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use dbcert::config::{ModeArg, Overrides, RunConfig, CERT_DIR_ENV};
use dbcert::exec::Rayon;
use dbcert::grid::{evaluate, write_csv, GridSpec};
use dbcert::io::{read_certificate, write_certificate, ReadError};
use dbcert::{config_err, exit, CliError};
use dbcert_core::asymptotics::{run_all, LemmaCheckReport};
use dbcert_core::proof::{prove_theorem, verify_certificate};
use dbcert_core::{Error, SpaceTag};

#[derive(Parser)]
#[command(name = "dbcert", version, about = "Certified double-bubble inequality checks in S³ and H³")]
struct Cli {
    /// TOML run configuration layered over the built-in defaults.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    S3,
    H3,
}

impl From<SpaceArg> for SpaceTag {
    fn from(s: SpaceArg) -> SpaceTag {
        match s {
            SpaceArg::S3 => SpaceTag::S3,
            SpaceArg::H3 => SpaceTag::H3,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the subdivision proofs for one space and write a certificate.
    Prove {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Comma-separated claim ids to sweep in full (H³ only).
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        precision_bits: Option<u32>,
        /// Worker threads; 0 uses every core.
        #[arg(long)]
        jobs: Option<usize>,
        /// Certificate path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample F on a regular grid and write `v,w,F` CSV.
    Grid {
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// VMIN:VMAX:WMIN:WMAX:RES
        #[arg(long)]
        grid: Option<GridSpec>,
        /// CSV path; `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the sampled checks of the analytic estimates.
    Lemmas {
        /// Also write the full reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificate utilities.
    Cert {
        #[command(subcommand)]
        cmd: CertCmd,
    },
}

#[derive(Subcommand)]
enum CertCmd {
    /// Re-check a certificate without re-running the geometry.
    Verify { path: PathBuf },
}

fn env_dir() -> Option<PathBuf> {
    std::env::var_os(CERT_DIR_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
}

fn prove(cfg: RunConfig) -> Result<u8, CliError> {
    if cfg.space == SpaceTag::H3 && cfg.mode == ModeArg::Full && cfg.claims.is_empty() {
        eprintln!(
            "warning: the full H3 sweep checks about 8 million boxes; expect minutes per core \
             and a certificate of several hundred megabytes"
        );
    }
    let ex = Rayon::new(cfg.worker_count())?;
    let t = Instant::now();
    let cert = prove_theorem(cfg.space, &cfg.prove_mode(), cfg.slack, &ex).map_err(|e| match e {
        Error::Slack(_) | Error::UnknownClaim | Error::UnsupportedMode(_) => config_err(e),
        e => CliError::Internal(anyhow::anyhow!("{e}")),
    })?;
    let elapsed = t.elapsed();
    let path = cfg.output_path(&format!("cert-{}-{}", cfg.space.name(), cfg.mode.name()), "json");
    write_certificate(&path, &cert)?;
    let (leaves, boxes) = cert.root.size();
    println!(
        "{} {}: {} leaves, {} boxes, depth {}, {:.2?}",
        cfg.space.name(),
        cfg.mode.name(),
        leaves,
        boxes,
        cert.root.max_depth(),
        elapsed
    );
    for k in &cert.root.children {
        let (l, b) = k.size();
        let tag = if k.outcome.is_proved() { "proved" } else { "FAILED" };
        println!("  {:<24} {tag:<7} {l} leaves, {b} boxes", k.note.as_deref().unwrap_or("coverage"));
    }
    println!("certificate: {}", path.display());
    if cert.is_proved() {
        println!("proved");
        Ok(exit::PROVED)
    } else {
        for f in cert.root.failures().iter().take(20) {
            eprintln!("failed: {f}");
        }
        Ok(exit::FAILED)
    }
}

fn grid(cfg: RunConfig) -> Result<u8, CliError> {
    let rows = evaluate(cfg.space, &cfg.grid);
    match &cfg.out {
        Some(p) if p.as_os_str() == "-" => write_csv(std::io::stdout().lock(), &rows).context("writing CSV")?,
        _ => {
            let path = cfg.output_path(&format!("grid-{}", cfg.space.name()), "csv");
            let f = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(std::io::BufWriter::new(f), &rows).context("writing CSV")?;
            eprintln!("{} points -> {}", rows.len(), path.display());
        }
    }
    Ok(exit::PROVED)
}

fn lemmas(out: Option<PathBuf>) -> Result<u8, CliError> {
    let reports: Vec<LemmaCheckReport> = run_all();
    let mut so = std::io::stdout().lock();
    writeln!(so, "{:<34} {:<5} {:>7} {:>14}", "check", "pass", "samples", "min margin").ok();
    for r in &reports {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        writeln!(so, "{:<34} {tag:<5} {:>7} {:>14.6e}", r.lemma_id, r.margins.len(), r.min_margin()).ok();
    }
    if let Some(p) = out {
        let f = std::fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(f), &reports).context("writing report")?;
    }
    Ok(if reports.iter().all(|r| r.pass) { exit::PROVED } else { exit::FAILED })
}

fn verify(path: PathBuf) -> Result<u8, CliError> {
    let cert = match read_certificate(&path) {
        Ok(c) => c,
        Err(e @ ReadError::Format(_)) => return Err(config_err(format!("{}: {e}", path.display()))),
        Err(ReadError::Io(e)) => return Err(config_err(format!("{}: {e}", path.display()))),
    };
    match verify_certificate(&cert) {
        Err(e) => {
            eprintln!("rejected at {}: {}", e.path, e.reason);
            Ok(exit::FAILED)
        }
        Ok(rep) => {
            println!("{} leaves, {} boxes checked ({})", rep.leaves, rep.boxes, cert.engine_version);
            if rep.proved {
                println!("proved");
                Ok(exit::PROVED)
            } else {
                for f in rep.failures.iter().take(20) {
                    eprintln!("failed: {f}");
                }
                Ok(exit::FAILED)
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = cli.config.as_deref();
    match cli.cmd {
        Cmd::Prove { space, mode, claims, delta, precision_bits, jobs, out } => {
            let o = Overrides { mode, claims, delta, precision_bits, jobs, out, grid: None };
            prove(RunConfig::resolve(space.into(), file, env_dir(), o)?)
        }
        Cmd::Grid { space, grid: g, out } => {
            let o = Overrides { grid: g, out, ..Default::default() };
            grid(RunConfig::resolve(space.into(), file, env_dir(), o)?)
        }
        Cmd::Lemmas { out } => lemmas(out),
        Cmd::Cert { cmd: CertCmd::Verify { path } } => verify(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.code())
        }
    }
}
