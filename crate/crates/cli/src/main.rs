use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bigal_cli::cache::{EntryStatus, FileCache};
use bigal_cli::config::{RawConfig, SuiteConfig};
use bigal_cli::report::SCHEMA_VERSION;
use bigal_cli::{build_summary, read_report, run, RunError};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bigal",
    version,
    about = "Exact bi-Galois object and cocycle verification suites"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build u_q(sl(n))*, B and the manifest objects; print dimensions and hashes.
    Build(RunArgs),
    /// Run verification suites and emit a report.
    Run(RunArgs),
    /// Summarize a saved JSON report.
    Report { file: PathBuf },
    /// Inspect or clear the rewriting system cache.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    List(CacheArgs),
    Clear(CacheArgs),
    /// Exit with status 3 when an entry is corrupt.
    Verify(CacheArgs),
}

#[derive(Args)]
struct CacheArgs {
    #[arg(long)]
    cache_dir: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Key-value file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Matrix size (default 2).
    #[arg(long)]
    n: Option<usize>,
    /// Root of unity order, odd and > 1 (default 3).
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Comma-separated suite names, or `all` (default).
    #[arg(long)]
    suites: Option<String>,
    /// Manifest matrix, e.g. `8,0;0,1/8`; repeatable, replaces the default manifest.
    #[arg(long)]
    g: Vec<String>,
    /// Torus parameter, e.g. `2,1/2` or `z,z^2`; repeatable.
    #[arg(long)]
    r: Vec<String>,
    /// Degree bound for injectivity of the Frobenius map (default 9).
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Degree bound for pushforwards and the action formula (default 6).
    #[arg(long)]
    pushforward_bound: Option<usize>,
    /// Skip suites that need Galois certification above this dimension (default 2000).
    #[arg(long)]
    galois_threshold: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for completed rewriting systems.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report (or build summary) here.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<(SuiteConfig, Option<PathBuf>), RunError> {
        let flags = RawConfig {
            n: self.n,
            big_n: self.big_n,
            suites: self.suites.clone(),
            g: self.g.clone(),
            r: self.r.clone(),
            degree_bound: self.degree_bound,
            pushforward_bound: self.pushforward_bound,
            galois_threshold: self.galois_threshold,
            jobs: self.jobs,
            cache_dir: self.cache_dir.clone(),
            json: self.json.clone(),
        };
        let raw = match &self.config {
            Some(path) => RawConfig::from_file(path)?.overlay(flags),
            None => flags,
        };
        Ok((SuiteConfig::from_raw(&raw)?, raw.json))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), RunError> {
    std::fs::write(path, text).map_err(|e| RunError::File {
        path: path.into(),
        msg: e.to_string(),
    })
}

fn cmd_build(args: &RunArgs) -> Result<i32, RunError> {
    let (cfg, json) = args.resolve()?;
    let (summary, ok) = build_summary(&cfg)?;
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match json {
        Some(path) => write_file(&path, &text)?,
        None => println!("{text}"),
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_run(args: &RunArgs) -> Result<i32, RunError> {
    let (cfg, json) = args.resolve()?;
    let outcome = run(cfg)?;
    print!("{}", outcome.report.summary());
    if let Some(stats) = outcome.cache_stats {
        eprintln!(
            "cache: {} hits, {} misses, {} stale",
            stats.hits, stats.misses, stats.rebuilt_stale
        );
    }
    for e in &outcome.cache_errors {
        eprintln!("error: {e}");
    }
    if let Some(path) = json {
        write_file(&path, &outcome.report.to_json())?;
    }
    Ok(outcome.exit_code())
}

fn cmd_report(file: &Path) -> Result<i32, RunError> {
    let report = read_report(file)?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(RunError::File {
            path: file.into(),
            msg: format!(
                "schema version {} (this tool reads {SCHEMA_VERSION})",
                report.schema_version
            ),
        });
    }
    print!("{}", report.summary());
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_cache(action: &CacheCmd) -> Result<i32, RunError> {
    let (CacheCmd::List(a) | CacheCmd::Clear(a) | CacheCmd::Verify(a)) = action;
    let cache = FileCache::new(&a.cache_dir)?;
    match action {
        CacheCmd::Clear(_) => {
            println!("removed {} entries", cache.clear()?);
            Ok(0)
        }
        CacheCmd::List(_) | CacheCmd::Verify(_) => {
            let entries = cache.entries()?;
            let mut corrupt = 0;
            for e in &entries {
                let status = match &e.status {
                    EntryStatus::Current => "current".to_string(),
                    EntryStatus::Stale => "stale".to_string(),
                    EntryStatus::Corrupt(msg) => {
                        corrupt += 1;
                        format!("corrupt ({msg})")
                    }
                };
                let version = e.version.as_deref().unwrap_or("?");
                println!(
                    "{}  {status}  version {version}  gens [{}]  {} rules",
                    e.file,
                    e.gens.join(" "),
                    e.rules
                );
            }
            println!("{} entries, {corrupt} corrupt", entries.len());
            Ok(if matches!(action, CacheCmd::Verify(_)) && corrupt > 0 {
                3
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Build(args) => cmd_build(args),
        Cmd::Run(args) => cmd_run(args),
        Cmd::Report { file } => cmd_report(file),
        Cmd::Cache { action } => cmd_cache(action),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
