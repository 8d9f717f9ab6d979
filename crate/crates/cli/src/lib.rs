//! Driver for the bigal verification suites: configuration, the rewriting
//! system cache, suite execution and JSON reports.

pub mod cache;
pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;
use std::sync::Arc;

use bigal_core::qbuilders::QContext;
use serde_json::{json, Value};

use cache::{presentation_hash, CacheError, CacheStats, FileCache, TOOL_VERSION};
use config::{matrix_label, ConfigError, SuiteConfig};
use report::{Report, SCHEMA_VERSION};
use suites::Workspace;

/// Steps that the suites do not certify.
pub const ASSUMPTIONS: [&str; 2] = [
    "surjectivity of g -> [T_g] onto the bi-Galois group at n=2 rests on an external classification and is not checked",
    "triviality of the lazy cohomology group of u_q(sl(2))* rests on external facts; only a non-lazy cocycle is exhibited",
];

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error("{path}: {msg}")]
    File { path: PathBuf, msg: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Parameters(_) => 2,
            _ => 3,
        }
    }
}

pub struct RunOutcome {
    pub report: Report,
    /// Cache entries that could not be used; the systems were recomputed.
    pub cache_errors: Vec<CacheError>,
    pub cache_stats: Option<CacheStats>,
}

impl RunOutcome {
    /// 0 all pass, 1 a suite failed, 3 the cache was corrupt.
    pub fn exit_code(&self) -> i32 {
        if !self.cache_errors.is_empty() {
            3
        } else if self.report.passed {
            0
        } else {
            1
        }
    }
}

fn context(cfg: &SuiteConfig) -> Result<(QContext, Option<Arc<FileCache>>), RunError> {
    let ctx = QContext::new(cfg.n, cfg.big_n).map_err(|e| RunError::Parameters(e.to_string()))?;
    match &cfg.cache_dir {
        Some(dir) => {
            let cache = Arc::new(FileCache::new(dir)?);
            Ok((ctx.with_source(cache.clone()), Some(cache)))
        }
        None => Ok((ctx, None)),
    }
}

/// Runs `f` on a pool of `jobs` threads (0 picks the machine default).
fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R, RunError> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| RunError::Pool(e.to_string()))?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        Ok(f())
    }
}

pub fn run(cfg: SuiteConfig) -> Result<RunOutcome, RunError> {
    let (ctx, cache) = context(&cfg)?;
    let echo = cfg.echo();
    let (suites, hashes, timings) = with_pool(cfg.jobs, move || {
        let ws = Workspace::build(cfg, ctx);
        let suites = ws.run_suites();
        (suites, ws.presentation_hashes(), ws.timings())
    })?;
    let passed = suites.iter().all(|s| !s.status.is_failure());
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        config: echo,
        presentation_hashes: hashes,
        suites,
        assumptions: ASSUMPTIONS.iter().map(ToString::to_string).collect(),
        passed,
        timings: Some(timings),
    };
    let (cache_errors, cache_stats) = match &cache {
        Some(c) => (c.take_errors(), Some(c.stats())),
        None => (Vec::new(), None),
    };
    Ok(RunOutcome {
        report,
        cache_errors,
        cache_stats,
    })
}

/// Dimensions and presentation hashes of `u_q(sl(n))*`, `B` and every manifest
/// `T_g`. The flag is false when some object failed to build.
pub fn build_summary(cfg: &SuiteConfig) -> Result<(Value, bool), RunError> {
    let (ctx, _cache) = context(cfg)?;
    with_pool(cfg.jobs, || {
        let mut ok = true;
        let mut objects = Vec::new();
        let mut record = |name: String, hash: String, dim: Result<usize, String>| {
            ok &= dim.is_ok();
            objects.push(match dim {
                Ok(d) => json!({ "name": name, "sha256": hash, "dim": d }),
                Err(e) => json!({ "name": name, "sha256": hash, "error": e }),
            });
        };
        let uq = ctx.build_uq_star();
        let uq_hash = presentation_hash(&ctx.presentation_t_g(&ctx.identity()));
        record(
            "u_q(sl(n))*".into(),
            uq_hash,
            uq.as_ref()
                .map(|h| h.alg.dim())
                .map_err(ToString::to_string),
        );
        match ctx.build_taft() {
            Ok(b) => {
                let p = bigal_core::ncalg::Presentation {
                    order: b.order(),
                    gens: b.alg.gen_names().to_vec(),
                    relations: b.relations.clone(),
                };
                record("B".into(), presentation_hash(&p), Ok(b.alg.dim()));
            }
            Err(e) => record("B".into(), String::new(), Err(e.to_string())),
        }
        if let Ok(h) = &uq {
            for g in &cfg.g_manifest {
                let hash = presentation_hash(&ctx.presentation_t_g(g));
                record(
                    format!("T[{}]", matrix_label(g)),
                    hash,
                    ctx.build_t_g(g, h)
                        .map(|t| t.dim())
                        .map_err(|e| e.to_string()),
                );
            }
        }
        let summary = json!({
            "tool_version": TOOL_VERSION,
            "n": cfg.n,
            "N": cfg.big_n,
            "expected_dim": ctx.expected_dim(),
            "objects": objects,
        });
        (summary, ok)
    })
}

pub fn read_report(path: &std::path::Path) -> Result<Report, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::File {
        path: path.into(),
        msg: e.to_string(),
    })?;
    Report::from_json(&text).map_err(|e| RunError::File {
        path: path.into(),
        msg: e.to_string(),
    })
}
