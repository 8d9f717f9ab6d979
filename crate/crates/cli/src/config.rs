use std::fmt;
use std::path::{Path, PathBuf};

use bigal_core::cyclotomic::CycScalar;
use bigal_core::qbuilders::SLMatrix;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("N must be odd and greater than 1 (got {0})")]
    BadOrder(usize),
    #[error("n must be at least 2 (got {0})")]
    BadSize(usize),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("bad value for `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("config file {path}, line {line}: {msg}")]
    File {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    HopfAxioms,
    FrobeniusSeq,
    GaloisCertify,
    KernelBattery,
    GroupLaw,
    TwistLemma,
    PushforwardBounded,
    LazyWitness,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HopfAxioms,
        Suite::FrobeniusSeq,
        Suite::GaloisCertify,
        Suite::KernelBattery,
        Suite::GroupLaw,
        Suite::TwistLemma,
        Suite::PushforwardBounded,
        Suite::LazyWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HopfAxioms => "hopf-axioms",
            Suite::FrobeniusSeq => "frobenius-seq",
            Suite::GaloisCertify => "galois-certify",
            Suite::KernelBattery => "kernel-battery",
            Suite::GroupLaw => "group-law",
            Suite::TwistLemma => "twist-lemma",
            Suite::PushforwardBounded => "pushforward-bounded",
            Suite::LazyWitness => "lazy-witness",
        }
    }

    /// Informal title of the statement the suite checks.
    pub fn title(self) -> &'static str {
        match self {
            Suite::HopfAxioms => "u_q(sl(n))* and the Taft quotient are Hopf algebras",
            Suite::FrobeniusSeq => {
                "O(SL(n)) -> O(SL_q(n)) -> u_q(sl(n))* is a central exact sequence"
            }
            Suite::GaloisCertify => "every T_g is a (u_q(sl(n))*, u_q(sl(n))*)-bi-Galois object",
            Suite::KernelBattery => {
                "T_g is bi-trivial iff g is scalar; right-trivial iff g is diagonal"
            }
            Suite::GroupLaw => "T_gh is isomorphic to the cotensor product of T_g and T_h",
            Suite::TwistLemma => "twisting T_g by f_r gives T_g' with g' = diag(r^N) g",
            Suite::PushforwardBounded => "transgression H/H phi'(A+) and the pushforward to Gal(H)",
            Suite::LazyWitness => "u_q(sl(2))* carries a cocycle that is not lazy",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.into()))
    }

    pub fn parse_list(s: &str) -> Result<Vec<Suite>, ConfigError> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(Suite::parse(part)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Settings as given on the command line or in a config file; every field optional.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    pub n: Option<usize>,
    pub big_n: Option<usize>,
    pub suites: Option<String>,
    pub g: Vec<String>,
    pub r: Vec<String>,
    pub degree_bound: Option<usize>,
    pub pushforward_bound: Option<usize>,
    pub galois_threshold: Option<usize>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl RawConfig {
    /// Parses `key = value` lines; `#` starts a comment, `g` and `r` may repeat.
    pub fn from_text(text: &str, path: &Path) -> Result<RawConfig, ConfigError> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::File {
                path: path.to_path_buf(),
                line: i + 1,
                msg,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (k, v) = (k.trim(), v.trim().to_string());
            let num = |v: &str| v.parse::<usize>().map_err(|e| err(format!("`{k}`: {e}")));
            match k {
                "n" => raw.n = Some(num(&v)?),
                "N" => raw.big_n = Some(num(&v)?),
                "suites" => raw.suites = Some(v),
                "g" => raw.g.push(v),
                "r" => raw.r.push(v),
                "degree-bound" => raw.degree_bound = Some(num(&v)?),
                "pushforward-bound" => raw.pushforward_bound = Some(num(&v)?),
                "galois-threshold" => raw.galois_threshold = Some(num(&v)?),
                "jobs" => raw.jobs = Some(num(&v)?),
                "cache-dir" => raw.cache_dir = Some(v.into()),
                "json" => raw.json = Some(v.into()),
                _ => return Err(err(format!("unknown key `{k}`"))),
            }
        }
        Ok(raw)
    }

    pub fn from_file(path: &Path) -> Result<RawConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        RawConfig::from_text(&text, path)
    }

    /// Fields set in `over` win; list fields are replaced, not merged.
    pub fn overlay(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            n,
            big_n,
            suites,
            degree_bound,
            pushforward_bound,
            galois_threshold,
            jobs,
            cache_dir,
            json
        );
        if !over.g.is_empty() {
            self.g = over.g;
        }
        if !over.r.is_empty() {
            self.r = over.r;
        }
        self
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub big_n: usize,
    pub suites: Vec<Suite>,
    pub g_manifest: Vec<SLMatrix>,
    pub r_samples: Vec<Vec<CycScalar>>,
    pub degree_bound: usize,
    pub pushforward_bound: usize,
    /// Galois certification and everything built on it is skipped above this dimension.
    pub galois_threshold: usize,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
}

/// The part of the configuration that determines the report contents.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct ConfigEcho {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub suites: Vec<String>,
    pub g_manifest: Vec<Vec<Vec<String>>>,
    pub r_samples: Vec<Vec<String>>,
    pub degree_bound: usize,
    pub pushforward_bound: usize,
    pub galois_threshold: usize,
}

pub const DEFAULT_DEGREE_BOUND: usize = 9;
pub const DEFAULT_PUSHFORWARD_BOUND: usize = 6;
pub const DEFAULT_GALOIS_THRESHOLD: usize = 2000;

/// Matrix literal: a JSON array of rows, or rows separated by `;` with entries
/// separated by `,`. Entries are scalar literals over integers, `/` and `z`.
pub fn parse_matrix(order: u32, s: &str) -> Result<SLMatrix, ConfigError> {
    let err = |msg: String| ConfigError::Value {
        key: "g".into(),
        msg: format!("`{s}`: {msg}"),
    };
    let s = s.trim();
    if s.starts_with('[') {
        return SLMatrix::from_json(order, s).map_err(|e| err(e.to_string()));
    }
    let rows = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| CycScalar::parse(order, x.trim()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| err(e.to_string()))?;
    SLMatrix::new(order, rows).map_err(|e| err(e.to_string()))
}

/// Torus literal: entries separated by `,`, e.g. `2,1/2` or `z,z^2`.
pub fn parse_torus(order: u32, s: &str) -> Result<Vec<CycScalar>, ConfigError> {
    s.split(',')
        .map(|x| CycScalar::parse(order, x.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ConfigError::Value {
            key: "r".into(),
            msg: format!("`{s}`: {e}"),
        })
}

fn default_manifest(n: usize) -> Vec<String> {
    let id = |i: usize, j: usize| if i == j { "1" } else { "0" };
    let build = |f: &dyn Fn(usize, usize) -> String| {
        (0..n)
            .map(|i| (0..n).map(|j| f(i, j)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    };
    let mut out = vec![build(&|i, j| id(i, j).into())];
    if n == 2 {
        out.extend(["-1,0;0,-1", "8,0;0,1/8", "1,1;0,1", "2,1;3,2"].map(String::from));
    } else {
        if n.is_multiple_of(2) {
            out.push(build(&|i, j| if i == j { "-1".into() } else { "0".into() }));
        }
        if n == 3 {
            out.push(build(&|i, j| if i == j { "z".into() } else { "0".into() }));
            out.push(build(&|i, j| {
                if i == j {
                    "z^2".into()
                } else {
                    "0".into()
                }
            }));
        }
        out.push(build(&|i, j| match (i, j) {
            (0, 0) => "2".into(),
            (i, j) if i == j && i == n - 1 => "1/2".into(),
            (i, j) => id(i, j).into(),
        }));
        out.push(build(&|i, j| {
            if (i, j) == (0, 1) {
                "1".into()
            } else {
                id(i, j).into()
            }
        }));
        out.push(build(&|i, j| match (i, j) {
            (0, 0) => "2".into(),
            (0, 1) | (1, 0) | (1, 1) => "1".into(),
            (i, j) => id(i, j).into(),
        }));
    }
    out
}

fn default_torus(n: usize) -> Vec<String> {
    let mut rational = vec!["1"; n];
    rational[0] = "2";
    rational[n - 1] = "1/2";
    let mut roots = vec!["1"; n];
    roots[0] = "z";
    roots[1] = "z^-1";
    vec![rational.join(","), roots.join(","), vec!["1"; n].join(",")]
}

impl SuiteConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<SuiteConfig, ConfigError> {
        let n = raw.n.unwrap_or(2);
        let big_n = raw.big_n.unwrap_or(3);
        if big_n < 3 || big_n.is_multiple_of(2) {
            return Err(ConfigError::BadOrder(big_n));
        }
        if n < 2 {
            return Err(ConfigError::BadSize(n));
        }
        let order = big_n as u32;
        let suites = Suite::parse_list(raw.suites.as_deref().unwrap_or("all"))?;
        let g_lits = if raw.g.is_empty() {
            default_manifest(n)
        } else {
            raw.g.clone()
        };
        let g_manifest = g_lits
            .iter()
            .map(|s| parse_matrix(order, s))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(g) = g_manifest.iter().find(|g| g.n() != n) {
            return Err(ConfigError::Value {
                key: "g".into(),
                msg: format!("{g} is not {n}x{n}"),
            });
        }
        let r_lits = if raw.r.is_empty() {
            default_torus(n)
        } else {
            raw.r.clone()
        };
        let r_samples = r_lits
            .iter()
            .map(|s| parse_torus(order, s))
            .collect::<Result<Vec<_>, _>>()?;
        for r in &r_samples {
            let prod = r.iter().fold(CycScalar::one(order), |acc, x| &acc * x);
            if r.len() != n || !prod.is_one() {
                return Err(ConfigError::Value {
                    key: "r".into(),
                    msg: format!("torus parameter needs {n} entries with product 1"),
                });
            }
        }
        let jobs = raw.jobs.unwrap_or(0);
        Ok(SuiteConfig {
            n,
            big_n,
            suites,
            g_manifest,
            r_samples,
            degree_bound: raw.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
            pushforward_bound: raw.pushforward_bound.unwrap_or(DEFAULT_PUSHFORWARD_BOUND),
            galois_threshold: raw.galois_threshold.unwrap_or(DEFAULT_GALOIS_THRESHOLD),
            jobs,
            cache_dir: raw.cache_dir.clone(),
        })
    }

    pub fn order(&self) -> u32 {
        self.big_n as u32
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.n,
            big_n: self.big_n,
            suites: self.suites.iter().map(|s| s.name().to_string()).collect(),
            g_manifest: self.g_manifest.iter().map(SLMatrix::literals).collect(),
            r_samples: self
                .r_samples
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            degree_bound: self.degree_bound,
            pushforward_bound: self.pushforward_bound,
            galois_threshold: self.galois_threshold,
        }
    }
}

/// Label for a manifest matrix, stable across runs.
pub fn matrix_label(g: &SLMatrix) -> String {
    g.literals()
        .iter()
        .map(|r| r.join(","))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_order_is_rejected() {
        let raw = RawConfig {
            big_n: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            SuiteConfig::from_raw(&raw),
            Err(ConfigError::BadOrder(2))
        ));
    }

    #[test]
    fn default_manifests_are_special_linear() {
        for n in [2, 3, 4] {
            let cfg = SuiteConfig::from_raw(&RawConfig {
                n: Some(n),
                ..Default::default()
            })
            .unwrap();
            assert!(cfg.g_manifest.len() >= 4);
            assert_eq!(cfg.r_samples.len(), 3);
        }
    }

    #[test]
    fn file_and_flags_overlay() {
        let file = RawConfig::from_text(
            "n = 3\nN=5 # comment\nsuites = kernel-battery\ng = 1,0,0;0,1,0;0,0,1\n",
            Path::new("c"),
        )
        .unwrap();
        let flags = RawConfig {
            big_n: Some(3),
            ..Default::default()
        };
        let raw = file.overlay(flags);
        assert_eq!((raw.n, raw.big_n), (Some(3), Some(3)));
        let cfg = SuiteConfig::from_raw(&raw).unwrap();
        assert_eq!(cfg.suites, vec![Suite::KernelBattery]);
        assert_eq!(cfg.g_manifest.len(), 1);
    }

    #[test]
    fn bad_lines_report_position() {
        match RawConfig::from_text("n = 2\nbogus\n", Path::new("c")) {
            Err(ConfigError::File { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrix_literals() {
        let a = parse_matrix(3, "8,0;0,1/8").unwrap();
        let b = parse_matrix(3, r#"[["8","0"],["0","1/8"]]"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_matrix(3, "2,0;0,1").is_err());
        assert_eq!(parse_torus(3, "z, z^2").unwrap().len(), 2);
    }
}
