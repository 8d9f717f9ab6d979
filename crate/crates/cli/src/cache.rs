use std::path::{Path, PathBuf};
use std::sync::Mutex;

use bigal_core::ncalg::{self, poly, Presentation, RewriteSystem};
use bigal_core::qbuilders::SystemSource;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache entry {path} is corrupt: {msg}")]
    Corrupt { path: PathBuf, msg: String },
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn sha256_hex(bytes: impl AsRef<[u8]>) -> String {
    hex::encode(Sha256::digest(bytes.as_ref()))
}

/// Canonical text of a presentation: order, generators, relations in input order.
pub fn presentation_text(p: &Presentation) -> String {
    let mut s = format!("order {}\ngens {}\n", p.order, p.gens.join(" "));
    for r in &p.relations {
        s.push_str(&poly::display(r, &p.gens));
        s.push('\n');
    }
    s
}

/// Hash of the presentation alone, as recorded in reports.
pub fn presentation_hash(p: &Presentation) -> String {
    sha256_hex(presentation_text(p))
}

/// Cache key: presentation, completion bound and tool version.
pub fn cache_key(p: &Presentation, bound: usize, version: &str) -> String {
    key_from_hash(&presentation_hash(p), bound, version)
}

fn key_from_hash(presentation: &str, bound: usize, version: &str) -> String {
    sha256_hex(format!(
        "presentation {presentation}\nbound {bound}\nversion {version}\n"
    ))
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    presentation: String,
    bound: usize,
    system: RewriteSystem,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub rebuilt_stale: usize,
}

/// Completed rewriting systems stored as JSON files named by their cache key.
pub struct FileCache {
    dir: PathBuf,
    version: String,
    stats: Mutex<CacheStats>,
    errors: Mutex<Vec<CacheError>>,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<FileCache, CacheError> {
        FileCache::with_version(dir, TOOL_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Result<FileCache, CacheError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|source| CacheError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(FileCache {
            dir,
            version: version.into(),
            stats: Mutex::default(),
            errors: Mutex::default(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().unwrap()
    }

    /// Errors met so far; the systems concerned were recomputed.
    pub fn take_errors(&self) -> Vec<CacheError> {
        std::mem::take(&mut self.errors.lock().unwrap())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss or a stale version.
    pub fn load(
        &self,
        p: &Presentation,
        bound: usize,
    ) -> Result<Option<RewriteSystem>, CacheError> {
        let key = cache_key(p, bound, &self.version);
        let path = self.path_for(&key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| CacheError::Corrupt {
            path: path.clone(),
            msg: e.to_string(),
        })?;
        if entry.version != self.version {
            self.stats.lock().unwrap().rebuilt_stale += 1;
            return Ok(None);
        }
        let expected = presentation_hash(p);
        if entry.presentation != expected || entry.bound != bound {
            return Err(CacheError::Corrupt {
                path,
                msg: format!("presentation hash {} != {expected}", entry.presentation),
            });
        }
        if entry.system.gens() != p.gens.as_slice() || entry.system.order() != p.order {
            return Err(CacheError::Corrupt {
                path,
                msg: "generators or order differ from the presentation".into(),
            });
        }
        Ok(Some(entry.system))
    }

    pub fn store(
        &self,
        p: &Presentation,
        bound: usize,
        system: &RewriteSystem,
    ) -> Result<PathBuf, CacheError> {
        let path = self.path_for(&cache_key(p, bound, &self.version));
        let entry = Entry {
            version: self.version.clone(),
            presentation: presentation_hash(p),
            bound,
            system: system.clone(),
        };
        let text = serde_json::to_string(&entry).expect("cache entry serializes");
        // write then rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, text).map_err(|source| CacheError::Io {
            path: tmp.clone(),
            source,
        })?;
        std::fs::rename(&tmp, &path).map_err(|source| CacheError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }

    /// Every cache file with its parse status.
    pub fn entries(&self) -> Result<Vec<EntryInfo>, CacheError> {
        let rd = std::fs::read_dir(&self.dir).map_err(|source| CacheError::Io {
            path: self.dir.clone(),
            source,
        })?;
        let mut out = Vec::new();
        for de in rd {
            let de = de.map_err(|source| CacheError::Io {
                path: self.dir.clone(),
                source,
            })?;
            let path = de.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let parsed = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str::<Entry>(&t).map_err(|e| e.to_string()));
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            out.push(match parsed {
                Ok(e) => {
                    let key_ok = file.trim_end_matches(".json") == cache_key_of_entry(&e);
                    EntryInfo {
                        file,
                        version: Some(e.version.clone()),
                        gens: e.system.gens().to_vec(),
                        rules: e.system.rules().len(),
                        status: if !key_ok {
                            EntryStatus::Corrupt("file name does not match contents".into())
                        } else if e.version != self.version {
                            EntryStatus::Stale
                        } else {
                            EntryStatus::Current
                        },
                    }
                }
                Err(msg) => EntryInfo {
                    file,
                    version: None,
                    gens: vec![],
                    rules: 0,
                    status: EntryStatus::Corrupt(msg),
                },
            });
        }
        out.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize, CacheError> {
        let mut removed = 0;
        for e in self.entries()? {
            let path = self.dir.join(&e.file);
            std::fs::remove_file(&path).map_err(|source| CacheError::Io { path, source })?;
            removed += 1;
        }
        Ok(removed)
    }
}

/// The key an entry would be stored under, recomputed from its own contents.
fn cache_key_of_entry(e: &Entry) -> String {
    key_from_hash(&e.presentation, e.bound, &e.version)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EntryStatus {
    Current,
    Stale,
    Corrupt(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryInfo {
    pub file: String,
    pub version: Option<String>,
    pub gens: Vec<String>,
    pub rules: usize,
    pub status: EntryStatus,
}

impl SystemSource for FileCache {
    fn complete(&self, p: &Presentation, bound: usize) -> RewriteSystem {
        match self.load(p, bound) {
            Ok(Some(sys)) => {
                self.stats.lock().unwrap().hits += 1;
                return sys;
            }
            Ok(None) => {}
            Err(e) => self.errors.lock().unwrap().push(e),
        }
        self.stats.lock().unwrap().misses += 1;
        let sys = ncalg::complete(p.order, p.gens.clone(), &p.relations, bound);
        if let Err(e) = self.store(p, bound, &sys) {
            self.errors.lock().unwrap().push(e);
        }
        sys
    }
}
