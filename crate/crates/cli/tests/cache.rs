use bigal_cli::cache::{cache_key, CacheError, EntryStatus, FileCache};
use bigal_cli::config::{RawConfig, SuiteConfig};
use bigal_core::ncalg::{self, Presentation, RewriteSystem};
use bigal_core::qbuilders::{default_bound, QContext, SystemSource};

fn uq_presentation() -> Presentation {
    let ctx = QContext::new(2, 3).unwrap();
    ctx.presentation_t_g(&ctx.identity())
}

fn complete(p: &Presentation) -> RewriteSystem {
    ncalg::complete(p.order, p.gens.clone(), &p.relations, default_bound(2, 3))
}

fn same_system(a: &RewriteSystem, b: &RewriteSystem) -> bool {
    a.order() == b.order()
        && a.gens() == b.gens()
        && a.rules() == b.rules()
        && a.status() == b.status()
}

#[test]
fn store_then_load_gives_identical_rules() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FileCache::new(dir.path()).unwrap();
    let p = uq_presentation();
    let bound = default_bound(2, 3);
    let sys = complete(&p);
    assert!(cache.load(&p, bound).unwrap().is_none());
    cache.store(&p, bound, &sys).unwrap();
    let back = cache.load(&p, bound).unwrap().expect("hit");
    assert!(same_system(&sys, &back));
    assert!(back.is_complete());
    // the normal forms agree on a few products
    let words = [vec![0u8, 1, 2, 3], vec![3, 3, 2, 1, 0], vec![1, 2, 1, 2]];
    for w in words {
        let poly =
            ncalg::NcPoly::single(ncalg::Word::from_slice(&w), bigal_core::CycScalar::one(3));
        assert_eq!(sys.normal_form(&poly), back.normal_form(&poly));
    }
}

#[test]
fn different_bound_or_version_uses_a_different_key() {
    let p = uq_presentation();
    let k = cache_key(&p, 16, "0.1.0");
    assert_ne!(k, cache_key(&p, 17, "0.1.0"));
    assert_ne!(k, cache_key(&p, 16, "0.1.1"));
    assert_eq!(k, cache_key(&p, 16, "0.1.0"));
}

#[test]
fn stale_version_triggers_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    let p = uq_presentation();
    let bound = default_bound(2, 3);
    let sys = complete(&p);
    let old = FileCache::with_version(dir.path(), "0.0.1").unwrap();
    let path = old.store(&p, bound, &sys).unwrap();
    // rename the old entry to the key the current version looks up
    let current = FileCache::new(dir.path()).unwrap();
    let target = dir.path().join(format!(
        "{}.json",
        cache_key(&p, bound, bigal_cli::cache::TOOL_VERSION)
    ));
    std::fs::rename(&path, &target).unwrap();
    assert!(current.load(&p, bound).unwrap().is_none());
    assert_eq!(current.stats().rebuilt_stale, 1);
    let rebuilt = current.complete(&p, bound);
    assert!(same_system(&rebuilt, &sys));
    assert_eq!(current.stats().misses, 1);
    assert!(current.take_errors().is_empty());
    // the rebuilt entry replaced the stale one
    assert!(current.load(&p, bound).unwrap().is_some());
}

#[test]
fn tampered_hash_is_reported_as_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FileCache::new(dir.path()).unwrap();
    let p = uq_presentation();
    let bound = default_bound(2, 3);
    let path = cache.store(&p, bound, &complete(&p)).unwrap();
    let mut entry: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    entry["presentation"] = serde_json::json!("00".repeat(32));
    std::fs::write(&path, entry.to_string()).unwrap();
    assert!(matches!(
        cache.load(&p, bound),
        Err(CacheError::Corrupt { .. })
    ));
    let listed = cache.entries().unwrap();
    assert!(matches!(listed[0].status, EntryStatus::Corrupt(_)));

    // as a system source it records the error and recomputes
    let sys = cache.complete(&p, bound);
    assert!(sys.is_complete());
    assert_eq!(cache.take_errors().len(), 1);
}

#[test]
fn unparsable_entry_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FileCache::new(dir.path()).unwrap();
    let p = uq_presentation();
    let bound = default_bound(2, 3);
    let path = cache.store(&p, bound, &complete(&p)).unwrap();
    std::fs::write(&path, "{\"version\": \"0.1.0\", \"presentation\": 7}").unwrap();
    assert!(matches!(
        cache.load(&p, bound),
        Err(CacheError::Corrupt { .. })
    ));
}

#[test]
fn rule_with_out_of_range_generator_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FileCache::new(dir.path()).unwrap();
    let p = uq_presentation();
    let bound = default_bound(2, 3);
    let path = cache.store(&p, bound, &complete(&p)).unwrap();
    let mut entry: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    entry["system"]["rules"][0][0] = serde_json::json!([9, 9]);
    std::fs::write(&path, entry.to_string()).unwrap();
    assert!(matches!(
        cache.load(&p, bound),
        Err(CacheError::Corrupt { .. })
    ));
}

#[test]
fn cold_and_warm_runs_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let raw = RawConfig {
        suites: Some("hopf-axioms".into()),
        cache_dir: Some(dir.path().to_path_buf()),
        jobs: Some(1),
        ..Default::default()
    };
    let cfg = SuiteConfig::from_raw(&raw).unwrap();
    let cold = bigal_cli::run(cfg.clone()).unwrap();
    let warm = bigal_cli::run(cfg).unwrap();
    assert!(cold.report.passed);
    assert_eq!(cold.report.canonical_json(), warm.report.canonical_json());
    assert!(cold.cache_stats.unwrap().misses > 0);
    let warm_stats = warm.cache_stats.unwrap();
    assert_eq!(warm_stats.misses, 0);
    assert!(warm_stats.hits > 0);
    assert_eq!(warm.exit_code(), 0);

    let uncached = bigal_cli::run(
        SuiteConfig::from_raw(&RawConfig {
            cache_dir: None,
            ..raw
        })
        .unwrap(),
    )
    .unwrap();
    assert_eq!(
        uncached.report.canonical_json(),
        cold.report.canonical_json()
    );
}
