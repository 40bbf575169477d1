//! On-disk cache of universal polynomials under `WB_CACHE_DIR`.
//!
//! Each file holds one operation for one group and is keyed by a hash of the
//! group's class order and table of marks. Entries are checked against the
//! ghost equations at a fixed point before use; a bad entry is ignored.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use witt_burnside::burnside::GhostSystem;
use witt_burnside::{CommRing, GroupContext, Op, Poly, RingSpec, RingValue, UniversalPolySet};

pub const CACHE_ENV: &str = "WB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    group_hash: String,
    op: String,
    variables: Vec<String>,
    polynomials: Vec<String>,
}

/// Hex SHA-256 of the order, class labels and marks.
pub fn group_hash(ctx: &GroupContext) -> String {
    let mut h = Sha256::new();
    h.update(format!("order={};", ctx.order()));
    for (label, row) in ctx.labels().iter().zip(ctx.marks().rows()) {
        h.update(format!("{label}:{row:?};"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_path(dir: &Path, hash: &str, op: Op) -> PathBuf {
    dir.join(format!("{hash}-{}.json", op.poly_name()))
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Loads a cached set into `ctx` if one exists and passes validation.
pub fn preload(ctx: &GroupContext, op: Op) {
    let Some(dir) = cache_dir() else { return };
    if ctx.universal_is_cached(op) {
        return;
    }
    let hash = group_hash(ctx);
    let Ok(text) = std::fs::read_to_string(entry_path(&dir, &hash, op)) else { return };
    let Ok(entry) = serde_json::from_str::<CacheEntry>(&text) else { return };
    if entry.group_hash != hash || entry.op != op.poly_name() || entry.polynomials.len() != ctx.class_count() {
        return;
    }
    let polys: Option<Vec<Poly>> = entry.polynomials.iter().map(|p| Poly::parse(p, &entry.variables).ok()).collect();
    let Some(polys) = polys else { return };
    let set = UniversalPolySet { op, var_names: entry.variables, polys };
    if set.var_names.len() != 2 * ctx.class_count() || !satisfies_ghost_equations(ctx, &set) {
        return;
    }
    ctx.preload_universal(set);
}

/// Writes the derived set; failures to write are not errors.
pub fn store(ctx: &GroupContext, set: &UniversalPolySet) {
    let Some(dir) = cache_dir() else { return };
    let hash = group_hash(ctx);
    let entry = CacheEntry {
        group_hash: hash.clone(),
        op: set.op.poly_name().to_string(),
        variables: set.var_names.clone(),
        polynomials: set.polys.iter().map(|p| p.to_string_with(&set.var_names)).collect(),
    };
    if std::fs::create_dir_all(&dir).is_ok() {
        let _ = std::fs::write(entry_path(&dir, &hash, set.op), crate::to_json(&entry));
    }
}

/// Universal polynomials for `op`, through the cache.
pub fn universal(ctx: &GroupContext, op: Op) -> Arc<UniversalPolySet> {
    let had = ctx.universal_is_cached(op);
    preload(ctx, op);
    let loaded = ctx.universal_is_cached(op);
    let set = ctx.universal(op);
    if !had && !loaded {
        store(ctx, &set);
    }
    set
}

fn satisfies_ghost_equations(ctx: &GroupContext, set: &UniversalPolySet) -> bool {
    let k = ctx.class_count();
    let ring = RingSpec::Integers.arc();
    let point = |salt: i64| -> Vec<RingValue> {
        (0..k as i64).map(|i| RingValue::from_int(&ring, (i * 7 + salt) % 5 - 2)).collect()
    };
    let (a, b) = (point(3), point(11));
    let out = set.evaluate(&a, Some(&b), &[]);
    let sys = GhostSystem::for_group(ctx);
    let (ga, gb, go) = (sys.apply(&a, &[]), sys.apply(&b, &[]), sys.apply(&out, &[]));
    ga.iter().zip(&gb).zip(&go).all(|((x, y), z)| {
        let expect = match set.op {
            Op::Add => x.ring_add(y),
            Op::Mul => x.ring_mul(y),
            Op::Neg => x.ring_neg(),
        };
        &expect == z
    })
}
