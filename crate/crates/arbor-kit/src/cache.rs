//! Append-only result cache: one serialized tower or factorization per
//! line, keyed by a content hash of the input.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::tower::NumberTower;

/// 64-bit FNV-1a over the canonical input text.
pub fn content_hash(input: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in input.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug)]
pub struct FileCache {
    path: PathBuf,
    entries: BTreeMap<String, String>,
}

impl FileCache {
    /// Open (or create) the cache file; malformed lines are rejected rather
    /// than skipped, so a corrupted cache fails loudly.
    pub fn open(path: &Path) -> Result<FileCache> {
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                let (key, payload) = line
                    .split_once('\t')
                    .ok_or_else(|| Error::Cache(format!("malformed cache line {line:?}")))?;
                entries.insert(key.to_string(), payload.to_string());
            }
        }
        Ok(FileCache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    /// Insert and append to the file; re-inserting an existing key is a
    /// no-op, keeping the file append-only and idempotent.
    pub fn put(&mut self, key: &str, payload: &str) -> Result<()> {
        if self.entries.contains_key(key) {
            return Ok(());
        }
        if payload.contains('\n') || payload.contains('\t') {
            return Err(Error::Cache("payload must be a single line".into()));
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{key}\t{payload}")?;
        self.entries.insert(key.to_string(), payload.to_string());
        Ok(())
    }
}

/// Splitting tower with optional caching, keyed by the polynomial text.
pub fn cached_splitting_tower(
    poly: &QPoly,
    seed: u64,
    degree_cap: usize,
    cache: Option<&mut FileCache>,
) -> Result<(NumberTower, usize)> {
    let key = format!("split:{:016x}", content_hash(&poly.to_string()));
    if let Some(cache) = &cache {
        if let Some(hit) = cache.get(&key) {
            let tower = NumberTower::from_text(hit)?;
            let degree = tower.degree();
            return Ok((tower, degree));
        }
    }
    let (tower, degree) = NumberTower::splitting_tower(poly, seed, degree_cap)?;
    if let Some(cache) = cache {
        cache.put(&key, &tower.to_text())?;
    }
    Ok((tower, degree))
}
