//! Integral Jack polynomials J_μ by Gram-Schmidt orthogonalization of
//! monomial symmetric functions, memoized in a thread-safe table with
//! optional file persistence.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{ratfun_from_json, ratfun_to_json, AlgebraError, RatFun};
use crate::partitions::Partition;

use super::{jack_inner, monomial_sym, SymFunc};

/// The integral Jack polynomial: orthogonal family indexed by partitions,
/// normalized so the coefficient of p_1^{|μ|} equals 1.
#[derive(Clone)]
pub struct JackPoly {
    pub index: Partition,
    pub expansion: SymFunc,
}

#[derive(Debug, Error)]
pub enum JackCacheError {
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Gram-Schmidt over the partitions of n taken in `order`, which must be
/// a linear extension of dominance listing dominated partitions first.
/// Returns the normalized Jack polynomials in that order.
pub fn gram_schmidt_with_order(n: u32, order: &[Partition]) -> Vec<(Partition, SymFunc)> {
    debug_assert_eq!(order.len(), Partition::enumerate(n).len());
    let mut done: Vec<(Partition, SymFunc, RatFun)> = Vec::new(); // (μ, J_μ, ⟨J_μ,J_μ⟩)
    for mu in order {
        debug_assert_eq!(mu.size(), n);
        let mut j = monomial_sym(mu);
        for (_, prev, norm) in &done {
            let c = jack_inner(&j, prev);
            if c.is_zero() {
                continue;
            }
            let proj = c.try_div(norm).expect("Jack norms are nonzero in ℚ(θ)");
            j = &j - &prev.scale(&proj);
        }
        let norm = jack_inner(&j, &j);
        done.push((mu.clone(), j, norm));
    }
    done.into_iter()
        .map(|(mu, j, _)| {
            let ones = Partition::new(vec![1; n as usize]);
            let lead = j.coeff(&ones);
            assert!(!lead.is_zero(), "p_1^n coefficient of a Jack polynomial");
            let j = j.scale(&lead.inv().expect("nonzero"));
            (mu, j)
        })
        .collect()
}

/// Default Gram-Schmidt pivot order: reverse lexicographic read backwards,
/// i.e. (1,…,1) first and (n) last.
fn default_order(n: u32) -> Vec<Partition> {
    let mut order = Partition::enumerate(n);
    order.reverse();
    order
}

/// Memoizing Jack table. Concurrent reads are cheap; inserts are
/// idempotent so recomputation races are benign.
pub struct JackTable {
    cache_dir: Option<PathBuf>,
    memo: RwLock<HashMap<Partition, Arc<JackPoly>>>,
}

impl Default for JackTable {
    fn default() -> Self {
        JackTable::new()
    }
}

impl JackTable {
    pub fn new() -> JackTable {
        JackTable {
            cache_dir: None,
            memo: RwLock::new(HashMap::new()),
        }
    }

    /// Attaches a cache directory and loads any existing cache file.
    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Result<JackTable, JackCacheError> {
        let dir = dir.into();
        let mut table = JackTable::new();
        table.cache_dir = Some(dir);
        let path = table.cache_file().unwrap();
        if path.exists() {
            table.load(&path)?;
        }
        Ok(table)
    }

    pub fn cache_file(&self) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join("jack_cache.json"))
    }

    /// The Jack polynomial J_μ, computed (with the whole degree batch)
    /// on first use.
    pub fn jack(&self, mu: &Partition) -> Arc<JackPoly> {
        if let Some(j) = self.memo.read().unwrap().get(mu) {
            return Arc::clone(j);
        }
        let n = mu.size();
        let batch = gram_schmidt_with_order(n, &default_order(n));
        let mut w = self.memo.write().unwrap();
        for (index, expansion) in batch {
            w.entry(index.clone())
                .or_insert_with(|| Arc::new(JackPoly { index, expansion }));
        }
        Arc::clone(w.get(mu).expect("batch contains every partition of n"))
    }

    /// (entry count, maximum cached degree).
    pub fn stats(&self) -> (usize, u32) {
        let r = self.memo.read().unwrap();
        let max = r.keys().map(|p| p.size()).max().unwrap_or(0);
        (r.len(), max)
    }

    /// Writes the cache file atomically (temp file + rename).
    pub fn persist(&self) -> Result<(), JackCacheError> {
        let path = match self.cache_file() {
            Some(p) => p,
            None => return Ok(()),
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let r = self.memo.read().unwrap();
        let mut entries: Vec<&Arc<JackPoly>> = r.values().collect();
        entries.sort_by_key(|j| (j.index.size(), j.index.clone()));
        let array: Vec<serde_json::Value> = entries
            .iter()
            .map(|j| {
                let coeffs: Vec<serde_json::Value> = j
                    .expansion
                    .terms()
                    .map(|(l, c)| {
                        serde_json::json!({
                            "partition": l.serialize(),
                            "coeff": ratfun_to_json(c),
                        })
                    })
                    .collect();
                serde_json::json!({
                    "partition": j.index.serialize(),
                    "coeffs": coeffs,
                })
            })
            .collect();
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&array).unwrap())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    fn load(&mut self, path: &Path) -> Result<(), JackCacheError> {
        let text = fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| JackCacheError::Parse(format!("{}: {e}", path.display())))?;
        let array = value
            .as_array()
            .ok_or_else(|| JackCacheError::Parse("expected a JSON array".into()))?;
        let mut memo = HashMap::new();
        for entry in array {
            let bad = || JackCacheError::Parse("malformed cache entry".into());
            let index = entry
                .get("partition")
                .and_then(|p| p.as_str())
                .ok_or_else(bad)?;
            let index = Partition::parse(index).map_err(JackCacheError::Parse)?;
            let coeffs = entry
                .get("coeffs")
                .and_then(|c| c.as_array())
                .ok_or_else(bad)?;
            let mut expansion = SymFunc::zero();
            for c in coeffs {
                let l = c
                    .get("partition")
                    .and_then(|p| p.as_str())
                    .ok_or_else(bad)?;
                let l = Partition::parse(l).map_err(JackCacheError::Parse)?;
                let coeff = ratfun_from_json(c.get("coeff").ok_or_else(bad)?)?;
                expansion.add_term(l, coeff);
            }
            memo.insert(
                index.clone(),
                Arc::new(JackPoly { index, expansion }),
            );
        }
        self.memo = RwLock::new(memo);
        Ok(())
    }

    /// Removes the cache file (in-memory entries survive).
    pub fn clear_cache_file(&self) -> Result<(), JackCacheError> {
        if let Some(path) = self.cache_file() {
            if path.exists() {
                fs::remove_file(path)?;
            }
        }
        Ok(())
    }
}
