//! Persistent JSON cache for convolution results, keyed by
//! `(p, mu, nu)`. Counts are stored as decimal strings so entries never
//! depend on 64-bit limits; each entry carries a format-version field.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coweight::DominantCoweight;
use crate::error::LatticeError;
use crate::hecke::HeckeElement;
use crate::scalar::Scalar;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GSP4_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    format_version: u32,
    p: u64,
    mu: [i64; 4],
    nu: [i64; 4],
    /// Coefficients keyed by the printed coweight, values as decimal
    /// strings.
    coefficients: BTreeMap<String, String>,
}

/// File-backed cache for convolution results.
#[derive(Debug, Clone)]
pub struct ConvolutionCache {
    dir: PathBuf,
}

fn key_string(e: &[i64; 4]) -> String {
    format!("{}.{}.{}.{}", e[0], e[1], e[2], e[3])
}

fn parse_key(s: &str) -> Option<DominantCoweight> {
    let body = s.strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<i64> = body.split(',').filter_map(|t| t.trim().parse().ok()).collect();
    if parts.len() != 4 {
        return None;
    }
    DominantCoweight::new([parts[0], parts[1], parts[2], parts[3]]).ok()
}

impl ConvolutionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ConvolutionCache { dir: dir.into() }
    }

    /// Directory from the environment override, or the given default.
    pub fn from_env_or(default: impl Into<PathBuf>) -> Self {
        match std::env::var(CACHE_DIR_ENV) {
            Ok(dir) if !dir.is_empty() => ConvolutionCache::new(dir),
            _ => ConvolutionCache::new(default),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, p: u64, mu: &DominantCoweight, nu: &DominantCoweight) -> PathBuf {
        self.dir.join(format!(
            "convolve-p{}-mu{}-nu{}.json",
            p,
            key_string(&mu.entries()),
            key_string(&nu.entries())
        ))
    }

    /// Cached result, if present and well formed. A stale format version
    /// is treated as a miss.
    pub fn get(
        &self,
        p: u64,
        mu: &DominantCoweight,
        nu: &DominantCoweight,
    ) -> Result<Option<HeckeElement>, LatticeError> {
        let path = self.path_for(p, mu, nu);
        if !path.exists() {
            return Ok(None);
        }
        let raw = fs::read_to_string(&path).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        let entry: CacheEntry =
            serde_json::from_str(&raw).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        if entry.format_version != CACHE_FORMAT_VERSION
            || entry.p != p
            || entry.mu != mu.entries()
            || entry.nu != nu.entries()
        {
            return Ok(None);
        }
        let mut out = HeckeElement::zero();
        for (k, v) in entry.coefficients {
            let lambda = parse_key(&k)
                .ok_or_else(|| LatticeError::CacheIo(format!("bad coweight key '{}'", k)))?;
            let n = BigInt::from_str(&v)
                .map_err(|e| LatticeError::CacheIo(format!("bad count '{}': {}", v, e)))?;
            out.add_term(lambda, Scalar::from_bigint(n));
        }
        Ok(Some(out))
    }

    /// Store a convolution result. The write goes through a temporary
    /// file and an atomic rename so concurrent readers never see a
    /// partial entry.
    pub fn put(
        &self,
        p: u64,
        mu: &DominantCoweight,
        nu: &DominantCoweight,
        value: &HeckeElement,
    ) -> Result<(), LatticeError> {
        fs::create_dir_all(&self.dir).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        let mut coefficients = BTreeMap::new();
        for (lambda, c) in value.iter() {
            coefficients.insert(lambda.to_string(), c.to_string());
        }
        let entry = CacheEntry {
            format_version: CACHE_FORMAT_VERSION,
            p,
            mu: mu.entries(),
            nu: nu.entries(),
            coefficients,
        };
        let path = self.path_for(p, mu, nu);
        let tmp = path.with_extension("json.tmp");
        let body =
            serde_json::to_string_pretty(&entry).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        fs::write(&tmp, body).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        fs::rename(&tmp, &path).map_err(|e| LatticeError::CacheIo(e.to_string()))?;
        Ok(())
    }

    /// Convolution through the cache: read on hit, compute and store on
    /// miss.
    pub fn convolve(
        &self,
        mu: &DominantCoweight,
        nu: &DominantCoweight,
        p: u64,
        window_bound: i64,
    ) -> Result<HeckeElement, LatticeError> {
        if let Some(hit) = self.get(p, mu, nu)? {
            return Ok(hit);
        }
        let computed = crate::enumerate::convolve_oracle(mu, nu, p, window_bound)?;
        self.put(p, mu, nu, &computed)?;
        Ok(computed)
    }
}
