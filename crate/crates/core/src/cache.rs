//! On-disk cache of full-sector eigenvalues keyed by a hash of the parameters
//! that determine the Hamiltonian.
//!
//! File layout (all integers little-endian):
//!
//! ```text
//! magic    8 bytes   "DICKEEV\0"
//! version  u32       1
//! key_len  u32       length of the key document
//! key      key_len   JSON of the spectrum-determining parameters
//! count    u64       number of eigenvalues
//! values   count × f64
//! ```
//!
//! Entries are written to a temporary file and renamed into place, so
//! concurrent writers of the same key never expose a partial file.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{ModelParams, Parity, Spin};

pub const MAGIC: &[u8; 8] = b"DICKEEV\0";
pub const VERSION: u32 = 1;

/// Environment variable naming the cache directory used by the CLI.
pub const CACHE_DIR_ENV: &str = "DICKE_CHAOS_CACHE_DIR";

#[derive(Serialize)]
struct CacheKey {
    omega: f64,
    omega0: f64,
    lambda: f64,
    kappa: f64,
    j: Spin,
    n_cutoff: u32,
    sector: Parity,
}

/// Canonical serialization of everything that determines the spectrum
/// (energy windows are excluded).
pub fn key_document(params: &ModelParams, sector: Parity) -> String {
    let key = CacheKey {
        omega: params.omega,
        omega0: params.omega0,
        lambda: params.lambda,
        kappa: params.kappa,
        j: params.j,
        n_cutoff: params.n_cutoff,
        sector,
    };
    serde_json::to_string(&key).expect("cache key serializes")
}

pub fn params_hash(params: &ModelParams, sector: Parity) -> String {
    let digest = Sha256::digest(key_document(params, sector).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn encode(key: &str, energies: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + key.len() + 8 * energies.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(key.len() as u32).to_le_bytes());
    out.extend_from_slice(key.as_bytes());
    out.extend_from_slice(&(energies.len() as u64).to_le_bytes());
    for e in energies {
        out.extend_from_slice(&e.to_le_bytes());
    }
    out
}

/// Parse a cache file, returning `(key, energies)`; `None` on any malformation.
pub fn decode(bytes: &[u8]) -> Option<(String, Vec<f64>)> {
    let mut rest = bytes;
    let mut take = |n: usize| -> Option<&[u8]> {
        if rest.len() < n {
            return None;
        }
        let (head, tail) = rest.split_at(n);
        rest = tail;
        Some(head)
    };
    if take(8)? != MAGIC {
        return None;
    }
    if u32::from_le_bytes(take(4)?.try_into().ok()?) != VERSION {
        return None;
    }
    let key_len = u32::from_le_bytes(take(4)?.try_into().ok()?) as usize;
    let key = String::from_utf8(take(key_len)?.to_vec()).ok()?;
    let count = u64::from_le_bytes(take(8)?.try_into().ok()?) as usize;
    let body = take(count.checked_mul(8)?)?;
    if !rest.is_empty() {
        return None;
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Some((key, values))
}

#[derive(Debug, Clone)]
pub struct SpectrumCache {
    dir: PathBuf,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| Error::OutputUnwritable {
            path: dir.clone(),
            source,
        })?;
        Ok(SpectrumCache { dir })
    }

    /// Cache rooted at `$DICKE_CHAOS_CACHE_DIR`, if that is set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => SpectrumCache::new(PathBuf::from(dir)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, params: &ModelParams, sector: Parity) -> PathBuf {
        self.dir.join(format!("{}.dkev", params_hash(params, sector)))
    }

    /// Cached eigenvalues, if present and written for exactly these parameters.
    pub fn load(&self, params: &ModelParams, sector: Parity) -> Option<Vec<f64>> {
        let mut bytes = Vec::new();
        fs::File::open(self.path_for(params, sector))
            .ok()?
            .read_to_end(&mut bytes)
            .ok()?;
        let (key, values) = decode(&bytes)?;
        (key == key_document(params, sector)).then_some(values)
    }

    pub fn store(&self, params: &ModelParams, sector: Parity, energies: &[f64]) -> Result<()> {
        let path = self.path_for(params, sector);
        let unwritable = |source| Error::OutputUnwritable {
            path: path.clone(),
            source,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(unwritable)?;
        tmp.write_all(&encode(&key_document(params, sector), energies))
            .map_err(unwritable)?;
        tmp.persist(&path).map_err(|e| unwritable(e.error))?;
        Ok(())
    }
}
