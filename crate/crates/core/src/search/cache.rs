//! Append-only JSONL cache of search reports.
//!
//! Each line is a [`CacheRecord`]. Records are keyed by `n`, a SHA-256 of the
//! forbidden family's canonical key, and a SHA-256 of `Q`'s canonical key.
//! Complete records are always reused; an incomplete record is reused only
//! when the new request does not offer a larger budget.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{la_exact, SearchOptions, SearchReport};
use crate::error::{Error, Result};
use crate::lattice::Mask;
use crate::poset::{Poset, PosetFamily};

/// Environment variable overriding the cache location.
pub const CACHE_ENV_VAR: &str = "TURAN_CACHE";
pub const DEFAULT_CACHE_FILE: &str = "turan-cache.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: usize,
    pub forbidden_key: String,
    pub q_key: String,
    #[serde(with = "crate::bignum")]
    pub optimum: BigUint,
    pub complete: bool,
    pub witnesses: Vec<Vec<Mask>>,
    pub timestamp: u64,
    pub report: SearchReport,
}

fn sha_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn forbidden_key(forbidden: &PosetFamily) -> String {
    sha_hex(&forbidden.canonical_key())
}

pub fn q_key(q: &Poset) -> String {
    sha_hex(&q.canonical_key())
}

#[derive(Clone, Debug)]
pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultCache { path: path.into() }
    }

    /// `$TURAN_CACHE` if set, else `./turan-cache.jsonl`.
    pub fn from_env() -> Self {
        let path = std::env::var_os(CACHE_ENV_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE));
        Self::new(path)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> Result<Vec<CacheRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: CacheRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                column: e.column(),
                message: format!("{}: {e}", self.path.display()),
            })?;
            out.push(rec);
        }
        Ok(out)
    }

    /// Most recent usable record for this problem.
    pub fn lookup(
        &self,
        n: usize,
        forbidden: &PosetFamily,
        q: &Poset,
        budget: Option<u64>,
    ) -> Result<Option<SearchReport>> {
        let fk = forbidden_key(forbidden);
        let qk = q_key(q);
        let hit = self
            .records()?
            .into_iter()
            .rev()
            .find(|r| r.n == n && r.forbidden_key == fk && r.q_key == qk && usable(r, budget));
        Ok(hit.map(|r| r.report))
    }

    pub fn append(&self, forbidden: &PosetFamily, q: &Poset, report: &SearchReport) -> Result<()> {
        let rec = CacheRecord {
            n: report.n,
            forbidden_key: forbidden_key(forbidden),
            q_key: q_key(q),
            optimum: report.optimum.clone(),
            complete: report.complete,
            witnesses: report.witnesses.clone(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            report: report.clone(),
        };
        let mut line = serde_json::to_string(&rec).expect("record serializes");
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        f.write_all(line.as_bytes())?;
        Ok(())
    }
}

fn usable(rec: &CacheRecord, budget: Option<u64>) -> bool {
    if rec.complete {
        return true;
    }
    match (rec.report.budget, budget) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(old), Some(new)) => new <= old,
    }
}

/// [`la_exact`] behind the cache. Returns the report and whether it was a hit.
pub fn la_exact_cached(
    cache: &ResultCache,
    n: usize,
    forbidden: &PosetFamily,
    q: &Poset,
    options: &SearchOptions,
) -> Result<(SearchReport, bool)> {
    if let Some(r) = cache.lookup(n, forbidden, q, options.budget)? {
        return Ok((r, true));
    }
    let report = la_exact(n, forbidden, q, options)?;
    cache.append(forbidden, q, &report)?;
    Ok((report, false))
}
