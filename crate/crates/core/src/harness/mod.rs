//! Tabulation, verification suites and the on-disk cache of coefficient sums.
//!
//! Every entry point takes a [`RunConfig`]; work runs inside a rayon pool of
//! `jobs` threads, and all outputs are assembled in a fixed key order so the
//! worker count never changes a byte of output.

mod cache;
mod gauss;
mod table;
mod verify;

use std::path::PathBuf;

use thiserror::Error;

use crate::fieldkit::{FieldCtx, FieldError};
use crate::polyring::{Poly, PolyError};
use crate::thetacore::ThetaError;

pub use cache::{load_cache, save_cache, CacheEntry, CacheFile, CACHE_ENV, CACHE_SCHEMA};
pub use gauss::{cmd_gauss, GaussReport};
pub use table::{cmd_table, write_table, Table, TableFormat, TableRow, TABLE_SCHEMA};
pub use verify::{cmd_verify, generator_set, Failure, Report, SuiteReport, SUITES};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Everything a `table`, `verify` or `gauss` run needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub eps_exp: u32,
    /// Defining polynomial of `F_q` over `F_p`, lowest degree first.
    pub modulus: Option<Vec<u32>>,
    /// Suite names, or `["all"]`.
    pub suites: Vec<String>,
    /// Largest `deg r` enumerated when `r_list` is absent.
    pub max_deg: Option<usize>,
    /// Largest `deg c` for the Gauss-sum and discriminant suites.
    pub c_max_deg: Option<usize>,
    /// Explicit `r` values as canonical strings (element codes, lowest degree first).
    pub r_list: Option<Vec<String>>,
    pub i_list: Option<Vec<i64>>,
    /// Explicit matrices `(a, b, c, d)` as element codes, for `theorem1`.
    pub g_list: Option<Vec<[u32; 4]>>,
    pub jobs: usize,
    pub seed: u64,
    /// Random matrices drawn per `(r, i)` by `theorem1`.
    pub samples: usize,
    pub format: TableFormat,
    pub cache: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(p: u32, m: u32, n: u32) -> RunConfig {
        RunConfig {
            p,
            m,
            n,
            eps_exp: 1,
            modulus: None,
            suites: vec!["all".to_string()],
            max_deg: None,
            c_max_deg: None,
            r_list: None,
            i_list: None,
            g_list: None,
            jobs: 1,
            seed: 42,
            samples: 20,
            format: TableFormat::Json,
            cache: None,
        }
    }

    pub fn field(&self) -> Result<FieldCtx> {
        if self.jobs == 0 {
            return Err(HarnessError::Config("jobs must be at least 1".into()));
        }
        Ok(match &self.modulus {
            Some(f) => FieldCtx::with_modulus(self.p, self.m, self.n, self.eps_exp, f.clone())?,
            None => FieldCtx::new(self.p, self.m, self.n, self.eps_exp)?,
        })
    }

    /// The cache file: `THETA_CACHE` if set, else the configured path.
    pub fn cache_path(&self) -> Option<PathBuf> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
            _ => self.cache.clone(),
        }
    }

    /// Runs `f` on a dedicated pool of `jobs` threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(pool.install(f))
    }

    pub(crate) fn parsed_r_list(&self, k: &FieldCtx) -> Result<Option<Vec<Poly>>> {
        let Some(list) = &self.r_list else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(list.len());
        for s in list {
            let r = Poly::parse(k, s)?;
            if r.is_zero() {
                return Err(HarnessError::Config("r = 0 has no theta coefficient".into()));
            }
            out.push(r);
        }
        Ok(Some(out))
    }

    pub(crate) fn i_values(&self) -> Vec<i64> {
        let n = self.n as i64;
        match &self.i_list {
            Some(list) => {
                let mut v: Vec<i64> = list.iter().map(|i| i.rem_euclid(n)).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            None => (0..n).collect(),
        }
    }

    /// `--p .. --m .. --n .. --eps ..` plus the modulus override, for reproduction lines.
    pub(crate) fn field_args(&self) -> String {
        let mut s = format!("--p {} --m {} --n {} --eps {}", self.p, self.m, self.n, self.eps_exp);
        if let Some(f) = &self.modulus {
            let f: Vec<String> = f.iter().map(u32::to_string).collect();
            s.push_str(&format!(" --modulus \"{}\"", f.join(",")));
        }
        s
    }
}
