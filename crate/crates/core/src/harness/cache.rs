//! JSON file memoizing `C(r, eps, d)` across runs.

use std::fs;
use std::io::Write;
use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::cyclokit::CycRepr;
use crate::thetacore::ThetaCtx;

use super::{HarnessError, Result};

pub const CACHE_ENV: &str = "THETA_CACHE";
pub const CACHE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub r: String,
    /// `deg c` of the summed moduli.
    pub d: u32,
    pub value: CycRepr,
}

/// The file: a header identifying `(F_q, n, eps)` and the memo entries in key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema: u32,
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub eps_exp: u32,
    pub modulus: Vec<u32>,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    fn header_matches(&self, t: &ThetaCtx) -> bool {
        let k = t.field();
        self.schema == CACHE_SCHEMA
            && self.p == k.p()
            && self.m == k.m()
            && self.n == k.n()
            && self.eps_exp == k.eps_exp()
            && self.modulus == k.modulus()
    }
}

/// Seeds the memo of `t` from `path`. A missing file loads nothing; a
/// corrupt or foreign file is ignored with a warning. Returns the number of
/// entries loaded.
pub fn load_cache(path: &Path, t: &ThetaCtx) -> usize {
    let text = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return 0,
        Err(e) => {
            warn!("cache {}: unreadable ({e}); ignoring", path.display());
            return 0;
        }
    };
    let file: CacheFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => {
            warn!("cache {}: corrupt ({e}); ignoring", path.display());
            return 0;
        }
    };
    if !file.header_matches(t) {
        warn!("cache {}: schema or field mismatch; ignoring", path.display());
        return 0;
    }
    let mut parsed = Vec::with_capacity(file.entries.len());
    for e in &file.entries {
        match t.cyc().parse_repr(&e.value) {
            Ok(v) => parsed.push(((e.r.clone(), e.d), v)),
            Err(err) => {
                warn!(
                    "cache {}: bad entry for r = {} ({err}); ignoring file",
                    path.display(),
                    e.r
                );
                return 0;
            }
        }
    }
    let count = parsed.len();
    for (key, v) in parsed {
        t.memo_insert(key, v);
    }
    count
}

/// Writes the memo of `t` to `path` through a temporary file and a rename.
pub fn save_cache(path: &Path, t: &ThetaCtx) -> Result<()> {
    let k = t.field();
    let file = CacheFile {
        schema: CACHE_SCHEMA,
        p: k.p(),
        m: k.m(),
        n: k.n(),
        eps_exp: k.eps_exp(),
        modulus: k.modulus().to_vec(),
        entries: t
            .memo_entries()
            .into_iter()
            .map(|((r, d), v)| CacheEntry {
                r,
                d,
                value: v.to_repr(),
            })
            .collect(),
    };
    let io = |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    };
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(serde_json::to_string(&file)?.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldkit::FieldCtx;
    use crate::polyring::Poly;

    fn ctx() -> ThetaCtx {
        ThetaCtx::new(FieldCtx::new(7, 1, 3, 1).unwrap())
    }

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let t = ctx();
        assert_eq!(load_cache(&path, &t), 0);
        let v = t.c_full(&Poly::x(), 2).unwrap();
        save_cache(&path, &t).unwrap();
        let fresh = ctx();
        assert_eq!(load_cache(&path, &fresh), 1);
        assert_eq!(fresh.memo_entries()[0].1, v);
        assert_eq!(fresh.c_full(&Poly::x(), 2).unwrap(), v);
    }

    #[test]
    fn corrupt_and_foreign_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, "{ not json").unwrap();
        assert_eq!(load_cache(&path, &ctx()), 0);
        let other = ThetaCtx::new(FieldCtx::new(5, 1, 4, 1).unwrap());
        other.c_full(&Poly::x(), 1).unwrap();
        save_cache(&path, &other).unwrap();
        let t = ctx();
        assert_eq!(load_cache(&path, &t), 0);
        assert!(t.memo_entries().is_empty());
    }
}
