//! `rho_0` tables in JSON or CSV.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclokit::CycRepr;
use crate::polyring::{enumerate_monic, reduce_mod_nth_powers, Poly, RatFunc};
use crate::thetacore::ThetaCtx;

use super::{load_cache, save_cache, HarnessError, Result, RunConfig};

pub const TABLE_SCHEMA: u32 = 1;

/// Largest `deg r` tabulated when neither `max_deg` nor an explicit list is given.
const DEFAULT_MAX_DEG: usize = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: String,
    pub i: u32,
    pub i_prime: u32,
    #[serde(rename = "R")]
    pub big_r: i64,
    pub rho0: CycRepr,
    /// `(re, im)` of `rho0` under the embedding `zeta_N -> exp(2 pi i / N)`.
    pub rho0_float: [f64; 2],
    /// Why `rho0` vanishes without computation, if it does.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema: u32,
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub eps_exp: u32,
    pub modulus: Vec<u32>,
    pub rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    r: &'a str,
    i: u32,
    i_prime: u32,
    #[serde(rename = "R")]
    big_r: i64,
    rho0: String,
    rho0_re: f64,
    rho0_im: f64,
    flags: String,
}

/// `"n_0 n_1 ... n_(phi-1) / den"`.
fn compact_repr(v: &CycRepr) -> String {
    format!("{} / {}", v.num.join(" "), v.den)
}

impl Table {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Table> {
        let t: Table = serde_json::from_str(s)?;
        if t.schema != TABLE_SCHEMA {
            return Err(HarnessError::Config(format!(
                "table schema {} is not {TABLE_SCHEMA}",
                t.schema
            )));
        }
        Ok(t)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(CsvRow {
                r: &row.r,
                i: row.i,
                i_prime: row.i_prime,
                big_r: row.big_r,
                rho0: compact_repr(&row.rho0),
                rho0_re: row.rho0_float[0],
                rho0_im: row.rho0_float[1],
                flags: row.flags.join(";"),
            })?;
        }
        if self.rows.is_empty() {
            w.write_record(["r", "i", "i_prime", "R", "rho0", "rho0_re", "rho0_im", "flags"])?;
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: TableFormat) -> Result<String> {
        match format {
            TableFormat::Json => self.to_json(),
            TableFormat::Csv => self.to_csv(),
        }
    }
}

/// Writes `table` to `path` in `format`.
pub fn write_table(table: &Table, format: TableFormat, path: &Path) -> Result<()> {
    fs::write(path, table.render(format)?).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn row(t: &ThetaCtx, r: &Poly, i: i64) -> Result<TableRow> {
    let rho = t.rho0(&RatFunc::from_poly(r.clone()), i)?;
    let (re, im) = rho.value.complex_eval();
    Ok(TableRow {
        r: r.canonical_string(),
        i: rho.geometry.i,
        i_prime: rho.geometry.i_prime,
        big_r: rho.geometry.big_r,
        rho0: rho.value.to_repr(),
        rho0_float: [re, im],
        flags: rho.vanishing.map(|v| vec![v.label().to_string()]).unwrap_or_default(),
    })
}

/// One row per `(r, i)`, `r` running over the explicit list or over all monic
/// polynomials of degree at most `max_deg`, keeping the first `r` of each
/// class modulo `n`-th powers. Rows are ordered by `r` string, then `i`.
pub fn cmd_table(cfg: &RunConfig) -> Result<Table> {
    let k = cfg.field()?;
    let t = ThetaCtx::new(k.clone());
    let cache = cfg.cache_path();
    if let Some(path) = &cache {
        load_cache(path, &t);
    }
    let candidates = match cfg.parsed_r_list(&k)? {
        Some(list) => list,
        None => (0..=cfg.max_deg.unwrap_or(DEFAULT_MAX_DEG))
            .flat_map(|d| enumerate_monic(&k, d).collect::<Vec<_>>())
            .collect(),
    };
    let mut seen = BTreeSet::new();
    let mut rs = Vec::new();
    for r in candidates {
        let (reduced, _) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(r.clone()))?;
        if seen.insert(reduced.canonical_string()) {
            rs.push(r);
        }
    }
    let is = cfg.i_values();
    let jobs: Vec<(Poly, i64)> = rs
        .iter()
        .flat_map(|r| is.iter().map(move |&i| (r.clone(), i)))
        .collect();
    let mut rows = cfg.install(|| jobs.par_iter().map(|(r, i)| row(&t, r, *i)).collect::<Result<Vec<_>>>())??;
    rows.sort_by(|a, b| a.r.cmp(&b.r).then(a.i.cmp(&b.i)));
    if let Some(path) = &cache {
        save_cache(path, &t)?;
    }
    Ok(Table {
        schema: TABLE_SCHEMA,
        p: k.p(),
        m: k.m(),
        n: k.n(),
        eps_exp: k.eps_exp(),
        modulus: k.modulus().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let mut cfg = RunConfig::new(7, 1, 3);
        cfg.max_deg = Some(1);
        let table = cmd_table(&cfg).unwrap();
        assert_eq!(table.rows.len(), 3 * 8);
        let x_1 = table.rows.iter().find(|r| r.r == "0,1" && r.i == 1).unwrap();
        assert_eq!(x_1.flags, vec!["i=i'".to_string()]);
        assert_eq!(x_1.rho0.num.iter().filter(|v| *v != "0").count(), 0);
        let json = table.to_json().unwrap();
        assert_eq!(Table::from_json(&json).unwrap().to_json().unwrap(), json);
        let csv = table.to_csv().unwrap();
        assert!(csv.starts_with("\"r\",\"i\""));
        assert!(csv.lines().nth(1).unwrap().starts_with("\"0,1\",0,"));
    }

    #[test]
    fn empty_and_deduplicated() {
        let mut cfg = RunConfig::new(7, 1, 3);
        cfg.r_list = Some(vec![]);
        assert!(cmd_table(&cfg).unwrap().rows.is_empty());
        // 1 and x^3 share a class; only the first is kept
        cfg.r_list = Some(vec!["1".into(), "0,0,0,1".into()]);
        cfg.i_list = Some(vec![0]);
        let table = cmd_table(&cfg).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].r, "1");
    }
}
