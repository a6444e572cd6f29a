//! A single Gauss sum `g(r, eps, c)`.

use std::fmt::Write;

use serde::Serialize;

use crate::cyclokit::CycRepr;
use crate::polyring::Poly;
use crate::thetacore::ThetaCtx;

use super::{HarnessError, Result, RunConfig};

#[derive(Clone, Debug, Serialize)]
pub struct GaussReport {
    pub r: String,
    pub c: String,
    /// Order `N` of the root of unity `z` the value is written in.
    pub order: u32,
    pub value: CycRepr,
    pub value_float: (f64, f64),
    /// Text form of the exact value.
    pub exact: String,
}

impl GaussReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "g(r = {}, c = {}) = {}", self.r, self.c, self.exact);
        let _ = writeln!(s, "  z = exp(2 pi i / {})", self.order);
        let _ = writeln!(s, "  ~ {:.12} + {:.12} i", self.value_float.0, self.value_float.1);
        s
    }
}

/// `g(r, eps, c)` for canonical strings `r` and `c`; `c` must be monic.
pub fn cmd_gauss(cfg: &RunConfig, r: &str, c: &str) -> Result<GaussReport> {
    let k = cfg.field()?;
    let rp = Poly::parse(&k, r)?;
    let cp = Poly::parse(&k, c)?;
    if cp.is_zero() || !cp.is_monic() {
        return Err(HarnessError::Config(format!("c = {c:?} must be monic")));
    }
    let t = ThetaCtx::new(k);
    let value = cfg.install(|| t.gauss_sum(&rp, &cp))??;
    Ok(GaussReport {
        r: rp.canonical_string(),
        c: cp.canonical_string(),
        order: t.cyc().order(),
        value: value.to_repr(),
        value_float: value.complex_eval(),
        exact: value.to_string(),
    })
}
