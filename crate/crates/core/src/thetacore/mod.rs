//! Gauss sums over `F_q[x]`, the coefficient sums `C` and `C*`, the
//! polynomials `Psi(r, eps, i, T)`, the theta coefficients `rho_0`, and the
//! relations they satisfy.
//!
//! Everything hangs off a [`ThetaCtx`], which bundles the finite field, the
//! cyclotomic field holding all character values, the table of `tau`
//! values, and a memo of the expensive coefficient sums.

mod gauss;
mod psi;
mod relations;
mod sums;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::charkit::tau_table;
use crate::cyclokit::{CycError, CycField, CycNum};
use crate::fieldkit::{FieldCtx, FieldError, FqElem};
use crate::polyring::{Poly, PolyError};

pub use psi::{
    determine_tau_normalization, index_geometry, IndexGeometry, NormalizationCase, PsiPoly, Rho0, SignRule, Strategy,
    TauNormalization, Vanishing,
};
pub use relations::{pgl2_transform, Mobius2x2};
pub use sums::CStrategy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("gcd(r, c) != 1; use the brute-force Gauss sum")]
    NotCoprime,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i = i' = {0}: the relation degenerates to rho_0 = 0")]
    IEqualsIPrime(u32),
    #[error("singular matrix")]
    Singular,
    #[error("inconsistent input lengths: {0}")]
    BadLengths(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

pub type Result<T> = std::result::Result<T, ThetaError>;

/// Key of a memoized coefficient sum: canonical string of `r` and `deg c`.
pub type CKey = (String, u32);

/// Shared, read-mostly context for all theta computations over one `(q, n, eps)`.
pub struct ThetaCtx {
    k: FieldCtx,
    cyc: Arc<CycField>,
    taus: Vec<CycNum>,
    norm: TauNormalization,
    memo: Mutex<BTreeMap<CKey, CycNum>>,
}

impl ThetaCtx {
    pub fn new(k: FieldCtx) -> ThetaCtx {
        let cyc = CycField::for_field(&k);
        let taus = tau_table(&k, &cyc);
        ThetaCtx {
            k,
            cyc,
            taus,
            norm: TauNormalization::DETERMINED,
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    /// Same context with a different `tau` normalization in `eta`.
    pub fn with_normalization(mut self, norm: TauNormalization) -> ThetaCtx {
        self.norm = norm;
        self
    }

    pub fn field(&self) -> &FieldCtx {
        &self.k
    }

    pub fn cyc(&self) -> &Arc<CycField> {
        &self.cyc
    }

    pub fn normalization(&self) -> TauNormalization {
        self.norm
    }

    pub fn q(&self) -> u64 {
        self.k.q() as u64
    }

    pub fn n(&self) -> u32 {
        self.k.n()
    }

    /// `tau((eps o chi)^j)`, `j` taken mod `n`.
    pub fn tau(&self, j: i64) -> &CycNum {
        &self.taus[j.rem_euclid(self.n() as i64) as usize]
    }

    /// `zeta_n^(eps_exp * e)`: the value of `eps` at `zeta_n^e`.
    pub fn eps_of_log(&self, e: i64) -> CycNum {
        let n = self.n() as i64;
        let step = (self.k.eps_exp() as i64 * e).rem_euclid(n);
        self.cyc.zeta(self.cyc.exp_zeta_n(step) as i64)
    }

    /// `(eps chi)(-1)^e`.
    pub fn eps_chi_minus_one_pow(&self, e: i64) -> CycNum {
        self.eps_of_log(self.k.chi_minus_one_log() as i64 * e)
    }

    /// `(eps chi)(a)^j` for `a != 0`.
    pub fn eps_chi(&self, a: FqElem, j: i64) -> Result<CycNum> {
        Ok(self.eps_of_log(self.k.chi_log(a)? as i64 * j))
    }

    /// `q^e` in the cyclotomic field.
    pub fn q_pow(&self, e: i64) -> CycNum {
        self.cyc.int_pow(self.q(), e)
    }

    /// `sum_e counts[e] * zeta_n^(eps_exp * e)` for a vector indexed by `Z/n`.
    pub(crate) fn cyc_from_n_counts(&self, counts: &[i64]) -> CycNum {
        let mut big = vec![0i64; self.cyc.order() as usize];
        let n = self.n() as i64;
        for (e, &c) in counts.iter().enumerate() {
            let step = (self.k.eps_exp() as i64 * e as i64).rem_euclid(n);
            big[self.cyc.exp_zeta_n(step) as usize] += c;
        }
        self.cyc.from_counts(&big)
    }

    /// Snapshot of the coefficient-sum memo, in key order.
    pub fn memo_entries(&self) -> Vec<(CKey, CycNum)> {
        self.memo
            .lock()
            .expect("memo lock")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Seeds the memo, e.g. from a cache file.
    pub fn memo_insert(&self, key: CKey, value: CycNum) {
        self.memo.lock().expect("memo lock").insert(key, value);
    }

    fn memo_get(&self, key: &CKey) -> Option<CycNum> {
        self.memo.lock().expect("memo lock").get(key).cloned()
    }

    pub(crate) fn poly_key(r: &Poly, d: usize) -> CKey {
        (r.canonical_string(), d as u32)
    }
}

const CHUNK: u64 = 2048;

/// Splits `0..total` into fixed chunks, runs `body` on each with its own
/// bin vector, and adds the vectors. Integer sums make the result
/// independent of scheduling.
pub(crate) fn par_counts<S, I, F>(total: u64, bins: usize, init: I, body: F) -> Vec<i64>
where
    I: Fn() -> S + Sync,
    F: Fn(u64, &mut S, &mut [i64]) + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let mut local = vec![0i64; bins];
            let mut scratch = init();
            let end = ((ch + 1) * CHUNK).min(total);
            for idx in ch * CHUNK..end {
                body(idx, &mut scratch, &mut local);
            }
            local
        })
        .reduce(
            || vec![0i64; bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Residue `xi mod c` with enumeration index `idx`: base-`q` digits of
/// `idx` are the coefficient codes of `xi`, lowest degree first.
pub(crate) fn residue_from_index(k: &FieldCtx, d: usize, mut idx: u64, out: &mut Poly) {
    let q = k.q() as u64;
    let mut coeffs = Vec::with_capacity(d);
    for _ in 0..d {
        coeffs.push(FqElem::from_code_unchecked((idx % q) as u32));
        idx /= q;
    }
    *out = Poly::new(coeffs);
}
