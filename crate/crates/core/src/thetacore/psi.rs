//! `Psi(r, eps, i, T)`, `rho_0(r, eps, i)`, and the functional equation
//! linking `Psi` at `i` and at the reflected index `i'`.
//!
//! With `X = q^n T` we write `F(X) = Psi(r, eps, i, q^-n X) = sum D_j X^j` and
//! `G(X)` for the same at `i'`. For `i < i'` the two are tied by
//!
//! ```text
//! G = eta^-1 (X^R F(1/X) + (1 - 1/q) (F - X^R F(1/X)) / (1 - X))
//! F = eta'^-1 (X^R G(1/X) + (1 - 1/q) (X G - X^R G(1/X)) / (1 - X))
//! ```
//!
//! with `eta eta' = 1/q`, and `rho_0 = F(1/q)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclokit::CycNum;
use crate::polyring::{reduce_mod_nth_powers, Poly, RatFunc};

use super::{Result, ThetaCtx, ThetaError};

/// `sigma`, the reflected index `i'`, and the truncation degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexGeometry {
    pub i: u32,
    pub sigma: i64,
    pub i_prime: u32,
    /// `R = floor((sigma - i) / n)`; negative means `Psi = 0`.
    pub big_r: i64,
    pub r1: i64,
    pub r2: i64,
}

/// Geometry of the pair `(i, i')` for `deg r = deg_r`; `i` is reduced mod `n` first.
pub fn index_geometry(deg_r: usize, i: i64, n: u32) -> IndexGeometry {
    let n = n as i64;
    let i = i.rem_euclid(n);
    let sigma = deg_r as i64 + 1;
    let i_prime = (sigma - i).rem_euclid(n);
    IndexGeometry {
        i: i as u32,
        sigma,
        i_prime: i_prime as u32,
        big_r: (sigma - i).div_euclid(n),
        r1: (sigma - 2 * i).div_euclid(n),
        r2: (sigma - 2 * i_prime).div_euclid(n),
    }
}

/// Which power of `(eps chi)(-1)` enters `eta` for the pair `i < i'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignRule {
    None,
    ISigma,
    IPrimeSigma,
}

/// `eta = (eps chi)(-1)^s tau(eps chi^(i - i')) q^(slope (i' - i) + offset)` for `i < i'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauNormalization {
    pub sign: SignRule,
    pub q_slope: i64,
    pub q_offset: i64,
}

impl TauNormalization {
    /// The literal reading, with a plain `q^-1`.
    pub const LITERAL: TauNormalization = TauNormalization {
        sign: SignRule::ISigma,
        q_slope: 0,
        q_offset: -1,
    };

    /// The convention singled out by [`determine_tau_normalization`].
    pub const DETERMINED: TauNormalization = TauNormalization {
        sign: SignRule::IPrimeSigma,
        q_slope: -1,
        q_offset: -1,
    };

    /// Every candidate searched by the determination.
    pub fn candidates() -> Vec<TauNormalization> {
        let mut out = Vec::new();
        for sign in [SignRule::None, SignRule::ISigma, SignRule::IPrimeSigma] {
            for q_slope in -1..=1 {
                for q_offset in -2..=1 {
                    out.push(TauNormalization {
                        sign,
                        q_slope,
                        q_offset,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for TauNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            SignRule::None => "1",
            SignRule::ISigma => "(eps chi)(-1)^(i sigma)",
            SignRule::IPrimeSigma => "(eps chi)(-1)^(i' sigma)",
        };
        write!(
            f,
            "eta = {sign} * tau(eps chi^(i-i')) * q^({}*(i'-i) + {})",
            self.q_slope, self.q_offset
        )
    }
}

/// `Psi(r, eps, i, T)` through the coefficients of `F(X)`, `X = q^n T`.
#[derive(Clone, Debug)]
pub struct PsiPoly {
    pub r: Poly,
    pub geometry: IndexGeometry,
    /// `D_0 .. D_R`; empty when `R < 0`.
    pub d: Vec<CycNum>,
    /// `eta` and `eta'` of the pair `{i, i'}`; absent when `i = i'`.
    pub eta: Option<CycNum>,
    pub eta_prime: Option<CycNum>,
}

impl PsiPoly {
    pub fn i(&self) -> u32 {
        self.geometry.i
    }

    pub fn i_prime(&self) -> u32 {
        self.geometry.i_prime
    }

    pub fn big_r(&self) -> i64 {
        self.geometry.big_r
    }

    /// Coefficients of `Psi` in `T`: `D_j q^(nj)`.
    pub fn t_coeffs(&self, t: &ThetaCtx) -> Vec<CycNum> {
        let n = t.n() as i64;
        self.d
            .iter()
            .enumerate()
            .map(|(j, dj)| dj * &t.q_pow(n * j as i64))
            .collect()
    }

    /// `F(1/q) = Psi(q^(-n-1))`.
    pub fn value_at_inverse_q(&self, t: &ThetaCtx) -> CycNum {
        eval_inverse_q(t, &self.d)
    }
}

fn eval_inverse_q(t: &ThetaCtx, d: &[CycNum]) -> CycNum {
    let mut acc = t.cyc().zero();
    for (j, dj) in d.iter().enumerate() {
        acc += &(dj * &t.q_pow(-(j as i64)));
    }
    acc
}

/// Why a `rho_0` value is zero without computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vanishing {
    IEqualsIPrime,
    NegativeR,
}

impl Vanishing {
    pub fn label(self) -> &'static str {
        match self {
            Vanishing::IEqualsIPrime => "i=i'",
            Vanishing::NegativeR => "R<0",
        }
    }
}

/// How `rho_0` gathers the coefficients of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every `C(r, eps, i + jn)`, `j <= R`.
    Full,
    /// Only the first half of `F` and `G`, the rest from the functional equation.
    Half,
    /// `Full` unless the largest enumeration exceeds a fixed budget.
    Auto,
}

const FULL_BUDGET: u64 = 400_000;

/// A theta coefficient with the data that produced it.
#[derive(Clone, Debug)]
pub struct Rho0 {
    pub value: CycNum,
    pub reduced: Poly,
    pub unit_class: u32,
    pub geometry: IndexGeometry,
    pub vanishing: Option<Vanishing>,
}

/// One `R = 0` case used to pin down `eta`: `C(r, i)` against `C(r, i')`, `i < i'`.
#[derive(Clone, Debug)]
pub struct NormalizationCase {
    pub q: u64,
    pub n: u32,
    pub r: String,
    pub i: u32,
    pub i_prime: u32,
}

impl ThetaCtx {
    /// `eta` for the pair `lo < hi` at `sigma`, under the context's normalization.
    pub fn eta_for(&self, sigma: i64, lo: u32, hi: u32) -> CycNum {
        eta_with(self, self.norm, sigma, lo, hi)
    }

    /// `eta' = 1 / (q eta)`.
    pub fn eta_prime_for(&self, sigma: i64, lo: u32, hi: u32) -> CycNum {
        let eta = self.eta_for(sigma, lo, hi);
        (&eta * &self.q_pow(1)).inv().expect("eta is nonzero")
    }

    /// `(eps chi)(lc r)^(to - from)`: scaling `r` by a constant `u` scales
    /// `rho_0(r, i)` by `(eps chi)(u)^(-i)`, so a multiplier taking index `to`
    /// to index `from` for monic `r` picks up this factor.
    pub fn unit_twist(&self, r: &Poly, from: u32, to: u32) -> CycNum {
        self.eps_chi(r.lc(), to as i64 - from as i64)
            .expect("leading coefficient is nonzero")
    }

    fn d_from_c(&self, cs: &[CycNum]) -> Vec<CycNum> {
        let n = self.n() as i64;
        let q_minus_one = self.cyc.from_int(self.q() as i64 - 1);
        let mut out = Vec::with_capacity(cs.len());
        let mut running = self.cyc.zero();
        for (j, cj) in cs.iter().enumerate() {
            let scaled = cj * &self.q_pow(-n * j as i64);
            out.push(&scaled - &(&q_minus_one * &running));
            running += &scaled;
        }
        out
    }

    /// `D_0 .. D_upto` of `F` for `(r, i)` straight from the coefficient sums.
    pub fn psi_d_coeffs(&self, r: &Poly, i: u32, upto: usize) -> Result<Vec<CycNum>> {
        let n = self.n() as usize;
        let cs = (0..=upto)
            .map(|j| self.c_full(r, i as usize + j * n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.d_from_c(&cs))
    }

    /// `Psi(r, eps, i, T)` with every coefficient computed from `C`.
    pub fn psi_polynomial(&self, r: &Poly, i: i64) -> Result<PsiPoly> {
        if r.is_zero() {
            return Err(ThetaError::Precondition("r must be nonzero".into()));
        }
        let g = index_geometry(r.deg(), i, self.n());
        let d = if g.big_r < 0 {
            Vec::new()
        } else {
            self.psi_d_coeffs(r, g.i, g.big_r as usize)?
        };
        Ok(self.psi_from_parts(r, g, d))
    }

    fn psi_from_parts(&self, r: &Poly, g: IndexGeometry, d: Vec<CycNum>) -> PsiPoly {
        let (eta, eta_prime) = if g.i == g.i_prime {
            (None, None)
        } else {
            let (lo, hi) = (g.i.min(g.i_prime), g.i.max(g.i_prime));
            let eta = &self.eta_for(g.sigma, lo, hi) * &self.unit_twist(r, lo, hi);
            let eta_prime = (&eta * &self.q_pow(1)).inv().expect("eta is nonzero");
            (Some(eta), Some(eta_prime))
        };
        PsiPoly {
            r: r.clone(),
            geometry: g,
            d,
            eta,
            eta_prime,
        }
    }

    /// Rebuilds `D_0..D_R` and `D'_0..D'_R` from `D_0..D_[R/2]` and
    /// `D'_0..D'_(ceil(R/2)-1)`. `psi` must be the member of the pair with `i < i'`.
    pub fn functional_equation_expand(
        &self,
        psi: &PsiPoly,
        half_f: &[CycNum],
        half_g: &[CycNum],
    ) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
        let g = psi.geometry;
        if g.i >= g.i_prime {
            return Err(ThetaError::Precondition(
                "expansion needs the lower index of the pair (i < i')".into(),
            ));
        }
        if g.big_r < 0 {
            return Err(ThetaError::Precondition("R < 0: Psi vanishes".into()));
        }
        let big_r = g.big_r as usize;
        let (nf, ng) = (big_r / 2 + 1, big_r.div_ceil(2));
        if half_f.len() != nf || half_g.len() != ng {
            return Err(ThetaError::BadLengths(format!(
                "R = {big_r} needs {nf} coefficients of F and {ng} of G, got {} and {}",
                half_f.len(),
                half_g.len()
            )));
        }
        let eta = psi.eta.as_ref().expect("i != i'");
        let q = self.q_pow(1);
        let c = self.one_minus_inv_q();
        let mut d: Vec<Option<CycNum>> = vec![None; big_r + 1];
        for (j, v) in half_f.iter().enumerate() {
            d[j] = Some(v.clone());
        }
        // D_(R-k) q^-1 = eta D'_k - c sum_(j<=k) D_j + c sum_(j<k) D_(R-j)
        for (k, gk) in half_g.iter().enumerate() {
            let mut acc = eta * gk;
            for dj in d.iter().take(k + 1) {
                acc = &acc - &(&c * dj.as_ref().expect("lower half known"));
            }
            for j in 0..k {
                acc += &(&c * d[big_r - j].as_ref().expect("filled earlier"));
            }
            d[big_r - k] = Some(&acc * &q);
        }
        let d: Vec<CycNum> = d.into_iter().map(|v| v.expect("all filled")).collect();
        let dp = self.g_from_f(&d, eta);
        Ok((d, dp))
    }

    fn one_minus_inv_q(&self) -> CycNum {
        &self.cyc.one() - &self.q_pow(-1)
    }

    /// `G` from `F` by the first form of the functional equation.
    pub fn g_from_f(&self, d: &[CycNum], eta: &CycNum) -> Vec<CycNum> {
        let big_r = d.len() - 1;
        let c = self.one_minus_inv_q();
        let eta_inv = eta.inv().expect("eta is nonzero");
        let mut running = self.cyc.zero();
        (0..=big_r)
            .map(|k| {
                running += &(&d[k] - &d[big_r - k]);
                &eta_inv * &(&d[big_r - k] + &(&c * &running))
            })
            .collect()
    }

    /// `F` from `G` by the second form of the functional equation.
    pub fn f_from_g(&self, dp: &[CycNum], eta_prime: &CycNum) -> Vec<CycNum> {
        let big_r = dp.len() - 1;
        let c = self.one_minus_inv_q();
        let inv = eta_prime.inv().expect("eta' is nonzero");
        let zero = self.cyc.zero();
        let mut running = self.cyc.zero();
        (0..=big_r)
            .map(|k| {
                let prev = if k == 0 { &zero } else { &dp[k - 1] };
                running += &(prev - &dp[big_r - k]);
                &inv * &(&dp[big_r - k] + &(&c * &running))
            })
            .collect()
    }

    /// `rho_0(r, eps, i)` for a rational function, reduced modulo `n`-th powers first.
    pub fn rho0(&self, r: &RatFunc, i: i64) -> Result<Rho0> {
        self.rho0_with(r, i, Strategy::Auto)
    }

    pub fn rho0_with(&self, r: &RatFunc, i: i64, strategy: Strategy) -> Result<Rho0> {
        let (reduced, unit_class) = reduce_mod_nth_powers(&self.k, r)?;
        let mut out = self.rho0_unreduced(&reduced, i, strategy)?;
        out.unit_class = unit_class;
        Ok(out)
    }

    /// `Psi(r, eps, i, q^(-n-1))` for the polynomial `r` as given, with the
    /// `i = i'` and `R < 0` vanishing applied.
    pub fn rho0_unreduced(&self, r: &Poly, i: i64, strategy: Strategy) -> Result<Rho0> {
        if r.is_zero() {
            return Err(ThetaError::Precondition("r must be nonzero".into()));
        }
        let g = index_geometry(r.deg(), i, self.n());
        let vanishing = if g.big_r < 0 {
            Some(Vanishing::NegativeR)
        } else if g.i == g.i_prime {
            Some(Vanishing::IEqualsIPrime)
        } else {
            None
        };
        let value = match vanishing {
            Some(_) => self.cyc.zero(),
            None => {
                let d = self.f_coeffs(r, g, strategy)?;
                eval_inverse_q(self, &d)
            }
        };
        Ok(Rho0 {
            value,
            reduced: r.clone(),
            unit_class: 0,
            geometry: g,
            vanishing,
        })
    }

    /// `Psi(r, eps, i, q^(-n-1))` evaluated from all coefficients, with no
    /// shortcut for `i = i'`.
    pub fn rho0_evaluated(&self, r: &Poly, i: i64) -> Result<CycNum> {
        Ok(self.psi_polynomial(r, i)?.value_at_inverse_q(self))
    }

    /// Largest `deg c` enumerated by [`ThetaCtx::rho0_with`] under `Auto` for
    /// a reduced `r` of degree `deg_r`; `None` when `rho_0` vanishes outright.
    pub fn rho0_enumeration_degree(&self, deg_r: usize, i: i64) -> Option<usize> {
        let g = index_geometry(deg_r, i, self.n());
        if g.big_r < 0 || g.i == g.i_prime {
            return None;
        }
        let (n, big_r) = (self.n() as usize, g.big_r as usize);
        let full = g.i as usize + big_r * n;
        if !self.use_half(g, Strategy::Auto) || big_r == 0 {
            return Some(full);
        }
        let (lo, hi) = (g.i.min(g.i_prime) as usize, g.i.max(g.i_prime) as usize);
        let f_top = lo + (big_r / 2) * n;
        let g_top = hi + (big_r.div_ceil(2) - 1) * n;
        Some(f_top.max(g_top))
    }

    fn use_half(&self, g: IndexGeometry, strategy: Strategy) -> bool {
        match strategy {
            Strategy::Full => false,
            Strategy::Half => true,
            Strategy::Auto => {
                let top = g.i as u64 + g.big_r.max(0) as u64 * self.n() as u64;
                g.big_r >= 1 && self.q().checked_pow(top as u32).is_none_or(|v| v > FULL_BUDGET)
            }
        }
    }

    fn f_coeffs(&self, r: &Poly, g: IndexGeometry, strategy: Strategy) -> Result<Vec<CycNum>> {
        let big_r = g.big_r as usize;
        let use_half = self.use_half(g, strategy);
        if !use_half || big_r == 0 {
            return self.psi_d_coeffs(r, g.i, big_r);
        }
        let (lo, hi) = (g.i.min(g.i_prime), g.i.max(g.i_prime));
        let half_f = self.psi_d_coeffs(r, lo, big_r / 2)?;
        let ng = big_r.div_ceil(2);
        let half_g = if ng == 0 {
            Vec::new()
        } else {
            self.psi_d_coeffs(r, hi, ng - 1)?
        };
        let lower = self.psi_from_parts(r, index_geometry(r.deg(), lo as i64, self.n()), half_f.clone());
        let (d, dp) = self.functional_equation_expand(&lower, &half_f, &half_g)?;
        Ok(if g.i == lo { d } else { dp })
    }
}

fn eta_with(t: &ThetaCtx, norm: TauNormalization, sigma: i64, lo: u32, hi: u32) -> CycNum {
    let (lo, hi) = (lo as i64, hi as i64);
    let sign_exp = match norm.sign {
        SignRule::None => 0,
        SignRule::ISigma => lo * sigma,
        SignRule::IPrimeSigma => hi * sigma,
    };
    let sign = t.eps_chi_minus_one_pow(sign_exp);
    let q = t.q_pow(norm.q_slope * (hi - lo) + norm.q_offset);
    &(&sign * t.tau(lo - hi)) * &q
}

/// Picks the `eta` normalization that makes `D_0 = eta D'_0` hold on every
/// `R = 0` pair `i < i'` for `r = x^a (x-1)^b`, `a + b <= max_deg`, across
/// the given contexts. Cases needing moduli with more than `FULL_BUDGET`
/// residues are skipped. Succeeds only if exactly one candidate survives.
pub fn determine_tau_normalization(
    ctxs: &[&ThetaCtx],
    max_deg: usize,
) -> std::result::Result<(TauNormalization, Vec<NormalizationCase>), String> {
    let mut survivors = TauNormalization::candidates();
    let mut cases = Vec::new();
    for t in ctxs {
        let k = t.field();
        let x = Poly::x();
        let x1 = Poly::linear(k, crate::fieldkit::FqElem::ONE);
        for a in 0..=max_deg {
            for b in 0..=max_deg - a {
                let r = x.pow(k, a as u32).mul(k, &x1.pow(k, b as u32));
                for i in 0..t.n() {
                    let g = index_geometry(r.deg(), i as i64, t.n());
                    if g.big_r != 0 || g.i >= g.i_prime {
                        continue;
                    }
                    if t.q().checked_pow(g.i_prime).is_none_or(|v| v > FULL_BUDGET) {
                        continue;
                    }
                    let lhs = t.c_full(&r, g.i as usize).map_err(|e| e.to_string())?;
                    let rhs = t.c_full(&r, g.i_prime as usize).map_err(|e| e.to_string())?;
                    if lhs.is_zero() && rhs.is_zero() {
                        continue;
                    }
                    survivors.retain(|cand| lhs == &eta_with(t, *cand, g.sigma, g.i, g.i_prime) * &rhs);
                    cases.push(NormalizationCase {
                        q: t.q(),
                        n: t.n(),
                        r: r.canonical_string(),
                        i: g.i,
                        i_prime: g.i_prime,
                    });
                }
            }
        }
    }
    match survivors.as_slice() {
        [one] => Ok((*one, cases)),
        [] => Err(format!("no candidate fits {} cases", cases.len())),
        many => Err(format!(
            "{} candidates fit {} cases: {}",
            many.len(),
            cases.len(),
            many.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        )),
    }
}
