//! Named verification suites, each an exact check of one identity over a
//! deterministic set of cases.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charkit::{disc_legendre_holds, quadratic_omega};
use crate::cyclokit::CycNum;
use crate::fieldkit::{FieldCtx, FqElem};
use crate::polyring::{discriminant, mobius, monic_count, monic_from_index, reduce_mod_nth_powers, Poly, RatFunc};
use crate::thetacore::{
    determine_tau_normalization, index_geometry, pgl2_transform, Mobius2x2, Rho0, Strategy, ThetaCtx,
};

use super::{load_cache, save_cache, HarnessError, Result, RunConfig};

pub const SUITES: &[&str] = &[
    "dh",
    "pellet",
    "disc-legendre",
    "psi-truncation",
    "functional-eq",
    "theorem1",
    "hecke-inf",
    "hecke-fin",
    "nth-power",
    "special-values",
    "two-prime-vanishing",
    "integrality",
];

const REPORT_SCHEMA: u32 = 1;
/// Largest number of residues in any single enumeration a suite will start.
const ENUM_BUDGET: u64 = 200_000;
/// Hard cap on `deg c` for the truncation and functional-equation suites.
const PSI_DEG_CAP: usize = 6;
const DH_DEFAULT_DEG: usize = 3;
const DISC_DEFAULT_DEG: usize = 4;
/// Matrices are enumerated over all of `PGL_2(F_q)` up to this `q`.
const EXHAUSTIVE_PGL2_Q: u64 = 7;
/// Extra `(n, q)` fields that join the configured one in the normalization search.
const NORMALIZATION_FIELDS: &[(u32, u32)] = &[(5, 2), (7, 3), (5, 4)];
const NORMALIZATION_MAX_DEG: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    /// A CLI invocation that reruns exactly this case.
    pub reproduce: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Cases outside the enumeration budget.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Observations that are reported but not asserted.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub eps_exp: u32,
    pub seed: u64,
    pub normalization: String,
    pub normalization_cases: usize,
    pub normalization_error: Option<String>,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.normalization_error.is_none() && self.suites.iter().all(SuiteReport::passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Plain-text report: one line per suite, then failures and notes.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "field p={} m={} n={} eps={} seed={}",
            self.p, self.m, self.n, self.eps_exp, self.seed
        );
        match &self.normalization_error {
            None => {
                let _ = writeln!(
                    s,
                    "tau normalization: {} ({} cases)",
                    self.normalization, self.normalization_cases
                );
            }
            Some(e) => {
                let _ = writeln!(s, "tau normalization: FAILED ({e}); using {}", self.normalization);
            }
        }
        for suite in &self.suites {
            let _ = writeln!(
                s,
                "{:<20} {:>4} {:>6} cases {:>4} skipped {:>4} failures",
                suite.name,
                if suite.passed() { "PASS" } else { "FAIL" },
                suite.cases,
                suite.skipped,
                suite.failures.len()
            );
        }
        for suite in &self.suites {
            for f in &suite.failures {
                let _ = writeln!(
                    s,
                    "[{}] {}\n  lhs = {}\n  rhs = {}\n  rerun: {}",
                    suite.name, f.case, f.lhs, f.rhs, f.reproduce
                );
            }
            for note in &suite.notes {
                let _ = writeln!(s, "[{}] note: {note}", suite.name);
            }
        }
        let _ = writeln!(s, "{}", if self.passed() { "ALL PASS" } else { "FAILURES" });
        s
    }
}

/// Generator set of `r`: `x^a (x-1)^b` with `a + b <= max_deg` and `x^d + 1`, `1 <= d <= max_deg`.
pub fn generator_set(k: &FieldCtx, max_deg: usize) -> Vec<Poly> {
    let x = Poly::x();
    let x1 = Poly::linear(k, FqElem::ONE);
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            out.push(x.pow(k, a as u32).mul(k, &x1.pow(k, b as u32)));
        }
    }
    for d in 2..=max_deg {
        out.push(x.pow(k, d as u32).add(k, &Poly::one()));
    }
    if max_deg >= 1 {
        out.push(Poly::linear(k, k.neg(FqElem::ONE)));
    }
    out
}

struct Run<'a> {
    cfg: &'a RunConfig,
    t: ThetaCtx,
    /// Every `rho_0` computed so far, keyed by reduced `r` and `i`.
    rhos: Mutex<BTreeMap<(String, u32), (usize, CycNum)>>,
}

/// Per-`c` result of a discriminant check: pass flag and both sides, or `None` to skip.
type DiscOutcome = Option<(bool, String, String)>;

fn p_str(r: &Poly) -> String {
    r.canonical_string()
}

impl<'a> Run<'a> {
    fn k(&self) -> &FieldCtx {
        self.t.field()
    }

    fn rho(&self, r: &RatFunc, i: i64) -> Result<Rho0> {
        let v = self.t.rho0(r, i)?;
        self.rhos.lock().expect("rho log").insert(
            (v.reduced.canonical_string(), v.geometry.i),
            (v.reduced.deg(), v.value.clone()),
        );
        Ok(v)
    }

    fn fits(&self, deg: usize) -> bool {
        self.t.q().checked_pow(deg as u32).is_some_and(|v| v <= ENUM_BUDGET)
    }

    /// Whether `rho_0(r, i)` for reduced `r` stays inside the budget.
    fn rho_fits(&self, r: &Poly, i: i64) -> bool {
        match self.t.rho0_enumeration_degree(r.deg(), i) {
            None => true,
            Some(d) => self.fits(d),
        }
    }

    fn rho_fits_rat(&self, r: &RatFunc, i: i64) -> Result<bool> {
        let (reduced, _) = reduce_mod_nth_powers(self.k(), r)?;
        Ok(self.rho_fits(&reduced, i))
    }

    fn psi_cap(&self) -> usize {
        let mut d = 0;
        while d < PSI_DEG_CAP && self.fits(d + 1) {
            d += 1;
        }
        d
    }

    fn repro(&self, suite: &str, extra: &str) -> String {
        format!(
            "theta verify {} --suite {suite}{extra} --seed {}",
            self.cfg.field_args(),
            self.cfg.seed
        )
    }

    fn r_arg(r: &Poly) -> String {
        format!(" --r \"{}\"", p_str(r))
    }

    fn ri_arg(r: &Poly, i: i64) -> String {
        format!(" --r \"{}\" --i {i}", p_str(r))
    }

    fn rs_or(&self, default: Vec<Poly>) -> Result<Vec<Poly>> {
        Ok(self.cfg.parsed_r_list(self.k())?.unwrap_or(default))
    }

    fn fail(&self, rep: &mut SuiteReport, case: String, lhs: &dyn ToString, rhs: &dyn ToString, extra: String) {
        let reproduce = self.repro(&rep.name, &extra);
        rep.failures.push(Failure {
            case,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            reproduce,
        });
    }

    fn check_eq(&self, rep: &mut SuiteReport, case: String, lhs: &CycNum, rhs: &CycNum, extra: String) {
        rep.cases += 1;
        if lhs != rhs {
            self.fail(rep, case, lhs, rhs, extra);
        }
    }

    fn all_monic(&self, max_deg: usize) -> Vec<Poly> {
        let k = self.k();
        (0..=max_deg)
            .flat_map(|d| (0..monic_count(k, d)).map(move |i| monic_from_index(k, d, i)))
            .collect()
    }

    fn suite_dh(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("dh");
        let k = self.k();
        let x = Poly::x();
        let defaults = vec![
            Poly::one(),
            x.clone(),
            Poly::linear(k, k.neg(FqElem::ONE)),
            x.pow(k, 2),
            x.mul(k, &Poly::linear(k, FqElem::ONE)),
        ];
        let rs = self.rs_or(defaults)?;
        let cs = self.all_monic(self.cfg.c_max_deg.unwrap_or(DH_DEFAULT_DEG));
        // Brute force per c over all coprime r at once; report in r-major order.
        let mut values: Vec<Vec<Option<CycNum>>> = vec![vec![None; cs.len()]; rs.len()];
        for (ci, c) in cs.iter().enumerate() {
            if !self.fits(c.deg()) {
                continue;
            }
            let coprime: Vec<usize> = (0..rs.len()).filter(|&ri| rs[ri].gcd(k, c).is_one()).collect();
            if coprime.is_empty() {
                continue;
            }
            let batch: Vec<Poly> = coprime.iter().map(|&ri| rs[ri].clone()).collect();
            for (ri, bf) in coprime.into_iter().zip(self.t.gauss_sums_bruteforce(&batch, c)?) {
                values[ri][ci] = Some(bf);
            }
        }
        for (ri, r) in rs.iter().enumerate() {
            for (ci, c) in cs.iter().enumerate() {
                if !r.gcd(k, c).is_one() {
                    continue;
                }
                let Some(bf) = values[ri][ci].take() else {
                    rep.skipped += 1;
                    continue;
                };
                let dh = self.t.gauss_sum_dh(r, c)?;
                let extra = format!("{} --c-max-deg {}", Self::r_arg(r), c.deg());
                self.check_eq(&mut rep, format!("r = {}, c = {}", p_str(r), p_str(c)), &dh, &bf, extra);
            }
        }
        Ok(rep)
    }

    fn discriminant_cases<F>(&self, name: &str, check: F) -> Result<SuiteReport>
    where
        F: Fn(&Poly) -> DiscOutcome + Sync,
    {
        let mut rep = SuiteReport::new(name);
        let k = self.k();
        for d in 1..=self.cfg.c_max_deg.unwrap_or(DISC_DEFAULT_DEG) {
            let results: Vec<(Poly, DiscOutcome)> = (0..monic_count(k, d))
                .into_par_iter()
                .map(|idx| {
                    let c = monic_from_index(k, d, idx);
                    let out = check(&c);
                    (c, out)
                })
                .collect();
            for (c, out) in results {
                match out {
                    None => rep.skipped += 1,
                    Some((ok, lhs, rhs)) => {
                        rep.cases += 1;
                        if !ok {
                            let extra = format!(" --c-max-deg {d}");
                            self.fail(&mut rep, format!("c = {}", p_str(&c)), &lhs, &rhs, extra);
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `omega(D(c)) = mu(c) (-1)^deg c` for every monic `c`.
    fn suite_pellet(&self) -> Result<SuiteReport> {
        let k = self.k();
        self.discriminant_cases("pellet", |c| {
            let disc = discriminant(k, c).ok()?;
            let lhs = quadratic_omega(k, disc);
            let sign = if c.deg() % 2 == 0 { 1 } else { -1 };
            let rhs = mobius(k, c).ok()? * sign;
            Some((lhs == rhs, lhs.to_string(), rhs.to_string()))
        })
    }

    fn suite_disc_legendre(&self) -> Result<SuiteReport> {
        let k = self.k();
        self.discriminant_cases("disc-legendre", |c| {
            disc_legendre_holds(k, c).map(|ok| (ok, "(c'/c)_n".to_string(), "chi(+-D(c))".to_string()))
        })
    }

    fn psi_rs(&self) -> Result<Vec<Poly>> {
        let default_max = self.cfg.max_deg.unwrap_or(2 * self.cfg.n as usize - 1);
        self.rs_or(generator_set(self.k(), default_max))
    }

    /// `D_j = 0` for `R < j <= R + 2`, as far as the degree cap allows.
    fn suite_psi_truncation(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("psi-truncation");
        let n = self.cfg.n as i64;
        let cap = self.psi_cap() as i64;
        for r in self.psi_rs()? {
            for i in self.cfg.i_values() {
                let g = index_geometry(r.deg(), i, self.cfg.n);
                let lo = (g.big_r + 1).max(0);
                let hi = (g.big_r + 2).min((cap - i).div_euclid(n));
                if hi < lo {
                    rep.skipped += 1;
                    continue;
                }
                let d = self.t.psi_d_coeffs(&r, g.i, hi as usize)?;
                for j in lo..=hi {
                    let dj = &d[j as usize];
                    rep.cases += 1;
                    if !dj.is_zero() {
                        let case = format!("r = {}, i = {i}, R = {}, j = {j}: D_j != 0", p_str(&r), g.big_r);
                        self.fail(&mut rep, case, dj, &0, Self::ri_arg(&r, i));
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Both forms of the functional equation, the closed `R = 0` and `D_R`
    /// displays, and reconstruction from half-lists, on brute-force pairs.
    fn suite_functional_eq(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("functional-eq");
        let t = &self.t;
        let n = self.cfg.n as i64;
        let cap = self.psi_cap() as i64;
        let q_minus_one = t.cyc().from_int(t.q() as i64 - 1);
        for r in self.psi_rs()? {
            for i in self.cfg.i_values() {
                let g = index_geometry(r.deg(), i, self.cfg.n);
                if g.i >= g.i_prime || g.big_r < 0 {
                    continue;
                }
                if g.i_prime as i64 + g.big_r * n > cap {
                    rep.skipped += 1;
                    continue;
                }
                let f = t.psi_polynomial(&r, i)?;
                let gp = t.psi_polynomial(&r, g.i_prime as i64)?;
                let eta = f.eta.clone().expect("i != i'");
                let eta_p = f.eta_prime.clone().expect("i != i'");
                let tag = format!("r = {}, i = {i}, i' = {}, R = {}", p_str(&r), g.i_prime, g.big_r);
                let extra = Self::ri_arg(&r, i);
                let fmt = |v: &[CycNum]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
                let vec_check = |rep: &mut SuiteReport, what: &str, lhs: &[CycNum], rhs: &[CycNum]| {
                    rep.cases += 1;
                    if lhs != rhs {
                        self.fail(rep, format!("{tag}: {what}"), &fmt(lhs), &fmt(rhs), extra.clone());
                    }
                };
                vec_check(&mut rep, "G from F", &t.g_from_f(&f.d, &eta), &gp.d);
                vec_check(&mut rep, "F from G", &t.f_from_g(&gp.d, &eta_p), &f.d);
                let big_r = g.big_r as usize;
                let (d, dp) = t.functional_equation_expand(&f, &f.d[..big_r / 2 + 1], &gp.d[..big_r.div_ceil(2)])?;
                vec_check(&mut rep, "expand F", &d, &f.d);
                vec_check(&mut rep, "expand G", &dp, &gp.d);
                let (lhs, rhs) = if big_r == 0 {
                    (f.d[0].clone(), &eta * &gp.d[0])
                } else {
                    let inv = eta_p.inv().expect("eta' is nonzero");
                    (f.d[big_r].clone(), &(&inv * &gp.d[0]) - &(&q_minus_one * &f.d[0]))
                };
                self.check_eq(
                    &mut rep,
                    format!("{tag}: closed form for D_R"),
                    &lhs,
                    &rhs,
                    extra.clone(),
                );
            }
        }
        Ok(rep)
    }

    fn matrices(&self) -> Result<(Vec<Mobius2x2>, Vec<Mobius2x2>)> {
        let k = self.k();
        if let Some(list) = &self.cfg.g_list {
            let mut out = Vec::new();
            for [a, b, c, d] in list {
                out.push(Mobius2x2::new(
                    k,
                    k.elem_from_code(*a)?,
                    k.elem_from_code(*b)?,
                    k.elem_from_code(*c)?,
                    k.elem_from_code(*d)?,
                )?);
            }
            return Ok((out, Vec::new()));
        }
        let exhaustive = if self.t.q() <= EXHAUSTIVE_PGL2_Q {
            Mobius2x2::pgl2_representatives(k)
        } else {
            Vec::new()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let q = self.t.q() as u32;
        let mut random = Vec::with_capacity(self.cfg.samples);
        while random.len() < self.cfg.samples {
            let mut e = || k.elem_from_code(rng.random_range(0..q)).expect("code below q");
            let (a, b, c, d) = (e(), e(), e(), e());
            if let Ok(g) = Mobius2x2::new(k, a, b, c, d) {
                random.push(g);
            }
        }
        Ok((exhaustive, random))
    }

    fn g_arg(g: &Mobius2x2) -> String {
        format!(" --g \"{},{},{},{}\"", g.a.code(), g.b.code(), g.c.code(), g.d.code())
    }

    /// `rho_0(r, i) = rho_0(r_i^g, i)`.
    fn suite_theorem1(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("theorem1");
        let k = self.k();
        let x = Poly::x();
        let defaults = vec![x.clone(), x.pow(k, 2), x.mul(k, &Poly::linear(k, FqElem::ONE))];
        let rs = self.rs_or(defaults)?;
        let (exhaustive, random) = self.matrices()?;
        rep.notes.push(format!(
            "{} matrices from PGL_2(F_q), {} drawn with seed {}",
            exhaustive.len(),
            random.len(),
            self.cfg.seed
        ));
        for r in &rs {
            let rr = RatFunc::from_poly(r.clone());
            for i in self.cfg.i_values() {
                if !self.rho_fits_rat(&rr, i)? {
                    rep.skipped += 1;
                    continue;
                }
                let base = self.rho(&rr, i)?.value;
                for g in exhaustive.iter().chain(&random) {
                    let rg = pgl2_transform(k, &rr, g, i)?;
                    if !self.rho_fits_rat(&rg, i)? {
                        rep.skipped += 1;
                        continue;
                    }
                    let v = self.rho(&rg, i)?.value;
                    let case = format!(
                        "r = {}, i = {i}, g = {:?}",
                        p_str(r),
                        [g.a.code(), g.b.code(), g.c.code(), g.d.code()]
                    );
                    let extra = format!("{}{}", Self::ri_arg(r, i), Self::g_arg(g));
                    self.check_eq(&mut rep, case, &base, &v, extra);
                }
            }
        }
        Ok(rep)
    }

    fn hecke_rs(&self) -> Result<Vec<Poly>> {
        let default_max = self.cfg.max_deg.unwrap_or(2 * self.cfg.n as usize - 1);
        self.rs_or(generator_set(self.k(), default_max))
    }

    /// The relation at infinity between `i` and `i'`, and the identity of the
    /// two multipliers composed.
    fn suite_hecke_inf(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("hecke-inf");
        let t = &self.t;
        for r in self.hecke_rs()? {
            let rr = RatFunc::from_poly(r.clone());
            let (reduced, _) = reduce_mod_nth_powers(self.k(), &rr)?;
            for i in self.cfg.i_values() {
                let g = index_geometry(reduced.deg(), i, self.cfg.n);
                if g.i == g.i_prime || g.big_r < 0 {
                    continue;
                }
                if !self.rho_fits(&reduced, i) || !self.rho_fits(&reduced, g.i_prime as i64) {
                    rep.skipped += 1;
                    continue;
                }
                self.rho(&rr, i)?;
                self.rho(&rr, g.i_prime as i64)?;
                let (lhs, rhs) = t.hecke_infinity(&rr, i)?;
                let tag = format!("r = {}, i = {i}, i' = {}", p_str(&r), g.i_prime);
                self.check_eq(&mut rep, tag.clone(), &lhs, &rhs, Self::ri_arg(&r, i));
                let (lo, hi) = (g.i.min(g.i_prime), g.i.max(g.i_prime));
                rep.cases += 1;
                if !t.hecke_infinity_composes(g.sigma, lo, hi) {
                    let up = t.hecke_infinity_multiplier(g.sigma, hi, lo);
                    let down = t.hecke_infinity_multiplier(g.sigma, lo, hi);
                    self.fail(
                        &mut rep,
                        format!("{tag}: multipliers do not compose to 1"),
                        &down,
                        &up,
                        Self::ri_arg(&r, i),
                    );
                }
            }
        }
        Ok(rep)
    }

    /// The relation at a finite prime, its vanishing at `j = n - 1`, and the
    /// round trip `j -> n - 2 - j`.
    fn suite_hecke_fin(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("hecke-fin");
        let k = self.k();
        let t = &self.t;
        let n = self.cfg.n;
        let x = Poly::x();
        let defaults = vec![
            Poly::one(),
            Poly::linear(k, FqElem::ONE),
            Poly::linear(k, k.neg(FqElem::ONE)),
        ];
        let r_os = self.rs_or(defaults)?;
        let pis = [x.clone(), Poly::linear(k, FqElem::ONE)];
        for pi in &pis {
            for r_o in &r_os {
                if !r_o.gcd(k, pi).is_one() {
                    continue;
                }
                for j in 0..n {
                    for i in self.cfg.i_values() {
                        let lhs_r = r_o.mul(k, &pi.pow(k, j));
                        let (red, _) = reduce_mod_nth_powers(k, &RatFunc::from_poly(lhs_r.clone()))?;
                        let mut fits = self.rho_fits(&red, i);
                        let mut target_log = None;
                        if j + 1 < n {
                            let (_, target, i2) = t.hecke_finite_multiplier(r_o, pi, j, i)?;
                            let (red2, _) = reduce_mod_nth_powers(k, &RatFunc::from_poly(target.clone()))?;
                            fits &= self.rho_fits(&red2, i2);
                            target_log = Some((target, i2));
                        }
                        if !fits {
                            rep.skipped += 1;
                            continue;
                        }
                        self.rho(&RatFunc::from_poly(lhs_r), i)?;
                        if let Some((target, i2)) = target_log {
                            self.rho(&RatFunc::from_poly(target), i2)?;
                        }
                        let (lhs, rhs) = t.hecke_finite(r_o, pi, j, i)?;
                        let tag = format!("r_o = {}, pi = {}, j = {j}, i = {i}", p_str(r_o), p_str(pi));
                        let extra = format!("{} --i {i}", Self::r_arg(r_o));
                        self.check_eq(&mut rep, tag.clone(), &lhs, &rhs, extra.clone());
                        if j + 2 <= n {
                            rep.cases += 1;
                            if !t.hecke_finite_chain_composes(r_o, pi, j, i)? {
                                self.fail(
                                    &mut rep,
                                    format!("{tag}: j -> n-2-j does not return"),
                                    &"chain",
                                    &"identity",
                                    extra,
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `rho_0(r h^n, i) = rho_0(r, i)`, computing the left side from the
    /// unreduced `r h^n`. Monic `h` is asserted; `h` with a non-`n`-th-power
    /// leading coefficient is reported only.
    fn suite_nth_power(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("nth-power");
        let k = self.k();
        let t = &self.t;
        let n = self.cfg.n;
        let x = Poly::x();
        let defaults = vec![
            Poly::one(),
            x.clone(),
            Poly::linear(k, k.neg(FqElem::ONE)),
            x.mul(k, &Poly::linear(k, FqElem::ONE)),
        ];
        let rs = self.rs_or(defaults)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ 0x6e74_6870);
        let q = t.q() as u32;
        let mut hs = Vec::new();
        for _ in 0..4 {
            let d = rng.random_range(1..=2usize);
            let mut coeffs: Vec<FqElem> = (0..d)
                .map(|_| k.elem_from_code(rng.random_range(0..q)).expect("code"))
                .collect();
            coeffs.push(FqElem::ONE);
            hs.push(Poly::new(coeffs));
        }
        let unit = k.generator();
        let non_monic: Vec<Poly> = hs.iter().map(|h| h.scale(k, unit)).collect();
        let (mut agree, mut differ, mut skipped_nm) = (0, 0, 0);
        for r in &rs {
            for i in self.cfg.i_values() {
                let base = self.rho(&RatFunc::from_poly(r.clone()), i)?.value;
                for (h, asserted) in hs.iter().map(|h| (h, true)).chain(non_monic.iter().map(|h| (h, false))) {
                    let big = r.mul(k, &h.pow(k, n));
                    if !self.rho_fits(&big, i) {
                        if asserted {
                            rep.skipped += 1;
                        } else {
                            skipped_nm += 1;
                        }
                        continue;
                    }
                    let direct = t.rho0_unreduced(&big, i, Strategy::Auto)?.value;
                    if asserted {
                        let case = format!("r = {}, h = {}, i = {i}", p_str(r), p_str(h));
                        self.check_eq(&mut rep, case, &direct, &base, Self::ri_arg(r, i));
                    } else if direct == base {
                        agree += 1;
                    } else {
                        differ += 1;
                    }
                }
            }
        }
        rep.notes.push(format!(
            "non-monic h (leading coefficient g = {}): {agree} agree, {differ} differ, {skipped_nm} skipped",
            unit.code()
        ));
        Ok(rep)
    }

    /// `rho_0(x^e, 0) = 1` for `e <= n - 2`, and `rho_0 = 0` whenever `i = i'`,
    /// the latter checked against the full evaluation of `Psi` where affordable.
    fn suite_special_values(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("special-values");
        let k = self.k();
        let t = &self.t;
        let n = self.cfg.n;
        let one = t.cyc().one();
        let zero = t.cyc().zero();
        for e in 0..=n.saturating_sub(2) {
            let r = Poly::x().pow(k, e);
            let v = self.rho(&RatFunc::from_poly(r.clone()), 0)?.value;
            self.check_eq(&mut rep, format!("rho_0(x^{e}, 0) = 1"), &v, &one, Self::ri_arg(&r, 0));
        }
        for r in self.hecke_rs()? {
            let (r, _) = reduce_mod_nth_powers(k, &RatFunc::from_poly(r))?;
            for i in self.cfg.i_values() {
                let g = index_geometry(r.deg(), i, n);
                if g.i != g.i_prime {
                    continue;
                }
                let v = self.rho(&RatFunc::from_poly(r.clone()), i)?.value;
                let tag = format!("r = {}, i = i' = {i}", p_str(&r));
                self.check_eq(&mut rep, tag.clone(), &v, &zero, Self::ri_arg(&r, i));
                if g.big_r >= 0 && self.fits(g.i as usize + g.big_r as usize * n as usize) {
                    let full = t.rho0_evaluated(&r, i)?;
                    self.check_eq(&mut rep, format!("{tag}, full Psi"), &full, &zero, Self::ri_arg(&r, i));
                } else if g.big_r >= 0 {
                    rep.skipped += 1;
                }
            }
        }
        Ok(rep)
    }

    /// `rho_0(x^e0 (x-1)^e1, i) = 0` for `1 <= e0 <= e1 <= n/2 - 1`,
    /// `e0 + 1 <= i <= (e0 + e1 - 1) / 2`.
    fn suite_two_prime(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("two-prime-vanishing");
        let k = self.k();
        let t = &self.t;
        let n = self.cfg.n as i64;
        let zero = t.cyc().zero();
        let top = n / 2 - 1;
        for e0 in 1..=top {
            for e1 in e0..=top {
                for i in (e0 + 1)..=(e0 + e1 - 1).div_euclid(2) {
                    if self.cfg.i_list.is_some() && !self.cfg.i_values().contains(&i) {
                        continue;
                    }
                    let r = Poly::x()
                        .pow(k, e0 as u32)
                        .mul(k, &Poly::linear(k, FqElem::ONE).pow(k, e1 as u32));
                    if !self.rho_fits(&r, i) {
                        rep.skipped += 1;
                        continue;
                    }
                    let v = self.rho(&RatFunc::from_poly(r.clone()), i)?;
                    let tag = format!("e0 = {e0}, e1 = {e1}, i = {i}");
                    self.check_eq(&mut rep, tag.clone(), &v.value, &zero, Self::ri_arg(&r, i));
                    if v.geometry.big_r == 0 && self.fits(2 * i as usize) {
                        let bf = t.c_full_bruteforce(&r, i as usize)?;
                        self.check_eq(&mut rep, format!("{tag}, brute force"), &bf, &zero, Self::ri_arg(&r, i));
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `rho_0 q^((n+1) R') / tau(eps chi^i)` is integral for every `rho_0`
    /// computed earlier in the run, plus the generator set.
    fn suite_integrality(&self) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("integrality");
        for r in self.hecke_rs()? {
            for i in self.cfg.i_values() {
                let rr = RatFunc::from_poly(r.clone());
                if self.rho_fits_rat(&rr, i)? {
                    self.rho(&rr, i)?;
                } else {
                    rep.skipped += 1;
                }
            }
        }
        let log = self.rhos.lock().expect("rho log").clone();
        for ((r, i), (deg, v)) in log {
            rep.cases += 1;
            if !self.t.integrality_holds(deg, i as i64, &v) {
                let extra = format!(" --r \"{r}\" --i {i}");
                self.fail(
                    &mut rep,
                    format!("r = {r}, i = {i}"),
                    &v,
                    &"an element of Z[zeta_n] times tau / q^((n+1)R')",
                    extra,
                );
            }
        }
        Ok(rep)
    }

    fn run_suite(&self, name: &str) -> Result<SuiteReport> {
        match name {
            "dh" => self.suite_dh(),
            "pellet" => self.suite_pellet(),
            "disc-legendre" => self.suite_disc_legendre(),
            "psi-truncation" => self.suite_psi_truncation(),
            "functional-eq" => self.suite_functional_eq(),
            "theorem1" => self.suite_theorem1(),
            "hecke-inf" => self.suite_hecke_inf(),
            "hecke-fin" => self.suite_hecke_fin(),
            "nth-power" => self.suite_nth_power(),
            "special-values" => self.suite_special_values(),
            "two-prime-vanishing" => self.suite_two_prime(),
            "integrality" => self.suite_integrality(),
            other => Err(HarnessError::UnknownSuite(other.to_string())),
        }
    }
}

fn selected_suites(cfg: &RunConfig) -> Result<Vec<&'static str>> {
    if cfg.suites.iter().any(|s| s == "all") {
        return Ok(SUITES.to_vec());
    }
    let mut out = Vec::new();
    for s in &cfg.suites {
        let known = SUITES
            .iter()
            .find(|k| **k == s.as_str())
            .ok_or_else(|| HarnessError::UnknownSuite(s.clone()))?;
        if !out.contains(known) {
            out.push(*known);
        }
    }
    // canonical order, so integrality sees every other suite's values
    out.sort_by_key(|s| SUITES.iter().position(|k| k == s));
    Ok(out)
}

/// Determines the `tau` normalization, then runs the selected suites in
/// canonical order under it.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report> {
    let suites = selected_suites(cfg)?;
    let k = cfg.field()?;
    let base = ThetaCtx::new(k.clone());
    let cache = cfg.cache_path();
    if let Some(path) = &cache {
        load_cache(path, &base);
    }
    cfg.install(|| -> Result<Report> {
        let extra: Vec<ThetaCtx> = NORMALIZATION_FIELDS
            .iter()
            .filter(|(q, n)| !(k.q() == *q && k.n() == *n))
            .map(|&(q, n)| FieldCtx::new(q, 1, n, 1).map(ThetaCtx::new))
            .collect::<std::result::Result<_, _>>()?;
        let mut all: Vec<&ThetaCtx> = vec![&base];
        all.extend(extra.iter());
        let determined = determine_tau_normalization(&all, NORMALIZATION_MAX_DEG);
        let (norm, cases, error) = match determined {
            Ok((norm, cases)) => (norm, cases.len(), None),
            Err(e) => (base.normalization(), 0, Some(e)),
        };
        let run = Run {
            cfg,
            t: base.with_normalization(norm),
            rhos: Mutex::new(BTreeMap::new()),
        };
        let mut reports = Vec::with_capacity(suites.len());
        for name in suites {
            log::info!("suite {name}");
            reports.push(run.run_suite(name)?);
        }
        if let Some(path) = &cache {
            save_cache(path, &run.t)?;
        }
        Ok(Report {
            schema: REPORT_SCHEMA,
            p: k.p(),
            m: k.m(),
            n: k.n(),
            eps_exp: k.eps_exp(),
            seed: cfg.seed,
            normalization: norm.to_string(),
            normalization_cases: cases,
            normalization_error: error,
            suites: reports,
        })
    })?
}
