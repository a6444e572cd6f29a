//! Characters on `F_q[x]` and `F_q`: the `n`-th power residue symbol, the
//! additive character `e` of `F_q(x)`, finite-field Gauss sums and the
//! quadratic character.

use std::sync::Arc;

use crate::cyclokit::{CycField, CycNum};
use crate::fieldkit::{FieldCtx, FqElem};
use crate::polyring::{factorize, resultant, Poly, PolyError, RatFunc};

/// Value of a residue symbol: zero when the arguments share a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Zero,
    Root(FqElem),
}

impl SymbolValue {
    pub fn is_zero(self) -> bool {
        matches!(self, SymbolValue::Zero)
    }

    /// Exponent `e` with value `zeta_n^e`, or `None` for zero.
    pub fn log(self, k: &FieldCtx) -> Option<u32> {
        match self {
            SymbolValue::Zero => None,
            SymbolValue::Root(z) => Some(k.mu_n_log(z).expect("symbol values lie in mu_n")),
        }
    }
}

/// `(a / c)_n` from the definition: for each prime `pi | c`, raise `a mod pi`
/// to `(q^deg(pi) - 1) / n` in `F_q[x]/(pi)`, then multiply over the
/// factorization of `c`.
pub fn residue_symbol(k: &FieldCtx, a: &Poly, c: &Poly) -> Result<SymbolValue, PolyError> {
    let f = factorize(k, c)?;
    let mut acc = FqElem::ONE;
    for (pi, e) in &f.factors {
        let d = pi.deg() as u32;
        let exp = ((k.q() as u128).pow(d) - 1) / k.n() as u128;
        let v = a.powmod(k, exp, pi)?;
        if v.is_zero() {
            return Ok(SymbolValue::Zero);
        }
        debug_assert!(v.is_constant(), "power residue must reduce to a constant");
        acc = k.mul(acc, k.pow(v.lc(), *e as i64)?);
    }
    Ok(SymbolValue::Root(acc))
}

/// `mu_n_log((a / c)_n)` for monic `c`, through `(a/c)_n = chi(Res(c, a))`.
///
/// Cheaper than [`residue_symbol`] since it needs no factorization;
/// `None` when `gcd(a, c) != 1`.
#[inline]
pub fn symbol_log(k: &FieldCtx, a: &Poly, c: &Poly) -> Option<u32> {
    debug_assert!(c.is_monic());
    let res = resultant(k, c, a);
    if res.is_zero() {
        None
    } else {
        Some(k.chi_log(res).expect("nonzero"))
    }
}

/// Trace of the `x^(-1)` coefficient of `num / den` at infinity.
///
/// With `num = Q den + rem`, that coefficient is `rem_(deg den - 1) / lc(den)`.
pub fn e_trace(k: &FieldCtx, num: &Poly, den: &Poly) -> u32 {
    let d = den.deg();
    if d == 0 {
        return 0;
    }
    let rem = num.rem(k, den).expect("nonzero denominator");
    let top = rem.coeff(d - 1);
    if top.is_zero() {
        return 0;
    }
    k.trace(k.div(top, den.lc()).expect("nonzero leading coefficient"))
}

/// `e(f) = e_o(coefficient of x^(-1) of f at infinity)`.
pub fn additive_char_e(k: &FieldCtx, cyc: &Arc<CycField>, f: &RatFunc) -> CycNum {
    let t = e_trace(k, f.num(), f.den());
    cyc.zeta(cyc.exp_zeta_p(t as i64) as i64)
}

/// `tau(omega) = sum_(a != 0) omega(a) e_o(a)` for `omega = (eps o chi)^j`.
pub fn tau(k: &FieldCtx, cyc: &Arc<CycField>, j: i64) -> CycNum {
    let n = k.n() as i64;
    let step = (k.eps_exp() as i64 * j).rem_euclid(n);
    let mut counts = vec![0i64; cyc.order() as usize];
    for a in k.elements().skip(1) {
        let e = cyc.exp_zeta_n(step * k.chi_log(a).expect("nonzero") as i64) + cyc.exp_zeta_p(k.trace(a) as i64);
        counts[(e % cyc.order()) as usize] += 1;
    }
    cyc.from_counts(&counts)
}

/// `tau((eps o chi)^j)` for every `j` in `[0, n)`.
pub fn tau_table(k: &FieldCtx, cyc: &Arc<CycField>) -> Vec<CycNum> {
    (0..k.n() as i64).map(|j| tau(k, cyc, j)).collect()
}

/// Quadratic character of `F_q^x`, with `omega(0) = 0`.
pub fn quadratic_omega(k: &FieldCtx, a: FqElem) -> i32 {
    if a.is_zero() {
        return 0;
    }
    let half = k.pow(a, ((k.q() - 1) / 2) as i64).expect("nonnegative exponent");
    if half == FqElem::ONE {
        1
    } else {
        -1
    }
}

pub fn quadratic_omega_cyc(k: &FieldCtx, cyc: &Arc<CycField>, a: FqElem) -> CycNum {
    cyc.from_int(quadratic_omega(k, a) as i64)
}

/// Checks `(c'/c)_n` against `chi(+-D(c))` for one monic squarefree `c`.
///
/// Returns `None` when `c` is not squarefree or has degree 0.
pub fn disc_legendre_holds(k: &FieldCtx, c: &Poly) -> Option<bool> {
    let d = c.deg();
    if d == 0 {
        return None;
    }
    let disc = crate::polyring::discriminant(k, c).ok()?;
    if disc.is_zero() {
        return None;
    }
    let lhs = residue_symbol(k, &c.derivative(k), c).ok()?;
    let arg = if d % 4 <= 1 { disc } else { k.neg(disc) };
    Some(lhs == SymbolValue::Root(k.chi(arg).ok()?))
}
