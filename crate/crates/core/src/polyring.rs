//! The polynomial ring `F_q[x]` and rational functions over it.
//!
//! Polynomials are dense coefficient vectors, lowest degree first, with no
//! trailing zeros. Every operation takes the [`FieldCtx`] explicitly.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::fieldkit::{FieldCtx, FieldError, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantInput,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.canonical_string())
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the constant term upwards.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FqElem::ONE)
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![FqElem::ZERO, FqElem::ONE],
        }
    }

    pub fn constant(c: FqElem) -> Poly {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: FqElem, k: usize) -> Poly {
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `x - a`.
    pub fn linear(k: &FieldCtx, a: FqElem) -> Poly {
        Poly::new(vec![k.neg(a), FqElem::ONE])
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> FqElem {
        self.coeffs.get(j).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FqElem::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0. Callers check for zero first.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, k: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|j| k.add(self.coeff(j), other.coeff(j))).collect())
    }

    pub fn neg(&self, k: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn sub(&self, k: &FieldCtx, other: &Poly) -> Poly {
        self.add(k, &other.neg(k))
    }

    pub fn scale(&self, k: &FieldCtx, c: FqElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, k: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: &FieldCtx, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(k, self);
        }
        acc
    }

    pub fn divmod(&self, k: &FieldCtx, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = k.inv(d.lc())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FqElem::ZERO; rem.len() - dd];
        for s in (0..quo.len()).rev() {
            let c = k.mul(rem[s + dd], inv);
            quo[s] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[s + j] = k.sub(rem[s + j], k.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, k: &FieldCtx, d: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(k, d)?.1)
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self, k: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(k, k.inv(self.lc()).expect("nonzero leading coefficient"))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, k: &FieldCtx, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(k, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn eval(&self, k: &FieldCtx, at: FqElem) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| k.add(k.mul(acc, at), c))
    }

    pub fn derivative(&self, k: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| k.mul(k.from_int(j as i64), c))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, k: &FieldCtx, mut e: u128, m: &Poly) -> Result<Poly, PolyError> {
        let mut base = self.rem(k, m)?;
        let mut acc = Poly::one().rem(k, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base).rem(k, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base).rem(k, m)?;
            }
        }
        Ok(acc)
    }

    /// Comma-separated element codes, lowest degree first; `"0"` for zero.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.code().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(k: &FieldCtx, s: &str) -> Result<Poly, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                let code: u32 = t.trim().parse().map_err(|_| PolyError::Parse(s.to_string()))?;
                k.elem_from_code(code).map_err(|_| PolyError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

/// `Res(a, b)`, computed by the Euclidean recurrence.
pub fn resultant(k: &FieldCtx, a: &Poly, b: &Poly) -> FqElem {
    if a.is_zero() || b.is_zero() {
        return FqElem::ZERO;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = FqElem::ONE;
    loop {
        let (m, d) = (a.deg(), b.deg());
        if d == 0 {
            return k.mul(acc, k.pow(b.lc(), m as i64).expect("nonnegative exponent"));
        }
        if m == 0 {
            return k.mul(acc, k.pow(a.lc(), d as i64).expect("nonnegative exponent"));
        }
        let r = a.rem(k, &b).expect("nonzero divisor");
        if r.is_zero() {
            return FqElem::ZERO;
        }
        if (m * d) % 2 == 1 {
            acc = k.neg(acc);
        }
        let drop = (m - r.deg()) as i64;
        acc = k.mul(acc, k.pow(b.lc(), drop).expect("nonnegative exponent"));
        a = b;
        b = r;
    }
}

/// `D(c) = (-1)^(d(d-1)/2) * Res(c, c')` for monic `c` of degree `d >= 1`.
pub fn discriminant(k: &FieldCtx, c: &Poly) -> Result<FqElem, PolyError> {
    if c.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if !c.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let d = c.deg();
    if d == 0 {
        return Err(PolyError::ConstantInput);
    }
    let res = resultant(k, c, &c.derivative(k));
    Ok(if (d * (d - 1) / 2) % 2 == 1 { k.neg(res) } else { res })
}

/// Unit times a sorted list of monic irreducible factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, k: &FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (p, e)| acc.mul(k, &p.pow(k, *e)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

/// Complete factorization: distinct-degree splitting, then Cantor-Zassenhaus
/// equal-degree splitting with a fixed sequence of test polynomials.
pub fn factorize(k: &FieldCtx, a: &Poly) -> Result<Factorization, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let unit = a.lc();
    let mut rest = a.monic(k);
    let mut factors = Vec::new();
    let x = Poly::x();
    let mut frob = x.clone();
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        frob = frob.powmod(k, k.q() as u128, &rest)?;
        let g = rest.gcd(k, &frob.sub(k, &x));
        if !g.is_one() {
            for cand in equal_degree_split(k, &g, d)? {
                let mut e = 0u32;
                loop {
                    let (quo, r) = rest.divmod(k, &cand)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = quo;
                    e += 1;
                }
                factors.push((cand, e));
            }
            frob = frob.rem(k, &rest)?;
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        factors.push((rest, 1));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Splits a monic squarefree `g` whose irreducible factors all have degree `d`.
/// Odd characteristic only.
fn equal_degree_split(k: &FieldCtx, g: &Poly, d: usize) -> Result<Vec<Poly>, PolyError> {
    let mut done = Vec::new();
    let mut todo = vec![g.clone()];
    let q = k.q() as u64;
    let mut seed = 0u64;
    while let Some(f) = todo.pop() {
        if f.deg() == d {
            done.push(f);
            continue;
        }
        loop {
            seed += 1;
            let h = split_probe(k, seed, f.deg()).rem(k, &f)?;
            if h.is_constant() {
                continue;
            }
            // h^((q^d - 1) / 2) as (h h^q ... h^(q^(d-1)))^((q - 1) / 2).
            let mut t = h.clone();
            let mut acc = h.clone();
            for _ in 1..d {
                t = t.powmod(k, q as u128, &f)?;
                acc = acc.mul(k, &t).rem(k, &f)?;
            }
            let w = acc.powmod(k, ((q - 1) / 2) as u128, &f)?.sub(k, &Poly::one());
            let s = f.gcd(k, &w);
            if !s.is_one() && s.deg() < f.deg() {
                let (rest, _) = f.divmod(k, &s)?;
                todo.push(s.monic(k));
                todo.push(rest.monic(k));
                break;
            }
        }
    }
    done.sort();
    Ok(done)
}

/// The `seed`-th polynomial of degree below `bound` in a fixed order:
/// base-`q` digits of `seed` as coefficients.
fn split_probe(k: &FieldCtx, mut seed: u64, bound: usize) -> Poly {
    let q = k.q() as u64;
    let mut coeffs = Vec::new();
    while seed > 0 && coeffs.len() < bound {
        coeffs.push(FqElem::from_code_unchecked((seed % q) as u32));
        seed /= q;
    }
    Poly::new(coeffs)
}

pub fn is_irreducible(k: &FieldCtx, a: &Poly) -> bool {
    match factorize(k, a) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Mobius function on `F_q[x]`; units map to 1.
pub fn mobius(k: &FieldCtx, c: &Poly) -> Result<i32, PolyError> {
    let f = factorize(k, c)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Number of monic polynomials of degree `d`.
pub fn monic_count(k: &FieldCtx, d: usize) -> u64 {
    (k.q() as u64).pow(d as u32)
}

/// The monic polynomial of degree `d` with enumeration index `idx`:
/// coefficient `j` has code equal to base-`q` digit `j` of `idx`.
pub fn monic_from_index(k: &FieldCtx, d: usize, idx: u64) -> Poly {
    let mut out = Poly::zero();
    monic_from_index_into(k, d, idx, &mut out);
    out
}

/// Buffer-reusing form of [`monic_from_index`].
pub fn monic_from_index_into(k: &FieldCtx, d: usize, mut idx: u64, out: &mut Poly) {
    let q = k.q() as u64;
    out.coeffs.clear();
    for _ in 0..d {
        out.coeffs.push(FqElem::from_code_unchecked((idx % q) as u32));
        idx /= q;
    }
    out.coeffs.push(FqElem::ONE);
}

pub fn monic_index(k: &FieldCtx, c: &Poly) -> Result<u64, PolyError> {
    if !c.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let q = k.q() as u64;
    Ok(c.coeffs[..c.deg()]
        .iter()
        .rev()
        .fold(0u64, |acc, e| acc * q + e.code() as u64))
}

/// All `q^d` monic polynomials of degree `d`, in index order.
pub fn enumerate_monic(k: &FieldCtx, d: usize) -> impl Iterator<Item = Poly> + '_ {
    monic_range(k, d, 0, monic_count(k, d))
}

/// Monic polynomials of degree `d` with index in `[start, end)`.
pub fn monic_range(k: &FieldCtx, d: usize, start: u64, end: u64) -> impl Iterator<Item = Poly> + '_ {
    let end = end.min(monic_count(k, d));
    (start..end).map(move |idx| monic_from_index(k, d, idx))
}

/// A rational function `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(k: &FieldCtx, num: Poly, den: Poly) -> Result<RatFunc, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one() });
        }
        let g = num.gcd(k, &den);
        let num = num.divmod(k, &g)?.0;
        let den = den.divmod(k, &g)?.0;
        let lc = den.lc();
        let inv = k.inv(lc)?;
        Ok(RatFunc {
            num: num.scale(k, inv),
            den: den.scale(k, inv),
        })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, k: &FieldCtx, other: &RatFunc) -> RatFunc {
        RatFunc::new(k, self.num.mul(k, &other.num), self.den.mul(k, &other.den)).expect("nonzero denominators")
    }

    pub fn add(&self, k: &FieldCtx, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(k, &other.den).add(k, &other.num.mul(k, &self.den));
        RatFunc::new(k, num, self.den.mul(k, &other.den)).expect("nonzero denominators")
    }

    pub fn inv(&self, k: &FieldCtx) -> Result<RatFunc, PolyError> {
        RatFunc::new(k, self.den.clone(), self.num.clone())
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, k: &FieldCtx, e: i64) -> Result<RatFunc, PolyError> {
        let base = if e < 0 { self.inv(k)? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        RatFunc::new(k, base.num.pow(k, e), base.den.pow(k, e))
    }
}

/// The reduced representative of `r` modulo `n`-th powers of `F_q(x)^x`:
/// `g^u * prod pi^(e(pi) mod n)`, together with the unit-class exponent `u`.
pub fn reduce_mod_nth_powers(k: &FieldCtx, r: &RatFunc) -> Result<(Poly, u32), PolyError> {
    if r.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let n = k.n() as i64;
    let fnum = factorize(k, r.num())?;
    let fden = factorize(k, r.den())?;
    let unit = k.div(fnum.unit, fden.unit)?;
    let u = k.log(unit)? % k.n();
    let mut out = Poly::constant(k.gen_pow(u as i64));
    let mut exps: Vec<(Poly, i64)> = fnum.factors.into_iter().map(|(p, e)| (p, e as i64)).collect();
    exps.extend(fden.factors.into_iter().map(|(p, e)| (p, -(e as i64))));
    for (p, e) in exps {
        out = out.mul(k, &p.pow(k, e.rem_euclid(n) as u32));
    }
    Ok((out, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldCtx {
        FieldCtx::new(7, 1, 3, 1).unwrap()
    }

    fn p(k: &FieldCtx, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| k.from_int(v)).collect())
    }

    #[test]
    fn basic_ops() {
        let k = f7();
        assert_eq!(p(&k, &[1, 0, 1]).derivative(&k), p(&k, &[0, 2]));
        assert_eq!(p(&k, &[-1, 0, 1]).gcd(&k, &p(&k, &[-1, 1])), p(&k, &[-1, 1]));
        let (q, r) = p(&k, &[0, 0, 0, 1]).divmod(&k, &p(&k, &[1, 0, 1])).unwrap();
        assert_eq!(q, p(&k, &[0, 1]));
        assert_eq!(r, p(&k, &[0, -1]));
        assert!(Poly::one().divmod(&k, &Poly::zero()).is_err());
        assert_eq!(p(&k, &[1, 2, 3]).eval(&k, k.from_int(2)), k.from_int(17));
    }

    #[test]
    fn factorization_examples() {
        let k3 = FieldCtx::new(3, 1, 2, 1).unwrap();
        let f = factorize(&k3, &p(&k3, &[1, 0, 1])).unwrap();
        assert_eq!(f.unit, FqElem::ONE);
        assert_eq!(f.factors, vec![(p(&k3, &[1, 0, 1]), 1)]);
        let k = f7();
        let f = factorize(&k, &p(&k, &[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&k, &[1, 1]), 1), (p(&k, &[-1, 1]), 1)]);
        let f = factorize(&k, &p(&k, &[0, 3])).unwrap();
        assert_eq!(f.unit, k.from_int(3));
        assert_eq!(f.factors, vec![(Poly::x(), 1)]);
        let f = factorize(&k, &p(&k, &[0, 0, 0, 1, 1])).unwrap();
        assert_eq!(f.factors, vec![(Poly::x(), 3), (p(&k, &[1, 1]), 1)]);
        assert!(factorize(&k, &Poly::zero()).is_err());
    }

    #[test]
    fn mobius_examples() {
        let k = f7();
        assert_eq!(mobius(&k, &p(&k, &[0, 0, 1])).unwrap(), 0);
        assert_eq!(mobius(&k, &p(&k, &[0, -1, 1])).unwrap(), 1);
        assert_eq!(mobius(&k, &Poly::constant(k.from_int(3))).unwrap(), 1);
        let k3 = FieldCtx::new(3, 1, 2, 1).unwrap();
        assert_eq!(mobius(&k3, &p(&k3, &[1, 0, 1])).unwrap(), -1);
    }

    #[test]
    fn discriminant_examples() {
        let k3 = FieldCtx::new(3, 1, 2, 1).unwrap();
        assert_eq!(discriminant(&k3, &p(&k3, &[1, 0, 1])).unwrap(), k3.from_int(2));
        let k = f7();
        assert_ne!(discriminant(&k, &p(&k, &[-4, 0, 1])).unwrap(), FqElem::ZERO);
        assert_eq!(discriminant(&k, &p(&k, &[0, 0, 1])).unwrap(), FqElem::ZERO);
        assert_eq!(discriminant(&k, &p(&k, &[0, 2])), Err(PolyError::NotMonic));
        // b^2 - 4c for a quadratic
        let c = p(&k, &[3, 5, 1]);
        assert_eq!(discriminant(&k, &c).unwrap(), k.from_int(25 - 12));
    }

    #[test]
    fn enumeration() {
        let k = f7();
        assert_eq!(enumerate_monic(&k, 0).collect::<Vec<_>>(), vec![Poly::one()]);
        assert_eq!(enumerate_monic(&k, 2).count(), 49);
        let k3 = FieldCtx::new(3, 1, 2, 1).unwrap();
        let lin: Vec<_> = enumerate_monic(&k3, 1).collect();
        assert_eq!(lin, vec![p(&k3, &[0, 1]), p(&k3, &[1, 1]), p(&k3, &[2, 1])]);
        for (idx, c) in enumerate_monic(&k, 3).enumerate().step_by(37) {
            assert_eq!(monic_index(&k, &c).unwrap(), idx as u64);
        }
        let split: Vec<_> = monic_range(&k, 2, 0, 20).chain(monic_range(&k, 2, 20, 49)).collect();
        assert_eq!(split, enumerate_monic(&k, 2).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_strings() {
        let k = FieldCtx::new(3, 2, 2, 1).unwrap();
        let a = Poly::parse(&k, "0,1").unwrap();
        assert_eq!(a, Poly::x());
        assert_eq!(Poly::parse(&k, "4, 0 ,1").unwrap().canonical_string(), "4,0,1");
        assert!(Poly::parse(&k, "9").is_err());
        assert!(Poly::parse(&k, "a").is_err());
        assert_eq!(Poly::zero().canonical_string(), "0");
    }

    #[test]
    fn reduce_examples() {
        let k = f7();
        let x = Poly::x();
        let (r, u) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(x.pow(&k, 3))).unwrap();
        assert_eq!((r, u), (Poly::one(), 0));
        let inv_x = RatFunc::new(&k, Poly::one(), x.clone()).unwrap();
        let (r, u) = reduce_mod_nth_powers(&k, &inv_x).unwrap();
        assert_eq!((r, u), (x.pow(&k, 2), 0));
        let r0 = x.pow(&k, 5).mul(&k, &p(&k, &[-1, 1]));
        let (r, _) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(r0)).unwrap();
        assert_eq!(r, x.pow(&k, 2).mul(&k, &p(&k, &[-1, 1])));
        // unit classes: 3 is the generator, 6 = 3^3 is a cube
        let (r, u) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(p(&k, &[0, 6]))).unwrap();
        assert_eq!((r, u), (x.clone(), 0));
        let (r, u) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(p(&k, &[0, 2]))).unwrap();
        assert_eq!((r, u), (p(&k, &[0, 2]), 2));
    }

    fn pellet_check(k: &FieldCtx, max_deg: usize) {
        for d in 1..=max_deg {
            for c in enumerate_monic(k, d) {
                let disc = discriminant(k, &c).unwrap();
                let omega = if disc.is_zero() {
                    0
                } else if k.log(disc).unwrap().is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let sign = if d % 2 == 0 { 1 } else { -1 };
                assert_eq!(omega, mobius(k, &c).unwrap() * sign, "{c:?}");
            }
        }
    }

    #[test]
    fn pellet_small_fields() {
        pellet_check(&FieldCtx::new(3, 1, 2, 1).unwrap(), 4);
        pellet_check(&FieldCtx::new(3, 2, 2, 1).unwrap(), 3);
    }

    /// Trial division by monic polynomials in index order.
    fn factor_oracle(k: &FieldCtx, a: &Poly) -> Vec<(Poly, u32)> {
        let mut rest = a.monic(k);
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg() >= 1 {
            if 2 * d > rest.deg() {
                out.push((rest.clone(), 1));
                break;
            }
            for c in enumerate_monic(k, d) {
                let mut e = 0;
                while rest.rem(k, &c).unwrap().is_zero() {
                    rest = rest.divmod(k, &c).unwrap().0;
                    e += 1;
                }
                if e > 0 {
                    out.push((c, e));
                }
            }
            d += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn factorization_matches_trial_division() {
        for k in [
            FieldCtx::new(3, 1, 2, 1).unwrap(),
            FieldCtx::new(3, 2, 2, 1).unwrap(),
            FieldCtx::new(5, 1, 4, 1).unwrap(),
        ] {
            let top = if k.q() == 9 { 4 } else { 5 };
            for d in 1..=top {
                for c in enumerate_monic(&k, d) {
                    assert_eq!(
                        factorize(&k, &c).unwrap().factors,
                        factor_oracle(&k, &c),
                        "{}",
                        c.canonical_string()
                    );
                }
            }
        }
    }

    #[test]
    fn factorization_of_high_degree_binomials() {
        let k = FieldCtx::new(13, 1, 12, 1).unwrap();
        for d in 2..=23 {
            let a = Poly::x().pow(&k, d).add(&k, &Poly::one());
            let f = factorize(&k, &a).unwrap();
            assert_eq!(f.expand(&k), a);
            for (q, _) in &f.factors {
                assert!(rabin_irreducible(&k, q), "{}", q.canonical_string());
            }
        }
    }

    /// Rabin: `q` of degree `d` is irreducible iff `x^(q^d) = x mod q` and
    /// `gcd(q, x^(q^(d/l)) - x) = 1` for each prime `l | d`.
    fn rabin_irreducible(k: &FieldCtx, f: &Poly) -> bool {
        let d = f.deg();
        let frob = |e: usize| (0..e).fold(Poly::x(), |acc, _| acc.powmod(k, k.q() as u128, f).unwrap());
        if !frob(d).sub(k, &Poly::x()).rem(k, f).unwrap().is_zero() {
            return false;
        }
        (2..=d)
            .filter(|l| d.is_multiple_of(*l) && (2..*l).all(|m| l % m != 0))
            .all(|l| f.gcd(k, &frob(d / l).sub(k, &Poly::x())).is_one())
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0i64..7, 0..=max_len)
    }

    proptest! {
        #[test]
        fn factor_round_trip(a in arb_poly(6), b in arb_poly(5), lead in 1i64..7) {
            let k = f7();
            let mut a = p(&k, &a);
            a = a.mul(&k, &p(&k, &b)).add(&k, &Poly::monomial(k.from_int(lead), 7));
            let f = factorize(&k, &a).unwrap();
            prop_assert_eq!(f.expand(&k), a);
            for (q, _) in &f.factors {
                prop_assert!(q.is_monic());
                prop_assert!(factorize(&k, q).unwrap().factors.len() == 1);
            }
        }

        #[test]
        fn divmod_contract(a in arb_poly(8), b in arb_poly(5)) {
            let k = f7();
            let (a, b) = (p(&k, &a), p(&k, &b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&k, &b).unwrap();
            prop_assert_eq!(q.mul(&k, &b).add(&k, &r), a);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }

        #[test]
        fn resultant_is_multiplicative(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
            let k = f7();
            let (a, b, c) = (p(&k, &a), p(&k, &b), p(&k, &c));
            let lhs = resultant(&k, &a, &b.mul(&k, &c));
            let rhs = k.mul(resultant(&k, &a, &b), resultant(&k, &a, &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduce_is_idempotent_and_orbit_constant(a in arb_poly(4), h in arb_poly(2), lead in 1i64..7) {
            let k = f7();
            let a = p(&k, &a).add(&k, &Poly::monomial(k.from_int(lead), 4));
            let h = p(&k, &h).add(&k, &Poly::monomial(FqElem::ONE, 2));
            let (r, u) = reduce_mod_nth_powers(&k, &RatFunc::from_poly(a.clone())).unwrap();
            let again = reduce_mod_nth_powers(&k, &RatFunc::from_poly(r.clone())).unwrap();
            prop_assert_eq!(&again, &(r.clone(), u));
            let moved = a.mul(&k, &h.pow(&k, 3));
            let other = reduce_mod_nth_powers(&k, &RatFunc::from_poly(moved)).unwrap();
            prop_assert_eq!(other, (r, u));
        }
    }
}
