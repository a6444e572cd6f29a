//! Arithmetic in the prime field `F_p` and its extension `F_q = F_p[t]/(f)`.
//!
//! Elements are packed into a `u32` holding the base-`p` digits of their
//! coordinates with respect to the power basis `1, t, ..., t^{m-1}` (digit
//! `j` is the coefficient of `t^j`). All multiplicative work goes through
//! discrete log tables built once per [`FieldCtx`], which is fine for the
//! desk-scale fields this crate targets.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`FieldCtx`]; log tables are `O(q)`.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("n must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("q = {q} is not congruent to 1 mod n = {n}")]
    QNotOneModN { q: u32, n: u32 },
    #[error("embedding exponent {k} is not coprime to n = {n}")]
    EpsNotCoprime { k: u32, n: u32 },
    #[error("field order p^m is too large (limit {MAX_FIELD_ORDER})")]
    FieldTooLarge,
    #[error("defining polynomial must be monic of degree {0} with coefficients in [0, p)")]
    ModulusShape(u32),
    #[error("defining polynomial is reducible over F_p")]
    ModulusReducible,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("character evaluated at zero")]
    CharacterAtZero,
    #[error("field element code {0} out of range")]
    BadElement(u32),
    #[error("{0} is not an n-th root of unity")]
    NotRootOfUnity(u32),
}

/// An element of `F_q`, packed as base-`p` digits of its power-basis coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_code_unchecked(code: u32) -> FqElem {
        FqElem(code)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The ambient data shared by every computation: `p`, `q = p^m`, `n`, the
/// defining polynomial, the `mu_n` generator and the embedding exponent.
///
/// Read-only after construction.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    n: u32,
    eps_exp: u32,
    modulus: Vec<u32>,
    generator: FqElem,
    zeta_n: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    mu_log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("eps_exp", &self.eps_exp)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .field("zeta_n", &self.zeta_n)
            .finish()
    }
}

pub(crate) fn is_prime(v: u32) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= v as u64 {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_divisors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// Dense polynomials over F_p used only to bootstrap the field tables.
mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while r.len() > db {
            let lead = r.len() - 1;
            let c = (r[lead] as u64 * inv as u64 % p as u64) as u32;
            let shift = lead - db;
            for (j, &bj) in b.iter().enumerate() {
                let sub = (c as u64 * bj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, f, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out: Vec<u32> = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Rabin-style test: no factor of degree <= m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m <= 1 {
            return m == 1;
        }
        let t = vec![0u32, 1];
        let mut frob = t.clone();
        for _ in 1..=m / 2 {
            frob = powmod(&frob, p as u64, f, p);
            let g = gcd(f, &sub(&frob, &t, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds `F_{p^m}` with the default defining polynomial, `n`, and the
    /// embedding exponent `eps_exp`.
    pub fn new(p: u32, m: u32, n: u32, eps_exp: u32) -> Result<Self, FieldError> {
        Self::build(p, m, n, eps_exp, None)
    }

    /// Same as [`FieldCtx::new`] with an explicit defining polynomial
    /// (coefficients lowest degree first, monic, length `m + 1`).
    pub fn with_modulus(p: u32, m: u32, n: u32, eps_exp: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        Self::build(p, m, n, eps_exp, Some(modulus))
    }

    fn build(p: u32, m: u32, n: u32, eps_exp: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if m == 0 {
            return Err(FieldError::BadDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or(FieldError::FieldTooLarge)? as u32;
        if n < 2 {
            return Err(FieldError::BadOrder(n));
        }
        if !(q - 1).is_multiple_of(n) {
            return Err(FieldError::QNotOneModN { q, n });
        }
        if gcd_u64(eps_exp as u64, n as u64) != 1 {
            return Err(FieldError::EpsNotCoprime { k: eps_exp, n });
        }
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || f[m as usize] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(FieldError::ModulusShape(m));
                }
                if !fp::is_irreducible(&f, p) {
                    return Err(FieldError::ModulusReducible);
                }
                f
            }
            None => default_modulus(p, m),
        };

        let order = (q - 1) as u64;
        let factors = prime_divisors(order);
        let slow_pow = |code: u32, e: u64| -> u32 {
            let poly = digits(code, p, m);
            let r = fp::powmod(&poly, e, &modulus, p);
            pack(&r, p)
        };
        let generator = lex_elements(p, m)
            .filter(|&c| c != 0)
            .find(|&c| factors.iter().all(|&l| slow_pow(c, order / l) != 1))
            .expect("F_q^x is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let gpoly = digits(generator, p, m);
        let mut cur = vec![1u32];
        for k in 0..order as u32 {
            let code = pack(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            cur = fp::mulmod(&cur, &gpoly, &modulus, p);
        }

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            n,
            eps_exp,
            modulus,
            generator: FqElem(generator),
            zeta_n: FqElem(exp[((q - 1) / n) as usize]),
            exp,
            log,
            trace: Vec::new(),
            mu_log: vec![u32::MAX; q as usize],
        };
        ctx.trace = (0..q).map(|c| ctx.trace_slow(FqElem(c))).collect();
        let mut z = FqElem::ONE;
        for e in 0..n {
            ctx.mu_log[z.0 as usize] = e;
            z = ctx.mul(z, ctx.zeta_n);
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn eps_exp(&self) -> u32 {
        self.eps_exp
    }
    /// Defining polynomial of `F_q` over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The fixed generator of `F_q^x` (smallest in lexicographic order).
    pub fn generator(&self) -> FqElem {
        self.generator
    }
    /// Generator of `mu_n(F_q)`: `generator^((q-1)/n)`.
    pub fn zeta_n(&self) -> FqElem {
        self.zeta_n
    }

    /// Element with the given power-basis coordinates.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FqElem, FieldError> {
        if coeffs.len() > self.m as usize {
            return Err(FieldError::BadElement(u32::MAX));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c % self.p;
        }
        Ok(FqElem(code))
    }

    pub fn elem_from_code(&self, code: u32) -> Result<FqElem, FieldError> {
        if code >= self.q {
            return Err(FieldError::BadElement(code));
        }
        Ok(FqElem(code))
    }

    /// Image of the integer `k` under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u32)
    }

    /// Power-basis coordinates, length exactly `m`.
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        digits(a.0, self.p, self.m)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.m == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        FqElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
        }
        FqElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let order = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FqElem(self.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InverseOfZero);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FqElem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; `0^0 = 1`, negative powers of zero
    /// are an error.
    pub fn pow(&self, a: FqElem, e: i64) -> Result<FqElem, FieldError> {
        if a.0 == 0 {
            return match e.signum() {
                0 => Ok(FqElem::ONE),
                1 => Ok(FqElem::ZERO),
                _ => Err(FieldError::InverseOfZero),
            };
        }
        let order = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let k = (l as i128 * e as i128).rem_euclid(order as i128) as usize;
        Ok(FqElem(self.exp[k]))
    }

    /// `log_g(a)` for the fixed generator `g`.
    pub fn log(&self, a: FqElem) -> Result<u32, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::CharacterAtZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// `g^k` for the fixed generator.
    pub fn gen_pow(&self, k: i64) -> FqElem {
        let order = (self.q - 1) as i64;
        FqElem(self.exp[k.rem_euclid(order) as usize])
    }

    /// `Tr_{F_q/F_p}(a)` as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize]
    }

    fn trace_slow(&self, a: FqElem) -> u32 {
        let mut acc = FqElem::ZERO;
        let mut cur = a;
        for _ in 0..self.m {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p as i64).expect("nonnegative exponent");
        }
        debug_assert!(acc.0 < self.p, "trace must land in F_p");
        acc.0
    }

    /// The character map `a -> a^((q-1)/n)` onto `mu_n(F_q)`.
    pub fn chi(&self, a: FqElem) -> Result<FqElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::CharacterAtZero);
        }
        self.pow(a, ((self.q - 1) / self.n) as i64)
    }

    /// `mu_n_log(chi(a))`, computed straight from the log table.
    #[inline]
    pub fn chi_log(&self, a: FqElem) -> Result<u32, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::CharacterAtZero);
        }
        Ok(self.log[a.0 as usize] % self.n)
    }

    /// Exponent `e` with `z = zeta_n^e`.
    pub fn mu_n_log(&self, z: FqElem) -> Result<u32, FieldError> {
        match self.mu_log.get(z.0 as usize) {
            Some(&e) if e != u32::MAX => Ok(e),
            _ => Err(FieldError::NotRootOfUnity(z.0)),
        }
    }

    /// `mu_n_log(chi(-1))`: 0 or `n/2`.
    pub fn chi_minus_one_log(&self) -> u32 {
        self.chi_log(self.neg(FqElem::ONE)).expect("-1 is nonzero")
    }
}

fn digits(code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    let mut c = code;
    for _ in 0..m {
        out.push(c % p);
        c /= p;
    }
    out
}

fn pack(poly: &[u32], p: u32) -> u32 {
    poly.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Codes of all elements in lexicographic order of their coordinate tuples,
/// compared from the constant coordinate upwards.
fn lex_elements(p: u32, m: u32) -> impl Iterator<Item = u32> {
    let q = p.pow(m);
    (0..q).map(move |k| {
        // digit j of k counted from the most significant end is coordinate j
        let mut code = 0u32;
        let mut rest = k;
        let mut place = 1u32;
        let mut coords = vec![0u32; m as usize];
        for j in (0..m as usize).rev() {
            coords[j] = rest % p;
            rest /= p;
        }
        for &c in &coords {
            code += c * place;
            place *= p;
        }
        code
    })
}

/// Lexicographically smallest monic irreducible of degree `m` over `F_p`,
/// coefficients compared from the constant term upwards.
fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    lex_elements(p, m)
        .map(|code| {
            let mut f = digits(code, p, m);
            f.push(1);
            f
        })
        .find(|f| fp::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::new(7, 1, 3, 1).unwrap()
    }

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2, 2, 1).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let k = f7();
        assert_eq!(k.mul(k.from_int(3), k.from_int(5)), k.from_int(1));
        assert_eq!(k.inv(k.from_int(2)).unwrap(), k.from_int(4));
        assert_eq!(k.inv(FqElem::ZERO), Err(FieldError::InverseOfZero));
        assert_eq!(k.generator(), k.from_int(3));
        assert_eq!(k.zeta_n(), k.from_int(2));
    }

    #[test]
    fn f9_defining_relation() {
        let k = f9();
        assert_eq!(k.modulus(), &[1, 0, 1]);
        let t = k.elem(&[0, 1]).unwrap();
        assert_eq!(k.mul(t, t), k.from_int(2));
        assert_eq!(k.trace(t), 0);
        assert_eq!(k.trace(FqElem::ONE), 2);
    }

    #[test]
    fn trace_prime_field_is_identity() {
        let k = f7();
        assert_eq!(k.trace(k.from_int(3)), 3);
        assert_eq!(k.trace(FqElem::ZERO), 0);
    }

    #[test]
    fn chi_examples() {
        let k = f7();
        assert_eq!(k.chi(k.from_int(3)).unwrap(), k.from_int(2));
        assert_eq!(k.chi(k.from_int(6)).unwrap(), k.from_int(1));
        assert_eq!(k.chi(FqElem::ONE).unwrap(), FqElem::ONE);
        assert_eq!(k.chi(FqElem::ZERO), Err(FieldError::CharacterAtZero));
    }

    #[test]
    fn mu_n_log_examples() {
        let k = f7();
        assert_eq!(k.mu_n_log(FqElem::ONE).unwrap(), 0);
        assert_eq!(k.mu_n_log(k.from_int(4)).unwrap(), 2);
        assert_eq!(k.mu_n_log(k.from_int(2)).unwrap(), 1);
        assert!(k.mu_n_log(k.from_int(3)).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(9, 1, 2, 1).unwrap_err(), FieldError::NotOddPrime(9));
        assert_eq!(FieldCtx::new(2, 3, 7, 1).unwrap_err(), FieldError::NotOddPrime(2));
        assert_eq!(
            FieldCtx::new(7, 1, 4, 1).unwrap_err(),
            FieldError::QNotOneModN { q: 7, n: 4 }
        );
        assert_eq!(
            FieldCtx::new(7, 1, 3, 3).unwrap_err(),
            FieldError::EpsNotCoprime { k: 3, n: 3 }
        );
        assert_eq!(
            FieldCtx::with_modulus(3, 2, 2, 1, vec![2, 0, 1]).unwrap_err(),
            FieldError::ModulusReducible
        );
    }

    #[test]
    fn chi_fibers_are_uniform() {
        for (p, m, n) in [(7, 1, 3), (13, 1, 4), (3, 2, 4), (5, 2, 8), (3, 3, 13)] {
            let k = FieldCtx::new(p, m, n, 1).unwrap();
            let mut counts = vec![0u32; n as usize];
            for a in k.elements().skip(1) {
                counts[k.mu_n_log(k.chi(a).unwrap()).unwrap() as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == (k.q() - 1) / n), "{counts:?}");
        }
    }

    #[test]
    fn trace_is_linear_and_onto() {
        let k = FieldCtx::new(5, 2, 3, 1).unwrap();
        let mut hit = [false; 5];
        for a in k.elements() {
            hit[k.trace(a) as usize] = true;
            for b in k.elements().step_by(3) {
                assert_eq!(k.trace(k.add(a, b)), (k.trace(a) + k.trace(b)) % 5);
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn chi_log_is_a_homomorphism() {
        let k = FieldCtx::new(3, 2, 8, 3).unwrap();
        for a in k.elements().skip(1) {
            for b in k.elements().skip(1) {
                let lhs = (k.chi_log(a).unwrap() + k.chi_log(b).unwrap()) % 8;
                assert_eq!(lhs, k.mu_n_log(k.chi(k.mul(a, b)).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn field_axioms_extension() {
        let k = FieldCtx::new(5, 2, 4, 1).unwrap();
        for a in k.elements() {
            assert_eq!(k.add(a, k.neg(a)), FqElem::ZERO);
            if !a.is_zero() {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), FqElem::ONE);
            }
            for b in k.elements().step_by(7) {
                for c in k.elements().step_by(5) {
                    let lhs = k.mul(a, k.add(b, c));
                    assert_eq!(lhs, k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
        assert_eq!(k.pow(k.generator(), (k.q() - 1) as i64).unwrap(), FqElem::ONE);
    }
}
