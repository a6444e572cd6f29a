//! Exact arithmetic in the cyclotomic field `Q(zeta_N)` with `N = n * p`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `z = zeta_N` modulo the cyclotomic polynomial, with big-integer numerators
//! over a common positive denominator kept in lowest terms.
//!
//! Inside the field `zeta_n = z^p` and `zeta_p = z^n`, so a character value
//! `zeta_n^a * zeta_p^b` is the single power `z^(p*a + n*b)`. Sums of such
//! values are accumulated as integer counts per exponent class and converted
//! once through [`CycField::from_counts`].

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fieldkit::{gcd_u64, FieldCtx, FieldError, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {order} does not divide N = {big_n}")]
    OrderDoesNotDivide { order: u64, big_n: u32 },
    #[error("operands live in different cyclotomic fields")]
    FieldMismatch,
    #[error("malformed serialized value: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The ambient cyclotomic field `Q(zeta_N)`, `N = n * p`, with its reduction tables.
pub struct CycField {
    n: u32,
    p: u32,
    order: u32,
    phi: usize,
    /// `red[k]` = coordinates of `z^k` for `0 <= k < N`.
    red: Vec<Vec<i64>>,
    /// For each power-basis index, its image in the `zeta_n (x) zeta_p` basis.
    tensor: Vec<Vec<(usize, i64)>>,
    phi_n: usize,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

fn euler_phi(mut v: u64) -> u64 {
    let mut out = v;
    let mut d = 2u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            while v.is_multiple_of(d) {
                v /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if v > 1 {
        out -= out / v;
    }
    out
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div(&num, &div);
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut quo = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        quo[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&v| v == 0));
    quo
}

/// Coordinates of `x^k`, `0 <= k < order`, modulo the monic polynomial `phi_poly`.
fn reduction_table(order: u32, phi_poly: &[i64]) -> Vec<Vec<i64>> {
    let deg = phi_poly.len() - 1;
    let mut out = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; deg];
    if deg > 0 {
        cur[0] = 1;
    }
    for _ in 0..order {
        out.push(cur.clone());
        // multiply by x and reduce
        let top = if deg > 0 { cur[deg - 1] } else { 0 };
        let mut next = vec![0i64; deg];
        for j in (1..deg).rev() {
            next[j] = cur[j - 1];
        }
        for j in 0..deg {
            next[j] -= top * phi_poly[j];
        }
        cur = next;
    }
    out
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (1..m).find(|&x| a % m * x % m == 1).expect("unit")
}

impl CycField {
    /// `Q(zeta_{n p})` for coprime `n` and `p`.
    pub fn new(n: u32, p: u32) -> Arc<Self> {
        assert!(n >= 1 && p >= 2 && gcd_u64(n as u64, p as u64) == 1);
        let order = n * p;
        let phi_poly = cyclotomic_poly(order);
        let phi = phi_poly.len() - 1;
        let red = reduction_table(order, &phi_poly);

        let red_n = reduction_table(n, &cyclotomic_poly(n));
        let red_p = reduction_table(p, &cyclotomic_poly(p));
        let phi_n = euler_phi(n as u64) as usize;
        let phi_p = (p - 1) as usize;
        let p_inv = inv_mod(p as u64 % n as u64, n as u64);
        let n_inv = inv_mod(n as u64 % p as u64, p as u64);
        let tensor = (0..phi as u64)
            .map(|k| {
                let a = (k * p_inv % n as u64) as usize;
                let b = (k * n_inv % p as u64) as usize;
                let mut out = Vec::new();
                for (u, &cu) in red_n[a].iter().enumerate() {
                    for (v, &cv) in red_p[b].iter().enumerate() {
                        if cu * cv != 0 {
                            out.push((u * phi_p + v, cu * cv));
                        }
                    }
                }
                out
            })
            .collect();
        Arc::new(CycField {
            n,
            p,
            order,
            phi,
            red,
            tensor,
            phi_n,
        })
    }

    /// The cyclotomic field attached to a finite-field context.
    pub fn for_field(ctx: &FieldCtx) -> Arc<Self> {
        Self::new(ctx.n(), ctx.p())
    }

    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn degree(&self) -> usize {
        self.phi
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        CycNum {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycNum {
        let mut z = self.zero();
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(self: &Arc<Self>, v: &BigRational) -> CycNum {
        let mut z = self.zero();
        z.num[0] = v.numer().clone();
        z.den = v.denom().clone();
        z.normalize();
        z
    }

    /// `q^k` as an element of the field, for any integer `k`.
    pub fn int_pow(self: &Arc<Self>, base: u64, k: i64) -> CycNum {
        let b = BigInt::from(base).pow(k.unsigned_abs() as u32);
        let v = if k >= 0 {
            BigRational::from_integer(b)
        } else {
            BigRational::new(BigInt::one(), b)
        };
        self.from_rational(&v)
    }

    /// `z^k` for `z = zeta_N`.
    pub fn zeta(self: &Arc<Self>, k: i64) -> CycNum {
        let idx = k.rem_euclid(self.order as i64) as usize;
        let mut z = self.zero();
        for (j, &c) in self.red[idx].iter().enumerate() {
            z.num[j] = BigInt::from(c);
        }
        z
    }

    /// `zeta_N^((N/order) * exponent)`: a root of unity of the given order.
    pub fn root_of_unity(self: &Arc<Self>, order: u64, exponent: i64) -> Result<CycNum, CycError> {
        if order == 0 || !(self.order as u64).is_multiple_of(order) {
            return Err(CycError::OrderDoesNotDivide {
                order,
                big_n: self.order,
            });
        }
        let step = (self.order as u64 / order) as i64;
        let e = exponent.rem_euclid(order as i64);
        Ok(self.zeta(step * e))
    }

    /// Exponent of `z` representing `zeta_n^a`.
    #[inline]
    pub fn exp_zeta_n(&self, a: i64) -> u32 {
        (self.p as i64 * a).rem_euclid(self.order as i64) as u32
    }

    /// Exponent of `z` representing `zeta_p^b`.
    #[inline]
    pub fn exp_zeta_p(&self, b: i64) -> u32 {
        (self.n as i64 * b).rem_euclid(self.order as i64) as u32
    }

    /// `sum_k counts[k] * z^k` for a vector indexed by exponent mod `N`.
    pub fn from_counts(self: &Arc<Self>, counts: &[i64]) -> CycNum {
        let mut acc = vec![0i128; self.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.red[k % self.order as usize].iter().enumerate() {
                acc[j] += c as i128 * r as i128;
            }
        }
        let mut z = CycNum {
            field: Arc::clone(self),
            num: acc.into_iter().map(BigInt::from).collect(),
            den: BigInt::one(),
        };
        z.normalize();
        z
    }

    /// `eps(z) = zeta_n^(k * mu_n_log(z))` with `k` the context's embedding exponent.
    pub fn eps(self: &Arc<Self>, ctx: &FieldCtx, z: FqElem) -> Result<CycNum, CycError> {
        let e = ctx.mu_n_log(z)? as i64 * ctx.eps_exp() as i64;
        Ok(self.zeta(self.exp_zeta_n(e) as i64))
    }

    /// `e_o(a) = zeta_p^Tr(a)`.
    pub fn e_o(self: &Arc<Self>, ctx: &FieldCtx, a: FqElem) -> CycNum {
        self.zeta(self.exp_zeta_p(ctx.trace(a) as i64) as i64)
    }

    /// Parses the `{"den": ..., "num": [...]}` form.
    pub fn parse_repr(self: &Arc<Self>, repr: &CycRepr) -> Result<CycNum, CycError> {
        if repr.num.len() != self.phi {
            return Err(CycError::Parse(format!(
                "expected {} coordinates, found {}",
                self.phi,
                repr.num.len()
            )));
        }
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| CycError::Parse(format!("{s:?}: {e}")));
        let den = parse(&repr.den)?;
        if !den.is_positive() {
            return Err(CycError::Parse("denominator must be positive".into()));
        }
        let num = repr.num.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        let mut z = CycNum {
            field: Arc::clone(self),
            num,
            den,
        };
        z.normalize();
        Ok(z)
    }
}

/// Serialized form: decimal strings, basis order `z^0 .. z^(phi(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRepr {
    pub den: String,
    pub num: Vec<String>,
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl CycNum {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Power-basis numerators; the value is `num / den`.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if g.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &CycNum) {
        assert_eq!(self.field.order, other.field.order, "{}", CycError::FieldMismatch);
    }

    fn combine(&self, other: &CycNum, sign: i32) -> CycNum {
        self.check(other);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if sign > 0 {
                    l + r
                } else {
                    l - r
                }
            })
            .collect();
        let mut z = CycNum {
            field: Arc::clone(&self.field),
            num,
            den: &self.den * &other.den,
        };
        z.normalize();
        z
    }

    fn product(&self, other: &CycNum) -> CycNum {
        self.check(other);
        let f = &self.field;
        let big_n = f.order as usize;
        let mut by_exp: Vec<BigInt> = vec![BigInt::zero(); big_n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                by_exp[(i + j) % big_n] += a * b;
            }
        }
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in by_exp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in f.red[k].iter().enumerate() {
                if r != 0 {
                    num[j] += c * r;
                }
            }
        }
        let mut z = CycNum {
            field: Arc::clone(f),
            num,
            den: &self.den * &other.den,
        };
        z.normalize();
        z
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        let mut z = self.clone();
        for c in &mut z.num {
            *c *= k;
        }
        z.normalize();
        z
    }

    pub fn scale(&self, v: &BigRational) -> CycNum {
        let mut z = self.clone();
        for c in &mut z.num {
            *c *= v.numer();
        }
        z.den *= v.denom();
        z.normalize();
        z
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, v: &BigRational) -> Result<CycNum, CycError> {
        if v.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        Ok(self.scale(&v.recip()))
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under `z -> z^t`, `t` coprime to `N`.
    pub fn galois(&self, t: i64) -> CycNum {
        let f = &self.field;
        let big_n = f.order as i64;
        assert_eq!(gcd_u64(t.rem_euclid(big_n) as u64, big_n as u64), 1);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (k as i64 * t).rem_euclid(big_n) as usize;
            for (j, &r) in f.red[idx].iter().enumerate() {
                if r != 0 {
                    num[j] += c * r;
                }
            }
        }
        let mut z = CycNum {
            field: Arc::clone(f),
            num,
            den: self.den.clone(),
        };
        z.normalize();
        z
    }

    /// Complex conjugation `z -> z^(-1)`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// `N_{Q(zeta_N)/Q}` of the element.
    pub fn norm(&self) -> BigRational {
        let (prod, _) = self.norm_parts();
        prod.as_rational().expect("norm is rational")
    }

    fn norm_parts(&self) -> (CycNum, CycNum) {
        let big_n = self.field.order as u64;
        let mut others = self.field.one();
        for t in 2..big_n {
            if gcd_u64(t, big_n) == 1 {
                others = &others * &self.galois(t as i64);
            }
        }
        (&others * self, others)
    }

    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(&r.recip()));
        }
        let (norm, others) = self.norm_parts();
        let n = norm.as_rational().expect("norm is rational");
        others.div_rational(&n)
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self * &other.inv()?)
    }

    /// Floating-point value at `z = exp(2 pi i / N)`; for display only.
    pub fn complex_eval(&self) -> (f64, f64) {
        let big_n = self.field.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = TAU * k as f64 / big_n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.complex_eval();
        re.hypot(im)
    }

    /// Coordinates in the basis `zeta_n^u * zeta_p^v` with `u < phi(n)`, `v < p - 1`.
    pub fn tensor_coords(&self) -> Vec<BigInt> {
        let f = &self.field;
        let mut out = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(idx, w) in &f.tensor[k] {
                out[idx] += c * w;
            }
        }
        out
    }

    /// Whether the element lies in the subfield `Q(zeta_n)`.
    pub fn in_q_zeta_n(&self) -> bool {
        let phi_p = (self.field.p - 1) as usize;
        self.tensor_coords()
            .iter()
            .enumerate()
            .all(|(idx, c)| idx % phi_p == 0 || c.is_zero())
    }

    /// Whether the element lies in `Z[zeta_n]`.
    pub fn in_z_zeta_n(&self) -> bool {
        if !self.in_q_zeta_n() {
            return false;
        }
        let phi_p = (self.field.p - 1) as usize;
        let coords = self.tensor_coords();
        (0..self.field.phi_n).all(|u| coords[u * phi_p].is_multiple_of(&self.den))
    }

    pub fn to_repr(&self) -> CycRepr {
        CycRepr {
            den: self.den.to_string(),
            num: self.num.iter().map(ToString::to_string).collect(),
        }
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.combine(rhs, 1)
    }
}
impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.combine(rhs, -1)
    }
}
impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.product(rhs)
    }
}
impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.scale_int(-1)
    }
}
impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}
impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}
impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}
impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field() -> Arc<CycField> {
        CycField::new(3, 7)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(21).len() - 1, 12);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
    }

    #[test]
    fn roots_of_unity() {
        let f = field();
        let z3 = f.root_of_unity(3, 1).unwrap();
        let z3sq = f.root_of_unity(3, 2).unwrap();
        assert_eq!(&z3 + &z3sq, f.from_int(-1));
        assert_eq!(&f.zeta(1) * &f.zeta(20), f.one());
        assert_eq!(f.root_of_unity(1, 0).unwrap(), f.one());
        assert!(f.root_of_unity(2, 1).is_err());
        let g = CycField::new(4, 5);
        assert_eq!(g.root_of_unity(2, 1).unwrap(), g.from_int(-1));
        assert_eq!(g.root_of_unity(4, 1).unwrap().complex_eval().1, 1.0);
        assert_eq!(f.zeta(1).pow(21), f.one());
    }

    #[test]
    fn rationals() {
        let f = field();
        let half = f.from_rational(&BigRational::new(1.into(), 2.into()));
        let third = f.from_rational(&BigRational::new(1.into(), 3.into()));
        let sum = &half + &third;
        assert_eq!(sum.as_rational().unwrap(), BigRational::new(5.into(), 6.into()));
        let (re, im) = (-&half).complex_eval();
        assert_eq!((re, im), (-0.5, 0.0));
        assert!(f.one().div_rational(&BigRational::zero()).is_err());
    }

    #[test]
    fn character_values() {
        let ctx = FieldCtx::new(7, 1, 3, 1).unwrap();
        let f = CycField::for_field(&ctx);
        assert_eq!(f.eps(&ctx, FqElem::ONE).unwrap(), f.one());
        assert_eq!(f.eps(&ctx, ctx.from_int(2)).unwrap(), f.root_of_unity(3, 1).unwrap());
        assert_eq!(f.eps(&ctx, ctx.from_int(4)).unwrap(), f.root_of_unity(3, 2).unwrap());
        assert!(f.eps(&ctx, ctx.from_int(3)).is_err());
        assert_eq!(f.e_o(&ctx, FqElem::ZERO), f.one());
        assert_eq!(f.e_o(&ctx, FqElem::ONE), f.root_of_unity(7, 1).unwrap());
        let mut total = f.zero();
        for a in ctx.elements() {
            total += &f.e_o(&ctx, a);
        }
        assert!(total.is_zero());
    }

    #[test]
    fn inverse_and_norm() {
        let f = field();
        let a = &f.zeta(1) + &f.from_int(2);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, f.one());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn subfield_membership() {
        let f = field();
        let z3 = f.root_of_unity(3, 1).unwrap();
        let z7 = f.root_of_unity(7, 1).unwrap();
        assert!(z3.in_z_zeta_n());
        assert!(!z7.in_q_zeta_n());
        let half = f.from_rational(&BigRational::new(1.into(), 2.into()));
        assert!((&z3 * &half).in_q_zeta_n());
        assert!(!(&z3 * &half).in_z_zeta_n());
        // the sum of all primitive 7th roots is -1, inside Z
        let mut s = f.zero();
        for b in 1..7 {
            s += &f.root_of_unity(7, b).unwrap();
        }
        assert!(s.in_z_zeta_n());
        assert_eq!(s, f.from_int(-1));
    }

    #[test]
    fn repr_round_trip() {
        let f = field();
        let a = (&f.zeta(5) + &f.from_int(3)).scale(&BigRational::new(2.into(), 9.into()));
        let back = f.parse_repr(&a.to_repr()).unwrap();
        assert_eq!(a, back);
        let bad = CycRepr {
            den: "0".into(),
            num: vec!["1".into(); f.degree()],
        };
        assert!(f.parse_repr(&bad).is_err());
    }

    fn arb_elem() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, 21)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let f = field();
            let (a, b, c) = (f.from_counts(&a), f.from_counts(&b), f.from_counts(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn conj_product_is_real(a in arb_elem()) {
            let f = field();
            let a = f.from_counts(&a);
            let prod = &a * &a.conj();
            let (re, im) = prod.complex_eval();
            prop_assert!(im.abs() < 1e-6 * (1.0 + re.abs()));
            prop_assert_eq!(prod.conj(), prod);
        }

        #[test]
        fn galois_is_multiplicative(a in arb_elem(), b in arb_elem(), t in 1i64..21) {
            prop_assume!(gcd_u64(t as u64, 21) == 1);
            let f = field();
            let (a, b) = (f.from_counts(&a), f.from_counts(&b));
            prop_assert_eq!((&a * &b).galois(t), &a.galois(t) * &b.galois(t));
        }
    }
}
