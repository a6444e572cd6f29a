//! Hecke relations at infinity and at finite primes, the `PGL_2(F_q)`
//! action on `r`, and the integrality statement for `rho_0`.

use crate::cyclokit::CycNum;
use crate::fieldkit::{FieldCtx, FqElem};
use crate::polyring::{is_irreducible, Poly, RatFunc};

use super::psi::{index_geometry, SignRule};
use super::{Result, ThetaCtx, ThetaError};

/// `(a b; c d)` acting by `x -> (a x + b) / (c x + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mobius2x2 {
    pub a: FqElem,
    pub b: FqElem,
    pub c: FqElem,
    pub d: FqElem,
}

impl Mobius2x2 {
    pub fn new(k: &FieldCtx, a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Result<Mobius2x2> {
        let g = Mobius2x2 { a, b, c, d };
        if g.det(k).is_zero() {
            return Err(ThetaError::Singular);
        }
        Ok(g)
    }

    pub fn identity() -> Mobius2x2 {
        Mobius2x2 {
            a: FqElem::ONE,
            b: FqElem::ZERO,
            c: FqElem::ZERO,
            d: FqElem::ONE,
        }
    }

    pub fn det(&self, k: &FieldCtx) -> FqElem {
        k.sub(k.mul(self.a, self.d), k.mul(self.b, self.c))
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, k: &FieldCtx, other: &Mobius2x2) -> Mobius2x2 {
        let dot = |x: FqElem, y: FqElem, z: FqElem, w: FqElem| k.add(k.mul(x, y), k.mul(z, w));
        Mobius2x2 {
            a: dot(self.a, other.a, self.b, other.c),
            b: dot(self.a, other.b, self.b, other.d),
            c: dot(self.c, other.a, self.d, other.c),
            d: dot(self.c, other.b, self.d, other.d),
        }
    }

    /// One representative per class of `PGL_2(F_q)`: the last nonzero entry
    /// of `(c, d)` scaled to 1.
    pub fn pgl2_representatives(k: &FieldCtx) -> Vec<Mobius2x2> {
        let mut out = Vec::new();
        for a in k.elements() {
            for b in k.elements() {
                for c in k.elements() {
                    for d in k.elements() {
                        let normalized = if !d.is_zero() {
                            d == FqElem::ONE
                        } else {
                            c == FqElem::ONE
                        };
                        if !normalized {
                            continue;
                        }
                        if let Ok(g) = Mobius2x2::new(k, a, b, c, d) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }
}

/// `p((a x + b) / (c x + d)) * (c x + d)^deg(p)` as a polynomial.
fn homogenize(k: &FieldCtx, p: &Poly, g: &Mobius2x2) -> Poly {
    let top = Poly::new(vec![g.b, g.a]);
    let bottom = Poly::new(vec![g.d, g.c]);
    let deg = p.deg();
    let mut acc = Poly::zero();
    for (j, &cj) in p.coeffs().iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let term = top
            .pow(k, j as u32)
            .mul(k, &bottom.pow(k, (deg - j) as u32))
            .scale(k, cj);
        acc = acc.add(k, &term);
    }
    acc
}

/// `r_i^g(x) = r((a x + b)/(c x + d)) * (Delta / (c x + d)^2)^(1 - i)`.
pub fn pgl2_transform(k: &FieldCtx, r: &RatFunc, g: &Mobius2x2, i: i64) -> Result<RatFunc> {
    let delta = g.det(k);
    if delta.is_zero() {
        return Err(ThetaError::Singular);
    }
    if r.is_zero() {
        return Ok(r.clone());
    }
    let num = homogenize(k, r.num(), g);
    let den = homogenize(k, r.den(), g);
    let lin = Poly::new(vec![g.d, g.c]);
    let e = r.den().deg() as i64 - r.num().deg() as i64 - 2 + 2 * i;
    let scale = k.pow(delta, 1 - i)?;
    let (num, den) = if e >= 0 {
        (num.mul(k, &lin.pow(k, e as u32)), den)
    } else {
        (num, den.mul(k, &lin.pow(k, (-e) as u32)))
    };
    Ok(RatFunc::new(k, num.scale(k, scale), den)?)
}

impl ThetaCtx {
    /// Multiplier `m` with `rho_0(r, from) = m * rho_0(r, to)`, where
    /// `{from, to} = {i, i'}` at `sigma`. Going down it is `eta`; going up it is
    /// `s (eps chi)(-1)^(i - i') tau(eps chi^(i - i')) q^(-a - 1)` when
    /// `eta = s tau(eps chi^(i' - i)) q^a`. This is the multiplier for monic
    /// `r`; [`ThetaCtx::unit_twist`] supplies the factor for other leading
    /// coefficients.
    pub fn hecke_infinity_multiplier(&self, sigma: i64, from: u32, to: u32) -> CycNum {
        if from < to {
            return self.eta_for(sigma, from, to);
        }
        let (lo, hi) = (to as i64, from as i64);
        let norm = self.normalization();
        let sign_exp = match norm.sign {
            SignRule::None => 0,
            SignRule::ISigma => lo * sigma,
            SignRule::IPrimeSigma => hi * sigma,
        };
        let q = self.q_pow(-norm.q_slope * (hi - lo) - norm.q_offset - 1);
        &(&self.eps_chi_minus_one_pow(sign_exp + hi - lo) * self.tau(hi - lo)) * &q
    }

    /// Both sides of the Hecke relation at infinity linking `rho_0(r, i)` to
    /// `rho_0(r, i')`.
    pub fn hecke_infinity(&self, r: &RatFunc, i: i64) -> Result<(CycNum, CycNum)> {
        let lhs = self.rho0(r, i)?;
        let g = lhs.geometry;
        if g.i == g.i_prime {
            return Err(ThetaError::IEqualsIPrime(g.i));
        }
        let other = self.rho0(r, g.i_prime as i64)?;
        let m =
            &self.hecke_infinity_multiplier(g.sigma, g.i, g.i_prime) * &self.unit_twist(&lhs.reduced, g.i, g.i_prime);
        Ok((lhs.value, &m * &other.value))
    }

    /// Whether the two multipliers at infinity compose to the identity.
    pub fn hecke_infinity_composes(&self, sigma: i64, lo: u32, hi: u32) -> bool {
        (&self.hecke_infinity_multiplier(sigma, lo, hi) * &self.hecke_infinity_multiplier(sigma, hi, lo)).is_one()
    }

    /// The scalar `K` and target `(r_o pi^(n-2-j), i - (j+1) deg pi)` of the
    /// finite Hecke relation `rho_0(r_o pi^j, i) = K rho_0(target)`.
    pub fn hecke_finite_multiplier(&self, r_o: &Poly, pi: &Poly, j: u32, i: i64) -> Result<(CycNum, Poly, i64)> {
        let k = &self.k;
        let n = self.n() as i64;
        self.check_finite_args(r_o, pi, j)?;
        let i = i.rem_euclid(n);
        let m = (j as i64 + 1) * pi.deg() as i64;
        let frac = i - (i - m).rem_euclid(n) - m.rem_euclid(n);
        debug_assert_eq!(frac % n, 0);
        let q_exp = frac / n * (n + 1) + m.rem_euclid(n) - m.div_euclid(n);
        let sign = self.eps_chi_minus_one_pow(i * m);
        let g = self.gauss_sum_bruteforce_pow(&r_o.neg(k), pi, j as i64 + 1)?;
        let target = r_o.mul(k, &pi.pow(k, self.n() - 2 - j));
        let mult = &(&sign * &self.q_pow(q_exp)) * &g;
        Ok((mult, target, (i - m).rem_euclid(n)))
    }

    /// Whether applying the finite relation at `j` and then at `n - 2 - j`
    /// returns to `(r_o pi^j, i)` with total multiplier 1.
    pub fn hecke_finite_chain_composes(&self, r_o: &Poly, pi: &Poly, j: u32, i: i64) -> Result<bool> {
        let n = self.n();
        if j + 2 > n {
            return Err(ThetaError::Precondition(format!("j = {j} must be at most n - 2")));
        }
        let (m1, _, i1) = self.hecke_finite_multiplier(r_o, pi, j, i)?;
        let (m2, back, i2) = self.hecke_finite_multiplier(r_o, pi, n - 2 - j, i1)?;
        let start = r_o.mul(&self.k, &pi.pow(&self.k, j));
        Ok((&m1 * &m2).is_one() && back == start && i2 == i.rem_euclid(n as i64))
    }

    fn check_finite_args(&self, r_o: &Poly, pi: &Poly, j: u32) -> Result<()> {
        let k = &self.k;
        if !pi.is_monic() || !is_irreducible(k, pi) {
            return Err(ThetaError::Precondition("pi must be monic irreducible".into()));
        }
        if r_o.is_zero() || !r_o.gcd(k, pi).is_one() {
            return Err(ThetaError::Precondition("r_o must be nonzero and coprime to pi".into()));
        }
        if j >= self.n() {
            return Err(ThetaError::Precondition(format!("j = {j} must be below n")));
        }
        Ok(())
    }

    /// Both sides of the Hecke relation at the finite prime `pi`.
    pub fn hecke_finite(&self, r_o: &Poly, pi: &Poly, j: u32, i: i64) -> Result<(CycNum, CycNum)> {
        let k = &self.k;
        self.check_finite_args(r_o, pi, j)?;
        let lhs_r = RatFunc::from_poly(r_o.mul(k, &pi.pow(k, j)));
        let lhs = self.rho0(&lhs_r, i)?.value;
        if j == self.n() - 1 {
            return Ok((lhs, self.cyc.zero()));
        }
        let (mult, target, i2) = self.hecke_finite_multiplier(r_o, pi, j, i)?;
        let rhs = self.rho0(&RatFunc::from_poly(target), i2)?.value;
        Ok((lhs, &mult * &rhs))
    }

    /// Whether `rho * q^((n+1) R') / tau(eps chi^i)` lies in `Z[zeta_n]`,
    /// `R' = floor((1 + deg r - i) / n)`.
    pub fn integrality_holds(&self, deg_r: usize, i: i64, rho: &CycNum) -> bool {
        if rho.is_zero() {
            return true;
        }
        let n = self.n() as i64;
        let g = index_geometry(deg_r, i, self.n());
        let scaled = rho * &self.q_pow((n + 1) * g.big_r);
        let tau_inv = self.tau(g.i as i64).inv().expect("tau is nonzero");
        (&scaled * &tau_inv).in_z_zeta_n()
    }
}
