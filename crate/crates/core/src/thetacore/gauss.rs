//! Gauss sums `g(r, eps, c)` by definition and in Davenport-Hasse form.

use crate::charkit::{e_trace, residue_symbol, SymbolValue};
use crate::cyclokit::CycNum;
use crate::polyring::{factorize, mobius, Poly};

use super::{par_counts, residue_from_index, Result, ThetaCtx, ThetaError};

impl ThetaCtx {
    /// `g(r, eps, c) = sum_(xi mod c) eps((xi/c)_n) e(r xi / c)` by full enumeration.
    pub fn gauss_sum_bruteforce(&self, r: &Poly, c: &Poly) -> Result<CycNum> {
        self.gauss_sum_bruteforce_pow(r, c, 1)
    }

    /// Brute-force Gauss sum for the character `eps^eps_pow`.
    pub fn gauss_sum_bruteforce_pow(&self, r: &Poly, c: &Poly, eps_pow: i64) -> Result<CycNum> {
        Ok(self
            .gauss_sums_bruteforce_pow(std::slice::from_ref(r), c, eps_pow)?
            .remove(0))
    }

    /// `g(r, eps, c)` by full enumeration for each `r` in `rs`; the symbol
    /// `(xi/c)_n` is evaluated once per residue and shared across `rs`.
    pub fn gauss_sums_bruteforce(&self, rs: &[Poly], c: &Poly) -> Result<Vec<CycNum>> {
        self.gauss_sums_bruteforce_pow(rs, c, 1)
    }

    fn gauss_sums_bruteforce_pow(&self, rs: &[Poly], c: &Poly, eps_pow: i64) -> Result<Vec<CycNum>> {
        let k = &self.k;
        let cyc = &self.cyc;
        if c.is_zero() {
            return Err(ThetaError::Precondition("c must be nonzero".into()));
        }
        let d = c.deg();
        let primes: Vec<(Poly, u32, u128)> = factorize(k, c)?
            .factors
            .into_iter()
            .map(|(pi, e)| {
                let exp = ((k.q() as u128).pow(pi.deg() as u32) - 1) / k.n() as u128;
                (pi, e, exp)
            })
            .collect();
        let r_mods = rs
            .iter()
            .map(|r| r.rem(k, c))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let n = k.n() as i64;
        let step = (k.eps_exp() as i64 * eps_pow).rem_euclid(n);
        let big_n = cyc.order() as usize;
        let total = (k.q() as u64).pow(d as u32);
        let counts = par_counts(total, big_n * rs.len(), Poly::zero, |idx, xi, bins| {
            residue_from_index(k, d, idx, xi);
            let mut log = 0i64;
            for (pi, e, exp) in &primes {
                let v = xi.powmod(k, *exp, pi).expect("nonzero modulus");
                if v.is_zero() {
                    return;
                }
                log += *e as i64 * k.mu_n_log(v.lc()).expect("power residue in mu_n") as i64;
            }
            let sym = cyc.exp_zeta_n(step * log);
            for (slot, r_mod) in r_mods.iter().enumerate() {
                let num = xi.mul(k, r_mod);
                let tr = e_trace(k, &num, c);
                let ex = sym + cyc.exp_zeta_p(tr as i64);
                bins[slot * big_n + ex as usize % big_n] += 1;
            }
        });
        Ok(counts.chunks(big_n).map(|ch| cyc.from_counts(ch)).collect())
    }

    /// `mu(c) eps((r/c)_n)^(-1) eps((c'/c)_n) (-tau(eps chi))^deg(c)` for monic `c`
    /// coprime to `r`.
    pub fn gauss_sum_dh(&self, r: &Poly, c: &Poly) -> Result<CycNum> {
        let k = &self.k;
        if !c.is_monic() {
            return Err(ThetaError::Precondition("c must be monic".into()));
        }
        if !r.gcd(k, c).is_one() {
            return Err(ThetaError::NotCoprime);
        }
        let mu = mobius(k, c)?;
        if mu == 0 {
            return Ok(self.cyc.zero());
        }
        let sym = |a: &Poly| -> Result<i64> {
            match residue_symbol(k, a, c)? {
                SymbolValue::Zero => Err(ThetaError::NotCoprime),
                s => Ok(s.log(k).expect("nonzero symbol") as i64),
            }
        };
        let e = sym(&c.derivative(k))? - sym(r)?;
        let minus_tau = -self.tau(1);
        let value = &self.eps_of_log(e) * &minus_tau.pow(c.deg() as u32);
        Ok(value.scale_int(mu as i64))
    }

    /// Davenport-Hasse form when `gcd(r, c) = 1`, brute force otherwise.
    pub fn gauss_sum(&self, r: &Poly, c: &Poly) -> Result<CycNum> {
        let c = c.monic(&self.k);
        match self.gauss_sum_dh(r, &c) {
            Err(ThetaError::NotCoprime) => self.gauss_sum_bruteforce(r, &c),
            other => other,
        }
    }
}
