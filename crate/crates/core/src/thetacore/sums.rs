//! The coefficient sums `C(r, eps, i)` and `C*(r, eps, i)`.

use crate::charkit::symbol_log;
use crate::cyclokit::CycNum;
use crate::polyring::{enumerate_monic, factorize, monic_count, monic_from_index_into, resultant, Poly};

use super::{par_counts, Result, ThetaCtx, ThetaError};

/// How `C(r, eps, i)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CStrategy {
    /// Every monic `c` split as `c1 c2`, `c1 | r^inf`, `c2` coprime to `r`; the
    /// `c1` part is brute-forced, the `c2` part counted in Davenport-Hasse form.
    Direct,
    /// The `r*` decomposition over `C*(r r*^(n-2), eps, i - deg r*)`.
    Decomposed,
    /// `sum_c gauss_sum_bruteforce(r, c)`; only for tiny cases.
    BruteForce,
}

impl ThetaCtx {
    /// Per-class counts over `Z/n` of `mu(c) * [log of (r/c)^(-1) (c'/c) (c1/c)(c/c1)]`
    /// for monic `c` of degree `d` coprime to `r`, with the twist by `c1` optional.
    ///
    /// `mu(c)` of a squarefree `c` is read off the quadratic character of its
    /// discriminant, `mu(c) = omega(D(c)) (-1)^deg(c)`.
    fn coprime_counts(&self, r: &Poly, d: usize, twist: Option<&Poly>) -> Vec<i64> {
        let k = &self.k;
        let n = k.n() as usize;
        if d == 0 {
            let mut out = vec![0i64; n];
            out[0] = 1;
            return out;
        }
        let flip_disc = (d * (d - 1) / 2) % 2 == 1;
        let odd_deg = d % 2 == 1;
        let minus_one = k.neg(crate::fieldkit::FqElem::ONE);
        par_counts(monic_count(k, d), n, Poly::zero, |idx, c, bins| {
            monic_from_index_into(k, d, idx, c);
            let rr = resultant(k, c, r);
            if rr.is_zero() {
                return;
            }
            let dc = c.derivative(k);
            let rd = if d == 1 {
                crate::fieldkit::FqElem::ONE
            } else {
                resultant(k, c, &dc)
            };
            if rd.is_zero() {
                return;
            }
            let disc = if flip_disc { k.mul(rd, minus_one) } else { rd };
            let square = k.log(disc).expect("nonzero").is_multiple_of(2);
            let mu: i64 = if square != odd_deg { 1 } else { -1 };
            let mut e = k.chi_log(rd).expect("nonzero") as usize + n - k.chi_log(rr).expect("nonzero") as usize;
            if let Some(c1) = twist {
                let a = resultant(k, c, c1);
                let b = resultant(k, c1, c);
                e += k.chi_log(a).expect("coprime") as usize + k.chi_log(b).expect("coprime") as usize;
            }
            bins[e % n] += mu;
        })
    }

    /// `C*(r, eps, i)`, in the form
    /// `(-1)^i tau(eps chi)^i sum_c mu(c) conj(eps((r/c)_n)) eps((c'/c)_n)`.
    pub fn c_star(&self, r: &Poly, i: usize) -> Result<CycNum> {
        if r.is_zero() {
            return Err(ThetaError::Precondition("r must be nonzero".into()));
        }
        let counts = self.coprime_counts(r, i, None);
        let inner = self.cyc_from_n_counts(&counts);
        Ok(&(-self.tau(1)).pow(i as u32) * &inner)
    }

    /// `C*(r, eps, i)` as a plain sum of Davenport-Hasse Gauss sums.
    pub fn c_star_sum_dh(&self, r: &Poly, i: usize) -> Result<CycNum> {
        let k = &self.k;
        let mut acc = self.cyc.zero();
        for c in enumerate_monic(k, i) {
            if r.gcd(k, &c).is_one() {
                acc += &self.gauss_sum_dh(r, &c)?;
            }
        }
        Ok(acc)
    }

    /// The `r*(S) = prod_(pi in S) pi^(e(pi)+1)` with `deg r* <= i` and
    /// `g(r, eps, r*) != 0`, each with its Gauss sum.
    ///
    /// Requires that no prime divides `r` to a power `>= n - 1`.
    pub fn r_star_set(&self, r: &Poly, i: usize) -> Result<Vec<(Poly, CycNum)>> {
        let k = &self.k;
        let f = factorize(k, r)?;
        if let Some((pi, e)) = f.factors.iter().find(|(_, e)| *e + 1 >= k.n()) {
            return Err(ThetaError::Precondition(format!(
                "{pi:?}^{e} divides r; exponents must stay below n - 1"
            )));
        }
        let m = f.factors.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            let mut rs = Poly::one();
            for (j, (pi, e)) in f.factors.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    rs = rs.mul(k, &pi.pow(k, e + 1));
                }
            }
            if rs.deg() > i {
                continue;
            }
            let g = self.gauss_sum_bruteforce(r, &rs)?;
            if !g.is_zero() {
                out.push((rs, g));
            }
        }
        Ok(out)
    }

    /// `C(r, eps, i)` through the `r*` decomposition.
    pub fn c_full_decomposed(&self, r: &Poly, i: usize) -> Result<CycNum> {
        let k = &self.k;
        let n = k.n();
        let mut acc = self.cyc.zero();
        for (rs, g) in self.r_star_set(r, i)? {
            let d = rs.deg();
            let twist = self.eps_chi_minus_one_pow((i as i64 - 1) * d as i64);
            let shifted = r.mul(k, &rs.pow(k, n - 2));
            let cs = self.c_star(&shifted, i - d)?;
            acc += &(&(&g * &twist) * &cs);
        }
        Ok(acc)
    }

    /// Every monic `c1 | r^inf` with `deg c1 <= i` and `g(r, eps, c1) != 0`, with
    /// that Gauss sum. Each prime power `pi^a` is brute-forced once, skipping
    /// `a >= ord_pi(r) + 2` where the sum vanishes, and the products are
    /// assembled by twisted multiplicativity.
    pub fn r_part_gauss_sums(&self, r: &Poly, i: usize) -> Result<Vec<(Poly, CycNum)>> {
        let k = &self.k;
        let mut out = vec![(Poly::one(), self.cyc.one())];
        for (pi, e) in factorize(k, r)?.factors {
            let mut powers = Vec::new();
            let mut a = 1;
            while a <= e + 1 && a as usize * pi.deg() <= i {
                let pa = pi.pow(k, a);
                let g = self.gauss_sum_bruteforce(r, &pa)?;
                if !g.is_zero() {
                    powers.push((pa, g));
                }
                a += 1;
            }
            let mut next = Vec::with_capacity(out.len() * (powers.len() + 1));
            for (base, gb) in &out {
                next.push((base.clone(), gb.clone()));
                for (pa, ga) in &powers {
                    if base.deg() + pa.deg() > i {
                        continue;
                    }
                    let mut g = gb * ga;
                    if !base.is_one() {
                        let l = symbol_log(k, base, pa).expect("coprime") + symbol_log(k, pa, base).expect("coprime");
                        g = &g * &self.eps_of_log(l as i64);
                    }
                    next.push((base.mul(k, pa), g));
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// `C(r, eps, i)` as the sum of every Gauss sum with monic modulus of degree `i`,
    /// each split into its `r`-part and its coprime part.
    pub fn c_full_direct(&self, r: &Poly, i: usize) -> Result<CycNum> {
        if r.is_zero() {
            return Err(ThetaError::Precondition("r must be nonzero".into()));
        }
        let minus_tau = -self.tau(1);
        let mut acc = self.cyc.zero();
        for (c1, g1) in self.r_part_gauss_sums(r, i)? {
            let d2 = i - c1.deg();
            let twist = if c1.is_one() { None } else { Some(&c1) };
            let counts = self.coprime_counts(r, d2, twist);
            if counts.iter().all(|&v| v == 0) {
                continue;
            }
            let inner = &self.cyc_from_n_counts(&counts) * &minus_tau.pow(d2 as u32);
            acc += &(&g1 * &inner);
        }
        Ok(acc)
    }

    /// `C(r, eps, i)` by brute force in every term.
    pub fn c_full_bruteforce(&self, r: &Poly, i: usize) -> Result<CycNum> {
        let mut acc = self.cyc.zero();
        for c in enumerate_monic(&self.k, i) {
            acc += &self.gauss_sum_bruteforce(r, &c)?;
        }
        Ok(acc)
    }

    pub fn c_full_with(&self, r: &Poly, i: usize, strategy: CStrategy) -> Result<CycNum> {
        match strategy {
            CStrategy::Direct => self.c_full_direct(r, i),
            CStrategy::Decomposed => self.c_full_decomposed(r, i),
            CStrategy::BruteForce => self.c_full_bruteforce(r, i),
        }
    }

    /// `C(r, eps, i)`, memoized by `(r, i)`.
    pub fn c_full(&self, r: &Poly, i: usize) -> Result<CycNum> {
        let key = Self::poly_key(r, i);
        if let Some(v) = self.memo_get(&key) {
            return Ok(v);
        }
        let v = self.c_full_direct(r, i)?;
        self.memo_insert(key, v.clone());
        Ok(v)
    }
}
