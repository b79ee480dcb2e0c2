use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::{cyclotomic, IntPolynomial};
use crate::arith::{divisors, mobius, prime_divisors};
use crate::error::{Error, Result};

/// The `d_k`, `e_k` sequences and the `E_k`, `F_k`, `G_k` polynomials for `n`.
///
/// `e_polys` has length `2^r`; `f_polys[k - 1]` and `g_polys[k - 1]` hold `F_k`, `G_k`
/// for `1 <= k <= 2^r - 1`. Factor lists give the `t` with `Phi_t` dividing the polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevissageSchedule {
    pub n: u64,
    pub primes: Vec<u64>,
    pub d: Vec<u64>,
    pub e: Vec<u64>,
    pub e_polys: Vec<IntPolynomial>,
    pub f_polys: Vec<IntPolynomial>,
    pub g_polys: Vec<IntPolynomial>,
    pub f_factors: Vec<Vec<u64>>,
    pub g_factors: Vec<Vec<u64>>,
}

impl DevissageSchedule {
    /// Number `2^r` of terms.
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn r(&self) -> usize {
        self.primes.len()
    }

    pub fn big_e(&self, k: usize) -> &IntPolynomial {
        &self.e_polys[k]
    }

    pub fn big_f(&self, k: usize) -> &IntPolynomial {
        assert!(k >= 1 && k < self.len(), "F_k needs 1 <= k < 2^r");
        &self.f_polys[k - 1]
    }

    pub fn big_g(&self, k: usize) -> &IntPolynomial {
        assert!(k >= 1 && k < self.len(), "G_k needs 1 <= k < 2^r");
        &self.g_polys[k - 1]
    }

    /// Checks every structural invariant of the schedule.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let len = self.len();
        let bad = |what: String| Err(Error::BadPolynomial(format!("schedule n = {n}: {what}")));
        if len != 1 << self.r() {
            return bad("length is not 2^r".into());
        }
        let mut seen = self.d.clone();
        seen.sort_unstable();
        seen.dedup();
        let mut sqfree: Vec<u64> = divisors(n).into_iter().filter(|&x| mobius(x) != 0).collect();
        sqfree.sort_unstable();
        if seen != sqfree || seen.len() != len {
            return bad("d_k are not the squarefree divisors each once".into());
        }
        let xn = IntPolynomial::x_pow_minus_one(n as usize);
        for k in 0..len {
            if self.e[k] * self.d[k] != n {
                return bad(format!("e_{k} != n/d_{k}"));
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            if mobius(self.d[k]) != sign {
                return bad(format!("mu(d_{k}) != (-1)^{k}"));
            }
            if self.e_polys[k] != IntPolynomial::x_pow_minus_one(self.e[k] as usize) {
                return bad(format!("E_{k} != X^e_{k} - 1"));
            }
        }
        for k in 1..len {
            let (f, g) = (self.big_f(k), self.big_g(k));
            if !f.is_monic() || !g.is_monic() {
                return bad(format!("F_{k} or G_{k} not monic"));
            }
            if !f.divides(&xn)? || !g.divides(&xn)? {
                return bad(format!("F_{k} or G_{k} does not divide X^n - 1"));
            }
            if &self.e_polys[k].mul(g)? != f {
                return bad(format!("F_{k} != E_{k} G_{k}"));
            }
            if k % 2 == 1 && k + 1 < len && self.big_f(k) != self.big_f(k + 1) {
                return bad(format!("F_{k} != F_{}", k + 1));
            }
            if k % 2 == 0 && self.big_g(k) != self.big_g(k + 1) {
                return bad(format!("G_{k} != G_{}", k + 1));
            }
        }
        if self.big_f(len - 1) != &self.e_polys[0] {
            return bad("F_{2^r-1} != E_0".into());
        }
        if self.big_g(1) != &cyclotomic(n) {
            return bad("G_1 != Phi_n".into());
        }
        Ok(())
    }
}

/// Signed product `prod E_j^{s_j}` as a set of cyclotomic indices; exponents must be 0 or 1.
fn signed_factors(n: u64, e: &[u64], terms: &[(usize, i32)]) -> Result<Vec<u64>> {
    let mut exps: BTreeMap<u64, i32> = BTreeMap::new();
    for &(j, s) in terms {
        for t in divisors(e[j]) {
            *exps.entry(t).or_default() += s;
        }
    }
    let mut out = Vec::new();
    for (t, x) in exps {
        match x {
            0 => {}
            1 => out.push(t),
            _ => return Err(Error::BadPolynomial(format!("n = {n}: Phi_{t} has exponent {x}"))),
        }
    }
    Ok(out)
}

fn product_of_cyclotomics(ts: &[u64]) -> Result<IntPolynomial> {
    ts.iter().try_fold(IntPolynomial::one(), |acc, &t| acc.mul(&cyclotomic(t)))
}

/// The same signed product evaluated by multiplying out and dividing.
fn by_division(e_polys: &[IntPolynomial], terms: &[(usize, i32)]) -> Result<IntPolynomial> {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for &(j, s) in terms {
        if s > 0 {
            num = num.mul(&e_polys[j])?;
        } else {
            den = den.mul(&e_polys[j])?;
        }
    }
    num.div_exact(&den)
}

/// Alternating terms `E_from E_{from+1}^{-1} ... E_{2^r-1}^{-1} E_0`.
fn alternating(from: usize, len: usize) -> Vec<(usize, i32)> {
    let mut terms: Vec<(usize, i32)> =
        (from..len).map(|j| (j, if (j - from) % 2 == 0 { 1 } else { -1 })).collect();
    terms.push((0, 1));
    terms
}

/// Builds the schedule for `n >= 3`; primes ascend with 2 moved last.
pub fn devissage_schedule(n: u64) -> Result<DevissageSchedule> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} must be >= 3")));
    }
    let mut primes: Vec<u64> = prime_divisors(n).into_iter().filter(|&p| p != 2).collect();
    if n % 2 == 0 {
        primes.push(2);
    }
    let r = primes.len();
    let len = 1usize << r;
    let mut d = vec![1u64; len];
    d[1] = primes[0];
    for s in 2..=r {
        for k in (1 << (s - 1))..(1 << s) {
            d[k] = primes[s - 1] * d[(1 << s) - k - 1];
        }
    }
    let e: Vec<u64> = d.iter().map(|&x| n / x).collect();
    let e_polys: Vec<IntPolynomial> = e.iter().map(|&x| IntPolynomial::x_pow_minus_one(x as usize)).collect();

    let mut f_terms = Vec::with_capacity(len - 1);
    let mut g_terms = Vec::with_capacity(len - 1);
    for k in 1..len {
        let f = if k == len - 1 {
            vec![(0, 1)]
        } else if k % 2 == 0 {
            alternating(k, len)
        } else {
            alternating(k + 1, len)
        };
        let odd = if k % 2 == 1 { k } else { k + 1 };
        let mut g = vec![(odd, -1)];
        g.extend(alternating(odd + 1, len));
        f_terms.push(f);
        g_terms.push(g);
    }

    let mut f_polys = Vec::with_capacity(len - 1);
    let mut g_polys = Vec::with_capacity(len - 1);
    let mut f_factors = Vec::with_capacity(len - 1);
    let mut g_factors = Vec::with_capacity(len - 1);
    for (ft, gt) in f_terms.iter().zip(&g_terms) {
        let ff = signed_factors(n, &e, ft)?;
        let gf = signed_factors(n, &e, gt)?;
        let fp = product_of_cyclotomics(&ff)?;
        let gp = product_of_cyclotomics(&gf)?;
        if fp != by_division(&e_polys, ft)? || gp != by_division(&e_polys, gt)? {
            return Err(Error::BadPolynomial(format!("n = {n}: factor and division routes differ")));
        }
        f_polys.push(fp);
        g_polys.push(gp);
        f_factors.push(ff);
        g_factors.push(gf);
    }
    let s = DevissageSchedule { n, primes, d, e, e_polys, f_polys, g_polys, f_factors, g_factors };
    s.check()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n6() {
        let s = devissage_schedule(6).unwrap();
        assert_eq!(s.d, vec![1, 3, 6, 2]);
        assert_eq!(s.e, vec![6, 2, 1, 3]);
        assert_eq!(s.big_f(2), &IntPolynomial::new(vec![-1, 1, 0, -1, 1]));
        assert_eq!(s.big_f(1), s.big_f(2));
        assert_eq!(s.big_g(1), &cyclotomic(6));
    }

    #[test]
    fn n105() {
        let s = devissage_schedule(105).unwrap();
        assert_eq!(s.e, vec![105, 35, 7, 21, 3, 1, 5, 15]);
    }

    #[test]
    fn prime() {
        let s = devissage_schedule(7).unwrap();
        assert_eq!(s.e, vec![7, 1]);
        assert_eq!(s.big_f(1), &IntPolynomial::x_pow_minus_one(7));
        assert_eq!(s.big_g(1), &cyclotomic(7));
    }
}
