use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[0] = -1;
        v[n] += 1;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        let mut acc: i64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x).and_then(|a| a.checked_add(c)).ok_or(Error::Overflow("poly eval"))?;
        }
        Ok(acc)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n)
            .map(|i| self.coeff(i).checked_add(o.coeff(i)).ok_or(Error::Overflow("poly add")))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n)
            .map(|i| self.coeff(i).checked_sub(o.coeff(i)).ok_or(Error::Overflow("poly sub")))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a as i128 * b as i128;
            }
        }
        out.into_iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Overflow("poly mul")))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Division by a monic divisor: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        if !d.is_monic() {
            return Err(Error::BadPolynomial("divisor must be monic".into()));
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        let mut q = vec![0i128; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd];
            q[i] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= c * dj as i128;
                }
            }
        }
        let conv = |v: Vec<i128>| -> Result<Self> {
            v.into_iter()
                .map(|c| i64::try_from(c).map_err(|_| Error::Overflow("poly div")))
                .collect::<Result<Vec<_>>>()
                .map(Self::new)
        };
        r.truncate(dd);
        Ok((conv(q)?, conv(r)?))
    }

    /// Exact quotient by a monic divisor.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_monic(d)?;
        if !r.is_zero() {
            return Err(Error::BadPolynomial(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem_monic(self)?.1.is_zero())
    }

    /// `p(X) mod m(X)` with `m` monic.
    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.div_rem_monic(m)?.1)
    }

    /// `p(X^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        let mut v = vec![0; (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::new(v)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{a}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{a}X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn cache() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static C: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, by dividing `X^n - 1` by the smaller `Phi_d`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic factor divides");
        }
    }
    cache().lock().unwrap().insert(n, p.clone());
    p
}

/// `Psi_d = (X^d - 1) / (X - 1)`.
pub fn psi(d: u64) -> IntPolynomial {
    IntPolynomial::x_pow_minus_one(d as usize)
        .div_exact(&IntPolynomial::x_pow_minus_one(1))
        .expect("X - 1 divides X^d - 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_six() {
        assert_eq!(cyclotomic(6), IntPolynomial::new(vec![1, -1, 1]));
        assert_eq!(cyclotomic(6).to_string(), "X^2 - X + 1");
        assert_eq!(cyclotomic(1).to_string(), "X - 1");
    }

    #[test]
    fn product_twelve() {
        let mut p = IntPolynomial::one();
        for d in divisors(12) {
            p = p.mul(&cyclotomic(d)).unwrap();
        }
        assert_eq!(p, IntPolynomial::x_pow_minus_one(12));
    }

    #[test]
    fn division() {
        let f = IntPolynomial::x_pow_minus_one(6);
        let (q, r) = f.div_rem_monic(&cyclotomic(3)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.mul(&cyclotomic(3)).unwrap(), f);
    }
}
