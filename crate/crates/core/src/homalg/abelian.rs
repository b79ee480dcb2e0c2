use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::normal::elementary_divisors;
use crate::error::{Error, Result};
use crate::mat::IMat;

/// Finitely generated abelian group `Z^r + Z/t_1 + ... + Z/t_k` with `t_i | t_{i+1}`, `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(0, &[n])
    }

    /// Canonicalize an arbitrary list of cyclic orders (0 means infinite).
    pub fn from_orders(free_rank: usize, orders: &[u64]) -> Self {
        let mut free = free_rank;
        let mut primes: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &o in orders {
            if o == 0 {
                free += 1;
                continue;
            }
            let mut n = o;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    primes.entry(p).or_default().push(q);
                }
                p += 1;
            }
            if n > 1 {
                primes.entry(n).or_default().push(n);
            }
        }
        let len = primes.values().map(|v| v.len()).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for v in primes.values_mut() {
            v.sort_unstable();
            let off = len - v.len();
            for (i, q) in v.iter().enumerate() {
                torsion[off + i] *= q;
            }
        }
        AbelianInvariants { free_rank: free, torsion }
    }

    /// `Z^n / colspan(gens)`.
    pub fn cokernel(gens: &IMat) -> Result<Self> {
        let n = gens.rows();
        if gens.cols() == 0 {
            return Ok(AbelianInvariants { free_rank: n, torsion: vec![] });
        }
        let d = elementary_divisors(gens)?;
        let torsion = d
            .iter()
            .filter(|x| !x.is_one())
            .map(|x| x.to_u64().ok_or(Error::Overflow("torsion order")))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianInvariants { free_rank: n - d.len(), torsion })
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, &t| a * t)
    }

    /// Number of cyclic factors of even order, i.e. the 2-rank.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|t| *t % 2 == 0).count()
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(&other.torsion);
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> u64 {
        self.torsion.iter().fold(1u64, |a, &t| a.lcm(&t))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbelianInvariants {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut free = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                free += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free += r.parse::<usize>().map_err(|e| Error::Parse(format!("{part}: {e}")))?;
            } else if let Some(t) = part.strip_prefix("Z/") {
                let t: u64 = t.parse().map_err(|e| Error::Parse(format!("{part}: {e}")))?;
                if t.is_zero() {
                    return Err(Error::Parse("Z/0".into()));
                }
                if t > 1 {
                    orders.push(t);
                }
            } else {
                return Err(Error::Parse(format!("unrecognized summand {part:?}")));
            }
        }
        Ok(Self::from_orders(free, &orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let a = AbelianInvariants::from_orders(2, &[6, 2]);
        assert_eq!(a.to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!("Z^2 + Z/2 + Z/6".parse::<AbelianInvariants>().unwrap(), a);
        assert_eq!(AbelianInvariants::zero().to_string(), "0");
    }

    #[test]
    fn canonical_form_merges_coprime() {
        assert_eq!(AbelianInvariants::from_orders(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(AbelianInvariants::from_orders(0, &[4, 6]).torsion, vec![2, 12]);
    }

    #[test]
    fn cokernel_of_diagonal() {
        let g = IMat::from_rows(vec![vec![2, 0], vec![0, 3], vec![0, 0]]);
        let a = AbelianInvariants::cokernel(&g).unwrap();
        assert_eq!(a.to_string(), "Z + Z/6");
    }
}
