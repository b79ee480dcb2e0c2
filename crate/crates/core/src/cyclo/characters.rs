use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::cyclotomic;
use crate::arith::{divisors, euler_phi, factorize, gcd, mult_order, pow_mod};
use crate::error::{Error, Result};

/// Element of `Q(zeta_e)`: residue polynomial mod `Phi_e` over a common positive denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloElement {
    e: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    pub fn zero(e: u64) -> Self {
        CycloElement { e, num: vec![BigInt::zero(); euler_phi(e) as usize], den: BigInt::one() }
    }

    pub fn from_integer(e: u64, c: BigInt) -> Self {
        let mut z = Self::zero(e);
        z.num[0] = c;
        z
    }

    /// `sum_j c_j zeta_e^j` for an arbitrary exponent list.
    pub fn from_powers(e: u64, terms: &[(u64, BigInt)]) -> Self {
        let mut raw = vec![BigInt::zero(); e as usize];
        for (j, c) in terms {
            raw[(*j % e) as usize] += c;
        }
        Self::reduce(e, raw, BigInt::one())
    }

    fn reduce(e: u64, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic(e);
        let deg = phi.degree().unwrap_or(0);
        let pc: Vec<BigInt> = phi.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        for i in (deg..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in pc.iter().enumerate().take(deg) {
                raw[i - deg + j] -= &c * p;
            }
        }
        raw.resize(deg, BigInt::zero());
        let mut out = CycloElement { e, num: raw, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let mut g = self.den.clone();
        for c in &self.num {
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn order(&self) -> u64 {
        self.e
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.e, o.e, "cyclotomic orders differ");
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        let mut out = CycloElement { e: self.e, num, den: &self.den * &o.den };
        out.normalize();
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.e, o.e, "cyclotomic orders differ");
        let mut raw = vec![BigInt::zero(); (self.num.len() + o.num.len()).max(1)];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.e, raw, &self.den * &o.den)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        let mut out = CycloElement { e: self.e, num, den: &self.den * q.denom() };
        if out.den.is_negative() {
            out.den = -out.den;
            for c in &mut out.num {
                *c = -&*c;
            }
        }
        out.normalize();
        out
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let e = self.e;
        let terms: Vec<(u64, BigInt)> =
            self.num.iter().enumerate().map(|(i, c)| ((e - i as u64 % e) % e, c.clone())).collect();
        let mut out = Self::from_powers(e, &terms);
        out.den = self.den.clone();
        out.normalize();
        out
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        let c = self.num.first().cloned().unwrap_or_default();
        Some(BigRational::new(c, self.den.clone()))
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// `(Z/m)^x` with a chosen generating set and a discrete-log table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitGroup {
    pub m: u64,
    pub gens: Vec<u64>,
    pub orders: Vec<u64>,
    pub exponent: u64,
    dlog: HashMap<u64, Vec<u64>>,
}

fn crt_lift(m: u64, q: u64, g: u64) -> u64 {
    // x = g mod q, x = 1 mod m/q
    let other = m / q;
    (0..q).map(|j| 1 + j * other).find(|x| x % q == g % q).unwrap_or(1) % m
}

impl UnitGroup {
    /// `variant` selects among alternative generating sets.
    pub fn new(m: u64, variant: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameters("modulus must be positive".into()));
        }
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (p, k) in factorize(m) {
            let q = p.pow(k);
            if p == 2 {
                if k >= 2 {
                    gens.push(crt_lift(m, q, q - 1));
                    orders.push(2);
                }
                if k >= 3 {
                    gens.push(crt_lift(m, q, pow_mod(5, 2 * variant + 1, q)));
                    orders.push(q / 4);
                }
            } else {
                let phi = euler_phi(q);
                let roots: Vec<u64> = (2..q).filter(|&g| gcd(g, p) == 1 && mult_order(g, q) == Some(phi)).collect();
                let g = roots[(variant as usize) % roots.len()];
                gens.push(crt_lift(m, q, g));
                orders.push(phi);
            }
        }
        let exponent = orders.iter().fold(1u64, |a, &o| a.lcm(&o));
        let mut dlog = HashMap::new();
        let mut idx = vec![0u64; gens.len()];
        loop {
            let mut x = 1 % m;
            for (g, &i) in gens.iter().zip(&idx) {
                x = x * pow_mod(*g, i, m) % m;
            }
            dlog.insert(x, idx.clone());
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < orders[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        if dlog.len() as u64 != euler_phi(m) {
            return Err(Error::InconsistentInvariants(format!("unit group of Z/{m} has wrong size")));
        }
        Ok(UnitGroup { m, gens, orders, exponent, dlog })
    }

    pub fn dlog(&self, a: u64) -> Option<&[u64]> {
        self.dlog.get(&(a % self.m)).map(Vec::as_slice)
    }
}

/// Dirichlet character mod `m`, values in `mu_e` with `e` the exponent of the unit group.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.group.m
    }

    pub fn value_order(&self) -> u64 {
        self.group.exponent
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// `chi(a) = zeta_e^j`; `None` when `gcd(a, m) > 1`.
    pub fn value_exp(&self, a: u64) -> Option<u64> {
        let e = self.group.exponent;
        let d = self.group.dlog(a)?;
        Some(
            d.iter()
                .zip(&self.exps)
                .zip(&self.group.orders)
                .map(|((&x, &c), &o)| x * c % o * (e / o))
                .sum::<u64>()
                % e,
        )
    }

    pub fn value(&self, a: u64) -> CycloElement {
        let e = self.group.exponent;
        match self.value_exp(a) {
            Some(j) => CycloElement::from_powers(e, &[(j, BigInt::one())]),
            None => CycloElement::zero(e),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    /// `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        let m = self.group.m;
        self.value_exp(m - 1).is_some_and(|j| j != 0)
    }

    pub fn conjugate(&self) -> Self {
        let exps = self.exps.iter().zip(&self.group.orders).map(|(&c, &o)| (o - c) % o).collect();
        DirichletCharacter { group: self.group.clone(), exps }
    }

    /// Smallest `f | m` with `chi` trivial on units congruent to 1 mod `f`.
    pub fn conductor(&self) -> u64 {
        let m = self.group.m;
        divisors(m)
            .into_iter()
            .find(|&f| (1..m).step_by(f as usize).filter(|&a| gcd(a, m) == 1).all(|a| self.value_exp(a) == Some(0)))
            .unwrap_or(m)
    }

    /// Value of the induced primitive character at `a`.
    fn primitive_value_exp(&self, f: u64, a: u64) -> Option<u64> {
        let m = self.group.m;
        if gcd(a, f) != 1 {
            return None;
        }
        let lift = (0..m / f).map(|j| a % f + j * f).find(|&x| gcd(x, m) == 1)?;
        self.value_exp(lift)
    }

    /// `B_{1, chi_f}` for the primitive character `chi_f` inducing `chi`.
    pub fn bernoulli_b1_primitive(&self) -> CycloElement {
        let f = self.conductor();
        let terms: Vec<(u64, BigInt)> =
            (1..=f).filter_map(|a| self.primitive_value_exp(f, a).map(|j| (j, BigInt::from(a)))).collect();
        let s = CycloElement::from_powers(self.group.exponent, &terms);
        s.scale(&BigRational::new(BigInt::one(), BigInt::from(f)))
    }
}

/// All `phi(m)` characters mod `m` for the default generating set.
pub fn character_group(m: u64) -> Result<Vec<DirichletCharacter>> {
    character_group_with(m, 0)
}

/// Characters mod `m` over the generating set picked by `variant`.
pub fn character_group_with(m: u64, variant: u64) -> Result<Vec<DirichletCharacter>> {
    if m < 3 {
        return Err(Error::InvalidParameters(format!("modulus {m} must be >= 3")));
    }
    let group = Arc::new(UnitGroup::new(m, variant)?);
    let mut out = Vec::new();
    let mut idx = vec![0u64; group.orders.len()];
    loop {
        out.push(DirichletCharacter { group: group.clone(), exps: idx.clone() });
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < group.orders[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    Ok(out)
}

/// `B_{1,chi} = (1/m) sum_{a=1}^{m} chi(a) a`.
pub fn bernoulli_b1(chi: &DirichletCharacter) -> CycloElement {
    let m = chi.modulus();
    let terms: Vec<(u64, BigInt)> = (1..=m).filter_map(|a| chi.value_exp(a).map(|j| (j, BigInt::from(a)))).collect();
    CycloElement::from_powers(chi.value_order(), &terms).scale(&BigRational::new(BigInt::one(), BigInt::from(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn b1_small() {
        for (m, expect) in [(4, rat(-1, 2)), (3, rat(-1, 3))] {
            let odd: Vec<_> = character_group(m).unwrap().into_iter().filter(|c| c.is_odd()).collect();
            assert_eq!(odd.len(), 1);
            assert_eq!(bernoulli_b1(&odd[0]).as_rational().unwrap(), expect);
        }
    }

    #[test]
    fn group_sizes_and_multiplicativity() {
        for m in [5u64, 8, 12, 15, 16, 21, 40] {
            let chars = character_group(m).unwrap();
            assert_eq!(chars.len() as u64, euler_phi(m));
            assert!(!chars[0].is_odd() && chars[0].is_trivial());
            for c in &chars {
                let e = c.value_order();
                for a in 1..m {
                    for b in 1..m {
                        match (c.value_exp(a), c.value_exp(b)) {
                            (Some(x), Some(y)) => assert_eq!(c.value_exp(a * b % m), Some((x + y) % e)),
                            _ => assert_eq!(c.value_exp(a * b % m), None),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for m in [7u64, 9, 13, 20] {
            for c in character_group(m).unwrap() {
                let b = bernoulli_b1(&c);
                assert_eq!(bernoulli_b1(&c.conjugate()), b.conj());
                if !c.is_odd() && !c.is_trivial() {
                    assert!(b.is_zero());
                }
            }
        }
    }

    #[test]
    fn conductor_examples() {
        let chars = character_group(15).unwrap();
        let mut conds: Vec<u64> = chars.iter().map(|c| c.conductor()).collect();
        conds.sort_unstable();
        assert_eq!(conds, vec![1, 3, 5, 5, 5, 15, 15, 15]);
    }
}
