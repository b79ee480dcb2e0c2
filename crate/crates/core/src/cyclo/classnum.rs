use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::characters::{character_group_with, CycloElement};
use crate::arith::{divisors, factorize, gcd, inv_mod, prime_divisors};
use crate::error::{Error, Result};
use crate::homalg::{det, kernel_basis, solve};
use crate::mat::IMat;
use crate::par;

/// `Q(zeta_m) = Q(zeta_{m/2})` for `m = 2 mod 4`.
pub fn canonical_conductor(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 3 || m % 4 == 2 {
        return Err(Error::InvalidParameters(format!("h^- needs m >= 3 and m != 2 mod 4, got {m}")));
    }
    Ok(())
}

fn unit_index_and_roots(m: u64) -> BigInt {
    let q = if factorize(m).len() == 1 { 1u64 } else { 2 };
    let w = if m % 2 == 0 { m } else { 2 * m };
    BigInt::from(q * w)
}

fn integral(value: BigRational, what: &str) -> Result<BigInt> {
    if !value.is_integer() || !value.is_positive() {
        return Err(Error::NonIntegralResult(format!("{what} = {value}")));
    }
    Ok(value.to_integer())
}

/// Relative class number by the product of `-B_{1,chi}/2` over odd primitive characters.
pub fn h_minus(m: u64) -> Result<BigInt> {
    h_minus_with(m, 0)
}

/// `h_minus` computed over the generating set of `(Z/m)^x` picked by `variant`.
pub fn h_minus_with(m: u64, variant: u64) -> Result<BigInt> {
    check_modulus(m)?;
    let odd: Vec<_> = character_group_with(m, variant)?.into_iter().filter(|c| c.is_odd()).collect();
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let factors: Vec<CycloElement> = par::map(&odd, |c| c.bernoulli_b1_primitive().scale(&half));
    let e = odd.first().map_or(1, |c| c.value_order());
    let prod = factors.iter().fold(CycloElement::from_integer(e, BigInt::one()), |acc, x| acc.mul(x));
    let q = prod.as_rational().ok_or_else(|| Error::NonIntegralResult(format!("h^-({m}) is irrational: {prod}")))?;
    integral(q * BigRational::from_integer(unit_index_and_roots(m)), &format!("h^-({m})"))
}

/// Determinant of the translation operator `phi -> sum_b (2(a/b) - f) phi(b)` on odd functions
/// on `(Z/f)^x` orthogonal to every function pulled back from a proper quotient, with its dimension.
fn new_odd_determinant(f: u64) -> Result<(BigInt, usize)> {
    let units: Vec<u64> = (1..f).filter(|&a| gcd(a, f) == 1).collect();
    let pos = |a: u64| units.binary_search(&(a % f)).expect("unit");
    let n = units.len();
    let reps: Vec<u64> = units.iter().copied().filter(|&a| 2 * a < f).collect();
    let mut odd = IMat::zeros(n, reps.len());
    for (j, &a) in reps.iter().enumerate() {
        odd.row_mut(pos(a))[j] = 1;
        odd.row_mut(pos(f - a))[j] = -1;
    }
    let mut push_rows: Vec<Vec<i64>> = Vec::new();
    for p in prime_divisors(f) {
        let g = f / p;
        for y in (0..g).filter(|&y| gcd(y, g) == 1) {
            push_rows.push(units.iter().map(|&x| i64::from(x % g == y)).collect());
        }
    }
    let push = IMat::from_rows_with(push_rows, n);
    let w = odd.mul(&kernel_basis(&push.mul(&odd)?)?)?;
    let dim = w.cols();
    if dim == 0 {
        return Ok((BigInt::one(), 0));
    }
    let mut conv = IMat::zeros(n, n);
    for (i, &a) in units.iter().enumerate() {
        for (j, &b) in units.iter().enumerate() {
            let binv = inv_mod(b as i64, f as i64).expect("unit") as u64;
            conv.row_mut(i)[j] = 2 * (a * binv % f) as i64 - f as i64;
        }
    }
    let image = conv.mul(&w)?;
    let x = solve(&w, &image)?.ok_or(Error::NonIntegralResult(format!("operator does not preserve the new odd part mod {f}")))?;
    Ok((det(&x)?, dim))
}

/// Relative class number by determinants on new odd subspaces, independent of characters.
pub fn h_minus_determinant(m: u64) -> Result<BigInt> {
    check_modulus(m)?;
    let fs: Vec<u64> = divisors(m).into_iter().filter(|&f| f >= 3 && f % 4 != 2).collect();
    let dets = par::try_map(&fs, |&f| new_odd_determinant(f))?;
    let mut num = unit_index_and_roots(m);
    let mut den = BigInt::one();
    for (&f, (d, dim)) in fs.iter().zip(dets) {
        num *= d;
        den *= BigInt::from(-4 * f as i64).pow(dim as u32);
    }
    integral(BigRational::new(num, den), &format!("determinant h^-({m})"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HPlus {
    Known(u64),
    KnownUnderGRH(u64),
    Unknown,
}

impl fmt::Display for HPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HPlus::Known(h) => write!(f, "Known({h})"),
            HPlus::KnownUnderGRH(h) => write!(f, "KnownUnderGRH({h})"),
            HPlus::Unknown => write!(f, "Unknown"),
        }
    }
}

impl FromStr for HPlus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = |prefix: &str| -> Option<u64> { s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok() };
        if s == "Unknown" {
            Ok(HPlus::Unknown)
        } else if let Some(h) = inner("KnownUnderGRH(") {
            Ok(HPlus::KnownUnderGRH(h))
        } else if let Some(h) = inner("Known(") {
            Ok(HPlus::Known(h))
        } else {
            Err(Error::Parse(format!("bad h+ status {s:?}")))
        }
    }
}

/// Table lookup for the class number of the maximal real subfield of `Q(zeta_m)`.
pub fn h_plus_status(m: u64) -> HPlus {
    let c = canonical_conductor(m);
    if c <= 66 || c == 128 || c == 256 {
        HPlus::Known(1)
    } else if c <= 161 || c == 512 {
        HPlus::KnownUnderGRH(1)
    } else {
        HPlus::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HTotal {
    Known(BigInt),
    ConditionallyKnown(BigInt),
    Unknown,
}

impl fmt::Display for HTotal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HTotal::Known(h) => write!(f, "Known({h})"),
            HTotal::ConditionallyKnown(h) => write!(f, "ConditionallyKnown({h})"),
            HTotal::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberRecord {
    pub m: u64,
    pub h_minus: BigInt,
    pub h_plus: HPlus,
    pub h_total: HTotal,
}

/// Class-number data of `Q(zeta_m)`.
pub fn class_number_record(m: u64) -> Result<ClassNumberRecord> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    let c = canonical_conductor(m);
    let h_minus = if c < 3 { BigInt::one() } else { h_minus(c)? };
    let h_plus = h_plus_status(c);
    let h_total = match h_plus {
        HPlus::Known(h) => HTotal::Known(&h_minus * h),
        HPlus::KnownUnderGRH(h) => HTotal::ConditionallyKnown(&h_minus * h),
        HPlus::Unknown => HTotal::Unknown,
    };
    Ok(ClassNumberRecord { m, h_minus, h_plus, h_total })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub m: u64,
    pub h_minus: BigInt,
    pub h_plus: HPlus,
    pub source: String,
}

/// Tab-separated rows `m, h_minus, h_plus_status, source`.
pub fn emit_table(records: &[ClassNumberRecord], source: &str) -> String {
    let mut out = String::from("m\th_minus\th_plus_status\tsource\n");
    for r in records {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.m, r.h_minus, r.h_plus, source));
    }
    out
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with("m\t")) {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 columns", i + 1)));
        }
        rows.push(TableRow {
            m: cols[0].parse().map_err(|_| Error::Parse(format!("line {}: bad m", i + 1)))?,
            h_minus: cols[1].parse().map_err(|_| Error::Parse(format!("line {}: bad h_minus", i + 1)))?,
            h_plus: cols[2].parse()?,
            source: cols[3].to_string(),
        });
    }
    Ok(rows)
}

/// Number of reduced positive definite forms of discriminant `d < 0`.
pub fn imaginary_quadratic_class_number(d: i64) -> Result<u64> {
    if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::InvalidParameters(format!("{d} is not a negative discriminant")));
    }
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if Integer::gcd(&Integer::gcd(&a, &b), &c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    Ok(count)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(h_minus(3).unwrap(), BigInt::one());
        assert_eq!(h_minus(4).unwrap(), BigInt::one());
        assert_eq!(h_minus(23).unwrap(), BigInt::from(3));
        assert_eq!(h_minus_determinant(23).unwrap(), BigInt::from(3));
    }

    #[test]
    fn oracles_agree() {
        for m in (3..=40).filter(|m| m % 4 != 2) {
            assert_eq!(h_minus(m).unwrap(), h_minus_determinant(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn known_values() {
        for (m, h) in [(29u64, 8u64), (31, 9), (37, 37), (39, 2), (41, 121), (56, 2), (47, 695)] {
            assert_eq!(h_minus(m).unwrap(), BigInt::from(h), "m = {m}");
        }
    }

    #[test]
    fn plus_table() {
        assert_eq!(h_plus_status(66), HPlus::Known(1));
        assert_eq!(h_plus_status(128), HPlus::Known(1));
        assert_eq!(h_plus_status(163), HPlus::Unknown);
        assert_eq!(h_plus_status(512), HPlus::KnownUnderGRH(1));
    }

    #[test]
    fn table_round_trip() {
        let recs: Vec<_> = [3u64, 23, 163].iter().map(|&m| class_number_record(m).unwrap()).collect();
        assert_eq!(recs[2].h_total, HTotal::Unknown);
        let rows = parse_table(&emit_table(&recs, "bernoulli")).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].h_minus, BigInt::from(3));
        assert_eq!(rows[2].h_plus, HPlus::Unknown);
    }

    #[test]
    fn quadratic_forms() {
        assert_eq!(imaginary_quadratic_class_number(-8).unwrap(), 1);
        assert_eq!(imaginary_quadratic_class_number(-23).unwrap(), 3);
        assert_eq!(imaginary_quadratic_class_number(-4).unwrap(), 1);
    }
}
