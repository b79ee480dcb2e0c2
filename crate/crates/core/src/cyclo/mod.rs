//! Cyclotomic polynomials, devissage schedules, Dirichlet characters and
//! cyclotomic class numbers.

mod characters;
mod classnum;
mod poly;
mod schedule;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, gcd, is_prime, mobius, mult_order, prime_divisors};
use crate::error::{Error, Result};

pub use characters::{
    bernoulli_b1, character_group, character_group_with, CycloElement, DirichletCharacter, UnitGroup,
};
pub use classnum::{
    canonical_conductor, class_number_record, emit_table, h_minus, h_minus_determinant, h_minus_with,
    h_plus_status, imaginary_quadratic_class_number, parse_table, ClassNumberRecord, HPlus, HTotal, TableRow,
};
pub use poly::{cyclotomic, psi, IntPolynomial};
pub use schedule::{devissage_schedule, DevissageSchedule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basics {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub phi: u64,
    pub mu: i64,
    pub cyclotomics: Vec<(u64, IntPolynomial)>,
}

/// Divisors, Euler phi, Moebius and the `Phi_d` for `d | n`.
pub fn basics(n: u64) -> Result<Basics> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let divs = divisors(n);
    Ok(Basics {
        n,
        phi: euler_phi(n),
        mu: mobius(n),
        cyclotomics: divs.iter().map(|&d| (d, cyclotomic(d))).collect(),
        divisors: divs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma45Step1 {
    pub middle_coeff: i64,
    pub phi_at_one: i64,
}

/// Middle coefficient of `Phi_m` (odd) and `Phi_m(1)`.
pub fn lemma45_step1_checks(m: u64) -> Result<Lemma45Step1> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidParameters(format!("m = {m} must be odd and >= 3")));
    }
    let p = cyclotomic(m);
    let middle = p.coeff((euler_phi(m) / 2) as usize);
    if middle % 2 == 0 {
        return Err(Error::BadPolynomial(format!("middle coefficient of Phi_{m} is even")));
    }
    let at_one = p.eval(1)?;
    let primes = prime_divisors(m);
    let expected_ok = if primes.len() == 1 { at_one == primes[0] as i64 } else { at_one.abs() == 1 };
    if !expected_ok {
        return Err(Error::BadPolynomial(format!("Phi_{m}(1) = {at_one}")));
    }
    Ok(Lemma45Step1 { middle_coeff: middle, phi_at_one: at_one })
}

/// `p` generates `(Z/m)^x`, i.e. `p Z[zeta_m]` is prime.
pub fn prime_remains_prime(p: u64, m: u64) -> Result<bool> {
    if !is_prime(p) || gcd(p, m) != 1 {
        return Err(Error::InvalidParameters(format!("need p prime and coprime to m, got ({p}, {m})")));
    }
    Ok(mult_order(p, m) == Some(euler_phi(m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ramification {
    Unramified,
    TamelyRamifiedAt(u64),
}

/// Ramification of `Q(zeta_m)` over its real subfield at finite primes, `m` odd.
pub fn ramification_class(m: u64) -> Result<Ramification> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidParameters(format!("m = {m} must be odd and >= 3")));
    }
    let ps = prime_divisors(m);
    Ok(if ps.len() >= 2 { Ramification::Unramified } else { Ramification::TamelyRamifiedAt(ps[0]) })
}

/// `F_p[X]/(X^2 + 1)` is a field; computed by congruence and by a root search, which must agree.
pub fn p3mod4_field_check(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    let by_congruence = p % 4 == 3;
    let by_roots = (0..p).all(|x| (x * x + 1) % p != 0);
    if by_congruence != by_roots {
        return Err(Error::InconsistentInvariants(format!("X^2+1 over F_{p}")));
    }
    Ok(by_roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics_examples() {
        let b = basics(6).unwrap();
        assert_eq!(b.mu, 1);
        assert_eq!(b.cyclotomics.last().unwrap().1, IntPolynomial::new(vec![1, -1, 1]));
        assert_eq!(basics(12).unwrap().mu, 0);
    }

    #[test]
    fn lemma45_examples() {
        let r = lemma45_step1_checks(3).unwrap();
        assert_eq!((r.middle_coeff, r.phi_at_one), (1, 3));
        assert_eq!(lemma45_step1_checks(15).unwrap().phi_at_one, 1);
        assert_eq!(lemma45_step1_checks(105).unwrap().middle_coeff % 2 != 0, true);
    }

    #[test]
    fn predicates() {
        assert!(prime_remains_prime(5, 9).unwrap());
        assert_eq!(ramification_class(15).unwrap(), Ramification::Unramified);
        assert_eq!(ramification_class(9).unwrap(), Ramification::TamelyRamifiedAt(3));
        assert!(p3mod4_field_check(7).unwrap());
        assert!(!p3mod4_field_check(5).unwrap());
        assert!(!p3mod4_field_check(2).unwrap());
    }
}
