use serde::{Deserialize, Serialize};

use super::FamilySpec;
use crate::arith::{euler_phi, gcd, mult_order, odd_prime_power, prime_divisors};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub in_list: bool,
    pub witness: String,
}

fn yes(w: impl Into<String>) -> Result<Classification> {
    Ok(Classification { in_list: true, witness: w.into() })
}

fn no(w: impl Into<String>) -> Result<Classification> {
    Ok(Classification { in_list: false, witness: w.into() })
}

fn dihedral(m: u64) -> Result<Classification> {
    match m {
        1 => yes("D1 is cyclic of order 2"),
        m if m % 2 == 1 => yes(format!("D{m} with m = {m} odd >= 3")),
        m => no(format!("D{m}: m = {m} is even")),
    }
}

/// Membership in the four families of the main classification, with a witness.
pub fn theorem14_classify(spec: &FamilySpec) -> Result<Classification> {
    spec.validate_params()?;
    match spec {
        FamilySpec::Cyclic { n } => yes(format!("C{n} is cyclic")),
        FamilySpec::Dihedral { n } => dihedral(*n),
        FamilySpec::Quaternion { n } => {
            if n % 2 == 0 {
                return no(format!("Q{}: m = {n} is even", 4 * n));
            }
            match prime_divisors(*n).into_iter().find(|p| p % 4 != 3) {
                Some(p) => no(format!("prime {p} | {n} has p = {} mod 4", p % 4)),
                None => yes(format!("every prime divisor of {n} is 3 mod 4")),
            }
        }
        FamilySpec::CyclicTimesDihedral { n, m } => {
            if *n == 1 {
                return dihedral(*m);
            }
            if *m == 1 {
                return if n % 2 == 1 {
                    yes(format!("C{n} x C2 is cyclic of order {}", 2 * n))
                } else {
                    no(format!("C{n} x C2 is not cyclic"))
                };
            }
            if m % 2 == 0 {
                return no(format!("m = {m} is even"));
            }
            let Some((q, f)) = odd_prime_power(*n) else {
                return no(format!("n = {n} is not an odd prime power"));
            };
            if gcd(q, *m) != 1 {
                return no(format!("q = {q} divides m = {m}"));
            }
            let phi = euler_phi(*n);
            for p in prime_divisors(*m) {
                let o = mult_order(p, *n).expect("coprime");
                if o != phi {
                    return no(format!("ord of {p} mod {q}^{f} is {o} < {phi}"));
                }
            }
            yes(format!("every prime divisor of {m} generates (Z/{n})^x of order {phi}"))
        }
        FamilySpec::SemiDihedral { .. } | FamilySpec::Modular { .. } => {
            no(format!("{spec} is a non-cyclic 2-group outside the list"))
        }
        FamilySpec::Generic { .. } => Err(Error::UnsupportedFamily("generic multiplication table".into())),
    }
}

/// For every prime `p | m`, `p` remains prime in `Z[zeta_{n 2^d}]`, i.e. has full order modulo `n 2^d`.
pub fn condition_1prime(n: u64, m: u64, d: u32) -> bool {
    let modulus = n << d;
    let phi = euler_phi(modulus);
    prime_divisors(m).into_iter().all(|p| mult_order(p, modulus) == Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(theorem14_classify(&FamilySpec::CyclicTimesDihedral { n: 9, m: 5 }).unwrap().in_list);
        assert!(theorem14_classify(&FamilySpec::Quaternion { n: 3 }).unwrap().in_list);
        assert!(!theorem14_classify(&FamilySpec::Quaternion { n: 5 }).unwrap().in_list);
        assert!(condition_1prime(1, 15, 1));
        assert!(condition_1prime(1, 3, 2));
        assert_eq!(
            condition_1prime(9, 7, 1),
            theorem14_classify(&FamilySpec::CyclicTimesDihedral { n: 9, m: 7 }).unwrap().in_list
        );
    }
}
