//! Elementary number theory on machine integers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Prime factorization as ascending `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Ascending divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Multiplicative order of `a` modulo `m`; `None` unless `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Odd prime power `q^f` with `f >= 1`, returned as `(q, f)`.
pub fn odd_prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(q, f)] if *q != 2 => Some((*q, *f)),
        _ => None,
    }
}

/// Inverse of `a` modulo `m`.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mult_order(5, 9), Some(6));
        assert_eq!(mult_order(3, 4), Some(2));
        assert_eq!(inv_mod(3, 7), Some(5));
    }
}
