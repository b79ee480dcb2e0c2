use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral LLL reduction (delta = 3/4) of linearly independent rows.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n <= 1 {
        return b;
    }
    // 1-based bookkeeping: d[0] = 1, d[i] Gram determinants, lam[k][j] for j < k.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&b[0], &b[0]);
    let mut k = 2;
    let mut kmax = 1;

    fn red(k: usize, l: usize, b: &mut [Vec<BigInt>], d: &[BigInt], lam: &mut [Vec<BigInt>]) {
        let two_lam: BigInt = &lam[k][l] * 2;
        if two_lam.abs() > d[l] {
            let q = (&two_lam + &d[l]).div_floor(&(&d[l] * 2));
            let bl = b[l - 1].clone();
            for (x, y) in b[k - 1].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * &d[l];
            for i in 1..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k] = u;
                }
            }
        }
        loop {
            red(k, k - 1, &mut b, &d, &mut lam);
            let lhs: BigInt = &d[k] * &d[k - 2] * 4;
            let rhs: BigInt = &d[k - 1] * &d[k - 1] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
            if lhs < rhs {
                b.swap(k - 1, k - 2);
                for j in 1..k - 1 {
                    let t = std::mem::take(&mut lam[k][j]);
                    lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(k, l, &mut b, &d, &mut lam);
                }
                k += 1;
                break;
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn reduces_skewed_basis() {
        let b = vec![v(&[1, 0, 0]), v(&[1001, 1, 0]), v(&[2003, 5, 1])];
        let r = lll_reduce(b);
        assert!(r.iter().all(|row| row.iter().all(|x| x.abs() <= BigInt::from(2))));
    }

    #[test]
    fn classic_example() {
        let b = vec![v(&[1, 1, 1]), v(&[-1, 0, 2]), v(&[3, 5, 6])];
        let r = lll_reduce(b);
        let norms: Vec<BigInt> = r.iter().map(|x| dot(x, x)).collect();
        assert!(norms[0] <= BigInt::from(3));
    }
}
