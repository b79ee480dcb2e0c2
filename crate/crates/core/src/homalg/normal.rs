//! Hermite and Smith normal forms, kernels, saturation and integral solving.
//!
//! Every kernel runs over checked `i128` and is rerun over `BigInt` when an
//! intermediate value overflows. Results are returned as `i64` matrices.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::coef::{axpy, identity, neg_row, Coef};
use crate::error::{Error, Result};
use crate::mat::{IMat, Mat};

pub(crate) fn lift<T: Coef>(a: &IMat) -> Vec<Vec<T>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(|&x| T::from_i64(x)).collect()).collect()
}

pub(crate) fn lower<T: Coef>(rows: &[Vec<T>], ncols: usize, what: &'static str) -> Result<IMat> {
    let conv = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or(Error::Overflow(what))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows_with(conv, ncols))
}

/// Run over i128, and over BigInt if that overflowed.
pub(crate) fn with_fallback<R>(
    small: impl FnOnce() -> Option<R>,
    big: impl FnOnce() -> Option<R>,
    what: &'static str,
) -> Result<R> {
    if let Some(r) = small() {
        return Ok(r);
    }
    log::debug!("{what}: i128 overflow, retrying over BigInt");
    big().ok_or(Error::Overflow(what))
}

pub(crate) struct Echelon<T> {
    pub h: Vec<Vec<T>>,
    pub u: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

/// Row Hermite form: `u * a = h`, pivots positive, entries above a pivot reduced into `[0, pivot)`.
pub(crate) fn echelon<T: Coef>(mut a: Vec<Vec<T>>, ncols: usize, track: bool) -> Option<Echelon<T>> {
    let m = a.len();
    let mut u = if track { identity::<T>(m) } else { Vec::new() };
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !a[i][j].is_zero()
                    && best.map_or(true, |b| a[i][j].abs_cmp(&a[b][j]) == Ordering::Less)
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            if track {
                u.swap(r, b);
            }
            let mut clean = true;
            for i in r + 1..m {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[r][j]);
                let (lo, hi) = a.split_at_mut(i);
                axpy(&mut hi[0], &lo[r], &q, j)?;
                if track {
                    let (lo, hi) = u.split_at_mut(i);
                    axpy(&mut hi[0], &lo[r], &q, 0)?;
                }
                if !a[i][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][j].is_zero() {
            continue;
        }
        if a[r][j].is_neg() {
            neg_row(&mut a[r][j..])?;
            if track {
                neg_row(&mut u[r])?;
            }
        }
        for i in 0..r {
            if a[i][j].is_zero() {
                continue;
            }
            let q = a[i][j].div_floor(&a[r][j]);
            let (lo, hi) = a.split_at_mut(r);
            axpy(&mut lo[i], &hi[0], &q, j)?;
            if track {
                let (lo, hi) = u.split_at_mut(r);
                axpy(&mut lo[i], &hi[0], &q, 0)?;
            }
        }
        pivots.push(j);
        r += 1;
    }
    Some(Echelon { h: a, u, pivots })
}

pub(crate) struct SmithT<T> {
    pub u: Vec<Vec<T>>,
    pub diag: Vec<T>,
    pub v: Vec<Vec<T>>,
}

fn col_axpy<T: Coef>(a: &mut [Vec<T>], dst: usize, src: usize, q: &T, from_row: usize) -> Option<()> {
    for row in a.iter_mut().skip(from_row) {
        if row[src].is_zero() {
            continue;
        }
        row[dst] = row[dst].sub(&q.mul(&row[src])?)?;
    }
    Some(())
}

fn swap_cols<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith form `u * a * v = diag` with the divisibility chain.
pub(crate) fn smith<T: Coef>(mut a: Vec<Vec<T>>, ncols: usize, track: bool) -> Option<SmithT<T>> {
    let m = a.len();
    let n = ncols;
    let mut u = if track { identity::<T>(m) } else { Vec::new() };
    let mut v = if track { identity::<T>(n) } else { Vec::new() };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs_cmp(&a[bi][bj]) == Ordering::Less)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, t, bj);
        if track {
            u.swap(t, bi);
            swap_cols(&mut v, t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (lo, hi) = a.split_at_mut(i);
                axpy(&mut hi[0], &lo[t], &q, t)?;
                if track {
                    let (lo, hi) = u.split_at_mut(i);
                    axpy(&mut hi[0], &lo[t], &q, 0)?;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q, t)?;
                if track {
                    col_axpy(&mut v, j, t, &q, 0)?;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    if track {
                        u.swap(t, best.0);
                    }
                }
                if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    if track {
                        swap_cols(&mut v, t, best.1);
                    }
                }
                continue;
            }
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if a[i][j].div_exact(&a[t][t]).is_none() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let neg1 = T::one().neg()?;
                    let (lo, hi) = a.split_at_mut(i);
                    axpy(&mut lo[t], &hi[0], &neg1, t)?;
                    if track {
                        let (lo, hi) = u.split_at_mut(i);
                        axpy(&mut lo[t], &hi[0], &neg1, 0)?;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_neg() {
            neg_row(&mut a[t][t..])?;
            if track {
                neg_row(&mut u[t])?;
            }
        }
        diag.push(a[t][t].clone());
    }
    while diag.len() < m.min(n) {
        diag.push(T::zero());
    }
    Some(SmithT { u, diag, v })
}

/// Invariant factors of the row module, reducing by two Hermite passes first.
pub(crate) fn invariants<T: Coef>(a: Vec<Vec<T>>, ncols: usize) -> Option<Vec<T>> {
    let e1 = echelon(a, ncols, false)?;
    let r = e1.pivots.len();
    let rows: Vec<Vec<T>> = e1.h.into_iter().take(r).collect();
    let t: Vec<Vec<T>> = (0..ncols).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
    let e2 = echelon(t, r, false)?;
    let sq: Vec<Vec<T>> = e2.h.into_iter().take(r).collect();
    Some(smith(sq, r, false)?.diag)
}

fn bareiss<T: Coef>(mut a: Vec<Vec<T>>) -> Option<T> {
    let n = a.len();
    let mut neg = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(T::zero());
            };
            a.swap(k, i);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = x.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { T::one() } else { a[n - 1][n - 1].clone() };
    if neg {
        d.neg()
    } else {
        Some(d)
    }
}

/// Row Hermite normal form with the reduced (nonzero) rows and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IMat,
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form of `a`, zero rows dropped.
pub fn hnf(a: &IMat) -> Result<Hnf> {
    let n = a.cols();
    let run = |e: Option<Echelon<i128>>| e.map(|e| (e.h, e.pivots));
    let (h, pivots) = match run(echelon(lift::<i128>(a), n, false)) {
        Some((h, p)) => {
            let r = p.len();
            (lower(&h[..r], n, "hnf")?, p)
        }
        None => {
            let e = echelon(lift::<BigInt>(a), n, false).ok_or(Error::Overflow("hnf"))?;
            let r = e.pivots.len();
            (lower(&e.h[..r], n, "hnf")?, e.pivots)
        }
    };
    Ok(Hnf { h, pivots })
}

/// Row Hermite form with unimodular transform: `u * a = h`, `h` keeps all rows.
pub fn hnf_with_transform(a: &IMat) -> Result<(IMat, IMat, Vec<usize>)> {
    let n = a.cols();
    let m = a.rows();
    if let Some(e) = echelon(lift::<i128>(a), n, true) {
        if let (Ok(h), Ok(u)) = (lower(&e.h, n, "hnf"), lower(&e.u, m, "hnf")) {
            return Ok((h, u, e.pivots));
        }
    }
    let e = echelon(lift::<BigInt>(a), n, true).ok_or(Error::Overflow("hnf"))?;
    Ok((lower(&e.h, n, "hnf")?, lower(&e.u, m, "hnf transform")?, e.pivots))
}

/// Column Hermite basis of the column span of `a` (columns are the basis).
pub fn hnf_cols(a: &IMat) -> Result<IMat> {
    Ok(hnf(&a.transpose())?.h.transpose())
}

/// Smith decomposition `d = u * a * v` with `d` diagonal and `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }
}

pub fn snf(a: &IMat) -> Result<SmithDecomposition> {
    let (m, n) = (a.rows(), a.cols());
    let build = |s: SmithT<i128>| -> Option<SmithDecomposition> {
        let u = lower(&s.u, m, "snf").ok()?;
        let v = lower(&s.v, n, "snf").ok()?;
        let mut d = IMat::zeros(m, n);
        for (i, x) in s.diag.iter().enumerate() {
            d[(i, i)] = x.to_i64()?;
        }
        Some(SmithDecomposition { u, d, v })
    };
    if let Some(r) = smith(lift::<i128>(a), n, true).and_then(build) {
        return Ok(r);
    }
    let s = smith(lift::<BigInt>(a), n, true).ok_or(Error::Overflow("snf"))?;
    let mut d = IMat::zeros(m, n);
    for (i, x) in s.diag.iter().enumerate() {
        d[(i, i)] = x.to_i64().ok_or(Error::Overflow("snf"))?;
    }
    Ok(SmithDecomposition { u: lower(&s.u, m, "snf")?, d, v: lower(&s.v, n, "snf")? })
}

/// Nonzero invariant factors of the column span of `a`, one per unit of rank.
pub fn elementary_divisors(a: &IMat) -> Result<Vec<BigInt>> {
    let t = a.transpose();
    let n = t.cols();
    with_fallback(
        || invariants(lift::<i128>(&t), n).map(|d| d.iter().map(|x| x.to_big()).collect()),
        || invariants(lift::<BigInt>(&t), n),
        "elementary divisors",
    )
}

/// Basis (as columns, Hermite-canonical) of `{x : a x = 0}`.
pub fn kernel_basis(a: &IMat) -> Result<IMat> {
    let c = a.cols();
    if a.rows() == 0 {
        return Ok(IMat::identity(c));
    }
    let t = a.transpose();
    let r = t.cols();
    let ker = |e: Echelon<i128>| -> Option<IMat> {
        let k = e.pivots.len();
        lower(&e.u[k..], c, "kernel").ok()
    };
    let rows = match echelon(lift::<i128>(&t), r, true).and_then(ker) {
        Some(x) => x,
        None => {
            let e = echelon(lift::<BigInt>(&t), r, true).ok_or(Error::Overflow("kernel"))?;
            let k = e.pivots.len();
            lower(&e.u[k..], c, "kernel")?
        }
    };
    if rows.rows() == 0 {
        return Ok(IMat::zeros(c, 0));
    }
    Ok(hnf(&rows)?.h.transpose())
}

/// Saturation of the column span of `b` inside `Z^rows`, as Hermite-canonical columns.
pub fn saturate(b: &IMat) -> Result<IMat> {
    let n = b.rows();
    if b.cols() == 0 {
        return Ok(IMat::zeros(n, 0));
    }
    let perp = kernel_basis(&b.transpose())?;
    if perp.cols() == 0 {
        return Ok(IMat::identity(n));
    }
    kernel_basis(&perp.transpose())
}

/// Rank over the rationals.
pub fn rank(a: &IMat) -> Result<usize> {
    Ok(hnf(a)?.pivots.len())
}

/// Whether the column span of `a` is saturated in `Z^rows`.
pub fn is_saturated(a: &IMat) -> Result<bool> {
    Ok(elementary_divisors(a)?.iter().all(|d| *d == BigInt::from(1)))
}

/// Equality of column spans.
pub fn same_span(a: &IMat, b: &IMat) -> Result<bool> {
    Ok(hnf_cols(a)? == hnf_cols(b)?)
}

pub fn det(a: &IMat) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::Dimension("determinant of non-square matrix".into()));
    }
    with_fallback(
        || bareiss(lift::<i128>(a)).map(|d| d.to_big()),
        || bareiss(lift::<BigInt>(a)),
        "determinant",
    )
}

pub fn is_unimodular(a: &IMat) -> Result<bool> {
    if !a.is_square() {
        return Ok(false);
    }
    let h = hnf(a)?;
    Ok(h.pivots.len() == a.rows() && (0..a.rows()).all(|i| h.h[(i, i)] == 1))
}

struct SolverT<T> {
    h: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Coef> SolverT<T> {
    fn new(a: &IMat) -> Option<Self> {
        let t = a.transpose();
        let e = echelon(lift::<T>(&t), t.cols(), true)?;
        let k = e.pivots.len();
        let mut h = e.h;
        h.truncate(k);
        Some(SolverT { h, u: e.u, pivots: e.pivots })
    }

    /// Outer `None` on overflow, inner `None` when no integral solution exists.
    fn solve(&self, b: &[i64], nrows: usize) -> Option<Option<Vec<T>>> {
        let k = self.pivots.len();
        let mut y: Vec<T> = Vec::with_capacity(k);
        for idx in 0..k {
            let p = self.pivots[idx];
            let mut s = T::from_i64(b[p]);
            for (l, yl) in y.iter().enumerate() {
                if !self.h[l][p].is_zero() {
                    s = s.sub(&self.h[l][p].mul(yl)?)?;
                }
            }
            match s.div_exact(&self.h[idx][p]) {
                Some(q) => y.push(q),
                None => return Some(None),
            }
        }
        for (i, bi) in b.iter().enumerate().take(nrows) {
            let mut s = T::zero();
            for (l, yl) in y.iter().enumerate() {
                if !self.h[l][i].is_zero() {
                    s = s.add(&self.h[l][i].mul(yl)?)?;
                }
            }
            if s != T::from_i64(*bi) {
                return Some(None);
            }
        }
        let c = self.u.first().map_or(0, |r| r.len());
        let mut x = vec![T::zero(); c];
        for (l, yl) in y.iter().enumerate() {
            if yl.is_zero() {
                continue;
            }
            for (xj, uj) in x.iter_mut().zip(&self.u[l]) {
                if !uj.is_zero() {
                    *xj = xj.add(&yl.mul(uj)?)?;
                }
            }
        }
        Some(Some(x))
    }
}

/// Reusable integral solver for `a x = b` with many right-hand sides.
pub struct Solver {
    a: IMat,
    small: Option<SolverT<i128>>,
    big: OnceLock<Option<SolverT<BigInt>>>,
}

impl Solver {
    pub fn new(a: &IMat) -> Self {
        Solver { a: a.clone(), small: SolverT::new(a), big: OnceLock::new() }
    }

    pub fn matrix(&self) -> &IMat {
        &self.a
    }

    /// A solution of `a x = b`, or `None` if none is integral.
    pub fn solve_vec(&self, b: &[i64]) -> Result<Option<Vec<i64>>> {
        if b.len() != self.a.rows() {
            return Err(Error::Dimension("solve right-hand side".into()));
        }
        if let Some(s) = &self.small {
            if let Some(r) = s.solve(b, self.a.rows()) {
                match r {
                    None => return Ok(None),
                    Some(x) => {
                        if let Some(v) = x.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>() {
                            return Ok(Some(v));
                        }
                    }
                }
            }
        }
        let big = self.big.get_or_init(|| SolverT::new(&self.a)).as_ref().ok_or(Error::Overflow("solve"))?;
        match big.solve(b, self.a.rows()).ok_or(Error::Overflow("solve"))? {
            None => Ok(None),
            Some(x) => Ok(Some(
                x.iter().map(|v| v.to_i64().ok_or(Error::Overflow("solve"))).collect::<Result<Vec<_>>>()?,
            )),
        }
    }

    /// Column-by-column solve of `a x = b`.
    pub fn solve(&self, b: &IMat) -> Result<Option<IMat>> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve_vec(&b.col(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Mat::from_cols(&cols, self.a.cols())))
    }
}

/// Some integral `x` with `a x = b`, if one exists.
pub fn solve(a: &IMat, b: &IMat) -> Result<Option<IMat>> {
    Solver::new(a).solve(b)
}

/// Inverse of a unimodular matrix.
pub fn inverse_unimodular(a: &IMat) -> Result<IMat> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse of non-square matrix".into()));
    }
    solve(a, &IMat::identity(a.rows()))?.ok_or(Error::NotSolvable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IMat {
        IMat::from_rows(rows)
    }

    #[test]
    fn snf_two_three() {
        let s = snf(&m(vec![vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(s.diagonal(), vec![1, 6]);
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn snf_identity() {
        let s = snf(&IMat::identity(3)).unwrap();
        assert_eq!(s.d, IMat::identity(3));
    }

    #[test]
    fn kernel_of_row() {
        let k = kernel_basis(&m(vec![vec![1, 1]])).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)] + k[(1, 0)], 0);
        assert_eq!(k[(0, 0)].abs(), 1);
    }

    #[test]
    fn saturation_recovers_primitive() {
        let s = saturate(&m(vec![vec![2], vec![4]])).unwrap();
        assert!(same_span(&s, &m(vec![vec![1], vec![2]])).unwrap());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = inverse_unimodular(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(solve(&m(vec![vec![2]]), &m(vec![vec![3]])).unwrap().is_none());
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&m(vec![vec![0, 1], vec![1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&m(vec![vec![2, 3], vec![4, 5]])).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn bigint_fallback_path() {
        let big = 1i64 << 62;
        let a = m(vec![vec![big, big - 1], vec![big - 1, big - 2]]);
        assert_eq!(det(&a).unwrap(), BigInt::from(-1));
        assert!(is_unimodular(&a).unwrap());
    }
}
