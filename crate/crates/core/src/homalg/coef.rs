//! Coefficient rings for the normal-form kernels: checked i128 first, BigInt on overflow.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coef: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// Compare absolute values.
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division; `o` is nonzero.
    fn div_floor(&self, o: &Self) -> Self;
    /// Exact division if divisible.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn to_i64(&self) -> Option<i64>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if *o == 0 || self % o != 0 {
            None
        } else {
            Some(self / o)
        }
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `dst[k] -= q * src[k]` for `k >= from`.
#[inline]
pub(crate) fn axpy<T: Coef>(dst: &mut [T], src: &[T], q: &T, from: usize) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    for k in from..dst.len() {
        if src[k].is_zero() {
            continue;
        }
        dst[k] = dst[k].sub(&q.mul(&src[k])?)?;
    }
    Some(())
}

#[inline]
pub(crate) fn neg_row<T: Coef>(row: &mut [T]) -> Option<()> {
    for x in row.iter_mut() {
        *x = x.neg()?;
    }
    Some(())
}

pub(crate) fn identity<T: Coef>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}
