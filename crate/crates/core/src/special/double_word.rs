//! Unevaluated-sum ("double-word") arithmetic built from error-free
//! transformations. Gives roughly twice the working precision of `T`, which
//! the Maclaurin branch of Ai needs to survive cancellation for |x| near 8.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleWord<T> {
    pub hi: T,
    pub lo: T,
}

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn fast_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl<T: Real> DoubleWord<T> {
    pub fn from_scalar(x: T) -> Self {
        DoubleWord { hi: x, lo: T::zero() }
    }

    /// Splits an `f64` pair (value, residual) into the precision of `T`.
    pub fn from_f64_pair(hi: f64, lo: f64) -> Self {
        let h = T::lit(hi);
        let l = T::lit((hi - h.to_f64_lossy()) + lo);
        let (h, l) = fast_two_sum(h, l);
        DoubleWord { hi: h, lo: l }
    }

    pub fn to_scalar(self) -> T {
        self.hi + self.lo
    }

    #[cfg(test)]
    pub fn mul_scalar(self, b: T) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = fast_two_sum(p, e);
        DoubleWord { hi, lo }
    }

    pub fn div_scalar(self, b: T) -> Self {
        let q1 = self.hi / b;
        // remainder self - q1*b computed exactly enough
        let (p, e) = two_prod(q1, b);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / b;
        let (hi, lo) = fast_two_sum(q1, q2);
        DoubleWord { hi, lo }
    }
}

impl<T: Real> Add for DoubleWord<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        DoubleWord { hi, lo }
    }
}

impl<T: Real> Neg for DoubleWord<T> {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleWord {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl<T: Real> Sub for DoubleWord<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Mul for DoubleWord<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = fast_two_sum(p, e);
        DoubleWord { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bits_lost_in_plain_sum() {
        let a = DoubleWord::from_scalar(1.0f64);
        let b = DoubleWord::from_scalar(1e-20f64);
        let s = (a + b) - a;
        assert_eq!(s.to_scalar(), 1e-20);
    }

    #[test]
    fn division_is_accurate_beyond_working_precision() {
        let third = DoubleWord::from_scalar(1.0f64).div_scalar(3.0);
        let back = third.mul_scalar(3.0) - DoubleWord::from_scalar(1.0);
        assert!(back.to_scalar().abs() < 1e-30);
    }
}
