//! Dense univariate polynomials over an exact ring (integers or rationals).

use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

/// Coefficients in ascending degree order. Trailing zeros are stripped, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T> DensePoly<T>
where
    T: Clone + Zero + One + PartialEq,
{
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly::new(vec![T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, x: &T) -> T
    where
        T: Add<Output = T> + Mul<Output = T>,
    {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Drops every term of degree `>= n` (power-series truncation).
    pub fn truncate(&self, n: usize) -> Self {
        DensePoly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn scale(&self, c: &T) -> Self
    where
        T: Mul<Output = T>,
    {
        DensePoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }
}

impl<T> Add for &DensePoly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T>,
{
    type Output = DensePoly<T>;
    fn add(self, rhs: Self) -> DensePoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T> Sub for &DensePoly<T>
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T>,
{
    type Output = DensePoly<T>;
    fn sub(self, rhs: Self) -> DensePoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T> Neg for &DensePoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = DensePoly<T>;
    fn neg(self) -> DensePoly<T> {
        DensePoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T> Mul for &DensePoly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    type Output = DensePoly<T>;
    fn mul(self, rhs: Self) -> DensePoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, BigRat};
    use num::BigInt;
    use proptest::prelude::*;

    fn p(v: &[i64]) -> DensePoly<BigInt> {
        DensePoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn normalization_and_degree() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(p(&[1, 2, 3]).truncate(2), p(&[1, 2]));
    }

    #[test]
    fn rational_eval() {
        let f: DensePoly<BigRat> = DensePoly::new(vec![rat(1, 1), rat(0, 1), rat(2, 1)]);
        assert_eq!(f.eval(&rat(1, 4)), rat(9, 8));
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(
            a in proptest::collection::vec(-20i64..20, 0..6),
            b in proptest::collection::vec(-20i64..20, 0..6),
            x in -7i64..7,
        ) {
            let (fa, fb) = (p(&a), p(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&fa + &fb).eval(&x), fa.eval(&x) + fb.eval(&x));
            prop_assert_eq!((&fa - &fb).eval(&x), fa.eval(&x) - fb.eval(&x));
            prop_assert_eq!((&fa * &fb).eval(&x), fa.eval(&x) * fb.eval(&x));
        }
    }
}
