use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldSpec, Ring};
use crate::error::{Error, Result};

/// `base + ε·eps` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualScalar<T> {
    pub base: T,
    pub eps: T,
}

impl<T: Ring> DualScalar<T> {
    pub fn new(base: T, eps: T) -> Self {
        DualScalar { base, eps }
    }

    /// Embeds a scalar with zero ε-part.
    pub fn constant(base: T, field: &FieldSpec) -> Self {
        DualScalar { base, eps: T::zero(field) }
    }
}

impl<T: Ring> fmt::Display for DualScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+ε({})", self.base, self.eps)
    }
}

impl<T: Ring> Add for DualScalar<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DualScalar::new(self.base + rhs.base, self.eps + rhs.eps)
    }
}

impl<T: Ring> Sub for DualScalar<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DualScalar::new(self.base - rhs.base, self.eps - rhs.eps)
    }
}

impl<T: Ring> Mul for DualScalar<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.base.clone() * rhs.eps + self.eps * rhs.base.clone();
        DualScalar::new(self.base * rhs.base, eps)
    }
}

impl<T: Ring> Neg for DualScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        DualScalar::new(-self.base, -self.eps)
    }
}

impl<T: Ring> Ring for DualScalar<T> {
    fn zero(field: &FieldSpec) -> Self {
        DualScalar::new(T::zero(field), T::zero(field))
    }

    fn one(field: &FieldSpec) -> Self {
        DualScalar::new(T::one(field), T::zero(field))
    }

    fn from_int(n: i64, field: &FieldSpec) -> Self {
        DualScalar::new(T::from_int(n, field), T::zero(field))
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.eps.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.base.is_unit()
    }

    fn try_inverse(&self) -> Option<Self> {
        // (a + εb)⁻¹ = a⁻¹ − ε a⁻² b
        let inv = self.base.try_inverse()?;
        let eps = -(inv.clone() * inv.clone() * self.eps.clone());
        Some(DualScalar::new(inv, eps))
    }

    fn conj(&self, field: &FieldSpec) -> Self {
        DualScalar::new(self.base.conj(field), self.eps.conj(field))
    }
}

/// `c0 + c1·ε₁ + c2·ε₂ + c12·ε₁ε₂` with `ε₁² = ε₂² = 0`: the second-order
/// tangent ring, dual numbers over dual numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiDualScalar<T> {
    pub c0: T,
    pub c1: T,
    pub c2: T,
    pub c12: T,
}

impl<T: Ring> BiDualScalar<T> {
    pub fn new(c0: T, c1: T, c2: T, c12: T) -> Self {
        BiDualScalar { c0, c1, c2, c12 }
    }

    pub fn constant(c0: T, field: &FieldSpec) -> Self {
        let z = T::zero(field);
        BiDualScalar::new(c0, z.clone(), z.clone(), z)
    }

    /// `ε₁·x`
    pub fn eps1(x: T, field: &FieldSpec) -> Self {
        let z = T::zero(field);
        BiDualScalar::new(z.clone(), x, z.clone(), z)
    }

    /// `ε₂·x`
    pub fn eps2(x: T, field: &FieldSpec) -> Self {
        let z = T::zero(field);
        BiDualScalar::new(z.clone(), z.clone(), x, z)
    }

    /// `bidual_invert`: fails exactly when the constant coefficient is not a unit.
    pub fn invert(&self) -> Result<Self> {
        self.try_inverse().ok_or(Error::DivisionByZero)
    }
}

impl<T: Ring> fmt::Display for BiDualScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})+ε₁({})+ε₂({})+ε₁ε₂({})",
            self.c0, self.c1, self.c2, self.c12
        )
    }
}

impl<T: Ring> Add for BiDualScalar<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BiDualScalar::new(
            self.c0 + rhs.c0,
            self.c1 + rhs.c1,
            self.c2 + rhs.c2,
            self.c12 + rhs.c12,
        )
    }
}

impl<T: Ring> Sub for BiDualScalar<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        BiDualScalar::new(
            self.c0 - rhs.c0,
            self.c1 - rhs.c1,
            self.c2 - rhs.c2,
            self.c12 - rhs.c12,
        )
    }
}

impl<T: Ring> Mul for BiDualScalar<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a0, a1, a2, a12) = (self.c0, self.c1, self.c2, self.c12);
        let (b0, b1, b2, b12) = (rhs.c0, rhs.c1, rhs.c2, rhs.c12);
        let c12 = a0.clone() * b12
            + a1.clone() * b2.clone()
            + a2.clone() * b1.clone()
            + a12 * b0.clone();
        let c1 = a0.clone() * b1 + a1 * b0.clone();
        let c2 = a0.clone() * b2 + a2 * b0.clone();
        BiDualScalar::new(a0 * b0, c1, c2, c12)
    }
}

impl<T: Ring> Neg for BiDualScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        BiDualScalar::new(-self.c0, -self.c1, -self.c2, -self.c12)
    }
}

impl<T: Ring> Ring for BiDualScalar<T> {
    fn zero(field: &FieldSpec) -> Self {
        BiDualScalar::constant(T::zero(field), field)
    }

    fn one(field: &FieldSpec) -> Self {
        BiDualScalar::constant(T::one(field), field)
    }

    fn from_int(n: i64, field: &FieldSpec) -> Self {
        BiDualScalar::constant(T::from_int(n, field), field)
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero() && self.c12.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.c0.is_unit()
    }

    fn try_inverse(&self) -> Option<Self> {
        let y0 = self.c0.try_inverse()?;
        let y0sq = y0.clone() * y0.clone();
        let y1 = -(self.c1.clone() * y0sq.clone());
        let y2 = -(self.c2.clone() * y0sq.clone());
        let two_c1c2 = self.c1.clone() * self.c2.clone() + self.c1.clone() * self.c2.clone();
        let y12 = two_c1c2 * y0sq.clone() * y0.clone() - self.c12.clone() * y0sq;
        Some(BiDualScalar::new(y0, y1, y2, y12))
    }

    fn conj(&self, field: &FieldSpec) -> Self {
        BiDualScalar::new(
            self.c0.conj(field),
            self.c1.conj(field),
            self.c2.conj(field),
            self.c12.conj(field),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Rational};

    #[test]
    fn bidual_inverse_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        let c = |v| Fp::from_int(v, &f5);
        let x = BiDualScalar::new(c(1), c(3), c(0), c(0));
        assert_eq!(x.invert().unwrap(), BiDualScalar::new(c(1), c(2), c(0), c(0)));

        let one = BiDualScalar::<Fp>::one(&f5);
        assert_eq!(one.invert().unwrap(), one);

        let q = FieldSpec::RATIONAL;
        let r = |n, d| Rational::new(n, d);
        let x = BiDualScalar::new(r(2, 1), r(0, 1), r(0, 1), r(1, 1));
        let y = x.invert().unwrap();
        assert_eq!(y, BiDualScalar::new(r(1, 2), r(0, 1), r(0, 1), r(-1, 4)));
        assert_eq!(x * y, BiDualScalar::one(&q));
    }

    #[test]
    fn nilpotent_elements_do_not_invert() {
        let q = FieldSpec::RATIONAL;
        let e = BiDualScalar::eps1(Rational::new(1, 1), &q);
        assert!(e.invert().is_err());
        assert!((e.clone() * e).is_zero());
        let d = DualScalar::new(Rational::new(0, 1), Rational::new(2, 1));
        assert!(d.try_inverse().is_none());
        assert!((d.clone() * d).is_zero());
    }
}
