use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{parse_fraction, Field, FieldKind, FieldSpec, Ring, SquareClass};
use crate::error::Result;

/// Element of ℚ, always stored as a reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Ring for Rational {
    fn zero(_: &FieldSpec) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &FieldSpec) -> Self {
        Rational(BigRational::one())
    }

    fn from_int(n: i64, _: &FieldSpec) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_unit(&self) -> bool {
        !self.0.is_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }

    fn conj(&self, _: &FieldSpec) -> Self {
        self.clone()
    }
}

/// Signed square-free part of a nonzero integer.
pub(crate) fn square_free(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut k = 0;
        while m.is_multiple_of(&d) {
            m /= &d;
            k += 1;
        }
        if k % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * m * sign
}

impl Field for Rational {
    fn accepts(field: &FieldSpec) -> bool {
        field.kind == FieldKind::Rational
    }

    fn parse(text: &str, _: &FieldSpec) -> Result<Self> {
        let (n, d) = parse_fraction(text)?;
        Ok(Rational::from_big(n, d))
    }

    fn elements(_: &FieldSpec) -> Option<Vec<Self>> {
        None
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, _: &FieldSpec) -> Self {
        let n: i64 = rng.gen_range(-3..=3);
        let d: i64 = rng.gen_range(1..=3);
        Rational::new(n, d)
    }

    fn square_class(&self) -> Option<SquareClass> {
        if self.0.is_zero() {
            return Some(SquareClass::Zero);
        }
        let n = self.0.numer() * self.0.denom();
        Some(SquareClass::SquareFree(square_free(&n)))
    }
}
