use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{parse_fraction, split_two_part, Field, FieldKind, FieldSpec, Ring, SquareClass};
use crate::error::{Error, Result};

/// Element `(re + im·i) / den` of ℚ(i).
///
/// Normal form: `den > 0` and `gcd(re, im, den) = 1`, so structural equality
/// is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gauss {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl Gauss {
    pub fn new(re: BigInt, im: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = re.gcd(&im).gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        Gauss {
            re: re / &g,
            im: im / &g,
            den: den / g,
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gauss::new(re.into(), im.into(), BigInt::one())
    }

    pub fn real_part(&self) -> BigRational {
        BigRational::new(self.re.clone(), self.den.clone())
    }

    pub fn imag_part(&self) -> BigRational {
        BigRational::new(self.im.clone(), self.den.clone())
    }

    fn from_parts(re: BigRational, im: BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let rn = re.numer() * (&den / re.denom());
        let inn = im.numer() * (&den / im.denom());
        Gauss::new(rn, inn, den)
    }

    /// The complex conjugate, independent of the field's chosen involution.
    pub fn conjugate(&self) -> Self {
        Gauss {
            re: self.re.clone(),
            im: -self.im.clone(),
            den: self.den.clone(),
        }
    }
}

impl PartialOrd for Gauss {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gauss {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.re * &other.den)
            .cmp(&(&other.re * &self.den))
            .then_with(|| (&self.im * &other.den).cmp(&(&other.im * &self.den)))
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.real_part();
        let im = self.imag_part();
        let im_text = |q: &BigRational| {
            if q.is_one() {
                String::new()
            } else if *q == -BigRational::one() {
                "-".to_string()
            } else {
                fmt_rat(q)
            }
        };
        if im.is_zero() {
            write!(f, "{}", fmt_rat(&re))
        } else if re.is_zero() {
            write!(f, "{}i", im_text(&im))
        } else if im.is_negative() {
            write!(f, "{}-{}i", fmt_rat(&re), im_text(&-im))
        } else {
            write!(f, "{}+{}i", fmt_rat(&re), im_text(&im))
        }
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, rhs: Gauss) -> Gauss {
        Gauss::new(
            &self.re * &rhs.den + &rhs.re * &self.den,
            &self.im * &rhs.den + &rhs.im * &self.den,
            self.den * rhs.den,
        )
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, rhs: Gauss) -> Gauss {
        self + (-rhs)
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, rhs: Gauss) -> Gauss {
        Gauss::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
            self.den * rhs.den,
        )
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss {
            re: -self.re,
            im: -self.im,
            den: self.den,
        }
    }
}

impl Ring for Gauss {
    fn zero(_: &FieldSpec) -> Self {
        Gauss::from_ints(0, 0)
    }

    fn one(_: &FieldSpec) -> Self {
        Gauss::from_ints(1, 0)
    }

    fn from_int(n: i64, _: &FieldSpec) -> Self {
        Gauss::from_ints(n, 0)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // den / (re + im i) = den (re - im i) / (re² + im²)
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Gauss::new(
            &self.den * &self.re,
            -(&self.den * &self.im),
            norm,
        ))
    }

    fn conj(&self, field: &FieldSpec) -> Self {
        if field.has_conjugation() {
            self.conjugate()
        } else {
            self.clone()
        }
    }
}

impl Field for Gauss {
    fn accepts(field: &FieldSpec) -> bool {
        field.kind == FieldKind::GaussianRational
    }

    fn parse(text: &str, _: &FieldSpec) -> Result<Self> {
        let (re, im) = split_two_part(text, 'i');
        let (rn, rd) = parse_fraction(&re)?;
        let im = match im {
            Some(s) => {
                let (n, d) = parse_fraction(&s)?;
                BigRational::new(n, d)
            }
            None => BigRational::zero(),
        };
        if text.trim().is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        Ok(Gauss::from_parts(BigRational::new(rn, rd), im))
    }

    fn elements(_: &FieldSpec) -> Option<Vec<Self>> {
        None
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, _: &FieldSpec) -> Self {
        let re: i64 = rng.gen_range(-2..=2);
        let im: i64 = rng.gen_range(-2..=2);
        let den: i64 = rng.gen_range(1..=2);
        Gauss::new(re.into(), im.into(), den.into())
    }

    fn square_class(&self) -> Option<SquareClass> {
        None
    }
}
