use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::prime::modulus_of;
use super::{parse_fraction, split_two_part, Field, FieldKind, FieldSpec, Fp, Ring, SquareClass};
use crate::error::{Error, Result};

/// Element `a + b·t` of F_{p²} = F_p[t]/(t² − d), `d` the least positive
/// non-square mod `p`. The conjugation `t ↦ −t` is the Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2 {
    // derived Ord compares the t-coefficient before the constant term
    p: u64,
    d: u64,
    b: u64,
    a: u64,
}

/// Least positive non-square modulo an odd prime.
pub fn least_non_square(p: u64) -> u64 {
    (2..p)
        .find(|&d| Fp::new(d as i64, p).pow((p - 1) / 2).value() == p - 1)
        .expect("odd prime has a non-square")
}

impl Fp2 {
    pub fn new(a: i64, b: i64, p: u64) -> Self {
        let m = p as i64;
        Fp2 {
            p,
            d: least_non_square(p),
            a: a.rem_euclid(m) as u64,
            b: b.rem_euclid(m) as u64,
        }
    }

    pub fn coefficients(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// The adjoined square `d = t²`.
    pub fn adjoined_square(&self) -> u64 {
        self.d
    }

    fn with(&self, a: u64, b: u64) -> Self {
        Fp2 { p: self.p, d: self.d, a, b }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.with(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bt = if self.b == 1 {
            "t".to_string()
        } else {
            format!("{}t", self.b)
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, _) => write!(f, "{bt}"),
            (a, _) => write!(f, "{a}+{bt}"),
        }
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.p, rhs.p);
        self.with((self.a + rhs.a) % self.p, (self.b + rhs.b) % self.p)
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self + (-rhs)
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p;
        let a = (self.a * rhs.a % p + self.d * (self.b * rhs.b % p)) % p;
        let b = (self.a * rhs.b % p + self.b * rhs.a % p) % p;
        self.with(a, b)
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        let p = self.p;
        self.with((p - self.a) % p, (p - self.b) % p)
    }
}

impl Ring for Fp2 {
    fn zero(field: &FieldSpec) -> Self {
        Fp2::new(0, 0, modulus_of(field))
    }

    fn one(field: &FieldSpec) -> Self {
        Fp2::new(1, 0, modulus_of(field))
    }

    fn from_int(n: i64, field: &FieldSpec) -> Self {
        Fp2::new(n, 0, modulus_of(field))
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.p;
        // (a + bt)(a - bt) = a² - d b², nonzero because d is a non-square
        let norm = Fp::new(
            (self.a * self.a % p) as i64 - (self.d * (self.b * self.b % p) % p) as i64,
            p,
        );
        let inv = norm.try_inverse()?.value();
        Some(self.with(self.a * inv % p, (p - self.b) % p * inv % p))
    }

    fn conj(&self, field: &FieldSpec) -> Self {
        if field.has_conjugation() {
            self.with(self.a, (self.p - self.b) % self.p)
        } else {
            *self
        }
    }
}

impl Field for Fp2 {
    fn accepts(field: &FieldSpec) -> bool {
        matches!(field.kind, FieldKind::Quadratic(_))
    }

    fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let p = modulus_of(field);
        let (re, im) = split_two_part(text, 't');
        let coef = |s: &str| -> Result<Fp> {
            let (n, d) = parse_fraction(s)?;
            let d = Fp::from_big(&d, p)
                .try_inverse()
                .ok_or(Error::DivisionByZero)?;
            Ok(Fp::from_big(&n, p) * d)
        };
        let a = coef(&re)?;
        let b = match im {
            Some(s) => coef(&s)?,
            None => Fp::new(0, p),
        };
        Ok(Fp2::new(a.value() as i64, b.value() as i64, p))
    }

    fn elements(field: &FieldSpec) -> Option<Vec<Self>> {
        let p = modulus_of(field);
        let mut out: Vec<Fp2> = (0..p)
            .flat_map(|b| (0..p).map(move |a| Fp2::new(a as i64, b as i64, p)))
            .collect();
        out.sort();
        Some(out)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, field: &FieldSpec) -> Self {
        let p = modulus_of(field);
        Fp2::new(rng.gen_range(0..p) as i64, rng.gen_range(0..p) as i64, p)
    }

    fn square_class(&self) -> Option<SquareClass> {
        if self.is_zero() {
            return Some(SquareClass::Zero);
        }
        let q = self.p * self.p;
        if self.pow((q - 1) / 2) == self.with(1, 0) {
            Some(SquareClass::Square)
        } else {
            Some(SquareClass::NonSquare)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_structure() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        assert_eq!(least_non_square(3), 2);
        assert_eq!(least_non_square(7), 3);
        let t = Fp2::parse("t", &f9).unwrap();
        assert_eq!(t * t, Fp2::from_int(2, &f9));
        assert_eq!(t.conj(&f9), -t);
        // Frobenius: t^3 = conj(t)
        assert_eq!(t.pow(3), t.conj(&f9));
        assert_eq!(Fp2::elements(&f9).unwrap().len(), 9);
    }

    #[test]
    fn parse_and_display() {
        let f25 = FieldSpec::quadratic(5).unwrap();
        for s in ["0", "3", "t", "2t", "1+t", "4+3t"] {
            assert_eq!(Fp2::parse(s, &f25).unwrap().to_string(), s);
        }
        assert_eq!(Fp2::parse("-t", &f25).unwrap().to_string(), "4t");
        assert!(Fp2::parse("1+i", &f25).is_err());
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let f49 = FieldSpec::quadratic(7).unwrap();
        for x in Fp2::elements(&f49).unwrap() {
            if let Some(y) = x.try_inverse() {
                assert!((x * y).is_one(&f49));
            } else {
                assert!(x.is_zero());
            }
        }
    }
}
