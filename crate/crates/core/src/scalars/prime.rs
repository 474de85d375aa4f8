use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{parse_fraction, Field, FieldKind, FieldSpec, Ring, SquareClass};
use crate::error::{Error, Result};

/// Residue class modulo a prime `p`, stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    // field order matters for the derived Ord: modulus first, then value
    p: u64,
    v: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            p,
            v: v.rem_euclid(p as i64) as u64,
        }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { p: self.p, v: 1 % self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub(crate) fn from_big(n: &BigInt, p: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(p));
        Fp { p, v: r.to_u64().unwrap_or(0) }
    }
}

pub(crate) fn modulus_of(field: &FieldSpec) -> u64 {
    match field.kind {
        FieldKind::Prime(p) | FieldKind::Quadratic(p) => p,
        _ => panic!("{field} has no prime modulus"),
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp {
            p: self.p,
            v: if s >= self.p { s - self.p } else { s },
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            p: self.p,
            v: self.v * rhs.v % self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            p: self.p,
            v: if self.v == 0 { 0 } else { self.p - self.v },
        }
    }
}

impl Ring for Fp {
    fn zero(field: &FieldSpec) -> Self {
        Fp { p: modulus_of(field), v: 0 }
    }

    fn one(field: &FieldSpec) -> Self {
        Fp::new(1, modulus_of(field))
    }

    fn from_int(n: i64, field: &FieldSpec) -> Self {
        Fp::new(n, modulus_of(field))
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_unit(&self) -> bool {
        self.v != 0
    }

    fn try_inverse(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }

    fn conj(&self, _: &FieldSpec) -> Self {
        *self
    }
}

impl Field for Fp {
    fn accepts(field: &FieldSpec) -> bool {
        matches!(field.kind, FieldKind::Prime(_))
    }

    fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let p = modulus_of(field);
        let (n, d) = parse_fraction(text)?;
        let d = Fp::from_big(&d, p)
            .try_inverse()
            .ok_or(Error::DivisionByZero)?;
        Ok(Fp::from_big(&n, p) * d)
    }

    fn elements(field: &FieldSpec) -> Option<Vec<Self>> {
        let p = modulus_of(field);
        Some((0..p).map(|v| Fp { p, v }).collect())
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, field: &FieldSpec) -> Self {
        let p = modulus_of(field);
        Fp { p, v: rng.gen_range(0..p) }
    }

    fn square_class(&self) -> Option<SquareClass> {
        if self.v == 0 {
            return Some(SquareClass::Zero);
        }
        if self.p == 2 || self.pow((self.p - 1) / 2).v == 1 {
            Some(SquareClass::Square)
        } else {
            Some(SquareClass::NonSquare)
        }
    }
}
