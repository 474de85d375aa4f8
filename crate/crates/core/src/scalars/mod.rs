//! Exact base fields and the nilpotent ring extensions built on them.
//!
//! Every scalar type is tied to a runtime [`FieldSpec`]. Constants such as
//! zero and one are produced from the spec, which is how a modulus chosen at
//! run time (`fp:7`) coexists with a generic matrix core.

mod dual;
mod gauss;
mod prime;
mod quadratic;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};

pub use dual::{BiDualScalar, DualScalar};
pub use gauss::Gauss;
pub use prime::Fp;
pub use quadratic::Fp2;
pub use rational::Rational;

/// Largest prime accepted for `fp:<p>` and `fp2:<p>`; keeps products in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    GaussianRational,
    Prime(u64),
    /// F_p[t]/(t² − d) with d the least positive non-square mod p.
    Quadratic(u64),
}

/// The base involution `z ↦ z̄` used by sesquilinear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseInvolution {
    Identity,
    Conjugation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub involution: BaseInvolution,
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec {
        kind: FieldKind::Rational,
        involution: BaseInvolution::Identity,
    };

    pub const GAUSSIAN: FieldSpec = FieldSpec {
        kind: FieldKind::GaussianRational,
        involution: BaseInvolution::Conjugation,
    };

    pub fn new(kind: FieldKind, involution: BaseInvolution) -> Result<Self> {
        match kind {
            FieldKind::Prime(p) => check_prime(p)?,
            FieldKind::Quadratic(p) => {
                check_prime(p)?;
                if p == 2 {
                    return Err(Error::FieldSpec(
                        "fp2:2 has no non-square to adjoin; use an odd prime".into(),
                    ));
                }
            }
            _ => {}
        }
        let conj_ok = matches!(
            kind,
            FieldKind::GaussianRational | FieldKind::Quadratic(_)
        );
        if involution == BaseInvolution::Conjugation && !conj_ok {
            return Err(Error::FieldSpec(format!(
                "conjugation is not available on {kind:?}"
            )));
        }
        Ok(FieldSpec { kind, involution })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldKind::Prime(p), BaseInvolution::Identity)
    }

    /// F_{p²} with the Frobenius `t ↦ −t` as base involution.
    pub fn quadratic(p: u64) -> Result<Self> {
        Self::new(FieldKind::Quadratic(p), BaseInvolution::Conjugation)
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rational | FieldKind::GaussianRational => 0,
            FieldKind::Prime(p) | FieldKind::Quadratic(p) => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, or `None` for infinite fields.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime(p) => Some(p),
            FieldKind::Quadratic(p) => Some(p * p),
            _ => None,
        }
    }

    pub fn two_invertible(&self) -> bool {
        self.characteristic() != 2
    }

    pub fn has_conjugation(&self) -> bool {
        self.involution == BaseInvolution::Conjugation
    }

    /// Calls `visitor` with the concrete scalar type matching this spec.
    pub fn dispatch<V: FieldVisitor>(self, visitor: V) -> V::Output {
        match self.kind {
            FieldKind::Rational => visitor.visit::<Rational>(self),
            FieldKind::GaussianRational => visitor.visit::<Gauss>(self),
            FieldKind::Prime(_) => visitor.visit::<Fp>(self),
            FieldKind::Quadratic(_) => visitor.visit::<Fp2>(self),
        }
    }
}

/// Generic callback for [`FieldSpec::dispatch`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: FieldSpec) -> Self::Output;
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id = self.involution == BaseInvolution::Identity;
        match self.kind {
            FieldKind::Rational => write!(f, "rat"),
            FieldKind::GaussianRational if id => write!(f, "gauss:id"),
            FieldKind::GaussianRational => write!(f, "gauss"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
            FieldKind::Quadratic(p) if id => write!(f, "fp2:{p}:id"),
            FieldKind::Quadratic(p) => write!(f, "fp2:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `rat`, `gauss`, `fp:<p>`, `fp2:<p>`, the shorthands `f<q>`
    /// (`f5` = `fp:5`, `f9` = `fp2:3`), and a trailing `:id` to force the
    /// identity involution on `gauss`/`fp2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (body, identity) = match s.strip_suffix(":id") {
            Some(b) => (b.to_string(), true),
            None => (s.clone(), false),
        };
        let bad = || Error::FieldSpec(s.clone());
        let parse_p = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let kind = if body == "rat" || body == "q" {
            FieldKind::Rational
        } else if body == "gauss" || body == "qi" {
            FieldKind::GaussianRational
        } else if let Some(p) = body.strip_prefix("fp2:") {
            FieldKind::Quadratic(parse_p(p)?)
        } else if let Some(p) = body.strip_prefix("fp:") {
            FieldKind::Prime(parse_p(p)?)
        } else if let Some(q) = body.strip_prefix('f') {
            let q = parse_p(q)?;
            if is_prime(q) {
                FieldKind::Prime(q)
            } else {
                let r = (q as f64).sqrt().round() as u64;
                if r * r == q && is_prime(r) {
                    FieldKind::Quadratic(r)
                } else {
                    return Err(bad());
                }
            }
        } else {
            return Err(bad());
        };
        let involution = match kind {
            FieldKind::GaussianRational | FieldKind::Quadratic(_) if !identity => {
                BaseInvolution::Conjugation
            }
            _ => BaseInvolution::Identity,
        };
        FieldSpec::new(kind, involution)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::FieldSpec(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::FieldSpec(format!("{p} exceeds {MAX_PRIME}")));
    }
    Ok(())
}

/// Square class of a nonzero scalar, used as a discriminant invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
    /// Signed square-free representative in ℚ^×/(ℚ^×)².
    SquareFree(BigInt),
}

/// Commutative ring operations shared by fields and their dual-number
/// extensions. Elimination only ever divides by [`Ring::is_unit`] entries.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero(field: &FieldSpec) -> Self;
    fn one(field: &FieldSpec) -> Self;
    fn from_int(n: i64, field: &FieldSpec) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn try_inverse(&self) -> Option<Self>;
    /// Base involution, applied coefficientwise on extensions.
    fn conj(&self, field: &FieldSpec) -> Self;

    fn is_one(&self, field: &FieldSpec) -> bool {
        *self == Self::one(field)
    }
}

/// An exact field with a canonical total order and text form.
pub trait Field: Ring + Ord {
    /// True when `field` describes this concrete type.
    fn accepts(field: &FieldSpec) -> bool;

    fn parse(text: &str, field: &FieldSpec) -> Result<Self>;

    /// All elements in ascending order, for finite fields.
    fn elements(field: &FieldSpec) -> Option<Vec<Self>>;

    /// Uniform over finite fields; small numerators and denominators otherwise.
    fn random<R: Rng + ?Sized>(rng: &mut R, field: &FieldSpec) -> Self;

    fn square_class(&self) -> Option<SquareClass>;

    fn inverse(&self) -> Result<Self> {
        self.try_inverse().ok_or(Error::DivisionByZero)
    }
}

/// `scalar_parse`: parse `text` as an element of `field`.
pub fn parse_scalar<F: Field>(text: &str, field: &FieldSpec) -> Result<F> {
    if !F::accepts(field) {
        return Err(Error::FieldSpec(format!("{field} for this scalar type")));
    }
    F::parse(text, field)
}

/// Integer or `a/b` literal.
pub(crate) fn parse_fraction(text: &str) -> Result<(BigInt, BigInt)> {
    let t = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not an integer or fraction"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !valid(d) {
        return Err(bad());
    }
    let num: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = d.trim_start_matches('+').parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok((num, den))
}

/// Splits `a+bu` into the real literal and the coefficient literal of the
/// unit `u` (`i` or `t`). Missing parts are `"0"`; a bare sign means ±1.
pub(crate) fn split_two_part(text: &str, unit: char) -> (String, Option<String>) {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix(unit) else {
        return (t, None);
    };
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
            split = Some(i);
            break;
        }
    }
    let (re, im) = match split {
        Some(i) => (body[..i].to_string(), body[i..].to_string()),
        None => ("0".to_string(), body.to_string()),
    };
    let im = match im.as_str() {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        _ => im.trim_start_matches('+').to_string(),
    };
    (re, Some(im))
}
