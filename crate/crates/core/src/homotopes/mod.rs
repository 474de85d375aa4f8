//! The affine picture: homotope products `x ·_a y = x + y − xay`, the
//! classical matrix families and their hulls, Lie brackets, associative
//! pairs and triple systems, and bridges back to the Grassmannian.

mod bridges;
mod pairs;

pub use bridges::{prop41_bridge, theorem37_roundtrip, thm33_bridge, Star};
pub use pairs::{
    check_algebra_first_kind, check_pair_identity, check_triple_identities, pair_chart, pair_embed,
    pair_product, pair_product_geometric, triple_from_involution, AssociativePair, PairSign,
    TripleSystem,
};

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matlin::Matrix;
use crate::report::LawResult;
use crate::sample::{random_matrix, rng_for};
use crate::scalars::{BiDualScalar, Field, FieldSpec, Ring};

/// `M(p,q)` with parameter `a ∈ M(q,p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopeAlgebra<T> {
    pub p: usize,
    pub q: usize,
    pub field: FieldSpec,
    pub a_param: Matrix<T>,
}

impl<T: Ring> HomotopeAlgebra<T> {
    pub fn new(p: usize, q: usize, a_param: Matrix<T>) -> Result<Self> {
        if a_param.rows() != q || a_param.cols() != p {
            return Err(Error::Shape(format!(
                "parameter must be {q}x{p}, got {}x{}",
                a_param.rows(),
                a_param.cols()
            )));
        }
        Ok(HomotopeAlgebra { p, q, field: *a_param.field(), a_param })
    }

    /// Square case `M(n,n)`.
    pub fn square(a_param: Matrix<T>) -> Result<Self> {
        let n = a_param.rows();
        Self::new(n, n, a_param)
    }

    fn check(&self, x: &Matrix<T>) -> Result<()> {
        if x.rows() != self.p || x.cols() != self.q {
            return Err(Error::Shape(format!(
                "element must be {}x{}, got {}x{}",
                self.p,
                self.q,
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    /// `1 − x·a`, an endomorphism of `K^p`.
    pub fn one_minus_xa(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        self.check(x)?;
        Matrix::identity(self.p, &self.field).checked_sub(&(x * &self.a_param))
    }

    /// `G(𝔸, a)`: `1 − xa` invertible.
    pub fn is_unit(&self, x: &Matrix<T>) -> bool {
        self.one_minus_xa(x).map(|m| m.is_invertible()).unwrap_or(false)
    }
}

/// `x ·_a y = x + y − x·a·y`
pub fn hom_product<T: Ring>(x: &Matrix<T>, y: &Matrix<T>, alg: &HomotopeAlgebra<T>) -> Result<Matrix<T>> {
    alg.check(x)?;
    alg.check(y)?;
    let xay = &(x * &alg.a_param) * y;
    x.checked_add(y)?.checked_sub(&xay)
}

/// `j_a(x) = −(1 − xa)⁻¹ x`
pub fn hom_inverse<T: Ring>(x: &Matrix<T>, alg: &HomotopeAlgebra<T>) -> Result<Matrix<T>> {
    let m = alg.one_minus_xa(x)?.invert()?;
    Ok(-&(&m * x))
}

/// `[X, Y]_A = XAY − YAX`
pub fn lie_bracket_formula<T: Ring>(x: &Matrix<T>, y: &Matrix<T>, a: &Matrix<T>) -> Result<Matrix<T>> {
    let alg = HomotopeAlgebra::new(x.rows(), x.cols(), a.clone())?;
    alg.check(y)?;
    let xay = &(x * a) * y;
    let yax = &(y * a) * x;
    xay.checked_sub(&yax)
}

/// The bracket read off the second tangent group: the `ε₁ε₂` coefficient of
/// the commutator of `ε₁X` and `ε₂Y`.
///
/// The group law on the tangent bundle is `g ∘ h = h ·_A g`, the order of
/// the affine group law `X·Z = X + Z − ZAX`.
pub fn lie_bracket_dual<F: Field>(x: &Matrix<F>, y: &Matrix<F>, a: &Matrix<F>) -> Result<Matrix<F>> {
    let f = *x.field();
    let alg = HomotopeAlgebra::new(x.rows(), x.cols(), a.map(|v| BiDualScalar::constant(v.clone(), &f)))?;
    alg.check(&y.map(|v| BiDualScalar::constant(v.clone(), &f)))?;
    let ex = x.map(|v| BiDualScalar::eps1(v.clone(), &f));
    let ey = y.map(|v| BiDualScalar::eps2(v.clone(), &f));
    let op = |g: &Matrix<BiDualScalar<F>>, h: &Matrix<BiDualScalar<F>>| hom_product(h, g, &alg);
    let ex_inv = hom_inverse(&ex, &alg)?;
    let ey_inv = hom_inverse(&ey, &alg)?;
    let c = op(&op(&op(&ex, &ey)?, &ex_inv)?, &ey_inv)?;
    Ok(c.map(|v| v.c12.clone()))
}

/// 200 seeded `(X, Y, A)` over the field, square sizes `1..=max_n`
/// plus rectangular `2x3` with `3x2` parameters.
pub fn check_lie_brackets<F: Field>(field: &FieldSpec, max_n: usize, trials: u64, seed: u64) -> Result<LawResult> {
    let mut r = LawResult::new(
        "lie",
        "dual-number bracket = XAY − YAX",
        format!("{field}, n ≤ {max_n} and 2x3, {trials} trials"),
    );
    for t in 0..trials {
        let mut rng = rng_for(seed, t);
        let (p, q) = if t % 4 == 3 { (2, 3) } else { let n = rng.gen_range(1..=max_n); (n, n) };
        let x: Matrix<F> = random_matrix(&mut rng, p, q, field);
        let y: Matrix<F> = random_matrix(&mut rng, p, q, field);
        let a: Matrix<F> = random_matrix(&mut rng, q, p, field);
        let dual = lie_bracket_dual(&x, &y, &a)?;
        let formula = lie_bracket_formula(&x, &y, &a)?;
        r.record(dual == formula, || json!({"X": x.to_string(), "Y": y.to_string(), "A": a.to_string()}));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    GL,
    O,
    Sp,
    U,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [FamilyKind::GL, FamilyKind::O, FamilyKind::Sp, FamilyKind::U];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::GL => "gl",
            FamilyKind::O => "o",
            FamilyKind::Sp => "sp",
            FamilyKind::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(FamilyKind::GL),
            "o" => Ok(FamilyKind::O),
            "sp" => Ok(FamilyKind::Sp),
            "u" => Ok(FamilyKind::U),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// One row of the classical table: `GL_n(A)`, `O_n(A)`, `Sp(A)` or `U_n(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalFamily<F> {
    pub kind: FamilyKind,
    pub alg: HomotopeAlgebra<F>,
}

impl<F: Field> ClassicalFamily<F> {
    /// Checks the symmetry class of `a`: symmetric for O, antisymmetric for
    /// Sp, hermitian for U (which needs a nontrivial conjugation).
    pub fn new(kind: FamilyKind, a: Matrix<F>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape("family parameter must be square".into()));
        }
        let ok = match kind {
            FamilyKind::GL => true,
            FamilyKind::O => a.transpose() == a,
            FamilyKind::Sp => a.transpose() == -&a,
            FamilyKind::U => {
                if !a.field().has_conjugation() {
                    return Err(Error::Precondition(format!(
                        "the U family needs a field with conjugation, not {}",
                        a.field()
                    )));
                }
                a.conj_transpose() == a
            }
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "parameter has the wrong symmetry for the {} family",
                kind.name()
            )));
        }
        Ok(ClassicalFamily { kind, alg: HomotopeAlgebra::square(a)? })
    }

    pub fn n(&self) -> usize {
        self.alg.p
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.alg.a_param
    }

    pub fn field(&self) -> &FieldSpec {
        &self.alg.field
    }

    /// The defining equation without invertibility:
    /// O `X + Xᵗ = XᵗAX`, Sp `Xᵗ − X = XᵗAX`, U `X + X̄ᵗ = X̄ᵗAX`.
    pub fn hull_member(&self, x: &Matrix<F>) -> bool {
        if x.rows() != self.n() || x.cols() != self.n() {
            return false;
        }
        let a = self.a();
        let lhs_rhs = |adj: Matrix<F>, lhs: Matrix<F>| lhs == &(&adj * a) * x;
        match self.kind {
            FamilyKind::GL => true,
            FamilyKind::O => lhs_rhs(x.transpose(), x + &x.transpose()),
            FamilyKind::Sp => lhs_rhs(x.transpose(), &x.transpose() - x),
            FamilyKind::U => lhs_rhs(x.conj_transpose(), x + &x.conj_transpose()),
        }
    }

    pub fn family_member(&self, x: &Matrix<F>) -> bool {
        self.hull_member(x) && self.alg.is_unit(x)
    }

    pub fn product(&self, x: &Matrix<F>, y: &Matrix<F>) -> Result<Matrix<F>> {
        hom_product(x, y, &self.alg)
    }

    /// Hull elements over a finite field, in lexicographic order.
    pub fn hull(&self) -> Result<Vec<Matrix<F>>> {
        let n = self.n();
        Ok(Matrix::enumerate(n, n, self.field())?.into_iter().filter(|x| self.hull_member(x)).collect())
    }

    pub fn members(&self) -> Result<Vec<Matrix<F>>> {
        Ok(self.hull()?.into_iter().filter(|x| self.alg.is_unit(x)).collect())
    }

    /// Exhaustive closure of the hull under `·_A`, unit `0` included.
    pub fn check_hull_closure(&self) -> Result<LawResult> {
        let hull = self.hull()?;
        let mut r = LawResult::new(
            "hull",
            "hull closed under ·_A with unit 0",
            format!("{} n={} over {}, A={}", self.kind.name(), self.n(), self.field(), self.a()),
        );
        let zero = Matrix::zeros(self.n(), self.n(), self.field());
        r.record(self.hull_member(&zero), || json!({"X": zero.to_string()}));
        for x in &hull {
            r.record(self.product(x, &zero)? == *x && self.product(&zero, x)? == *x, || {
                json!({"X": x.to_string(), "unit": "0"})
            });
            for y in &hull {
                let z = self.product(x, y)?;
                r.record(self.hull_member(&z), || json!({"X": x.to_string(), "Y": y.to_string()}));
            }
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        json!({"family": self.kind.name(), "n": self.n(), "field": self.field().to_string(), "A": self.a().to_string()})
    }
}

/// A random parameter of the right symmetry class.
pub fn random_parameter<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    kind: FamilyKind,
    n: usize,
    field: &FieldSpec,
) -> Matrix<F> {
    let m: Matrix<F> = random_matrix(rng, n, n, field);
    match kind {
        FamilyKind::GL => m,
        FamilyKind::O => &m + &m.transpose(),
        FamilyKind::Sp => &m - &m.transpose(),
        FamilyKind::U => &m + &m.conj_transpose(),
    }
}

/// `1 − XA` and `1 − AX` are invertible together (over a field).
pub fn unit_criteria_agree<F: Field>(x: &Matrix<F>, alg: &HomotopeAlgebra<F>) -> Result<bool> {
    let xa = alg.one_minus_xa(x)?.is_invertible();
    let ax = Matrix::identity(alg.q, &alg.field).checked_sub(&(&alg.a_param * x))?.is_invertible();
    Ok(xa == ax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Fp2, Rational};

    fn q() -> FieldSpec {
        FieldSpec::RATIONAL
    }

    fn m(rows: &[&[i64]], f: &FieldSpec) -> Matrix<Rational> {
        Matrix::from_ints(rows, f).unwrap()
    }

    #[test]
    fn scalar_homotope() {
        let f = q();
        let alg = HomotopeAlgebra::square(m(&[&[1]], &f)).unwrap();
        assert_eq!(hom_product(&m(&[&[2]], &f), &m(&[&[3]], &f), &alg).unwrap(), m(&[&[-1]], &f));
        let two = m(&[&[2]], &f);
        assert_eq!(hom_inverse(&two, &alg).unwrap(), two);
        assert!(hom_product(&two, &two, &alg).unwrap().is_zero());
        assert!(hom_inverse(&m(&[&[1]], &f), &alg).is_err());
        let flat = HomotopeAlgebra::square(m(&[&[0]], &f)).unwrap();
        assert_eq!(hom_product(&two, &m(&[&[3]], &f), &flat).unwrap(), m(&[&[5]], &f));
    }

    #[test]
    fn shape_errors() {
        let f = q();
        let alg = HomotopeAlgebra::new(2, 3, Matrix::zeros(3, 2, &f)).unwrap();
        assert!(hom_product(&Matrix::<Rational>::zeros(2, 2, &f), &Matrix::zeros(2, 3, &f), &alg).is_err());
        assert!(HomotopeAlgebra::<Rational>::new(2, 3, Matrix::zeros(2, 3, &f)).is_err());
    }

    #[test]
    fn inverse_is_two_sided_f5() {
        let f = FieldSpec::prime(5).unwrap();
        let mut done = 0;
        for t in 0..50 {
            let mut rng = rng_for(3, t);
            let a: Matrix<Fp> = random_matrix(&mut rng, 2, 2, &f);
            let x: Matrix<Fp> = random_matrix(&mut rng, 2, 2, &f);
            let alg = HomotopeAlgebra::square(a).unwrap();
            assert!(unit_criteria_agree(&x, &alg).unwrap());
            if let Ok(j) = hom_inverse(&x, &alg) {
                assert!(hom_product(&x, &j, &alg).unwrap().is_zero());
                assert!(hom_product(&j, &x, &alg).unwrap().is_zero());
                done += 1;
            }
        }
        assert!(done > 20);
    }

    #[test]
    fn brackets() {
        let f = q();
        let e12 = m(&[&[0, 1], &[0, 0]], &f);
        let e21 = m(&[&[0, 0], &[1, 0]], &f);
        let one = Matrix::identity(2, &f);
        let want = m(&[&[1, 0], &[0, -1]], &f);
        assert_eq!(lie_bracket_formula(&e12, &e21, &one).unwrap(), want);
        assert_eq!(lie_bracket_dual(&e12, &e21, &one).unwrap(), want);
        assert!(lie_bracket_formula(&e12, &e21, &Matrix::zeros(2, 2, &f)).unwrap().is_zero());
        assert!(lie_bracket_dual(&e12, &e12, &one).unwrap().is_zero());
        let f5 = FieldSpec::prime(5).unwrap();
        let r = check_lie_brackets::<Fp>(&f5, 3, 40, 7).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn orthogonal_rank_one() {
        let f = q();
        let fam = ClassicalFamily::new(FamilyKind::O, m(&[&[1]], &f)).unwrap();
        for v in -3..=3 {
            let x = m(&[&[v]], &f);
            assert_eq!(fam.family_member(&x), v == 0 || v == 2, "{v}");
        }
        assert!(ClassicalFamily::new(FamilyKind::Sp, m(&[&[1]], &f)).is_err());
        assert!(ClassicalFamily::new(FamilyKind::U, m(&[&[1]], &f)).is_err());
    }

    #[test]
    fn symplectic_hull_closed_f5() {
        let f = FieldSpec::prime(5).unwrap();
        let omega = Matrix::<Fp>::from_ints(&[&[0, 1], &[-1, 0]], &f).unwrap();
        let fam = ClassicalFamily::new(FamilyKind::Sp, omega).unwrap();
        let r = fam.check_hull_closure().unwrap();
        assert!(r.passed() && r.cases > 100, "{r:?}");
        let members = fam.members().unwrap();
        for x in &members {
            assert!(members.contains(&hom_inverse(x, &fam.alg).unwrap()));
        }
    }

    #[test]
    fn unitary_hull_closed_f9() {
        let f = FieldSpec::quadratic(3).unwrap();
        let mut rng = rng_for(1, 0);
        let a: Matrix<Fp2> = random_parameter(&mut rng, FamilyKind::U, 2, &f);
        let fam = ClassicalFamily::new(FamilyKind::U, a).unwrap();
        assert!(fam.check_hull_closure().unwrap().passed());
    }
}
