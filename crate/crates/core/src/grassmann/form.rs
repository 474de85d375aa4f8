use rand::Rng;

use crate::error::{Error, Result};
use crate::matlin::Matrix;
use crate::scalars::{Field, FieldSpec, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Hermitian,
    SkewHermitian,
    /// Neither symmetry holds; only constructible through [`Form::unchecked`].
    Unstructured,
}

/// The three block forms on `Kⁿ ⊕ Kⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardForm {
    /// `Ωₙ = [[0, 1], [−1, 0]]`
    Symplectic,
    /// `Fₙ = [[0, 1], [1, 0]]`
    Split,
    /// `Iₙ,ₙ = [[1, 0], [0, −1]]`
    Diagonal,
}

impl StandardForm {
    pub const ALL: [StandardForm; 3] =
        [StandardForm::Symplectic, StandardForm::Split, StandardForm::Diagonal];

    pub fn name(&self) -> &'static str {
        match self {
            StandardForm::Symplectic => "symplectic",
            StandardForm::Split => "split",
            StandardForm::Diagonal => "diag",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "symplectic" | "omega" => Ok(StandardForm::Symplectic),
            "split" | "f" => Ok(StandardForm::Split),
            "diag" | "i" => Ok(StandardForm::Diagonal),
            _ => Err(Error::Parse(format!("unknown form `{s}`"))),
        }
    }
}

/// Sesquilinear form `β(u, v) = ūᵗ B v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form<F> {
    gram: Matrix<F>,
    kind: FormKind,
}

impl<F: Field> Form<F> {
    /// Nondegenerate (skew-)Hermitian form with Gram matrix `gram`.
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let kind = symmetry_of(&gram);
        if kind == FormKind::Unstructured {
            return Err(Error::FormSymmetry);
        }
        if gram.rank() != gram.rows() {
            return Err(Error::DegenerateForm);
        }
        Ok(Form { gram, kind })
    }

    /// Any square Gram matrix, degenerate or not. Used for negative controls.
    pub fn unchecked(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let kind = symmetry_of(&gram);
        Ok(Form { gram, kind })
    }

    pub fn standard(which: StandardForm, n: usize, field: &FieldSpec) -> Result<Self> {
        let one = Matrix::<F>::identity(n, field);
        let zero = Matrix::<F>::zeros(n, n, field);
        let gram = match which {
            StandardForm::Symplectic => Matrix::block2(&zero, &one, &-&one, &zero)?,
            StandardForm::Split => Matrix::block2(&zero, &one, &one, &zero)?,
            StandardForm::Diagonal => Matrix::block2(&one, &zero, &zero, &-&one)?,
        };
        Form::new(gram)
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.gram.field()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    pub fn eval(&self, u: &[F], v: &[F]) -> F {
        let f = *self.field();
        let mut s = F::zero(&f);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let ub = ui.conj(&f);
            for (j, vj) in v.iter().enumerate() {
                s = s + ub.clone() * self.gram[(i, j)].clone() * vj.clone();
            }
        }
        s
    }

    /// Gram matrix of the restriction to the row space of `basis`.
    pub fn restrict(&self, basis: &Matrix<F>) -> Matrix<F> {
        &(&basis.conj() * &self.gram) * &basis.transpose()
    }

    /// `g* B g = B`
    pub fn is_isometry(&self, g: &Matrix<F>) -> bool {
        g.is_square() && g.rows() == self.dim() && &(&g.conj_transpose() * &self.gram) * g == self.gram
    }

    /// One random generator of the isometry group: a symplectic transvection
    /// `v ↦ v + cβ(u, v)u` for alternating forms, otherwise a reflection
    /// `v ↦ v − 2β(u, v)/β(u, u)·u` (after rescaling a skew-Hermitian form to
    /// a Hermitian one). Returns `None` when the sampled vector is unusable.
    pub fn random_isometry_generator<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Matrix<F>> {
        let f = *self.field();
        let n = self.dim();
        let u: Vec<F> = (0..n).map(|_| F::random(rng, &f)).collect();
        if u.iter().all(Ring::is_zero) {
            return None;
        }
        let alternating = !f.has_conjugation()
            && (self.kind == FormKind::SkewHermitian || f.characteristic() == 2);
        let g = if alternating {
            let c = F::random(rng, &f);
            // column j of the map is e_j + c β(u, e_j) u
            let beta_u: Vec<F> = (0..n)
                .map(|j| {
                    let mut e = vec![F::zero(&f); n];
                    e[j] = F::one(&f);
                    self.eval(&u, &e)
                })
                .collect();
            Matrix::from_fn(n, n, &f, |i, j| {
                let id = if i == j { F::one(&f) } else { F::zero(&f) };
                id + c.clone() * beta_u[j].clone() * u[i].clone()
            })
        } else {
            let lambda = match self.kind {
                FormKind::Hermitian => F::one(&f),
                _ => skew_unit::<F>(&f)?,
            };
            let beta = |a: &[F], b: &[F]| lambda.clone() * self.eval(a, b);
            let nu = beta(&u, &u);
            let scale = F::from_int(2, &f) * nu.try_inverse()?;
            let beta_u: Vec<F> = (0..n)
                .map(|j| {
                    let mut e = vec![F::zero(&f); n];
                    e[j] = F::one(&f);
                    beta(&u, &e)
                })
                .collect();
            Matrix::from_fn(n, n, &f, |i, j| {
                let id = if i == j { F::one(&f) } else { F::zero(&f) };
                id - scale.clone() * beta_u[j].clone() * u[i].clone()
            })
        };
        self.is_isometry(&g).then_some(g)
    }

    /// Product of `k` random generators.
    pub fn random_isometry<R: Rng + ?Sized>(&self, rng: &mut R, k: usize) -> Matrix<F> {
        let mut g = Matrix::identity(self.dim(), self.field());
        let mut done = 0;
        let mut attempts = 0;
        while done < k && attempts < 50 * (k + 1) {
            attempts += 1;
            if let Some(h) = self.random_isometry_generator(rng) {
                g = &h * &g;
                done += 1;
            }
        }
        g
    }
}

/// A scalar `λ` with `λ̄ = −λ ≠ 0`, turning skew-Hermitian into Hermitian.
fn skew_unit<F: Field>(f: &FieldSpec) -> Option<F> {
    if !f.has_conjugation() {
        return None;
    }
    let text = match f.kind {
        crate::scalars::FieldKind::GaussianRational => "i",
        _ => "t",
    };
    F::parse(text, f).ok()
}

fn symmetry_of<F: Field>(gram: &Matrix<F>) -> FormKind {
    let star = gram.conj_transpose();
    if star == *gram {
        FormKind::Hermitian
    } else if star == -gram {
        FormKind::SkewHermitian
    } else {
        FormKind::Unstructured
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Fp2, Gauss};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_kinds() {
        let f5 = FieldSpec::prime(5).unwrap();
        let kinds: Vec<FormKind> = StandardForm::ALL
            .iter()
            .map(|&s| Form::<Fp>::standard(s, 2, &f5).unwrap().kind())
            .collect();
        assert_eq!(
            kinds,
            vec![FormKind::SkewHermitian, FormKind::Hermitian, FormKind::Hermitian]
        );
    }

    #[test]
    fn rejects_degenerate_and_asymmetric() {
        let f3 = FieldSpec::prime(3).unwrap();
        let deg = Matrix::<Fp>::from_ints(&[&[1, 0], &[0, 0]], &f3).unwrap();
        assert_eq!(Form::new(deg.clone()), Err(Error::DegenerateForm));
        assert!(Form::unchecked(deg).is_ok());
        let asym = Matrix::<Fp>::from_ints(&[&[1, 1], &[0, 1]], &f3).unwrap();
        assert_eq!(Form::new(asym), Err(Error::FormSymmetry));
    }

    #[test]
    fn generated_isometries_preserve_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f5 = FieldSpec::prime(5).unwrap();
        for s in StandardForm::ALL {
            let form = Form::<Fp>::standard(s, 2, &f5).unwrap();
            let g = form.random_isometry(&mut rng, 4);
            assert!(form.is_isometry(&g), "{s:?}");
            assert_ne!(g, Matrix::identity(4, &f5));
        }
        let f9 = FieldSpec::quadratic(3).unwrap();
        let form = Form::<Fp2>::standard(StandardForm::Symplectic, 1, &f9).unwrap();
        assert!(form.is_isometry(&form.random_isometry(&mut rng, 3)));
        let g = FieldSpec::GAUSSIAN;
        let form = Form::<Gauss>::standard(StandardForm::Diagonal, 1, &g).unwrap();
        assert!(form.is_isometry(&form.random_isometry(&mut rng, 2)));
    }
}
