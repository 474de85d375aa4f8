//! Points of the Grassmannian `Gras(Kⁿ)` and their lattice structure.
//!
//! A subspace is stored as the RREF basis of its row space, so equality of
//! subspaces is equality of representations.

mod enumerate;
mod form;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matlin::Matrix;
use crate::scalars::{Field, FieldSpec};

pub use enumerate::{count_subspaces, enumerate_subspaces, max_ambient, MAX_AMBIENT_VAR};
pub use form::{Form, FormKind, StandardForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// `span`: the subspace generated by the rows of `rows`.
    pub fn span(ambient: usize, rows: &Matrix<F>) -> Result<Self> {
        if rows.cols() != ambient {
            return Err(Error::Shape(format!(
                "rows of width {} in ambient {ambient}",
                rows.cols()
            )));
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: &Matrix<F>) -> Self {
        Subspace {
            ambient: rows.cols(),
            basis: rows.rref().0,
        }
    }

    /// Wraps a matrix already known to be in RREF without zero rows.
    pub(crate) fn from_rref(basis: Matrix<F>) -> Self {
        Subspace { ambient: basis.cols(), basis }
    }

    pub fn from_int_rows(rows: &[&[i64]], ambient: usize, field: &FieldSpec) -> Result<Self> {
        let m = if rows.is_empty() {
            Matrix::zeros(0, ambient, field)
        } else {
            Matrix::from_ints(rows, field)?
        };
        Self::span(ambient, &m)
    }

    pub fn zero(ambient: usize, field: &FieldSpec) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient, field) }
    }

    pub fn full(ambient: usize, field: &FieldSpec) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient, field) }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize], field: &FieldSpec) -> Self {
        let rows = indices
            .iter()
            .map(|&i| {
                (0..ambient)
                    .map(|j| if i == j { F::one(field) } else { F::zero(field) })
                    .collect()
            })
            .collect();
        Self::from_rows_unchecked(&Matrix::from_rows(rows, ambient, field).expect("width"))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }

    /// Rows `c` with `c · v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Matrix<F> {
        self.basis.kernel_basis()
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        let ann = self.annihilator();
        (0..ann.rows()).all(|i| {
            ann.row(i)
                .iter()
                .zip(v)
                .fold(F::zero(self.field()), |s, (c, x)| s + c.clone() * x.clone())
                .is_zero()
        })
    }

    /// `self ⊆ other`
    pub fn leq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains_vector(self.basis.row(i)))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Self) -> Self {
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        let ann = self.annihilator().vstack(&other.annihilator()).expect("same ambient");
        Subspace::from_rref(ann.kernel_basis())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::from_rows_unchecked(&self.basis.vstack(&other.basis).expect("same ambient"))
    }

    /// `x ⊤ a`: the ambient space is the direct sum of the two.
    pub fn is_transversal(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() + other.dim() == self.ambient
            && self.basis.vstack(&other.basis).expect("same ambient").rank() == self.ambient
    }

    /// Span of the standard basis vectors at the non-pivot columns of `self`.
    pub fn complement(&self) -> Self {
        let (_, pivots) = self.basis.rref_pivots();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !pivots.contains(c)).collect();
        Self::coordinate(self.ambient, &free, self.field())
    }

    /// Image under an arbitrary linear map (matrices act on column vectors).
    pub fn image(&self, g: &Matrix<F>) -> Result<Self> {
        if g.cols() != self.ambient {
            return Err(Error::Shape(format!(
                "{}x{} map on ambient {}",
                g.rows(),
                g.cols(),
                self.ambient
            )));
        }
        if self.is_zero() {
            return Ok(Subspace::zero(g.rows(), self.field()));
        }
        Ok(Self::from_rows_unchecked(&(&self.basis * &g.transpose())))
    }

    /// `pushforward`: the image under an invertible operator.
    pub fn pushforward(&self, g: &Matrix<F>) -> Result<Self> {
        if !g.is_square() || g.invert().is_err() {
            return Err(Error::Singular);
        }
        self.image(g)
    }

    /// `x^⊥ = {v : β(u, v) = 0 for all u ∈ x}` with `β(u, v) = ūᵗ B v`.
    pub fn orthocomplement(&self, form: &Form<F>) -> Result<Self> {
        if form.dim() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, form.dim()));
        }
        let constraints = &self.basis.conj() * form.gram();
        Ok(Subspace::from_rref(constraints.kernel_basis()))
    }

    /// Total order: dimension first, then the RREF entries lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.lex_cmp(&other.basis))
    }

    /// Rows in the `"1,0;0,1"` format; empty for the zero subspace.
    pub fn parse(text: &str, ambient: Option<usize>, field: &FieldSpec) -> Result<Self> {
        let m = Matrix::<F>::parse(text, field)?;
        match (m.rows(), ambient) {
            (0, Some(n)) => Ok(Subspace::zero(n, field)),
            (0, None) => Err(Error::Parse(
                "empty subspace literal needs an explicit ambient dimension".into(),
            )),
            (_, Some(n)) => Self::span(n, &m),
            (_, None) => Self::span(m.cols(), &m),
        }
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            ambient: self.ambient,
            field: self.field().to_string(),
            basis: self
                .basis
                .row_vecs()
                .into_iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &SubspaceJson) -> Result<Self> {
        let field: FieldSpec = json.field.parse()?;
        if !F::accepts(&field) {
            return Err(Error::FieldSpec(json.field.clone()));
        }
        let rows = json
            .basis
            .iter()
            .map(|r| r.iter().map(|e| F::parse(e, &field)).collect())
            .collect::<Result<Vec<Vec<F>>>>()?;
        Self::span(json.ambient, &Matrix::from_rows(rows, json.ambient, &field)?)
    }
}

/// Standard model `W = Kᵖ ⊕ K^q`: `o⁺ = Kᵖ ⊕ 0`, `o⁻ = 0 ⊕ K^q`.
impl<F: Field> Subspace<F> {
    pub fn o_plus(p: usize, q: usize, field: &FieldSpec) -> Self {
        Self::coordinate(p + q, &(0..p).collect::<Vec<_>>(), field)
    }

    pub fn o_minus(p: usize, q: usize, field: &FieldSpec) -> Self {
        Self::coordinate(p + q, &(p..p + q).collect::<Vec<_>>(), field)
    }

    /// The diagonal `e = {(v, v)}` in `Kⁿ ⊕ Kⁿ`.
    pub fn diagonal(n: usize, field: &FieldSpec) -> Self {
        graph_of(&Matrix::identity(n, field))
    }

    /// `−e = {(v, −v)}`.
    pub fn antidiagonal(n: usize, field: &FieldSpec) -> Self {
        graph_of(&-&Matrix::<F>::identity(n, field))
    }
}

/// `graph_of`: `{(v, Xv)} ⊂ Kᵖ ⊕ K^q` for a `q x p` matrix `X`.
pub fn graph_of<F: Field>(x: &Matrix<F>) -> Subspace<F> {
    let p = x.cols();
    let b = Matrix::identity(p, x.field()).hstack(&x.transpose()).expect("p rows");
    Subspace::from_rref(b)
}

/// `chart_of`: inverse of [`graph_of`] on subspaces of dimension `p`
/// transversal to `o⁻ = 0 ⊕ K^q`.
pub fn chart_of<F: Field>(x: &Subspace<F>, p: usize) -> Result<Matrix<F>> {
    let n = x.ambient();
    if p > n || x.dim() != p {
        return Err(Error::NotTransversal(format!(
            "dimension {} subspace is not a graph over K^{p}",
            x.dim()
        )));
    }
    let left = x.basis().col_range(0, p);
    if left != Matrix::identity(p, x.field()) {
        return Err(Error::NotTransversal("subspace meets o⁻".into()));
    }
    Ok(x.basis().col_range(p, n).transpose())
}

/// `{(Yw, w)} ⊂ Kᵖ ⊕ K^q` for a `p x q` matrix `Y`; the chart of `C_{o⁺}`.
pub fn graph_minus<F: Field>(y: &Matrix<F>) -> Subspace<F> {
    let q = y.cols();
    let b = y.transpose().hstack(&Matrix::identity(q, y.field())).expect("q rows");
    Subspace::from_rows_unchecked(&b)
}

/// Inverse of [`graph_minus`] on subspaces transversal to `o⁺ = Kᵖ ⊕ 0`.
pub fn chart_minus<F: Field>(x: &Subspace<F>, p: usize) -> Result<Matrix<F>> {
    let n = x.ambient();
    let q = n.checked_sub(p).ok_or(Error::AmbientMismatch(p, n))?;
    if x.dim() != q {
        return Err(Error::NotTransversal(format!(
            "dimension {} subspace is not a graph over K^{q}",
            x.dim()
        )));
    }
    // rows (u_i, w_i) with u_i = Y w_i, so Uᵗ = Y Wᵗ
    let u = x.basis().col_range(0, p);
    let w = x.basis().col_range(p, n);
    let wt_inv = w
        .transpose()
        .invert()
        .map_err(|_| Error::NotTransversal("subspace meets o⁺".into()))?;
    Ok(&u.transpose() * &wt_inv)
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.basis)
    }
}

/// Wire format `{"ambient": n, "field": "...", "basis": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub field: String,
    pub basis: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Rational};

    const Q: FieldSpec = FieldSpec::RATIONAL;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn sp(p: u64, rows: &[&[i64]], n: usize) -> Subspace<Fp> {
        Subspace::from_int_rows(rows, n, &f(p)).unwrap()
    }

    fn sq(rows: &[&[i64]], n: usize) -> Subspace<Rational> {
        Subspace::from_int_rows(rows, n, &Q).unwrap()
    }

    #[test]
    fn span_examples() {
        assert_eq!(sq(&[&[2, 0]], 2), sq(&[&[1, 0]], 2));
        assert!(sq(&[], 2).is_zero());
        assert_eq!(sp(3, &[&[1, 1], &[2, 2]], 2), sp(3, &[&[1, 1]], 2));
        let m = Matrix::<Rational>::from_ints(&[&[1, 0, 0]], &Q).unwrap();
        assert!(Subspace::span(2, &m).is_err());
    }

    #[test]
    fn meet_and_join() {
        let e1 = sq(&[&[1, 0]], 2);
        let e2 = sq(&[&[0, 1]], 2);
        assert!(e1.meet(&e2).unwrap().is_zero());
        assert!(e1.join(&e2).unwrap().is_full());
        let x = sp(2, &[&[1, 0, 1], &[0, 1, 0]], 3);
        let y = sp(2, &[&[1, 1, 1]], 3);
        assert_eq!(x.meet(&y).unwrap(), y);
        assert_eq!(e1.meet(&sq(&[&[1, 0, 0]], 3)), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn transversality() {
        let e1 = sq(&[&[1, 0]], 2);
        assert!(e1.is_transversal(&sq(&[&[0, 1]], 2)));
        assert!(!e1.is_transversal(&e1));
        assert!(sp(3, &[&[1, 1]], 2).is_transversal(&sp(3, &[&[1, 2]], 2)));
    }

    #[test]
    fn complement_rule() {
        assert_eq!(sq(&[&[0, 1]], 2).complement(), sq(&[&[1, 0]], 2));
        assert!(sq(&[], 3).complement().is_full());
        assert_eq!(sp(2, &[&[1, 1]], 2).complement(), sp(2, &[&[0, 1]], 2));
    }

    #[test]
    fn charts_round_trip() {
        let zero = Matrix::<Rational>::zeros(2, 2, &Q);
        assert_eq!(graph_of(&zero), Subspace::o_plus(2, 2, &Q));
        assert_eq!(
            chart_of(&Subspace::<Rational>::diagonal(3, &Q), 3).unwrap(),
            Matrix::identity(3, &Q)
        );
        let two = Matrix::<Fp>::from_ints(&[&[2]], &f(3)).unwrap();
        let g = graph_of(&two);
        assert_eq!(g, sp(3, &[&[1, 2]], 2));
        assert_eq!(chart_of(&g, 1).unwrap(), two);
        assert!(chart_of(&Subspace::<Fp>::o_minus(1, 1, &f(3)), 1).is_err());

        let y = Matrix::<Rational>::from_ints(&[&[1, 2, 3], &[0, 1, 5]], &Q).unwrap();
        let gm = graph_minus(&y);
        assert!(gm.is_transversal(&Subspace::o_plus(2, 3, &Q)));
        assert_eq!(chart_minus(&gm, 2).unwrap(), y);
    }

    #[test]
    fn orthocomplement_examples() {
        let j = Form::standard(StandardForm::Symplectic, 1, &Q).unwrap();
        let e1 = sq(&[&[1, 0]], 2);
        assert_eq!(e1.orthocomplement(&j).unwrap(), e1);
        let i11 = Form::standard(StandardForm::Diagonal, 1, &Q).unwrap();
        assert_eq!(e1.orthocomplement(&i11).unwrap(), sq(&[&[0, 1]], 2));
        assert!(Subspace::<Rational>::full(2, &Q).orthocomplement(&j).unwrap().is_zero());
    }

    #[test]
    fn pushforward_examples() {
        let jm = Matrix::<Rational>::from_ints(&[&[0, 1], &[-1, 0]], &Q).unwrap();
        let e1 = sq(&[&[1, 0]], 2);
        assert_eq!(e1.pushforward(&Matrix::identity(2, &Q)).unwrap(), e1);
        assert_eq!(e1.pushforward(&jm).unwrap(), sq(&[&[0, 1]], 2));
        let r = Matrix::<Rational>::from_ints(&[&[1, -1], &[1, 1]], &Q).unwrap();
        let d = Subspace::<Rational>::diagonal(1, &Q);
        assert_eq!(d.pushforward(&r).unwrap(), Subspace::o_minus(1, 1, &Q));
        let sing = Matrix::<Rational>::from_ints(&[&[1, 1], &[1, 1]], &Q).unwrap();
        assert_eq!(e1.pushforward(&sing), Err(Error::Singular));
    }

    #[test]
    fn json_round_trip() {
        let x = sp(5, &[&[1, 3, 0], &[0, 0, 1]], 3);
        let js = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(js, r#"{"ambient":3,"field":"fp:5","basis":[["1","3","0"],["0","0","1"]]}"#);
        let back: SubspaceJson = serde_json::from_str(&js).unwrap();
        assert_eq!(Subspace::<Fp>::from_json(&back).unwrap(), x);
    }

    #[test]
    fn parse_literal() {
        let x = Subspace::<Fp>::parse("1,1", None, &f(3)).unwrap();
        assert_eq!(x, sp(3, &[&[1, 1]], 2));
        assert!(Subspace::<Fp>::parse("", None, &f(3)).is_err());
        assert!(Subspace::<Fp>::parse("", Some(2), &f(3)).unwrap().is_zero());
    }
}
