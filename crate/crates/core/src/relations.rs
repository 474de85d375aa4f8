//! Linear relations `F ⊂ W ⊕ W`, written with the block convention
//! (input | output).
//!
//! Composition, application and differences are computed as exact
//! intersections in `W ⊕ W ⊕ W` followed by a linear projection, so the
//! degenerate cases need no special treatment.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Form, Subspace, SubspaceJson};
use crate::matlin::Matrix;
use crate::scalars::{Field, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRelation<F> {
    inner: Subspace<F>,
    half: usize,
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

/// Projection of a subspace onto the listed coordinates.
fn project<F: Field>(s: &Subspace<F>, cols: &[usize]) -> Subspace<F> {
    Subspace::span(cols.len(), &s.basis().select_cols(cols)).expect("width matches")
}

/// Subspace of `K^width` whose rows are `rows` placed at `offset`, plus the
/// full coordinate blocks listed in `free`.
fn cylinder<F: Field>(
    rows: &Matrix<F>,
    width: usize,
    offset: usize,
    free: &[usize],
    field: &FieldSpec,
) -> Subspace<F> {
    let placed = rows.embed_cols(width, offset);
    let coords = Subspace::coordinate(width, free, field);
    Subspace::span(width, &placed.vstack(coords.basis()).expect("width")).expect("width")
}

impl<F: Field> LinearRelation<F> {
    pub fn from_subspace(inner: Subspace<F>) -> Result<Self> {
        if inner.ambient() % 2 != 0 {
            return Err(Error::Shape(format!(
                "relation needs an even ambient, got {}",
                inner.ambient()
            )));
        }
        let half = inner.ambient() / 2;
        Ok(LinearRelation { inner, half })
    }

    pub fn inner(&self) -> &Subspace<F> {
        &self.inner
    }

    pub fn half(&self) -> usize {
        self.half
    }

    pub fn field(&self) -> &FieldSpec {
        self.inner.field()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.half != other.half {
            return Err(Error::AmbientMismatch(self.half, other.half));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }

    fn check_point(&self, z: &Subspace<F>) -> Result<()> {
        if z.ambient() != self.half {
            return Err(Error::AmbientMismatch(self.half, z.ambient()));
        }
        Ok(())
    }

    /// `pr₁(F)`
    pub fn dom(&self) -> Subspace<F> {
        project(&self.inner, &range(0, self.half))
    }

    /// `pr₂(F)`
    pub fn im(&self) -> Subspace<F> {
        project(&self.inner, &range(self.half, 2 * self.half))
    }

    /// `{v : (v, 0) ∈ F}`
    pub fn ker(&self) -> Subspace<F> {
        let n = self.half;
        let w0 = Subspace::coordinate(2 * n, &range(0, n), self.field());
        project(&self.inner.meet_unchecked(&w0), &range(0, n))
    }

    /// `{w : (0, w) ∈ F}`
    pub fn indef(&self) -> Subspace<F> {
        let n = self.half;
        let zw = Subspace::coordinate(2 * n, &range(n, 2 * n), self.field());
        project(&self.inner.meet_unchecked(&zw), &range(n, 2 * n))
    }

    /// `{(v, v)}`
    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        Self::graph(&Matrix::identity(n, field))
    }

    /// Graph of the zero map, `W × 0`.
    pub fn zero_graph(n: usize, field: &FieldSpec) -> Self {
        Self::graph(&Matrix::zeros(n, n, field))
    }

    /// `{(v, gv)}` for a square matrix `g`.
    pub fn graph(g: &Matrix<F>) -> Self {
        assert!(g.is_square(), "graph of a non-square matrix");
        LinearRelation {
            inner: crate::grassmann::graph_of(g),
            half: g.rows(),
        }
    }

    /// `gen_projection`: `P_x^a = {(ζ, ω) : ω ∈ x, ω − ζ ∈ a}`.
    ///
    /// Spanned by `(ω, ω)` for `ω ∈ x` and `(−α, 0)` for `α ∈ a`.
    pub fn gen_projection(x: &Subspace<F>, a: &Subspace<F>) -> Result<Self> {
        if x.ambient() != a.ambient() {
            return Err(Error::AmbientMismatch(x.ambient(), a.ambient()));
        }
        let n = x.ambient();
        let diag = x.basis().hstack(x.basis())?;
        let ker = (-a.basis()).embed_cols(2 * n, 0);
        let inner = Subspace::span(2 * n, &diag.vstack(&ker)?)?;
        Ok(LinearRelation { inner, half: n })
    }

    /// `compose(G, F) = G ∘ F = {(u, w) : ∃v, (u, v) ∈ F, (v, w) ∈ G}`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        g.check(f)?;
        let n = f.half;
        let fld = *f.field();
        // coordinates (u, v, w) in K^{3n}
        let s1 = cylinder(f.inner.basis(), 3 * n, 0, &range(2 * n, 3 * n), &fld);
        let s2 = cylinder(g.inner.basis(), 3 * n, n, &range(0, n), &fld);
        let meet = s1.meet_unchecked(&s2);
        let mut cols = range(0, n);
        cols.extend(2 * n..3 * n);
        Ok(LinearRelation { inner: project(&meet, &cols), half: n })
    }

    /// `inverse_rel`: `{(ω, ζ) : (ζ, ω) ∈ F}`.
    pub fn inverse_rel(&self) -> Self {
        let n = self.half;
        let mut cols = range(n, 2 * n);
        cols.extend(0..n);
        LinearRelation { inner: project(&self.inner, &cols), half: n }
    }

    /// `Fz = pr₂(F ∩ (z × W))`.
    pub fn apply(&self, z: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_point(z)?;
        let n = self.half;
        let zw = cylinder(z.basis(), 2 * n, 0, &range(n, 2 * n), self.field());
        Ok(project(&self.inner.meet_unchecked(&zw), &range(n, 2 * n)))
    }

    /// `difference(F, G) = {(ξ, α − β) : (ξ, α) ∈ F, (ξ, β) ∈ G}`.
    pub fn difference(f: &Self, g: &Self) -> Result<Self> {
        f.check(g)?;
        let n = f.half;
        let fld = *f.field();
        // coordinates (ξ, α, β); G sits on (ξ, β)
        let s1 = cylinder(f.inner.basis(), 3 * n, 0, &range(2 * n, 3 * n), &fld);
        let gb = g.inner.basis();
        let g_placed = gb
            .col_range(0, n)
            .embed_cols(3 * n, 0)
            .checked_add(&gb.col_range(n, 2 * n).embed_cols(3 * n, 2 * n))?;
        let s2 = cylinder(&g_placed, 3 * n, 0, &range(n, 2 * n), &fld);
        let meet = s1.meet_unchecked(&s2);
        let m = meet.basis();
        let out = m
            .col_range(0, n)
            .hstack(&m.col_range(n, 2 * n).checked_sub(&m.col_range(2 * n, 3 * n))?)?;
        Ok(LinearRelation { inner: Subspace::span(2 * n, &out)?, half: n })
    }

    /// `1 + F` (`sign = 1`) or `1 − F` (`sign = −1`): the image of `F` under
    /// `(v, w) ↦ (v, v ± w)`.
    pub fn one_plus_minus(&self, sign: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Precondition(format!("sign must be ±1, got {sign}")));
        }
        let n = self.half;
        let f = self.field();
        let one = Matrix::identity(n, f);
        let map = Matrix::block2(
            &one,
            &Matrix::zeros(n, n, f),
            &one,
            &Matrix::diag_ints(&vec![sign; n], f),
        )?;
        Ok(LinearRelation { inner: self.inner.image(&map)?, half: n })
    }

    pub fn one_plus(&self) -> Self {
        self.one_plus_minus(1).expect("valid sign")
    }

    pub fn one_minus(&self) -> Self {
        self.one_plus_minus(-1).expect("valid sign")
    }

    /// `F* = {(v′, w′) : β(v′, w) = β(w′, v) for all (v, w) ∈ F}`, the
    /// orthocomplement for `Ω((u, v), (u′, v′)) = β(u, v′) − β(v, u′)`.
    pub fn adjoint(&self, form: &Form<F>) -> Result<Self> {
        if form.dim() != self.half {
            return Err(Error::AmbientMismatch(self.half, form.dim()));
        }
        let omega = Form::unchecked(block_form(form.gram())?)?;
        Ok(LinearRelation {
            inner: self.inner.orthocomplement(&omega)?,
            half: self.half,
        })
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson { inner: self.inner.to_json(), half: self.half }
    }

    pub fn from_json(json: &RelationJson) -> Result<Self> {
        let rel = Self::from_subspace(Subspace::from_json(&json.inner)?)?;
        if rel.half != json.half {
            return Err(Error::AmbientMismatch(rel.half, json.half));
        }
        Ok(rel)
    }
}

/// `[[0, B], [−B, 0]]`
fn block_form<F: Field>(b: &Matrix<F>) -> Result<Matrix<F>> {
    let z = Matrix::zeros(b.rows(), b.cols(), b.field());
    Matrix::block2(&z, b, &-b, &z)
}

impl<F: Field> fmt::Display for LinearRelation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner)
    }
}

/// Subspace JSON of the inner subspace plus `"half"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    #[serde(flatten)]
    pub inner: SubspaceJson,
    pub half: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::StandardForm;
    use crate::scalars::{Fp, Rational};

    type R = LinearRelation<Fp>;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn sp(p: u64, rows: &[&[i64]], n: usize) -> Subspace<Fp> {
        Subspace::from_int_rows(rows, n, &f(p)).unwrap()
    }

    #[test]
    fn projection_of_transversal_pair_is_a_graph() {
        let x = sp(5, &[&[1, 0]], 2);
        let a = sp(5, &[&[0, 1]], 2);
        let p = R::gen_projection(&x, &a).unwrap();
        assert_eq!(p, R::graph(&Matrix::diag_ints(&[1, 0], &f(5))));
        assert_eq!(R::compose(&p, &p).unwrap(), p);
        let d = sp(5, &[&[1, 1]], 2);
        assert_eq!(p.apply(&d).unwrap(), x);
    }

    #[test]
    fn degenerate_projection_attributes() {
        let x = sp(2, &[&[1, 0]], 2);
        let p = R::gen_projection(&x, &x).unwrap();
        assert_eq!(p.ker(), x);
        assert_eq!(p.im(), x);
        assert_eq!(p.indef(), x);
        assert_eq!(p.dom(), x);
        assert_eq!(p.inner().dim(), 2);
    }

    #[test]
    fn identity_cases() {
        let fl = f(3);
        let w = Subspace::<Fp>::full(2, &fl);
        let z = Subspace::<Fp>::zero(2, &fl);
        let id = R::identity(2, &fl);
        assert_eq!(R::gen_projection(&w, &z).unwrap(), id);
        let g = R::gen_projection(&sp(3, &[&[1, 1]], 2), &sp(3, &[&[0, 1]], 2)).unwrap();
        assert_eq!(R::compose(&id, &g).unwrap(), g);
        assert_eq!(g.inverse_rel().inverse_rel(), g);
        assert_eq!(R::zero_graph(2, &fl).one_plus(), id);
        assert_eq!(R::difference(&g, &R::zero_graph(2, &fl)).unwrap(), g);
    }

    #[test]
    fn one_minus_projection_swaps_image_and_kernel() {
        let x = sp(5, &[&[1, 2]], 2);
        let a = sp(5, &[&[1, 4]], 2);
        let p = R::gen_projection(&x, &a).unwrap();
        let q = R::gen_projection(&a, &x).unwrap();
        assert_eq!(p.one_minus(), q);
        let id = R::identity(2, &f(5));
        assert_eq!(R::difference(&id, &p).unwrap(), q);
    }

    #[test]
    fn inverse_of_graph() {
        let q = FieldSpec::RATIONAL;
        let g = Matrix::<Rational>::from_ints(&[&[1, 2], &[3, 4]], &q).unwrap();
        let rel = LinearRelation::graph(&g);
        assert_eq!(rel.inverse_rel(), LinearRelation::graph(&g.invert().unwrap()));
    }

    #[test]
    fn symplectic_adjoint_of_coordinate_projection() {
        let x = sp(3, &[&[1, 0]], 2);
        let a = sp(3, &[&[0, 1]], 2);
        let form = Form::standard(StandardForm::Symplectic, 1, &f(3)).unwrap();
        let p = R::gen_projection(&x, &a).unwrap();
        assert_eq!(p.adjoint(&form).unwrap(), R::gen_projection(&a, &x).unwrap());
        let id = R::identity(2, &f(3));
        assert_eq!(id.adjoint(&form).unwrap(), id);
    }

    #[test]
    fn relation_json_has_half() {
        let p = R::identity(1, &f(2));
        let js = serde_json::to_value(p.to_json()).unwrap();
        assert_eq!(js["half"], 1);
        assert_eq!(js["ambient"], 2);
        let back: RelationJson = serde_json::from_value(js).unwrap();
        assert_eq!(R::from_json(&back).unwrap(), p);
    }
}
