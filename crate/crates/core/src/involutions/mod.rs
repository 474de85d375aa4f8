//! Involutions of the geometry coming from forms, their duals, the Cayley
//! transform, and the groups and semitorsors living on fixed-point sets.
//!
//! Every involution is stored as `τ(x) = post · x^⊥`, with `⊥` taken for a
//! Gram matrix. Duals, `τ̃` and Cayley conjugates stay inside this shape.

mod geometry;

pub use geometry::{
    form_invariants, fixed_point_census, isotropic_census, semitorsor_y, torsor_g, unitary_group,
    CayleyTable, FixedTorsor, LagrangianGeometry, UnitaryGroup,
};

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gamma::{dilation, gamma_global, m_operator, tuple_json, Sampling};
use crate::grassmann::{count_subspaces, enumerate_subspaces, graph_minus, max_ambient, Form, Subspace};
use crate::matlin::Matrix;
use crate::report::{LawResult, Report};
use crate::sample::{random_subspace, random_subspace_of_dim, random_transversal, random_tuple, rng_for};
use crate::scalars::{Field, FieldSpec};

/// `τ(x) = post · x^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution<F> {
    form: Form<F>,
    post: Option<Matrix<F>>,
    label: String,
}

/// Subspace count above which construction-time checks sample instead.
const EXHAUSTIVE_LIMIT: u64 = 4096;

/// All subspaces of `Kⁿ` when the field is finite and the count is modest.
pub(crate) fn small_grassmannian<F: Field>(field: &FieldSpec, n: usize, limit: u64) -> Option<Vec<Subspace<F>>> {
    let q = field.order()?;
    if n > max_ambient() {
        return None;
    }
    let total: u64 = (0..=n).map(|k| count_subspaces(q, n, k)).sum();
    if total > limit {
        return None;
    }
    enumerate_subspaces(field, n, None).ok()
}

impl<F: Field> Involution<F> {
    /// No checks at all; the negative controls are built this way.
    pub fn unchecked(form: Form<F>, post: Option<Matrix<F>>, label: impl Into<String>) -> Self {
        Involution { form, post, label: label.into() }
    }

    /// `post ∘ ⊥`, rejected unless `post` is invertible and the map has order two.
    pub fn with_post(form: Form<F>, post: Option<Matrix<F>>, label: impl Into<String>) -> Result<Self> {
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        if let Some(p) = &post {
            if !p.is_square() || p.rows() != form.dim() {
                return Err(Error::Shape("post operator must match the form".into()));
            }
            if !p.is_invertible() {
                return Err(Error::Singular);
            }
        }
        let inv = Involution::unchecked(form, post, label);
        if !inv.order_two_spot_check() {
            return Err(Error::NotInvolution(inv.label.clone()));
        }
        Ok(inv)
    }

    fn order_two_spot_check(&self) -> bool {
        let n = self.ambient();
        match small_grassmannian::<F>(self.field(), n, EXHAUSTIVE_LIMIT) {
            Some(all) => all.iter().all(|x| self.apply(&self.apply(x)) == *x),
            None => (0..32).all(|t| {
                let x = random_subspace(&mut rng_for(0x7a0, t), self.field(), n);
                self.apply(&self.apply(&x)) == x
            }),
        }
    }

    pub fn form(&self) -> &Form<F> {
        &self.form
    }

    pub fn post(&self) -> Option<&Matrix<F>> {
        self.post.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient(&self) -> usize {
        self.form.dim()
    }

    pub fn field(&self) -> &FieldSpec {
        self.form.field()
    }

    pub fn apply(&self, x: &Subspace<F>) -> Subspace<F> {
        let perp = x.orthocomplement(&self.form).expect("ambient matches the form");
        match &self.post {
            Some(p) => perp.image(p).expect("square post operator"),
            None => perp,
        }
    }

    pub fn fixes(&self, x: &Subspace<F>) -> bool {
        self.apply(x) == *x
    }

    /// `g ∘ τ ∘ g⁻¹`, again of the form `post′ ∘ ⊥′` with Gram `ḡ⁻ᵗ B`.
    pub fn conjugated_by(&self, g: &Matrix<F>, label: impl Into<String>) -> Result<Self> {
        let gi = g.invert()?;
        let gram = &gi.conj_transpose() * self.form.gram();
        let post = match &self.post {
            Some(p) => g * p,
            None => g.clone(),
        };
        Ok(Involution::unchecked(Form::unchecked(gram)?, Some(post), label))
    }

    fn with_extra_post(&self, m: &Matrix<F>, label: String) -> Result<Self> {
        let post = match &self.post {
            Some(p) => m * p,
            None => m.clone(),
        };
        Involution::with_post(self.form.clone(), Some(post), label)
    }
}

/// `ortho_involution`: `τ(x) = x^⊥` for a nondegenerate form.
pub fn ortho_involution<F: Field>(form: &Form<F>) -> Result<Involution<F>> {
    let label = format!("⊥ for gram {}", form.gram());
    Involution::with_post(form.clone(), None, label)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Anti-homomorphism only on tuples with `x, y, z ∈ U_{ab}`.
    Restricted,
    /// Anti-homomorphism on all 5-tuples.
    Global,
}

fn law<F: Field>(inv: &Involution<F>, name: &str) -> LawResult {
    LawResult::new("involution", name, format!("{} on {}^{}", inv.label, inv.field(), inv.ambient()))
}

/// Order two, transversality, restricted anti-homomorphism and dilation
/// compatibility; at the global level also the anti-homomorphism on every
/// 5-tuple and the inclusion `Γ(τx, τb, τy, τa, τz) ⊆ τΓ(x, a, y, b, z)`.
pub fn verify_involution<F: Field>(inv: &Involution<F>, level: Level, sampling: Sampling) -> Result<Report> {
    let mut order = law(inv, "order two τ(τ(x)) = x");
    let mut transv = law(inv, "transversality a ⊤ x iff τa ⊤ τx");
    let mut anti = law(inv, "anti-homomorphism on restricted tuples");
    let mut dil = law(inv, "dilation compatibility τΠ_r(x,a,y) = Π_r(τx,τa,τy)");
    let mut global = law(inv, "global anti-homomorphism τΓ(x,a,y,b,z) = Γ(τz,τa,τy,τb,τx)");
    let mut incl = law(inv, "inclusion Γ(τx,τb,τy,τa,τz) ⊆ τΓ(x,a,y,b,z)");
    let field = *inv.field();
    let n = inv.ambient();

    let restricted_case = |x: &Subspace<F>, a: &Subspace<F>, y: &Subspace<F>, b: &Subspace<F>, z: &Subspace<F>,
                           t: &dyn Fn(&Subspace<F>) -> Subspace<F>, anti: &mut LawResult| {
        let lhs = t(&gamma_global(x, a, y, b, z).expect("ambient"));
        let (tx, ta, ty, tb, tz) = (t(x), t(a), t(y), t(b), t(z));
        let r1 = gamma_global(&tx, &tb, &ty, &ta, &tz).expect("ambient");
        let r2 = gamma_global(&tz, &ta, &ty, &tb, &tx).expect("ambient");
        anti.record(lhs == r1 && lhs == r2, || tuple_json(&[x, a, y, b, z]));
    };
    let global_case = |x: &Subspace<F>, a: &Subspace<F>, y: &Subspace<F>, b: &Subspace<F>, z: &Subspace<F>,
                       t: &dyn Fn(&Subspace<F>) -> Subspace<F>, global: &mut LawResult, incl: &mut LawResult| {
        let lhs = t(&gamma_global(x, a, y, b, z).expect("ambient"));
        let (tx, ta, ty, tb, tz) = (t(x), t(a), t(y), t(b), t(z));
        let ce = || tuple_json(&[x, a, y, b, z]);
        global.record(gamma_global(&tz, &ta, &ty, &tb, &tx).expect("ambient") == lhs, ce);
        incl.record(gamma_global(&tx, &tb, &ty, &ta, &tz).expect("ambient").leq(&lhs), ce);
    };
    let dilation_case = |r: &F, x: &Subspace<F>, a: &Subspace<F>, y: &Subspace<F>,
                         t: &dyn Fn(&Subspace<F>) -> Subspace<F>, dil: &mut LawResult| {
        let lhs = dilation(r, x, a, y).map(|v| t(&v));
        let rhs = dilation(r, &t(x), &t(a), &t(y));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        dil.record(ok, || {
            let mut v = tuple_json(&[x, a, y]);
            if let serde_json::Value::Array(items) = &mut v {
                items.push(serde_json::Value::String(r.to_string()));
            }
            v
        });
    };

    match sampling {
        Sampling::Exhaustive => {
            let all = enumerate_subspaces::<F>(&field, n, None)?;
            let images: HashMap<Subspace<F>, Subspace<F>> =
                all.iter().map(|x| (x.clone(), inv.apply(x))).collect();
            let t = |x: &Subspace<F>| images.get(x).cloned().unwrap_or_else(|| inv.apply(x));
            order_and_transversality(&all, &t, &mut order, &mut transv);
            let scalars = F::elements(&field).expect("finite");
            for a in &all {
                let ca: Vec<&Subspace<F>> = all.iter().filter(|x| x.is_transversal(a)).collect();
                for x in &ca {
                    for y in &ca {
                        for r in &scalars {
                            dilation_case(r, x, a, y, &t, &mut dil);
                        }
                    }
                }
                for b in &all {
                    let c: Vec<&&Subspace<F>> = ca.iter().filter(|x| x.is_transversal(b)).collect();
                    for x in &c {
                        for y in &c {
                            for z in &c {
                                restricted_case(x, a, y, b, z, &t, &mut anti);
                            }
                        }
                    }
                }
            }
            if level == Level::Global {
                for x in &all {
                    for a in &all {
                        for y in &all {
                            for b in &all {
                                for z in &all {
                                    global_case(x, a, y, b, z, &t, &mut global, &mut incl);
                                }
                            }
                        }
                    }
                }
            }
        }
        Sampling::Random { trials, seed } => {
            let t = |x: &Subspace<F>| inv.apply(x);
            for trial in 0..trials {
                let mut rng = rng_for(seed, trial);
                let pair = random_tuple::<F, _>(&mut rng, &field, n, 2);
                order.record(t(&t(&pair[0])) == pair[0], || tuple_json(&[&pair[0]]));
                transv.record(
                    pair[0].is_transversal(&pair[1]) == t(&pair[0]).is_transversal(&t(&pair[1])),
                    || tuple_json(&[&pair[0], &pair[1]]),
                );
                if let Some((a, b, pts)) = restricted_tuple(&mut rng, &field, n, 3) {
                    restricted_case(&pts[0], &a, &pts[1], &b, &pts[2], &t, &mut anti);
                    let r = F::random(&mut rng, &field);
                    dilation_case(&r, &pts[0], &a, &pts[1], &t, &mut dil);
                }
                if level == Level::Global {
                    let v = random_tuple::<F, _>(&mut rng, &field, n, 5);
                    global_case(&v[0], &v[1], &v[2], &v[3], &v[4], &t, &mut global, &mut incl);
                }
            }
        }
    }
    let mut report = Report::new();
    for l in [order, transv, anti, dil] {
        report.push(l);
    }
    if level == Level::Global {
        report.push(global);
        report.push(incl);
    }
    Ok(report)
}

fn order_and_transversality<F: Field>(
    all: &[Subspace<F>],
    t: &dyn Fn(&Subspace<F>) -> Subspace<F>,
    order: &mut LawResult,
    transv: &mut LawResult,
) {
    for x in all {
        order.record(t(&t(x)) == *x, || tuple_json(&[x]));
    }
    for a in all {
        let ta = t(a);
        for x in all {
            transv.record(a.is_transversal(x) == ta.is_transversal(&t(x)), || tuple_json(&[a, x]));
        }
    }
}

/// `τ² = id` on every subspace and preservation of transversality on every
/// pair; feasible well beyond the sizes where all 5-tuples can be listed.
pub fn verify_order_exhaustive<F: Field>(inv: &Involution<F>) -> Result<Report> {
    let mut order = law(inv, "order two τ(τ(x)) = x");
    let mut transv = law(inv, "transversality a ⊤ x iff τa ⊤ τx");
    let all = enumerate_subspaces::<F>(inv.field(), inv.ambient(), None)?;
    let images: HashMap<Subspace<F>, Subspace<F>> = all.iter().map(|x| (x.clone(), inv.apply(x))).collect();
    let t = |x: &Subspace<F>| images.get(x).cloned().unwrap_or_else(|| inv.apply(x));
    order_and_transversality(&all, &t, &mut order, &mut transv);
    Ok(Report { results: vec![order, transv] })
}

/// Random `a, b` of a common dimension and `k` points transversal to both.
pub fn restricted_tuple<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    n: usize,
    k: usize,
) -> Option<(Subspace<F>, Subspace<F>, Vec<Subspace<F>>)> {
    for _ in 0..40 {
        let d = rng.gen_range(0..=n);
        let a: Subspace<F> = random_subspace_of_dim(rng, field, n, d);
        let b = if rng.gen_ratio(1, 4) { a.clone() } else { random_subspace_of_dim(rng, field, n, d) };
        let pts: Vec<Subspace<F>> =
            (0..k).map_while(|_| random_transversal(rng, field, &[&a, &b], 60)).collect();
        if pts.len() == k {
            return Some((a, b, pts));
        }
    }
    None
}

/// Pairwise transversal `(o⁺, e, o⁻)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTriple<F> {
    pub o_plus: Subspace<F>,
    pub e: Subspace<F>,
    pub o_minus: Subspace<F>,
}

impl<F: Field> BaseTriple<F> {
    pub fn new(o_plus: Subspace<F>, e: Subspace<F>, o_minus: Subspace<F>) -> Result<Self> {
        if !o_plus.is_transversal(&o_minus) || !o_plus.is_transversal(&e) || !e.is_transversal(&o_minus) {
            return Err(Error::NotTransversal("base triple must be pairwise transversal".into()));
        }
        Ok(BaseTriple { o_plus, e, o_minus })
    }

    /// `Kⁿ ⊕ 0`, the diagonal, `0 ⊕ Kⁿ`.
    pub fn standard(n: usize, field: &FieldSpec) -> Self {
        BaseTriple {
            o_plus: Subspace::o_plus(n, n, field),
            e: Subspace::diagonal(n, field),
            o_minus: Subspace::o_minus(n, n, field),
        }
    }

    pub fn ambient(&self) -> usize {
        self.o_plus.ambient()
    }

    pub fn field(&self) -> &FieldSpec {
        self.o_plus.field()
    }

    /// `M_{o⁺o⁻o⁻o⁺}`, which is `diag(1, −1)` in adapted coordinates.
    pub fn m_flip(&self) -> Matrix<F> {
        m_operator(&self.o_plus, &self.o_minus, &self.o_minus, &self.o_plus).expect("transversal")
    }

    /// `j = M_{e o⁺ o⁻ e}`.
    pub fn j(&self) -> Matrix<F> {
        m_operator(&self.e, &self.o_plus, &self.o_minus, &self.e).expect("transversal")
    }

    /// Columns `u₁…uₙ, w₁…wₙ` with `uᵢ ∈ o⁺`, `wᵢ ∈ o⁻` and `uᵢ + wᵢ ∈ e`.
    pub fn adapted_basis(&self) -> Matrix<F> {
        let p_plus = crate::gamma::projection_operator(&self.o_plus, &self.o_minus).expect("transversal");
        let p_minus = crate::gamma::projection_operator(&self.o_minus, &self.o_plus).expect("transversal");
        let eb = self.e.basis().transpose();
        (&p_plus * &eb).hstack(&(&p_minus * &eb)).expect("rows")
    }

    pub fn preserved_by(&self, inv: &Involution<F>) -> bool {
        inv.apply(&self.o_plus) == self.o_plus && inv.apply(&self.o_minus) == self.o_minus
    }

    pub fn exchanged_by(&self, inv: &Involution<F>) -> bool {
        inv.apply(&self.o_plus) == self.o_minus && inv.apply(&self.o_minus) == self.o_plus
    }

    pub fn unital_preserved_by(&self, inv: &Involution<F>) -> bool {
        self.preserved_by(inv) && inv.apply(&self.e) == self.e
    }
}

/// `τ′ = M_{o⁺o⁻o⁻o⁺} ∘ τ` for base point preserving or exchanging `τ`.
pub fn dual_involution<F: Field>(inv: &Involution<F>, bt: &BaseTriple<F>) -> Result<Involution<F>> {
    if !bt.preserved_by(inv) && !bt.exchanged_by(inv) {
        return Err(Error::Precondition("involution neither preserves nor exchanges o⁺, o⁻".into()));
    }
    inv.with_extra_post(&bt.m_flip(), format!("{}′", inv.label))
}

pub fn j_map<F: Field>(bt: &BaseTriple<F>) -> Matrix<F> {
    bt.j()
}

/// `τ̃ = j ∘ τ` for unital base point preserving `τ`.
pub fn tilde_tau<F: Field>(inv: &Involution<F>, bt: &BaseTriple<F>) -> Result<Involution<F>> {
    if !bt.unital_preserved_by(inv) {
        return Err(Error::Precondition("involution must fix o⁺, e and o⁻".into()));
    }
    inv.with_extra_post(&bt.j(), format!("j{}", inv.label))
}

/// The real Cayley transform `R = [[1, −1], [1, 1]]` in adapted coordinates.
pub fn cayley_rho<F: Field>(bt: &BaseTriple<F>) -> Result<Matrix<F>> {
    let f = *bt.field();
    if !f.two_invertible() {
        return Err(Error::Characteristic2);
    }
    let n = bt.o_plus.dim();
    let one = Matrix::<F>::identity(n, &f);
    let r = Matrix::block2(&one, &-&one, &one, &one)?;
    let c = bt.adapted_basis();
    Ok(&(&c * &r) * &c.invert()?)
}

/// `t̃_a = M_{o⁺ a o⁻ o⁺} ∘ M_{o⁺o⁻o⁻o⁺}` for `a = graph_minus(a_param)`.
pub fn translation_op<F: Field>(a_param: &Matrix<F>, bt: &BaseTriple<F>) -> Result<Matrix<F>> {
    let a = graph_minus(a_param);
    if a.ambient() != bt.ambient() {
        return Err(Error::AmbientMismatch(a.ambient(), bt.ambient()));
    }
    if !a.is_transversal(&bt.o_plus) {
        return Err(Error::NotTransversal("a must be transversal to o⁺".into()));
    }
    Ok(&m_operator(&bt.o_plus, &a, &bt.o_minus, &bt.o_plus)? * &bt.m_flip())
}

/// Pointwise agreement of two involutions on `points`.
pub fn agreement<F: Field>(
    suite: &str,
    name: &str,
    lhs: &dyn Fn(&Subspace<F>) -> Subspace<F>,
    rhs: &dyn Fn(&Subspace<F>) -> Subspace<F>,
    points: &[Subspace<F>],
    domain: &str,
) -> LawResult {
    let mut r = LawResult::new(suite, name, domain);
    for x in points {
        r.record(lhs(x) == rhs(x), || tuple_json(&[x]));
    }
    r
}
