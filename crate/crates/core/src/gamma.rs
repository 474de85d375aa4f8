//! The pentary product `Γ(x, a, y, b, z)` on `Gras(W)`.
//!
//! Three independent constructions are provided: the relation formula
//! `(1 − P_a^x P_y^b)(z)`, the difference formula `(P_x^a − P_b^z)(y)`,
//! and the defining set of all `ω = ζ + α = ζ + η + ξ = ξ + β`, solved as a
//! linear system. On transversal tuples a fourth route pushes `y` forward by
//! the operator `M_{xabz}`.

use std::collections::HashMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::grassmann::{enumerate_subspaces, Subspace};
use crate::matlin::Matrix;
use crate::relations::LinearRelation;
use crate::report::{LawResult, Report};
use crate::sample::{random_transversal, random_tuple, rng_for};
use crate::scalars::{Field, FieldSpec};

fn same_ambient<F: Field>(s: &[&Subspace<F>]) -> Result<()> {
    let n = s[0].ambient();
    for t in &s[1..] {
        if t.ambient() != n {
            return Err(Error::AmbientMismatch(n, t.ambient()));
        }
        if t.field() != s[0].field() {
            return Err(Error::FieldMismatch(s[0].field().to_string(), t.field().to_string()));
        }
    }
    Ok(())
}

/// JSON array of subspaces, used for counterexamples.
pub fn tuple_json<F: Field>(items: &[&Subspace<F>]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|s| serde_json::to_value(s.to_json()).expect("serializable"))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaTuple<F> {
    pub x: Subspace<F>,
    pub a: Subspace<F>,
    pub y: Subspace<F>,
    pub b: Subspace<F>,
    pub z: Subspace<F>,
}

impl<F: Field> GammaTuple<F> {
    pub fn new(
        x: Subspace<F>,
        a: Subspace<F>,
        y: Subspace<F>,
        b: Subspace<F>,
        z: Subspace<F>,
    ) -> Result<Self> {
        same_ambient(&[&x, &a, &y, &b, &z])?;
        Ok(GammaTuple { x, a, y, b, z })
    }

    pub fn global(&self) -> Subspace<F> {
        gamma_global(&self.x, &self.a, &self.y, &self.b, &self.z).expect("checked ambient")
    }

    pub fn oracle(&self) -> Subspace<F> {
        gamma_oracle(&self.x, &self.a, &self.y, &self.b, &self.z).expect("checked ambient")
    }

    pub fn to_json(&self) -> Value {
        tuple_json(&[&self.x, &self.a, &self.y, &self.b, &self.z])
    }
}

/// `L_{xayb} = 1 − P_a^x P_y^b`
pub fn l_relation<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<LinearRelation<F>> {
    let pax = LinearRelation::gen_projection(a, x)?;
    let pyb = LinearRelation::gen_projection(y, b)?;
    Ok(LinearRelation::compose(&pax, &pyb)?.one_minus())
}

/// `M_{xabz} = P_x^a − P_b^z` as a linear relation.
pub fn m_relation<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<LinearRelation<F>> {
    LinearRelation::difference(
        &LinearRelation::gen_projection(x, a)?,
        &LinearRelation::gen_projection(b, z)?,
    )
}

/// `Γ(x, a, y, b, z) = (1 − P_a^x P_y^b)(z)`
pub fn gamma_global<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>> {
    same_ambient(&[x, a, y, b, z])?;
    l_relation(x, a, y, b)?.apply(z)
}

/// `Γ(x, a, y, b, z) = (P_x^a − P_b^z)(y)`
pub fn gamma_by_difference<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>> {
    same_ambient(&[x, a, y, b, z])?;
    m_relation(x, a, b, z)?.apply(y)
}

/// The set of `ω` admitting `ξ ∈ x, α ∈ a, η ∈ y, β ∈ b, ζ ∈ z` with
/// `ω = ζ + α = ζ + η + ξ = ξ + β`.
///
/// Unknowns are coordinate vectors of the witnesses in the bases of
/// `x, a, y, b, z` together with `ω`; the three vector equations give a
/// homogeneous system whose solution space is projected to `ω`.
pub fn gamma_oracle<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>> {
    same_ambient(&[x, a, y, b, z])?;
    let n = x.ambient();
    let field = *x.field();
    let parts = [x, a, y, b, z];
    let dims: Vec<usize> = parts.iter().map(|s| s.dim()).collect();
    let mut offsets = vec![0usize];
    for d in &dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    let w_off = offsets[5];
    let unknowns = w_off + n;
    // witness index: 0 = ξ, 1 = α, 2 = η, 3 = β, 4 = ζ
    let equations: [&[usize]; 3] = [&[4, 1], &[4, 2, 0], &[0, 3]];
    let mut sys = Matrix::<F>::zeros(3 * n, unknowns, &field);
    for (e, terms) in equations.iter().enumerate() {
        for i in 0..n {
            let row = e * n + i;
            sys[(row, w_off + i)] = F::one(&field);
            for &w in terms.iter() {
                let basis = parts[w].basis();
                for k in 0..dims[w] {
                    sys[(row, offsets[w] + k)] = -basis[(k, i)].clone();
                }
            }
        }
    }
    let sol = sys.kernel_basis();
    let omega: Vec<usize> = (w_off..unknowns).collect();
    Subspace::span(n, &sol.select_cols(&omega))
}

/// The projection operator with image `x` and kernel `a`, for `x ⊤ a`.
pub fn projection_operator<F: Field>(x: &Subspace<F>, a: &Subspace<F>) -> Result<Matrix<F>> {
    if !x.is_transversal(a) {
        return Err(Error::NotTransversal(format!("{x} and {a}")));
    }
    let c = x.basis().vstack(a.basis())?.transpose();
    let mut d = vec![0i64; x.ambient()];
    d[..x.dim()].fill(1);
    let diag = Matrix::diag_ints(&d, x.field());
    Ok(&(&c * &diag) * &c.invert()?)
}

/// `M_{xabz} = P_x^a − P_b^z` as an operator; needs `x ⊤ a` and `b ⊤ z`.
pub fn m_operator<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Matrix<F>> {
    same_ambient(&[x, a, b, z])?;
    projection_operator(x, a)?.checked_sub(&projection_operator(b, z)?)
}

/// `Γ(x, a, y, b, z) = M_{xabz}(y)` for `x, y, z` transversal to `a` and `b`.
pub fn gamma_restricted<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>> {
    same_ambient(&[x, a, y, b, z])?;
    for (name, p) in [("x", x), ("y", y), ("z", z)] {
        if !p.is_transversal(a) || !p.is_transversal(b) {
            return Err(Error::NotTransversal(format!("{name} must be transversal to a and b")));
        }
    }
    y.pushforward(&m_operator(x, a, b, z)?)
}

/// `Π_s(x, a, y) = (s P_a^x + P_x^a)(y)` for `x, y` transversal to `a`.
pub fn dilation<F: Field>(
    s: &F,
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
) -> Result<Subspace<F>> {
    same_ambient(&[x, a, y])?;
    if !y.is_transversal(a) {
        return Err(Error::NotTransversal("y must be transversal to a".into()));
    }
    let op = projection_operator(a, x)?
        .scale(s)
        .checked_add(&projection_operator(x, a)?)?;
    y.image(&op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsorMode {
    /// Carrier `U_{ab} = {x : x ⊤ a, x ⊤ b}`.
    Restricted,
    /// Carrier: the whole Grassmannian.
    Global,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorView<F> {
    pub a: Subspace<F>,
    pub b: Subspace<F>,
    pub mode: TorsorMode,
}

impl<F: Field> TorsorView<F> {
    pub fn new(a: Subspace<F>, b: Subspace<F>, mode: TorsorMode) -> Result<Self> {
        same_ambient(&[&a, &b])?;
        Ok(TorsorView { a, b, mode })
    }

    pub fn contains(&self, x: &Subspace<F>) -> bool {
        match self.mode {
            TorsorMode::Global => true,
            TorsorMode::Restricted => x.is_transversal(&self.a) && x.is_transversal(&self.b),
        }
    }

    pub fn ambient(&self) -> usize {
        self.a.ambient()
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }

    pub fn domain(&self) -> String {
        let mode = match self.mode {
            TorsorMode::Restricted => "U",
            TorsorMode::Global => "X",
        };
        format!("{mode}_{{{},{}}} in {}^{}", self.a, self.b, self.field(), self.ambient())
    }

    /// Carrier over a finite field, in enumeration order.
    pub fn carrier(&self) -> Result<Vec<Subspace<F>>> {
        Ok(enumerate_subspaces::<F>(self.field(), self.ambient(), None)?
            .into_iter()
            .filter(|x| self.contains(x))
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

/// A pentary product, the real `Γ` or a deliberately broken stand-in.
pub trait Product<F>: Fn(&Subspace<F>, &Subspace<F>, &Subspace<F>, &Subspace<F>, &Subspace<F>) -> Subspace<F> {}

impl<F, T> Product<F> for T where
    T: Fn(&Subspace<F>, &Subspace<F>, &Subspace<F>, &Subspace<F>, &Subspace<F>) -> Subspace<F>
{
}

pub fn global_product<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Subspace<F> {
    gamma_global(x, a, y, b, z).expect("common ambient")
}

/// `Γ` with its first and third arguments exchanged; a negative control.
pub fn corrupted_product<F: Field>(
    x: &Subspace<F>,
    a: &Subspace<F>,
    y: &Subspace<F>,
    b: &Subspace<F>,
    z: &Subspace<F>,
) -> Subspace<F> {
    gamma_global(y, a, x, b, z).expect("common ambient")
}

/// `check_laws` with the true product.
pub fn check_laws<F: Field>(view: &TorsorView<F>, sampling: Sampling) -> Result<Report> {
    check_laws_with(view, sampling, "torsor-laws", &global_product::<F>)
}

/// Para-associativity, Klein invariance, commutativity of `U_{aa}`, and on
/// restricted carriers the torsor identities, closure and agreement with
/// the operator route.
pub fn check_laws_with<F: Field, P: Product<F>>(
    view: &TorsorView<F>,
    sampling: Sampling,
    suite: &str,
    prod: &P,
) -> Result<Report> {
    laws_impl(view, sampling, None, suite, prod)
}

/// Exhaustive law check on an explicit carrier (a subset of the view's
/// carrier, e.g. a fixed-point set); closure is checked against it.
pub fn check_laws_on<F: Field, P: Product<F>>(
    view: &TorsorView<F>,
    carrier: &[Subspace<F>],
    suite: &str,
    prod: &P,
) -> Report {
    laws_impl(view, Sampling::Exhaustive, Some(carrier), suite, prod).expect("carrier given")
}

fn laws_impl<F: Field, P: Product<F>>(
    view: &TorsorView<F>,
    sampling: Sampling,
    custom: Option<&[Subspace<F>]>,
    suite: &str,
    prod: &P,
) -> Result<Report> {
    let dom = view.domain();
    let (a, b) = (&view.a, &view.b);
    let mut para_l = LawResult::new(suite, "para-associativity (xy(zuv)) = ((xyz)uv)", &dom);
    let mut para_m = LawResult::new(suite, "para-associativity (x(uzy)v) = ((xyz)uv)", &dom);
    let mut klein1 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(a,x,y,z,b)", &dom);
    let mut klein2 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(z,b,y,a,x)", &dom);
    let mut comm = LawResult::new(suite, "commutativity of U_aa (xyz) = (zyx)", &dom);
    let mut ident = LawResult::new(suite, "torsor identities (xyy) = x = (yyx)", &dom);
    let mut closure = LawResult::new(suite, "closure of the carrier", &dom);
    let mut agree = LawResult::new(suite, "restricted agreement M_xabz(y) = Γ", &dom);
    let restricted = view.mode == TorsorMode::Restricted;

    let triple = |x: &Subspace<F>, y: &Subspace<F>, z: &Subspace<F>| -> Subspace<F> {
        prod(x, a, y, b, z)
    };

    let check_triple = |x: &Subspace<F>, y: &Subspace<F>, z: &Subspace<F>, xyz: &Subspace<F>,
                            klein1: &mut LawResult, klein2: &mut LawResult,
                            comm: &mut LawResult, agree: &mut LawResult| {
        let ce = || tuple_json(&[x, a, y, b, z]);
        klein1.record(prod(a, x, y, z, b) == *xyz, ce);
        klein2.record(prod(z, b, y, a, x) == *xyz, ce);
        if a == b {
            comm.record(prod(z, a, y, b, x) == *xyz, ce);
        }
        if restricted {
            let r = gamma_restricted(x, a, y, b, z);
            agree.record(r.as_ref().ok() == Some(xyz), ce);
        }
    };

    match sampling {
        Sampling::Exhaustive => {
            let owned;
            let carrier: &[Subspace<F>] = match custom {
                Some(c) => c,
                None => {
                    owned = view.carrier()?;
                    &owned
                }
            };
            let k = carrier.len();
            let index: HashMap<&Subspace<F>, usize> =
                carrier.iter().enumerate().map(|(i, s)| (s, i)).collect();
            // table[(x, y, z)] = index of (xyz) in the carrier, if it lies there
            let mut table = vec![None; k * k * k];
            for (i, x) in carrier.iter().enumerate() {
                for (j, y) in carrier.iter().enumerate() {
                    for (l, z) in carrier.iter().enumerate() {
                        let v = triple(x, y, z);
                        check_triple(x, y, z, &v, &mut klein1, &mut klein2, &mut comm, &mut agree);
                        let slot = index.get(&v).copied();
                        closure.record(slot.is_some(), || tuple_json(&[x, a, y, b, z]));
                        table[(i * k + j) * k + l] = slot;
                    }
                }
            }
            let t = |i: usize, j: usize, l: usize| table[(i * k + j) * k + l];
            for x in 0..k {
                for (y, yy) in carrier.iter().enumerate() {
                    let xyy = t(x, y, y);
                    let yyx = t(y, y, x);
                    if restricted {
                        ident.record(xyy == Some(x) && yyx == Some(x), || {
                            tuple_json(&[&carrier[x], a, yy, b])
                        });
                    }
                    for z in 0..k {
                        let Some(xyz) = t(x, y, z) else { continue };
                        for u in 0..k {
                            for v in 0..k {
                                let ce = || {
                                    tuple_json(&[
                                        &carrier[x], yy, &carrier[z], &carrier[u], &carrier[v], a,
                                        b,
                                    ])
                                };
                                let rhs = t(xyz, u, v);
                                let left = t(z, u, v).and_then(|zuv| t(x, y, zuv));
                                let mid = t(u, z, y).and_then(|uzy| t(x, uzy, v));
                                para_l.record(rhs.is_some() && left == rhs, ce);
                                para_m.record(rhs.is_some() && mid == rhs, ce);
                            }
                        }
                    }
                }
            }
        }
        Sampling::Random { trials, seed } => {
            let field = *view.field();
            let n = view.ambient();
            for trial in 0..trials {
                let mut rng = rng_for(seed, trial);
                let pts: Vec<Subspace<F>> = if restricted {
                    let mut v = Vec::with_capacity(5);
                    for _ in 0..5 {
                        match random_transversal(&mut rng, &field, &[a, b], 500) {
                            Some(s) => v.push(s),
                            None => break,
                        }
                    }
                    if v.len() < 5 {
                        break;
                    }
                    v
                } else {
                    let mut seeds = random_tuple(&mut rng, &field, n, 5);
                    // let the sampled points coincide with a or b now and then
                    for s in seeds.iter_mut() {
                        if rand::Rng::gen_ratio(&mut rng, 1, 8) {
                            *s = if rand::Rng::gen_bool(&mut rng, 0.5) { a.clone() } else { b.clone() };
                        }
                    }
                    seeds
                };
                let (x, y, z, u, v) = (&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]);
                let xyz = triple(x, y, z);
                check_triple(x, y, z, &xyz, &mut klein1, &mut klein2, &mut comm, &mut agree);
                if restricted {
                    closure.record(view.contains(&xyz), || tuple_json(&[x, a, y, b, z]));
                    ident.record(triple(x, y, y) == *x && triple(y, y, x) == *x, || {
                        tuple_json(&[x, a, y, b])
                    });
                }
                let rhs = triple(&xyz, u, v);
                let ce = || tuple_json(&[x, y, z, u, v, a, b]);
                let left = triple(x, y, &triple(z, u, v));
                let mid = triple(x, &triple(u, z, y), v);
                para_l.record(left == rhs, ce);
                para_m.record(mid == rhs, ce);
            }
        }
    }

    let mut report = Report::new();
    for law in [para_l, para_m, klein1, klein2] {
        report.push(law);
    }
    if a == b {
        report.push(comm);
    }
    if restricted || custom.is_some() {
        report.push(closure);
    }
    if restricted {
        for law in [ident, agree] {
            report.push(law);
        }
    }
    Ok(report)
}

/// Para-associativity and Klein invariance on fully random tuples, with `a`
/// and `b` drawn alongside the five points and the ambient dimension drawn
/// from `1..=max_ambient` per trial.
pub fn check_global_laws_random<F: Field>(
    field: &FieldSpec,
    max_ambient: usize,
    trials: u64,
    seed: u64,
    suite: &str,
) -> Report {
    let dom = format!("random tuples over {field}, ambient ≤ {max_ambient}");
    let mut para_l = LawResult::new(suite, "para-associativity (xy(zuv)) = ((xyz)uv)", &dom);
    let mut para_m = LawResult::new(suite, "para-associativity (x(uzy)v) = ((xyz)uv)", &dom);
    let mut klein1 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(a,x,y,z,b)", &dom);
    let mut klein2 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(z,b,y,a,x)", &dom);
    for trial in 0..trials {
        let mut rng = rng_for(seed, trial);
        let n = rand::Rng::gen_range(&mut rng, 1..=max_ambient);
        let t: Vec<Subspace<F>> = random_tuple(&mut rng, field, n, 7);
        let (a, b, x, y, z, u, v) = (&t[0], &t[1], &t[2], &t[3], &t[4], &t[5], &t[6]);
        let g = |p: &Subspace<F>, q: &Subspace<F>, r: &Subspace<F>| global_product(p, a, q, b, r);
        let xyz = g(x, y, z);
        let ce = || tuple_json(&[x, y, z, u, v, a, b]);
        let rhs = g(&xyz, u, v);
        para_l.record(g(x, y, &g(z, u, v)) == rhs, ce);
        para_m.record(g(x, &g(u, z, y), v) == rhs, ce);
        klein1.record(global_product(a, x, y, z, b) == xyz, ce);
        klein2.record(global_product(z, b, y, a, x) == xyz, ce);
    }
    Report { results: vec![para_l, para_m, klein1, klein2] }
}
