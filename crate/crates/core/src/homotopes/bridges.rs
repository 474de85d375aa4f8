//! Affine and projective pictures compared on finite fields.
//!
//! `τ = ⊥_β` acts on `W = Kⁿ ⊕ Kⁿ` with the standard base triple, and `A`
//! is read in pair coordinates, `a = pair_embed(A, −) = graph_minus(Aᵗ)`.
//! The O case uses `β = Ω` and symmetric `A`, the Sp case `β = F` and
//! antisymmetric `A`, the U case the sesquilinear `Ω` and hermitian `A`; in
//! each case `τ(a) = a` and the groups in play are `G(τ′; a)`,
//! `U(τ; 2a, o⁺, o⁻)` and the homotope family with parameter `2A`.

use std::collections::HashMap;

use serde_json::json;

use super::{hom_product, pair_chart, pair_embed, ClassicalFamily, FamilyKind, PairSign};
use crate::error::{Error, Result};
use crate::gamma::{gamma_global, tuple_json, Sampling};
use crate::grassmann::{graph_of, Form, StandardForm, Subspace};
use crate::involutions::{
    dual_involution, ortho_involution, torsor_g, translation_op, unitary_group, BaseTriple, FixedTorsor,
    Involution,
};
use crate::matlin::Matrix;
use crate::report::{LawResult, Report};
use crate::sample::{random_matrix, rng_for};
use crate::scalars::{Field, FieldSpec};

/// The algebra involution `a ↦ a*` of `M(n,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Star {
    Transpose,
    ConjTranspose,
}

impl Star {
    pub fn apply<F: Field>(&self, a: &Matrix<F>) -> Matrix<F> {
        match self {
            Star::Transpose => a.transpose(),
            Star::ConjTranspose => a.conj_transpose(),
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "transpose" | "t" | "id" => Ok(Star::Transpose),
            "conj" | "conj-transpose" | "h" => Ok(Star::ConjTranspose),
            _ => Err(Error::Parse(format!("unknown involution `{s}`"))),
        }
    }
}

/// `M(n,n)` as the graphs `{(v, av)}` in `K²ⁿ` with
/// `β(x, y) = x̄₁y₂ − x̄₂y₁`; checks that `τ = ⊥_β` fixes the base triple,
/// sends the graph of `a` to the graph of `a*`, and reverses the chart
/// product `Γ(x, o⁺, e, o⁻, z)`.
pub fn theorem37_roundtrip<F: Field>(n: usize, field: &FieldSpec, star: Star, sampling: Sampling) -> Result<Report> {
    let conj = field.has_conjugation();
    if (star == Star::ConjTranspose) != conj {
        return Err(Error::NotInvolution(format!(
            "{star:?} is not the adjoint of β over {field}; use {}",
            if conj { "conj-transpose" } else { "transpose" }
        )));
    }
    let suite = "bridge-thm37";
    let tau = ortho_involution(&Form::<F>::standard(StandardForm::Symplectic, n, field)?)?;
    let bt = BaseTriple::standard(n, field);
    let elements: Vec<Matrix<F>> = match sampling {
        Sampling::Exhaustive => Matrix::enumerate(n, n, field)?,
        Sampling::Random { trials, seed } => {
            (0..trials).map(|t| random_matrix(&mut rng_for(seed, t), n, n, field)).collect()
        }
    };
    let dom = format!("n={n} over {field}, {} matrices, {}", elements.len(), sampling_name(&sampling));
    let mut report = Report::new();

    let mut triple = LawResult::new(suite, "τ fixes o⁺, e and o⁻", &dom);
    triple.record(bt.unital_preserved_by(&tau), || json!(null));
    report.push(triple);

    let mut graph = LawResult::new(suite, "τ(graph a) = graph(a*)", &dom);
    for a in &elements {
        graph.record(tau.apply(&graph_of(a)) == graph_of(&star.apply(a)), || json!({"a": a.to_string()}));
    }
    report.push(graph);

    let mut anti = LawResult::new(suite, "τΓ(x,o⁺,e,o⁻,z) = Γ(τz,o⁺,e,o⁻,τx)", &dom);
    let pairs: Vec<(usize, usize)> = if elements.len() <= 64 {
        (0..elements.len()).flat_map(|i| (0..elements.len()).map(move |j| (i, j))).collect()
    } else {
        (0..elements.len()).map(|i| (i, (7 * i + 3) % elements.len())).collect()
    };
    for (i, j) in pairs {
        let (x, z) = (graph_of(&elements[i]), graph_of(&elements[j]));
        let prod = gamma_global(&x, &bt.o_plus, &bt.e, &bt.o_minus, &z)?;
        let rev = gamma_global(&tau.apply(&z), &bt.o_plus, &bt.e, &bt.o_minus, &tau.apply(&x))?;
        anti.record(tau.apply(&prod) == rev, || tuple_json(&[&x, &z]));
    }
    report.push(anti);
    Ok(report)
}

fn sampling_name(s: &Sampling) -> String {
    match s {
        Sampling::Exhaustive => "exhaustive".into(),
        Sampling::Random { trials, seed } => format!("{trials} random, seed {seed}"),
    }
}

/// Shared data of the O/Sp/U bridges.
struct BridgeSetup<F> {
    bt: BaseTriple<F>,
    tau: Involution<F>,
    group: FixedTorsor<F>,
    translation: Matrix<F>,
    family: ClassicalFamily<F>,
    two_a: Matrix<F>,
    n: usize,
}

fn setup<F: Field>(kind: FamilyKind, a_param: &Matrix<F>) -> Result<BridgeSetup<F>> {
    let field = *a_param.field();
    if !field.two_invertible() {
        return Err(Error::Characteristic2);
    }
    if !field.is_finite() {
        return Err(Error::InfiniteField(field.to_string()));
    }
    if matches!(kind, FamilyKind::O | FamilyKind::Sp) && field.has_conjugation() {
        return Err(Error::Precondition(format!(
            "forms over {field} are sesquilinear, so the {} bridge needs a field without conjugation",
            kind.name()
        )));
    }
    let which = match kind {
        FamilyKind::O | FamilyKind::U => StandardForm::Symplectic,
        FamilyKind::Sp => StandardForm::Split,
        FamilyKind::GL => return Err(Error::Precondition("the GL family has no involution bridge".into())),
    };
    let two_a = a_param.scale(&F::from_int(2, &field));
    let family = ClassicalFamily::new(kind, two_a.clone())?;
    let n = a_param.rows();
    let bt = BaseTriple::standard(n, &field);
    let tau = ortho_involution(&Form::<F>::standard(which, n, &field)?)?;
    let a = pair_embed(a_param, PairSign::Minus);
    if tau.apply(&a) != a {
        return Err(Error::Precondition("a must be fixed by τ".into()));
    }
    let dual = dual_involution(&tau, &bt)?;
    let group = torsor_g(&dual, &a)?;
    let translation = translation_op(&a_param.transpose(), &bt)?;
    Ok(BridgeSetup { bt, tau, group, translation, family, two_a, n })
}

impl<F: Field> BridgeSetup<F> {
    fn carrier(&self) -> &[Subspace<F>] {
        self.group.carrier().expect("finite field")
    }

    fn translate(&self, x: &Subspace<F>) -> Subspace<F> {
        x.pushforward(&self.translation).expect("invertible")
    }

    /// Group law of `G(τ′; a)` with origin `o⁺`.
    fn g_product(&self, x: &Subspace<F>, y: &Subspace<F>) -> Subspace<F> {
        self.group.product(x, &self.bt.o_plus, y)
    }

    /// Pair coordinate of `t̃_a(x) ∈ C_{o⁻}`.
    fn coordinate(&self, x: &Subspace<F>) -> Result<Matrix<F>> {
        pair_chart(&self.translate(x), PairSign::Plus, self.n)
    }
}

/// Exact table equality between `G(τ′; a)`, charted through `t̃_a`, and the homotope family with parameter `2A` under `·_{2A}`.
pub fn prop41_bridge<F: Field>(kind: FamilyKind, a_param: &Matrix<F>) -> Result<Report> {
    let s = setup(kind, a_param)?;
    let suite = "bridge-prop41";
    let dom = format!("{} n={} over {}, A={}", kind.name(), s.n, a_param.field(), a_param);
    let mut report = Report::new();

    let mut chart = LawResult::new(suite, "t̃_a G(τ′;a) lies in the chart C_{o⁻}", &dom);
    let mut coords = Vec::new();
    for x in s.carrier() {
        match s.coordinate(x) {
            Ok(c) => {
                chart.record(true, || json!(null));
                coords.push(c);
            }
            Err(_) => chart.record(false, || tuple_json(&[x])),
        }
    }
    report.push(chart);
    if coords.len() != s.carrier().len() {
        return Ok(report);
    }

    let members = s.family.members()?;
    let mut sets = LawResult::new(suite, "charted carrier = family members for 2A", &dom);
    let mut sorted = coords.clone();
    sorted.sort_by(|a, b| a.lex_cmp(b));
    sorted.dedup();
    sets.record(sorted.len() == coords.len(), || json!("chart is not injective"));
    for m in &members {
        sets.record(sorted.binary_search_by(|c| c.lex_cmp(m)).is_ok(), || json!({"missing": m.to_string()}));
    }
    for c in &sorted {
        sets.record(s.family.family_member(c), || json!({"extra": c.to_string()}));
    }
    report.push(sets);

    let index: HashMap<&Subspace<F>, usize> = s.carrier().iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut table = LawResult::new(suite, "Cayley tables agree: chart(x·y) = chart(x) ·_{2A} chart(y)", &dom);
    for (i, x) in s.carrier().iter().enumerate() {
        for (j, y) in s.carrier().iter().enumerate() {
            let xy = s.g_product(x, y);
            let lhs = index.get(&xy).map(|&k| coords[k].clone());
            let rhs = hom_product(&coords[i], &coords[j], &s.family.alg)?;
            table.record(lhs.as_ref() == Some(&rhs), || tuple_json(&[x, y]));
        }
    }
    report.push(table);
    Ok(report)
}

/// `t̃_a` carries `G(τ′; a)` isomorphically onto `U(τ; 2a, o⁺, o⁻)`.
pub fn thm33_bridge<F: Field>(kind: FamilyKind, a_param: &Matrix<F>) -> Result<Report> {
    let s = setup(kind, a_param)?;
    let suite = "bridge-thm33";
    let dom = format!("{} n={} over {}, A={}", kind.name(), s.n, a_param.field(), a_param);
    let a = pair_embed(a_param, PairSign::Minus);
    let two_a = pair_embed(&s.two_a, PairSign::Minus);
    let mut report = Report::new();

    let mut ends = LawResult::new(suite, "t̃_a(a) = 2a and t̃_a(τ′a) = o⁻", &dom);
    ends.record(s.translate(&a) == two_a, || tuple_json(&[&a]));
    ends.record(s.translate(s.group.tau_a()) == s.bt.o_minus, || tuple_json(&[s.group.tau_a()]));
    report.push(ends);

    let u = unitary_group(&s.tau, &two_a, &s.bt.o_plus, &s.bt.o_minus)?;
    let members = u.members().expect("finite field");
    let images: Vec<Subspace<F>> = s.carrier().iter().map(|x| s.translate(x)).collect();
    let mut onto = LawResult::new(suite, "t̃_a maps G(τ′;a) bijectively onto U(τ;2a,o⁺,o⁻)", &dom);
    onto.record(images.len() == members.len(), || json!({"G": images.len(), "U": members.len()}));
    for (x, y) in s.carrier().iter().zip(&images) {
        onto.record(u.is_member(y), || tuple_json(&[x]));
    }
    report.push(onto);

    let mut hom = LawResult::new(suite, "t̃_a(x·y) = t̃_a(x)·t̃_a(y)", &dom);
    for (x, tx) in s.carrier().iter().zip(&images) {
        for (y, ty) in s.carrier().iter().zip(&images) {
            hom.record(s.translate(&s.g_product(x, y)) == u.product(tx, ty), || tuple_json(&[x, y]));
        }
    }
    report.push(hom);
    Ok(report)
}
