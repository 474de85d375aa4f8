//! Named law suites, shared by `torsorlab check` and the acceptance tests.
//!
//! Every suite is deterministic in its configuration: exhaustive listings
//! follow enumeration order and random cases draw from `rng_for(seed, trial)`.

use std::collections::HashMap;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gamma::{
    check_global_laws_random, gamma_by_difference, gamma_global, gamma_oracle, gamma_restricted,
    l_relation, m_relation, tuple_json, Sampling,
};
use crate::grassmann::{count_subspaces, enumerate_subspaces, Form, StandardForm, Subspace};
use crate::homotopes::{
    check_algebra_first_kind, check_lie_brackets, check_pair_identity, check_triple_identities,
    prop41_bridge, random_parameter, theorem37_roundtrip, thm33_bridge, triple_from_involution,
    AssociativePair, ClassicalFamily, FamilyKind, Star,
};
use crate::involutions::{
    fixed_point_census, isotropic_census, ortho_involution, restricted_tuple, verify_involution,
    verify_order_exhaustive, Involution, Level,
};
use crate::matlin::Matrix;
use crate::relations::LinearRelation;
use crate::report::{LawResult, Report};
use crate::sample::{random_relation, random_tuple, rng_for};
use crate::scalars::{Field, FieldSpec, FieldVisitor};

/// Largest number of 5-tuples a suite will list exhaustively.
pub const TUPLE_LIMIT: u64 = 20_000;
/// Largest number of relations the exhaustive relation suite will list.
pub const RELATION_LIMIT: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub field: FieldSpec,
    /// Ambient dimension of the points (for relations: `dim W`; for the
    /// involution and Lagrangian suites the forms live on `K^{2⌊n/2⌋}`).
    pub ambient: usize,
    pub exhaustive: bool,
    pub trials: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        SuiteConfig { field, ambient, exhaustive: false, trials: 200, seed: 0 }
    }

    pub fn exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }

    pub fn random(mut self, trials: u64, seed: u64) -> Self {
        self.exhaustive = false;
        self.trials = trials;
        self.seed = seed;
        self
    }

    fn half(&self) -> usize {
        (self.ambient / 2).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteInfo {
    pub name: &'static str,
    /// Module whose invariants the suite checks.
    pub module: &'static str,
    pub checks: &'static str,
}

const fn info(name: &'static str, module: &'static str, checks: &'static str) -> SuiteInfo {
    SuiteInfo { name, module, checks }
}

/// Every suite, in the order `all` runs them.
pub const SUITES: &[SuiteInfo] = &[
    info("gamma-laws", "gamma", "para-associativity and Klein invariance of the global Γ"),
    info(
        "gamma-agreement",
        "gamma",
        "Γ via (1 − P_a^x P_y^b)(z), via (P_x^a − P_b^z)(y) and via the defining linear system; M_{xabz}(y) on transversal tuples",
    ),
    info(
        "relations",
        "relations",
        "generalized projections: idempotence, conjugation by relations, 1 − P, lattice formulas, inverses of L and M, adjoints",
    ),
    info(
        "involution",
        "involutions",
        "⊥ of the standard forms: order two, transversality, global anti-homomorphism and inclusion; degenerate negative control",
    ),
    info(
        "lagrangian",
        "involutions",
        "Lagrangian census by isotropy vs fixed points of τ; closure of 𝒴 under Γ(·,a,·,τa,·) for every a",
    ),
    info(
        "hull",
        "homotopes",
        "semigroup hulls of the O and Sp families (U over fields with conjugation) closed under ·_A with unit 0",
    ),
    info("lie", "homotopes", "dual-number Lie bracket against XAY − YAX"),
    info("appendix", "homotopes", "associative pair identity, second-kind triple identities, first-kind negative control"),
    info(
        "bridges",
        "homotopes",
        "torsor tables against homotope families, the translation isomorphism, τ(graph a) = graph(a*)",
    ),
    info("all", "all", "every suite above"),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.name)
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    if !suite_names().any(|n| n == name) {
        return Err(Error::Parse(format!(
            "unknown suite `{name}`; known: {}",
            suite_names().collect::<Vec<_>>().join(", ")
        )));
    }
    cfg.field.dispatch(Runner { name, cfg })
}

struct Runner<'a> {
    name: &'a str,
    cfg: &'a SuiteConfig,
}

impl FieldVisitor for Runner<'_> {
    type Output = Result<Report>;

    fn visit<F: Field>(self, _field: FieldSpec) -> Result<Report> {
        run_typed::<F>(self.name, self.cfg)
    }
}

fn run_typed<F: Field>(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    match name {
        "gamma-laws" => gamma_laws::<F>(cfg),
        "gamma-agreement" => gamma_agreement::<F>(cfg),
        "relations" => relations::<F>(cfg),
        "involution" => involution::<F>(cfg),
        "lagrangian" => lagrangian::<F>(cfg),
        "hull" => hull::<F>(cfg),
        "lie" => lie::<F>(cfg),
        "appendix" => appendix::<F>(cfg),
        "bridges" => bridges::<F>(cfg),
        "all" => {
            let mut report = Report::new();
            for n in suite_names().filter(|n| *n != "all") {
                report.merge(run_typed::<F>(n, cfg)?);
            }
            Ok(report)
        }
        _ => unreachable!("checked by run_suite"),
    }
}

fn skipped(suite: &str, why: impl Into<String>) -> Report {
    let why = why.into();
    Report {
        results: vec![LawResult::new(suite, "not applicable", why.clone()).with_note(format!("skipped: {why}"))],
    }
}

/// Number of subspaces of `Kⁿ`, when `K` is finite.
fn subspace_count(field: &FieldSpec, n: usize) -> Option<u64> {
    let q = field.order()?;
    Some((0..=n).map(|k| count_subspaces(q, n, k)).sum())
}

fn tuples_listable(field: &FieldSpec, n: usize) -> bool {
    subspace_count(field, n).is_some_and(|k| k.checked_pow(5).is_some_and(|t| t <= TUPLE_LIMIT))
}

fn require_listable(field: &FieldSpec, n: usize) -> Result<()> {
    if tuples_listable(field, n) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "listing all 5-tuples of subspaces of {field}^{n} exceeds {TUPLE_LIMIT}; use random sampling"
        )))
    }
}

fn all_tuples(k: usize) -> impl Iterator<Item = [usize; 5]> {
    (0..k.pow(5)).map(move |mut i| {
        let mut t = [0; 5];
        for slot in t.iter_mut().rev() {
            *slot = i % k;
            i /= k;
        }
        t
    })
}

/// `Γ` on every 5-tuple of a finite Grassmannian, by index.
struct GammaTable<F> {
    points: Vec<Subspace<F>>,
    table: Vec<usize>,
}

impl<F: Field> GammaTable<F> {
    fn build(points: Vec<Subspace<F>>) -> Result<Self> {
        let k = points.len();
        let index: HashMap<&Subspace<F>, usize> = points.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut table = Vec::with_capacity(k.pow(5));
        for [x, a, y, b, z] in all_tuples(k) {
            let p = &points;
            let g = gamma_global(&p[x], &p[a], &p[y], &p[b], &p[z])?;
            table.push(index[&g]);
        }
        Ok(GammaTable { points, table })
    }

    fn get(&self, t: [usize; 5]) -> usize {
        let k = self.points.len();
        self.table[t.iter().fold(0, |acc, &i| acc * k + i)]
    }

    fn json(&self, idx: &[usize]) -> Value {
        tuple_json(&idx.iter().map(|&i| &self.points[i]).collect::<Vec<_>>())
    }
}

fn gamma_laws<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let suite = "gamma-laws";
    if !cfg.exhaustive {
        return Ok(check_global_laws_random::<F>(&cfg.field, cfg.ambient.max(1), cfg.trials, cfg.seed, suite));
    }
    let n = cfg.ambient;
    require_listable(&cfg.field, n)?;
    let g = GammaTable::build(enumerate_subspaces::<F>(&cfg.field, n, None)?)?;
    let k = g.points.len();
    let dom = format!("all tuples of subspaces of {}^{n}", cfg.field);
    let mut para_l = LawResult::new(suite, "para-associativity (xy(zuv)) = ((xyz)uv)", &dom);
    let mut para_m = LawResult::new(suite, "para-associativity (x(uzy)v) = ((xyz)uv)", &dom);
    let mut klein1 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(a,x,y,z,b)", &dom);
    let mut klein2 = LawResult::new(suite, "klein Γ(x,a,y,b,z) = Γ(z,b,y,a,x)", &dom);
    for [x, a, y, b, z] in all_tuples(k) {
        let v = g.get([x, a, y, b, z]);
        klein1.record(v == g.get([a, x, y, z, b]), || g.json(&[x, a, y, b, z]));
        klein2.record(v == g.get([z, b, y, a, x]), || g.json(&[x, a, y, b, z]));
    }
    for (a, b) in (0..k).flat_map(|a| (0..k).map(move |b| (a, b))) {
        let t = |x, y, z| g.get([x, a, y, b, z]);
        for [x, y, z, u, v] in all_tuples(k) {
            let left = t(t(x, y, z), u, v);
            para_l.record(t(x, y, t(z, u, v)) == left, || g.json(&[a, b, x, y, z, u, v]));
            para_m.record(t(x, t(u, z, y), v) == left, || g.json(&[a, b, x, y, z, u, v]));
        }
    }
    Ok(Report { results: vec![para_l, para_m, klein1, klein2] })
}

struct Agreement {
    diff: LawResult,
    oracle: LawResult,
    restricted: LawResult,
}

impl Agreement {
    fn new(dom: &str, restricted_dom: &str) -> Self {
        let suite = "gamma-agreement";
        Agreement {
            diff: LawResult::new(suite, "Γ: (1 − P_a^x P_y^b)(z) = (P_x^a − P_b^z)(y)", dom),
            oracle: LawResult::new(suite, "Γ: relation formula = solution set of the defining system", dom),
            restricted: LawResult::new(
                suite,
                "Γ: M_{xabz}(y) = global Γ on tuples with x, y, z ⊤ a, b",
                restricted_dom,
            ),
        }
    }

    fn global<F: Field>(&mut self, t: [&Subspace<F>; 5]) -> Result<()> {
        let [x, a, y, b, z] = t;
        let g = gamma_global(x, a, y, b, z)?;
        let d = gamma_by_difference(x, a, y, b, z)?;
        let o = gamma_oracle(x, a, y, b, z)?;
        self.diff.record(g == d, || tuple_json(&t));
        self.oracle.record(g == o, || tuple_json(&t));
        Ok(())
    }

    fn restricted<F: Field>(&mut self, t: [&Subspace<F>; 5]) -> Result<()> {
        let [x, a, y, b, z] = t;
        let g = gamma_global(x, a, y, b, z)?;
        let r = gamma_restricted(x, a, y, b, z)?;
        self.restricted.record(g == r, || tuple_json(&t));
        Ok(())
    }
}

fn in_d5<F: Field>(t: [&Subspace<F>; 5]) -> bool {
    let [x, a, y, b, z] = t;
    [x, y, z].iter().all(|p| p.is_transversal(a) && p.is_transversal(b))
}

fn gamma_agreement<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let field = &cfg.field;
    let agree = if cfg.exhaustive {
        let n = cfg.ambient;
        require_listable(field, n)?;
        let dom = format!("all tuples of subspaces of {field}^{n}");
        let mut agree = Agreement::new(&dom, &format!("all transversal tuples of subspaces of {field}^{n}"));
        let p = enumerate_subspaces::<F>(field, n, None)?;
        for [x, a, y, b, z] in all_tuples(p.len()) {
            let t = [&p[x], &p[a], &p[y], &p[b], &p[z]];
            agree.global(t)?;
            if in_d5(t) {
                agree.restricted(t)?;
            }
        }
        agree
    } else {
        let n = cfg.ambient.max(1);
        let dom = format!("random tuples over {field}, ambient ≤ {n}");
        let mut agree = Agreement::new(&dom, &format!("random transversal tuples over {field}, ambient ≤ {n}"));
        for trial in 0..cfg.trials {
            let mut rng = rng_for(cfg.seed, trial);
            let m = rng.gen_range(1..=n);
            let v: Vec<Subspace<F>> = random_tuple(&mut rng, field, m, 5);
            agree.global([&v[0], &v[1], &v[2], &v[3], &v[4]])?;
        }
        // a separate stream so the global cases do not depend on this loop
        for trial in 0..cfg.trials {
            let mut rng = rng_for(cfg.seed.wrapping_add(1), trial);
            let m = rng.gen_range(1..=n);
            if let Some((a, b, pts)) = restricted_tuple::<F, _>(&mut rng, field, m, 3) {
                agree.restricted([&pts[0], &a, &pts[1], &b, &pts[2]])?;
            }
        }
        agree
    };
    Ok(Report { results: vec![agree.diff, agree.oracle, agree.restricted] })
}

/// Forms used for adjoints on `W = K^w`.
fn forms_on<F: Field>(w: usize, field: &FieldSpec) -> Result<Vec<Form<F>>> {
    let mut forms = vec![Form::new(Matrix::identity(w, field))?];
    if w % 2 == 0 {
        forms.push(Form::standard(StandardForm::Symplectic, w / 2, field)?);
    }
    Ok(forms)
}

struct RelationLaws {
    idempotent: LawResult,
    one_minus_diff: LawResult,
    one_minus_op: LawResult,
    lattice_apply: LawResult,
    lattice_inverse: LawResult,
    gamma_apply: LawResult,
    conjugation: LawResult,
    l_inverse: LawResult,
    m_inverse: LawResult,
    adjoint_one_pm: LawResult,
    adjoint_projection: LawResult,
    adjoint_compose: LawResult,
    adjoint_twice: LawResult,
    rank_nullity: LawResult,
    adjoint_inclusion: LawResult,
    strict_inclusions: u64,
}

fn rel_json<F: Field>(f: &LinearRelation<F>) -> Value {
    serde_json::to_value(f.to_json()).expect("serializable")
}

fn sub_json<F: Field>(s: &Subspace<F>) -> Value {
    serde_json::to_value(s.to_json()).expect("serializable")
}

impl RelationLaws {
    fn new(dom: &str) -> Self {
        let l = |law: &str| LawResult::new("relations", law, dom);
        RelationLaws {
            idempotent: l("idempotence P_x^a ∘ P_x^a = P_x^a"),
            one_minus_diff: l("difference(1, P_x^a) = P_a^x"),
            one_minus_op: l("1 − P_x^a = P_a^x"),
            lattice_apply: l("P_x^a(z) = x ∧ (a ∨ z)"),
            lattice_inverse: l("(P_x^a)⁻¹(z) = a ∨ (x ∧ z)"),
            gamma_apply: l("Γ(x,a,a,x,z) = P_x^a(z)"),
            conjugation: l("conjugation F ∘ P_z^c ∘ F⁻¹ = P_{Fz}^{Fc} for arbitrary relations F"),
            l_inverse: l("L_{xayb}⁻¹(z) = L_{yaxb}(z)"),
            m_inverse: l("M_{xabz}⁻¹(y) = M_{zabx}(y)"),
            adjoint_one_pm: l("(1 ± F)* = 1 ± F*"),
            adjoint_projection: l("(P_x^a)* = P_{a⊥}^{x⊥}"),
            adjoint_compose: l("(G ∘ F)* = F* ∘ G*"),
            adjoint_twice: l("F** = F"),
            rank_nullity: l("dim F = dim ker F + dim im F"),
            adjoint_inclusion: l("(Fz)⊥ ⊇ (F*)⁻¹(z⊥)"),
            strict_inclusions: 0,
        }
    }

    fn projection<F: Field>(&mut self, x: &Subspace<F>, a: &Subspace<F>, z: &Subspace<F>, forms: &[Form<F>]) -> Result<()> {
        let w = x.ambient();
        let field = x.field();
        let p = LinearRelation::gen_projection(x, a)?;
        let q = LinearRelation::gen_projection(a, x)?;
        let ce = || tuple_json(&[x, a, z]);
        self.idempotent.record(LinearRelation::compose(&p, &p)? == p, ce);
        let diff = LinearRelation::difference(&LinearRelation::identity(w, field), &p)?;
        self.one_minus_diff.record(diff == q, ce);
        self.one_minus_op.record(p.one_minus() == q, ce);
        let pz = p.apply(z)?;
        self.lattice_apply.record(pz == x.meet(&a.join(z)?)?, ce);
        self.lattice_inverse.record(p.inverse_rel().apply(z)? == a.join(&x.meet(z)?)?, ce);
        self.gamma_apply.record(gamma_global(x, a, a, x, z)? == pz, ce);
        for form in forms {
            let expected = LinearRelation::gen_projection(&a.orthocomplement(form)?, &x.orthocomplement(form)?)?;
            self.adjoint_projection.record(p.adjoint(form)? == expected, || {
                json!({"x": sub_json(x), "a": sub_json(a), "gram": form.gram().to_string()})
            });
        }
        Ok(())
    }

    fn conjugation<F: Field>(&mut self, f: &LinearRelation<F>, c: &Subspace<F>, z: &Subspace<F>) -> Result<()> {
        let lhs = LinearRelation::compose(f, &LinearRelation::compose(&LinearRelation::gen_projection(z, c)?, &f.inverse_rel())?)?;
        let rhs = LinearRelation::gen_projection(&f.apply(z)?, &f.apply(c)?)?;
        self.conjugation.record(lhs == rhs, || json!({"F": rel_json(f), "c": sub_json(c), "z": sub_json(z)}));
        Ok(())
    }

    fn five<F: Field>(&mut self, t: [&Subspace<F>; 5]) -> Result<()> {
        let [x, a, y, b, z] = t;
        let l = l_relation(x, a, y, b)?.inverse_rel().apply(z)?;
        self.l_inverse.record(l == l_relation(y, a, x, b)?.apply(z)?, || tuple_json(&t));
        let m = m_relation(x, a, b, z)?.inverse_rel().apply(y)?;
        self.m_inverse.record(m == m_relation(z, a, b, x)?.apply(y)?, || tuple_json(&t));
        Ok(())
    }

    fn relation<F: Field>(&mut self, f: &LinearRelation<F>, forms: &[Form<F>]) -> Result<()> {
        let ce = || rel_json(f);
        let dims = f.ker().dim() + f.im().dim();
        self.rank_nullity.record(f.inner().dim() == dims, ce);
        for form in forms {
            let fs = f.adjoint(form)?;
            let ok = f.one_plus().adjoint(form)? == fs.one_plus() && f.one_minus().adjoint(form)? == fs.one_minus();
            self.adjoint_one_pm.record(ok, ce);
            self.adjoint_twice.record(fs.adjoint(form)? == *f, ce);
        }
        Ok(())
    }

    fn pair<F: Field>(&mut self, f: &LinearRelation<F>, g: &LinearRelation<F>, forms: &[Form<F>]) -> Result<()> {
        for form in forms {
            let lhs = LinearRelation::compose(g, f)?.adjoint(form)?;
            let rhs = LinearRelation::compose(&f.adjoint(form)?, &g.adjoint(form)?)?;
            self.adjoint_compose.record(lhs == rhs, || json!({"F": rel_json(f), "G": rel_json(g)}));
        }
        Ok(())
    }

    fn inclusion<F: Field>(&mut self, f: &LinearRelation<F>, z: &Subspace<F>, forms: &[Form<F>]) -> Result<()> {
        for form in forms {
            let big = f.apply(z)?.orthocomplement(form)?;
            let small = f.adjoint(form)?.inverse_rel().apply(&z.orthocomplement(form)?)?;
            self.adjoint_inclusion.record(small.leq(&big), || json!({"F": rel_json(f), "z": sub_json(z)}));
            if small != big {
                self.strict_inclusions += 1;
            }
        }
        Ok(())
    }

    fn finish(self) -> Report {
        let note = format!(
            "equality held in {} of {} cases (strict inclusion is recorded, not asserted)",
            self.adjoint_inclusion.cases - self.strict_inclusions,
            self.adjoint_inclusion.cases
        );
        Report {
            results: vec![
                self.idempotent,
                self.one_minus_diff,
                self.one_minus_op,
                self.lattice_apply,
                self.lattice_inverse,
                self.gamma_apply,
                self.conjugation,
                self.l_inverse,
                self.m_inverse,
                self.adjoint_one_pm,
                self.adjoint_projection,
                self.adjoint_compose,
                self.adjoint_twice,
                self.rank_nullity,
                self.adjoint_inclusion.with_note(note),
            ],
        }
    }
}

fn relations<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let field = &cfg.field;
    let top = cfg.ambient.max(1);
    if cfg.exhaustive {
        let dom = format!("all relations and subspaces over {field}, dim W ≤ {top}");
        let mut laws = RelationLaws::new(&dom);
        for w in 1..=top {
            let rel_count = subspace_count(field, 2 * w).ok_or_else(|| Error::InfiniteField(field.to_string()))?;
            if rel_count > RELATION_LIMIT {
                return Err(Error::Precondition(format!(
                    "{rel_count} relations on {field}^{w} exceed the exhaustive bound {RELATION_LIMIT}; use random sampling"
                )));
            }
            let forms = forms_on::<F>(w, field)?;
            let pts = enumerate_subspaces::<F>(field, w, None)?;
            let rels: Vec<LinearRelation<F>> = enumerate_subspaces::<F>(field, 2 * w, None)?
                .into_iter()
                .map(LinearRelation::from_subspace)
                .collect::<Result<_>>()?;
            for x in &pts {
                for a in &pts {
                    for z in &pts {
                        laws.projection(x, a, z, &forms)?;
                    }
                }
            }
            for [x, a, y, b, z] in all_tuples(pts.len()) {
                laws.five([&pts[x], &pts[a], &pts[y], &pts[b], &pts[z]])?;
            }
            for f in &rels {
                laws.relation(f, &forms)?;
                for z in &pts {
                    laws.inclusion(f, z, &forms)?;
                    for c in &pts {
                        laws.conjugation(f, c, z)?;
                    }
                }
                for g in &rels {
                    laws.pair(f, g, &forms)?;
                }
            }
        }
        return Ok(laws.finish());
    }
    let dom = format!("random relations over {field}, dim W ≤ {top}");
    let mut laws = RelationLaws::new(&dom);
    for trial in 0..cfg.trials {
        let mut rng = rng_for(cfg.seed, trial);
        let w = rng.gen_range(1..=top);
        let forms = forms_on::<F>(w, field)?;
        let v: Vec<Subspace<F>> = random_tuple(&mut rng, field, w, 5);
        let f: LinearRelation<F> = random_relation(&mut rng, field, w);
        let g: LinearRelation<F> = random_relation(&mut rng, field, w);
        let [x, a, y, b, z] = [&v[0], &v[1], &v[2], &v[3], &v[4]];
        laws.projection(x, a, z, &forms)?;
        laws.five([x, a, y, b, z])?;
        laws.relation(&f, &forms)?;
        laws.conjugation(&f, a, z)?;
        laws.pair(&f, &g, &forms)?;
        laws.inclusion(&f, z, &forms)?;
    }
    Ok(laws.finish())
}

/// `⊥` for `diag(1, 0, …, 0)`: degenerate, so `τ²` must fail somewhere.
fn degenerate_involution<F: Field>(dim: usize, field: &FieldSpec) -> Result<Involution<F>> {
    let mut d = vec![0i64; dim];
    d[0] = 1;
    let form = Form::unchecked(Matrix::diag_ints(&d, field))?;
    Ok(Involution::unchecked(form, None, "⊥ for the degenerate gram diag(1,0,…)"))
}

fn involution<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let field = &cfg.field;
    let n = cfg.half();
    let dim = 2 * n;
    let listable = tuples_listable(field, dim);
    if cfg.exhaustive && !listable {
        require_listable(field, dim)?;
    }
    let orders_listable = subspace_count(field, dim).is_some_and(|k| k <= 2_000);
    let mut report = Report::new();
    for which in StandardForm::ALL {
        let inv = ortho_involution(&Form::<F>::standard(which, n, field)?)?;
        if cfg.exhaustive {
            report.merge(verify_involution(&inv, Level::Global, Sampling::Exhaustive)?);
        } else {
            report.merge(verify_involution(&inv, Level::Global, Sampling::Random { trials: cfg.trials, seed: cfg.seed })?);
            if orders_listable {
                report.merge(verify_order_exhaustive(&inv)?);
            }
        }
    }
    let bad = degenerate_involution::<F>(dim, field)?;
    let probe = if orders_listable {
        verify_order_exhaustive(&bad)?
    } else {
        verify_involution(&bad, Level::Restricted, Sampling::Random { trials: cfg.trials, seed: cfg.seed })?
    };
    let order = probe.get("order two τ(τ(x)) = x").expect("order law present");
    let mut control = LawResult::new(
        "involution",
        "negative control: degenerate form fails order two",
        format!("{} on {field}^{dim}", bad.label()),
    );
    control.cases = order.cases;
    control.failures = u64::from(order.failures == 0);
    control.first_counterexample = order.first_counterexample.clone();
    report.push(control.with_note(format!("order two failed on {} of {} subspaces", order.failures, order.cases)));
    Ok(report)
}

fn lagrangian<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let suite = "lagrangian";
    let field = &cfg.field;
    if !field.is_finite() {
        return Ok(skipped(suite, format!("censuses need a finite field, not {field}")));
    }
    let n = cfg.half();
    let dim = 2 * n;
    let mut report = Report::new();
    for which in StandardForm::ALL {
        let form = Form::<F>::standard(which, n, field)?;
        let inv = ortho_involution(&form)?;
        let direct = isotropic_census(&form)?;
        let fixed = fixed_point_census(&inv)?;
        let dom = format!("{} form on {field}^{dim}", which.name());
        let mut census = LawResult::new(suite, "census: isotropic half-dimensional subspaces = fixed points of τ", &dom);
        census.record(direct == fixed, || json!({"isotropic": direct.len(), "fixed": fixed.len()}));
        report.push(census.with_note(format!("{} Lagrangians", direct.len())));
        if which != StandardForm::Symplectic {
            continue;
        }
        let mut closure = LawResult::new(suite, "closure: Γ(x,a,y,τa,z) ∈ 𝒴 for x, y, z ∈ 𝒴 and every a", &dom);
        for a in enumerate_subspaces::<F>(field, dim, None)? {
            let ta = inv.apply(&a);
            for x in &fixed {
                for y in &fixed {
                    let l = l_relation(x, &a, y, &ta)?;
                    for z in &fixed {
                        let v = l.apply(z)?;
                        closure.record(inv.fixes(&v), || tuple_json(&[x, &a, y, z]));
                    }
                }
            }
        }
        report.push(closure);
    }
    Ok(report)
}

/// Parameters per family and size in the hull suite.
pub const HULL_PARAMETERS: u64 = 20;

fn hull<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let suite = "hull";
    let field = &cfg.field;
    let Some(q) = field.order() else {
        return Ok(skipped(suite, format!("hulls are enumerated, which needs a finite field, not {field}")));
    };
    let mut report = Report::new();
    // over a field with conjugation the hermitian family replaces O and Sp
    let kinds = if field.has_conjugation() { vec![FamilyKind::U] } else { vec![FamilyKind::O, FamilyKind::Sp] };
    for kind in kinds {
        let sizes: Vec<usize> = (1..=2).filter(|&n| q.pow((n * n) as u32) <= 10_000).collect();
        let dom = format!(
            "{HULL_PARAMETERS} seeded parameters each at n ∈ {sizes:?} over {field}"
        );
        let mut law = LawResult::new(suite, &format!("{} hull closed under ·_A with unit 0", kind.name()), &dom);
        for &n in &sizes {
            for i in 0..HULL_PARAMETERS {
                let mut rng = rng_for(cfg.seed, (n as u64) << 32 | i);
                let a: Matrix<F> = random_parameter(&mut rng, kind, n, field);
                let r = ClassicalFamily::new(kind, a)?.check_hull_closure()?;
                law.absorb(r);
            }
        }
        report.push(law);
    }
    Ok(report)
}

fn lie<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    Ok(Report { results: vec![check_lie_brackets::<F>(&cfg.field, 3, cfg.trials, cfg.seed)?] })
}

fn appendix<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let field = &cfg.field;
    let mut report = Report::new();
    for (p, q) in [(2, 3), (2, 2)] {
        let pair = AssociativePair::new(p, q, field);
        report.results.extend(check_pair_identity::<F>(&pair, cfg.trials, cfg.seed)?);
    }
    let pair = AssociativePair::new(2, 3, field);
    let ts = triple_from_involution::<F>(pair, |x| x.transpose(), |x| x.transpose())?;
    report.results.extend(check_triple_identities(&ts, cfg.trials, cfg.seed)?);
    report.push(check_algebra_first_kind::<F>(field, 2, cfg.trials, cfg.seed));
    Ok(report)
}

fn bridges<F: Field>(cfg: &SuiteConfig) -> Result<Report> {
    let suite = "bridges";
    let field = &cfg.field;
    let Some(q) = field.order() else {
        return Ok(skipped(suite, format!("bridges compare enumerated tables, which needs a finite field, not {field}")));
    };
    if !field.two_invertible() {
        return Ok(skipped(suite, "translations by 2a need 2 to be invertible"));
    }
    let mut report = Report::new();
    let int = |rows: &[&[i64]]| Matrix::<F>::from_ints(rows, field);
    let cases = if field.has_conjugation() {
        vec![(FamilyKind::U, int(&[&[1]])?), (FamilyKind::U, int(&[&[0]])?)]
    } else {
        let mut v = vec![(FamilyKind::O, int(&[&[1]])?), (FamilyKind::Sp, int(&[&[0]])?)];
        if q <= 5 {
            v.push((FamilyKind::O, int(&[&[1, 0], &[0, 1]])?));
            v.push((FamilyKind::Sp, int(&[&[0, 1], &[-1, 0]])?));
        }
        v
    };
    for (kind, a) in &cases {
        report.merge(prop41_bridge(*kind, a)?);
        report.merge(thm33_bridge(*kind, a)?);
    }
    let star = if field.has_conjugation() { Star::ConjTranspose } else { Star::Transpose };
    report.merge(theorem37_roundtrip::<F>(1, field, star, Sampling::Exhaustive)?);
    report.merge(theorem37_roundtrip::<F>(2, field, star, Sampling::Random { trials: cfg.trials, seed: cfg.seed })?);
    Ok(report)
}
