//! Associative pairs `(M(p,q), M(q,p))` and the triple systems obtained
//! from type exchanging involutions.

use serde_json::json;

use crate::error::{Error, Result};
use crate::gamma::gamma_global;
use crate::grassmann::{chart_minus, chart_of, graph_minus, graph_of, Subspace};
use crate::matlin::Matrix;
use crate::report::LawResult;
use crate::sample::{random_matrix, rng_for};
use crate::scalars::{Field, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairSign {
    Plus,
    Minus,
}

impl PairSign {
    pub fn flip(self) -> Self {
        match self {
            PairSign::Plus => PairSign::Minus,
            PairSign::Minus => PairSign::Plus,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            PairSign::Plus => "+",
            PairSign::Minus => "-",
        }
    }
}

/// `𝔸⁺ = M(p,q)`, `𝔸⁻ = M(q,p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssociativePair {
    pub p: usize,
    pub q: usize,
    pub field: FieldSpec,
}

impl AssociativePair {
    pub fn new(p: usize, q: usize, field: &FieldSpec) -> Self {
        AssociativePair { p, q, field: *field }
    }

    /// Shape of elements of `𝔸^±`.
    pub fn shape(&self, sign: PairSign) -> (usize, usize) {
        match sign {
            PairSign::Plus => (self.p, self.q),
            PairSign::Minus => (self.q, self.p),
        }
    }

    pub fn random<F: Field, R: rand::Rng + ?Sized>(&self, rng: &mut R, sign: PairSign) -> Matrix<F> {
        let (r, c) = self.shape(sign);
        random_matrix(rng, r, c, &self.field)
    }
}

/// `⟨u, v, w⟩⁺ = u·v·w` on `M(p,q) x M(q,p) x M(p,q)` and
/// `⟨u, v, w⟩⁻ = w·v·u` on `M(q,p) x M(p,q) x M(q,p)`.
///
/// The minus product is written in reversed order so that both products
/// are the chart images of `Γ(u, o⁺, v, o⁻, w)`.
pub fn pair_product<F: Field>(u: &Matrix<F>, v: &Matrix<F>, w: &Matrix<F>, sign: PairSign) -> Result<Matrix<F>> {
    let (r, c) = (u.rows(), u.cols());
    if v.rows() != c || v.cols() != r || w.rows() != r || w.cols() != c {
        return Err(Error::Shape(format!(
            "pair product ⟨{}x{}, {}x{}, {}x{}⟩{}",
            r,
            c,
            v.rows(),
            v.cols(),
            w.rows(),
            w.cols(),
            sign.symbol()
        )));
    }
    Ok(match sign {
        PairSign::Plus => &(u * v) * w,
        PairSign::Minus => &(w * v) * u,
    })
}

/// `X ∈ M(p,q)` as a point of `C_{o⁻}` (graph of `Xᵗ`), `Y ∈ M(q,p)` as
/// a point of `C_{o⁺}` (graph of `Yᵗ`), in `Kᵖ ⊕ K^q`.
pub fn pair_embed<F: Field>(x: &Matrix<F>, sign: PairSign) -> Subspace<F> {
    match sign {
        PairSign::Plus => graph_of(&x.transpose()),
        PairSign::Minus => graph_minus(&x.transpose()),
    }
}

/// Inverse of [`pair_embed`]; `p` is the dimension of `o⁺`.
pub fn pair_chart<F: Field>(s: &Subspace<F>, sign: PairSign, p: usize) -> Result<Matrix<F>> {
    Ok(match sign {
        PairSign::Plus => chart_of(s, p)?.transpose(),
        PairSign::Minus => chart_minus(s, p)?.transpose(),
    })
}

/// `⟨u, v, w⟩^± := Γ(u, o⁺, v, o⁻, w)` evaluated in the Grassmannian.
pub fn pair_product_geometric<F: Field>(
    u: &Matrix<F>,
    v: &Matrix<F>,
    w: &Matrix<F>,
    sign: PairSign,
) -> Result<Matrix<F>> {
    pair_product(u, v, w, sign)?;
    let (p, q) = match sign {
        PairSign::Plus => (u.rows(), u.cols()),
        PairSign::Minus => (u.cols(), u.rows()),
    };
    let f = u.field();
    let g = gamma_global(
        &pair_embed(u, sign),
        &Subspace::o_plus(p, q, f),
        &pair_embed(v, sign.flip()),
        &Subspace::o_minus(p, q, f),
        &pair_embed(w, sign),
    )?;
    pair_chart(&g, sign, p)
}

fn ce<F: Field>(items: &[(&str, &Matrix<F>)]) -> serde_json::Value {
    serde_json::Value::Object(items.iter().map(|(k, m)| (k.to_string(), json!(m.to_string()))).collect())
}

/// The pair identity `⟨xy⟨zuv⟩⟩ = ⟨⟨xyz⟩uv⟩ = ⟨x⟨uzy⟩v⟩` for both signs, and
/// agreement of [`pair_product`] with the Grassmannian evaluation.
pub fn check_pair_identity<F: Field>(pair: &AssociativePair, trials: u64, seed: u64) -> Result<Vec<LawResult>> {
    let dom = format!("M({},{}) over {}, {trials} trials per sign", pair.p, pair.q, pair.field);
    let mut inner = LawResult::new("pair", "⟨xy⟨zuv⟩⟩ = ⟨⟨xyz⟩uv⟩", &dom);
    let mut middle = LawResult::new("pair", "⟨⟨xyz⟩uv⟩ = ⟨x⟨uzy⟩v⟩", &dom);
    let mut geo = LawResult::new("pair", "⟨uvw⟩ = Γ(u,o⁺,v,o⁻,w) through the charts", &dom);
    for sign in [PairSign::Plus, PairSign::Minus] {
        for t in 0..trials {
            let mut rng = rng_for(seed, 2 * t + (sign == PairSign::Minus) as u64);
            let x: Matrix<F> = pair.random(&mut rng, sign);
            let y: Matrix<F> = pair.random(&mut rng, sign.flip());
            let z: Matrix<F> = pair.random(&mut rng, sign);
            let u: Matrix<F> = pair.random(&mut rng, sign.flip());
            let v: Matrix<F> = pair.random(&mut rng, sign);
            let pp = |a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>, s| pair_product(a, b, c, s);
            let lhs = pp(&x, &y, &pp(&z, &u, &v, sign)?, sign)?;
            let mid = pp(&pp(&x, &y, &z, sign)?, &u, &v, sign)?;
            let rhs = pp(&x, &pp(&u, &z, &y, sign.flip())?, &v, sign)?;
            let witness = || ce(&[("x", &x), ("y", &y), ("z", &z), ("u", &u), ("v", &v)]);
            inner.record(lhs == mid, witness);
            middle.record(mid == rhs, witness);
            let g = pair_product_geometric(&x, &y, &z, sign)?;
            geo.record(g == pp(&x, &y, &z, sign)?, || ce(&[("u", &x), ("v", &y), ("w", &z)]));
        }
    }
    Ok(vec![inner, middle, geo])
}

/// `𝔸 = M(p,q)` with `⟨xyz⟩ = ⟨x, τ⁺y, z⟩⁺`.
pub struct TripleSystem<F> {
    pub pair: AssociativePair,
    tau_plus: Box<dyn Fn(&Matrix<F>) -> Matrix<F> + Send + Sync>,
}

impl<F: Field> TripleSystem<F> {
    pub fn product(&self, x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> Result<Matrix<F>> {
        pair_product(x, &(self.tau_plus)(y), z, PairSign::Plus)
    }

    pub fn tau_plus(&self, x: &Matrix<F>) -> Matrix<F> {
        (self.tau_plus)(x)
    }
}

/// Builds the triple system of a type exchanging involution `(τ⁺, τ⁻)`.
///
/// On 32 seeded samples checks that `τ⁺` and `τ⁻` are mutually inverse,
/// linear, and intertwine the products: `τ⁺⟨uvw⟩⁺ = ⟨τ⁺u, τ⁻v, τ⁺w⟩⁻`.
pub fn triple_from_involution<F: Field>(
    pair: AssociativePair,
    tau_plus: impl Fn(&Matrix<F>) -> Matrix<F> + Send + Sync + 'static,
    tau_minus: impl Fn(&Matrix<F>) -> Matrix<F>,
) -> Result<TripleSystem<F>> {
    let bad = |why: &str| Error::NotInvolution(format!("τ± is not a type exchanging involution: {why}"));
    for t in 0..32 {
        let mut rng = rng_for(0x7a0, t);
        let u: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let v: Matrix<F> = pair.random(&mut rng, PairSign::Minus);
        let w: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let tu = tau_plus(&u);
        if (tu.rows(), tu.cols()) != pair.shape(PairSign::Minus) {
            return Err(bad("τ⁺ must map M(p,q) to M(q,p)"));
        }
        let tv = tau_minus(&v);
        if (tv.rows(), tv.cols()) != pair.shape(PairSign::Plus) {
            return Err(bad("τ⁻ must map M(q,p) to M(p,q)"));
        }
        if tau_minus(&tu) != u || tau_plus(&tv) != v {
            return Err(bad("τ⁺ and τ⁻ are not mutually inverse"));
        }
        let two = &u + &u;
        if tau_plus(&(&u + &w)) != &tu + &tau_plus(&w) || tau_plus(&two) != &tu + &tu {
            return Err(bad("τ⁺ is not additive"));
        }
        let lhs = tau_plus(&pair_product(&u, &v, &w, PairSign::Plus)?);
        let rhs = pair_product(&tu, &tv, &tau_plus(&w), PairSign::Minus)?;
        if lhs != rhs {
            return Err(bad("τ does not exchange the pair products"));
        }
    }
    Ok(TripleSystem { pair, tau_plus: Box::new(tau_plus) })
}

/// The second-kind identities, each on `trials` seeded instances, and the
/// first-kind identity as a negative control: its law passes when a
/// counterexample is found (recorded in the note).
pub fn check_triple_identities<F: Field>(ts: &TripleSystem<F>, trials: u64, seed: u64) -> Result<Vec<LawResult>> {
    let pair = &ts.pair;
    let dom = format!("M({},{}) over {}, {trials} trials", pair.p, pair.q, pair.field);
    let mut a1 = LawResult::new("triple", "second kind ⟨xy⟨zuv⟩⟩ = ⟨⟨xyz⟩uv⟩", &dom);
    let mut a2 = LawResult::new("triple", "second kind ⟨⟨xyz⟩uv⟩ = ⟨x⟨uzy⟩v⟩", &dom);
    let mut a3 = LawResult::new("triple", "second kind ⟨u⟨xyz⟩w⟩ = ⟨⟨uzy⟩xw⟩", &dom);
    let mut witness = None;
    for t in 0..trials {
        let mut rng = rng_for(seed, t);
        let x: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let y: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let z: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let u: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let v: Matrix<F> = pair.random(&mut rng, PairSign::Plus);
        let tp = |a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>| ts.product(a, b, c);
        let w = || ce(&[("x", &x), ("y", &y), ("z", &z), ("u", &u), ("v", &v)]);
        let mid = tp(&tp(&x, &y, &z)?, &u, &v)?;
        a1.record(tp(&x, &y, &tp(&z, &u, &v)?)? == mid, w);
        a2.record(tp(&x, &tp(&u, &z, &y)?, &v)? == mid, w);
        a3.record(tp(&u, &tp(&x, &y, &z)?, &v)? == tp(&tp(&u, &z, &y)?, &x, &v)?, w);
        if witness.is_none() && tp(&x, &tp(&y, &z, &u)?, &v)? != mid {
            witness = Some(w());
        }
    }
    let mut neg = LawResult::new("triple", "negative control: first kind ⟨x⟨yzu⟩v⟩ = ⟨⟨xyz⟩uv⟩ fails", &dom);
    neg.cases = trials;
    match witness {
        Some(wv) => neg.note = Some(format!("counterexample {wv}")),
        None => neg.failures = 1,
    }
    Ok(vec![a1, a2, a3, neg])
}

/// `⟨xyz⟩ = xyz` on `M(n,n)` satisfies the first-kind identity
/// `⟨xy⟨zuv⟩⟩ = ⟨⟨xyz⟩uv⟩ = ⟨x⟨yzu⟩v⟩`.
pub fn check_algebra_first_kind<F: Field>(field: &FieldSpec, n: usize, trials: u64, seed: u64) -> LawResult {
    let mut r = LawResult::new(
        "triple",
        "algebra ⟨xyz⟩ = xyz is of the first kind",
        format!("M({n},{n}) over {field}, {trials} trials"),
    );
    for t in 0..trials {
        let mut rng = rng_for(seed, t);
        let m: Vec<Matrix<F>> = (0..5).map(|_| random_matrix(&mut rng, n, n, field)).collect();
        let p = |a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>| &(a * b) * c;
        let (x, y, z, u, v) = (&m[0], &m[1], &m[2], &m[3], &m[4]);
        let mid = p(&p(x, y, z), u, v);
        let ok = p(x, y, &p(z, u, v)) == mid && p(x, &p(y, z, u), v) == mid;
        r.record(ok, || ce(&[("x", x), ("y", y), ("z", z), ("u", u), ("v", v)]));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn zero_middle() {
        let f = f3();
        let mut rng = rng_for(0, 0);
        let pair = AssociativePair::new(2, 3, &f);
        let u: Matrix<Fp> = pair.random(&mut rng, PairSign::Plus);
        let w: Matrix<Fp> = pair.random(&mut rng, PairSign::Plus);
        assert!(pair_product(&u, &Matrix::zeros(3, 2, &f), &w, PairSign::Plus).unwrap().is_zero());
        assert!(pair_product(&u, &u, &w, PairSign::Plus).is_err());
    }

    #[test]
    fn pair_identity_and_geometry() {
        let f = f3();
        for (p, q) in [(1, 1), (2, 2), (2, 3)] {
            for r in check_pair_identity::<Fp>(&AssociativePair::new(p, q, &f), 30, 4).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn transpose_triple() {
        let f = f3();
        let pair = AssociativePair::new(2, 2, &f);
        let ts = triple_from_involution::<Fp>(pair, |x| x.transpose(), |x| x.transpose()).unwrap();
        let mut rng = rng_for(5, 0);
        let x: Matrix<Fp> = pair.random(&mut rng, PairSign::Plus);
        let y: Matrix<Fp> = pair.random(&mut rng, PairSign::Plus);
        let z: Matrix<Fp> = pair.random(&mut rng, PairSign::Plus);
        assert_eq!(ts.product(&x, &y, &z).unwrap(), &(&x * &y.transpose()) * &z);
        for r in check_triple_identities(&ts, 60, 2).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        assert!(check_algebra_first_kind::<Fp>(&f, 2, 30, 1).passed());
    }

    #[test]
    fn rejects_non_involution() {
        let f = f3();
        let pair = AssociativePair::new(2, 2, &f);
        let doubled = |x: &Matrix<Fp>| &x.transpose() + &x.transpose();
        assert!(triple_from_involution::<Fp>(pair, doubled, |x| x.transpose()).is_err());
        assert!(triple_from_involution::<Fp>(pair, |x| x.clone(), |x| x.clone()).is_err());
    }
}
