use std::collections::HashMap;

use serde_json::{json, Value};

use super::Involution;
use crate::error::{Error, Result};
use crate::gamma::{check_laws_on, gamma_global, m_operator, tuple_json, TorsorMode, TorsorView};
use crate::grassmann::{enumerate_subspaces, Form, FormKind, Subspace};
use crate::report::{LawResult, Report};
use crate::scalars::{Field, SquareClass};

/// `𝒴 = 𝒳^τ`: materialized over finite fields, a predicate otherwise.
#[derive(Clone, Debug)]
pub struct LagrangianGeometry<F> {
    pub inv: Involution<F>,
    points: Option<Vec<Subspace<F>>>,
}

impl<F: Field> LagrangianGeometry<F> {
    pub fn new(inv: Involution<F>) -> Self {
        let points = fixed_point_census(&inv).ok();
        LagrangianGeometry { inv, points }
    }

    pub fn contains(&self, x: &Subspace<F>) -> bool {
        self.inv.fixes(x)
    }

    /// Sorted fixed points, when the field is finite.
    pub fn points(&self) -> Option<&[Subspace<F>]> {
        self.points.as_deref()
    }
}

/// Fixed points of `τ` among all subspaces, in enumeration order.
pub fn fixed_point_census<F: Field>(inv: &Involution<F>) -> Result<Vec<Subspace<F>>> {
    Ok(enumerate_subspaces::<F>(inv.field(), inv.ambient(), None)?
        .into_iter()
        .filter(|x| inv.fixes(x))
        .collect())
}

/// Totally isotropic subspaces of half dimension, found by restricting the
/// Gram matrix; independent of orthocomplements.
pub fn isotropic_census<F: Field>(form: &Form<F>) -> Result<Vec<Subspace<F>>> {
    let n = form.dim();
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    Ok(enumerate_subspaces::<F>(form.field(), n, Some(n / 2))?
        .into_iter()
        .filter(|x| form.restrict(x.basis()).is_zero())
        .collect())
}

/// Multiplication table of a finite group on subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable<F> {
    pub elements: Vec<Subspace<F>>,
    pub unit: usize,
    /// `table[i][j]` is the index of `elements[i] · elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl<F: Field> CayleyTable<F> {
    /// Fails with `Precondition` when a product leaves `elements`.
    pub fn build(
        elements: Vec<Subspace<F>>,
        unit: &Subspace<F>,
        mul: impl Fn(&Subspace<F>, &Subspace<F>) -> Subspace<F>,
    ) -> Result<Self> {
        let index: HashMap<&Subspace<F>, usize> = elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let unit = *index
            .get(unit)
            .ok_or_else(|| Error::Precondition(format!("unit {unit} is not in the carrier")))?;
        let mut table = Vec::with_capacity(elements.len());
        for x in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for y in &elements {
                let p = mul(x, y);
                let i = index
                    .get(&p)
                    .ok_or_else(|| Error::Precondition(format!("{x}·{y} = {p} leaves the carrier")))?;
                row.push(*i);
            }
            table.push(row);
        }
        Ok(CayleyTable { elements, unit, table })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|i| (0..k).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_group(&self) -> bool {
        let k = self.order();
        let t = &self.table;
        let unit = (0..k).all(|i| t[self.unit][i] == i && t[i][self.unit] == i);
        let inverses = (0..k).all(|i| (0..k).any(|j| t[i][j] == self.unit && t[j][i] == self.unit));
        let assoc = (0..k).all(|i| (0..k).all(|j| (0..k).all(|l| t[t[i][j]][l] == t[i][t[j][l]])));
        unit && inverses && assoc
    }

    /// `map[i]` is the image in `other` of element `i`.
    pub fn is_isomorphic_via(&self, other: &CayleyTable<F>, map: &[usize]) -> bool {
        let k = self.order();
        if other.order() != k || map.len() != k {
            return false;
        }
        let mut seen = vec![false; k];
        for &m in map {
            if m >= k || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        (0..k).all(|i| (0..k).all(|j| other.table[map[i]][map[j]] == map[self.table[i][j]]))
    }

    /// Sorted element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.order())
            .map(|i| {
                let mut p = i;
                let mut n = 1;
                while p != self.unit {
                    p = self.table[p][i];
                    n += 1;
                }
                n
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_tsv(&self) -> String {
        let k = self.order();
        let mut s = String::from("·");
        for j in 0..k {
            s.push_str(&format!("\t{j}"));
        }
        s.push('\n');
        for i in 0..k {
            s.push_str(&i.to_string());
            for j in 0..k {
                s.push_str(&format!("\t{}", self.table[i][j]));
            }
            s.push('\n');
        }
        s.push('\n');
        for (i, e) in self.elements.iter().enumerate() {
            s.push_str(&format!("{i}\t{e}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.elements.iter().map(|e| serde_json::to_value(e.to_json()).expect("json")).collect::<Vec<_>>(),
            "unit": self.unit,
            "table": self.table,
        })
    }
}

/// `G(τ; a)` (transversal carrier) or the semitorsor `𝒴` with product
/// `Γ(·, a, ·, τa, ·)` (no transversality).
#[derive(Clone, Debug)]
pub struct FixedTorsor<F> {
    pub inv: Involution<F>,
    pub view: TorsorView<F>,
    carrier: Option<Vec<Subspace<F>>>,
}

impl<F: Field> FixedTorsor<F> {
    pub fn a(&self) -> &Subspace<F> {
        &self.view.a
    }

    pub fn tau_a(&self) -> &Subspace<F> {
        &self.view.b
    }

    pub fn contains(&self, x: &Subspace<F>) -> bool {
        self.view.contains(x) && self.inv.fixes(x)
    }

    pub fn carrier(&self) -> Option<&[Subspace<F>]> {
        self.carrier.as_deref()
    }

    pub fn product(&self, x: &Subspace<F>, y: &Subspace<F>, z: &Subspace<F>) -> Subspace<F> {
        gamma_global(x, &self.view.a, y, &self.view.b, z).expect("common ambient")
    }

    /// Group table with unit `unit`: `x · y = (x unit y)`.
    pub fn cayley_table(&self, unit: &Subspace<F>) -> Result<CayleyTable<F>> {
        let carrier = self.carrier.clone().ok_or_else(|| Error::InfiniteField(self.inv.field().to_string()))?;
        CayleyTable::build(carrier, unit, |x, y| self.product(x, unit, y))
    }

    /// Laws on the materialized carrier: para-associativity and closure,
    /// plus for `G(τ; a)` the torsor identities, the opposite-torsor relation
    /// with `G(τ; τa)` and commutativity when `a ∈ 𝒴`.
    pub fn check_laws(&self) -> Result<Report> {
        let carrier = self.carrier().ok_or_else(|| Error::InfiniteField(self.inv.field().to_string()))?;
        let suite = match self.view.mode {
            TorsorMode::Restricted => "G(τ;a)",
            TorsorMode::Global => "semitorsor-Y",
        };
        let prod = |x: &Subspace<F>, a: &Subspace<F>, y: &Subspace<F>, b: &Subspace<F>, z: &Subspace<F>| {
            gamma_global(x, a, y, b, z).expect("ambient")
        };
        let mut report = check_laws_on(&self.view, carrier, suite, &prod);
        if self.view.mode == TorsorMode::Restricted {
            let dom = self.view.domain();
            let (a, ta) = (&self.view.a, &self.view.b);
            let mut opp = LawResult::new(suite, "opposite torsor Γ(x,τa,y,a,z) = (zyx)", &dom);
            let mut abel = LawResult::new(suite, "abelian when τa = a", &dom);
            for x in carrier {
                for y in carrier {
                    for z in carrier {
                        let ce = || tuple_json(&[x, y, z]);
                        let zyx = self.product(z, y, x);
                        opp.record(gamma_global(x, ta, y, a, z)? == zyx, ce);
                        if a == ta {
                            abel.record(self.product(x, y, z) == zyx, ce);
                        }
                    }
                }
            }
            report.push(opp);
            if a == ta {
                report.push(abel);
            }
        }
        Ok(report)
    }
}

fn fixed_torsor<F: Field>(inv: &Involution<F>, a: &Subspace<F>, mode: TorsorMode) -> Result<FixedTorsor<F>> {
    if a.ambient() != inv.ambient() {
        return Err(Error::AmbientMismatch(a.ambient(), inv.ambient()));
    }
    let view = TorsorView::new(a.clone(), inv.apply(a), mode)?;
    let carrier = if inv.field().is_finite() {
        Some(
            fixed_point_census(inv)?
                .into_iter()
                .filter(|x| view.contains(x))
                .collect(),
        )
    } else {
        None
    };
    Ok(FixedTorsor { inv: inv.clone(), view, carrier })
}

/// `G(τ; a) = U_{a,τa} ∩ 𝒴`.
pub fn torsor_g<F: Field>(inv: &Involution<F>, a: &Subspace<F>) -> Result<FixedTorsor<F>> {
    fixed_torsor(inv, a, TorsorMode::Restricted)
}

/// `𝒴` with `(xyz) = Γ(x, a, y, τa, z)` and no transversality conditions.
pub fn semitorsor_y<F: Field>(inv: &Involution<F>, a: &Subspace<F>) -> Result<FixedTorsor<F>> {
    fixed_torsor(inv, a, TorsorMode::Global)
}

/// `U(τ; a, o, b) = {x ∈ U_{ab} : τx = M_{oabo}(x)}` with unit `o`.
#[derive(Clone, Debug)]
pub struct UnitaryGroup<F> {
    pub inv: Involution<F>,
    pub a: Subspace<F>,
    pub o: Subspace<F>,
    pub b: Subspace<F>,
    members: Option<Vec<Subspace<F>>>,
}

impl<F: Field> UnitaryGroup<F> {
    pub fn is_member(&self, x: &Subspace<F>) -> bool {
        if !x.is_transversal(&self.a) || !x.is_transversal(&self.b) {
            return false;
        }
        let inverse = x.pushforward(&self.inversion()).expect("invertible");
        self.inv.apply(x) == inverse
    }

    /// `x⁻¹ = M_{oabo}(x)`.
    pub fn inversion(&self) -> crate::matlin::Matrix<F> {
        m_operator(&self.o, &self.a, &self.b, &self.o).expect("o transversal to a and b")
    }

    pub fn members(&self) -> Option<&[Subspace<F>]> {
        self.members.as_deref()
    }

    pub fn product(&self, x: &Subspace<F>, y: &Subspace<F>) -> Subspace<F> {
        gamma_global(x, &self.a, &self.o, &self.b, y).expect("ambient")
    }

    pub fn cayley_table(&self) -> Result<CayleyTable<F>> {
        let m = self.members.clone().ok_or_else(|| Error::InfiniteField(self.inv.field().to_string()))?;
        CayleyTable::build(m, &self.o, |x, y| self.product(x, y))
    }
}

pub fn unitary_group<F: Field>(
    inv: &Involution<F>,
    a: &Subspace<F>,
    o: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<UnitaryGroup<F>> {
    for (name, p) in [("a", a), ("o", o), ("b", b)] {
        if !inv.fixes(p) {
            return Err(Error::Precondition(format!("{name} must be a fixed point of τ")));
        }
    }
    if !o.is_transversal(a) || !o.is_transversal(b) {
        return Err(Error::NotTransversal("o must lie in U_{ab}".into()));
    }
    let mut g = UnitaryGroup { inv: inv.clone(), a: a.clone(), o: o.clone(), b: b.clone(), members: None };
    if inv.field().is_finite() {
        let all = enumerate_subspaces::<F>(inv.field(), inv.ambient(), Some(o.dim()))?;
        g.members = Some(all.into_iter().filter(|x| g.is_member(x)).collect());
    }
    Ok(g)
}

/// Rank of `β|_a` and, for symmetric bilinear forms, the square class of
/// the Gram determinant (`Zero` when singular).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormInvariants {
    pub rank: usize,
    pub discriminant: Option<SquareClass>,
}

pub fn form_invariants<F: Field>(a: &Subspace<F>, form: &Form<F>) -> Result<FormInvariants> {
    if a.ambient() != form.dim() {
        return Err(Error::AmbientMismatch(a.ambient(), form.dim()));
    }
    let g = form.restrict(a.basis());
    let rank = g.rank();
    let symmetric = form.kind() == FormKind::Hermitian && !form.field().has_conjugation();
    let discriminant = if symmetric {
        Some(if rank < a.dim() { SquareClass::Zero } else { g.det()?.square_class().unwrap_or(SquareClass::Zero) })
    } else {
        None
    };
    Ok(FormInvariants { rank, discriminant })
}

#[cfg(test)]
mod tests {
    use super::super::ortho_involution;
    use super::*;
    use crate::grassmann::StandardForm;
    use crate::scalars::{FieldSpec, Fp};

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn symplectic_f3_torsor_is_cyclic_of_order_three() {
        let f3 = fp(3);
        let tau = ortho_involution(&Form::<Fp>::standard(StandardForm::Symplectic, 1, &f3).unwrap()).unwrap();
        let a = Subspace::<Fp>::from_int_rows(&[&[0, 1]], 2, &f3).unwrap();
        let g = torsor_g(&tau, &a).unwrap();
        assert_eq!(g.carrier().unwrap().len(), 3);
        let e1 = Subspace::<Fp>::from_int_rows(&[&[1, 0]], 2, &f3).unwrap();
        let t = g.cayley_table(&e1).unwrap();
        assert!(t.is_group() && t.is_abelian());
        assert_eq!(t.order_profile(), vec![1, 3, 3]);
        let r = g.check_laws().unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn mismatched_dimension_gives_empty_carrier() {
        let f3 = fp(3);
        let tau = ortho_involution(&Form::<Fp>::standard(StandardForm::Split, 2, &f3).unwrap()).unwrap();
        let a = Subspace::<Fp>::from_int_rows(&[&[1, 0, 0, 0]], 4, &f3).unwrap();
        assert_eq!(tau.apply(&a).dim(), 3);
        assert!(torsor_g(&tau, &a).unwrap().carrier().unwrap().is_empty());
    }

    #[test]
    fn censuses_agree() {
        for (p, n, want) in [(2, 1, 3), (2, 2, 15), (3, 1, 4)] {
            let f = fp(p);
            let form = Form::<Fp>::standard(StandardForm::Symplectic, n, &f).unwrap();
            let tau = ortho_involution(&form).unwrap();
            let direct = isotropic_census(&form).unwrap();
            let fixed = fixed_point_census(&tau).unwrap();
            assert_eq!(direct.len(), want);
            assert_eq!(direct, fixed);
        }
    }

    #[test]
    fn invariants_of_a_line() {
        let f3 = fp(3);
        let form = Form::<Fp>::standard(StandardForm::Diagonal, 1, &f3).unwrap();
        let e1 = Subspace::<Fp>::from_int_rows(&[&[1, 0]], 2, &f3).unwrap();
        let inv = form_invariants(&e1, &form).unwrap();
        assert_eq!(inv, FormInvariants { rank: 1, discriminant: Some(SquareClass::Square) });
        let iso = Subspace::<Fp>::from_int_rows(&[&[1, 1]], 2, &f3).unwrap();
        assert_eq!(form_invariants(&iso, &form).unwrap().rank, 0);
    }

    #[test]
    fn unitary_group_contains_origin_and_is_closed() {
        let f3 = fp(3);
        let tau = ortho_involution(&Form::<Fp>::standard(StandardForm::Symplectic, 1, &f3).unwrap()).unwrap();
        let op = Subspace::<Fp>::o_plus(1, 1, &f3);
        let om = Subspace::<Fp>::o_minus(1, 1, &f3);
        let a = Subspace::<Fp>::diagonal(1, &f3);
        let u = unitary_group(&tau, &a, &op, &om).unwrap();
        assert!(u.is_member(&op));
        let t = u.cayley_table().unwrap();
        assert!(t.is_group());
    }
}
