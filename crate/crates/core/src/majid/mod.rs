//! Graded Majid algebra structures on `kQ` built from a Majid bimodule.
//!
//! Given a Hopf quiver `Q = Q(G, R)`, a normalized 3-cocycle `Φ` on `G` and
//! quasi-actions of `kG` on the arrow space `kQ_1`, the multiplication on
//! paths is
//!
//! ```text
//! M = M_0 + Σ_{n ≥ 1} M_1^{⊗n} ∘ Δ_2^{(n-1)}
//! ```
//!
//! where `M_0` multiplies vertices in `G`, `M_1` is the left action on
//! `kQ_0 ⊗ kQ_1`, the right action on `kQ_1 ⊗ kQ_0`, and zero elsewhere, and
//! the `n` degree-one outputs are read back as a path through the cotensor
//! identification. The antipode is the coalgebra map `kQ^cop → kQ` induced
//! the same way by `S_0(g) = g⁻¹` and
//!
//! ```text
//! S_1(a) = -Φ(s, s, s⁻¹) / Φ(t, s, s⁻¹) · (t⁻¹.a).s⁻¹,   s = s(a), t = t(a).
//! ```

mod axioms;
mod solver;

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde_json::json;
use thiserror::Error;

pub use axioms::verify_majid_axioms;
pub use solver::{solve_monomial_action, taft_action, MonomialSolution};

use crate::exactfield::{Field, Scalar};
use crate::group::{Cocycle3, FiniteGroup, GroupError};
use crate::pathcoalg::{Element, PathCoalgebra, TensorElement};
use crate::quiver::{HopfQuiver, Path};
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MajidError {
    #[error("action value for {side} ({group_element}, arrow {arrow}) has a component outside degree 1")]
    ActionNotDegree1 {
        side: &'static str,
        group_element: usize,
        arrow: usize,
    },
    #[error("product degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("cocycle is defined on a group of order {found}, quiver group has order {expected}")]
    GroupMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no monomial action solves the bimodule equations over Q(zeta_{0})")]
    NoMonomialSolution(u32),
    #[error("cocycle value {0} is not a root of unity in the field")]
    NotRootOfUnity(String),
}

/// Left and right quasi-actions of group-likes on arrows. Missing entries
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BimoduleAction {
    left: BTreeMap<(usize, usize), Element>,
    right: BTreeMap<(usize, usize), Element>,
}

impl BimoduleAction {
    pub fn new() -> Self {
        BimoduleAction::default()
    }

    /// Sets `g.a`.
    pub fn set_left(&mut self, g: usize, arrow: usize, value: Element) {
        if value.is_zero() {
            self.left.remove(&(g, arrow));
        } else {
            self.left.insert((g, arrow), value);
        }
    }

    /// Sets `a.g`.
    pub fn set_right(&mut self, arrow: usize, g: usize, value: Element) {
        if value.is_zero() {
            self.right.remove(&(arrow, g));
        } else {
            self.right.insert((arrow, g), value);
        }
    }

    pub fn left(&self, g: usize, arrow: usize) -> Option<&Element> {
        self.left.get(&(g, arrow))
    }

    pub fn right(&self, arrow: usize, g: usize) -> Option<&Element> {
        self.right.get(&(arrow, g))
    }

    pub fn left_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.left.iter()
    }

    pub fn right_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.right.iter()
    }

    pub fn left_entries_mut(&mut self) -> impl Iterator<Item = (&(usize, usize), &mut Element)> {
        self.left.iter_mut()
    }

    pub fn right_entries_mut(&mut self) -> impl Iterator<Item = (&(usize, usize), &mut Element)> {
        self.right.iter_mut()
    }

    /// `g.x` for `x` in the arrow space.
    pub fn act_left(&self, g: usize, x: &Element) -> Element {
        let mut out = Element::zero();
        for (p, c) in x.terms() {
            debug_assert_eq!(p.len(), 1);
            if let Some(v) = self.left(g, p.arrows[0]) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    /// `x.g` for `x` in the arrow space.
    pub fn act_right(&self, x: &Element, g: usize) -> Element {
        let mut out = Element::zero();
        for (p, c) in x.terms() {
            debug_assert_eq!(p.len(), 1);
            if let Some(v) = self.right(p.arrows[0], g) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    fn check_degree(&self) -> Result<(), MajidError> {
        for (&(g, a), v) in &self.left {
            if !v.is_homogeneous(1) {
                return Err(MajidError::ActionNotDegree1 {
                    side: "left",
                    group_element: g,
                    arrow: a,
                });
            }
        }
        for (&(a, g), v) in &self.right {
            if !v.is_homogeneous(1) {
                return Err(MajidError::ActionNotDegree1 {
                    side: "right",
                    group_element: g,
                    arrow: a,
                });
            }
        }
        Ok(())
    }
}

fn arrow_element(quiver: &HopfQuiver, field: &Field, arrow: usize) -> Element {
    Element::basis(Path::arrow(quiver, arrow), field)
}

/// Checks the Majid bimodule axioms on every arrow `m ∈ ^gM^h` and every pair
/// `(e, f)` of group elements:
///
/// * `1.m = m = m.1`;
/// * `e.(f.m) = Φ(e,f,g)/Φ(e,f,h) (ef).m`;
/// * `(m.e).f = Φ(h,e,f)/Φ(g,e,f) m.(ef)`;
/// * `(e.m).f = Φ(e,h,f)/Φ(e,g,f) e.(m.f)`;
/// * `f.m ∈ ^{fg}M^{fh}` and `m.f ∈ ^{gf}M^{hf}`.
pub fn verify_bimodule(
    quiver: &HopfQuiver,
    phi: &Cocycle3,
    action: &BimoduleAction,
) -> Result<VerificationReport, MajidError> {
    action.check_degree()?;
    let group = quiver.group();
    if phi.order() != group.order() {
        return Err(MajidError::GroupMismatch {
            expected: group.order(),
            found: phi.order(),
        });
    }
    let n = group.order();
    for (i, v) in phi.values().iter().enumerate() {
        if v.is_zero() {
            return Err(GroupError::ZeroCocycleValue(i / (n * n), (i / n) % n, i % n).into());
        }
    }
    let field = phi.field().clone();
    let ratio = |a: &Scalar, b: &Scalar| a.div(b).expect("cocycle values checked nonzero");
    let e0 = group.identity();
    let mut report = VerificationReport::new("bimodule");
    for law in [
        "unit",
        "left quasi-associativity",
        "right quasi-associativity",
        "middle quasi-associativity",
        "left bicomodule",
        "right bicomodule",
    ] {
        report.declare(law);
    }
    for m in 0..quiver.arrow_count() {
        let ends = quiver.arrow(m);
        let (h, g) = (ends.source, ends.target);
        let me = arrow_element(quiver, &field, m);
        let w = |u: usize, v: usize| json!({ "e": u, "f": v, "arrow": m });

        let left_unit = action.act_left(e0, &me);
        let right_unit = action.act_right(&me, e0);
        report.check("unit", left_unit == me && right_unit == me, || {
            (json!({ "arrow": m }), format!("1.m = {left_unit:?}, m.1 = {right_unit:?}"))
        });

        for f in group.elements() {
            let fm = action.act_left(f, &me);
            let bad = fm
                .terms()
                .find(|(p, _)| p.source != group.mul(f, h) || p.target(quiver) != group.mul(f, g));
            report.check("left bicomodule", bad.is_none(), || {
                (json!({ "f": f, "arrow": m }), format!("f.m has stray term {:?}", bad.map(|b| b.0)))
            });
            let mf = action.act_right(&me, f);
            let bad = mf
                .terms()
                .find(|(p, _)| p.source != group.mul(h, f) || p.target(quiver) != group.mul(g, f));
            report.check("right bicomodule", bad.is_none(), || {
                (json!({ "f": f, "arrow": m }), format!("m.f has stray term {:?}", bad.map(|b| b.0)))
            });
        }

        for u in group.elements() {
            let um = action.act_left(u, &me);
            let mu = action.act_right(&me, u);
            for v in group.elements() {
                let uv = group.mul(u, v);

                let lhs = action.act_left(u, &action.act_left(v, &me));
                let c = ratio(phi.get(u, v, g), phi.get(u, v, h));
                let rhs = action.act_left(uv, &me).scaled(&c);
                report.check("left quasi-associativity", lhs == rhs, || {
                    (w(u, v), format!("e.(f.m) = {lhs:?} but ratio*(ef).m = {rhs:?}"))
                });

                let lhs = action.act_right(&mu, v);
                let c = ratio(phi.get(h, u, v), phi.get(g, u, v));
                let rhs = action.act_right(&me, uv).scaled(&c);
                report.check("right quasi-associativity", lhs == rhs, || {
                    (w(u, v), format!("(m.e).f = {lhs:?} but ratio*m.(ef) = {rhs:?}"))
                });

                let lhs = action.act_right(&um, v);
                let c = ratio(phi.get(u, h, v), phi.get(u, g, v));
                let rhs = action.act_left(u, &action.act_right(&me, v)).scaled(&c);
                report.check("middle quasi-associativity", lhs == rhs, || {
                    (w(u, v), format!("(e.m).f = {lhs:?} but ratio*e.(m.f) = {rhs:?}"))
                });
            }
        }
    }
    Ok(report)
}

/// A graded Majid algebra on `kQ`, truncated at path length `degree_cap`.
#[derive(Debug)]
pub struct MajidStructure {
    quiver: HopfQuiver,
    phi: Cocycle3,
    action: BimoduleAction,
    degree_cap: usize,
    field: Field,
    alpha: Vec<Scalar>,
    beta: Vec<Scalar>,
    products: RwLock<HashMap<(Path, Path), Element>>,
    antipodes: RwLock<HashMap<Path, Element>>,
}

impl MajidStructure {
    /// Bundles the data. Only shape constraints are enforced here; whether
    /// the result satisfies the axioms is what [`verify_majid_axioms`]
    /// answers.
    pub fn new(
        quiver: HopfQuiver,
        phi: Cocycle3,
        action: BimoduleAction,
        degree_cap: usize,
    ) -> Result<Self, MajidError> {
        let group = quiver.group();
        if phi.order() != group.order() {
            return Err(MajidError::GroupMismatch {
                expected: group.order(),
                found: phi.order(),
            });
        }
        action.check_degree()?;
        let field = phi.field().clone();
        let alpha = group.elements().map(|_| field.one()).collect();
        let mut beta = Vec::with_capacity(group.order());
        for g in group.elements() {
            let gi = group.inv(g);
            let v = phi
                .get(g, gi, g)
                .inverse()
                .map_err(|_| GroupError::ZeroCocycleValue(g, gi, g))?;
            beta.push(v);
        }
        Ok(MajidStructure {
            quiver,
            phi,
            action,
            degree_cap,
            field,
            alpha,
            beta,
            products: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &HopfQuiver {
        &self.quiver
    }

    pub fn group(&self) -> &FiniteGroup {
        self.quiver.group()
    }

    pub fn phi(&self) -> &Cocycle3 {
        &self.phi
    }

    pub fn action(&self) -> &BimoduleAction {
        &self.action
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coalgebra(&self) -> PathCoalgebra<'_> {
        PathCoalgebra::new(self.quiver.quiver(), self.field.clone())
    }

    pub fn basis(&self, p: Path) -> Element {
        Element::basis(p, &self.field)
    }

    pub fn vertex(&self, g: usize) -> Element {
        self.basis(Path::vertex(g))
    }

    /// Every basis path of length at most the degree cap.
    pub fn basis_paths(&self) -> Vec<Path> {
        self.quiver
            .paths_up_to(self.degree_cap)
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn alpha(&self, p: &Path) -> Scalar {
        if p.is_vertex() {
            self.alpha[p.source].clone()
        } else {
            self.field.zero()
        }
    }

    pub fn beta(&self, p: &Path) -> Scalar {
        if p.is_vertex() {
            self.beta[p.source].clone()
        } else {
            self.field.zero()
        }
    }

    pub fn alpha_of(&self, x: &Element) -> Scalar {
        x.terms()
            .fold(self.field.zero(), |acc, (p, c)| &acc + &(&self.alpha(p) * c))
    }

    pub fn beta_of(&self, x: &Element) -> Scalar {
        x.terms()
            .fold(self.field.zero(), |acc, (p, c)| &acc + &(&self.beta(p) * c))
    }

    /// `Φ` extended by zero off `kQ_0^{⊗3}`.
    pub fn reassociator_paths(&self, a: &Path, b: &Path, c: &Path) -> Scalar {
        if a.is_vertex() && b.is_vertex() && c.is_vertex() {
            self.phi.get(a.source, b.source, c.source).clone()
        } else {
            self.field.zero()
        }
    }

    /// Convolution inverse of the extended reassociator; it is again
    /// supported on vertex triples, where it is `1/Φ`.
    pub fn reassociator_inverse_paths(&self, a: &Path, b: &Path, c: &Path) -> Scalar {
        if a.is_vertex() && b.is_vertex() && c.is_vertex() {
            self.phi
                .get(a.source, b.source, c.source)
                .inverse()
                .expect("reassociator values are nonzero")
        } else {
            self.field.zero()
        }
    }

    pub fn reassociator_extended(&self, x: &Element, y: &Element, z: &Element) -> Scalar {
        let mut acc = self.field.zero();
        for (a, ca) in x.terms().filter(|(p, _)| p.is_vertex()) {
            for (b, cb) in y.terms().filter(|(p, _)| p.is_vertex()) {
                for (c, cc) in z.terms().filter(|(p, _)| p.is_vertex()) {
                    let t = &(&(ca * cb) * cc) * &self.reassociator_paths(a, b, c);
                    acc = &acc + &t;
                }
            }
        }
        acc
    }

    pub fn reassociator_inverse_extended(&self, x: &Element, y: &Element, z: &Element) -> Scalar {
        let mut acc = self.field.zero();
        for (a, ca) in x.terms().filter(|(p, _)| p.is_vertex()) {
            for (b, cb) in y.terms().filter(|(p, _)| p.is_vertex()) {
                for (c, cc) in z.terms().filter(|(p, _)| p.is_vertex()) {
                    let t = &(&(ca * cb) * cc) * &self.reassociator_inverse_paths(a, b, c);
                    acc = &acc + &t;
                }
            }
        }
        acc
    }

    fn check_cap(&self, degree: usize) -> Result<(), MajidError> {
        if degree > self.degree_cap {
            Err(MajidError::DegreeCapExceeded {
                degree,
                cap: self.degree_cap,
            })
        } else {
            Ok(())
        }
    }

    /// Product of two basis paths.
    pub fn multiply_paths(&self, p: &Path, q: &Path) -> Result<Element, MajidError> {
        self.check_cap(p.len() + q.len())?;
        let key = (p.clone(), q.clone());
        if let Some(v) = self.products.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute_product(p, q);
        self.products.write().unwrap().entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn compute_product(&self, p: &Path, q: &Path) -> Element {
        let n = p.len() + q.len();
        let group = self.group();
        if n == 0 {
            return self.vertex(group.mul(p.source, q.source));
        }
        let kq = self.coalgebra();
        let pq = TensorElement::product_of(&[&self.basis(p.clone()), &self.basis(q.clone())]);
        let expanded = kq.iterated_comultiply(&pq, n - 1);
        let mut out = Element::zero();
        'terms: for (legs, c) in expanded.terms() {
            let mut slots: Vec<&Element> = Vec::with_capacity(n);
            for pair in legs.chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                let value = match (x.len(), y.len()) {
                    (0, 1) => self.action.left(x.source, y.arrows[0]),
                    (1, 0) => self.action.right(x.arrows[0], y.source),
                    _ => None,
                };
                match value {
                    Some(v) => slots.push(v),
                    None => continue 'terms,
                }
            }
            self.assemble(&slots, c, &mut out);
        }
        out
    }

    /// Reads a tensor of degree-one elements (leg 0 nearest the target) as
    /// paths, dropping non-composable words.
    fn assemble(&self, slots: &[&Element], coeff: &Scalar, out: &mut Element) {
        let tensor = TensorElement::product_of(slots);
        let mut arrows = Vec::with_capacity(slots.len());
        for (word, c) in tensor.terms() {
            arrows.clear();
            arrows.extend(word.iter().rev().map(|p| p.arrows[0]));
            if let Some(path) = Path::from_arrows(&self.quiver, &arrows) {
                out.add_term(path, c * coeff);
            }
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, MajidError> {
        let mut out = Element::zero();
        for (p, cp) in x.terms() {
            for (q, cq) in y.terms() {
                let pq = self.multiply_paths(p, q)?;
                out.add_scaled(&pq, &(cp * cq));
            }
        }
        Ok(out)
    }

    /// `S_1` on a single arrow.
    pub fn antipode_arrow(&self, arrow: usize) -> Element {
        let group = self.group();
        let ends = self.quiver.arrow(arrow);
        let (s, t) = (ends.source, ends.target);
        let si = group.inv(s);
        let ti = group.inv(t);
        let num = self.phi.get(s, s, si);
        let den = self.phi.get(t, s, si);
        let c = -num.div(den).expect("reassociator values are nonzero");
        let a = arrow_element(&self.quiver, &self.field, arrow);
        self.action
            .act_right(&self.action.act_left(ti, &a), si)
            .scaled(&c)
    }

    pub fn antipode_path(&self, p: &Path) -> Result<Element, MajidError> {
        self.check_cap(p.len())?;
        if let Some(v) = self.antipodes.read().unwrap().get(p) {
            return Ok(v.clone());
        }
        let v = self.compute_antipode(p);
        self.antipodes.write().unwrap().entry(p.clone()).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn compute_antipode(&self, p: &Path) -> Element {
        let n = p.len();
        if n == 0 {
            return self.vertex(self.group().inv(p.source));
        }
        // S_1^{⊗n} ∘ Δ_cop^{(n-1)}: only the split into single arrows survives
        // the projection onto kQ_1 in every leg.
        let kq = self.coalgebra();
        let mut out = Element::zero();
        let one = self.field.one();
        for mut legs in kq.splits(p, n) {
            if legs.iter().any(|l| l.len() != 1) {
                continue;
            }
            legs.reverse();
            let images: Vec<Element> = legs.iter().map(|l| self.antipode_arrow(l.arrows[0])).collect();
            let refs: Vec<&Element> = images.iter().collect();
            self.assemble(&refs, &one, &mut out);
        }
        out
    }

    pub fn antipode(&self, x: &Element) -> Result<Element, MajidError> {
        let mut out = Element::zero();
        for (p, c) in x.terms() {
            out.add_scaled(&self.antipode_path(p)?, c);
        }
        Ok(out)
    }

    /// Copy of this structure with a different degree cap (caches are not
    /// shared).
    pub fn with_degree_cap(&self, degree_cap: usize) -> MajidStructure {
        MajidStructure::new(
            self.quiver.clone(),
            self.phi.clone(),
            self.action.clone(),
            degree_cap,
        )
        .expect("already validated")
    }
}

#[cfg(test)]
mod tests;
