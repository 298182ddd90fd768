use serde_json::json;

use crate::exactfield::Scalar;
use crate::group::verify_cocycle;
use crate::pathcoalg::{Element, TensorElement};
use crate::quiver::Path;
use crate::report::VerificationReport;

use super::MajidStructure;

const LAWS: [&str; 12] = [
    "quasi-associativity",
    "unit",
    "coalgebra map",
    "counit map",
    "gradedness",
    "normalization",
    "left antipode",
    "right antipode",
    "reassociator antipode",
    "inverse reassociator antipode",
    "antipode anti-comultiplicative",
    "group-like inverses",
];

/// Adds `c · x ⊗ y` to `out`.
fn add_tensor(out: &mut TensorElement, x: &Element, y: &Element, c: &Scalar) {
    for (legs, v) in TensorElement::product_of(&[x, y]).terms() {
        out.add_term(legs.clone(), v * c);
    }
}

fn witness(paths: &[&Path]) -> serde_json::Value {
    json!(paths)
}

/// Checks every axiom of a Majid algebra on basis paths within the degree
/// cap: quasi-associativity against the extended reassociator, the unit,
/// that multiplication is a coalgebra map, gradedness, the 3-cocycle
/// condition on group-likes, normalization, the four quasi-antipode
/// identities, and that `S` reverses the coproduct.
///
/// This is a truncation: only tuples of total length at most the cap are
/// examined.
pub fn verify_majid_axioms(h: &MajidStructure) -> VerificationReport {
    let mut report = VerificationReport::new("majid");
    for law in LAWS {
        report.declare(law);
    }
    let cap = h.degree_cap();
    let field = h.field().clone();
    let group = h.group();
    let kq = h.coalgebra();
    let by_degree = h.quiver().paths_up_to(cap);
    let upto = |n: usize| by_degree.iter().take(n + 1).flatten();
    let one = h.vertex(group.identity());

    match verify_cocycle(group, h.phi()) {
        Ok(r) => report.absorb(r),
        Err(e) => report.check("normalization", false, || (json!(null), e.to_string())),
    }

    for a in upto(cap) {
        for b in upto(cap - a.len()) {
            let ab = h.multiply_paths(a, b).expect("within cap");
            let n = a.len() + b.len();
            report.check("gradedness", ab.is_homogeneous(n), || {
                (witness(&[a, b]), format!("product {ab:?} is not homogeneous of degree {n}"))
            });

            // Δ(ab) = a_1 b_1 ⊗ a_2 b_2
            let lhs = kq.comultiply_element(&ab);
            let mut rhs = TensorElement::zero(2);
            let fone = field.one();
            for sa in kq.splits(a, 2) {
                for sb in kq.splits(b, 2) {
                    let x = h.multiply_paths(&sa[0], &sb[0]).expect("within cap");
                    let y = h.multiply_paths(&sa[1], &sb[1]).expect("within cap");
                    add_tensor(&mut rhs, &x, &y, &fone);
                }
            }
            report.check("coalgebra map", lhs == rhs, || {
                (witness(&[a, b]), "Δ(ab) differs from a_1b_1 ⊗ a_2b_2".to_string())
            });
            let e_ab = kq.counit(&ab);
            let e_a_e_b = &kq.counit_path(a) * &kq.counit_path(b);
            report.check("counit map", e_ab == e_a_e_b, || {
                (witness(&[a, b]), format!("ε(ab) = {e_ab} but ε(a)ε(b) = {e_a_e_b}"))
            });

            // Φ(a, 1, b) = ε(a)ε(b)
            let e = Path::vertex(group.identity());
            let val = h.reassociator_paths(a, &e, b);
            report.check("normalization", val == e_a_e_b, || {
                (witness(&[a, b]), format!("Φ(a,1,b) = {val}"))
            });
        }
    }

    for a in upto(cap) {
        let ea = h.basis(a.clone());
        let left = h.multiply(&one, &ea).expect("within cap");
        let right = h.multiply(&ea, &one).expect("within cap");
        report.check("unit", left == ea && right == ea, || {
            (witness(&[a]), format!("1a = {left:?}, a1 = {right:?}"))
        });
    }

    // a_1(b_1c_1)Φ(a_2,b_2,c_2) = Φ(a_1,b_1,c_1)(a_2b_2)c_2
    for a in upto(cap) {
        for b in upto(cap - a.len()) {
            for c in upto(cap - a.len() - b.len()) {
                let mut lhs = Element::zero();
                let mut rhs = Element::zero();
                let (da, db, dc) = (kq.splits(a, 2), kq.splits(b, 2), kq.splits(c, 2));
                for sa in &da {
                    for sb in &db {
                        for sc in &dc {
                            let phi2 = h.reassociator_paths(&sa[1], &sb[1], &sc[1]);
                            if !phi2.is_zero() {
                                let bc = h.multiply_paths(&sb[0], &sc[0]).expect("within cap");
                                let x = h.multiply(&h.basis(sa[0].clone()), &bc).expect("within cap");
                                lhs.add_scaled(&x, &phi2);
                            }
                            let phi1 = h.reassociator_paths(&sa[0], &sb[0], &sc[0]);
                            if !phi1.is_zero() {
                                let ab = h.multiply_paths(&sa[1], &sb[1]).expect("within cap");
                                let x = h.multiply(&ab, &h.basis(sc[1].clone())).expect("within cap");
                                rhs.add_scaled(&x, &phi1);
                            }
                        }
                    }
                }
                report.check("quasi-associativity", lhs == rhs, || {
                    (
                        witness(&[a, b, c]),
                        format!("a_1(b_1c_1)Φ(a_2,b_2,c_2) = {lhs:?} but Φ(a_1,b_1,c_1)(a_2b_2)c_2 = {rhs:?}"),
                    )
                });
            }
        }
    }

    for a in upto(cap) {
        let unit_alpha = one.scaled(&h.alpha(a));
        let unit_beta = one.scaled(&h.beta(a));
        let mut left = Element::zero();
        let mut right = Element::zero();
        for legs in kq.splits(a, 3) {
            let al = h.alpha(&legs[1]);
            if !al.is_zero() {
                let s = h.antipode_path(&legs[0]).expect("within cap");
                let x = h.multiply(&s, &h.basis(legs[2].clone())).expect("within cap");
                left.add_scaled(&x, &al);
            }
            let be = h.beta(&legs[1]);
            if !be.is_zero() {
                let s = h.antipode_path(&legs[2]).expect("within cap");
                let x = h.multiply(&h.basis(legs[0].clone()), &s).expect("within cap");
                right.add_scaled(&x, &be);
            }
        }
        report.check("left antipode", left == unit_alpha, || {
            (witness(&[a]), format!("S(a_1)α(a_2)a_3 = {left:?}, α(a)1 = {unit_alpha:?}"))
        });
        report.check("right antipode", right == unit_beta, || {
            (witness(&[a]), format!("a_1β(a_2)S(a_3) = {right:?}, β(a)1 = {unit_beta:?}"))
        });

        let eps = kq.counit_path(a);
        let mut phi_side = field.zero();
        let mut inv_side = field.zero();
        for legs in kq.splits(a, 5) {
            let ba = &h.beta(&legs[1]) * &h.alpha(&legs[3]);
            if !ba.is_zero() {
                let s3 = h.antipode_path(&legs[2]).expect("within cap");
                let v = h.reassociator_extended(&h.basis(legs[0].clone()), &s3, &h.basis(legs[4].clone()));
                phi_side = &phi_side + &(&v * &ba);
            }
            let ab = &h.alpha(&legs[1]) * &h.beta(&legs[3]);
            if !ab.is_zero() {
                let s1 = h.antipode_path(&legs[0]).expect("within cap");
                let s5 = h.antipode_path(&legs[4]).expect("within cap");
                let v = h.reassociator_inverse_extended(&s1, &h.basis(legs[2].clone()), &s5);
                inv_side = &inv_side + &(&v * &ab);
            }
        }
        report.check("reassociator antipode", phi_side == eps, || {
            (witness(&[a]), format!("Φ(a_1,S(a_3),a_5)β(a_2)α(a_4) = {phi_side}, ε(a) = {eps}"))
        });
        report.check("inverse reassociator antipode", inv_side == eps, || {
            (witness(&[a]), format!("Φ⁻¹(S(a_1),a_3,S(a_5))α(a_2)β(a_4) = {inv_side}, ε(a) = {eps}"))
        });

        // Δ(S(a)) = S(a_2) ⊗ S(a_1), ε(S(a)) = ε(a)
        let sa = h.antipode_path(a).expect("within cap");
        let lhs = kq.comultiply_element(&sa);
        let mut rhs = TensorElement::zero(2);
        for legs in kq.splits(a, 2) {
            let x = h.antipode_path(&legs[1]).expect("within cap");
            let y = h.antipode_path(&legs[0]).expect("within cap");
            add_tensor(&mut rhs, &x, &y, &field.one());
        }
        let counit_ok = kq.counit(&sa) == eps;
        report.check("antipode anti-comultiplicative", lhs == rhs && counit_ok, || {
            (witness(&[a]), format!("Δ(S(a)) differs from S(a_2) ⊗ S(a_1) or ε(S(a)) ≠ ε(a) for S(a) = {sa:?}"))
        });
    }

    for g in group.elements() {
        let x = h.vertex(g);
        let s = h.antipode(&x).expect("within cap");
        let l = h.multiply(&s, &x).expect("within cap");
        let r = h.multiply(&x, &s).expect("within cap");
        let ab = &h.alpha(&Path::vertex(g)) * &h.beta(&Path::vertex(g));
        report.check("group-like inverses", l == one && r == one && !ab.is_zero(), || {
            (json!([g]), format!("S(g)g = {l:?}, gS(g) = {r:?}, α(g)β(g) = {ab}"))
        });
    }

    report
}
