use super::*;
use crate::group::groups::cyclic;
use crate::group::{standard_cyclic_cocycle, RamificationData};

fn taft(n: usize, cap: usize) -> MajidStructure {
    let g = cyclic(n);
    let ram = RamificationData::from_reps(&g, &[(1, 1)]).unwrap();
    let quiver = HopfQuiver::new(g, ram).unwrap();
    let field = Field::new(n as u32).unwrap();
    let chi: Vec<Scalar> = (0..n).map(|j| field.zeta_pow(j as i64)).collect();
    let action = taft_action(&quiver, &chi);
    let phi = Cocycle3::trivial(n, &field);
    MajidStructure::new(quiver, phi, action, cap).unwrap()
}

fn sign_cocycle(field: &Field) -> Cocycle3 {
    Cocycle3::from_fn(2, |a, b, c| {
        if a == 1 && b == 1 && c == 1 {
            field.integer(-1)
        } else {
            field.one()
        }
    })
}

/// The hand-solved action for `Φ(g,g,g) = -1` on the `Z_2` quiver.
fn flagship(cap: usize) -> MajidStructure {
    let g = cyclic(2);
    let ram = RamificationData::from_reps(&g, &[(1, 1)]).unwrap();
    let quiver = HopfQuiver::new(g, ram).unwrap();
    let field = Field::new(4).unwrap();
    let i = field.zeta();
    let a = |id| Path::arrow(&quiver, id);
    let mut action = BimoduleAction::new();
    for id in 0..2 {
        action.set_left(0, id, Element::basis(a(id), &field));
        action.set_right(id, 0, Element::basis(a(id), &field));
    }
    action.set_left(1, 0, Element::term(a(1), i.clone()));
    action.set_left(1, 1, Element::term(a(0), i));
    action.set_right(0, 1, Element::basis(a(1), &field));
    action.set_right(1, 1, Element::term(a(0), field.integer(-1)));
    let phi = sign_cocycle(&field);
    MajidStructure::new(quiver, phi, action, cap).unwrap()
}

#[test]
fn taft_square_of_arrow() {
    let h = taft(2, 4);
    let a0 = h.basis(Path::arrow(h.quiver(), 0));
    let sq = h.multiply(&a0, &a0).unwrap();
    // 1 + q = 0 at q = -1
    assert!(sq.is_zero(), "{sq:?}");

    // q = i: a_0 a_0 = (1 + i) a_1 a_0 in Z_4 with the generator class. The
    // length-two path from e is a_1 a_0 with a_1: g -> g^2.
    let h4 = taft(4, 4);
    let a0 = h4.basis(Path::arrow(h4.quiver(), 0));
    let sq = h4.multiply(&a0, &a0).unwrap();
    let p = Path::from_arrows(h4.quiver(), &[0, 1]).unwrap();
    let f = h4.field();
    let expected = Element::term(p, &f.one() + &f.zeta());
    assert_eq!(sq, expected);
}

#[test]
fn taft_antipode_on_arrow() {
    let h = taft(2, 2);
    // S(a_0) = -(g.a_0).e = -q a_1, which is a_1 at q = -1
    let a0 = Path::arrow(h.quiver(), 0);
    let a1 = Path::arrow(h.quiver(), 1);
    assert_eq!(h.antipode_path(&a0).unwrap(), h.basis(a1));
    assert_eq!(h.antipode_path(&Path::vertex(1)).unwrap(), h.vertex(1));
}

#[test]
fn taft_structures_pass() {
    for n in 2..=3 {
        let h = taft(n, 3);
        let b = verify_bimodule(h.quiver(), h.phi(), h.action()).unwrap();
        assert!(b.passed(), "{b}");
        let r = verify_majid_axioms(&h);
        assert!(r.passed(), "n = {n}: {r}");
    }
}

#[test]
fn naive_action_fails_under_sign_cocycle() {
    let h = taft(2, 2);
    let field = h.field().clone();
    let phi = sign_cocycle(&field);
    let report = verify_bimodule(h.quiver(), &phi, h.action()).unwrap();
    assert!(!report.passed());
    assert!(report.violations_of("left quasi-associativity").next().is_some());
}

#[test]
fn flagship_passes() {
    let h = flagship(4);
    let b = verify_bimodule(h.quiver(), h.phi(), h.action()).unwrap();
    assert!(b.passed(), "{b}");
    assert_eq!(h.beta(&Path::vertex(1)), h.field().integer(-1));
    let r = verify_majid_axioms(&h);
    assert!(r.passed(), "{r}");
}

#[test]
fn solver_finds_flagship_type_action() {
    let h = flagship(1);
    let sol = solve_monomial_action(h.quiver(), h.phi()).unwrap();
    assert_eq!(sol.modulus, 4);
    let b = verify_bimodule(h.quiver(), h.phi(), &sol.action).unwrap();
    assert!(b.passed(), "{b}");

    // over Q the equations have no solution
    let rational = sign_cocycle(&Field::new(1).unwrap());
    assert!(matches!(
        solve_monomial_action(h.quiver(), &rational),
        Err(MajidError::NoMonomialSolution(1))
    ));
}

#[test]
fn solver_on_standard_z4_cocycle() {
    let g = cyclic(4);
    let ram = RamificationData::from_reps(&g, &[(2, 1)]).unwrap();
    let quiver = HopfQuiver::new(g, ram).unwrap();
    let found = [4u32, 8, 16].into_iter().find_map(|m| {
        let field = Field::new(m).unwrap();
        let phi = standard_cyclic_cocycle(4, &field.zeta_pow((m / 4) as i64)).unwrap();
        solve_monomial_action(&quiver, &phi).ok().map(|s| (phi, s))
    });
    let (phi, sol) = found.expect("some cyclotomic field admits a monomial action");
    let b = verify_bimodule(&quiver, &phi, &sol.action).unwrap();
    assert!(b.passed(), "{b}");
}

#[test]
fn corrupted_entry_is_detected() {
    let h = flagship(3);
    let mut action = h.action().clone();
    let (_, v) = action.right_entries_mut().nth(3).unwrap();
    *v = v.scaled(&h.field().integer(-1));
    let bad = MajidStructure::new(h.quiver().clone(), h.phi().clone(), action, 3).unwrap();
    let b = verify_bimodule(bad.quiver(), bad.phi(), bad.action()).unwrap();
    let r = verify_majid_axioms(&bad);
    assert!(!b.passed() || !r.passed());
    assert!(!r.passed(), "axiom checker misses the corrupted entry");
}

#[test]
fn composition_scalars() {
    let h = flagship(1);
    let group = h.group();
    let phi = h.phi();
    for m in 0..h.quiver().arrow_count() {
        let me = h.basis(Path::arrow(h.quiver(), m));
        let ends = h.quiver().arrow(m);
        for f in group.elements() {
            let fi = group.inv(f);
            let back = h.action().act_left(fi, &h.action().act_left(f, &me));
            let c = phi.get(fi, f, ends.target).div(phi.get(fi, f, ends.source)).unwrap();
            assert_eq!(back, me.scaled(&c));
        }
    }
}

#[test]
fn trivial_ramification_is_group_algebra() {
    let g = cyclic(3);
    let ram = RamificationData::zero(&g);
    let quiver = HopfQuiver::new(g, ram).unwrap();
    let field = Field::new(3).unwrap();
    let phi = standard_cyclic_cocycle(3, &field.zeta()).unwrap();
    let h = MajidStructure::new(quiver, phi, BimoduleAction::new(), 4).unwrap();
    assert_eq!(h.basis_paths().len(), 3);
    let r = verify_majid_axioms(&h);
    assert!(r.passed(), "{r}");
    assert_eq!(h.multiply(&h.vertex(1), &h.vertex(2)).unwrap(), h.vertex(0));
}

#[test]
fn degree_cap_enforced() {
    let h = taft(2, 2);
    let p = Path::from_arrows(h.quiver(), &[0, 1]).unwrap();
    let a = Path::arrow(h.quiver(), 0);
    assert_eq!(
        h.multiply_paths(&p, &a),
        Err(MajidError::DegreeCapExceeded { degree: 3, cap: 2 })
    );
}
