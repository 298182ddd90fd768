//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hopfquiver::group::groups::{cyclic, small_groups, symmetric};
use hopfquiver::group::{standard_cyclic_cocycle, verify_cocycle};
use hopfquiver::majid::{solve_monomial_action, taft_action, verify_bimodule, verify_majid_axioms};
use hopfquiver::quiver::{recognize_hopf_quiver, ArrowEnds, Recognition};
use hopfquiver::structure::{self, ThetaReading};
use hopfquiver::{
    BimoduleAction, Cocycle3, Element, Field, FiniteGroup, HopfQuiver, MajidStructure, Path, PathCoalgebra, Quiver,
    RamificationData, Scalar, TensorElement,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hopf(group: FiniteGroup, reps: &[(usize, usize)]) -> HopfQuiver {
    let ram = RamificationData::from_reps(&group, reps).unwrap();
    HopfQuiver::new(group, ram).unwrap()
}

/// Does the cocycle identity at `(a, b, c, d)` involve `Φ(x, y, z)`?
fn quadruple_uses(g: &FiniteGroup, w: &[usize], t: (usize, usize, usize)) -> bool {
    let (a, b, c, d) = (w[0], w[1], w[2], w[3]);
    [
        (a, b, g.mul(c, d)),
        (g.mul(a, b), c, d),
        (b, c, d),
        (a, g.mul(b, c), d),
        (a, b, c),
    ]
    .contains(&t)
}

fn mutation_suite(group: &FiniteGroup, phi: &Cocycle3, rng: &mut StdRng, count: usize) -> Result<(), String> {
    let n = group.order();
    let field = phi.field();
    for _ in 0..count {
        let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
        let mut bad = phi.clone();
        let factor = field.integer(rng.random_range(2..6));
        bad.set(a, b, c, phi.get(a, b, c) * &factor);
        let report = verify_cocycle(group, &bad).map_err(|e| e.to_string())?;
        ensure(!report.passed(), || format!("mutation at ({a},{b},{c}) accepted"))?;
        for v in &report.violations {
            let w: Vec<usize> = serde_json::from_value(v.witness.clone()).unwrap();
            let ok = match v.law.as_str() {
                "normalization" => w == [a, b, c],
                "cocycle identity" => quadruple_uses(group, &w, (a, b, c)),
                _ => false,
            };
            ensure(ok, || format!("witness {w:?} ({}) does not involve ({a},{b},{c})", v.law))?;
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let q = Field::new(1).unwrap();
    let groups = small_groups(12);
    for (name, g) in &groups {
        let phi = Cocycle3::trivial(g.order(), &q);
        let r = verify_cocycle(g, &phi).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("trivial cocycle rejected on {name}"))?;
        mutation_suite(g, &phi, &mut rng, 100).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut slowest = Duration::ZERO;
    for n in 2..=8usize {
        let field = Field::new(n as u32).unwrap();
        let phi = standard_cyclic_cocycle(n, &field.zeta()).unwrap();
        let g = cyclic(n);
        let t = Instant::now();
        let r = verify_cocycle(&g, &phi).map_err(|e| e.to_string())?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        ensure(r.passed(), || format!("standard cocycle rejected for n = {n}"))?;
        ensure(r.laws.iter().any(|l| l.law == "cocycle identity" && l.checked == n.pow(4)), || {
            format!("n = {n}: not all n^4 quadruples checked")
        })?;
        ensure(dt < Duration::from_secs(1), || format!("n = {n} took {dt:?}"))?;
        mutation_suite(&g, &phi, &mut rng, 100).map_err(|e| format!("Z_{n}: {e}"))?;
    }
    Ok(format!(
        "{} groups accept the trivial cocycle; standard cocycles n=2..8 accepted (slowest {slowest:?}); 100 mutations each rejected with witnesses",
        groups.len()
    ))
}

fn coalgebra_laws(q: &Quiver, field: &Field, max_len: usize) -> Result<usize, String> {
    let kq = PathCoalgebra::new(q, field.clone());
    let mut checked = 0;
    for (n, layer) in q.paths_up_to(max_len).iter().enumerate() {
        for p in layer {
            let d = kq.comultiply(p);
            ensure(d.len() == n + 1, || format!("Δ({p:?}) has {} terms", d.len()))?;
            let mut left = TensorElement::zero(3);
            let mut right = TensorElement::zero(3);
            for (legs, c) in d.terms() {
                for inner in kq.splits(&legs[0], 2) {
                    left.add_term(vec![inner[0].clone(), inner[1].clone(), legs[1].clone()], c.clone());
                }
                for inner in kq.splits(&legs[1], 2) {
                    right.add_term(vec![legs[0].clone(), inner[0].clone(), inner[1].clone()], c.clone());
                }
            }
            ensure(left == right, || format!("coassociativity fails at {p:?}"))?;
            let mut via_left = Element::zero();
            let mut via_right = Element::zero();
            for (legs, c) in d.terms() {
                via_left.add_scaled(&kq.basis(legs[1].clone()), &(&kq.counit_path(&legs[0]) * c));
                via_right.add_scaled(&kq.basis(legs[0].clone()), &(&kq.counit_path(&legs[1]) * c));
                ensure(legs[0].len() + legs[1].len() == n, || format!("Δ({p:?}) is not graded"))?;
            }
            let pe = kq.basis(p.clone());
            ensure(via_left == pe && via_right == pe, || format!("counit fails at {p:?}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let field = Field::new(1).unwrap();
    let s3 = symmetric(3);
    let transposition = s3.classes().iter().find(|c| c.len() == 3).unwrap()[0];
    let quivers = [
        hopf(cyclic(2), &[(1, 1)]),
        hopf(cyclic(3), &[(1, 1)]),
        hopf(cyclic(4), &[(1, 1)]),
        hopf(s3, &[(transposition, 1)]),
    ];
    let mut total = 0;
    for q in &quivers {
        total += coalgebra_laws(q.quiver(), &field, 5)?;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(10), || format!("took {dt:?}"))?;
    Ok(format!("{total} paths of length <= 5 checked in {dt:?}"))
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut cases = 0;
    for (name, g) in small_groups(8) {
        let classes = g.classes().len();
        for _ in 0..20 {
            let mult: Vec<usize> = (0..classes).map(|_| rng.random_range(0..3)).collect();
            let ram = RamificationData { multiplicities: mult };
            let hq = HopfQuiver::new(g.clone(), ram.clone()).unwrap();
            // relabel vertices by a random permutation before recognizing
            let mut perm: Vec<usize> = (0..g.order()).collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let arrows: Vec<ArrowEnds> = hq
                .arrows()
                .iter()
                .map(|a| ArrowEnds {
                    source: perm[a.source],
                    target: perm[a.target],
                })
                .collect();
            let relabeled = Quiver::new(g.order(), arrows);
            let mut labeling = vec![0; g.order()];
            for (x, &v) in perm.iter().enumerate() {
                labeling[v] = x;
            }
            let back = recognize_hopf_quiver(&relabeled, &g, &labeling).map_err(|e| e.to_string())?;
            ensure(back == Recognition::Hopf(ram.clone()), || format!("{name}: {ram:?} recognized as {back:?}"))?;
            let n = g.subgroup_generated(&ram.support(&g));
            let comps = relabeled.connected_components().count();
            ensure(comps == n.index, || format!("{name}: {comps} components, index {}", n.index))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} round trips, component count = [G:N] in each"))
}

fn taft(n: usize, cap: usize) -> MajidStructure {
    let quiver = hopf(cyclic(n), &[(1, 1)]);
    let field = Field::new(n as u32).unwrap();
    let chi: Vec<Scalar> = (0..n).map(|j| field.zeta_pow(j as i64)).collect();
    let action = taft_action(&quiver, &chi);
    MajidStructure::new(quiver, Cocycle3::trivial(n, &field), action, cap).unwrap()
}

fn flagship(cap: usize) -> MajidStructure {
    let quiver = hopf(cyclic(2), &[(1, 1)]);
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
    let mut phi = Cocycle3::trivial(2, &field);
    phi.set(1, 1, 1, field.integer(-1));
    MajidStructure::new(quiver, phi, action, cap).unwrap()
}

fn full_check(h: &MajidStructure) -> Result<(), String> {
    let b = verify_bimodule(h.quiver(), h.phi(), h.action()).map_err(|e| e.to_string())?;
    ensure(b.passed(), || b.to_string())?;
    let r = verify_majid_axioms(h);
    ensure(r.passed(), || r.to_string())
}

fn criterion_4() -> Outcome {
    for n in 2..=4 {
        let h = taft(n, 4);
        full_check(&h).map_err(|e| format!("n = {n}: {e}"))?;
        let a0 = h.basis(Path::arrow(h.quiver(), 0));
        let sq = h.multiply(&a0, &a0).unwrap();
        let q = h.field().zeta();
        let path = Path::from_arrows(h.quiver(), &[0, 1]).unwrap();
        let expected = Element::term(path, &h.field().one() + &q);
        ensure(sq == expected, || format!("n = {n}: a0*a0 = {sq:?}"))?;
        if n == 2 {
            ensure(sq.is_zero(), || "a0*a0 nonzero at q = -1".to_string())?;
        }
    }
    Ok("Taft Z_2, Z_3, Z_4 pass at L=4; a0*a0 = (1+q)*a1.a0, zero at q=-1".to_string())
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let h = flagship(4);
    let beta = h.beta(&Path::vertex(1));
    ensure(beta == h.field().integer(-1), || format!("beta(g) = {beta}"))?;
    full_check(&h)?;
    let r = verify_majid_axioms(&h);
    for law in ["left antipode", "right antipode", "reassociator antipode", "inverse reassociator antipode"] {
        ensure(r.laws.iter().any(|l| l.law == law && l.checked > 0), || format!("{law} not exercised"))?;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(30), || format!("took {dt:?}"))?;
    Ok(format!("Z_2 with Phi(g,g,g) = -1 passes at L=4, beta(g) = -1, {dt:?}"))
}

fn detected(h: &MajidStructure) -> bool {
    match verify_cocycle(h.group(), h.phi()) {
        Ok(r) if r.passed() => {}
        _ => return true,
    }
    match verify_bimodule(h.quiver(), h.phi(), h.action()) {
        Ok(r) if r.passed() => {}
        _ => return true,
    }
    !verify_majid_axioms(h).passed()
}

fn mutants(h: &MajidStructure, cap: usize) -> Vec<(String, MajidStructure)> {
    let minus = h.field().integer(-1);
    let mut out = Vec::new();
    let rebuild = |phi: Cocycle3, action: BimoduleAction| MajidStructure::new(h.quiver().clone(), phi, action, cap).unwrap();
    let left: Vec<(usize, usize)> = h.action().left_entries().map(|(k, _)| *k).collect();
    for (i, k) in left.iter().enumerate() {
        let mut a = h.action().clone();
        let (_, v) = a.left_entries_mut().nth(i).unwrap();
        *v = v.scaled(&minus);
        out.push((format!("left {k:?}"), rebuild(h.phi().clone(), a)));
    }
    let right: Vec<(usize, usize)> = h.action().right_entries().map(|(k, _)| *k).collect();
    for (i, k) in right.iter().enumerate() {
        let mut a = h.action().clone();
        let (_, v) = a.right_entries_mut().nth(i).unwrap();
        *v = v.scaled(&minus);
        out.push((format!("right {k:?}"), rebuild(h.phi().clone(), a)));
    }
    let n = h.group().order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut phi = h.phi().clone();
                phi.set(a, b, c, h.phi().get(a, b, c) * &minus);
                out.push((format!("phi ({a},{b},{c})"), rebuild(phi, h.action().clone())));
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut total = 0;
    let bases = [("taft 2", taft(2, 4)), ("taft 3", taft(3, 4)), ("taft 4", taft(4, 4)), ("flagship", flagship(4))];
    for (name, h) in &bases {
        for (what, m) in mutants(h, h.degree_cap()) {
            ensure(detected(&m), || format!("{name}: flipping {what} goes unnoticed"))?;
            total += 1;
        }
    }
    Ok(format!("{total} single-entry sign flips all detected"))
}

fn z4_structures() -> Vec<(&'static str, MajidStructure)> {
    let quiver = hopf(cyclic(4), &[(2, 1)]);
    let f4 = Field::new(4).unwrap();
    let chi: Vec<Scalar> = (0..4).map(|j| f4.zeta_pow(j)).collect();
    let trivial = MajidStructure::new(quiver.clone(), Cocycle3::trivial(4, &f4), taft_action(&quiver, &chi), 3).unwrap();
    let f8 = Field::new(8).unwrap();
    let phi = standard_cyclic_cocycle(4, &f8.zeta_pow(2)).unwrap();
    let sol = solve_monomial_action(&quiver, &phi).unwrap();
    let standard = MajidStructure::new(quiver, phi, sol.action, 3).unwrap();
    vec![("trivial", trivial), ("standard", standard)]
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for (name, h) in z4_structures() {
        full_check(&h).map_err(|e| format!("{name}: {e}"))?;
        let b = structure::blocks(&h);
        ensure(b.count() == 2, || format!("{name}: {} blocks", b.count()))?;
        let tr = structure::translation_check(&h, &b);
        ensure(tr.passed(), || tr.to_string())?;
        let bp = structure::block_product_check(&h, &b);
        ensure(bp.passed(), || bp.to_string())?;
        let lit = structure::transport_report(&h, ThetaReading::Literal, &b);
        let der = structure::transport_report(&h, ThetaReading::Derived, &b);
        ensure(lit.passed(), || format!("{name} literal: {lit}"))?;
        notes.push(format!("{name}: literal PASS, derived {}", if der.passed() { "PASS" } else { "FAIL" }));
        let cp = structure::crossed_product(&h, ThetaReading::Literal).map_err(|e| e.to_string())?;
        if name == "trivial" {
            let base = &b.principal().paths;
            for p in base {
                for q in base {
                    for &u in &cp.transversal {
                        for &v in &cp.transversal {
                            let t = structure::theta(&h, ThetaReading::Literal, p, q, u, v, &b);
                            ensure(t.is_one(), || format!("theta = {t} with trivial phi"))?;
                        }
                    }
                }
            }
        } else {
            ensure(cp.nontrivial_theta, || "theta is identically 1 for the standard cocycle".to_string())?;
        }
    }
    Ok(format!("Z_4 / <g^2> at L=3: {}", notes.join("; ")))
}

fn loops(n: usize, cap: usize) -> MajidStructure {
    let quiver = hopf(cyclic(1), &[(0, n)]);
    let field = Field::new(1).unwrap();
    let action = taft_action(&quiver, &[field.one()]);
    MajidStructure::new(quiver, Cocycle3::trivial(1, &field), action, cap).unwrap()
}

fn criterion_8() -> Outcome {
    for n in 1..=2 {
        let h = loops(n, 3);
        let lie = structure::primitives(&h).map_err(|e| e.to_string())?;
        ensure(lie.report.passed(), || lie.report.to_string())?;
        ensure(lie.basis.len() == n, || format!("{} primitives for {n} loops", lie.basis.len()))?;
        for law in ["associativity", "antisymmetry", "jacobi"] {
            ensure(lie.report.laws.iter().any(|l| l.law == law && l.checked > 0), || format!("{law} unchecked"))?;
        }
    }
    let s3 = symmetric(3);
    let t = s3.classes().iter().find(|c| c.len() == 3).unwrap()[0];
    let field = Field::new(1).unwrap();
    let quivers = [
        hopf(cyclic(2), &[(1, 1)]),
        hopf(cyclic(3), &[(1, 1), (0, 1)]),
        hopf(cyclic(4), &[(2, 1)]),
        hopf(s3, &[(t, 1)]),
    ];
    for q in quivers {
        let n = q.group().order();
        let h = MajidStructure::new(q, Cocycle3::trivial(n, &field), BimoduleAction::new(), 2).unwrap();
        let (ok, w) = structure::cocommutative_check(&h);
        let w = w.ok_or("no witness")?;
        ensure(!ok && w.len() == 1 && w.source != w.target(h.quiver()), || format!("witness {w:?}"))?;
    }
    Ok("loops primitive, associative, brackets antisymmetric and Jacobi; non-loop quivers fail with arrow witnesses".into())
}

fn criterion_9() -> Outcome {
    let spec = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs/z2_sign_cocycle.json");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_hopfquiver"))
            .args(["--spec", spec.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        let mut files = Vec::new();
        for entry in std::fs::read_dir(&out).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            files.push((path.file_name().unwrap().to_owned(), std::fs::read(&path).map_err(|e| e.to_string())?));
        }
        files.sort();
        Ok::<_, String>((o, files))
    };
    let ((a, fa), (b, fb)) = (run("first")?, run("second")?);
    ensure(a.status.code() == Some(0) && b.status.code() == Some(0), || format!("exit codes {:?} {:?}", a.status, b.status))?;
    ensure(a.stdout == b.stdout, || "stdout differs".to_string())?;
    ensure(!fa.is_empty() && fa == fb, || "report files differ".to_string())?;
    Ok(format!("two runs, exit 0, identical stdout ({} bytes) and {} identical report files", a.stdout.len(), fa.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cocycle suite", criterion_1),
        ("path coalgebra suite", criterion_2),
        ("Hopf quiver round trip", criterion_3),
        ("bimodule and axioms, trivial reassociator", criterion_4),
        ("nontrivial reassociator flagship", criterion_5),
        ("mutation sensitivity", criterion_6),
        ("blocks and crossed product", criterion_7),
        ("primitives", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
        let dt = t.elapsed();
        match result {
            Ok(msg) => println!("criterion {}: PASS {name} ({dt:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({dt:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
