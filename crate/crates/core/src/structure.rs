//! Structure theory of graded Majid algebras on Hopf quivers: blocks,
//! translation isomorphisms, the crossed-product decomposition over the
//! principal block, and primitive elements in the one-vertex case.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::exactfield::Scalar;
use crate::majid::{MajidError, MajidStructure};
use crate::pathcoalg::{Element, TensorElement};
use crate::quiver::Path;
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("quiver has {0} vertices, a single vertex is required")]
    NotSingleVertex(usize),
    #[error("crossed-product transport fails at p = {p:?}, q = {q:?}, u = {u}, v = {v}")]
    IsoCheckFailed { p: Path, q: Path, u: usize, v: usize },
    #[error(transparent)]
    Majid(#[from] MajidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Coset representative; the identity for the principal block.
    pub rep: usize,
    pub vertices: Vec<usize>,
    pub paths: Vec<Path>,
}

/// Blocks of `kQ`, one per coset of `N = ⟨C : R_C ≠ 0⟩`. Block 0 is the
/// principal block, the rest are ordered by representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub normal_subgroup: Vec<usize>,
    pub blocks: Vec<Block>,
    /// Block index of every vertex.
    pub block_of: Vec<usize>,
}

impl BlockDecomposition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn principal(&self) -> &Block {
        &self.blocks[0]
    }

    /// Block containing the vertex `g`.
    pub fn block(&self, g: usize) -> &Block {
        &self.blocks[self.block_of[g]]
    }

    /// Representative of the coset of `g`.
    pub fn rep(&self, g: usize) -> usize {
        self.block(g).rep
    }
}

/// Splits the basis paths up to the degree cap by connected component.
///
/// Panics if the components disagree with the cosets of `N`, which would
/// mean the quiver is not a Hopf quiver.
pub fn blocks(h: &MajidStructure) -> BlockDecomposition {
    let group = h.group();
    let e = group.identity();
    let support = h.quiver().ramification().support(group);
    let n = group.subgroup_generated(&support);
    assert!(group.is_normal(&n.elements));
    let comps = h.quiver().connected_components();
    assert_eq!(comps.count(), n.index, "block count differs from [G:N]");

    let mut reps: Vec<usize> = comps.parts.iter().map(|p| p[0]).collect();
    let principal = comps.component_of[e];
    reps[principal] = e;
    let mut order: Vec<usize> = (0..comps.count()).collect();
    order.sort_by_key(|&c| (c != principal, reps[c]));
    let mut index_of = vec![0; comps.count()];
    for (i, &c) in order.iter().enumerate() {
        index_of[c] = i;
    }

    let mut blocks: Vec<Block> = order
        .iter()
        .map(|&c| {
            let coset: Vec<usize> = n.elements.iter().map(|&x| group.mul(x, reps[c])).collect();
            let mut sorted = coset.clone();
            sorted.sort();
            assert_eq!(sorted, comps.parts[c], "component is not a coset of N");
            Block {
                rep: reps[c],
                vertices: comps.parts[c].clone(),
                paths: Vec::new(),
            }
        })
        .collect();
    let block_of: Vec<usize> = comps.component_of.iter().map(|&c| index_of[c]).collect();
    for p in h.basis_paths() {
        blocks[block_of[p.source]].paths.push(p);
    }
    BlockDecomposition {
        normal_subgroup: n.elements,
        blocks,
        block_of,
    }
}

/// `Tr_g(x) = x g`.
pub fn translate(h: &MajidStructure, x: &Element, g: usize) -> Result<Element, MajidError> {
    h.multiply(x, &h.vertex(g))
}

/// Rank of a matrix over the field, by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for j in c..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Checks that every `Tr_g` maps the principal block bijectively onto the
/// block of `g` in each degree and commutes with `Δ`.
pub fn translation_check(h: &MajidStructure, blocks: &BlockDecomposition) -> VerificationReport {
    let mut report = VerificationReport::new("translation");
    report.declare("bijective");
    report.declare("comultiplicative");
    report.declare("lands in block");
    let kq = h.coalgebra();
    let field = h.field();
    for g in h.group().elements() {
        let target = blocks.block(g);
        for d in 0..=h.degree_cap() {
            let src: Vec<&Path> = blocks.principal().paths.iter().filter(|p| p.len() == d).collect();
            let dst: Vec<&Path> = target.paths.iter().filter(|p| p.len() == d).collect();
            let mut rows = Vec::with_capacity(src.len());
            for p in &src {
                let img = translate(h, &h.basis((*p).clone()), g).expect("within cap");
                let stray = img.terms().find(|(q, _)| blocks.block_of[q.source] != blocks.block_of[g]);
                report.check("lands in block", stray.is_none() && img.is_homogeneous(d), || {
                    (json!({ "path": p, "g": g }), format!("Tr_g(p) = {img:?}"))
                });
                rows.push(
                    dst.iter()
                        .map(|q| img.coeff(q).cloned().unwrap_or_else(|| field.zero()))
                        .collect::<Vec<_>>(),
                );

                let lhs = kq.comultiply_element(&img);
                let mut rhs = TensorElement::zero(2);
                for legs in kq.splits(p, 2) {
                    let x = translate(h, &h.basis(legs[0].clone()), g).expect("within cap");
                    let y = translate(h, &h.basis(legs[1].clone()), g).expect("within cap");
                    for (k, c) in TensorElement::product_of(&[&x, &y]).terms() {
                        rhs.add_term(k.clone(), c.clone());
                    }
                }
                report.check("comultiplicative", lhs == rhs, || {
                    (json!({ "path": p, "g": g }), "Δ(pg) differs from p_1g ⊗ p_2g".to_string())
                });
            }
            let full = src.len() == dst.len() && rank(rows) == dst.len();
            report.check("bijective", full, || {
                (
                    json!({ "g": g, "degree": d }),
                    format!("{} principal paths, {} target paths", src.len(), dst.len()),
                )
            });
        }
    }
    report
}

/// Checks `H_(g) H_(h) ⊆ H_(gh)` for every basis pair within the degree cap
/// and `S(H_(g)) ⊆ H_(g⁻¹)`.
pub fn block_product_check(h: &MajidStructure, blocks: &BlockDecomposition) -> VerificationReport {
    let mut report = VerificationReport::new("blocks");
    report.declare("product");
    report.declare("antipode");
    let group = h.group();
    let by_degree = h.quiver().paths_up_to(h.degree_cap());
    let upto = |n: usize| by_degree.iter().take(n + 1).flatten();
    for p in upto(h.degree_cap()) {
        for q in upto(h.degree_cap() - p.len()) {
            let pq = h.multiply_paths(p, q).expect("within cap");
            let want = blocks.block_of[group.mul(p.source, q.source)];
            let ok = pq.terms().all(|(r, _)| blocks.block_of[r.source] == want);
            report.check("product", ok, || {
                (json!([p, q]), format!("pq = {pq:?} leaves block {want}"))
            });
        }
        let s = h.antipode_path(p).expect("within cap");
        let want = blocks.block_of[group.inv(p.source)];
        let ok = s.terms().all(|(r, _)| blocks.block_of[r.source] == want);
        report.check("antipode", ok, || (json!([p]), format!("S(p) = {s:?} leaves block {want}")));
    }
    report
}

/// How the twisting scalar of the crossed product is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaReading {
    /// Eight-factor ratio with the factors as displayed.
    Literal,
    /// Scalar obtained by reassociating `(pū)(qv̄)` into `((p(ū▷q))σ)w̄`
    /// one step at a time.
    Derived,
}

/// `Φ(s(a),s(b),s(c)) / Φ(t(a),t(b),t(c))`, the scalar in
/// `(ab)c = A · a(bc)` for homogeneous `a, b, c`.
fn assoc_ratio(h: &MajidStructure, a: (usize, usize), b: (usize, usize), c: (usize, usize)) -> Scalar {
    let phi = h.phi();
    phi.get(a.0, b.0, c.0).div(phi.get(a.1, b.1, c.1)).expect("reassociator is nonzero")
}

/// The twisting scalar for basis paths `p, q` of the principal block and
/// coset representatives `u, v`.
pub fn theta(h: &MajidStructure, reading: ThetaReading, p: &Path, q: &Path, u: usize, v: usize, blocks: &BlockDecomposition) -> Scalar {
    let group = h.group();
    let quiver = h.quiver();
    let phi = h.phi();
    let (sp, tp) = (p.source, p.target(quiver));
    let (sq, tq) = (q.source, q.target(quiver));
    let ui = group.inv(u);
    let uv = group.mul(u, v);
    match reading {
        ThetaReading::Literal => {
            let num = [
                phi.get(sp, u, group.mul(sq, v)),
                phi.get(sq, ui, uv),
                phi.get(u, group.mul(tq, ui), uv),
                phi.get(tp, tq, uv),
            ];
            let den = [
                phi.get(tp, u, group.mul(tq, v)),
                phi.get(tq, ui, uv),
                phi.get(u, group.mul(sq, ui), uv),
                phi.get(sp, sq, uv),
            ];
            let prod = |xs: [&Scalar; 4]| xs.iter().fold(h.field().one(), |acc, x| &acc * *x);
            prod(num).div(&prod(den)).expect("reassociator is nonzero")
        }
        ThetaReading::Derived => {
            let w = blocks.rep(uv);
            let sigma = group.mul(uv, group.inv(w));
            let vert = |g: usize| (g, g);
            let conj = |x: usize| group.mul(group.mul(u, x), ui);
            let a1 = assoc_ratio(h, (sp, tp), vert(u), (group.mul(sq, v), group.mul(tq, v)));
            let a2 = assoc_ratio(h, (sq, tq), vert(ui), vert(uv));
            let a3 = assoc_ratio(h, vert(u), (group.mul(sq, ui), group.mul(tq, ui)), vert(uv));
            let a4 = assoc_ratio(h, (sp, tp), (conj(sq), conj(tq)), vert(uv));
            let r = (group.mul(sp, conj(sq)), group.mul(tp, conj(tq)));
            let a5 = assoc_ratio(h, r, vert(sigma), vert(w));
            let den = &(&(&a2 * &a3) * &a4) * &a5;
            a1.div(&den).expect("reassociator is nonzero")
        }
    }
}

/// `H_(e) #_σ kG/N` over the minimal-index transversal.
#[derive(Debug, Clone, Serialize)]
pub struct CrossedProduct {
    pub reading: ThetaReading,
    pub transversal: Vec<usize>,
    /// `sigma[i][j] = σ(T_i, T_j)` with `T_i T_j = σ · rep(T_i T_j)`.
    pub sigma: Vec<Vec<usize>>,
    pub base: Vec<Path>,
    /// Number of basis quadruples on which the transport was checked.
    pub checked: usize,
    /// Whether some checked quadruple had a twisting scalar different from 1.
    pub nontrivial_theta: bool,
}

/// `ū ▷ q = ū(q ū⁻¹)`.
pub fn conjugate_action(h: &MajidStructure, u: usize, q: &Element) -> Result<Element, MajidError> {
    let ui = h.group().inv(u);
    let qu = h.multiply(q, &h.vertex(ui))?;
    h.multiply(&h.vertex(u), &qu)
}

/// Image in `kQ` of the crossed-product product `(p ⊗ ū)(q ⊗ v̄)`, that is
/// `Θ · ((p(ū▷q))σ)w̄` with `w̄` the representative of `uv`.
pub fn crossed_image(
    h: &MajidStructure,
    reading: ThetaReading,
    blocks: &BlockDecomposition,
    p: &Path,
    q: &Path,
    u: usize,
    v: usize,
) -> Result<Element, MajidError> {
    let group = h.group();
    let uv = group.mul(u, v);
    let w = blocks.rep(uv);
    let sigma = group.mul(uv, group.inv(w));
    let uq = conjugate_action(h, u, &h.basis(q.clone()))?;
    let r = h.multiply(&h.basis(p.clone()), &uq)?;
    let rs = h.multiply(&r, &h.vertex(sigma))?;
    let out = h.multiply(&rs, &h.vertex(w))?;
    Ok(out.scaled(&theta(h, reading, p, q, u, v, blocks)))
}

/// Runs the transport check `(pū)(qv̄) ↦ (p ⊗ ū)(q ⊗ v̄)` for every pair of
/// principal-block basis paths of total degree at most the cap and every
/// pair of representatives.
pub fn transport_report(h: &MajidStructure, reading: ThetaReading, blocks: &BlockDecomposition) -> VerificationReport {
    let law = match reading {
        ThetaReading::Literal => "transport (literal theta)",
        ThetaReading::Derived => "transport (derived theta)",
    };
    let mut report = VerificationReport::new("crossed product");
    report.declare(law);
    let transversal: Vec<usize> = blocks.blocks.iter().map(|b| b.rep).collect();
    let base = &blocks.principal().paths;
    for p in base {
        for q in base.iter().filter(|q| p.len() + q.len() <= h.degree_cap()) {
            for &u in &transversal {
                for &v in &transversal {
                    let pu = translate(h, &h.basis(p.clone()), u).expect("within cap");
                    let qv = translate(h, &h.basis(q.clone()), v).expect("within cap");
                    let lhs = h.multiply(&pu, &qv).expect("within cap");
                    let rhs = crossed_image(h, reading, blocks, p, q, u, v).expect("within cap");
                    report.check(law, lhs == rhs, || {
                        (
                            json!({ "p": p, "q": q, "u": u, "v": v }),
                            format!("(pu)(qv) = {lhs:?}, crossed product gives {rhs:?}"),
                        )
                    });
                }
            }
        }
    }
    report
}

/// Builds the crossed product and checks that `pū ↦ p ⊗ ū` transports the
/// multiplication.
pub fn crossed_product(h: &MajidStructure, reading: ThetaReading) -> Result<CrossedProduct, StructureError> {
    let blocks = blocks(h);
    let group = h.group();
    let transversal: Vec<usize> = blocks.blocks.iter().map(|b| b.rep).collect();
    let sigma = transversal
        .iter()
        .map(|&u| {
            transversal
                .iter()
                .map(|&v| {
                    let uv = group.mul(u, v);
                    group.mul(uv, group.inv(blocks.rep(uv)))
                })
                .collect()
        })
        .collect();
    let report = transport_report(h, reading, &blocks);
    if let Some(bad) = report.violations.first() {
        let w = &bad.witness;
        let path = |k: &str| serde_json::from_value::<PathRepr>(w[k].clone()).map(PathRepr::into_path);
        return Err(StructureError::IsoCheckFailed {
            p: path("p").expect("witness path"),
            q: path("q").expect("witness path"),
            u: w["u"].as_u64().unwrap_or_default() as usize,
            v: w["v"].as_u64().unwrap_or_default() as usize,
        });
    }
    let base = blocks.principal().paths.clone();
    let mut nontrivial_theta = false;
    for p in &base {
        for q in base.iter().filter(|q| p.len() + q.len() <= h.degree_cap()) {
            for &u in &transversal {
                for &v in &transversal {
                    nontrivial_theta |= !theta(h, reading, p, q, u, v, &blocks).is_one();
                }
            }
        }
    }
    Ok(CrossedProduct {
        reading,
        transversal,
        sigma,
        base,
        checked: report.laws[0].checked,
        nontrivial_theta,
    })
}

#[derive(serde::Deserialize)]
struct PathRepr {
    source: usize,
    arrows: Vec<usize>,
}

impl PathRepr {
    fn into_path(self) -> Path {
        Path {
            source: self.source,
            arrows: self.arrows,
        }
    }
}

/// Primitive elements in degree one and their commutators.
#[derive(Debug, Clone, Serialize)]
pub struct LieData {
    /// The loops, each verified primitive.
    pub basis: Vec<Path>,
    /// `brackets[(i, j)] = x_i x_j - x_j x_i` for `i < j`.
    pub brackets: BTreeMap<(usize, usize), Element>,
    pub report: VerificationReport,
}

fn is_primitive(h: &MajidStructure, x: &Element) -> bool {
    let kq = h.coalgebra();
    let one = h.vertex(h.group().identity());
    let mut want = TensorElement::product_of(&[x, &one]);
    want.add(&TensorElement::product_of(&[&one, x]));
    kq.comultiply_element(x) == want
}

/// Primitives of a Majid algebra on a one-vertex quiver: checks that every
/// loop is primitive, that products of three primitives associate, and that
/// commutators are antisymmetric, primitive and satisfy Jacobi (the latter
/// when the degree cap allows degree-three products).
pub fn primitives(h: &MajidStructure) -> Result<LieData, StructureError> {
    let vertices = h.quiver().vertex_count();
    if vertices != 1 {
        return Err(StructureError::NotSingleVertex(vertices));
    }
    let mut report = VerificationReport::new("primitives");
    for law in ["primitive", "associativity", "antisymmetry", "bracket primitive", "jacobi"] {
        report.declare(law);
    }
    let basis = h.quiver().paths_of_length(1);
    let xs: Vec<Element> = basis.iter().map(|p| h.basis(p.clone())).collect();
    for (p, x) in basis.iter().zip(&xs) {
        report.check("primitive", is_primitive(h, x), || (json!([p]), "Δ(x) ≠ x⊗1 + 1⊗x".to_string()));
    }
    let cap = h.degree_cap();
    let bracket = |x: &Element, y: &Element| -> Result<Element, MajidError> {
        Ok(h.multiply(x, y)?.sub(&h.multiply(y, x)?))
    };
    let mut brackets = BTreeMap::new();
    if cap >= 2 {
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                let b = bracket(&xs[i], &xs[j])?;
                let r = bracket(&xs[j], &xs[i])?;
                let neg = r.scaled(&h.field().integer(-1));
                report.check("antisymmetry", b == neg, || (json!([i, j]), format!("[x,y] = {b:?}, [y,x] = {r:?}")));
                report.check("bracket primitive", is_primitive(h, &b), || {
                    (json!([i, j]), format!("[x,y] = {b:?} is not primitive"))
                });
                if i < j {
                    brackets.insert((i, j), b);
                }
            }
        }
    }
    if cap >= 3 {
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                for k in 0..xs.len() {
                    let (x, y, z) = (&xs[i], &xs[j], &xs[k]);
                    let l = h.multiply(x, &h.multiply(y, z)?)?;
                    let r = h.multiply(&h.multiply(x, y)?, z)?;
                    report.check("associativity", l == r, || (json!([i, j, k]), format!("x(yz) = {l:?}, (xy)z = {r:?}")));
                    let mut jac = bracket(&bracket(x, y)?, z)?;
                    jac.add(&bracket(&bracket(y, z)?, x)?);
                    jac.add(&bracket(&bracket(z, x)?, y)?);
                    report.check("jacobi", jac.is_zero(), || (json!([i, j, k]), format!("Jacobi sum = {jac:?}")));
                }
            }
        }
    }
    Ok(LieData {
        basis,
        brackets,
        report,
    })
}

/// Whether `Δ = Δ^op` on every basis path within the degree cap; on failure
/// returns the first offending path in degree order.
pub fn cocommutative_check(h: &MajidStructure) -> (bool, Option<Path>) {
    let kq = h.coalgebra();
    for p in h.basis_paths() {
        let d = kq.comultiply(&p);
        if d != d.flipped() {
            return (false, Some(p));
        }
    }
    (true, None)
}
