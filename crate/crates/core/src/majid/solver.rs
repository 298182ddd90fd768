//! Concrete bimodule actions: character (Taft-type) actions and a solver for
//! monomial actions whose scalars are roots of unity.

use crate::exactfield::{Field, Scalar};
use crate::group::{Cocycle3, FiniteGroup};
use crate::pathcoalg::Element;
use crate::quiver::{HopfArrow, HopfQuiver, Path};

use super::{BimoduleAction, MajidError};

/// Arrow reached by `f.a`: source `f s(a)`, class element `f c f⁻¹`, same
/// slot.
fn left_image(quiver: &HopfQuiver, f: usize, arrow: usize) -> usize {
    let g = quiver.group();
    let l = quiver.label(arrow);
    quiver
        .arrow_id(HopfArrow {
            source: g.mul(f, l.source),
            class_element: g.conjugate(f, l.class_element),
            slot: l.slot,
        })
        .expect("Hopf quivers are closed under conjugation")
}

/// Arrow reached by `a.f`: source `s(a) f`, same class element and slot.
fn right_image(quiver: &HopfQuiver, arrow: usize, f: usize) -> usize {
    let g = quiver.group();
    let l = quiver.label(arrow);
    quiver
        .arrow_id(HopfArrow {
            source: g.mul(l.source, f),
            class_element: l.class_element,
            slot: l.slot,
        })
        .expect("right translates of arrows exist")
}

/// `f.a = χ(f) · a'` and `a.f = a''` with `a'`, `a''` the translated arrows.
/// For trivial `Φ` and a character `χ` this is a Hopf bimodule; on `Z_n`
/// with `χ(g^j) = q^j` it is the bimodule behind the Taft algebras.
pub fn taft_action(quiver: &HopfQuiver, character: &[Scalar]) -> BimoduleAction {
    let group = quiver.group();
    let field = character[group.identity()].field().clone();
    let mut action = BimoduleAction::new();
    for a in 0..quiver.arrow_count() {
        for f in group.elements() {
            let l = Path::arrow(quiver, left_image(quiver, f, a));
            action.set_left(f, a, Element::term(l, character[f].clone()));
            let r = Path::arrow(quiver, right_image(quiver, a, f));
            action.set_right(a, f, Element::basis(r, &field));
        }
    }
    action
}

/// A monomial solution `f.a = γ^{λ(f,a)} a'`, `a.f = γ^{μ(a,f)} a''`, with `γ`
/// the generator of the roots of unity of the field.
#[derive(Debug, Clone)]
pub struct MonomialSolution {
    pub action: BimoduleAction,
    /// `left_exponents[f][a] = λ(f, a)`
    pub left_exponents: Vec<Vec<u32>>,
    /// `right_exponents[a][f] = μ(a, f)`
    pub right_exponents: Vec<Vec<u32>>,
    pub modulus: u32,
}

/// Exponent linear form over the unknowns, plus a constant.
struct Equation {
    coeffs: Vec<(usize, i64)>,
    rhs: i64,
}

/// Finds a monomial Majid bimodule structure for `(G, Φ)` on `kQ_1` by
/// solving the quasi-associativity relations as linear congruences on the
/// exponents of `γ`. Requires every `Φ` value to be a root of unity of the
/// field; the result still has to pass [`super::verify_bimodule`].
pub fn solve_monomial_action(
    quiver: &HopfQuiver,
    phi: &Cocycle3,
) -> Result<MonomialSolution, MajidError> {
    let group = quiver.group();
    let field = phi.field().clone();
    let modulus = field.unity_order();
    let n = group.order();
    let arrows = quiver.arrow_count();
    let e = group.identity();

    // unknown ids: left (f, a) then right (a, f), identity excluded
    let left_var = |f: usize, a: usize| (f != e).then(|| f * arrows + a);
    let right_var = |a: usize, f: usize| (f != e).then(|| n * arrows + a * n + f);
    let unknowns = 2 * n * arrows;

    let log = |x: &Scalar| -> Result<i64, MajidError> {
        field
            .unity_log(x)
            .map(i64::from)
            .ok_or_else(|| MajidError::NotRootOfUnity(x.to_string()))
    };
    let ratio_log = |a: &Scalar, b: &Scalar| -> Result<i64, MajidError> {
        Ok(log(a)? - log(b)?)
    };

    let mut equations = Vec::new();
    let mut push = |terms: &[(Option<usize>, i64)], rhs: i64| {
        let coeffs = terms
            .iter()
            .filter_map(|&(v, c)| v.map(|v| (v, c)))
            .collect();
        equations.push(Equation { coeffs, rhs });
    };

    for a in 0..arrows {
        let ends = quiver.arrow(a);
        let (h, g) = (ends.source, ends.target);
        for u in group.elements() {
            for v in group.elements() {
                let uv = group.mul(u, v);
                // u.(v.a) = Φ(u,v,g)/Φ(u,v,h) (uv).a
                let va = left_image(quiver, v, a);
                push(
                    &[(left_var(v, a), 1), (left_var(u, va), 1), (left_var(uv, a), -1)],
                    ratio_log(phi.get(u, v, g), phi.get(u, v, h))?,
                );
                // (a.u).v = Φ(h,u,v)/Φ(g,u,v) a.(uv)
                let au = right_image(quiver, a, u);
                push(
                    &[(right_var(a, u), 1), (right_var(au, v), 1), (right_var(a, uv), -1)],
                    ratio_log(phi.get(h, u, v), phi.get(g, u, v))?,
                );
                // (u.a).v = Φ(u,h,v)/Φ(u,g,v) u.(a.v)
                let ua = left_image(quiver, u, a);
                let av = right_image(quiver, a, v);
                push(
                    &[
                        (left_var(u, a), 1),
                        (right_var(ua, v), 1),
                        (right_var(a, v), -1),
                        (left_var(u, av), -1),
                    ],
                    ratio_log(phi.get(u, h, v), phi.get(u, g, v))?,
                );
            }
        }
    }

    let m = i64::from(modulus);
    let mut matrix = vec![vec![0i64; unknowns]; equations.len()];
    let mut rhs = vec![0i64; equations.len()];
    for (row, eq) in equations.iter().enumerate() {
        for &(v, c) in &eq.coeffs {
            matrix[row][v] = (matrix[row][v] + c).rem_euclid(m);
        }
        rhs[row] = eq.rhs.rem_euclid(m);
    }
    let x = solve_congruences(matrix, rhs, m).ok_or(MajidError::NoMonomialSolution(field.order()))?;

    let mut left_exponents = vec![vec![0u32; arrows]; n];
    let mut right_exponents = vec![vec![0u32; n]; arrows];
    for a in 0..arrows {
        for f in group.elements() {
            if let Some(v) = left_var(f, a) {
                left_exponents[f][a] = x[v] as u32;
            }
            if let Some(v) = right_var(a, f) {
                right_exponents[a][f] = x[v] as u32;
            }
        }
    }
    let action = monomial_action(quiver, &field, group, &left_exponents, &right_exponents);
    Ok(MonomialSolution {
        action,
        left_exponents,
        right_exponents,
        modulus,
    })
}

fn monomial_action(
    quiver: &HopfQuiver,
    field: &Field,
    group: &FiniteGroup,
    left: &[Vec<u32>],
    right: &[Vec<u32>],
) -> BimoduleAction {
    let mut action = BimoduleAction::new();
    for a in 0..quiver.arrow_count() {
        for f in group.elements() {
            let l = Path::arrow(quiver, left_image(quiver, f, a));
            action.set_left(f, a, Element::term(l, field.unity_pow(left[f][a].into())));
            let r = Path::arrow(quiver, right_image(quiver, a, f));
            action.set_right(a, f, Element::term(r, field.unity_pow(right[a][f].into())));
        }
    }
    action
}

/// Solves `A x ≡ b (mod m)` by diagonalizing `A` with unimodular row and
/// column operations. Free variables are set to zero.
pub(crate) fn solve_congruences(mut a: Vec<Vec<i64>>, mut b: Vec<i64>, m: i64) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bx, _, _)| x < bx) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            b.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = (a[i][j] - q * a[t][j]).rem_euclid(m);
                    }
                    b[i] = (b[i] - q * b[t]).rem_euclid(m);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] = (row[j] - q * row[t]).rem_euclid(m);
                    }
                    for row in v.iter_mut() {
                        row[j] = (row[j] - q * row[t]).rem_euclid(m);
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                rank = t + 1;
                break;
            }
        }
        if rank != t + 1 {
            break;
        }
    }
    let mut y = vec![0i64; cols];
    for t in 0..rank {
        let d = a[t][t];
        let g = num_integer::gcd(d, m);
        if b[t] % g != 0 {
            return None;
        }
        let (d, c, mg) = (d / g, b[t] / g, m / g);
        y[t] = (c * mod_inverse(d, mg)).rem_euclid(mg);
    }
    if b[rank..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).map(|j| v[i][j] * y[j]).sum::<i64>().rem_euclid(m))
            .collect(),
    )
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}
