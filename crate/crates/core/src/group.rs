//! Finite groups given by multiplication tables, normalized 3-cocycles and
//! ramification data.

use std::collections::BTreeSet;

use serde_json::json;
use thiserror::Error;

use crate::exactfield::{Field, Scalar};
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("empty multiplication table")]
    Empty,
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("cocycle value at ({0}, {1}, {2}) is zero")]
    ZeroCocycleValue(usize, usize, usize),
    #[error("cocycle table has {found} entries, expected {expected}")]
    CocycleShape { expected: usize, found: usize },
    #[error("requested root of unity is not an n-th root in the field")]
    RootNotInField,
    #[error("element {0} does not generate the group")]
    NotCyclic(usize),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table and derives identity, inverses and
    /// conjugacy classes.
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mult.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::MalformedTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| mult[x][y] == identity && mult[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a][b];
                for c in 0..n {
                    if mult[ab][c] != mult[a][mult[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..n).map(|g| mult[mult[g][x]][inverse[g]]).collect();
            for &y in &orbit {
                class_of[y] = classes.len();
            }
            classes.push(orbit.into_iter().collect());
        }
        Ok(FiniteGroup {
            mult,
            identity,
            inverse,
            classes,
            class_of,
        })
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Closure of `gens` under multiplication and inversion.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        let elements: Vec<usize> = set.into_iter().collect();
        let index = self.order() / elements.len();
        Subgroup { elements, index }
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let set: BTreeSet<usize> = sub.iter().copied().collect();
        self.elements()
            .all(|g| sub.iter().all(|&x| set.contains(&self.conjugate(g, x))))
    }
}

/// A subgroup together with its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub index: usize,
}

impl Subgroup {
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Dense table of a reassociator restricted to group-likes,
/// `values[(a * n + b) * n + c] = Φ(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle3 {
    n: usize,
    values: Vec<Scalar>,
}

impl Cocycle3 {
    pub fn from_values(n: usize, values: Vec<Scalar>) -> Result<Self, GroupError> {
        if values.len() != n * n * n {
            return Err(GroupError::CocycleShape {
                expected: n * n * n,
                found: values.len(),
            });
        }
        Ok(Cocycle3 { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(f(a, b, c));
                }
            }
        }
        Cocycle3 { n, values }
    }

    pub fn trivial(n: usize, field: &Field) -> Self {
        Cocycle3::from_fn(n, |_, _, _| field.one())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.values[0].field()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.values[(a * self.n + b) * self.n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: Scalar) {
        let n = self.n;
        self.values[(a * n + b) * n + c] = value;
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    /// Pointwise inverse, which on group-likes is the convolution inverse.
    pub fn inverse(&self) -> Result<Cocycle3, GroupError> {
        let mut values = Vec::with_capacity(self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            let n = self.n;
            values.push(
                v.inverse()
                    .map_err(|_| GroupError::ZeroCocycleValue(i / (n * n), (i / n) % n, i % n))?,
            );
        }
        Ok(Cocycle3 { n: self.n, values })
    }
}

/// Checks normalization on every triple and the 3-cocycle identity
/// `Φ(a,b,cd) Φ(ab,c,d) = Φ(b,c,d) Φ(a,bc,d) Φ(a,b,c)` on every quadruple.
pub fn verify_cocycle(group: &FiniteGroup, phi: &Cocycle3) -> Result<VerificationReport, GroupError> {
    let n = group.order();
    if phi.order() != n {
        return Err(GroupError::CocycleShape {
            expected: n * n * n,
            found: phi.values.len(),
        });
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if phi.get(a, b, c).is_zero() {
                    return Err(GroupError::ZeroCocycleValue(a, b, c));
                }
            }
        }
    }
    let e = group.identity();
    let mut report = VerificationReport::new("cocycle");
    report.declare("normalization");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != e && b != e && c != e {
                    continue;
                }
                let v = phi.get(a, b, c);
                report.check("normalization", v.is_one(), || {
                    (json!([a, b, c]), format!("Phi({a},{b},{c}) = {v}, expected 1"))
                });
            }
        }
    }
    report.declare("cocycle identity");
    for a in 0..n {
        for b in 0..n {
            let ab = group.mul(a, b);
            for c in 0..n {
                let bc = group.mul(b, c);
                let abc = phi.get(a, b, c);
                for d in 0..n {
                    let cd = group.mul(c, d);
                    let lhs = phi.get(a, b, cd) * phi.get(ab, c, d);
                    let rhs = &(phi.get(b, c, d) * phi.get(a, bc, d)) * abc;
                    report.check("cocycle identity", lhs == rhs, || {
                        (json!([a, b, c, d]), format!("lhs {lhs} != rhs {rhs}"))
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `ω(g^a, g^b, g^c) = ζ^{a ⌊(b+c)/n⌋}` on the canonical cyclic group
/// [`groups::cyclic`]`(n)`, where `ζ^n = 1`.
pub fn standard_cyclic_cocycle(n: usize, zeta: &Scalar) -> Result<Cocycle3, GroupError> {
    let g = groups::cyclic(n);
    standard_cyclic_cocycle_on(&g, if n == 1 { 0 } else { 1 }, zeta)
}

/// The standard cocycle on a cyclic group, with exponents measured against
/// `generator`.
pub fn standard_cyclic_cocycle_on(
    group: &FiniteGroup,
    generator: usize,
    zeta: &Scalar,
) -> Result<Cocycle3, GroupError> {
    let n = group.order();
    if generator >= n {
        return Err(GroupError::OutOfRange(generator));
    }
    if group.element_order(generator) != n {
        return Err(GroupError::NotCyclic(generator));
    }
    if !zeta.pow(n as u64).is_one() {
        return Err(GroupError::RootNotInField);
    }
    let mut exponent = vec![0usize; n];
    let mut x = group.identity();
    for k in 0..n {
        exponent[x] = k;
        x = group.mul(x, generator);
    }
    let powers: Vec<Scalar> = (0..n).map(|k| zeta.pow(k as u64)).collect();
    Ok(Cocycle3::from_fn(n, |a, b, c| {
        let (a, b, c) = (exponent[a], exponent[b], exponent[c]);
        powers[(a * ((b + c) / n)) % n].clone()
    }))
}

/// Arrow multiplicities per conjugacy class, indexed like
/// [`FiniteGroup::classes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamificationData {
    pub multiplicities: Vec<usize>,
}

impl RamificationData {
    pub fn zero(group: &FiniteGroup) -> Self {
        RamificationData {
            multiplicities: vec![0; group.classes().len()],
        }
    }

    /// Builds `R` from `(class representative, multiplicity)` pairs; repeated
    /// classes accumulate.
    pub fn from_reps(group: &FiniteGroup, reps: &[(usize, usize)]) -> Result<Self, GroupError> {
        let mut r = RamificationData::zero(group);
        for &(rep, mult) in reps {
            if rep >= group.order() {
                return Err(GroupError::OutOfRange(rep));
            }
            r.multiplicities[group.class_of(rep)] += mult;
        }
        Ok(r)
    }

    pub fn of_class(&self, class: usize) -> usize {
        self.multiplicities[class]
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    /// Elements of every class with nonzero multiplicity.
    pub fn support(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut out: Vec<usize> = group
            .classes()
            .iter()
            .zip(&self.multiplicities)
            .filter(|(_, &m)| m > 0)
            .flat_map(|(c, _)| c.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Small concrete groups. Elements are ordered with the identity at index 0.
pub mod groups {
    use super::FiniteGroup;

    pub fn cyclic(n: usize) -> FiniteGroup {
        from_fn(n, |a, b| (a + b) % n)
    }

    /// `Z_m ⋊ Z_n` with the generator of `Z_n` acting by `x ↦ r x`;
    /// element `(a, b)` has index `b * m + a`.
    pub fn semidirect(m: usize, n: usize, r: usize) -> FiniteGroup {
        let pow = |b: usize| (0..b).fold(1 % m, |acc, _| acc * r % m);
        from_fn(m * n, |x, y| {
            let (a1, b1) = (x % m, x / m);
            let (a2, b2) = (y % m, y / m);
            let a = (a1 + pow(b1) * a2) % m;
            let b = (b1 + b2) % n;
            b * m + a
        })
    }

    pub fn dihedral(m: usize) -> FiniteGroup {
        semidirect(m, 2, m - 1)
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let nh = h.order();
        from_fn(g.order() * nh, |x, y| {
            g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh)
        })
    }

    /// Permutation group generated by `gens`, elements sorted
    /// lexicographically; `(p q)(i) = p(q(i))`.
    pub fn permutations(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
        let id: Vec<usize> = (0..degree).collect();
        let mut set = std::collections::BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
                if set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = set.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).unwrap();
        from_fn(elems.len(), |a, b| {
            let c: Vec<usize> = (0..degree).map(|i| elems[a][elems[b][i]]).collect();
            index(&c)
        })
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        if n <= 1 {
            return cyclic(1);
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        permutations(n, &[swap, cycle])
    }

    pub fn alternating4() -> FiniteGroup {
        permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    /// Quaternion group; index `2 * k + s` stands for `(-1)^s u_k` with
    /// `u = (1, i, j, k)`.
    pub fn quaternion() -> FiniteGroup {
        // unit products u_a u_b = sign * u_c
        const TABLE: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        from_fn(8, |x, y| {
            let (ka, sa) = (x / 2, x % 2);
            let (kb, sb) = (y / 2, y % 2);
            let (kc, sc) = TABLE[ka][kb];
            2 * kc + (sa + sb + sc) % 2
        })
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        FiniteGroup::from_table(table).expect("library group tables are valid")
    }

    /// One representative of every isomorphism class of groups of order at
    /// most `max_order` (supported up to 12).
    pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
        assert!(max_order <= 12, "catalogue stops at order 12");
        let z = cyclic;
        let mut out: Vec<(String, FiniteGroup)> = Vec::new();
        for n in 1..=max_order {
            out.push((format!("Z{n}"), z(n)));
            match n {
                4 => out.push(("Z2xZ2".into(), direct_product(&z(2), &z(2)))),
                6 => out.push(("S3".into(), symmetric(3))),
                8 => {
                    out.push(("Z2xZ4".into(), direct_product(&z(2), &z(4))));
                    out.push((
                        "Z2xZ2xZ2".into(),
                        direct_product(&direct_product(&z(2), &z(2)), &z(2)),
                    ));
                    out.push(("D4".into(), dihedral(4)));
                    out.push(("Q8".into(), quaternion()));
                }
                9 => out.push(("Z3xZ3".into(), direct_product(&z(3), &z(3)))),
                10 => out.push(("D5".into(), dihedral(5))),
                12 => {
                    out.push(("Z2xZ6".into(), direct_product(&z(2), &z(6))));
                    out.push(("A4".into(), alternating4()));
                    out.push(("D6".into(), dihedral(6)));
                    out.push(("Dic3".into(), semidirect(3, 4, 2)));
                }
                _ => {}
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::groups::*;
    use super::*;

    #[test]
    fn z2_table() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.classes(), &[vec![0], vec![1]]);
    }

    #[test]
    fn broken_tables() {
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err(),
            GroupError::NoInverse(1)
        );
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).unwrap_err(),
            GroupError::MalformedTable
        );
        assert_eq!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]]).unwrap_err(),
            GroupError::NoIdentity
        );
        // identity 0, every element self-inverse, but 1*2 = 1 breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        assert!(matches!(
            FiniteGroup::from_table(t).unwrap_err(),
            GroupError::NotAssociative(..)
        ));
    }

    #[test]
    fn s3_classes_by_brute_force() {
        let g = symmetric(3);
        // brute-force orbits under conjugation
        let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
        for x in g.elements() {
            let o: BTreeSet<usize> = g
                .elements()
                .map(|h| {
                    let hinv = (0..6).find(|&y| g.mul(h, y) == 0).unwrap();
                    g.mul(g.mul(h, x), hinv)
                })
                .collect();
            if !orbits.contains(&o) {
                orbits.push(o);
            }
        }
        let mut sizes: Vec<usize> = orbits.iter().map(BTreeSet::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let mut ours: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        ours.sort_unstable();
        assert_eq!(ours, sizes);
    }

    #[test]
    fn z2_cocycles() {
        let k = Field::new(2).unwrap();
        let g = cyclic(2);
        let trivial = Cocycle3::trivial(2, &k);
        assert!(verify_cocycle(&g, &trivial).unwrap().passed());

        let mut sign = trivial.clone();
        sign.set(1, 1, 1, k.integer(-1));
        // oracle: brute force the identity on all 16 quadruples
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let f = |x: usize, y: usize, z: usize| {
                            if x == 1 && y == 1 && z == 1 {
                                -1
                            } else {
                                1
                            }
                        };
                        let m = |x: usize, y: usize| (x + y) % 2;
                        let lhs = f(a, b, m(c, d)) * f(m(a, b), c, d);
                        let rhs = f(b, c, d) * f(a, m(b, c), d) * f(a, b, c);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        assert!(verify_cocycle(&g, &sign).unwrap().passed());

        let mut broken = trivial.clone();
        broken.set(1, 1, 0, k.integer(-1));
        let rep = verify_cocycle(&g, &broken).unwrap();
        assert!(!rep.passed());
        assert!(rep
            .violations_of("normalization")
            .any(|v| v.witness == json!([1, 1, 0])));

        let mut zero = trivial;
        zero.set(0, 1, 1, k.zero());
        assert_eq!(
            verify_cocycle(&g, &zero).unwrap_err(),
            GroupError::ZeroCocycleValue(0, 1, 1)
        );
    }

    #[test]
    fn standard_cocycles() {
        let k1 = Field::new(1).unwrap();
        assert!(standard_cyclic_cocycle(1, &k1.one()).unwrap().is_trivial());

        let k2 = Field::new(2).unwrap();
        let w = standard_cyclic_cocycle(2, &k2.integer(-1)).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let expected = if (a, b, c) == (1, 1, 1) { -1 } else { 1 };
                    assert_eq!(*w.get(a, b, c), k2.integer(expected));
                }
            }
        }
        let k3 = Field::new(3).unwrap();
        let w3 = standard_cyclic_cocycle(3, &k3.zeta()).unwrap();
        assert!(!w3.is_trivial());
        assert!(verify_cocycle(&cyclic(3), &w3).unwrap().passed());

        assert_eq!(
            standard_cyclic_cocycle(4, &k3.zeta()).unwrap_err(),
            GroupError::RootNotInField
        );
        assert_eq!(
            standard_cyclic_cocycle_on(&cyclic(4), 2, &k2.one()).unwrap_err(),
            GroupError::NotCyclic(2)
        );
    }

    #[test]
    fn generated_subgroups() {
        let s3 = symmetric(3);
        let triv = s3.subgroup_generated(&[0]);
        assert_eq!(triv.elements, vec![0]);
        assert_eq!(triv.index, 6);

        let z4 = cyclic(4);
        let h = z4.subgroup_generated(&[2]);
        assert_eq!(h.elements, vec![0, 2]);
        assert_eq!(h.index, 2);

        let transpositions = s3.classes().iter().find(|c| c.len() == 3).unwrap().clone();
        assert_eq!(s3.subgroup_generated(&transpositions[..1]).index, 3);
        assert_eq!(s3.subgroup_generated(&transpositions).index, 1);
    }

    #[test]
    fn catalogue_orders() {
        let gs = small_groups(12);
        let count = |n: usize| gs.iter().filter(|(_, g)| g.order() == n).count();
        assert_eq!(
            (1..=12).map(count).collect::<Vec<_>>(),
            vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]
        );
        let q8 = quaternion();
        assert!(!q8.is_abelian());
        // Q8 has a unique involution
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
        assert_eq!(dihedral(4).elements().filter(|&x| dihedral(4).element_order(x) == 2).count(), 5);
    }
}
