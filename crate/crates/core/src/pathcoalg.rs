//! The path coalgebra `kQ`: sparse elements, tensors, counit and
//! comultiplication.
//!
//! For `p = a_n ⋯ a_1`,
//!
//! ```text
//! Δ(p) = p ⊗ s(a_1) + Σ_{i=1}^{n-1} a_n⋯a_{i+1} ⊗ a_i⋯a_1 + t(a_n) ⊗ p
//! ```
//!
//! so the left leg always holds the part of the path nearest the target.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactfield::{Field, FieldError, Scalar, ScalarRepr};
use crate::quiver::{Path, Quiver};

/// Finitely supported linear combination of paths. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Path, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(path: Path, field: &Field) -> Self {
        Element::term(path, field.one())
    }

    pub fn term(path: Path, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(path, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, path: &Path) -> Option<&Scalar> {
        self.terms.get(path)
    }

    pub fn add_term(&mut self, path: Path, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(path) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn add(&mut self, other: &Element) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (p, x) in &other.terms {
            out.add_term(p.clone(), -x);
        }
        out
    }

    /// Restriction of the support to paths of length `n`.
    pub fn graded_component(&self, n: usize) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() == n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|p| p.len() == n)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    pub fn to_repr(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(p, c)| TermRepr {
                source: p.source,
                arrows: p.arrows.clone(),
                coeff: c.to_repr(),
            })
            .collect()
    }

    pub fn from_repr(q: &Quiver, field: &Field, repr: &[TermRepr]) -> Result<Element, ElementError> {
        let mut e = Element::zero();
        for t in repr {
            let path = if t.arrows.is_empty() {
                if t.source >= q.vertex_count() {
                    return Err(ElementError::BadPath(t.source, t.arrows.clone()));
                }
                Path::vertex(t.source)
            } else {
                match Path::from_arrows(q, &t.arrows) {
                    Some(p) if p.source == t.source => p,
                    _ => return Err(ElementError::BadPath(t.source, t.arrows.clone())),
                }
            };
            e.add_term(path, field.parse(&t.coeff)?);
        }
        Ok(e)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("no path with source {0} and arrows {1:?}")]
    BadPath(usize, Vec<usize>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// JSON term: `{ "source": v, "arrows": [ids], "coeff": scalar }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub source: usize,
    #[serde(default)]
    pub arrows: Vec<usize>,
    pub coeff: ScalarRepr,
}

/// Linear combination of flat tuples of paths of a fixed arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Path>, Scalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Path>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, legs: &[Path]) -> Option<&Scalar> {
        self.terms.get(legs)
    }

    pub fn add_term(&mut self, legs: Vec<Path>, coeff: Scalar) {
        assert_eq!(legs.len(), self.arity, "tensor arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&mut self, other: &TensorElement) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    /// `x_1 ⊗ ⋯ ⊗ x_k` expanded over the bases.
    pub fn product_of(factors: &[&Element]) -> TensorElement {
        let mut acc: Vec<(Vec<Path>, Option<Scalar>)> = vec![(Vec::new(), None)];
        for f in factors {
            let mut next = Vec::new();
            for (legs, c) in &acc {
                for (p, x) in f.terms() {
                    let mut l = legs.clone();
                    l.push(p.clone());
                    let coeff = match c {
                        None => x.clone(),
                        Some(c) => c * x,
                    };
                    next.push((l, Some(coeff)));
                }
            }
            acc = next;
        }
        let mut out = TensorElement::zero(factors.len());
        for (legs, c) in acc {
            if let Some(c) = c {
                out.add_term(legs, c);
            }
        }
        out
    }

    /// Swaps the legs of an arity-2 tensor.
    pub fn flipped(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k, c) in &self.terms {
            let mut r = k.clone();
            r.reverse();
            out.add_term(r, c.clone());
        }
        out
    }
}

/// `kQ` over a quiver and a coefficient field.
#[derive(Debug, Clone)]
pub struct PathCoalgebra<'q> {
    quiver: &'q Quiver,
    field: Field,
}

impl<'q> PathCoalgebra<'q> {
    pub fn new(quiver: &'q Quiver, field: Field) -> Self {
        PathCoalgebra { quiver, field }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self, p: Path) -> Element {
        Element::basis(p, &self.field)
    }

    /// All ways of writing `p` as `k` consecutive pieces (vertices allowed),
    /// leg 0 nearest the target. These are the terms of `Δ^{(k-1)}(p)`, each
    /// with coefficient 1.
    pub fn splits(&self, p: &Path, k: usize) -> Vec<Vec<Path>> {
        assert!(k >= 1);
        let n = p.len();
        let mut out = Vec::new();
        // cuts[i] is where leg i (counted from the bottom) ends
        let mut cuts = vec![0usize; k - 1];
        fn rec(
            kq: &PathCoalgebra<'_>,
            p: &Path,
            n: usize,
            depth: usize,
            lo: usize,
            cuts: &mut Vec<usize>,
            out: &mut Vec<Vec<Path>>,
        ) {
            if depth == cuts.len() {
                let mut legs = Vec::with_capacity(cuts.len() + 1);
                let mut start = 0;
                for &c in cuts.iter() {
                    legs.push(p.slice(kq.quiver, start, c));
                    start = c;
                }
                legs.push(p.slice(kq.quiver, start, n));
                legs.reverse();
                out.push(legs);
                return;
            }
            for c in lo..=n {
                cuts[depth] = c;
                rec(kq, p, n, depth + 1, c, cuts, out);
            }
        }
        rec(self, p, n, 0, 0, &mut cuts, &mut out);
        out
    }

    pub fn comultiply(&self, p: &Path) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for legs in self.splits(p, 2) {
            t.add_term(legs, self.field.one());
        }
        t
    }

    pub fn comultiply_element(&self, x: &Element) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for (p, c) in x.terms() {
            for legs in self.splits(p, 2) {
                t.add_term(legs, c.clone());
            }
        }
        t
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        x.terms()
            .filter(|(p, _)| p.is_vertex())
            .fold(self.field.zero(), |acc, (_, c)| &acc + c)
    }

    pub fn counit_path(&self, p: &Path) -> Scalar {
        if p.is_vertex() {
            self.field.one()
        } else {
            self.field.zero()
        }
    }

    /// Applies the comultiplication of the tensor coalgebra `kQ^{⊗k}`
    /// `steps` times, each time to the rightmost block of `k` legs:
    /// `x^1⊗⋯⊗x^k ↦ (x^1_1⊗⋯⊗x^k_1) ⊗ (x^1_2⊗⋯⊗x^k_2)`.
    pub fn iterated_comultiply(&self, x: &TensorElement, steps: usize) -> TensorElement {
        let k = x.arity();
        let mut cur = x.clone();
        for _ in 0..steps {
            let mut next = TensorElement::zero(cur.arity() + k);
            for (legs, c) in cur.terms() {
                let (prefix, block) = legs.split_at(legs.len() - k);
                let mut partial: Vec<(Vec<Path>, Vec<Path>)> = vec![(Vec::new(), Vec::new())];
                for p in block {
                    let splits = self.splits(p, 2);
                    let mut grown = Vec::with_capacity(partial.len() * splits.len());
                    for (l, r) in &partial {
                        for s in &splits {
                            let mut l2 = l.clone();
                            l2.push(s[0].clone());
                            let mut r2 = r.clone();
                            r2.push(s[1].clone());
                            grown.push((l2, r2));
                        }
                    }
                    partial = grown;
                }
                for (l, r) in partial {
                    let mut full = prefix.to_vec();
                    full.extend(l);
                    full.extend(r);
                    next.add_term(full, c.clone());
                }
            }
            cur = next;
        }
        cur
    }
}
