//! Quivers, Hopf quivers `Q(G, R)` and paths.

use std::cmp::Ordering;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, RamificationData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver has {vertices} vertices but the group has order {group}")]
    VertexCountMismatch { vertices: usize, group: usize },
    #[error("vertex labeling is not a bijection onto the group")]
    BadLabeling,
    #[error("ramification datum has {found} classes, group has {expected}")]
    RamificationShape { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ArrowEnds {
    pub source: usize,
    pub target: usize,
}

/// An abstract finite quiver: vertices `0..vertices`, arrows numbered in
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<ArrowEnds>,
    outgoing: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<ArrowEnds>) -> Self {
        let mut outgoing = vec![Vec::new(); vertices];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(i);
        }
        Quiver {
            vertices,
            arrows,
            outgoing,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: usize) -> ArrowEnds {
        self.arrows[id]
    }

    pub fn arrows(&self) -> &[ArrowEnds] {
        &self.arrows
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.arrows[arrow].source
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.arrows[arrow].target
    }

    pub fn outgoing(&self, vertex: usize) -> &[usize] {
        &self.outgoing[vertex]
    }

    /// Number of arrows `from -> to`.
    pub fn count_between(&self, from: usize, to: usize) -> usize {
        self.outgoing[from]
            .iter()
            .filter(|&&a| self.arrows[a].target == to)
            .count()
    }

    /// All paths of length exactly `len`, ordered as [`Path`]'s `Ord`.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertices).map(Path::vertex).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                let end = p.target(self);
                for &a in &self.outgoing[end] {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path {
                        source: p.source,
                        arrows,
                    });
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// Paths grouped by length `0..=max_len`.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Vec<Path>> {
        (0..=max_len).map(|l| self.paths_of_length(l)).collect()
    }

    /// Connected components of the underlying undirected graph.
    pub fn connected_components(&self) -> Components {
        let mut uf = UnionFind::<usize>::new(self.vertices);
        for a in &self.arrows {
            uf.union(a.source, a.target);
        }
        let labels = uf.into_labeling();
        let mut component_of = vec![usize::MAX; self.vertices];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertices {
            let root = labels[v];
            if component_of[root] == usize::MAX {
                component_of[root] = parts.len();
                parts.push(Vec::new());
            }
            let c = component_of[root];
            component_of[v] = c;
            parts[c].push(v);
        }
        Components {
            parts,
            component_of,
        }
    }

    /// Graphviz description; arrows are labelled by id.
    pub fn to_dot(&self, vertex_label: impl Fn(usize) -> String) -> String {
        let mut s = String::from("digraph Q {\n");
        for v in 0..self.vertices {
            let _ = writeln!(s, "  {v} [label=\"{}\"];", vertex_label(v));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let _ = writeln!(s, "  {} -> {} [label=\"a{i}\"];", a.source, a.target);
        }
        s.push_str("}\n");
        s
    }
}

/// Partition of the vertices; component ids follow the smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub parts: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn of(&self, vertex: usize) -> &[usize] {
        &self.parts[self.component_of[vertex]]
    }
}

/// A path: a source vertex and the arrows in traversal order, so
/// `arrows[0]` leaves the source. Length-0 paths are vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, id: usize) -> Self {
        Path {
            source: q.source(id),
            arrows: vec![id],
        }
    }

    /// Builds a path from arrows in traversal order, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Self> {
        let first = *arrows.first()?;
        if arrows.iter().any(|&a| a >= q.arrow_count()) {
            return None;
        }
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return None;
            }
        }
        Some(Path {
            source: q.source(first),
            arrows: arrows.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.target(a))
    }

    /// Vertex reached after traversing the first `k` arrows.
    pub fn vertex_at(&self, q: &Quiver, k: usize) -> usize {
        if k == 0 {
            self.source
        } else {
            q.target(self.arrows[k - 1])
        }
    }

    /// The subpath made of arrows `from..to`.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        Path {
            source: self.vertex_at(q, from),
            arrows: self.arrows[from..to].to_vec(),
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.source.cmp(&other.source))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

/// Arrow label inside a Hopf quiver: `slot`-th arrow from `source` to
/// `class_element * source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HopfArrow {
    pub source: usize,
    pub class_element: usize,
    pub slot: usize,
}

/// The Hopf quiver `Q(G, R)`: for each `x` and each `c` in a class `C`
/// there are `R_C` arrows `x -> c x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfQuiver {
    group: FiniteGroup,
    ram: RamificationData,
    labels: Vec<HopfArrow>,
    quiver: Quiver,
}

impl HopfQuiver {
    pub fn new(group: FiniteGroup, ram: RamificationData) -> Result<Self, QuiverError> {
        if ram.multiplicities.len() != group.classes().len() {
            return Err(QuiverError::RamificationShape {
                expected: group.classes().len(),
                found: ram.multiplicities.len(),
            });
        }
        let mut labels = Vec::new();
        for x in group.elements() {
            for c in group.elements() {
                for slot in 0..ram.of_class(group.class_of(c)) {
                    labels.push(HopfArrow {
                        source: x,
                        class_element: c,
                        slot,
                    });
                }
            }
        }
        let ends = labels
            .iter()
            .map(|h| ArrowEnds {
                source: h.source,
                target: group.mul(h.class_element, h.source),
            })
            .collect();
        let quiver = Quiver::new(group.order(), ends);
        Ok(HopfQuiver {
            group,
            ram,
            labels,
            quiver,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ramification(&self) -> &RamificationData {
        &self.ram
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn label(&self, arrow: usize) -> HopfArrow {
        self.labels[arrow]
    }

    /// Arrow id for a label, if it exists.
    pub fn arrow_id(&self, label: HopfArrow) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }
}

impl std::ops::Deref for HopfQuiver {
    type Target = Quiver;
    fn deref(&self) -> &Quiver {
        &self.quiver
    }
}

/// Outcome of [`recognize_hopf_quiver`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Hopf(RamificationData),
    /// `count(x -> c x) != count(1 -> c')` for `c'` conjugate to `c`.
    NotHopf {
        pair: (usize, usize),
        count: usize,
        reference_pair: (usize, usize),
        reference_count: usize,
    },
}

/// Decides whether `quiver`, with vertex `v` labelled by group element
/// `labeling[v]`, is the Hopf quiver of some ramification datum.
pub fn recognize_hopf_quiver(
    quiver: &Quiver,
    group: &FiniteGroup,
    labeling: &[usize],
) -> Result<Recognition, QuiverError> {
    let n = group.order();
    if quiver.vertex_count() != n {
        return Err(QuiverError::VertexCountMismatch {
            vertices: quiver.vertex_count(),
            group: n,
        });
    }
    if labeling.len() != n {
        return Err(QuiverError::BadLabeling);
    }
    let mut vertex_of = vec![usize::MAX; n];
    for (v, &g) in labeling.iter().enumerate() {
        if g >= n || vertex_of[g] != usize::MAX {
            return Err(QuiverError::BadLabeling);
        }
        vertex_of[g] = v;
    }
    let count = |x: usize, y: usize| quiver.count_between(vertex_of[x], vertex_of[y]);
    let e = group.identity();
    let mut ram = RamificationData::zero(group);
    for (ci, class) in group.classes().iter().enumerate() {
        let rep = class[0];
        let reference = count(e, rep);
        for &c in class {
            for x in group.elements() {
                let cx = group.mul(c, x);
                let k = count(x, cx);
                if k != reference {
                    return Ok(Recognition::NotHopf {
                        pair: (x, cx),
                        count: k,
                        reference_pair: (e, rep),
                        reference_count: reference,
                    });
                }
            }
        }
        ram.multiplicities[ci] = reference;
    }
    Ok(Recognition::Hopf(ram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::groups::{cyclic, symmetric};

    fn z2_loop() -> HopfQuiver {
        let g = cyclic(2);
        let r = RamificationData::from_reps(&g, &[(1, 1)]).unwrap();
        HopfQuiver::new(g, r).unwrap()
    }

    #[test]
    fn z2_quiver() {
        let q = z2_loop();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrows(), &[ArrowEnds { source: 0, target: 1 }, ArrowEnds { source: 1, target: 0 }]);
        let counts: Vec<usize> = q.paths_up_to(2).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![2, 2, 2]);
        assert_eq!(q.connected_components().count(), 1);
    }

    #[test]
    fn empty_ramification() {
        let g = symmetric(3);
        let q = HopfQuiver::new(g.clone(), RamificationData::zero(&g)).unwrap();
        assert_eq!(q.arrow_count(), 0);
        assert_eq!(q.paths_up_to(0)[0].len(), 6);
        assert!(q.paths_up_to(5)[1..].iter().all(Vec::is_empty));
        assert_eq!(q.connected_components().count(), 6);
        let dot = q.to_dot(|v| v.to_string());
        assert_eq!(dot.matches("->").count(), 0);
    }

    #[test]
    fn s3_transposition_quiver() {
        let g = symmetric(3);
        let t = g.classes().iter().position(|c| c.len() == 3).unwrap();
        let mut r = RamificationData::zero(&g);
        r.multiplicities[t] = 1;
        let q = HopfQuiver::new(g, r).unwrap();
        assert_eq!(q.arrow_count(), 18);
        assert_eq!(q.to_dot(|v| v.to_string()).matches("->").count(), 18);
    }

    #[test]
    fn z4_components_are_cosets() {
        let g = cyclic(4);
        let r = RamificationData::from_reps(&g, &[(2, 1)]).unwrap();
        let q = HopfQuiver::new(g, r).unwrap();
        let comps = q.connected_components();
        assert_eq!(comps.parts, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn path_helpers() {
        let q = z2_loop();
        let p = Path::from_arrows(&q, &[0, 1, 0]).unwrap();
        assert_eq!(p.target(&q), 1);
        assert_eq!(p.slice(&q, 1, 2), Path::arrow(&q, 1));
        assert!(Path::from_arrows(&q, &[0, 0]).is_none());
        assert!(Path::vertex(1) < Path::arrow(&q, 0));
    }

    #[test]
    fn recognition() {
        let q = z2_loop();
        let g = q.group().clone();
        assert_eq!(
            recognize_hopf_quiver(q.quiver(), &g, &[0, 1]).unwrap(),
            Recognition::Hopf(q.ramification().clone())
        );

        let one_way = Quiver::new(2, vec![ArrowEnds { source: 0, target: 1 }]);
        match recognize_hopf_quiver(&one_way, &g, &[0, 1]).unwrap() {
            Recognition::NotHopf { count, reference_count, .. } => {
                assert_ne!(count, reference_count);
            }
            other => panic!("expected failure, got {other:?}"),
        }

        let e = |s, t| ArrowEnds { source: s, target: t };
        let kronecker = Quiver::new(2, vec![e(0, 1), e(0, 1), e(1, 0), e(1, 0)]);
        assert_eq!(
            recognize_hopf_quiver(&kronecker, &g, &[0, 1]).unwrap(),
            Recognition::Hopf(RamificationData { multiplicities: vec![0, 2] })
        );

        assert!(matches!(
            recognize_hopf_quiver(&Quiver::new(3, vec![]), &g, &[0, 1, 2]),
            Err(QuiverError::VertexCountMismatch { .. })
        ));
        assert_eq!(
            recognize_hopf_quiver(&one_way, &g, &[1, 1]).unwrap_err(),
            QuiverError::BadLabeling
        );
    }
}
