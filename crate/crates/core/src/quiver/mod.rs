//! Bound quivers: vertices, arrows, relations and the paths between them.
//!
//! Paths compose right to left: the path `b*a` first follows `a`, then `b`,
//! and a representation evaluates it as `M_b · M_a`. Arrows inside a [`Path`]
//! are stored in that written order.

mod ideal;
pub(crate) mod parse;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Scalar;

pub use ideal::{validate_admissible, AdmissibilityReport, PathBasis};
pub use parse::parse_bound_quiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A path `α₁⋯αₙ` (αₙ applied first), or the trivial path at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    /// Builds a path from arrows in written (composition) order.
    pub fn new(quiver: &BoundQuiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&last) = arrows.last() else {
            return Err(Error::BrokenPath("empty".into()));
        };
        for w in arrows.windows(2) {
            if quiver.arrows[w[0]].source != quiver.arrows[w[1]].target {
                return Err(Error::BrokenPath(
                    arrows
                        .iter()
                        .map(|&a| quiver.arrows[a].id.as_str())
                        .collect::<Vec<_>>()
                        .join("*"),
                ));
            }
        }
        Ok(Path {
            source: quiver.arrows[last].source,
            target: quiver.arrows[arrows[0]].target,
            arrows,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `self ∘ first`: follow `first`, then `self`.
    pub fn after(&self, first: &Path) -> Option<Path> {
        if first.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&first.arrows);
        Some(Path {
            source: first.source,
            target: self.target,
            arrows,
        })
    }

    /// Vertices visited strictly between the endpoints.
    pub fn inner_vertices(&self, quiver: &BoundQuiver) -> Vec<usize> {
        self.arrows
            .iter()
            .skip(1)
            .map(|&a| quiver.arrows[a].target)
            .collect()
    }

    pub fn display(&self, quiver: &BoundQuiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", quiver.vertices[self.source]);
        }
        self.arrows
            .iter()
            .map(|&a| quiver.arrows[a].id.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }
}

/// A linear combination of pairwise distinct paths with common endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(quiver: &BoundQuiver, terms: Vec<(Scalar, Path)>) -> Result<Self> {
        let rel = Relation { terms };
        let name = rel.display(quiver);
        let Some((_, first)) = rel.terms.first() else {
            return Err(Error::RelationTooShort(name));
        };
        if rel.terms.iter().any(|(_, p)| p.len() < 2) {
            return Err(Error::RelationTooShort(name));
        }
        if rel
            .terms
            .iter()
            .any(|(_, p)| p.source != first.source || p.target != first.target)
        {
            return Err(Error::MixedEndpoints(name));
        }
        if rel.terms.iter().any(|(c, _)| c.is_zero()) {
            return Err(Error::Syntax {
                line: 0,
                column: 0,
                message: format!("zero coefficient in relation `{name}`"),
            });
        }
        let distinct: BTreeSet<&Path> = rel.terms.iter().map(|(_, p)| p).collect();
        if distinct.len() != rel.terms.len() {
            return Err(Error::Syntax {
                line: 0,
                column: 0,
                message: format!("repeated path in relation `{name}`"),
            });
        }
        Ok(rel)
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.len() == self.terms[0].1.len())
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn display(&self, quiver: &BoundQuiver) -> String {
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return self.terms[0].1.display(quiver);
        }
        self.terms
            .iter()
            .map(|(c, p)| format!("{} {}", c, p.display(quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Per-vertex dimensions, aligned with the vertex order of the ambient quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, x: usize) -> Self {
        let mut d = vec![0; n];
        d[x] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// `dim GL(d) = Σ d_x²`.
    pub fn gl_dim(&self) -> usize {
        self.0.iter().map(|d| d * d).sum()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|d| d * k).collect())
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&d| d as i64).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl BoundQuiver {
    /// Builds a quiver from vertex ids, `(id, source, target)` arrow triples and
    /// relations written as `(coefficient, arrow ids in composition order)` terms.
    pub fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<(Scalar, Vec<String>)>>,
    ) -> Result<Self> {
        let mut q = BoundQuiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        };
        for v in vertices {
            if q.vertices.contains(&v) {
                return Err(Error::DuplicateId(v));
            }
            q.vertices.push(v);
        }
        for (id, s, t) in arrows {
            if q.arrows.iter().any(|a| a.id == id) || q.vertices.contains(&id) {
                return Err(Error::DuplicateId(id));
            }
            let source = q.vertex_index(&s)?;
            let target = q.vertex_index(&t)?;
            q.arrows.push(Arrow { id, source, target });
        }
        for terms in relations {
            let mut rel_terms = Vec::new();
            for (c, ids) in terms {
                let arrows = ids
                    .iter()
                    .map(|id| q.arrow_index(id))
                    .collect::<Result<Vec<_>>>()?;
                rel_terms.push((c, Path::new(&q, arrows)?));
            }
            let rel = Relation::new(&q, rel_terms)?;
            q.relations.push(rel);
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn dim_vector(&self, dims: &[usize]) -> Result<DimVector> {
        if dims.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                self.vertices.len(),
                dims.len()
            )));
        }
        Ok(DimVector(dims.to_vec()))
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Relation::is_homogeneous)
    }

    /// All paths of length `1..=max_len`, in order of length then arrow sequence.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = (0..self.arrows.len())
            .map(|a| Path {
                source: self.arrows[a].source,
                target: self.arrows[a].target,
                arrows: vec![a],
            })
            .collect();
        for _ in 0..max_len {
            if frontier.is_empty() {
                break;
            }
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == p.target {
                        let mut arrows = vec![a];
                        arrows.extend_from_slice(&p.arrows);
                        next.push(Path {
                            source: p.source,
                            target: arrow.target,
                            arrows,
                        });
                    }
                }
            }
            next.sort();
            frontier = next;
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path().is_some()
    }

    /// Length of the longest path, or `None` if there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut depth = vec![0usize; n];
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                depth[a.target] = depth[a.target].max(depth[v] + 1);
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    /// Full subquiver on `verts` with the relations living inside it.
    ///
    /// Fails with a witness path when some path between two chosen vertices
    /// passes through a vertex outside the subset.
    pub fn convex_subquiver(&self, verts: &[usize]) -> Result<BoundQuiver> {
        let inside: BTreeSet<usize> = verts.iter().copied().collect();
        if let Some(w) = self.convexity_witness(&inside) {
            return Err(Error::NotConvex(w));
        }
        let keep_v: Vec<usize> = (0..self.vertices.len())
            .filter(|v| inside.contains(v))
            .collect();
        let vertices = keep_v.iter().map(|&v| self.vertices[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| inside.contains(&a.source) && inside.contains(&a.target))
            .map(|a| {
                (
                    a.id.clone(),
                    self.vertices[a.source].clone(),
                    self.vertices[a.target].clone(),
                )
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .filter(|r| inside.contains(&r.source()) && inside.contains(&r.target()))
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| {
                        (
                            c.clone(),
                            p.arrows.iter().map(|&a| self.arrows[a].id.clone()).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        BoundQuiver::from_parts(vertices, arrows, relations)
    }

    fn convexity_witness(&self, inside: &BTreeSet<usize>) -> Option<String> {
        // Shortest path from an inside vertex that leaves the subset and returns.
        for &start in inside {
            let mut prev: Vec<Option<usize>> = vec![None; self.vertices.len()];
            let mut visited = vec![false; self.vertices.len()];
            let mut queue = VecDeque::new();
            for (a, arrow) in self.arrows.iter().enumerate() {
                if arrow.source == start && !inside.contains(&arrow.target) && !visited[arrow.target] {
                    visited[arrow.target] = true;
                    prev[arrow.target] = Some(a);
                    queue.push_back(arrow.target);
                }
            }
            while let Some(v) = queue.pop_front() {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source != v {
                        continue;
                    }
                    if inside.contains(&arrow.target) {
                        let mut arrows = vec![a];
                        let mut cur = v;
                        while !inside.contains(&cur) {
                            let pa = prev[cur].expect("outside vertices are reached by an arrow");
                            arrows.push(pa);
                            cur = self.arrows[pa].source;
                        }
                        return Some(
                            arrows
                                .iter()
                                .map(|&x| self.arrows[x].id.as_str())
                                .collect::<Vec<_>>()
                                .join("*"),
                        );
                    }
                    if !visited[arrow.target] {
                        visited[arrow.target] = true;
                        prev[arrow.target] = Some(a);
                        queue.push_back(arrow.target);
                    }
                }
            }
        }
        None
    }

    /// The opposite quiver: every arrow reversed, every relation path reversed.
    pub fn opposite(&self) -> BoundQuiver {
        BoundQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
                })
                .collect(),
        }
    }

    /// Canonical text form, parsed back to an equal quiver.
    pub fn to_text(&self) -> String {
        let mut s = String::from("convention: right-to-left\n");
        s.push_str("vertices:");
        for v in &self.vertices {
            s.push(' ');
            s.push_str(v);
        }
        s.push('\n');
        for a in &self.arrows {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.id, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for r in &self.relations {
            s.push_str(&format!("relation: {}\n", r.display(self)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn longest_path_and_cycles() {
        let n4 = fixtures::n4();
        assert_eq!(n4.longest_path(), Some(3));
        let cyc = parse_bound_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation: a*b\nrelation: b*a\n").unwrap();
        assert!(!cyc.is_acyclic());
    }

    #[test]
    fn convex_subquivers() {
        let n4 = fixtures::n4();
        let sub = n4.convex_subquiver(&[1, 2, 3]).unwrap();
        assert_eq!(sub.vertices(), &["2", "3", "4"]);
        assert_eq!(sub.relations().len(), 1);
        assert_eq!(sub.relations()[0].display(&sub), "c*b");
        let sub = n4.convex_subquiver(&[0, 1]).unwrap();
        assert_eq!(sub.arrows().len(), 1);
        assert!(sub.relations().is_empty());
        let a3r = fixtures::a3r();
        match a3r.convex_subquiver(&[0, 2]) {
            Err(Error::NotConvex(w)) => assert_eq!(w, "b*a"),
            other => panic!("expected convexity error, got {other:?}"),
        }
        assert_eq!(n4.convex_subquiver(&[0, 1, 2, 3]).unwrap(), n4);
    }

    #[test]
    fn opposite_is_involutive() {
        let n4 = fixtures::n4();
        assert_eq!(n4.opposite().opposite(), n4);
        let op = n4.opposite();
        assert_eq!(op.relations()[0].display(&op), "a*b");
    }

    #[test]
    fn relations_have_common_endpoints_and_length_two() {
        for q in [fixtures::a2(), fixtures::a3r(), fixtures::n4()] {
            for r in q.relations() {
                assert!(r.terms().iter().all(|(_, p)| p.len() >= 2));
                assert!(r
                    .terms()
                    .iter()
                    .all(|(_, p)| p.source() == r.source() && p.target() == r.target()));
            }
        }
    }
}
