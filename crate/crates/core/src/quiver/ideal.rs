//! The relation ideal inside the path algebra, truncated at a path length.
//!
//! Paths longer than the truncation length are treated as zero. That is exact
//! when the relations are homogeneous, or when the quiver is acyclic and the
//! truncation covers its longest path; otherwise reports carry `exact = false`.

use std::collections::HashMap;

use num::Zero;
use serde::Serialize;

use super::{BoundQuiver, Path, Relation};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

/// Row-reduced spanning set of the relation ideal in the span of short paths.
struct TruncatedIdeal {
    columns: Vec<Path>,
    index: HashMap<Path, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl TruncatedIdeal {
    fn new(q: &BoundQuiver, relations: &[&Relation], max_len: usize) -> Self {
        let mut columns: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
        columns.extend(q.paths_up_to(max_len));
        // Longest paths first, so leading terms of ideal elements are long
        // paths and the residue basis prefers short ones.
        columns.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Path, usize> =
            columns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        for rel in relations {
            let room = max_len.saturating_sub(rel.min_len());
            if rel.min_len() > max_len {
                continue;
            }
            let lefts: Vec<&Path> = columns
                .iter()
                .filter(|u| u.source() == rel.target() && u.len() <= room)
                .collect();
            for u in &lefts {
                for v in columns
                    .iter()
                    .filter(|v| v.target() == rel.source() && v.len() + u.len() <= room)
                {
                    let mut row = vec![Scalar::zero(); columns.len()];
                    let mut any = false;
                    for (c, p) in rel.terms() {
                        let full = u.after(&p.after(v).expect("endpoints match")).expect("endpoints match");
                        if let Some(&i) = index.get(&full) {
                            row[i] += c;
                            any = true;
                        }
                    }
                    if any {
                        gens.push(row);
                    }
                }
            }
        }
        let mut m = Matrix::zeros(gens.len(), columns.len());
        for (r, row) in gens.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m[(r, c)] = v.clone();
                }
            }
        }
        let ech = m.echelon();
        let rows = ech.reduced.select_rows(&(0..ech.pivots.len()).collect::<Vec<_>>());
        TruncatedIdeal {
            columns,
            index,
            rows,
            pivots: ech.pivots,
        }
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in self.rows.row(i).iter().enumerate() {
                if !x.is_zero() {
                    v[c] -= &f * x;
                }
            }
        }
    }

    fn vector(&self, terms: &[(Scalar, Path)]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.columns.len()];
        for (c, p) in terms {
            if let Some(&i) = self.index.get(p) {
                v[i] += c;
            }
        }
        v
    }

    fn contains(&self, terms: &[(Scalar, Path)]) -> bool {
        let mut v = self.vector(terms);
        self.reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub max_len: usize,
    /// Least `n` with every path of length `>= n` in the ideal, if witnessed.
    pub bound: Option<usize>,
    /// Whether the truncated computation is exact for this quiver.
    pub exact: bool,
    pub minimal: bool,
    /// Relations lying in the ideal generated by the others.
    pub redundant: Vec<String>,
}

pub fn validate_admissible(q: &BoundQuiver, max_len: usize) -> AdmissibilityReport {
    let max_len = max_len.max(1);
    let all: Vec<&Relation> = q.relations().iter().collect();
    let ideal = TruncatedIdeal::new(q, &all, max_len);
    let exact = q.is_homogeneous() || q.longest_path().is_some_and(|l| l <= max_len);

    let bound = (1..=max_len).find(|&n| {
        ideal
            .columns
            .iter()
            .filter(|p| p.len() == n)
            .all(|p| ideal.contains(&[(Scalar::from_integer(1.into()), p.clone())]))
    });

    let mut redundant = Vec::new();
    for (i, rel) in q.relations().iter().enumerate() {
        let others: Vec<&Relation> = q
            .relations()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r)
            .collect();
        let sub = TruncatedIdeal::new(q, &others, max_len);
        if sub.contains(rel.terms()) {
            redundant.push(rel.display(q));
        }
    }

    AdmissibilityReport {
        max_len,
        bound,
        exact,
        minimal: redundant.is_empty(),
        redundant,
    }
}

/// Residue classes of paths forming a basis of `kΔ/⟨𝔯⟩`, with normal forms.
#[derive(Clone, Debug)]
pub struct PathBasis {
    bound: usize,
    basis: Vec<Path>,
    position: HashMap<Path, usize>,
    columns: Vec<Path>,
    index: HashMap<Path, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
    exact: bool,
}

impl PathBasis {
    pub fn new(q: &BoundQuiver, max_len: usize) -> Result<Self> {
        let report = validate_admissible(q, max_len);
        let bound = report.bound.ok_or(Error::NotAdmissible(max_len))?;
        let all: Vec<&Relation> = q.relations().iter().collect();
        let ideal = TruncatedIdeal::new(q, &all, bound - 1);
        let mut basis: Vec<Path> = ideal
            .columns
            .iter()
            .enumerate()
            .filter(|(i, _)| !ideal.pivots.contains(i))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let position = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PathBasis {
            bound,
            basis,
            position,
            columns: ideal.columns,
            index: ideal.index,
            rows: ideal.rows,
            pivots: ideal.pivots,
            exact: report.exact,
        })
    }

    /// Every path of length at least this lies in the ideal.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn paths(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        self.position.get(p).copied()
    }

    /// Basis paths from `x` to `y`, in basis order.
    pub fn paths_between(&self, x: usize, y: usize) -> Vec<&Path> {
        self.basis
            .iter()
            .filter(|p| p.source() == x && p.target() == y)
            .collect()
    }

    /// Coordinates of a linear combination of paths in the residue basis.
    pub fn normal_form(&self, terms: &[(Scalar, Path)]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.columns.len()];
        for (c, p) in terms {
            if let Some(&i) = self.index.get(p) {
                v[i] += c;
            }
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in self.rows.row(i).iter().enumerate() {
                if !x.is_zero() {
                    v[c] -= &f * x;
                }
            }
        }
        let mut out = vec![Scalar::zero(); self.basis.len()];
        for (i, p) in self.columns.iter().enumerate() {
            if !v[i].is_zero() {
                let pos = self.position[p];
                out[pos] = v[i].clone();
            }
        }
        out
    }
}
