//! Indecomposables within a dimension bound, with Hom/Ext tables and tags.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::homology::{ext_dims, gldim, id, pd};
use crate::quiver::DimVector;
use crate::rep::{ext1_classes, factor_morphism, hom_basis, hom_dim, indecomposable_iso, indecomposable_summands, Representation};

use super::classes::classify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Exhaustive,
    BoundedHeuristic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tags {
    pub in_l: bool,
    pub in_r: bool,
    pub in_p: bool,
    pub ext_injective_in_l: bool,
    pub ext_projective_in_r: bool,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub module: Arc<Representation>,
    pub name: String,
    /// `None` when the resolution exceeded the divergence guard.
    pub pd: Option<usize>,
    pub id: Option<usize>,
    pub tags: Tags,
}

#[derive(Clone, Debug)]
pub struct ModuleCatalog {
    algebra: Arc<Algebra>,
    bound: DimVector,
    entries: Vec<CatalogEntry>,
    hom: Vec<Vec<usize>>,
    /// `ext[n - 1][i][j] = dim Extⁿ(Xᵢ, Xⱼ)`
    ext: Vec<Vec<Vec<usize>>>,
    gldim: Option<usize>,
    status: Completeness,
}

impl ModuleCatalog {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &CatalogEntry {
        &self.entries[i]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn status(&self) -> Completeness {
        self.status
    }

    pub fn is_exhaustive(&self) -> bool {
        self.status == Completeness::Exhaustive
    }

    pub fn gldim(&self) -> Option<usize> {
        self.gldim
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    /// `dim Extⁿ(Xᵢ, Xⱼ)` for `n ≥ 1`; zero beyond the computed depth.
    pub fn ext(&self, n: usize, i: usize, j: usize) -> usize {
        if n == 0 {
            return self.hom[i][j];
        }
        self.ext.get(n - 1).map_or(0, |t| t[i][j])
    }

    /// Highest `n` with a computed `Extⁿ` table.
    pub fn ext_depth(&self) -> usize {
        self.ext.len()
    }

    pub fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.entries[i].name.clone()).collect()
    }

    pub fn indices_where(&self, f: impl Fn(&CatalogEntry) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| f(&self.entries[i])).collect()
    }

    /// Index of the entry isomorphic to an indecomposable `m`.
    pub fn find(&self, m: &Representation) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| indecomposable_iso(&e.module, m).unwrap_or(false))
    }

    /// Multiplicity of each entry in `m`, if every summand is in the catalog.
    pub fn multiplicities(&self, m: &Representation) -> Result<Option<Vec<usize>>> {
        let mut counts = vec![0; self.len()];
        for s in indecomposable_summands(m)? {
            match self.find(&s) {
                Some(i) => counts[i] += 1,
                None => return Ok(None),
            }
        }
        Ok(Some(counts))
    }

    /// `⊕ Xᵢ^{mᵢ}`.
    pub fn direct_sum(&self, mults: &[usize]) -> Representation {
        let parts: Vec<&Representation> = mults
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(self.entries[i].module.as_ref(), m))
            .collect();
        crate::rep::direct_sum_in(self.algebra.quiver(), &parts).expect("entries share the quiver")
    }

    pub fn dims_of(&self, mults: &[usize]) -> DimVector {
        mults
            .iter()
            .enumerate()
            .fold(DimVector::zero(self.algebra.num_vertices()), |acc, (i, &m)| {
                acc.add(&self.entries[i].module.dims().scaled(m))
            })
    }

    /// Additive extension of the Hom table: `dim Hom(⊕ Xᵢ^{aᵢ}, ⊕ Xⱼ^{bⱼ})`.
    pub fn hom_sum(&self, a: &[usize], b: &[usize]) -> usize {
        self.sum_table(a, b, |i, j| self.hom[i][j])
    }

    pub fn ext_sum(&self, n: usize, a: &[usize], b: &[usize]) -> usize {
        self.sum_table(a, b, |i, j| self.ext(n, i, j))
    }

    fn sum_table(&self, a: &[usize], b: &[usize], f: impl Fn(usize, usize) -> usize) -> usize {
        let mut total = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj > 0 {
                    total += ai * bj * f(i, j);
                }
            }
        }
        total
    }

    /// Name of a multiset of entries, e.g. `S(3) + 2 P(1)`.
    pub fn describe(&self, mults: &[usize]) -> String {
        let parts: Vec<String> = mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| {
                if m == 1 {
                    self.entries[i].name.clone()
                } else {
                    format!("{m} {}", self.entries[i].name)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Stable plain-text listing of entries, tags and tables.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "status: {}", match self.status {
            Completeness::Exhaustive => "exhaustive",
            Completeness::BoundedHeuristic => "bounded-heuristic",
        });
        let _ = writeln!(s, "bound: {}", self.bound);
        let _ = writeln!(s, "entries: {}", self.len());
        for (i, e) in self.entries.iter().enumerate() {
            let fmt_dim = |d: Option<usize>| d.map_or("inf".to_string(), |v| v.to_string());
            let t = &e.tags;
            let mut tags = Vec::new();
            for (on, name) in [
                (t.in_l, "L"),
                (t.in_r, "R"),
                (t.in_p, "P"),
                (t.ext_injective_in_l, "J"),
                (t.ext_projective_in_r, "Q"),
                (t.projective, "proj"),
                (t.injective, "inj"),
            ] {
                if on {
                    tags.push(name);
                }
            }
            let _ = writeln!(
                s,
                "{i}: {} dim {} pd {} id {} tags {}",
                e.name,
                e.module.dims(),
                fmt_dim(e.pd),
                fmt_dim(e.id),
                tags.join(",")
            );
        }
        let table = |s: &mut String, title: &str, t: &dyn Fn(usize, usize) -> usize| {
            let _ = writeln!(s, "{title}:");
            for i in 0..self.len() {
                let row: Vec<String> = (0..self.len()).map(|j| t(i, j).to_string()).collect();
                let _ = writeln!(s, "  {}", row.join(" "));
            }
        };
        table(&mut s, "hom", &|i, j| self.hom[i][j]);
        for n in 1..=self.ext.len() {
            table(&mut s, &format!("ext{n}"), &|i, j| self.ext(n, i, j));
        }
        s
    }
}

#[derive(Serialize)]
struct EntryExport<'a> {
    name: &'a str,
    dims: &'a DimVector,
    pd: Option<usize>,
    id: Option<usize>,
    tags: Tags,
}

#[derive(Serialize)]
struct CatalogExport<'a> {
    status: Completeness,
    bound: &'a DimVector,
    gldim: Option<usize>,
    entries: Vec<EntryExport<'a>>,
    hom: &'a Vec<Vec<usize>>,
    ext: &'a Vec<Vec<Vec<usize>>>,
}

impl Serialize for ModuleCatalog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CatalogExport {
            status: self.status,
            bound: &self.bound,
            gldim: self.gldim,
            entries: self
                .entries
                .iter()
                .map(|e| EntryExport {
                    name: &e.name,
                    dims: e.module.dims(),
                    pd: e.pd,
                    id: e.id,
                    tags: e.tags,
                })
                .collect(),
            hom: &self.hom,
            ext: &self.ext,
        }
        .serialize(s)
    }
}

/// Acyclic, monomial, at most one arrow in and out of every vertex.
fn is_linear_nakayama(alg: &Algebra) -> bool {
    let q = alg.quiver();
    if !q.is_acyclic() || !q.is_monomial() {
        return false;
    }
    (0..q.num_vertices()).all(|x| {
        q.arrows().iter().filter(|a| a.source == x).count() <= 1
            && q.arrows().iter().filter(|a| a.target == x).count() <= 1
    })
}

struct Builder<'a> {
    bound: &'a DimVector,
    modules: Vec<Arc<Representation>>,
}

impl Builder<'_> {
    fn adjoin(&mut self, m: &Representation) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        for s in indecomposable_summands(m)? {
            if !s.dims().le(self.bound) {
                continue;
            }
            let known = self
                .modules
                .iter()
                .any(|e| e.dims() == s.dims() && indecomposable_iso(e, &s).unwrap_or(false));
            if !known {
                self.modules.push(Arc::new(s));
            }
        }
        Ok(())
    }
}

fn standard_name(alg: &Algebra, m: &Representation) -> Option<String> {
    let n = alg.num_vertices();
    for (letter, family) in [
        ('S', alg.simples()),
        ('P', alg.projectives()),
        ('I', alg.injectives()),
    ] {
        for (x, s) in family.iter().enumerate().take(n) {
            if s.dims() == m.dims() && indecomposable_iso(s, m).unwrap_or(false) {
                return Some(format!("{letter}({})", alg.vertex_name(x)));
            }
        }
    }
    None
}

/// Fixpoint closure from the standard modules under kernels, images and
/// cokernels of basis morphisms and middle terms of basis extensions.
pub fn build_catalog(algebra: Arc<Algebra>, bound: &DimVector) -> Result<ModuleCatalog> {
    let alg = algebra.as_ref();
    let mut b = Builder {
        bound,
        modules: Vec::new(),
    };
    for family in [alg.projectives(), alg.injectives(), alg.simples()] {
        for m in family {
            b.adjoin(m)?;
        }
    }
    let mut done = 0;
    while done < b.modules.len() {
        let count = b.modules.len();
        let snapshot = b.modules.clone();
        for i in 0..count {
            for j in 0..count {
                if i < done && j < done {
                    continue;
                }
                let (x, y) = (&snapshot[i], &snapshot[j]);
                for f in hom_basis(x, y)? {
                    let fac = factor_morphism(&f);
                    b.adjoin(&fac.kernel)?;
                    b.adjoin(&fac.image)?;
                    b.adjoin(&fac.cokernel)?;
                }
                for seq in ext1_classes(x, y)? {
                    b.adjoin(seq.e())?;
                }
            }
        }
        done = count;
    }

    let mut modules = b.modules;
    modules.sort_by(|a, c| {
        (a.total_dim(), &a.dims().0)
            .cmp(&(c.total_dim(), &c.dims().0))
            .then_with(|| a.canonical_key().cmp(&c.canonical_key()))
    });

    let nakayama_count: usize = alg.projectives().iter().map(|p| p.total_dim()).sum();
    let status = if is_linear_nakayama(alg) && modules.len() == nakayama_count {
        Completeness::Exhaustive
    } else {
        Completeness::BoundedHeuristic
    };

    let g = gldim(alg).ok();
    let depth = g.unwrap_or(3).max(1);
    let n = modules.len();
    let mut hom = vec![vec![0; n]; n];
    let mut ext = vec![vec![vec![0; n]; n]; depth];
    for i in 0..n {
        for j in 0..n {
            match ext_dims(alg, &modules[i], &modules[j], depth) {
                Ok(dims) => {
                    hom[i][j] = dims[0];
                    for k in 1..=depth {
                        ext[k - 1][i][j] = dims[k];
                    }
                }
                Err(_) => {
                    hom[i][j] = hom_dim(&modules[i], &modules[j])?;
                }
            }
        }
    }

    let mut entries: Vec<CatalogEntry> = Vec::with_capacity(n);
    for (k, m) in modules.into_iter().enumerate() {
        let name = standard_name(alg, &m).unwrap_or_else(|| format!("X{}", k + 1));
        entries.push(CatalogEntry {
            pd: pd(alg, &m).ok(),
            id: id(alg, &m).ok(),
            module: m,
            name,
            tags: Tags::default(),
        });
    }
    let mut catalog = ModuleCatalog {
        algebra,
        bound: bound.clone(),
        entries,
        hom,
        ext,
        gldim: g,
        status,
    };
    let tags = classify(&catalog);
    for (e, t) in catalog.entries.iter_mut().zip(tags) {
        e.tags = t;
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn catalog(q: crate::quiver::BoundQuiver, bound: usize) -> ModuleCatalog {
        let n = q.num_vertices();
        build_catalog(Arc::new(Algebra::new(q).unwrap()), &DimVector(vec![bound; n])).unwrap()
    }

    #[test]
    fn fixture_catalogs_are_exhaustive() {
        let a2 = catalog(fixtures::a2(), 2);
        assert_eq!(a2.len(), 3);
        assert!(a2.is_exhaustive());
        let a3r = catalog(fixtures::a3r(), 2);
        assert_eq!(a3r.len(), 5);
        assert!(a3r.is_exhaustive());
        let n4 = catalog(fixtures::n4(), 2);
        assert_eq!(n4.len(), 7);
        assert!(n4.is_exhaustive());
        let names: Vec<&str> = n4.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["S(4)", "S(3)", "S(2)", "S(1)", "P(3)", "P(2)", "P(1)"]);
    }

    #[test]
    fn non_nakayama_catalog_is_heuristic() {
        let q = crate::quiver::parse_bound_quiver(
            "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation: b*a - d*c\n",
        )
        .unwrap();
        let c = catalog(q, 1);
        assert_eq!(c.status(), Completeness::BoundedHeuristic);
        assert!(c.len() >= 4);
    }

    #[test]
    fn export_is_stable() {
        let a = catalog(fixtures::n4(), 2).to_text();
        let b = catalog(fixtures::n4(), 2).to_text();
        assert_eq!(a, b);
        assert!(a.starts_with("status: exhaustive\n"));
    }
}
