//! Hom-order tests, extension witnesses and enumeration of the boundary of
//! an orbit closure by multisets of catalog entries.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{int, Scalar};
use crate::quiver::DimVector;
use crate::rep::{
    combine_cocycles, decompose, direct_sum_in, ext1_cocycle_basis, extension_from_cocycle, hom_dim, is_isomorphic,
    Representation, ShortExactSeq,
};
use crate::shod::ModuleCatalog;

/// Limits on the boundary search of a single orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Multisets with the right dimension vector that may be examined.
    pub max_candidates: usize,
    /// Extensions that may be built while looking for witnesses.
    pub max_extensions: usize,
}

impl Budget {
    pub const LOW: Budget = Budget {
        max_candidates: 20,
        max_extensions: 500,
    };
    pub const DEFAULT: Budget = Budget {
        max_candidates: 20_000,
        max_extensions: 200_000,
    };
    pub const HIGH: Budget = Budget {
        max_candidates: 500_000,
        max_extensions: 5_000_000,
    };

    /// `low`, `default`, `high`, or a candidate count.
    pub fn parse(s: &str) -> Option<Budget> {
        match s {
            "low" => Some(Budget::LOW),
            "default" | "medium" => Some(Budget::DEFAULT),
            "high" => Some(Budget::HIGH),
            _ => s.parse::<usize>().ok().filter(|&n| n > 0).map(|n| Budget {
                max_candidates: n,
                max_extensions: n.saturating_mul(10),
            }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Work counter charged against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    candidates: usize,
    extensions: usize,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            budget,
            candidates: 0,
            extensions: 0,
        }
    }

    fn candidate(&mut self) -> Result<()> {
        self.candidates += 1;
        if self.candidates > self.budget.max_candidates {
            return Err(Error::Budget(format!("more than {} candidates", self.budget.max_candidates)));
        }
        Ok(())
    }

    fn extension(&mut self) -> Result<()> {
        self.extensions += 1;
        if self.extensions > self.budget.max_extensions {
            return Err(Error::Budget(format!("more than {} extensions", self.budget.max_extensions)));
        }
        Ok(())
    }
}

/// Necessary condition for `M ≤deg N`: Hom into and out of every catalog
/// entry does not drop, and `End` strictly grows unless `M ≅ N`.
pub fn hom_order_leq(m: &Representation, n: &Representation, c: &ModuleCatalog) -> Result<bool> {
    if m.dims() != n.dims() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", m.dims(), n.dims())));
    }
    for e in c.entries() {
        let x = e.module.as_ref();
        if hom_dim(m, x)? > hom_dim(n, x)? || hom_dim(x, m)? > hom_dim(x, n)? {
            return Ok(false);
        }
    }
    if is_isomorphic(m, n) {
        return Ok(true);
    }
    Ok(hom_dim(m, m)? < hom_dim(n, n)?)
}

/// [`hom_order_leq`] on multiplicity vectors, read off the catalog tables.
pub(crate) fn hom_order_leq_mults(c: &ModuleCatalog, m: &[usize], n: &[usize]) -> bool {
    if m == n {
        return true;
    }
    let k = c.len();
    for x in 0..k {
        let unit: Vec<usize> = (0..k).map(|i| usize::from(i == x)).collect();
        if c.hom_sum(m, &unit) > c.hom_sum(n, &unit) || c.hom_sum(&unit, m) > c.hom_sum(&unit, n) {
            return false;
        }
    }
    c.hom_sum(m, m) < c.hom_sum(n, n)
}

const WITNESS_SEED: u64 = 0xde9e;
const GRID: i64 = 2;
const GRID_LIMIT: usize = 625;
const RANDOM_TRIES: usize = 64;

/// Coefficient vectors tried for an `Ext¹` space of dimension `k`: unit
/// vectors, then the whole grid `[−2, 2]ᵏ` when small, else random points.
fn coefficient_vectors(k: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    let side = (2 * GRID + 1) as usize;
    if side.checked_pow(k as u32).is_some_and(|s| s <= GRID_LIMIT) {
        let total = side.pow(k as u32);
        for idx in 0..total {
            let mut v = Vec::with_capacity(k);
            let mut r = idx;
            for _ in 0..k {
                v.push((r % side) as i64 - GRID);
                r /= side;
            }
            if v.iter().any(|&x| x != 0) && !out.contains(&v) {
                out.push(v);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED ^ k as u64);
        for _ in 0..RANDOM_TRIES {
            out.push((0..k).map(|_| rng.gen_range(-GRID..=GRID)).collect());
        }
    }
    out.into_iter().map(|v| v.into_iter().map(int).collect()).collect()
}

/// A non-split `0 → U → E → V → 0` with `E ≅ m`, searched over the
/// coefficient grid in `Ext¹(V, U)`.
pub(crate) fn witness_for_split(
    m: &Representation,
    u: &Representation,
    v: &Representation,
    meter: &mut Meter,
) -> Result<Option<ShortExactSeq>> {
    if u.is_zero() || v.is_zero() || u.dims().add(v.dims()) != *m.dims() {
        return Ok(None);
    }
    let basis = ext1_cocycle_basis(v, u)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for coeffs in coefficient_vectors(basis.len()) {
        if coeffs.iter().all(num::Zero::is_zero) {
            continue;
        }
        meter.extension()?;
        let z = combine_cocycles(&basis, &coeffs);
        let seq = extension_from_cocycle(v, u, &z)?;
        if is_isomorphic(seq.e(), m) {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Search over all splittings `N ≅ U ⊕ V` of a module given by its
/// indecomposable summands with multiplicities.
pub(crate) fn witness_over_parts(
    m: &Representation,
    parts: &[(&Representation, usize)],
    meter: &mut Meter,
) -> Result<Option<ShortExactSeq>> {
    let Some(first) = parts.first() else {
        return Ok(None);
    };
    let q = first.0.quiver().clone();
    let mut choice = vec![0usize; parts.len()];
    loop {
        let pick = |take: &dyn Fn(usize, usize) -> usize| -> Result<Representation> {
            let list: Vec<&Representation> = parts
                .iter()
                .enumerate()
                .flat_map(|(i, (r, cnt))| std::iter::repeat_n(*r, take(i, *cnt)))
                .collect();
            if list.is_empty() {
                Ok(Representation::zero(q.clone(), DimVector::zero(q.num_vertices())))
            } else {
                direct_sum_in(&q, &list)
            }
        };
        let u = pick(&|i, _| choice[i])?;
        let v = pick(&|i, cnt| cnt - choice[i])?;
        if let Some(seq) = witness_for_split(m, &u, &v, meter)? {
            return Ok(Some(seq));
        }
        // next choice vector
        let mut i = 0;
        loop {
            if i == parts.len() {
                return Ok(None);
            }
            if choice[i] < parts[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// A witness `0 → U → M → V → 0` with `U ⊕ V ≅ N`, if one is found by the
/// bounded search. `None` does not rule out `M ≤deg N`.
pub fn degeneration_witness(m: &Representation, n: &Representation) -> Result<Option<ShortExactSeq>> {
    m.check_same_quiver(n)?;
    if m.dims() != n.dims() || is_isomorphic(m, n) {
        return Ok(None);
    }
    let groups = decompose(n)?;
    let parts: Vec<(&Representation, usize)> = groups.iter().map(|(r, k)| (r, *k)).collect();
    witness_over_parts(m, &parts, &mut Meter::new(Budget::DEFAULT))
}

pub(crate) fn witness_mults(
    c: &ModuleCatalog,
    m: &Representation,
    n: &[usize],
    meter: &mut Meter,
) -> Result<Option<ShortExactSeq>> {
    let parts: Vec<(&Representation, usize)> = n
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| (c.entry(i).module.as_ref(), k))
        .collect();
    witness_over_parts(m, &parts, meter)
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Extension(ShortExactSeq),
    HomOrderOnly,
    Refuted,
}

impl Evidence {
    pub fn label(&self) -> &'static str {
        match self {
            Evidence::Extension(_) => "witnessed",
            Evidence::HomOrderOnly => "undecided",
            Evidence::Refuted => "refuted",
        }
    }

    pub fn witness(&self) -> Option<&ShortExactSeq> {
        match self {
            Evidence::Extension(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DegenerationEdge {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    /// Multiplicities of the target over the catalog.
    pub target_mults: Vec<usize>,
    pub target_name: String,
    pub end_dim: usize,
    /// `dim O(source) − dim O(target)`.
    pub codim: usize,
    pub evidence: Evidence,
    /// `None` when not decided.
    pub minimal: Option<bool>,
}

/// All multiplicity vectors over the catalog with total dimension `d`, in
/// lexicographic order.
pub(crate) fn multisets_with_dims(c: &ModuleCatalog, d: &DimVector, meter: &mut Meter) -> Result<Vec<Vec<usize>>> {
    fn rec(
        c: &ModuleCatalog,
        i: usize,
        rest: DimVector,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        meter: &mut Meter,
    ) -> Result<()> {
        if rest.is_zero() {
            meter.candidate()?;
            let mut v = cur.clone();
            v.resize(c.len(), 0);
            out.push(v);
            return Ok(());
        }
        if i == c.len() {
            return Ok(());
        }
        let dims = c.entry(i).module.dims();
        let mut left = rest;
        let mut k = 0;
        loop {
            cur.push(k);
            rec(c, i + 1, left.clone(), cur, out, meter)?;
            cur.pop();
            match left.checked_sub(dims) {
                Some(next) if !dims.is_zero() => {
                    left = next;
                    k += 1;
                }
                _ => break,
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(c, 0, d.clone(), &mut Vec::new(), &mut out, meter)?;
    Ok(out)
}

/// Proper degenerations of `M` among catalog multisets: every `N ≇ M` in
/// Hom-order above `M`, with a witness where the bounded search finds one.
/// Sorted by codimension, then by the target's multiplicity vector.
pub(crate) fn boundary(
    c: &ModuleCatalog,
    m: &Arc<Representation>,
    m_mults: &[usize],
    max_witness_codim: usize,
    meter: &mut Meter,
) -> Result<Vec<DegenerationEdge>> {
    let end_m = c.hom_sum(m_mults, m_mults);
    let mut edges = Vec::new();
    for n in multisets_with_dims(c, m.dims(), meter)? {
        if n.as_slice() == m_mults || !hom_order_leq_mults(c, m_mults, &n) {
            continue;
        }
        let end_dim = c.hom_sum(&n, &n);
        let witness = if end_dim - end_m <= max_witness_codim {
            witness_mults(c, m, &n, meter)?
        } else {
            None
        };
        let evidence = match witness {
            Some(seq) => Evidence::Extension(seq),
            None => Evidence::HomOrderOnly,
        };
        edges.push(DegenerationEdge {
            source: m.clone(),
            target: Arc::new(c.direct_sum(&n)),
            target_name: c.describe(&n),
            target_mults: n,
            end_dim,
            codim: end_dim - end_m,
            evidence,
            minimal: None,
        });
    }
    edges.sort_by(|a, b| (a.codim, &b.target_mults).cmp(&(b.codim, &a.target_mults)));
    Ok(edges)
}

/// Decide minimality among the edges: a witnessed edge is minimal when no
/// other witnessed `L` admits a witness `L <deg N`. Codimension one edges
/// are minimal by dimension count.
pub(crate) fn mark_minimal(c: &ModuleCatalog, edges: &mut [DegenerationEdge], meter: &mut Meter) -> Result<()> {
    let witnessed: Vec<usize> = (0..edges.len())
        .filter(|&i| matches!(edges[i].evidence, Evidence::Extension(_)))
        .collect();
    for &i in &witnessed {
        if edges[i].codim == 1 {
            edges[i].minimal = Some(true);
            continue;
        }
        let mut minimal = true;
        for &l in &witnessed {
            if l == i || edges[l].end_dim >= edges[i].end_dim {
                continue;
            }
            if !hom_order_leq_mults(c, &edges[l].target_mults, &edges[i].target_mults) {
                continue;
            }
            if witness_mults(c, &edges[l].target, &edges[i].target_mults, meter)?.is_some() {
                minimal = false;
                break;
            }
        }
        edges[i].minimal = Some(minimal);
    }
    Ok(())
}

/// The boundary of the orbit of `m` with evidence and minimality flags.
pub fn minimal_degenerations(m: &Representation, c: &ModuleCatalog, budget: Budget) -> Result<Vec<DegenerationEdge>> {
    let mults = c
        .multiplicities(m)?
        .ok_or_else(|| Error::CatalogIncomplete("module has a summand outside the catalog".into()))?;
    let mut meter = Meter::new(budget);
    let mut edges = boundary(c, &Arc::new(m.clone()), &mults, usize::MAX, &mut meter)?;
    mark_minimal(c, &mut edges, &mut meter)?;
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, ModuleKind::*};
    use crate::fixtures;
    use crate::shod::build_catalog;

    fn catalog(q: crate::quiver::BoundQuiver, bound: Vec<usize>) -> ModuleCatalog {
        build_catalog(Arc::new(Algebra::new(q).unwrap()), &DimVector(bound)).unwrap()
    }

    #[test]
    fn a2_witness_and_order() {
        let c = catalog(fixtures::a2(), vec![2, 2]);
        let alg = c.algebra().clone();
        let p1 = alg.projective(0);
        let s = alg.sum_of_standard(&[(Simple, 0), (Simple, 1)]).unwrap();
        let seq = degeneration_witness(p1, &s).unwrap().unwrap();
        assert!(is_isomorphic(seq.u(), alg.simple(1)) && is_isomorphic(seq.v(), alg.simple(0)));
        assert!(hom_order_leq(p1, &s, &c).unwrap());
        assert!(!hom_order_leq(&s, p1, &c).unwrap());
        assert!(degeneration_witness(p1, p1).unwrap().is_none());
        let edges = minimal_degenerations(p1, &c, Budget::DEFAULT).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].minimal, Some(true));
        assert_eq!(edges[0].evidence.label(), "witnessed");
    }

    #[test]
    fn a3r_boundary() {
        let c = catalog(fixtures::a3r(), vec![2, 2, 2]);
        let alg = c.algebra().clone();
        let m = alg.sum_of_standard(&[(Projective, 0), (Simple, 2)]).unwrap();
        let s = alg.sum_of_standard(&[(Simple, 0), (Simple, 1), (Simple, 2)]).unwrap();
        let seq = degeneration_witness(&m, &s).unwrap().unwrap();
        assert!(seq.is_exact() && !seq.splits());
        let edges = minimal_degenerations(&m, &c, Budget::DEFAULT).unwrap();
        assert_eq!(edges.len(), 1);
        assert!(is_isomorphic(&edges[0].target, &s));
        assert_eq!(edges[0].minimal, Some(true));
    }

    #[test]
    fn multiset_enumeration_counts() {
        let c = catalog(fixtures::a3r(), vec![2, 2, 2]);
        let mut meter = Meter::new(Budget::DEFAULT);
        // S1+S2+S3, [1,2]+S3, S1+[2,3]
        assert_eq!(multisets_with_dims(&c, &DimVector(vec![1, 1, 1]), &mut meter).unwrap().len(), 3);
        let mut low = Meter::new(Budget { max_candidates: 2, max_extensions: 10 });
        assert!(matches!(multisets_with_dims(&c, &DimVector(vec![1, 1, 1]), &mut low), Err(Error::Budget(_))));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(Budget::parse("low"), Some(Budget::LOW));
        assert_eq!(Budget::parse("7").unwrap().max_candidates, 7);
        assert_eq!(Budget::parse("0"), None);
        assert_eq!(Budget::parse("huge"), None);
    }
}
