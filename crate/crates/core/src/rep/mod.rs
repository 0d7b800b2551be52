//! Representations of bound quivers and the exact linear algebra on them.

mod decompose;
mod ext1;
mod factor;
mod hom;
mod io;

use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};
use crate::quiver::{BoundQuiver, DimVector, Path, Relation};

pub use decompose::{decompose, indecomposable_iso, indecomposable_summands, is_local, radical_dim};
pub use ext1::{
    cocycle_space_dim, combine_cocycles, ext1_classes, ext1_cocycle_basis, extension_from_cocycle, ShortExactSeq,
};
pub use factor::{factor_morphism, Factorization};
pub use hom::{compose, hom_basis, hom_dim, is_isomorphic};
pub use io::{module_quiver_ref, parse_module, write_module};

/// A point of the module variety: one matrix per arrow, of shape
/// `dim(target) × dim(source)`, annihilating every relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    dims: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<BoundQuiver>, dims: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (arrow, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims.0[arrow.target] || m.cols() != dims.0[arrow.source] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    arrow.id,
                    dims.0[arrow.target],
                    dims.0[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Representation { quiver, dims, maps };
        for rel in rep.quiver.relations() {
            if !rep.relation_matrix(rel).is_zero() {
                return Err(Error::RelationViolated(rel.display(&rep.quiver)));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(quiver: Arc<BoundQuiver>, dims: DimVector, maps: Vec<Matrix>) -> Self {
        let rep = Representation { quiver, dims, maps };
        debug_assert!(rep
            .quiver
            .relations()
            .iter()
            .all(|r| rep.relation_matrix(r).is_zero()));
        rep
    }

    pub fn zero(quiver: Arc<BoundQuiver>, dims: DimVector) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims.0[a.target], dims.0[a.source]))
            .collect();
        Representation { quiver, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.dims.0[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver
    }

    pub(crate) fn check_same_quiver(&self, other: &Representation) -> Result<()> {
        if self.same_quiver(other) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// `M_σ = M_{α₁} ⋯ M_{αₙ}`; the identity for a trivial path.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.dims.0[p.source()]);
        for &a in p.arrows().iter().rev() {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    pub fn relation_matrix(&self, rel: &Relation) -> Matrix {
        let mut acc = Matrix::zeros(self.dims.0[rel.target()], self.dims.0[rel.source()]);
        for (c, p) in rel.terms() {
            acc = &acc + &self.path_matrix(p).scale(c);
        }
        acc
    }

    /// The representation `g · M` with `(gM)_α = g_t M_α g_s⁻¹`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation> {
        let inverses = g
            .iter()
            .map(|m| {
                m.inverse()
                    .ok_or_else(|| Error::InvalidMorphism("base change is not invertible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target] * m) * &inverses[a.source])
            .collect();
        Ok(Representation::new_unchecked(
            self.quiver.clone(),
            self.dims.clone(),
            maps,
        ))
    }

    /// Conjugate by a random invertible integer base change with entries in
    /// `[-range, range]`.
    pub fn random_conjugate<R: rand::Rng>(&self, rng: &mut R, range: i64) -> Representation {
        let g: Vec<Matrix> = self.dims.0.iter().map(|&d| random_invertible(d, rng, range)).collect();
        self.conjugate(&g).expect("base change is invertible")
    }

    /// The subrepresentation spanned by the columns of `bases[x]` at each
    /// vertex, together with its inclusion. Fails if the spaces are not
    /// stable under the arrows.
    pub fn subrepresentation(&self, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
        let dims = DimVector(bases.iter().map(Matrix::cols).collect());
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            let image = m * &bases[a.source];
            let x = bases[a.target].solve(&image).ok_or_else(|| {
                Error::InvalidMorphism(format!("subspace not stable under arrow {}", a.id))
            })?;
            maps.push(x);
        }
        let sub = Representation::new_unchecked(self.quiver.clone(), dims, maps);
        let incl = Morphism::new_unchecked(Arc::new(sub.clone()), Arc::new(self.clone()), bases.to_vec());
        Ok((sub, incl))
    }

    /// The quotient by a subrepresentation given by column bases, with its
    /// projection.
    pub fn quotient(&self, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
        // Rows of the projection span the annihilator of the subspace.
        let projections: Vec<Matrix> = bases
            .iter()
            .zip(&self.dims.0)
            .map(|(b, &d)| {
                if b.cols() == 0 {
                    Matrix::identity(d)
                } else {
                    b.left_kernel()
                }
            })
            .collect();
        let dims = DimVector(projections.iter().map(Matrix::rows).collect());
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            let qs = &projections[a.source];
            let right = qs
                .right_inverse()
                .unwrap_or_else(|| Matrix::zeros(qs.cols(), qs.rows()));
            let lhs = &projections[a.target] * m;
            // Well defined only if the subspace is stable.
            if !(&lhs * &bases[a.source]).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "subspace not stable under arrow {}",
                    a.id
                )));
            }
            maps.push(&lhs * &right);
        }
        let quot = Representation::new_unchecked(self.quiver.clone(), dims, maps);
        let proj = Morphism::new_unchecked(Arc::new(self.clone()), Arc::new(quot.clone()), projections);
        Ok((quot, proj))
    }

    /// Exact-rational canonical text of the arrow matrices, used as a memo key.
    pub fn canonical_key(&self) -> String {
        let mut s = format!("{}|", self.dims);
        for m in &self.maps {
            for x in m.data() {
                s.push_str(&x.to_string());
                s.push(',');
            }
            s.push('|');
        }
        s
    }
}

/// Block-diagonal sum. An empty list gives `None`; use [`Representation::zero`].
pub fn direct_sum(ms: &[&Representation]) -> Result<Representation> {
    let Some(first) = ms.first() else {
        return Err(Error::DimensionMismatch("empty direct sum has no ambient quiver".into()));
    };
    for m in ms {
        first.check_same_quiver(m)?;
    }
    let q = first.quiver.clone();
    let dims = ms
        .iter()
        .fold(DimVector::zero(q.num_vertices()), |acc, m| acc.add(&m.dims));
    let maps = (0..q.arrows().len())
        .map(|a| Matrix::block_diag(&ms.iter().map(|m| &m.maps[a]).collect::<Vec<_>>()))
        .collect();
    Ok(Representation::new_unchecked(q, dims, maps))
}

/// Direct sum over a quiver, allowing the empty sum.
pub fn direct_sum_in(quiver: &Arc<BoundQuiver>, ms: &[&Representation]) -> Result<Representation> {
    if ms.is_empty() {
        Ok(Representation::zero(quiver.clone(), DimVector::zero(quiver.num_vertices())))
    } else {
        direct_sum(ms)
    }
}

/// A family of per-vertex maps `f_x : M_x → N_x` commuting with every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Representation>,
    target: Arc<Representation>,
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> Result<Self> {
        source.check_same_quiver(&target)?;
        if maps.len() != source.quiver.num_vertices() {
            return Err(Error::InvalidMorphism("wrong number of vertex maps".into()));
        }
        for (x, m) in maps.iter().enumerate() {
            if m.rows() != target.dims.0[x] || m.cols() != source.dims.0[x] {
                return Err(Error::InvalidMorphism(format!("wrong shape at vertex {x}")));
            }
        }
        let f = Morphism { source, target, maps };
        if let Some(a) = f.failing_arrow() {
            return Err(Error::InvalidMorphism(format!(
                "does not commute with arrow {}",
                f.source.quiver.arrows()[a].id
            )));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> Self {
        let f = Morphism { source, target, maps };
        debug_assert!(f.failing_arrow().is_none());
        f
    }

    /// First arrow `α` with `N_α f_s ≠ f_t M_α`.
    pub fn failing_arrow(&self) -> Option<usize> {
        self.source.quiver.arrows().iter().enumerate().find_map(|(i, a)| {
            let lhs = self.target.map(i) * &self.maps[a.source];
            let rhs = &self.maps[a.target] * self.source.map(i);
            (lhs != rhs).then_some(i)
        })
    }

    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let maps = (0..source.quiver.num_vertices())
            .map(|x| Matrix::zeros(target.dims.0[x], source.dims.0[x]))
            .collect();
        Morphism { source, target, maps }
    }

    pub fn identity(m: Arc<Representation>) -> Self {
        let maps = m.dims.0.iter().map(|&d| Matrix::identity(d)).collect();
        Morphism {
            source: m.clone(),
            target: m,
            maps,
        }
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn map(&self, x: usize) -> &Matrix {
        &self.maps[x]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn is_nilpotent_endo(&self) -> bool {
        self.maps.iter().all(Matrix::is_nilpotent)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g * f).collect();
        Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn linear_combination(source: Arc<Representation>, target: Arc<Representation>, terms: &[(Scalar, &Morphism)]) -> Morphism {
        let mut f = Morphism::zero(source, target);
        for (c, g) in terms {
            if c.is_zero() {
                continue;
            }
            for (a, b) in f.maps.iter_mut().zip(&g.maps) {
                *a = &*a + &b.scale(c);
            }
        }
        f
    }
}

/// A random invertible `n × n` integer matrix.
pub fn random_invertible<R: rand::Rng>(n: usize, rng: &mut R, range: i64) -> Matrix {
    loop {
        let data: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-range..=range)).collect();
        let m = Matrix::from_i64(n, n, &data);
        if m.is_invertible() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::int;

    fn a2() -> Arc<BoundQuiver> {
        Arc::new(fixtures::a2())
    }

    #[test]
    fn relation_violation_is_rejected() {
        let q = Arc::new(fixtures::a3r());
        let ones = |r, c| Matrix::from_vec(r, c, vec![int(1); r * c]);
        let err = Representation::new(q.clone(), DimVector(vec![1, 1, 1]), vec![ones(1, 1), ones(1, 1)]).unwrap_err();
        assert_eq!(err, Error::RelationViolated("b*a".into()));
        assert!(Representation::new(q, DimVector(vec![1, 1, 1]), vec![ones(1, 1), Matrix::zeros(1, 1)]).is_ok());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let err = Representation::new(a2(), DimVector(vec![1, 2]), vec![Matrix::zeros(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn direct_sum_of_simples() {
        let q = a2();
        let s1 = Representation::zero(q.clone(), DimVector(vec![1, 0]));
        let s2 = Representation::zero(q.clone(), DimVector(vec![0, 1]));
        let sum = direct_sum(&[&s1, &s2]).unwrap();
        assert_eq!(sum.dims(), &DimVector(vec![1, 1]));
        assert!(sum.map(0).is_zero());
        assert_eq!(direct_sum(&[&s1]).unwrap(), s1);
        let empty = direct_sum_in(&q, &[]).unwrap();
        assert!(empty.is_zero());
    }

    #[test]
    fn morphism_commutation_checked() {
        let q = a2();
        let p1 = Arc::new(Representation::new(q.clone(), DimVector(vec![1, 1]), vec![Matrix::identity(1)]).unwrap());
        let s1 = Arc::new(Representation::zero(q.clone(), DimVector(vec![1, 0])));
        // P(1) → S(1) is the identity at vertex 1.
        assert!(Morphism::new(p1.clone(), s1.clone(), vec![Matrix::identity(1), Matrix::zeros(0, 1)]).is_ok());
        // S(1) → P(1) would have to commute with a: 0 = 1 · f_1, so f_1 ≠ 0 fails.
        let err = Morphism::new(s1, p1, vec![Matrix::identity(1), Matrix::zeros(1, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidMorphism(_)));
    }

    #[test]
    fn submodule_and_quotient() {
        let q = a2();
        let p1 = Representation::new(q, DimVector(vec![1, 1]), vec![Matrix::identity(1)]).unwrap();
        let bases = vec![Matrix::zeros(1, 0), Matrix::identity(1)];
        let (sub, incl) = p1.subrepresentation(&bases).unwrap();
        assert_eq!(sub.dims(), &DimVector(vec![0, 1]));
        assert!(incl.is_injective());
        let (quot, proj) = p1.quotient(&bases).unwrap();
        assert_eq!(quot.dims(), &DimVector(vec![1, 0]));
        assert!(proj.is_surjective());
        assert!(proj.after(&incl).is_zero());
        // The top is not a subrepresentation.
        let top = vec![Matrix::identity(1), Matrix::zeros(1, 0)];
        assert!(p1.subrepresentation(&top).is_err());
    }
}
