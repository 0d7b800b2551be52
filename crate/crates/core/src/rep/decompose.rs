//! Krull–Schmidt decomposition through the endomorphism algebra.
//!
//! The radical of `End(M)` is the kernel of the trace form (characteristic
//! zero). `M` is indecomposable iff `End(M)/rad` is one-dimensional;
//! otherwise some endomorphism `h`, possibly shifted by a rational
//! eigenvalue, has a proper Fitting decomposition `M = Im hᴺ ⊕ Ker hᴺ`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_basis, random_combination};
use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::matrix::{rational_roots, Matrix, Scalar};

fn trace(f: &Morphism) -> Scalar {
    f.maps().iter().map(Matrix::trace).sum()
}

fn gram(basis: &[Morphism]) -> Matrix {
    let n = basis.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace(&basis[i].after(&basis[j]));
            g[(i, j)] = t.clone();
            g[(j, i)] = t;
        }
    }
    g
}

/// Dimension of the Jacobson radical of `End(M)`.
pub fn radical_dim(m: &Representation) -> Result<usize> {
    let basis = hom_basis(m, m)?;
    Ok(basis.len() - gram(&basis).rank())
}

/// Whether `End(M)` is local, i.e. `M` is indecomposable and nonzero.
pub fn is_local(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom_basis(m, m)?;
    Ok(gram(&basis).rank() == 1)
}

/// `(Im hᴺ, Ker hᴺ)` as column bases per vertex, if both are nonzero.
fn fitting_split(m: &Representation, h: &Morphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let powers: Vec<Matrix> = h
        .maps()
        .iter()
        .map(|hx| hx.pow(hx.rows().max(1)))
        .collect();
    let rank: usize = powers.iter().map(Matrix::rank).sum();
    if rank == 0 || rank == m.total_dim() {
        return None;
    }
    let images = powers.iter().map(Matrix::column_space).collect();
    let kernels = powers.iter().map(Matrix::kernel).collect();
    Some((images, kernels))
}

fn shifted(h: &Morphism, lambda: &Scalar) -> Morphism {
    let maps = h
        .maps()
        .iter()
        .map(|hx| hx - &Matrix::identity(hx.rows()).scale(lambda))
        .collect();
    Morphism::new_unchecked(h.source().clone(), h.target().clone(), maps)
}

fn eigenvalues(h: &Morphism) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for hx in h.maps() {
        if hx.rows() == 0 {
            continue;
        }
        for r in rational_roots(&hx.char_poly()).unwrap_or_default() {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn try_candidate(m: &Representation, h: &Morphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    if let Some(s) = fitting_split(m, h) {
        return Some(s);
    }
    eigenvalues(h)
        .iter()
        .find_map(|lambda| fitting_split(m, &shifted(h, lambda)))
}

fn find_split(m: &Representation, basis: &[Morphism]) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    for h in basis {
        if let Some(s) = try_candidate(m, h) {
            return Some(s);
        }
    }
    let ma = basis[0].source().clone();
    let one = Scalar::from_integer(1.into());
    for i in 0..basis.len() {
        for j in i + 1..basis.len().min(i + 6) {
            let h = Morphism::linear_combination(
                ma.clone(),
                ma.clone(),
                &[(one.clone(), &basis[i]), (one.clone(), &basis[j])],
            );
            if let Some(s) = try_candidate(m, &h) {
                return Some(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    for _ in 0..24 {
        let h = random_combination(&ma, &ma, basis, &mut rng, 3);
        if let Some(s) = try_candidate(m, &h) {
            return Some(s);
        }
    }
    None
}

/// Indecomposable direct summands of `M`, with multiplicity, in no
/// particular order.
pub fn indecomposable_summands(m: &Representation) -> Result<Vec<Representation>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let basis = hom_basis(m, m)?;
    if gram(&basis).rank() == 1 {
        return Ok(vec![m.clone()]);
    }
    let (image, kernel) = find_split(m, &basis).ok_or_else(|| Error::NotSplit(m.dims().0.clone()))?;
    let (a, _) = m.subrepresentation(&image)?;
    let (b, _) = m.subrepresentation(&kernel)?;
    let mut out = indecomposable_summands(&a)?;
    out.extend(indecomposable_summands(&b)?);
    Ok(out)
}

/// Isomorphism test for indecomposables: some `g ∘ f` with `f ∈ Hom(X, Y)`,
/// `g ∈ Hom(Y, X)` basis elements is not nilpotent.
pub fn indecomposable_iso(x: &Representation, y: &Representation) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let fs = hom_basis(x, y)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = hom_basis(y, x)?;
    Ok(fs
        .iter()
        .any(|f| gs.iter().any(|g| !g.after(f).is_nilpotent_endo())))
}

/// Krull–Schmidt decomposition: pairwise non-isomorphic indecomposable
/// summands with multiplicities, ordered by dimension vector and then by
/// their matrices.
pub fn decompose(m: &Representation) -> Result<Vec<(Representation, usize)>> {
    let summands = indecomposable_summands(m)?;
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for s in summands {
        let mut found = false;
        for (rep, count) in groups.iter_mut() {
            if indecomposable_iso(rep, &s)? {
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((s, 1));
        }
    }
    groups.sort_by(|a, b| {
        a.0.dims()
            .0
            .cmp(&b.0.dims().0)
            .then_with(|| a.0.canonical_key().cmp(&b.0.canonical_key()))
    });
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::int;
    use crate::quiver::{parse_bound_quiver, DimVector};
    use crate::rep::{direct_sum, is_isomorphic};
    use std::sync::Arc;

    fn kronecker() -> Arc<crate::quiver::BoundQuiver> {
        Arc::new(parse_bound_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap())
    }

    #[test]
    fn simple_and_projective_are_local() {
        let q = Arc::new(fixtures::a2());
        let p1 = Representation::new(q.clone(), DimVector(vec![1, 1]), vec![Matrix::identity(1)]).unwrap();
        assert!(is_local(&p1).unwrap());
        let s = Representation::zero(q, DimVector(vec![1, 1]));
        assert!(!is_local(&s).unwrap());
        assert_eq!(radical_dim(&s).unwrap(), 0);
        assert_eq!(radical_dim(&p1).unwrap(), 0);
    }

    #[test]
    fn semisimple_splits_with_multiplicity() {
        let q = Arc::new(fixtures::a2());
        let m = Representation::zero(q, DimVector(vec![2, 1]));
        let d = decompose(&m).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0.dims(), &DimVector(vec![0, 1]));
        assert_eq!(d[0].1, 1);
        assert_eq!(d[1].0.dims(), &DimVector(vec![1, 0]));
        assert_eq!(d[1].1, 2);
    }

    #[test]
    fn hidden_sum_is_found_after_base_change() {
        let q = kronecker();
        // Regular modules at eigenvalues 1 and 2, mixed by a base change.
        let r1 = Representation::new(q.clone(), DimVector(vec![1, 1]), vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        let r2 = Representation::new(q.clone(), DimVector(vec![1, 1]), vec![Matrix::identity(1), Matrix::from_i64(1, 1, &[2])]).unwrap();
        let sum = direct_sum(&[&r1, &r2]).unwrap();
        let g = vec![Matrix::from_i64(2, 2, &[1, 2, 3, 7]), Matrix::from_i64(2, 2, &[1, -1, 1, 0])];
        let mixed = sum.conjugate(&g).unwrap();
        let d = decompose(&mixed).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|(_, c)| *c == 1));
        assert!(is_isomorphic(&mixed, &sum));
    }

    #[test]
    fn irrational_eigenvalues_do_not_split() {
        // Over the Kronecker quiver, (1, x) with x² = 2 on a 2-dimensional
        // space is indecomposable over Q but not over R.
        let q = kronecker();
        let m = Representation::new(
            q,
            DimVector(vec![2, 2]),
            vec![Matrix::identity(2), Matrix::from_vec(2, 2, vec![int(0), int(2), int(1), int(0)])],
        )
        .unwrap();
        // End(M) = Q(√2): semisimple of dimension 2 with no rational idempotent.
        assert_eq!(radical_dim(&m).unwrap(), 0);
        assert!(matches!(decompose(&m), Err(Error::NotSplit(_))));
    }
}
