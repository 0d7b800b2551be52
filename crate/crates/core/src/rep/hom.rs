use std::sync::Arc;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{indecomposable_iso, indecomposable_summands, Morphism, Representation};
use crate::error::Result;
use crate::matrix::{int, Matrix, Scalar};

/// Offsets of the per-vertex blocks `f_x` (row-major, `N_x × M_x`) in the
/// flattened unknown vector.
fn offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for x in 0..m.dims().len() {
        off.push(total);
        total += n.dim_at(x) * m.dim_at(x);
    }
    (off, total)
}

/// The commutation equations `N_α f_s − f_t M_α = 0` as a matrix acting on
/// the flattened per-vertex blocks.
pub(crate) fn hom_equations(m: &Representation, n: &Representation) -> (Matrix, Vec<usize>) {
    let (off, unknowns) = offsets(m, n);
    let q = m.quiver();
    let rows: usize = q
        .arrows()
        .iter()
        .map(|a| n.dim_at(a.target) * m.dim_at(a.source))
        .sum();
    let mut eq = Matrix::zeros(rows, unknowns);
    let mut r0 = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ms, mt, ns) = (m.dim_at(s), m.dim_at(t), n.dim_at(s));
        let nt = n.dim_at(t);
        let na = n.map(ai);
        let ma = m.map(ai);
        for i in 0..nt {
            for j in 0..ms {
                let row = r0 + i * ms + j;
                // (N_α f_s)[i][j] = Σ_k N_α[i][k] f_s[k][j]
                for k in 0..ns {
                    let c = &na[(i, k)];
                    if !c.is_zero() {
                        eq[(row, off[s] + k * ms + j)] += c;
                    }
                }
                // (f_t M_α)[i][j] = Σ_k f_t[i][k] M_α[k][j]
                for k in 0..mt {
                    let c = &ma[(k, j)];
                    if !c.is_zero() {
                        eq[(row, off[t] + i * mt + k)] -= c;
                    }
                }
            }
        }
        r0 += nt * ms;
    }
    (eq, off)
}

fn unflatten(m: &Representation, n: &Representation, off: &[usize], v: &[Scalar]) -> Vec<Matrix> {
    (0..m.dims().len())
        .map(|x| {
            let (r, c) = (n.dim_at(x), m.dim_at(x));
            Matrix::from_vec(r, c, v[off[x]..off[x] + r * c].to_vec())
        })
        .collect()
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.check_same_quiver(n)?;
    let (eq, off) = hom_equations(m, n);
    let kernel = eq.kernel();
    let (ma, na) = (Arc::new(m.clone()), Arc::new(n.clone()));
    Ok(kernel
        .columns()
        .iter()
        .map(|v| Morphism::new_unchecked(ma.clone(), na.clone(), unflatten(m, n, &off, v)))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_quiver(n)?;
    let (eq, off) = hom_equations(m, n);
    let unknowns = off
        .iter()
        .enumerate()
        .map(|(x, _)| n.dim_at(x) * m.dim_at(x))
        .sum::<usize>();
    Ok(unknowns - eq.rank())
}

pub(crate) fn random_combination(
    source: &Arc<Representation>,
    target: &Arc<Representation>,
    basis: &[Morphism],
    rng: &mut ChaCha8Rng,
    range: i64,
) -> Morphism {
    let coeffs: Vec<Scalar> = basis.iter().map(|_| int(rng.gen_range(-range..=range))).collect();
    let terms: Vec<(Scalar, &Morphism)> = coeffs.into_iter().zip(basis).collect();
    Morphism::linear_combination(source.clone(), target.clone(), &terms)
}

/// Exact isomorphism test.
///
/// Random combinations of a `Hom(M, N)` basis find an isomorphism with high
/// probability when one exists; if none is found both sides are decomposed
/// and matched summand by summand, which is conclusive.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> bool {
    if !m.same_quiver(n) || m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    if m == n {
        return true;
    }
    let Ok(basis) = hom_basis(m, n) else {
        return false;
    };
    let (Ok(end_m), Ok(end_n)) = (hom_dim(m, m), hom_dim(n, n)) else {
        return false;
    };
    if basis.len() != end_m || end_m != end_n {
        return false;
    }
    let (ma, na) = (Arc::new(m.clone()), Arc::new(n.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..8 {
        let f = random_combination(&ma, &na, &basis, &mut rng, 1 << 20);
        if f.is_iso() {
            return true;
        }
    }
    match (indecomposable_summands(m), indecomposable_summands(n)) {
        (Ok(a), Ok(b)) => summands_match(&a, &b),
        _ => false,
    }
}

fn summands_match(a: &[Representation], b: &[Representation]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && indecomposable_iso(x, y).unwrap_or(false) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Composition of two morphisms, checked.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.target().as_ref() != g.source().as_ref() {
        return Err(crate::error::Error::InvalidMorphism("morphisms do not compose".into()));
    }
    Ok(g.after(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::DimVector;
    use crate::rep::direct_sum;

    fn n4_interval(i: usize, j: usize) -> Representation {
        let q = Arc::new(fixtures::n4());
        let dims = DimVector((1..=4).map(|v| usize::from(i <= v && v <= j)).collect());
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (s, t) = (a.source + 1, a.target + 1);
                let mut m = Matrix::zeros(dims.0[a.target], dims.0[a.source]);
                if i <= s && t <= j {
                    m[(0, 0)] = int(1);
                }
                m
            })
            .collect();
        Representation::new(q, dims, maps).unwrap()
    }

    #[test]
    fn interval_homs_on_n4() {
        // Hom([i,j],[k,l]) is one-dimensional exactly when k <= i <= l <= j.
        let intervals = [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 3), (3, 4)];
        for &(i, j) in &intervals {
            for &(k, l) in &intervals {
                let expected = usize::from(k <= i && i <= l && l <= j);
                let got = hom_dim(&n4_interval(i, j), &n4_interval(k, l)).unwrap();
                assert_eq!(got, expected, "Hom([{i},{j}],[{k},{l}])");
                assert_eq!(hom_basis(&n4_interval(i, j), &n4_interval(k, l)).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn hom_is_additive() {
        let a = n4_interval(1, 2);
        let b = n4_interval(2, 3);
        let c = n4_interval(2, 2);
        let sum = direct_sum(&[&a, &b]).unwrap();
        let lhs = hom_dim(&sum, &c).unwrap();
        assert_eq!(lhs, hom_dim(&a, &c).unwrap() + hom_dim(&b, &c).unwrap());
    }

    #[test]
    fn isomorphism_after_base_change() {
        let a = n4_interval(1, 2);
        let b = n4_interval(2, 3);
        let sum = direct_sum(&[&a, &b]).unwrap();
        let g: Vec<Matrix> = sum
            .dims()
            .0
            .iter()
            .map(|&d| {
                let mut m = Matrix::identity(d);
                if d == 2 {
                    m[(0, 1)] = int(3);
                    m[(1, 0)] = int(-1);
                }
                m
            })
            .collect();
        let conj = sum.conjugate(&g).unwrap();
        assert!(is_isomorphic(&sum, &conj));
        let other = direct_sum(&[&n4_interval(1, 1), &n4_interval(2, 2), &n4_interval(2, 3)]).unwrap();
        assert!(!is_isomorphic(&sum, &other));
    }
}
