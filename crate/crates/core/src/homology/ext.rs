use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::Representation;

use super::Resolution;

/// `δⁿ : Hom(Pₙ, N) → Hom(Pₙ₊₁, N)`, identifying `Hom(P(x), N)` with `N_x`.
fn cochain_differential(alg: &Algebra, res: &Resolution, n: usize, target: &Representation) -> Matrix {
    let src = res.summands(n);
    let dst = res.summands(n + 1);
    let d = &res.differentials()[n];
    let col_offsets = |vertices: &[usize]| -> Vec<usize> {
        let mut out = Vec::with_capacity(vertices.len());
        let mut acc = 0;
        for &x in vertices {
            out.push(acc);
            acc += target.dim_at(x);
        }
        out
    };
    let cols = col_offsets(src);
    let rows = col_offsets(dst);
    let total_cols: usize = src.iter().map(|&x| target.dim_at(x)).sum();
    let total_rows: usize = dst.iter().map(|&y| target.dim_at(y)).sum();
    let mut delta = Matrix::zeros(total_rows, total_cols);

    for (j, &y) in dst.iter().enumerate() {
        // Column of d at vertex y carrying the generator e_y of summand j.
        let gen_col: usize = dst[..j].iter().map(|&y2| alg.projective(y2).dim_at(y)).sum();
        let column = d.map(y).column(gen_col);
        let mut row_off = 0;
        for (i, &x) in src.iter().enumerate() {
            let paths = alg.basis().paths_between(x, y);
            let mut block = Matrix::zeros(target.dim_at(y), target.dim_at(x));
            for (k, p) in paths.iter().enumerate() {
                let c = &column[row_off + k];
                if !num::Zero::is_zero(c) {
                    block = &block + &target.path_matrix(p).scale(c);
                }
            }
            delta.set_block(rows[j], cols[i], &block);
            row_off += paths.len();
        }
    }
    delta
}

/// `dim Extⁿ(M, N)` from the cohomology of `Hom(P_•, N)`.
pub fn ext_dim(alg: &Algebra, m: &Representation, n_mod: &Representation, n: usize) -> Result<usize> {
    alg.check_quiver(n_mod)?;
    let res = alg.resolution(m)?;
    ext_dim_with(alg, &res, n_mod, n)
}

pub(crate) fn ext_dim_with(alg: &Algebra, res: &Resolution, target: &Representation, n: usize) -> Result<usize> {
    let len = res.terms().len() - 1;
    if n > len {
        return if res.is_complete() { Ok(0) } else { Err(Error::Truncated(len)) };
    }
    if n == len && !res.is_complete() {
        return Err(Error::Truncated(len));
    }
    let c_n: usize = res.summands(n).iter().map(|&x| target.dim_at(x)).sum();
    let out_rank = if n < len {
        cochain_differential(alg, res, n, target).rank()
    } else {
        0
    };
    let in_rank = if n > 0 {
        cochain_differential(alg, res, n - 1, target).rank()
    } else {
        0
    };
    Ok(c_n - out_rank - in_rank)
}

/// `dim Extⁿ(M, N)` for `n = 0..=max_n`.
pub fn ext_dims(alg: &Algebra, m: &Representation, target: &Representation, max_n: usize) -> Result<Vec<usize>> {
    alg.check_quiver(target)?;
    let res = alg.resolution(m)?;
    (0..=max_n).map(|n| ext_dim_with(alg, &res, target, n)).collect()
}

/// Projective dimension; `Err(Truncated(bound))` when the resolution does
/// not stop within the divergence guard.
pub fn pd(alg: &Algebra, m: &Representation) -> Result<usize> {
    let res = alg.resolution(m)?;
    if res.is_complete() {
        Ok(res.length())
    } else {
        Err(Error::Truncated(alg.divergence_guard()))
    }
}

/// Injective dimension, as `pd` of the dual over the opposite algebra.
pub fn id(alg: &Algebra, m: &Representation) -> Result<usize> {
    alg.check_quiver(m)?;
    let op = alg.opposite();
    pd(op, &alg.dual(m))
}

pub fn gldim(alg: &Algebra) -> Result<usize> {
    let mut best = 0;
    for s in alg.simples() {
        match pd(alg, s) {
            Ok(p) => best = best.max(p),
            Err(_) => return Err(Error::InfiniteGlobalDimension(alg.divergence_guard())),
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rep::hom_dim;

    #[test]
    fn n4_ext_values() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        let (s1, s3, s4) = (alg.simple(0), alg.simple(2), alg.simple(3));
        assert_eq!(ext_dim(&alg, s1, s4, 3).unwrap(), 1);
        assert_eq!(ext_dim(&alg, s3, alg.projective(3), 1).unwrap(), 1);
        assert_eq!(ext_dim(&alg, s3, alg.projective(2), 1).unwrap(), 0);
        assert_eq!(ext_dim(&alg, s1, s4, 7).unwrap(), 0);
    }

    #[test]
    fn a2_ext() {
        let alg = Algebra::new(fixtures::a2()).unwrap();
        assert_eq!(ext_dim(&alg, alg.simple(0), alg.simple(1), 1).unwrap(), 1);
        assert_eq!(ext_dim(&alg, alg.simple(1), alg.simple(0), 1).unwrap(), 0);
        assert_eq!(gldim(&alg).unwrap(), 1);
    }

    #[test]
    fn ext_zero_is_hom() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        let mods: Vec<_> = alg
            .projectives()
            .iter()
            .chain(alg.simples())
            .chain(alg.injectives())
            .cloned()
            .collect();
        for m in &mods {
            for n in &mods {
                assert_eq!(ext_dim(&alg, m, n, 0).unwrap(), hom_dim(m, n).unwrap());
            }
        }
    }

    #[test]
    fn n4_dimensions() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        assert_eq!(gldim(&alg).unwrap(), 3);
        let pds: Vec<usize> = alg.simples().iter().map(|s| pd(&alg, s).unwrap()).collect();
        assert_eq!(pds, [3, 2, 1, 0]);
        let ids: Vec<usize> = alg.simples().iter().map(|s| id(&alg, s).unwrap()).collect();
        assert_eq!(ids, [0, 1, 2, 3]);
        let a3r = Algebra::new(fixtures::a3r()).unwrap();
        assert_eq!(gldim(&a3r).unwrap(), 2);
    }

    #[test]
    fn cyclic_algebra_has_infinite_global_dimension() {
        let q = crate::quiver::parse_bound_quiver("vertices: 1\narrow x: 1 -> 1\nrelation: x*x\n").unwrap();
        let alg = Algebra::new(q).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(matches!(gldim(&alg), Err(Error::InfiniteGlobalDimension(2))));
        assert!(matches!(pd(&alg, alg.simple(0)), Err(Error::Truncated(2))));
        // Ext^n(S, S) = k in every degree that was computed.
        assert_eq!(ext_dim(&alg, alg.simple(0), alg.simple(0), 1).unwrap(), 1);
    }
}
