use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::{euler_form, ext_dims, gldim};
use crate::rep::{cocycle_space_dim, hom_dim, Representation};

/// Dimension of the scheme tangent space of `mod(d)` at `m`: solutions
/// `(X_α)` of the linearized relation equations.
pub fn tangent_dim(m: &Representation) -> usize {
    cocycle_space_dim(m, m).expect("a module shares its own quiver")
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub dims: Vec<usize>,
    pub gl_dim: usize,
    pub end_dim: usize,
    pub orbit_dim: usize,
    pub tangent_dim: usize,
    /// `a(d)`; absent when the global dimension is infinite.
    pub a: Option<i64>,
    pub ext1_vanishes: bool,
    /// `Extⁿ(M, M) = 0` for all `n ≥ 2`; absent for infinite global dimension.
    pub higher_ext_vanishes: Option<bool>,
}

pub fn orbit_info(alg: &Algebra, m: &Representation) -> Result<OrbitInfo> {
    alg.check_quiver(m)?;
    let gl_dim = m.dims().gl_dim();
    let end_dim = hom_dim(m, m)?;
    let orbit_dim = gl_dim - end_dim;
    let tangent = tangent_dim(m);
    let g = gldim(alg).ok();
    let exts = ext_dims(alg, m, m, g.unwrap_or(1).max(1))?;
    let ext1 = exts[1];
    assert!(tangent <= orbit_dim + ext1, "tangent bound violated at {}", m.dims());
    let a = match g {
        Some(_) => Some(euler_form(alg)?.a(m.dims())),
        None => None,
    };
    Ok(OrbitInfo {
        dims: m.dims().0.clone(),
        gl_dim,
        end_dim,
        orbit_dim,
        tangent_dim: tangent,
        a,
        ext1_vanishes: ext1 == 0,
        higher_ext_vanishes: g.map(|_| exts.iter().skip(2).all(|&e| e == 0)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    /// `Extⁿ(N, N) = 0` for every `n ≥ 2`.
    pub applies: bool,
    /// `tangent_dim(N) ≤ a(d)`, reported whether or not the Ext hypothesis holds.
    pub bound_holds: bool,
    pub tangent_dim: usize,
    pub a: i64,
}

pub fn lemma_tangent_check(alg: &Algebra, n: &Representation) -> Result<LemmaCheck> {
    alg.check_quiver(n)?;
    let g = gldim(alg)?;
    let exts = ext_dims(alg, n, n, g.max(1))?;
    let applies = exts.iter().skip(2).all(|&e| e == 0);
    let a = euler_form(alg)?.a(n.dims());
    let t = tangent_dim(n);
    let bound_holds = (t as i64) <= a;
    if applies && !bound_holds {
        return Err(Error::DimensionMismatch(format!(
            "tangent dimension {t} exceeds a(d) = {a} although higher Ext vanishes"
        )));
    }
    Ok(LemmaCheck {
        applies,
        bound_holds,
        tangent_dim: t,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ModuleKind::*;
    use crate::fixtures;
    use crate::quiver::DimVector;

    #[test]
    fn a3r_tangent_values() {
        let alg = Algebra::new(fixtures::a3r()).unwrap();
        let zero = Representation::zero(alg.quiver().clone(), DimVector(vec![1, 1, 1]));
        assert_eq!(tangent_dim(&zero), 2);
        let m = alg.sum_of_standard(&[(Projective, 0), (Simple, 2)]).unwrap();
        assert_eq!(tangent_dim(&m), 1);
        let info = orbit_info(&alg, &m).unwrap();
        assert_eq!((info.end_dim, info.orbit_dim, info.a), (2, 1, Some(1)));
        let check = lemma_tangent_check(&alg, &zero).unwrap();
        assert!(!check.applies && !check.bound_holds);
        assert_eq!((check.tangent_dim, check.a), (2, 1));
    }

    #[test]
    fn a2_points() {
        let alg = Algebra::new(fixtures::a2()).unwrap();
        let s = alg.sum_of_standard(&[(Simple, 0), (Simple, 1)]).unwrap();
        assert_eq!(tangent_dim(&s), 1);
        assert_eq!(orbit_info(&alg, &s).unwrap().orbit_dim, 0);
        assert_eq!(orbit_info(&alg, alg.projective(0)).unwrap().orbit_dim, 1);
    }

    #[test]
    fn projectives_satisfy_the_tangent_bound() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        for p in alg.projectives() {
            let c = lemma_tangent_check(&alg, p).unwrap();
            assert!(c.applies && c.bound_holds);
        }
    }
}
