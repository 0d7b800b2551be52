use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::quiver::DimVector;

use super::{ext_dim, gldim};

/// `C[x][y] = Σₙ (−1)ⁿ dim Extⁿ(S(x), S(y))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerForm {
    pub matrix: Vec<Vec<i64>>,
}

impl EulerForm {
    /// `⟨d′, d″⟩ = d′ᵀ C d″`.
    pub fn pair(&self, d1: &DimVector, d2: &DimVector) -> i64 {
        let (a, b) = (d1.as_i64(), d2.as_i64());
        let mut total = 0;
        for (x, row) in self.matrix.iter().enumerate() {
            for (y, c) in row.iter().enumerate() {
                total += a[x] * c * b[y];
            }
        }
        total
    }

    pub fn chi(&self, d: &DimVector) -> i64 {
        self.pair(d, d)
    }

    /// `a(d) = dim GL(d) − χ(d)`.
    pub fn a(&self, d: &DimVector) -> i64 {
        d.gl_dim() as i64 - self.chi(d)
    }
}

pub fn euler_form(alg: &Algebra) -> Result<EulerForm> {
    let g = gldim(alg).map_err(|_| Error::InfiniteGlobalDimension(alg.divergence_guard()))?;
    let n = alg.num_vertices();
    let mut matrix = vec![vec![0i64; n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut c = 0i64;
            for k in 0..=g {
                let e = ext_dim(alg, alg.simple(x), alg.simple(y), k)? as i64;
                c += if k % 2 == 0 { e } else { -e };
            }
            matrix[x][y] = c;
        }
    }
    Ok(EulerForm { matrix })
}

pub fn euler_pair(c: &EulerForm, d1: &DimVector, d2: &DimVector) -> i64 {
    c.pair(d1, d2)
}

pub fn chi(c: &EulerForm, d: &DimVector) -> i64 {
    c.chi(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_forms() {
        let a2 = euler_form(&Algebra::new(fixtures::a2()).unwrap()).unwrap();
        assert_eq!(a2.matrix, [[1, -1], [0, 1]]);
        assert_eq!(a2.chi(&DimVector(vec![1, 1])), 1);
        let n4 = euler_form(&Algebra::new(fixtures::n4()).unwrap()).unwrap();
        assert_eq!(
            n4.matrix,
            [[1, -1, 1, -1], [0, 1, -1, 1], [0, 0, 1, -1], [0, 0, 0, 1]]
        );
        assert_eq!(chi(&n4, &DimVector(vec![1, 2, 3, 1])), 8);
        assert_eq!(n4.a(&DimVector(vec![1, 2, 3, 1])), 7);
        let a3r = euler_form(&Algebra::new(fixtures::a3r()).unwrap()).unwrap();
        assert_eq!(a3r.matrix, [[1, -1, 1], [0, 1, -1], [0, 0, 1]]);
        assert_eq!(a3r.chi(&DimVector(vec![1, 1, 1])), 2);
        assert_eq!(euler_pair(&a3r, &DimVector(vec![1, 0, 0]), &DimVector(vec![0, 0, 1])), 1);
    }
}
