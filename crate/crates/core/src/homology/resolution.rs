use std::sync::Arc;

use crate::algebra::Algebra;
use crate::matrix::Matrix;
use crate::rep::{direct_sum_in, factor_morphism, Morphism, Representation};

/// A minimal projective resolution
/// `⋯ → P₂ → P₁ → P₀ → M → 0`, each `Pₙ` a sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Arc<Representation>,
    terms: Vec<Arc<Representation>>,
    /// Vertex of each indecomposable summand of `Pₙ`, in the order of the sum.
    summands: Vec<Vec<usize>>,
    augmentation: Morphism,
    /// `differentials[n - 1] : Pₙ → Pₙ₋₁`
    differentials: Vec<Morphism>,
    complete: bool,
}

impl Resolution {
    pub fn module(&self) -> &Arc<Representation> {
        &self.module
    }

    pub fn terms(&self) -> &[Arc<Representation>] {
        &self.terms
    }

    pub fn summands(&self, n: usize) -> &[usize] {
        &self.summands[n]
    }

    /// `(mult of P(x) in Pₙ)` for every vertex `x`.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; self.module.dims().len()];
        if let Some(s) = self.summands.get(n) {
            for &x in s {
                out[x] += 1;
            }
        }
        out
    }

    pub fn augmentation(&self) -> &Morphism {
        &self.augmentation
    }

    pub fn differentials(&self) -> &[Morphism] {
        &self.differentials
    }

    /// Index of the last nonzero term; `0` for projectives and for `M = 0`.
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0)
    }

    /// False when the last computed syzygy was still nonzero.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The same resolution cut after `Pₙ`, flagged incomplete if anything
    /// was dropped.
    pub fn truncated(&self, n: usize) -> Resolution {
        if n >= self.length() {
            return self.clone();
        }
        Resolution {
            module: self.module.clone(),
            terms: self.terms[..=n].to_vec(),
            summands: self.summands[..=n].to_vec(),
            augmentation: self.augmentation.clone(),
            differentials: self.differentials[..n].to_vec(),
            complete: false,
        }
    }

    /// Complex property and exactness at every stage.
    pub fn is_exact(&self) -> bool {
        let aug = &self.augmentation;
        if !aug.is_surjective() {
            return false;
        }
        let mut prev = aug.clone();
        for d in &self.differentials {
            if !prev.after(d).is_zero() {
                return false;
            }
            // im d = ker prev, vertexwise
            let ok = (0..d.maps().len()).all(|x| {
                let kernel_dim = prev.map(x).cols() - prev.map(x).rank();
                d.map(x).rank() == kernel_dim
            });
            if !ok {
                return false;
            }
            prev = d.clone();
        }
        if self.complete {
            return prev.is_injective();
        }
        true
    }

    /// Every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| {
            let rad = radical_basis(d.target());
            (0..d.maps().len()).all(|x| rad[x].spans(d.map(x)))
        })
    }
}

/// Column bases of `rad M_x = Σ_{α : y → x} Im M_α`.
pub(crate) fn radical_basis(m: &Representation) -> Vec<Matrix> {
    let q = m.quiver();
    (0..q.num_vertices())
        .map(|x| {
            let incoming: Vec<&Matrix> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == x)
                .map(|(i, _)| m.map(i))
                .collect();
            if incoming.is_empty() {
                Matrix::zeros(m.dim_at(x), 0)
            } else {
                Matrix::hstack(&incoming).column_space()
            }
        })
        .collect()
}

/// Vectors of `M_x` whose classes form a basis of `top M_x`.
pub(crate) fn top_generators(m: &Representation) -> Vec<Matrix> {
    radical_basis(m)
        .into_iter()
        .enumerate()
        .map(|(x, rad)| {
            let d = m.dim_at(x);
            let stacked = Matrix::hstack(&[&rad, &Matrix::identity(d)]);
            let chosen: Vec<usize> = stacked
                .echelon()
                .pivots
                .into_iter()
                .filter(|&p| p >= rad.cols())
                .map(|p| p - rad.cols())
                .collect();
            Matrix::identity(d).select_columns(&chosen)
        })
        .collect()
}

/// Projective cover `⊕ P(x) → M` from a basis of the top.
pub(crate) fn projective_cover(alg: &Algebra, m: &Arc<Representation>) -> (Arc<Representation>, Vec<usize>, Morphism) {
    let gens = top_generators(m);
    let mut summands = Vec::new();
    let mut vectors = Vec::new();
    for (x, g) in gens.iter().enumerate() {
        for c in 0..g.cols() {
            summands.push(x);
            vectors.push(g.select_columns(&[c]));
        }
    }
    let parts: Vec<&Representation> = summands.iter().map(|&x| alg.projective(x).as_ref()).collect();
    let cover = Arc::new(direct_sum_in(alg.quiver(), &parts).expect("projectives share the quiver"));
    let n = alg.num_vertices();
    let maps = (0..n)
        .map(|y| {
            let blocks: Vec<Matrix> = summands
                .iter()
                .zip(&vectors)
                .map(|(&x, g)| {
                    let cols: Vec<Matrix> = alg
                        .basis()
                        .paths_between(x, y)
                        .into_iter()
                        .map(|p| &m.path_matrix(p) * g)
                        .collect();
                    let refs: Vec<&Matrix> = cols.iter().collect();
                    if refs.is_empty() {
                        Matrix::zeros(m.dim_at(y), 0)
                    } else {
                        Matrix::hstack(&refs)
                    }
                })
                .collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            if refs.is_empty() {
                Matrix::zeros(m.dim_at(y), 0)
            } else {
                Matrix::hstack(&refs)
            }
        })
        .collect();
    let f = Morphism::new(cover.clone(), m.clone(), maps).expect("cover map commutes with arrows");
    (cover, summands, f)
}

pub(crate) fn compute_resolution(alg: &Algebra, m: &Representation, max_deg: usize) -> Resolution {
    let module = Arc::new(m.clone());
    let (p0, s0, aug) = projective_cover(alg, &module);
    let mut terms = vec![p0];
    let mut summands = vec![s0];
    let mut differentials: Vec<Morphism> = Vec::new();
    let mut prev = aug.clone();
    let mut complete = false;
    loop {
        let fac = factor_morphism(&prev);
        if fac.kernel.is_zero() {
            complete = true;
            break;
        }
        if terms.len() > max_deg {
            break;
        }
        let (p, s, cover) = projective_cover(alg, &fac.kernel);
        let d = fac.kernel_inclusion.after(&cover);
        terms.push(p);
        summands.push(s);
        differentials.push(d.clone());
        prev = d;
    }
    Resolution {
        module,
        terms,
        summands,
        augmentation: aug,
        differentials,
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn n4_simple_resolutions() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        let r3 = alg.resolution(alg.simple(2)).unwrap();
        assert_eq!(r3.length(), 1);
        assert_eq!(r3.summands(0), &[2]);
        assert_eq!(r3.summands(1), &[3]);
        let r1 = alg.resolution(alg.simple(0)).unwrap();
        assert_eq!(r1.length(), 3);
        let tops: Vec<&[usize]> = (0..4).map(|n| r1.summands(n)).collect();
        assert_eq!(tops, [&[0][..], &[1], &[2], &[3]]);
        assert!(r1.is_complete() && r1.is_exact() && r1.is_minimal());
        let t = r1.truncated(1);
        assert!(!t.is_complete());
        assert_eq!(t.terms().len(), 2);
    }

    #[test]
    fn projectives_have_length_zero() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        for p in alg.projectives() {
            let r = alg.resolution(p).unwrap();
            assert_eq!(r.length(), 0);
            assert!(r.is_complete() && r.augmentation().is_iso());
        }
    }

    #[test]
    fn memo_returns_shared_result() {
        let alg = Algebra::new(fixtures::a3r()).unwrap();
        let a = alg.resolution(alg.simple(0)).unwrap();
        let b = alg.resolution(alg.simple(0)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
