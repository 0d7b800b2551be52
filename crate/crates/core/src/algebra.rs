//! A bound quiver algebra together with its path basis, standard modules and
//! a per-algebra memo of projective resolutions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::homology::{self, Resolution};
use crate::matrix::Matrix;
use crate::quiver::{BoundQuiver, DimVector, Path, PathBasis};
use crate::rep::{direct_sum_in, Representation};

/// Truncation length used for quivers with oriented cycles.
pub const CYCLIC_MAX_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleKind {
    Projective,
    Injective,
    Simple,
}

impl ModuleKind {
    pub fn letter(self) -> char {
        match self {
            ModuleKind::Projective => 'P',
            ModuleKind::Injective => 'I',
            ModuleKind::Simple => 'S',
        }
    }
}

pub struct Algebra {
    quiver: Arc<BoundQuiver>,
    basis: PathBasis,
    max_len: usize,
    projectives: Vec<Arc<Representation>>,
    simples: Vec<Arc<Representation>>,
    injectives: OnceLock<Vec<Arc<Representation>>>,
    opposite: OnceLock<Arc<Algebra>>,
    resolutions: Mutex<HashMap<String, Arc<Resolution>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("vertices", &self.quiver.vertices())
            .field("dim", &self.basis.dim())
            .finish()
    }
}

impl Algebra {
    /// Uses the longest path length plus one for acyclic quivers, which makes
    /// the path basis exact, and [`CYCLIC_MAX_LEN`] otherwise.
    pub fn new(quiver: BoundQuiver) -> Result<Self> {
        let max_len = match quiver.longest_path() {
            Some(l) => (l + 1).max(2),
            None => CYCLIC_MAX_LEN,
        };
        Self::with_max_len(quiver, max_len)
    }

    pub fn with_max_len(quiver: BoundQuiver, max_len: usize) -> Result<Self> {
        let basis = PathBasis::new(&quiver, max_len)?;
        let quiver = Arc::new(quiver);
        let n = quiver.num_vertices();
        let projectives = (0..n)
            .map(|x| Arc::new(build_projective(&quiver, &basis, x)))
            .collect();
        let simples = (0..n)
            .map(|x| Arc::new(Representation::zero(quiver.clone(), DimVector::unit(n, x))))
            .collect();
        Ok(Algebra {
            quiver,
            basis,
            max_len,
            projectives,
            simples,
            injectives: OnceLock::new(),
            opposite: OnceLock::new(),
            resolutions: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.quiver.vertices()[x]
    }

    pub fn projective(&self, x: usize) -> &Arc<Representation> {
        &self.projectives[x]
    }

    pub fn simple(&self, x: usize) -> &Arc<Representation> {
        &self.simples[x]
    }

    pub fn injective(&self, x: usize) -> &Arc<Representation> {
        &self.injectives()[x]
    }

    pub fn injectives(&self) -> &[Arc<Representation>] {
        self.injectives.get_or_init(|| {
            let op = self.opposite();
            (0..self.num_vertices())
                .map(|x| Arc::new(self.dual_from_opposite(op.projective(x))))
                .collect()
        })
    }

    pub fn projectives(&self) -> &[Arc<Representation>] {
        &self.projectives
    }

    pub fn simples(&self) -> &[Arc<Representation>] {
        &self.simples
    }

    pub fn standard(&self, kind: ModuleKind, x: usize) -> Result<&Arc<Representation>> {
        if x >= self.num_vertices() {
            return Err(Error::UnknownVertex(x.to_string()));
        }
        Ok(match kind {
            ModuleKind::Projective => self.projective(x),
            ModuleKind::Injective => self.injective(x),
            ModuleKind::Simple => self.simple(x),
        })
    }

    /// The opposite algebra, built on first use.
    pub fn opposite(&self) -> &Arc<Algebra> {
        self.opposite.get_or_init(|| {
            Arc::new(
                Algebra::with_max_len(self.quiver.opposite(), self.max_len)
                    .expect("the opposite of an admissible algebra is admissible"),
            )
        })
    }

    /// `D M = Hom_k(M, k)`, a representation of the opposite quiver.
    pub fn dual(&self, m: &Representation) -> Representation {
        let op = self.opposite();
        dual_over(op.quiver(), m)
    }

    /// `D N` for a representation `N` of the opposite quiver.
    pub fn dual_from_opposite(&self, n: &Representation) -> Representation {
        dual_over(&self.quiver, n)
    }

    /// Direct sum of standard modules, e.g. `[(Projective, 0), (Simple, 2)]`.
    pub fn sum_of_standard(&self, parts: &[(ModuleKind, usize)]) -> Result<Representation> {
        let ms = parts
            .iter()
            .map(|&(k, x)| self.standard(k, x).map(|m| m.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        direct_sum_in(&self.quiver, &ms)
    }

    /// The minimal projective resolution of `m`, memoized by the exact
    /// matrices of `m`.
    pub fn resolution(&self, m: &Representation) -> Result<Arc<Resolution>> {
        self.check_quiver(m)?;
        let key = m.canonical_key();
        if let Some(r) = self.resolutions.lock().expect("memo lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(homology::compute_resolution(self, m, self.divergence_guard()));
        self.resolutions
            .lock()
            .expect("memo lock")
            .entry(key)
            .or_insert(r.clone());
        Ok(r)
    }

    pub fn check_quiver(&self, m: &Representation) -> Result<()> {
        if Arc::ptr_eq(m.quiver(), &self.quiver) || **m.quiver() == *self.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// Resolutions are not followed beyond this many steps.
    pub fn divergence_guard(&self) -> usize {
        self.dim()
    }
}

fn dual_over(q: &Arc<BoundQuiver>, m: &Representation) -> Representation {
    let maps = m.maps().iter().map(Matrix::transpose).collect();
    Representation::new(q.clone(), m.dims().clone(), maps).expect("dual satisfies opposite relations")
}

/// `P(x)`: at `y` the basis paths `x → y`; arrows act by left multiplication
/// followed by reduction to normal form.
fn build_projective(q: &Arc<BoundQuiver>, basis: &PathBasis, x: usize) -> Representation {
    let n = q.num_vertices();
    let at: Vec<Vec<&Path>> = (0..n).map(|y| basis.paths_between(x, y)).collect();
    let dims = DimVector(at.iter().map(Vec::len).collect());
    let one = crate::matrix::int(1);
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let arrow_path = Path::new(q, vec![ai]).expect("single arrow is a path");
            let mut m = Matrix::zeros(dims.0[a.target], dims.0[a.source]);
            for (c, p) in at[a.source].iter().enumerate() {
                let prod = arrow_path.after(p).expect("endpoints match");
                let nf = basis.normal_form(&[(one.clone(), prod)]);
                for (r, target_path) in at[a.target].iter().enumerate() {
                    let pos = basis.position(target_path).expect("basis path");
                    m[(r, c)] = nf[pos].clone();
                }
            }
            m
        })
        .collect();
    Representation::new(q.clone(), dims, maps).expect("projectives satisfy the relations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::parse_bound_quiver;
    use crate::rep::{hom_dim, is_isomorphic};

    #[test]
    fn standard_modules_of_n4() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        assert_eq!(alg.projective(0).dims(), &DimVector(vec![1, 1, 0, 0]));
        assert_eq!(alg.injective(2).dims(), &DimVector(vec![0, 1, 1, 0]));
        assert_eq!(alg.simple(3).dims(), &DimVector(vec![0, 0, 0, 1]));
        assert!(is_isomorphic(alg.injective(2), alg.projective(1)));
        assert!(matches!(alg.standard(ModuleKind::Simple, 9), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn a2_projective_is_identity() {
        let alg = Algebra::new(fixtures::a2()).unwrap();
        assert_eq!(alg.projective(0).map(0), &Matrix::identity(1));
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        let q = parse_bound_quiver(
            "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation: b*a - d*c\n",
        )
        .unwrap();
        let alg = Algebra::new(q).unwrap();
        assert_eq!(alg.projective(0).dims(), &DimVector(vec![1, 1, 1, 1]));
        for m in alg.projectives().iter().chain(alg.injectives()) {
            for x in 0..4 {
                assert_eq!(hom_dim(alg.projective(x), m).unwrap(), m.dim_at(x));
                assert_eq!(hom_dim(m, alg.injective(x)).unwrap(), m.dim_at(x));
            }
        }
    }
}
