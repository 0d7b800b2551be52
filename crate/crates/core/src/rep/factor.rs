use std::sync::Arc;

use super::{Morphism, Representation};
use crate::matrix::Matrix;

/// Kernel, image and cokernel of a morphism `f : M → N` with the induced maps.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub kernel: Arc<Representation>,
    /// `ker f → M`
    pub kernel_inclusion: Morphism,
    pub image: Arc<Representation>,
    /// `M → im f`
    pub coimage_map: Morphism,
    /// `im f → N`
    pub image_inclusion: Morphism,
    pub cokernel: Arc<Representation>,
    /// `N → coker f`
    pub cokernel_projection: Morphism,
}

pub fn factor_morphism(f: &Morphism) -> Factorization {
    let m = f.source();
    let n = f.target();
    let kernels: Vec<Matrix> = f.maps().iter().map(Matrix::kernel).collect();
    let images: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();

    let (_, ker_incl) = m
        .subrepresentation(&kernels)
        .expect("kernel of a morphism is a subrepresentation");
    let (im, im_incl) = n
        .subrepresentation(&images)
        .expect("image of a morphism is a subrepresentation");
    let (_, proj) = n
        .quotient(&images)
        .expect("image of a morphism is a subrepresentation");

    let im = Arc::new(im);
    let corestriction = images
        .iter()
        .zip(f.maps())
        .map(|(b, fx)| b.solve(fx).expect("f lands in its image"))
        .collect();
    let coimage_map = Morphism::new_unchecked(m.clone(), im.clone(), corestriction);
    let image_inclusion = Morphism::new_unchecked(im.clone(), n.clone(), im_incl.maps().to_vec());

    Factorization {
        kernel: ker_incl.source().clone(),
        kernel_inclusion: ker_incl,
        image: im,
        coimage_map,
        image_inclusion,
        cokernel: proj.target().clone(),
        cokernel_projection: proj,
    }
}

impl Factorization {
    /// Vertexwise exactness of `0 → ker → M → N → coker → 0`.
    pub fn is_exact(&self) -> bool {
        let n_vertices = self.kernel.dims().len();
        (0..n_vertices).all(|x| {
            let k = self.kernel_inclusion.map(x);
            let c = self.coimage_map.map(x);
            let i = self.image_inclusion.map(x);
            let p = self.cokernel_projection.map(x);
            k.rank() == k.cols()
                && c.rank() == c.rows()
                && (c * k).is_zero()
                && k.rank() + c.rank() == k.rows()
                && i.rank() == i.cols()
                && p.rank() == p.rows()
                && (p * i).is_zero()
                && i.rank() + p.rank() == i.rows()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::int;
    use crate::quiver::DimVector;
    use crate::rep::{hom_basis, is_isomorphic};

    fn interval(q: &Arc<crate::quiver::BoundQuiver>, i: usize, j: usize) -> Representation {
        let dims = DimVector((1..=q.num_vertices()).map(|v| usize::from(i <= v && v <= j)).collect());
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(dims.0[a.target], dims.0[a.source]);
                if i <= a.source + 1 && a.target < j {
                    m[(0, 0)] = int(1);
                }
                m
            })
            .collect();
        Representation::new(q.clone(), dims, maps).unwrap()
    }

    #[test]
    fn a2_projective_onto_simple() {
        let q = Arc::new(fixtures::a2());
        let p1 = interval(&q, 1, 2);
        let s1 = interval(&q, 1, 1);
        let f = &hom_basis(&p1, &s1).unwrap()[0];
        let fac = factor_morphism(f);
        assert!(fac.is_exact());
        assert!(is_isomorphic(&fac.kernel, &interval(&q, 2, 2)));
        assert!(is_isomorphic(&fac.image, &s1));
        assert!(fac.cokernel.is_zero());
    }

    #[test]
    fn zero_map() {
        let q = Arc::new(fixtures::a2());
        let m = Arc::new(interval(&q, 1, 2));
        let n = Arc::new(interval(&q, 2, 2));
        let fac = factor_morphism(&Morphism::zero(m.clone(), n.clone()));
        assert_eq!(fac.kernel.as_ref(), m.as_ref());
        assert!(fac.image.is_zero());
        assert!(is_isomorphic(&fac.cokernel, &n));
    }

    #[test]
    fn n4_map_through_simple() {
        let q = Arc::new(fixtures::n4());
        let m = interval(&q, 2, 3);
        let n = interval(&q, 1, 2);
        let basis = hom_basis(&m, &n).unwrap();
        assert_eq!(basis.len(), 1);
        let fac = factor_morphism(&basis[0]);
        assert!(fac.is_exact());
        assert!(is_isomorphic(&fac.kernel, &interval(&q, 3, 3)));
        assert!(is_isomorphic(&fac.image, &interval(&q, 2, 2)));
        assert!(is_isomorphic(&fac.cokernel, &interval(&q, 1, 1)));
    }
}
