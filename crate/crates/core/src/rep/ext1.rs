//! `Ext¹(V, U)` realized by explicit extensions.
//!
//! A cocycle is a family `Z_α : V_{sα} → U_{tα}` such that the block matrices
//! `[[U_α, Z_α], [0, V_α]]` satisfy the relations; coboundaries are
//! `Z_α = U_α h_s − h_t V_α`. The same linearized relation equations with
//! `U = V = M` cut out the tangent space of the module variety at `M`.

use std::sync::Arc;

use num::Zero;

use super::hom::hom_equations;
use super::{direct_sum, is_isomorphic, Morphism, Representation};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};
use crate::quiver::{DimVector, Path};

/// An exact sequence `0 → U → E → V → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    iota: Morphism,
    pi: Morphism,
}

impl ShortExactSeq {
    pub fn new(iota: Morphism, pi: Morphism) -> Result<Self> {
        if iota.target().as_ref() != pi.source().as_ref() {
            return Err(Error::NotExact("middle terms differ".into()));
        }
        let s = ShortExactSeq { iota, pi };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        for x in 0..self.iota.maps().len() {
            let i = self.iota.map(x);
            let p = self.pi.map(x);
            if i.rank() != i.cols() {
                return Err(Error::NotExact(format!("ι not injective at vertex {x}")));
            }
            if p.rank() != p.rows() {
                return Err(Error::NotExact(format!("π not surjective at vertex {x}")));
            }
            if !(p * i).is_zero() {
                return Err(Error::NotExact(format!("π∘ι ≠ 0 at vertex {x}")));
            }
            if i.rank() + p.rank() != i.rows() {
                return Err(Error::NotExact(format!("not exact in the middle at vertex {x}")));
            }
        }
        Ok(())
    }

    pub fn u(&self) -> &Arc<Representation> {
        self.iota.source()
    }

    pub fn e(&self) -> &Arc<Representation> {
        self.iota.target()
    }

    pub fn v(&self) -> &Arc<Representation> {
        self.pi.target()
    }

    pub fn iota(&self) -> &Morphism {
        &self.iota
    }

    pub fn pi(&self) -> &Morphism {
        &self.pi
    }

    pub fn is_exact(&self) -> bool {
        self.check().is_ok()
    }

    /// Whether the middle term is isomorphic to `U ⊕ V`.
    pub fn splits(&self) -> bool {
        direct_sum(&[self.u().as_ref(), self.v().as_ref()])
            .is_ok_and(|sum| is_isomorphic(self.e(), &sum))
    }

    /// The pushout `0 → U' → E' → V → 0` along `p : U → U'`.
    pub fn pushout(&self, p: &Morphism) -> Result<ShortExactSeq> {
        if p.source().as_ref() != self.u().as_ref() {
            return Err(Error::InvalidMorphism("pushout map must start at U".into()));
        }
        let u2 = p.target().clone();
        let e = self.e().clone();
        let sum = Arc::new(direct_sum(&[u2.as_ref(), e.as_ref()])?);
        // u ↦ (p(u), −ι(u))
        let phi_maps = (0..p.maps().len())
            .map(|x| Matrix::vstack(&[p.map(x), &-self.iota.map(x)]))
            .collect();
        let phi = Morphism::new_unchecked(self.u().clone(), sum.clone(), phi_maps);
        let fac = super::factor_morphism(&phi);
        let q = fac.cokernel_projection;
        let e2 = fac.cokernel;
        let iota_maps = (0..q.maps().len())
            .map(|x| {
                let du2 = u2.dim_at(x);
                let incl = Matrix::vstack(&[&Matrix::identity(du2), &Matrix::zeros(e.dim_at(x), du2)]);
                q.map(x) * &incl
            })
            .collect();
        let pi_maps = (0..q.maps().len())
            .map(|x| {
                let onto = Matrix::hstack(&[&Matrix::zeros(self.v().dim_at(x), u2.dim_at(x)), self.pi.map(x)]);
                let section = q
                    .map(x)
                    .right_inverse()
                    .unwrap_or_else(|| Matrix::zeros(q.map(x).cols(), 0));
                &onto * &section
            })
            .collect();
        ShortExactSeq::new(
            Morphism::new(u2, e2.clone(), iota_maps)?,
            Morphism::new(e2, self.v().clone(), pi_maps)?,
        )
    }

    /// The pullback `0 → U → E' → V' → 0` along `i : V' → V`.
    pub fn pullback(&self, i: &Morphism) -> Result<ShortExactSeq> {
        if i.target().as_ref() != self.v().as_ref() {
            return Err(Error::InvalidMorphism("pullback map must end at V".into()));
        }
        let v2 = i.source().clone();
        let e = self.e().clone();
        let sum = Arc::new(direct_sum(&[e.as_ref(), v2.as_ref()])?);
        // (e, v') ↦ π(e) − i(v')
        let psi_maps = (0..i.maps().len())
            .map(|x| Matrix::hstack(&[self.pi.map(x), &-i.map(x)]))
            .collect();
        let psi = Morphism::new_unchecked(sum, self.v().clone(), psi_maps);
        let fac = super::factor_morphism(&psi);
        let k = fac.kernel_inclusion;
        let e2 = fac.kernel;
        let mut iota_maps = Vec::new();
        let mut pi_maps = Vec::new();
        for x in 0..k.maps().len() {
            let (de, dv2, du) = (e.dim_at(x), v2.dim_at(x), self.u().dim_at(x));
            let lifted = Matrix::vstack(&[self.iota.map(x), &Matrix::zeros(dv2, du)]);
            iota_maps.push(k.map(x).solve(&lifted).ok_or_else(|| Error::NotExact("ι does not factor".into()))?);
            let proj = Matrix::hstack(&[&Matrix::zeros(dv2, de), &Matrix::identity(dv2)]);
            pi_maps.push(&proj * k.map(x));
        }
        ShortExactSeq::new(
            Morphism::new(self.u().clone(), e2.clone(), iota_maps)?,
            Morphism::new(e2, v2, pi_maps)?,
        )
    }
}

/// Product of arrow matrices along `arrows[range]` (written order, so the
/// last arrow acts first); identity of size `dim` for an empty range.
fn partial_product(m: &Representation, arrows: &[usize], dim: usize) -> Matrix {
    let mut acc = Matrix::identity(dim);
    for &a in arrows.iter().rev() {
        acc = m.map(a) * &acc;
    }
    acc
}

fn z_offsets(v: &Representation, u: &Representation) -> (Vec<usize>, usize) {
    let mut off = Vec::new();
    let mut total = 0;
    for a in v.quiver().arrows() {
        off.push(total);
        total += u.dim_at(a.target) * v.dim_at(a.source);
    }
    (off, total)
}

/// Linearized relations in the unknowns `Z_α` (row-major, arrow order).
pub(crate) fn cocycle_equations(v: &Representation, u: &Representation) -> Matrix {
    let q = v.quiver();
    let (off, unknowns) = z_offsets(v, u);
    let rows: usize = q
        .relations()
        .iter()
        .map(|r| u.dim_at(r.target()) * v.dim_at(r.source()))
        .sum();
    let mut eq = Matrix::zeros(rows, unknowns);
    let mut r0 = 0;
    for rel in q.relations() {
        let (ut, vs) = (u.dim_at(rel.target()), v.dim_at(rel.source()));
        for (lambda, path) in rel.terms() {
            add_path_terms(&mut eq, r0, lambda, path, v, u, &off);
        }
        r0 += ut * vs;
    }
    eq
}

fn add_path_terms(
    eq: &mut Matrix,
    r0: usize,
    lambda: &Scalar,
    path: &Path,
    v: &Representation,
    u: &Representation,
    off: &[usize],
) {
    let q = v.quiver();
    let arrows = path.arrows();
    let vs = v.dim_at(path.source());
    for j in 0..arrows.len() {
        let aj = arrows[j];
        let arrow = &q.arrows()[aj];
        // L = U_{α₁}⋯U_{α_{j−1}},  R = V_{α_{j+1}}⋯V_{αₙ}
        let left = partial_product(u, &arrows[..j], u.dim_at(arrow.target));
        let right = partial_product(v, &arrows[j + 1..], v.dim_at(path.source()));
        let (zr, zc) = (u.dim_at(arrow.target), v.dim_at(arrow.source));
        for i in 0..left.rows() {
            for p in 0..zr {
                let l = &left[(i, p)];
                if l.is_zero() {
                    continue;
                }
                let lam_l = lambda * l;
                for qq in 0..zc {
                    for k in 0..vs {
                        let r = &right[(qq, k)];
                        if r.is_zero() {
                            continue;
                        }
                        eq[(r0 + i * vs + k, off[aj] + p * zc + qq)] += &lam_l * r;
                    }
                }
            }
        }
    }
}

fn unflatten_z(v: &Representation, u: &Representation, z: &[Scalar]) -> Vec<Matrix> {
    let (off, _) = z_offsets(v, u);
    v.quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (r, c) = (u.dim_at(a.target), v.dim_at(a.source));
            Matrix::from_vec(r, c, z[off[i]..off[i] + r * c].to_vec())
        })
        .collect()
}

/// `dim Z¹(V, U)`; for `U = V = M` this is the dimension of the scheme
/// tangent space of the module variety at `M`.
pub fn cocycle_space_dim(v: &Representation, u: &Representation) -> Result<usize> {
    v.check_same_quiver(u)?;
    let eq = cocycle_equations(v, u);
    Ok(eq.cols() - eq.rank())
}

/// Cocycles representing a basis of `Ext¹(V, U)`.
pub fn ext1_cocycle_basis(v: &Representation, u: &Representation) -> Result<Vec<Vec<Matrix>>> {
    v.check_same_quiver(u)?;
    let z = cocycle_equations(v, u).kernel();
    let b = hom_equations(v, u).0.column_space();
    let stacked = Matrix::hstack(&[&b, &z]);
    let pivots = stacked.echelon().pivots;
    let chosen: Vec<usize> = pivots
        .into_iter()
        .filter(|&p| p >= b.cols())
        .map(|p| p - b.cols())
        .collect();
    Ok(chosen
        .into_iter()
        .map(|c| unflatten_z(v, u, &z.column(c)))
        .collect())
}

/// The extension `0 → U → E → V → 0` with `E_α = [[U_α, Z_α], [0, V_α]]`.
pub fn extension_from_cocycle(v: &Representation, u: &Representation, z: &[Matrix]) -> Result<ShortExactSeq> {
    v.check_same_quiver(u)?;
    let q = v.quiver().clone();
    let dims: DimVector = u.dims().add(v.dims());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut m = Matrix::zeros(dims.0[a.target], dims.0[a.source]);
            m.set_block(0, 0, u.map(i));
            m.set_block(0, u.dim_at(a.source), &z[i]);
            m.set_block(u.dim_at(a.target), u.dim_at(a.source), v.map(i));
            m
        })
        .collect();
    let e = Arc::new(Representation::new(q, dims, maps)?);
    let (ua, va) = (Arc::new(u.clone()), Arc::new(v.clone()));
    let iota = (0..u.dims().len())
        .map(|x| Matrix::vstack(&[&Matrix::identity(u.dim_at(x)), &Matrix::zeros(v.dim_at(x), u.dim_at(x))]))
        .collect();
    let pi = (0..u.dims().len())
        .map(|x| Matrix::hstack(&[&Matrix::zeros(v.dim_at(x), u.dim_at(x)), &Matrix::identity(v.dim_at(x))]))
        .collect();
    ShortExactSeq::new(Morphism::new(ua, e.clone(), iota)?, Morphism::new(e, va, pi)?)
}

/// A basis of `Ext¹(V, U)` as non-split short exact sequences.
pub fn ext1_classes(v: &Representation, u: &Representation) -> Result<Vec<ShortExactSeq>> {
    ext1_cocycle_basis(v, u)?
        .iter()
        .map(|z| extension_from_cocycle(v, u, z))
        .collect()
}

/// Linear combination `Σ cᵢ Zᵢ` of cocycles.
pub fn combine_cocycles(basis: &[Vec<Matrix>], coeffs: &[Scalar]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (z, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, zi) in out.iter_mut().zip(z) {
            *o = &*o + &zi.scale(c);
        }
    }
    out
}
