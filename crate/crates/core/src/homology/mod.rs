//! Projective resolutions, `Extⁿ`, homological dimensions and the Euler form.

mod euler;
mod ext;
mod resolution;

pub use euler::{chi, euler_form, euler_pair, EulerForm};
pub use ext::{ext_dim, ext_dims, gldim, id, pd};
pub use resolution::Resolution;

pub(crate) use resolution::compute_resolution;

use crate::algebra::{Algebra, ModuleKind};
use crate::error::Result;
use crate::rep::Representation;

/// `P(x)`, `I(x)` or `S(x)`.
pub fn standard_module(alg: &Algebra, kind: ModuleKind, x: usize) -> Result<Representation> {
    alg.standard(kind, x).map(|m| m.as_ref().clone())
}

/// Minimal projective resolution up to degree `max_deg`; incomplete if
/// `pd M > max_deg`.
pub fn min_proj_resolution(alg: &Algebra, m: &Representation, max_deg: usize) -> Result<Resolution> {
    Ok(alg.resolution(m)?.truncated(max_deg))
}
