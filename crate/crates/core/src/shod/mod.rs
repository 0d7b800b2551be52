//! Indecomposable catalogs and the shod structure theory built on them.

mod catalog;
mod classes;
mod prop1;

pub use catalog::{build_catalog, CatalogEntry, Completeness, ModuleCatalog, Tags};
pub use classes::{
    canonical_tilting, classify_lrp, ext_injectives_in_l, ext_projectives_in_r, injective_entries, is_shod,
    is_strict_shod, lambda_left, lambda_right, projective_entries, reachability, shod_offender, shod_report,
    Direction, ShodReport, Subalgebra, TiltingModule,
};
pub use prop1::{check_proposition1, ClaimReport, Prop1Report, DEFAULT_SAMPLES};
