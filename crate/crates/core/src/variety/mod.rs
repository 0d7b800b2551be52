//! Geometry of module varieties: tangent spaces, orbits, degenerations and
//! regularity certificates for boundary orbits.

mod certificate;
mod degeneration;
mod orbit;

pub use certificate::{
    add_t_instances, certify_add_t, codim1_regularity_report, regularity_certificate, split_dims, split_lp, CaseTag,
    CertifyOptions, CertifyReport, Codim1Report, Obligation, OrbitRecord, RegularityCertificate, ReportVerdict, Setting,
    Verdict, DISCLOSURES,
};
pub use degeneration::{degeneration_witness, hom_order_leq, minimal_degenerations, Budget, DegenerationEdge, Evidence};
pub use orbit::{lemma_tangent_check, orbit_info, tangent_dim, LemmaCheck, OrbitInfo};
