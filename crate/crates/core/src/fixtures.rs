//! The bundled fixture algebras.

use crate::quiver::{parse_bound_quiver, BoundQuiver};

pub const A2: &str = include_str!("../fixtures/a2.quiver");
pub const A3R: &str = include_str!("../fixtures/a3r.quiver");
pub const N4: &str = include_str!("../fixtures/n4.quiver");

pub fn a2() -> BoundQuiver {
    parse_bound_quiver(A2).expect("bundled fixture parses")
}

pub fn a3r() -> BoundQuiver {
    parse_bound_quiver(A3R).expect("bundled fixture parses")
}

pub fn n4() -> BoundQuiver {
    parse_bound_quiver(N4).expect("bundled fixture parses")
}

/// Looks up a bundled fixture by name (`a2`, `a3r`, `n4`).
pub fn by_name(name: &str) -> Option<BoundQuiver> {
    match name {
        "a2" => Some(a2()),
        "a3r" => Some(a3r()),
        "n4" => Some(n4()),
        _ => None,
    }
}
