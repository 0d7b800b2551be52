use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quivrep::fixtures;
use quivrep::homology::{euler_form, ext_dims, gldim};
use quivrep::quiver::DimVector;
use quivrep::rep::{decompose, hom_dim, is_isomorphic};
use quivrep::shod::{build_catalog, ModuleCatalog};
use quivrep::variety::{hom_order_leq, tangent_dim};
use quivrep::Algebra;

fn catalog(name: &str) -> ModuleCatalog {
    let q = fixtures::by_name(name).unwrap();
    let alg = Arc::new(Algebra::new(q).unwrap());
    let n = alg.num_vertices();
    build_catalog(alg, &DimVector(vec![2; n])).unwrap()
}

fn mults(len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=2, len).prop_filter("nonzero", |v| v.iter().any(|&k| k > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_form_is_alternating_ext_sum(a in mults(7), b in mults(7)) {
        let c = catalog("n4");
        let alg = c.algebra();
        let (m, n) = (c.direct_sum(&a), c.direct_sum(&b));
        let exts = ext_dims(alg, &m, &n, gldim(alg).unwrap()).unwrap();
        let alt: i64 = exts.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        prop_assert_eq!(euler_form(alg).unwrap().pair(m.dims(), n.dims()), alt);
    }

    #[test]
    fn base_change_preserves_invariants(a in mults(5), seed in any::<u64>()) {
        let c = catalog("a3r");
        let m = c.direct_sum(&a);
        let g = m.random_conjugate(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assert!(is_isomorphic(&m, &g));
        prop_assert_eq!(hom_dim(&m, &m).unwrap(), hom_dim(&g, &g).unwrap());
        prop_assert_eq!(tangent_dim(&m), tangent_dim(&g));
        prop_assert_eq!(c.multiplicities(&g).unwrap(), Some(a.clone()));
        let total: usize = decompose(&g).unwrap().iter().map(|(_, k)| k).sum();
        prop_assert_eq!(total, a.iter().sum::<usize>());
    }

    #[test]
    fn tangent_space_brackets(a in mults(7)) {
        let c = catalog("n4");
        let m = c.direct_sum(&a);
        let end = hom_dim(&m, &m).unwrap();
        let orbit = m.dims().gl_dim() - end;
        let ext1 = ext_dims(c.algebra(), &m, &m, 1).unwrap()[1];
        let t = tangent_dim(&m);
        prop_assert!(orbit <= t && t <= orbit + ext1, "orbit {} tangent {} ext1 {}", orbit, t, ext1);
    }

    #[test]
    fn hom_order_is_reflexive(a in mults(7)) {
        let c = catalog("n4");
        let m = c.direct_sum(&a);
        prop_assert!(hom_order_leq(&m, &m, &c).unwrap());
    }
}
