//! Claim-by-claim verification of the structure statements for strict shod
//! algebras: orthogonality of L and P, the J ⊕ Q sandwich, the shape of the
//! subalgebras, and the Hom/Ext criteria for add L and add P.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::homology::ext_dims;
use crate::rep::{decompose, hom_dim, Representation};

use super::catalog::ModuleCatalog;
use super::classes::{ext_injectives_in_l, ext_projectives_in_r, lambda_left, lambda_right, projective_entries};

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: u8,
    pub statement: &'static str,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl ClaimReport {
    fn new(claim: u8, statement: &'static str) -> Self {
        ClaimReport {
            claim,
            statement,
            checked: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1Report {
    pub claims: Vec<ClaimReport>,
    pub catalog_exhaustive: bool,
    pub random_sums: usize,
}

impl Prop1Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(ClaimReport::passed)
    }

    pub fn claim(&self, n: u8) -> &ClaimReport {
        &self.claims[usize::from(n) - 1]
    }
}

/// Default number of random direct sums used for the last two claims.
pub const DEFAULT_SAMPLES: usize = 200;

pub fn check_proposition1(c: &ModuleCatalog, samples: usize, seed: u64) -> Result<Prop1Report> {
    let n = c.len();
    let l = c.indices_where(|e| e.tags.in_l);
    let p = c.indices_where(|e| e.tags.in_p);
    let j = ext_injectives_in_l(c);
    let q = ext_projectives_in_r(c);
    let mut jq: Vec<usize> = j.iter().chain(&q).copied().collect();
    jq.sort_unstable();
    jq.dedup();
    let name = |i: usize| c.entry(i).name.clone();

    let mut c1 = ClaimReport::new(1, "Hom(Y, X) = 0 and Ext^n(X, Y) = 0 for X in L, Y in P, n >= 1");
    for &x in &l {
        for &y in &p {
            let mut bad = Vec::new();
            if c.hom(y, x) != 0 {
                bad.push("Hom".to_string());
            }
            for k in 1..=c.ext_depth() {
                if c.ext(k, x, y) != 0 {
                    bad.push(format!("Ext^{k}"));
                }
            }
            c1.record(bad.is_empty(), || format!("{} between {} and {}", bad.join(","), name(x), name(y)));
        }
    }

    let mut c2 = ClaimReport::new(2, "Hom(J+Q, X) != 0 != Hom(X, J+Q) implies X in add(J+Q)");
    for x in 0..n {
        let into = jq.iter().any(|&t| c.hom(t, x) != 0);
        let out = jq.iter().any(|&t| c.hom(x, t) != 0);
        c2.record(!(into && out) || jq.contains(&x), || name(x));
    }

    let mut c3 = ClaimReport::new(3, "End(X) = k and Ext^n(X, X) = 0 for indecomposable X in add(J+Q)");
    for &x in &jq {
        let ok = c.hom(x, x) == 1 && (1..=c.ext_depth()).all(|k| c.ext(k, x, x) == 0);
        c3.record(ok, || name(x));
    }

    let mut c4 = ClaimReport::new(4, "gldim of the left and right subalgebras is at most 2");
    for (side, sub) in [("left", lambda_left(c)), ("right", lambda_right(c))] {
        match sub {
            Ok(s) => c4.record(s.gldim.is_some_and(|g| g <= 2), || format!("{side}: gldim {:?}", s.gldim)),
            Err(e) => c4.record(false, || format!("{side}: {e}")),
        }
    }

    let outside_l: Vec<usize> = projective_entries(c)
        .into_iter()
        .enumerate()
        .filter(|(_, e)| !e.is_some_and(|i| c.entry(i).tags.in_l))
        .map(|(x, _)| x)
        .collect();
    let alg = c.algebra();
    let j_module = c.direct_sum(&indicator(n, &j));

    let sums = random_sums(c, samples, seed);
    let verdicts: Vec<Result<(Option<String>, Option<String>)>> = sums
        .par_iter()
        .map(|(mults, m)| {
            let summands = decompose(m)?;
            let mut in_add_l = true;
            let mut in_add_p = true;
            for (s, _) in &summands {
                match c.find(s) {
                    Some(i) => {
                        in_add_l &= c.entry(i).tags.in_l;
                        in_add_p &= c.entry(i).tags.in_p;
                    }
                    None => {
                        in_add_l = false;
                        in_add_p = false;
                    }
                }
            }
            let ext1_j = ext_dims(alg, m, &j_module, 1)?[1];
            let hom_p = outside_l.iter().map(|&x| m.dim_at(x)).sum::<usize>();
            let crit_l = ext1_j == 0 && hom_p == 0;
            let crit_p = hom_dim(m, &j_module)? == 0;
            let label = c.describe(mults);
            Ok((
                (crit_l != in_add_l).then(|| format!("{label}: criterion {crit_l}, summands {in_add_l}")),
                (crit_p != in_add_p).then(|| format!("{label}: criterion {crit_p}, summands {in_add_p}")),
            ))
        })
        .collect();
    let mut c5 = ClaimReport::new(5, "M in add L iff Ext^1(M, J) = 0 and Hom(P(x), M) = 0 for P(x) not in L");
    let mut c6 = ClaimReport::new(6, "M in add P iff Hom(M, J) = 0");
    for v in verdicts {
        let (bad5, bad6) = v?;
        c5.record(bad5.is_none(), || bad5.unwrap_or_default());
        c6.record(bad6.is_none(), || bad6.unwrap_or_default());
    }

    Ok(Prop1Report {
        claims: vec![c1, c2, c3, c4, c5, c6],
        catalog_exhaustive: c.is_exhaustive(),
        random_sums: sums.len(),
    })
}

fn indicator(n: usize, idx: &[usize]) -> Vec<usize> {
    let mut v = vec![0; n];
    for &i in idx {
        v[i] = 1;
    }
    v
}

/// Every nonzero direct sum of catalog entries whose dimension vector stays
/// within the catalog bound, each conjugated by a random base change. When
/// there are more than `samples` of them, the single entries are kept and
/// the rest is drawn at random.
fn random_sums(c: &ModuleCatalog, samples: usize, seed: u64) -> Vec<(Vec<usize>, Representation)> {
    let n = c.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = Vec::new();
    sums_within(c, &mut vec![0; n], 0, &mut all);
    all.retain(|v| v.iter().any(|&k| k > 0));
    all.sort_by_key(|v| (v.iter().sum::<usize>(), std::cmp::Reverse(v.clone())));
    if all.len() > samples {
        let singles = all.iter().take_while(|v| v.iter().sum::<usize>() == 1).count().min(samples);
        let rest = all.split_off(singles);
        let picks = rand::seq::index::sample(&mut rng, rest.len(), samples - singles);
        let mut picks = picks.into_vec();
        picks.sort_unstable();
        all.extend(picks.into_iter().map(|i| rest[i].clone()));
    }
    all.into_iter()
        .map(|v| {
            let m = c.direct_sum(&v).random_conjugate(&mut rng, 2);
            (v, m)
        })
        .collect()
}

fn sums_within(c: &ModuleCatalog, v: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == v.len() {
        out.push(v.clone());
        return;
    }
    loop {
        sums_within(c, v, i + 1, out);
        v[i] += 1;
        if !c.dims_of(v).le(c.bound()) {
            v[i] = 0;
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;
    use crate::fixtures;
    use crate::quiver::DimVector;
    use crate::shod::build_catalog;

    #[test]
    fn n4_all_claims_hold() {
        let c = build_catalog(Arc::new(Algebra::new(fixtures::n4()).unwrap()), &DimVector(vec![2; 4])).unwrap();
        let r = check_proposition1(&c, 60, 7).unwrap();
        for claim in &r.claims {
            assert!(claim.passed(), "claim {}: {:?}", claim.claim, claim.counterexamples);
        }
        assert_eq!(r.claim(1).checked, 12);
        assert_eq!(r.claim(3).checked, 5);
        assert_eq!(r.claim(5).checked, 60);
    }

    #[test]
    fn hereditary_claim_one_is_vacuous() {
        // Hereditary: every module is in L, so P is empty and claim 1 is vacuous.
        let c = build_catalog(Arc::new(Algebra::new(fixtures::a2()).unwrap()), &DimVector(vec![2, 2])).unwrap();
        let r = check_proposition1(&c, 10, 1).unwrap();
        assert!(r.claim(1).passed());
        assert_eq!(r.claim(1).checked, 0);
    }
}
