//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use quivrep::fixtures;
use quivrep::homology::{euler_form, ext_dims, gldim};
use quivrep::quiver::{BoundQuiver, DimVector};
use quivrep::rep::{direct_sum, hom_dim, is_isomorphic, Representation};
use quivrep::shod::{build_catalog, canonical_tilting, check_proposition1, shod_report, ModuleCatalog};
use quivrep::variety::{
    certify_add_t, degeneration_witness, hom_order_leq, lemma_tangent_check, minimal_degenerations, orbit_info,
    tangent_dim, Budget, CertifyOptions,
};
use quivrep::Algebra;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog(q: BoundQuiver, bound: usize) -> ModuleCatalog {
    let alg = Arc::new(Algebra::new(q).expect("fixture algebra"));
    let n = alg.num_vertices();
    build_catalog(alg, &DimVector(vec![bound; n])).expect("fixture catalog")
}

fn n4() -> ModuleCatalog {
    catalog(fixtures::n4(), 2)
}

fn a3r() -> ModuleCatalog {
    catalog(fixtures::a3r(), 2)
}

fn a2() -> ModuleCatalog {
    catalog(fixtures::a2(), 2)
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// Name of the catalog entry whose dimension vector is the interval
/// `[a, b]` (1-based, inclusive). Over a linear Nakayama algebra these
/// intervals are exactly the indecomposables.
fn interval(c: &ModuleCatalog, a: usize, b: usize) -> String {
    let n = c.algebra().num_vertices();
    let d: Vec<usize> = (1..=n).map(|x| usize::from(a <= x && x <= b)).collect();
    let hits: Vec<&str> = c
        .entries()
        .iter()
        .filter(|en| en.module.dims().0 == d)
        .map(|en| en.name.as_str())
        .collect();
    assert_eq!(hits.len(), 1, "interval [{a},{b}]");
    hits[0].to_string()
}

fn set(items: &[String]) -> BTreeSet<String> {
    items.iter().cloned().collect()
}

fn euler_identity() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for c in [n4(), a3r()] {
        let alg = c.algebra();
        let g = gldim(alg).map_err(e)?;
        let form = euler_form(alg).map_err(e)?;
        for x in c.entries() {
            for y in c.entries() {
                let exts = ext_dims(alg, &x.module, &y.module, g).map_err(e)?;
                let alt: i64 = exts.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
                let lhs = form.pair(x.module.dims(), y.module.dims());
                ensure(lhs == alt, || format!("<{}, {}> = {lhs} but alternating sum {alt}", x.name, y.name))?;
                pairs += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure(pairs == 49 + 25, || format!("{pairs} pairs"))?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("{pairs} pairs in {:.2?}", took))
}

fn n4_pinned() -> Outcome {
    let c = n4();
    let alg = c.algebra();
    ensure(gldim(alg) == Ok(3), || format!("gldim {:?}", gldim(alg)))?;
    let r = shod_report(&c);
    ensure(r.is_strict_shod, || "not strict shod".into())?;
    ensure(c.len() == 7 && c.is_exhaustive(), || format!("catalog size {}", c.len()))?;

    let s = |x: usize| alg.vertex_name(x - 1).to_string();
    let s = |x: usize| format!("S({})", s(x));
    let iv = |a, b| interval(&c, a, b);
    let want_l = set(&[s(3), s(4), iv(2, 3), iv(3, 4)]);
    let want_p = set(&[s(1), iv(1, 2), s(2)]);
    let want_j = set(&[s(3), iv(2, 3), iv(3, 4)]);
    let want_q = set(&[iv(1, 2), s(2), iv(2, 3)]);
    let want_t = set(&[s(3), iv(2, 3), iv(3, 4), iv(1, 2)]);
    ensure(set(&r.l) == want_l, || format!("L = {:?}", r.l))?;
    ensure(set(&r.p) == want_p, || format!("P = {:?}", r.p))?;
    ensure(set(&r.j) == want_j, || format!("J = {:?}", r.j))?;
    ensure(set(&r.q) == want_q, || format!("Q = {:?}", r.q))?;

    let t = canonical_tilting(&c).map_err(e)?;
    ensure(set(&c.names(&t.summands)) == want_t, || format!("T = {:?}", c.names(&t.summands)))?;
    let d = DimVector(vec![1, 2, 3, 1]);
    ensure(t.module.dims() == &d, || format!("dim T = {}", t.module.dims()))?;
    let end = hom_dim(&t.module, &t.module).map_err(e)?;
    ensure(end == 8, || format!("dim End(T) = {end}"))?;
    let exts = ext_dims(alg, &t.module, &t.module, 3).map_err(e)?;
    ensure(exts[1..].iter().all(|&v| v == 0), || format!("Ext(T, T) = {exts:?}"))?;
    let form = euler_form(alg).map_err(e)?;
    ensure(form.chi(&d) == 8, || format!("chi = {}", form.chi(&d)))?;
    let info = orbit_info(alg, &t.module).map_err(e)?;
    ensure(info.orbit_dim == 7 && info.a == Some(7), || format!("orbit dim {} a {:?}", info.orbit_dim, info.a))?;
    ensure(tangent_dim(&t.module) == 7, || format!("tangent {}", tangent_dim(&t.module)))?;
    Ok("gldim 3, strict shod, classes, T, End 8, chi 8, orbit 7 = a, tangent 7".into())
}

fn structure_claims() -> Outcome {
    let c = n4();
    let r = check_proposition1(&c, 200, 0).map_err(e)?;
    let mut bad = Vec::new();
    for cl in &r.claims {
        if !cl.passed() {
            bad.push(format!("claim {}: {:?}", cl.claim, cl.counterexamples));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(r.claim(5).checked == 200 && r.claim(6).checked == 200, || "sample count".into())?;
    let counts: Vec<String> = r.claims.iter().map(|cl| format!("{}:{}", cl.claim, cl.checked)).collect();
    Ok(format!("no counterexamples ({})", counts.join(" ")))
}

fn coverage() -> Outcome {
    let c = n4();
    let r = shod_report(&c);
    let lr: BTreeSet<String> = r.l.iter().chain(&r.r).cloned().collect();
    let all: BTreeSet<String> = c.entries().iter().map(|en| en.name.clone()).collect();
    ensure(r.covered && lr == all, || format!("uncovered: {:?}", all.difference(&lr).collect::<Vec<_>>()))?;
    Ok(format!("all {} entries in L or R", all.len()))
}

fn tangent_checks() -> Outcome {
    let c = a3r();
    let alg = c.algebra();
    let zero = Representation::zero(alg.quiver().clone(), DimVector(vec![1, 1, 1]));
    ensure(tangent_dim(&zero) == 2, || format!("zero point tangent {}", tangent_dim(&zero)))?;
    let lemma = lemma_tangent_check(alg, &zero).map_err(e)?;
    ensure(lemma.a == 1 && !lemma.applies, || format!("zero point {lemma:?}"))?;
    let m = direct_sum(&[alg.projective(0), alg.simple(2)]).map_err(e)?;
    let info = orbit_info(alg, &m).map_err(e)?;
    ensure(info.tangent_dim == 1 && info.orbit_dim == 1, || format!("[1,2]+S(3): {info:?}"))?;

    let mut points = 0;
    for c in [a2(), a3r(), n4()] {
        let alg = c.algebra();
        let g = gldim(alg).map_err(e)?;
        for x in c.entries() {
            let m = &x.module;
            let t = tangent_dim(m);
            let orbit = m.dims().gl_dim() - hom_dim(m, m).map_err(e)?;
            let ext1 = ext_dims(alg, m, m, g.max(1)).map_err(e)?[1];
            ensure(t <= orbit + ext1, || format!("{}: tangent {t} > {orbit} + {ext1}", x.name))?;
            points += 1;
        }
    }
    Ok(format!("A3R values as expected; eq_dim holds at {points} catalog points"))
}

fn degenerations() -> Outcome {
    let c = a2();
    let alg = c.algebra();
    let s1s2 = direct_sum(&[alg.simple(0), alg.simple(1)]).map_err(e)?;
    let w = degeneration_witness(alg.projective(0), &s1s2)
        .map_err(e)?
        .ok_or("no A2 witness")?;
    ensure(
        w.is_exact()
            && !w.splits()
            && is_isomorphic(w.u(), alg.simple(1))
            && is_isomorphic(w.e(), alg.projective(0))
            && is_isomorphic(w.v(), alg.simple(0)),
        || "A2 witness has the wrong shape".into(),
    )?;

    let mut edges = 0;
    for c in [a2(), a3r(), n4()] {
        let mut sources: Vec<Representation> = Vec::new();
        let n = c.len();
        for i in 0..n {
            for k in i..n {
                let mut v = vec![0; n];
                v[i] += 1;
                v[k] += 1;
                sources.push(c.direct_sum(&v));
            }
        }
        if let Ok(t) = canonical_tilting(&c) {
            sources.push(t.module);
        }
        for m in &sources {
            let end_m = hom_dim(m, m).map_err(e)?;
            for edge in minimal_degenerations(m, &c, Budget::DEFAULT).map_err(e)? {
                let Some(w) = edge.evidence.witness() else { continue };
                edges += 1;
                let target = edge.target.as_ref();
                ensure(hom_order_leq(m, target, &c).map_err(e)?, || format!("{}: hom order fails", edge.target_name))?;
                let end_n = hom_dim(target, target).map_err(e)?;
                ensure(end_n > end_m, || format!("{}: End {end_m} -> {end_n}", edge.target_name))?;
                let un = direct_sum(&[w.u().as_ref(), w.v().as_ref()]).map_err(e)?;
                ensure(is_isomorphic(w.e(), m) && is_isomorphic(&un, target), || {
                    format!("{}: witness does not match the edge", edge.target_name)
                })?;
            }
        }
    }
    ensure(edges > 0, || "no witnessed edges generated".into())?;
    Ok(format!("A2 witness found; {edges} witnessed edges consistent"))
}

/// Codimension-one boundary orbit counts per `M ∈ add T`, from the first
/// verified run.
const CODIM1_COUNTS: [(&str, usize); 15] = [
    ("P(1)", 1),
    ("P(2)", 1),
    ("P(2) + P(1)", 2),
    ("P(3)", 1),
    ("P(3) + P(1)", 2),
    ("P(3) + P(2)", 2),
    ("P(3) + P(2) + P(1)", 3),
    ("S(3)", 0),
    ("S(3) + P(1)", 1),
    ("S(3) + P(2)", 0),
    ("S(3) + P(2) + P(1)", 1),
    ("S(3) + P(3)", 0),
    ("S(3) + P(3) + P(1)", 1),
    ("S(3) + P(3) + P(2)", 0),
    ("S(3) + P(3) + P(2) + P(1)", 1),
];

fn main_theorem_instance() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_quivrep"))
        .args(["certify", "n4", "--n", "1"])
        .output()
        .map_err(e)?;
    let took = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;

    let c = n4();
    let report = certify_add_t(&c, 1, &CertifyOptions::default()).map_err(e)?;
    ensure(report.exit_code() == 0, || "library run not verified".into())?;
    let mut counts = BTreeMap::new();
    let mut certified = 0;
    for inst in &report.instances {
        counts.insert(inst.m.clone(), inst.codim1_orbits);
        for o in inst.orbits.iter().filter(|o| o.codim == 1) {
            let ok = o.certificate.as_ref().is_some_and(|cert| cert.failed().is_empty());
            ensure(ok, || format!("{} -> {} not certified", inst.m, o.n))?;
            certified += 1;
        }
    }
    let want: BTreeMap<String, usize> = CODIM1_COUNTS.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    ensure(counts == want, || format!("codim-1 counts {counts:?}"))?;
    Ok(format!("exit 0 in {took:.2?}; {certified} codim-1 orbits certified over 15 instances"))
}

const MUTANTS: [&str; 7] = [
    "common.eq_dim",
    "common.orthogonal",
    "case_a.hom_lr",
    "case_a.tangent",
    "case_b.witness",
    "case_b.stratum_d",
    "case_b.final",
];

fn soundness_guard() -> Outcome {
    let c = n4();
    let mut survived = Vec::new();
    for id in MUTANTS {
        let opts = CertifyOptions {
            mutation: Some(id.to_string()),
            ..CertifyOptions::default()
        };
        let r = certify_add_t(&c, 1, &opts).map_err(e)?;
        if r.exit_code() == 0 {
            survived.push(id);
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_quivrep"))
        .args(["certify", "n4", "--mutate", "case_a.iso"])
        .output()
        .map_err(e)?;
    if out.status.code() == Some(0) {
        survived.push("case_a.iso (binary)");
    }
    ensure(survived.is_empty(), || format!("surviving mutants: {survived:?}"))?;
    Ok(format!("{} mutants all killed", MUTANTS.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Euler identity on N4 and A3R", euler_identity),
        ("N4 pinned values", n4_pinned),
        ("structure claims on N4", structure_claims),
        ("L or R coverage on N4", coverage),
        ("tangent and eq_dim checks", tangent_checks),
        ("degeneration suite", degenerations),
        ("certify n4 --n 1", main_theorem_instance),
        ("certificate mutation guard", soundness_guard),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

