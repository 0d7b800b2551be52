//! Command-line front end. Every command renders either plain text or JSON.
//!
//! Exit codes: `0` success, `1` a failed certificate obligation, `2` an
//! exhausted search budget, `3` an input that is not strict shod, `4` any
//! other error, `64` a usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, ModuleKind};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homology::{euler_form, ext_dims, gldim, id, pd};
use crate::quiver::{parse_bound_quiver, validate_admissible, BoundQuiver, DimVector};
use crate::rep::{direct_sum_in, hom_basis, parse_module, Representation};
use crate::shod::{build_catalog, canonical_tilting, check_proposition1, shod_report, ModuleCatalog};
use crate::variety::{
    certify_add_t, lemma_tangent_check, minimal_degenerations, orbit_info, Budget, CertifyOptions, ReportVerdict,
    DISCLOSURES,
};

#[derive(Parser, Debug)]
#[command(name = "quivrep", version, about = "Invariants of modules over bound quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArg {
    /// Quiver file, or one of the bundled fixtures `a2`, `a3r`, `n4`.
    pub quiver: String,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArg {
    /// Catalog dimension bound: one number for every vertex, or a
    /// comma-separated vector.
    #[arg(long)]
    pub bound: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a quiver file and check admissibility.
    Validate(QuiverArg),
    /// Residue basis of the algebra.
    Basis(QuiverArg),
    /// `dim Hom(M, N)`.
    Hom {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        n: String,
    },
    /// `dim Extⁿ(M, N)`, for one degree or up to the global dimension.
    Ext {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        n: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Minimal projective resolution.
    Resolve {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
    },
    /// Euler form, and `χ(d)` for an optional dimension vector.
    Euler {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        dims: Option<String>,
    },
    /// Indecomposables within the bound with Hom/Ext tables.
    Catalog {
        #[command(flatten)]
        q: QuiverArg,
        #[command(flatten)]
        b: BoundArg,
    },
    /// Homological invariants, shod classes and the structure claims.
    Invariants {
        #[command(flatten)]
        q: QuiverArg,
        #[command(flatten)]
        b: BoundArg,
        /// Random direct sums for the add L / add P criteria.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Canonical tilting module of a strict shod algebra.
    Tilting {
        #[command(flatten)]
        q: QuiverArg,
        #[command(flatten)]
        b: BoundArg,
    },
    /// Tangent space dimension and the tangent bound.
    Tangent {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
    },
    /// Orbit dimension and related numbers.
    Orbit {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
    },
    /// Proper degenerations with evidence and minimality.
    Degenerations {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        #[command(flatten)]
        b: BoundArg,
        #[arg(long, default_value = "default")]
        budget: String,
    },
    /// Regularity certificates for every `M ∈ add Tⁿ`.
    Certify {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        b: BoundArg,
        #[arg(long, default_value = "default")]
        budget: String,
        /// Negate one obligation id (self-test of the checker).
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
}

struct Rendered {
    text: String,
    json: Value,
    code: i32,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Rendered { text, json, code: 0 }
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit code. Reports go to `out` unless `--out` names a file.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let rendered = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::NotStrictShod => 3,
                Error::Budget(_) => 2,
                _ => 4,
            };
        }
    };
    let summary = rendered.text.lines().last().unwrap_or_default().to_string();
    let body = match cli.format {
        Format::Text => rendered.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 4;
            }
            let _ = writeln!(out, "{summary}");
        }
        None => {
            let _ = out.write_all(body.as_bytes());
        }
    }
    rendered.code
}

/// Reads a quiver file; a missing path whose file stem names a bundled
/// fixture resolves to that fixture.
pub fn load_quiver(spec: &str) -> Result<BoundQuiver> {
    let path = FsPath::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
        return parse_bound_quiver(&text);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
    fixtures::by_name(stem).ok_or_else(|| Error::Io(format!("{spec}: no such file or bundled fixture")))
}

fn parse_dims(q: &BoundQuiver, s: &str) -> Result<DimVector> {
    let parts: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Io(format!("bad dimension `{t}`"))))
        .collect::<Result<_>>()?;
    if parts.len() == 1 {
        return Ok(DimVector(vec![parts[0]; q.num_vertices()]));
    }
    q.dim_vector(&parts)
}

fn catalog_bound(alg: &Algebra, b: &BoundArg) -> Result<DimVector> {
    if let Some(s) = &b.bound {
        return parse_dims(alg.quiver(), s);
    }
    let n = alg.num_vertices();
    let mut d = vec![2; n];
    for m in alg.projectives().iter().chain(alg.injectives()) {
        for (x, dx) in d.iter_mut().enumerate() {
            *dx = (*dx).max(m.dim_at(x));
        }
    }
    Ok(DimVector(d))
}

/// A module file, or a sum of terms `[k*]P:x`, `I:x`, `S:x` or `[k*]T`.
pub fn parse_module_arg(alg: &Algebra, spec: &str, tilting: impl Fn() -> Result<Representation>) -> Result<Representation> {
    let path = FsPath::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
        return parse_module(&text, alg.quiver().clone());
    }
    let mut parts: Vec<Representation> = Vec::new();
    for raw in spec.split('+') {
        let term = raw.trim();
        let (k, body) = match term.split_once('*') {
            Some((k, body)) => (
                k.trim().parse::<usize>().map_err(|_| Error::Io(format!("bad multiplicity in `{term}`")))?,
                body.trim(),
            ),
            None => (1, term),
        };
        let m = if body == "T" {
            tilting()?
        } else {
            let (kind, vertex) = body
                .split_once(':')
                .ok_or_else(|| Error::Io(format!("`{body}`: expected P:x, I:x, S:x or T")))?;
            let kind = match kind.trim() {
                "P" => ModuleKind::Projective,
                "I" => ModuleKind::Injective,
                "S" => ModuleKind::Simple,
                other => return Err(Error::Io(format!("unknown module kind `{other}`"))),
            };
            let x = alg.quiver().vertex_index(vertex.trim())?;
            alg.standard(kind, x)?.as_ref().clone()
        };
        for _ in 0..k {
            parts.push(m.clone());
        }
    }
    let refs: Vec<&Representation> = parts.iter().collect();
    direct_sum_in(alg.quiver(), &refs)
}

struct Ctx {
    alg: Arc<Algebra>,
}

impl Ctx {
    fn new(q: &QuiverArg) -> Result<Self> {
        Ok(Ctx {
            alg: Arc::new(Algebra::new(load_quiver(&q.quiver)?)?),
        })
    }

    fn catalog(&self, b: &BoundArg) -> Result<ModuleCatalog> {
        build_catalog(self.alg.clone(), &catalog_bound(&self.alg, b)?)
    }

    fn module(&self, spec: &str) -> Result<Representation> {
        parse_module_arg(&self.alg, spec, || {
            let c = self.catalog(&BoundArg { bound: None })?;
            Ok(canonical_tilting(&c)?.module)
        })
    }

    fn vertex(&self, x: usize) -> &str {
        self.alg.vertex_name(x)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_opt(d: Option<usize>) -> String {
    d.map_or("inf".into(), |v| v.to_string())
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    s
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Validate(q) => cmd_validate(q),
        Command::Basis(q) => cmd_basis(q),
        Command::Hom { q, m, n } => cmd_hom(q, m, n),
        Command::Ext { q, m, n, degree } => cmd_ext(q, m, n, *degree),
        Command::Resolve { q, m } => cmd_resolve(q, m),
        Command::Euler { q, dims } => cmd_euler(q, dims.as_deref()),
        Command::Catalog { q, b } => cmd_catalog(q, b),
        Command::Invariants { q, b, samples } => cmd_invariants(q, b, *samples, cli.seed),
        Command::Tilting { q, b } => cmd_tilting(q, b),
        Command::Tangent { q, m } => cmd_tangent(q, m),
        Command::Orbit { q, m } => cmd_orbit(q, m),
        Command::Degenerations { q, m, b, budget } => cmd_degenerations(q, m, b, budget),
        Command::Certify {
            q,
            n,
            b,
            budget,
            mutate,
        } => cmd_certify(q, *n, b, budget, mutate.clone()),
    }
}

fn cmd_validate(q: &QuiverArg) -> Result<Rendered> {
    let quiver = load_quiver(&q.quiver)?;
    let max_len = quiver.longest_path().map_or(crate::algebra::CYCLIC_MAX_LEN, |l| l + 1);
    let report = validate_admissible(&quiver, max_len);
    let alg = Algebra::new(quiver.clone())?;
    let mut t = String::new();
    let _ = writeln!(t, "vertices: {}", quiver.num_vertices());
    let _ = writeln!(t, "arrows: {}", quiver.arrows().len());
    let _ = writeln!(t, "relations: {}", quiver.relations().len());
    let _ = writeln!(t, "acyclic: {}", yes(quiver.is_acyclic()));
    let _ = writeln!(t, "monomial: {}", yes(quiver.is_monomial()));
    let _ = writeln!(t, "admissible bound: {}", fmt_opt(report.bound));
    let _ = writeln!(t, "minimal relations: {}", yes(report.minimal));
    for r in &report.redundant {
        let _ = writeln!(t, "  redundant: {r}");
    }
    let _ = writeln!(t, "dim: {}", alg.dim());
    let json = json!({
        "vertices": quiver.vertices(),
        "arrows": quiver.arrows().len(),
        "relations": quiver.relations().len(),
        "acyclic": quiver.is_acyclic(),
        "monomial": quiver.is_monomial(),
        "admissibility": report,
        "dim": alg.dim(),
    });
    Ok(Rendered::ok(t, json))
}

fn cmd_basis(q: &QuiverArg) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let quiver = ctx.alg.quiver();
    let paths: Vec<String> = ctx.alg.basis().paths().iter().map(|p| p.display(quiver)).collect();
    let mut t = format!("dim: {}\n", paths.len());
    for p in &paths {
        let _ = writeln!(t, "  {p}");
    }
    Ok(Rendered::ok(t, json!({ "dim": paths.len(), "paths": paths })))
}

fn cmd_hom(q: &QuiverArg, m: &str, n: &str) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let (m, n) = (ctx.module(m)?, ctx.module(n)?);
    let d = hom_basis(&m, &n)?.len();
    Ok(Rendered::ok(format!("dim Hom: {d}\n"), json!({ "hom": d })))
}

fn cmd_ext(q: &QuiverArg, m: &str, n: &str, degree: Option<usize>) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let (m, n) = (ctx.module(m)?, ctx.module(n)?);
    let top = match degree {
        Some(d) => d,
        None => gldim(&ctx.alg).unwrap_or(ctx.alg.divergence_guard()),
    };
    let dims = ext_dims(&ctx.alg, &m, &n, top)?;
    let shown: Vec<(usize, usize)> = match degree {
        Some(d) => vec![(d, dims[d])],
        None => dims.iter().copied().enumerate().collect(),
    };
    let mut t = String::new();
    for (k, v) in &shown {
        let _ = writeln!(t, "dim Ext^{k}: {v}");
    }
    let json = json!({ "ext": shown.iter().map(|(k, v)| json!({"degree": k, "dim": v})).collect::<Vec<_>>() });
    Ok(Rendered::ok(t, json))
}

fn cmd_resolve(q: &QuiverArg, m: &str) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let m = ctx.module(m)?;
    let res = ctx.alg.resolution(&m)?;
    let mut t = String::new();
    let mut terms = Vec::new();
    for (k, _) in res.terms().iter().enumerate() {
        let parts: Vec<String> = res
            .multiplicities(k)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(x, &c)| if c == 1 { format!("P({})", ctx.vertex(x)) } else { format!("{c} P({})", ctx.vertex(x)) })
            .collect();
        let line = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        let _ = writeln!(t, "P{k}: {line}");
        terms.push(line);
    }
    let length = if res.is_complete() { Some(res.length()) } else { None };
    let _ = writeln!(t, "pd: {}", fmt_opt(length));
    Ok(Rendered::ok(t, json!({ "terms": terms, "complete": res.is_complete(), "pd": length })))
}

fn cmd_euler(q: &QuiverArg, dims: Option<&str>) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let e = euler_form(&ctx.alg)?;
    let mut t = format!("euler form:\n{}", matrix_text(&e.matrix));
    let mut json = json!({ "matrix": e.matrix });
    if let Some(d) = dims {
        let d = parse_dims(ctx.alg.quiver(), d)?;
        let (chi, a) = (e.chi(&d), e.a(&d));
        let _ = writeln!(t, "chi{d}: {chi}\na{d}: {a}");
        json["chi"] = json!(chi);
        json["a"] = json!(a);
    }
    Ok(Rendered::ok(t, json))
}

fn cmd_catalog(q: &QuiverArg, b: &BoundArg) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let c = ctx.catalog(b)?;
    Ok(Rendered::ok(c.to_text(), serde_json::to_value(&c).expect("catalog serializes")))
}

#[derive(Serialize)]
struct ClaimLine {
    claim: u8,
    checked: usize,
    passed: bool,
    counterexamples: Vec<String>,
}

fn cmd_invariants(q: &QuiverArg, b: &BoundArg, samples: usize, seed: u64) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let alg = &ctx.alg;
    let c = ctx.catalog(b)?;
    let g = gldim(alg).ok();
    let euler = euler_form(alg).ok();
    let report = shod_report(&c);
    let claims: Option<Vec<ClaimLine>> = if report.is_strict_shod {
        let r = check_proposition1(&c, samples, seed)?;
        Some(
            r.claims
                .into_iter()
                .map(|cl| ClaimLine {
                    claim: cl.claim,
                    checked: cl.checked,
                    passed: cl.counterexamples.is_empty(),
                    counterexamples: cl.counterexamples,
                })
                .collect(),
        )
    } else {
        None
    };
    let simples: Vec<Value> = (0..alg.num_vertices())
        .map(|x| {
            json!({
                "vertex": ctx.vertex(x),
                "pd": pd(alg, alg.simple(x)).ok(),
                "id": id(alg, alg.simple(x)).ok(),
            })
        })
        .collect();

    let mut t = String::new();
    let _ = writeln!(t, "gldim: {}", fmt_opt(g));
    if let Some(e) = &euler {
        let _ = write!(t, "euler form:\n{}", matrix_text(&e.matrix));
    }
    for s in &simples {
        let _ = writeln!(
            t,
            "S({}): pd {} id {}",
            s["vertex"].as_str().unwrap_or(""),
            s["pd"].as_u64().map_or("inf".into(), |v| v.to_string()),
            s["id"].as_u64().map_or("inf".into(), |v| v.to_string())
        );
    }
    let _ = writeln!(
        t,
        "catalog: {} indecomposables within {} ({})",
        c.len(),
        c.bound(),
        if c.is_exhaustive() { "exhaustive" } else { "bounded-heuristic" }
    );
    let _ = writeln!(t, "shod: {}", yes(report.is_shod));
    if let Some(o) = &report.offending {
        let _ = writeln!(t, "  offending: {o}");
    }
    let _ = writeln!(t, "strict shod: {}", yes(report.is_strict_shod));
    let list = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(", ") };
    let _ = writeln!(t, "L: {}", list(&report.l));
    let _ = writeln!(t, "R: {}", list(&report.r));
    let _ = writeln!(t, "P: {}", list(&report.p));
    let _ = writeln!(t, "J: {}", list(&report.j));
    let _ = writeln!(t, "Q: {}", list(&report.q));
    let _ = writeln!(t, "L or R covers catalog: {}", yes(report.covered));
    if let Some(d) = &report.t_dims {
        let _ = writeln!(t, "T: {} dim {}", list(&report.t), DimVector(d.clone()));
    }
    if let Some(v) = &report.lambda_left {
        let _ = writeln!(t, "left subalgebra vertices: {}", list(v));
    }
    if let Some(v) = &report.lambda_right {
        let _ = writeln!(t, "right subalgebra vertices: {}", list(v));
    }
    if let Some(cl) = &claims {
        for l in cl {
            let _ = writeln!(
                t,
                "claim {}: {} ({} checked)",
                l.claim,
                if l.passed { "pass" } else { "FAIL" },
                l.checked
            );
            for ce in &l.counterexamples {
                let _ = writeln!(t, "  counterexample: {ce}");
            }
        }
    }
    if !c.is_exhaustive() {
        let _ = writeln!(t, "warning: catalog is not known to be complete; classes may be partial");
    }
    let json = json!({
        "gldim": g,
        "euler": euler.map(|e| e.matrix),
        "simples": simples,
        "catalog": { "size": c.len(), "bound": c.bound(), "status": c.status(), "names": c.names(&(0..c.len()).collect::<Vec<_>>()) },
        "shod": report,
        "claims": claims,
    });
    Ok(Rendered::ok(t, json))
}

fn cmd_tilting(q: &QuiverArg, b: &BoundArg) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let c = ctx.catalog(b)?;
    let t = canonical_tilting(&c)?;
    let names = c.names(&t.summands);
    let end = hom_basis(&t.module, &t.module)?.len();
    let text = format!("T: {}\ndim: {}\ndim End: {end}\n", names.join(" + "), t.module.dims());
    Ok(Rendered::ok(text, json!({ "summands": names, "dims": t.module.dims(), "end": end })))
}

fn cmd_tangent(q: &QuiverArg, m: &str) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let m = ctx.module(m)?;
    let info = orbit_info(&ctx.alg, &m)?;
    let lemma = lemma_tangent_check(&ctx.alg, &m).ok();
    let mut t = format!("tangent dim: {}\n", info.tangent_dim);
    if let Some(a) = info.a {
        let _ = writeln!(t, "a(d): {a}");
    }
    if let Some(l) = &lemma {
        let _ = writeln!(t, "higher Ext vanishes: {}\nbound holds: {}", yes(l.applies), yes(l.bound_holds));
    }
    Ok(Rendered::ok(t, json!({ "tangent_dim": info.tangent_dim, "a": info.a, "lemma": lemma })))
}

fn cmd_orbit(q: &QuiverArg, m: &str) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let m = ctx.module(m)?;
    let info = orbit_info(&ctx.alg, &m)?;
    let mut t = String::new();
    let _ = writeln!(t, "dim: {}", DimVector(info.dims.clone()));
    let _ = writeln!(t, "dim GL: {}", info.gl_dim);
    let _ = writeln!(t, "dim End: {}", info.end_dim);
    let _ = writeln!(t, "orbit dim: {}", info.orbit_dim);
    let _ = writeln!(t, "tangent dim: {}", info.tangent_dim);
    if let Some(a) = info.a {
        let _ = writeln!(t, "a(d): {a}");
    }
    let _ = writeln!(t, "Ext1 vanishes: {}", yes(info.ext1_vanishes));
    if let Some(h) = info.higher_ext_vanishes {
        let _ = writeln!(t, "higher Ext vanishes: {}", yes(h));
    }
    Ok(Rendered::ok(t, serde_json::to_value(&info).expect("orbit info serializes")))
}

fn parse_budget(s: &str) -> Result<Budget> {
    Budget::parse(s).ok_or_else(|| Error::Io(format!("bad budget `{s}`: use low, default, high or a positive count")))
}

fn cmd_degenerations(q: &QuiverArg, m: &str, b: &BoundArg, budget: &str) -> Result<Rendered> {
    let ctx = Ctx::new(q)?;
    let c = ctx.catalog(b)?;
    let m = ctx.module(m)?;
    let edges = minimal_degenerations(&m, &c, parse_budget(budget)?)?;
    let mut t = format!("{} proper degenerations\n", edges.len());
    let mut rows = Vec::new();
    for e in &edges {
        let minimal = match e.minimal {
            Some(true) => "minimal",
            Some(false) => "not minimal",
            None => "minimality undecided",
        };
        let _ = writeln!(t, "  {} codim {} {} {}", e.target_name, e.codim, e.evidence.label(), minimal);
        rows.push(json!({
            "target": e.target_name,
            "codim": e.codim,
            "evidence": e.evidence.label(),
            "minimal": e.minimal,
        }));
    }
    if !c.is_exhaustive() {
        let _ = writeln!(t, "warning: catalog is not known to be complete");
    }
    Ok(Rendered::ok(t, json!({ "edges": rows, "catalog_exhaustive": c.is_exhaustive() })))
}

fn cmd_certify(q: &QuiverArg, n: usize, b: &BoundArg, budget: &str, mutation: Option<String>) -> Result<Rendered> {
    if n == 0 {
        return Err(Error::Io("--n must be at least 1".into()));
    }
    let ctx = Ctx::new(q)?;
    let c = ctx.catalog(b)?;
    let opts = CertifyOptions {
        budget: parse_budget(budget)?,
        mutation,
    };
    let report = certify_add_t(&c, n, &opts)?;
    let code = report.exit_code();
    let mut t = String::new();
    let _ = writeln!(t, "T: {}", report.tilting.join(" + "));
    let _ = writeln!(t, "instances: {}", report.instances.len());
    for note in DISCLOSURES {
        let _ = writeln!(t, "note: {note}");
    }
    for inst in &report.instances {
        let _ = writeln!(
            t,
            "M = {} dim {} orbit dim {}: {} boundary orbits, {} of codimension one, {}",
            inst.m,
            DimVector(inst.dims.clone()),
            inst.orbit_dim,
            inst.boundary_orbits,
            inst.codim1_orbits,
            match inst.verdict {
                ReportVerdict::Verified => "verified",
                ReportVerdict::Failed => "FAILED",
                ReportVerdict::Incomplete => "incomplete",
            }
        );
        if let Some(note) = &inst.note {
            let _ = writeln!(t, "  note: {note}");
        }
        for o in &inst.orbits {
            let _ = writeln!(t, "  N = {} codim {} {}", o.n, o.codim, o.evidence);
            if let Some(cert) = &o.certificate {
                let case = match cert.case {
                    Some(crate::variety::CaseTag::SameDimAsL) => "same dimension as L",
                    Some(crate::variety::CaseTag::DifferentDim) => "different dimension",
                    None => "no case",
                };
                let _ = writeln!(t, "    U = {}, V = {}, {case}, {:?}", cert.u, cert.v, cert.verdict);
                for ob in &cert.obligations {
                    let show = !ob.passed || inst.verdict == ReportVerdict::Failed;
                    if show {
                        let _ = writeln!(
                            t,
                            "    [{}] {}: {}",
                            if ob.passed { "ok" } else { "FAIL" },
                            ob.id,
                            ob.statement
                        );
                    }
                }
            }
        }
    }
    let verdict = match code {
        0 => "verified: every codimension-one boundary orbit is certified",
        1 => "an obligation FAILED",
        _ => "incomplete: search budget exhausted",
    };
    let _ = writeln!(t, "verdict: {verdict}");
    let mut json = serde_json::to_value(&report).expect("certify report serializes");
    json["verdict"] = json!(verdict);
    Ok(Rendered { text: t, json, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("quivrep").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn module_expressions() {
        let alg = Algebra::new(fixtures::n4()).unwrap();
        let m = parse_module_arg(&alg, "P:1 + 2*S:3", || unreachable!()).unwrap();
        assert_eq!(m.dims(), &DimVector(vec![1, 1, 2, 0]));
        assert!(parse_module_arg(&alg, "X:1", || unreachable!()).is_err());
        assert!(parse_module_arg(&alg, "P:9", || unreachable!()).is_err());
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(run_cli(&["frobnicate"]).0, 64);
        assert_eq!(run_cli(&["validate", "no_such_algebra"]).0, 4);
        assert_eq!(run_cli(&["--help"]).0, 0);
    }

    #[test]
    fn hom_and_ext() {
        let (code, out) = run_cli(&["ext", "n4", "S:1", "S:4", "--degree", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "dim Ext^3: 1\n");
        let (_, out) = run_cli(&["hom", "n4", "P:1", "S:1"]);
        assert_eq!(out, "dim Hom: 1\n");
    }
}
