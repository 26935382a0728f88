//! `superhopf`: JSON front end for superhopf-core.
//!
//! Exit status: 0 when the verdict is true or accepted, 1 when it is false or
//! rejected, 2 on errors.

mod selftest;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use superhopf_core::chargroup::ChargroupError;
use superhopf_core::dgxrep::{self, Dgx, DgxError, IndecompLabel, Supercomodule};
use superhopf_core::field::{Field, FieldDescriptor, FieldError};
use superhopf_core::hcp::{self, HarishChandraPair, HcpError, IsoVerdict, SubPair};
use superhopf_core::hopf::{self, GgxParams, HopfError, MonomialHopfSuperalgebra};
use superhopf_core::smoothcheck::{self, SmoothError, SuperAlgebraPresentation};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] ChargroupError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Hcp(#[from] HcpError),
    #[error(transparent)]
    Dgx(#[from] DgxError),
    #[error(transparent)]
    Smooth(#[from] SmoothError),
}

impl CliError {
    fn path(&self) -> Option<&str> {
        match self {
            CliError::Parse { path, .. }
            | CliError::Hopf(HopfError::Parse { path, .. })
            | CliError::Hcp(HcpError::Parse { path, .. })
            | CliError::Dgx(DgxError::Parse { path, .. })
            | CliError::Smooth(SmoothError::Parse { path, .. }) => Some(path),
            _ => None,
        }
    }
}

fn perr(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_string(), msg: msg.into() }
}

#[derive(Parser, Debug)]
#[command(name = "superhopf", version, about = "Affine algebraic supergroups through Harish-Chandra pairs")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Field used when the input does not name one: Q, Fp:5, Fpt:3:t, Qt, Qsqrt:-1.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Input JSON file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Character window `|e_i| <= window` for free coordinates.
    #[arg(long, global = true, default_value_t = 2)]
    window: i64,
    /// Degree bound for the section search.
    #[arg(long, global = true, default_value_t = 4)]
    degree_bound: u32,
    /// Random monomials per axiom in verify-hopf.
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the Hopf superalgebra axioms on generators and random monomials.
    VerifyHopf,
    /// Build K[G_{g,x}] and dump its structure maps.
    BuildGgx,
    /// Accept or reject a Harish-Chandra pair.
    CheckPair,
    /// Input `{"pair": .., "sub": {"subgroup": .., "W": ..}}`.
    CheckNormal,
    /// Quotient pair `(G/H, V/W)`, same input as check-normal.
    Quotient,
    /// Super-diagonalizability with product and abelian decompositions.
    SuperDiag,
    /// Chain of normal sub-pairs with factors G_a^-, G_m, μ_n.
    NormalChain,
    /// Input `{"field", "group", "first": {"g", "x"}, "second": {"g", "x"}}`.
    IsoGgx,
    /// Takes ggx parameters, as do center and thm64.
    Nilpotency,
    /// Characters of the center of G_{g,x}.
    Center,
    /// The four nilpotency conditions and the implications between them.
    Thm64,
    /// G_{1, αx + βy} over G_a × G_m.
    #[command(name = "counterexample-71")]
    Counterexample71 {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Split a supercomodule over K[D_{g,x}] into indecomposables.
    Decompose,
    /// Input `{"algebra", "s"?, "t"?}`; without labels, the table over the simples in the window.
    Ext1,
    Socle,
    /// Input `{"algebra", "h"?}`; without `h`, every character in the window.
    Duality,
    /// Takes a presentation with "even_ring", or ggx parameters.
    Smooth,
    Regular,
    /// Splitting of E_α over F_p(t).
    Hochschild {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        alpha: String,
    },
    /// Run the built-in golden examples.
    Selftest,
}

/// A report and whether its verdict is true.
pub struct Outcome {
    pub ok: bool,
    pub report: Value,
}

fn outcome(command: &str, ok: bool, mut body: Value) -> Outcome {
    if let Value::Object(m) = &mut body {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(command));
    }
    Outcome { ok, report: body }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

struct Ctx<'a> {
    cli: &'a Cli,
    field: Option<Field>,
}

impl Ctx<'_> {
    fn load(&self) -> Result<Value, CliError> {
        let text = match &self.cli.input {
            Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
                s
            }
        };
        serde_json::from_str(&text).map_err(|e| perr("$", e.to_string()))
    }

    /// Fill in `"field"` from the flag when the object has none.
    fn with_field(&self, mut v: Value) -> Value {
        if let (Value::Object(m), Some(f)) = (&mut v, &self.field) {
            m.entry("field").or_insert_with(|| to_value(f.descriptor()));
        }
        v
    }

    fn field_or_q(&self) -> Field {
        self.field.clone().unwrap_or_else(Field::rationals)
    }

    fn params(&self, v: &Value) -> Result<GgxParams, CliError> {
        Ok(GgxParams::from_json(&self.with_field(v.clone()))?)
    }

    fn gx(&self, v: &Value) -> Result<(GgxParams, superhopf_core::chargroup::Character, superhopf_core::chargroup::LieFunctional), CliError> {
        let p = self.params(v)?;
        let (g, x) = p.gx.clone().ok_or_else(|| perr("$.g", "missing"))?;
        Ok((p, g, x))
    }

    fn pair(&self, v: &Value) -> Result<HarishChandraPair, CliError> {
        Ok(HarishChandraPair::from_json(v, self.field.as_ref())?)
    }

    fn dgx(&self, v: &Value) -> Result<Dgx, CliError> {
        let alg = v.get("algebra").ok_or_else(|| perr("$.algebra", "missing"))?;
        let p = self.params(alg).map_err(|e| nest(e, "$.algebra"))?;
        Ok(Dgx::from_params(&p)?)
    }

    fn comodule(&self, v: &Value, a: &Dgx) -> Result<Supercomodule, CliError> {
        let m = Supercomodule::from_json(v, a)?;
        if let dgxrep::ComoduleCheck::Reject { identity, witness } = m.validate(a) {
            return Err(DgxError::InvalidComodule(format!("{identity} fails at {witness}")).into());
        }
        Ok(m)
    }
}

/// Prefix the JSON path of a parse error read from a nested object.
fn nest(e: CliError, prefix: &str) -> CliError {
    let fix = |p: &str| format!("{prefix}{}", p.strip_prefix('$').unwrap_or(p));
    match e {
        CliError::Hopf(HopfError::Parse { path, msg }) => CliError::Hopf(HopfError::Parse { path: fix(&path), msg }),
        CliError::Hcp(HcpError::Parse { path, msg }) => CliError::Hcp(HcpError::Parse { path: fix(&path), msg }),
        CliError::Parse { path, msg } => CliError::Parse { path: fix(&path), msg },
        e => e,
    }
}

fn simples_in_window(a: &Dgx, window: i64) -> Vec<IndecompLabel> {
    let mut out = BTreeSet::new();
    for h in a.group().window(window) {
        if a.in_y(&h) {
            out.insert(IndecompLabel::s(h.clone(), false));
            out.insert(IndecompLabel::s(h, true));
        } else {
            out.insert(IndecompLabel::l(h.clone(), false).canonical(a));
            out.insert(IndecompLabel::l(h, true).canonical(a));
        }
    }
    out.into_iter().collect()
}

fn label(v: &Value, key: &str, a: &Dgx) -> Result<Option<IndecompLabel>, CliError> {
    match v.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(IndecompLabel::parse(s, a.group()).map_err(|e| perr(&format!("$.{key}"), e.to_string()))?)),
        Some(_) => Err(perr(&format!("$.{key}"), "expected a label such as \"PiS([1])\"")),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let field = match &cli.field {
        Some(s) => Some(Field::new(s.parse::<FieldDescriptor>()?)?),
        None => None,
    };
    let ctx = Ctx { cli, field };
    match &cli.cmd {
        Cmd::VerifyHopf => {
            let v = ctx.with_field(ctx.load()?);
            let a = MonomialHopfSuperalgebra::from_json(&v)?;
            let pairing = match &a.odd {
                Some(d) => Some(hopf::validate_gx(&a.field, &a.group, &d.g, &d.x)?.pairing_xg.to_string()),
                None => None,
            };
            let r = hopf::verify_hopf_axioms(&a, cli.samples, cli.seed);
            Ok(outcome("verify-hopf", r.passed(), json!({"passed": r.passed(), "pairing_xg": pairing, "report": to_value(&r)})))
        }
        Cmd::BuildGgx => {
            let p = ctx.params(&ctx.load()?)?;
            let a = p.build()?;
            let mut dump = a.to_json();
            if let Some(d) = &a.odd {
                dump["pairing_xg"] = json!(hopf::validate_gx(&a.field, &a.group, &d.g, &d.x)?.pairing_xg.to_string());
            }
            Ok(outcome("build-ggx", true, dump))
        }
        Cmd::CheckPair => {
            let p = ctx.pair(&ctx.load()?)?;
            let v = hcp::check_pair(&p);
            Ok(outcome("check-pair", v.accepted(), to_value(&v)))
        }
        Cmd::CheckNormal | Cmd::Quotient => {
            let v = ctx.load()?;
            let pv = v.get("pair").ok_or_else(|| perr("$.pair", "missing"))?;
            let p = ctx.pair(pv).map_err(|e| nest(e, "$.pair"))?;
            let sv = v.get("sub").ok_or_else(|| perr("$.sub", "missing"))?;
            let s = SubPair::from_json(sv, &p).map_err(|e| nest(e.into(), "$.sub"))?;
            if matches!(cli.cmd, Cmd::CheckNormal) {
                let verdict = hcp::check_normal(&p, &s)?;
                Ok(outcome("check-normal", verdict.accepted(), to_value(&verdict)))
            } else {
                let q = hcp::quotient_pair(&p, &s)?;
                Ok(outcome("quotient", true, q.to_json()))
            }
        }
        Cmd::SuperDiag => {
            let p = ctx.pair(&ctx.load()?)?;
            let cert = hcp::super_diagonalizable(&p)?;
            let anf = match hcp::abelian_normal_form(&p) {
                Some((g, n)) => json!({"group": g, "odd_dim": n}),
                None => json!("NotAbelianSupergroup"),
            };
            Ok(outcome(
                "super-diag",
                cert.super_diagonalizable,
                json!({
                    "super_diagonalizable": cert.super_diagonalizable,
                    "certificate": to_value(&cert),
                    "unipotent_radical_trivial": hcp::unipotent_radical_trivial(&p)?,
                    "super_trigonalizable": hcp::super_trigonalizable(&p)?,
                    "product_decomposition": to_value(&hcp::product_decomposition(&p)),
                    "abelian_normal_form": anf,
                }),
            ))
        }
        Cmd::NormalChain => {
            let p = ctx.pair(&ctx.load()?)?;
            let c = hcp::normal_chain(&p)?;
            let ok = c.all_normal() && c.odd_count() == p.dim();
            Ok(outcome("normal-chain", ok, json!({"odd_count": c.odd_count(), "all_normal": c.all_normal(), "chain": to_value(&c)})))
        }
        Cmd::IsoGgx => {
            let v = ctx.with_field(ctx.load()?);
            let side = |k: &str| -> Result<_, CliError> {
                let s = v.get(k).ok_or_else(|| perr(&format!("$.{k}"), "missing"))?;
                let mut obj = json!({"group": v.get("group").cloned().unwrap_or(Value::Null)});
                if let Some(f) = v.get("field") {
                    obj["field"] = f.clone();
                }
                for key in ["g", "x"] {
                    if let Some(x) = s.get(key) {
                        obj[key] = x.clone();
                    }
                }
                ctx.gx(&obj).map_err(|e| nest(e, &format!("$.{k}")))
            };
            let (p1, g1, x1) = side("first")?;
            let (_, g2, x2) = side("second")?;
            let r = hcp::iso_ggx(&p1.field, &p1.group, (&g1, &x1), (&g2, &x2))?;
            Ok(outcome("iso-ggx", matches!(r, IsoVerdict::Isomorphic { .. }), to_value(&r)))
        }
        Cmd::Nilpotency => {
            let (p, g, _) = ctx.gx(&ctx.load()?)?;
            let n = hcp::nilpotent_ggx(&p.group, &g)?;
            Ok(outcome("nilpotency", n, json!({"nilpotent": n})))
        }
        Cmd::Center => {
            let (p, g, _) = ctx.gx(&ctx.load()?)?;
            let z = hcp::center_ev(&p.group, &g)?;
            Ok(outcome("center", true, json!({"center_ev": z.descriptor(), "subgroup": z.to_json()})))
        }
        Cmd::Thm64 => {
            let (p, g, x) = ctx.gx(&ctx.load()?)?;
            let r = hcp::check_thm64(&p.field, &p.group, &g, &x)?;
            Ok(outcome("thm64", r.implications_hold, to_value(&r)))
        }
        Cmd::Counterexample71 { alpha, beta } => {
            let f = ctx.field_or_q();
            let a = f.parse(alpha).map_err(|e| perr("--alpha", e.to_string()))?;
            let b = f.parse(beta).map_err(|e| perr("--beta", e.to_string()))?;
            let r = hcp::counterexample_71(&f, &a, &b)?;
            Ok(outcome(
                "counterexample-71",
                r.splits,
                json!({
                    "alpha": alpha,
                    "beta": beta,
                    "splits": r.splits,
                    "radical_is_Ga": r.radical_is_ga,
                    "super_trigonalizable": r.super_trigonalizable,
                    "quotient_super_diagonalizable": r.quotient_super_diagonalizable,
                    "trigonalizable_but_nonsplit": r.trigonalizable_but_nonsplit,
                }),
            ))
        }
        Cmd::Decompose => {
            let v = ctx.load()?;
            let a = ctx.dgx(&v)?;
            let m = ctx.comodule(&v, &a)?;
            let d = dgxrep::decompose(&a, &m)?;
            Ok(outcome("decompose", d.verified, json!({"labels": d.label_strings(), "verified": d.verified, "dim": m.dim()})))
        }
        Cmd::Socle => {
            let v = ctx.load()?;
            let a = ctx.dgx(&v)?;
            let m = ctx.comodule(&v, &a)?;
            let s = dgxrep::socle(&a, &m)?;
            let labels: Vec<String> = s.labels.iter().map(|l| l.to_string()).collect();
            let basis: Vec<Vec<String>> = s.basis.iter().map(|b| b.iter().map(|e| e.to_string()).collect()).collect();
            Ok(outcome("socle", true, json!({"labels": labels, "dim": s.basis.len(), "basis": basis})))
        }
        Cmd::Ext1 => {
            let v = ctx.load()?;
            let a = ctx.dgx(&v)?;
            let one = |s: &IndecompLabel, t: &IndecompLabel| -> Result<Value, CliError> {
                let e = dgxrep::ext1(&a, s, t)?;
                Ok(json!({
                    "s": s.to_string(),
                    "t": t.to_string(),
                    "dim": e.dim,
                    "representative": e.representative.map(|(l, m)| json!({"label": l.to_string(), "comodule": m.to_json(&a)})),
                }))
            };
            match (label(&v, "s", &a)?, label(&v, "t", &a)?) {
                (Some(s), Some(t)) => {
                    let r = one(&s, &t)?;
                    Ok(outcome("ext1", true, r))
                }
                (None, None) => {
                    let simples = simples_in_window(&a, cli.window);
                    let mut table = Vec::new();
                    for s in &simples {
                        for t in &simples {
                            table.push(one(s, t)?);
                        }
                    }
                    let labels: Vec<String> = simples.iter().map(|l| l.to_string()).collect();
                    Ok(outcome("ext1", true, json!({"simples": labels, "table": table})))
                }
                _ => Err(perr("$", "give both \"s\" and \"t\" or neither")),
            }
        }
        Cmd::Duality => {
            let v = ctx.load()?;
            let a = ctx.dgx(&v)?;
            let hs = match v.get("h") {
                Some(h) => vec![a.group().parse_character(h).map_err(|e| perr("$.h", e.to_string()))?],
                None => a.group().window(cli.window),
            };
            let mut ok = true;
            let mut rows = Vec::new();
            for h in &hs {
                let d = dgxrep::dual_pairing(&a, h)?;
                ok &= d.verified();
                rows.push(to_value(&d));
            }
            Ok(outcome("duality", ok, json!({"verified": ok, "pairings": rows})))
        }
        Cmd::Smooth | Cmd::Regular => {
            let v = ctx.load()?;
            let (p, hopf_red) = if v.get("even_ring").is_some() {
                (SuperAlgebraPresentation::from_json(&v, ctx.field.as_ref())?, None)
            } else {
                let a = ctx.params(&v)?.build()?;
                (SuperAlgebraPresentation::from_hopf(&a)?, Some(smoothcheck::hopf_smooth_reduction(&a)))
            };
            if matches!(cli.cmd, Cmd::Smooth) {
                let r = smoothcheck::is_smooth(&p, cli.degree_bound)?;
                let gr = smoothcheck::compute_gr(&p)?;
                Ok(outcome(
                    "smooth",
                    r.smooth,
                    json!({"smooth": r.smooth, "report": to_value(&r), "graded": to_value(&gr), "hopf_reduction": to_value(&hopf_red)}),
                ))
            } else {
                let r = smoothcheck::is_regular(&p)?;
                Ok(outcome("regular", r.regular, json!({"regular": r.regular, "report": to_value(&r)})))
            }
        }
        Cmd::Hochschild { p, alpha } => {
            let r = smoothcheck::hochschild_ealpha(*p, alpha)?;
            Ok(outcome("hochschild", r.split, to_value(&r)))
        }
        Cmd::Selftest => {
            let results = selftest::run_all(cli.seed);
            let ok = results.iter().all(|r| r.passed);
            let rows: Vec<Value> = results.iter().map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail})).collect();
            Ok(outcome("selftest", ok, json!({"passed": ok, "results": rows})))
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o.report).map(|_| o.ok)) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let report = json!({"schema_version": SCHEMA_VERSION, "error": e.to_string(), "path": e.path()});
            let _ = emit(&cli, &report);
            ExitCode::from(2)
        }
    }
}
