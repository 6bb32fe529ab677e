//! Command front end. [`run_command`] is pure apart from reading input
//! files, so the binary, the corpus runner and the tests share it.
//!
//! Exit codes: 0 success or true, 1 false or non-member, 2 usage or input
//! error, 3 cap exhaustion.

mod corpus;

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

pub use corpus::{run_corpus, Fixture};

use crate::automorphism::{
    apply_auto, automorphism_degree, bch, compose, exp_derivation, group_commutator_log,
    log_automorphism, one_parameter, pushforward, triangular_inverse, Auto,
};
use crate::degrees::{bounding_weights, is_degree_preserving};
use crate::derivation::{
    bracket, certify_lnd, check_commuting, coefficient_matrix, is_locally_free, nilpotency_index,
    Deriv,
};
use crate::djlike::{
    annihilated_level, build_slice_system, commuting_reduction, cylinder_presentation,
    dj_membership, family_equivalent, family_includes, kernel_project, reconstruct, rx_membership,
    slice_expand, Family, MembershipReport,
};
use crate::error::{Error, Result};
use crate::json;
use crate::linalg::symbolic_rank;
use crate::poly::{
    evaluate_at, parse_expr, parse_poly, poly_gcd, Canonical, RatFn, Rational, VarSet,
};
use crate::{DEFAULT_CAP, DEFAULT_DEGREE_CAP};

#[derive(Parser, Debug)]
#[command(
    name = "unipotent",
    version,
    about = "Exact computations with LNDs and unipotent automorphisms"
)]
struct Cli {
    /// Iteration cap for nilpotency checks and logarithms
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Total-degree cap for slice searches
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// JSON output for commands that print text reports
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Certify that a derivation is locally nilpotent
    CheckLnd { deriv: String },
    /// Commutator [d1, d2]
    Bracket { d1: String, d2: String },
    /// exp(d), exp(t d) for a new parameter t, or exp(c d) for a rational c
    Exp {
        deriv: String,
        #[arg(long)]
        param: Option<String>,
        #[arg(long, conflicts_with = "param", allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Logarithm of a unipotent automorphism
    Log { auto: String },
    /// z with exp(z) = exp(d1) ∘ exp(d2)
    Bch { d1: String, d2: String },
    /// log of exp(d1) exp(d2) exp(-d1) exp(-d2), compared with [d1, d2]
    CommutatorLog { d1: String, d2: String },
    /// Pull an expression back along an automorphism
    AutoApply {
        auto: String,
        expr: String,
        /// Point such as `x=1,t=3`
        #[arg(long)]
        at: Option<String>,
    },
    /// a ∘ b
    AutoCompose { a: String, b: String },
    /// Inverse automorphism
    AutoInverse { auto: String },
    /// Max total degree of an automorphism and its inverse
    AutoDegree {
        auto: String,
        inverse: Option<String>,
    },
    /// Conjugate a derivation by an automorphism
    Pushforward { deriv: String, auto: String },
    /// Slice system of a family
    Slices { family: String },
    /// Kernel projection of an expression
    Project { family: String, expr: String },
    /// Expansion of a polynomial in slice coordinates
    Expand { family: String, expr: String },
    /// Annihilator-tower level of an expression
    Level { family: String, expr: String },
    /// Membership in the dJ-like algebra of a family
    DjMember { deriv: String, family: String },
    /// Membership in R_X of a family
    RxMember { deriv: String, family: String },
    /// Is the dJ-like group of SMALL contained in that of BIG?
    FamilyInclude { big: String, small: String },
    /// Do two families define the same dJ-like group?
    FamilyEqual { f1: String, f2: String },
    /// Commuting, locally free family inside a Lie algebra of LNDs
    ReduceCommuting {
        basis: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },
    /// Cylinder presentation of a family
    Cylinder { family: String },
    /// Bounding weights for unitriangular automorphisms
    Weights {
        #[arg(required = true)]
        autos: Vec<String>,
        /// Cylinder variables in order
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
        /// Base weights such as `x=1`
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,
    },
    /// Check that an automorphism preserves a weight function
    DegreeCheck { auto: String, weights: String },
    /// Run every fixture in a directory
    RunCorpus { dir: String },
    /// d(f)
    Apply { deriv: String, expr: String },
    /// Smallest m with d^m(f) = 0
    NilIndex { deriv: String, expr: String },
    /// Pairs of non-commuting derivations in a basis
    Commuting { basis: String },
    /// Symbolic rank of a basis and whether it is locally free
    Rank { basis: String },
    /// Canonical form of an expression
    Normalize {
        expr: String,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// Monic gcd of two polynomials
    Gcd {
        p: String,
        q: String,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// Exact value of an expression at a point
    Eval {
        expr: String,
        #[command(flatten)]
        vars: VarArgs,
        #[arg(long, required = true)]
        at: String,
    },
    /// Weighted total degree of a polynomial
    Deg {
        expr: String,
        #[command(flatten)]
        vars: VarArgs,
        /// Weights such as `x=1,y=2`; missing variables weigh 1
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
    },
}

#[derive(clap::Args, Debug)]
struct VarArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

impl VarArgs {
    fn varset(&self) -> Result<VarSet> {
        VarSet::with_params(&self.vars, &self.params)
    }
}

/// Exit code and captured output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Resolves file arguments: `-` is standard input, names in `virtual_files`
/// are served from memory, anything else is read from disk.
pub struct Inputs<'a> {
    pub stdin: &'a str,
    pub virtual_files: &'a BTreeMap<String, String>,
}

impl Inputs<'_> {
    fn text(&self, name: &str) -> Result<String> {
        if name == "-" {
            return Ok(self.stdin.to_string());
        }
        if let Some(t) = self.virtual_files.get(name) {
            return Ok(t.clone());
        }
        std::fs::read_to_string(name)
            .map_err(|e| Error::Schema(format!("cannot read `{name}`: {e}")))
    }

    fn json(&self, name: &str) -> Result<Value> {
        serde_json::from_str(&self.text(name)?)
            .map_err(|e| Error::Schema(format!("malformed JSON in `{name}`: {e}")))
    }
}

/// Names of all subcommands, in declaration order.
pub fn subcommand_names() -> Vec<String> {
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect()
}

/// Runs one command line (without the program name).
pub fn run_command(argv: &[String], stdin: &str) -> Outcome {
    run_with_inputs(
        argv,
        &Inputs {
            stdin,
            virtual_files: &BTreeMap::new(),
        },
    )
}

pub fn run_with_inputs(argv: &[String], inputs: &Inputs) -> Outcome {
    let cli = match Cli::try_parse_from(
        std::iter::once("unipotent".to_string()).chain(argv.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(0, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli, inputs) {
        Ok((code, mut out)) => {
            if !out.is_empty() && !out.ends_with('\n') {
                out.push('\n');
            }
            Outcome::ok(code, out)
        }
        Err(e) => Outcome {
            code: if e.is_cap_exhaustion() { 3 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|_| Error::Schema(format!("`{s}` is not a rational number")))
}

/// `name=value` pairs separated by commas.
fn parse_assignments(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| match p.split_once('=') {
            Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
            None => Err(Error::Schema(format!("expected name=value, got `{p}`"))),
        })
        .collect()
}

fn parse_point(s: &str) -> Result<BTreeMap<String, Rational>> {
    parse_assignments(s)?
        .into_iter()
        .map(|(k, v)| Ok((k, parse_rational(&v)?)))
        .collect()
}

fn var_index(vars: &VarSet, name: &str) -> Result<usize> {
    vars.index_of(name)
        .ok_or_else(|| Error::Schema(format!("unknown variable `{name}`")))
}

fn bool_line(holds: bool, reason: Option<String>) -> (i32, String) {
    match (holds, reason) {
        (true, _) => (0, "true".into()),
        (false, Some(r)) => (1, format!("false: {r}")),
        (false, None) => (1, "false".into()),
    }
}

struct Ctx<'a> {
    cap: usize,
    inputs: &'a Inputs<'a>,
}

impl Ctx<'_> {
    fn deriv(&self, name: &str) -> Result<Deriv> {
        json::deriv_from_json(&self.inputs.json(name)?)
    }

    fn auto(&self, name: &str) -> Result<(Auto, Option<Auto>)> {
        json::auto_from_json(&self.inputs.json(name)?, self.cap)
    }

    fn family(&self, name: &str) -> Result<Family> {
        json::family_from_json(&self.inputs.json(name)?, self.cap)
    }

    fn basis(&self, name: &str) -> Result<(VarSet, Vec<Deriv>)> {
        let v = self.inputs.json(name)?;
        Ok((
            json::varset_from_json(&v)?,
            json::derivations_from_json(&v)?,
        ))
    }

    /// Declared inverse, else triangular inverse, else `exp(-log a)`.
    fn inverse(&self, a: &Auto, declared: Option<Auto>) -> Result<Auto> {
        if let Some(inv) = declared {
            return Ok(inv);
        }
        if let Some(order) = a.triangular_order() {
            return triangular_inverse(a, &order);
        }
        let d = log_automorphism(a, self.cap)?.neg();
        exp_derivation(&d, &certify_lnd(&d, self.cap))
    }

    fn certified(&self, d: &Deriv) -> Result<crate::derivation::LndCert> {
        let c = certify_lnd(d, self.cap);
        if c.is_certified() {
            Ok(c)
        } else {
            Err(Error::Uncertified { cap: self.cap })
        }
    }
}

fn report_text(r: &MembershipReport, vars: &VarSet) -> String {
    let coeffs: Vec<String> = r.coeffs.iter().map(|c| c.canonical(vars)).collect();
    let mut out = format!(
        "member: {}\nlevel: {}\ncoeffs: {}",
        r.member,
        r.level,
        coeffs.join(", ")
    );
    if let Some(w) = &r.witness {
        out.push_str(&format!("\nwitness: {}", w.display(vars)));
    }
    out
}

fn execute(cli: &Cli, inputs: &Inputs) -> Result<(i32, String)> {
    let ctx = Ctx {
        cap: cli.cap,
        inputs,
    };
    let as_json = cli.json;
    let text_or_json = |text: String, value: Value| if as_json { pretty(&value) } else { text };
    Ok(match &cli.cmd {
        Cmd::CheckLnd { deriv } => {
            let d = ctx.deriv(deriv)?;
            let cert = certify_lnd(&d, cli.cap);
            let shown = cert.display(d.vars());
            let code = if cert.is_certified() { 0 } else { 3 };
            (
                code,
                text_or_json(
                    shown.clone(),
                    json!({ "certified": cert.is_certified(), "certificate": shown }),
                ),
            )
        }
        Cmd::Bracket { d1, d2 } => {
            let (a, b) = (ctx.deriv(d1)?, ctx.deriv(d2)?);
            a.vars().ensure_same(b.vars())?;
            (0, pretty(&json::deriv_to_json(&bracket(&a, &b))))
        }
        Cmd::Exp { deriv, param, t } => {
            let d = ctx.deriv(deriv)?;
            let a = match (param, t) {
                (Some(name), _) => {
                    let vars = d.vars().with_extra_param(name)?;
                    let td = d
                        .extend_to(&vars)?
                        .mul_poly(&crate::poly::Poly::var(vars.len(), var_index(&vars, name)?));
                    exp_derivation(&td, &ctx.certified(&td)?)?
                }
                (None, Some(t)) => one_parameter(&d, &ctx.certified(&d)?, &parse_rational(t)?)?,
                (None, None) => exp_derivation(&d, &ctx.certified(&d)?)?,
            };
            (0, pretty(&json::auto_to_json(&a, None)))
        }
        Cmd::Log { auto } => {
            let (a, _) = ctx.auto(auto)?;
            (
                0,
                pretty(&json::deriv_to_json(&log_automorphism(&a, cli.cap)?)),
            )
        }
        Cmd::Bch { d1, d2 } => {
            let (a, b) = (ctx.deriv(d1)?, ctx.deriv(d2)?);
            let z = bch(&a, &b, (&ctx.certified(&a)?, &ctx.certified(&b)?), cli.cap)?;
            (0, pretty(&json::deriv_to_json(&z)))
        }
        Cmd::CommutatorLog { d1, d2 } => {
            let (a, b) = (ctx.deriv(d1)?, ctx.deriv(d2)?);
            let r =
                group_commutator_log(&a, &b, (&ctx.certified(&a)?, &ctx.certified(&b)?), cli.cap)?;
            let text = format!(
                "log: {}\nbracket: {}\nrelation: {}",
                r.log.display(),
                r.bracket.display(),
                r.relation.as_str()
            );
            let value = json!({
                "log": json::deriv_to_json(&r.log),
                "bracket": json::deriv_to_json(&r.bracket),
                "relation": r.relation.as_str(),
            });
            (0, text_or_json(text, value))
        }
        Cmd::AutoApply { auto, expr, at } => {
            let (a, _) = ctx.auto(auto)?;
            let vars = a.vars();
            let image = apply_auto(&a, &parse_expr(expr, vars)?)?;
            let shown = match at {
                Some(p) => {
                    let v = evaluate_at(&image, vars, &parse_point(p)?)?;
                    v.to_string()
                }
                None => image.canonical(vars),
            };
            (0, text_or_json(shown.clone(), json!({ "value": shown })))
        }
        Cmd::AutoCompose { a, b } => {
            let (a, _) = ctx.auto(a)?;
            let (b, _) = ctx.auto(b)?;
            a.vars().ensure_same(b.vars())?;
            (0, pretty(&json::auto_to_json(&compose(&a, &b), None)))
        }
        Cmd::AutoInverse { auto } => {
            let (a, declared) = ctx.auto(auto)?;
            let inv = ctx.inverse(&a, declared)?;
            (0, pretty(&json::auto_to_json(&inv, Some(&a))))
        }
        Cmd::AutoDegree { auto, inverse } => {
            let (a, declared) = ctx.auto(auto)?;
            let inv = match inverse {
                Some(f) => ctx.auto(f)?.0,
                None => ctx.inverse(&a, declared)?,
            };
            let deg = automorphism_degree(&a, &inv)?;
            (0, text_or_json(deg.to_string(), json!({ "degree": deg })))
        }
        Cmd::Pushforward { deriv, auto } => {
            let d = ctx.deriv(deriv)?;
            let (tau, declared) = ctx.auto(auto)?;
            d.vars().ensure_same(tau.vars())?;
            let inv = ctx.inverse(&tau, declared)?;
            (
                0,
                pretty(&json::deriv_to_json(&pushforward(&d, &tau, &inv))),
            )
        }
        Cmd::Slices { family } => {
            let fam = ctx.family(family)?;
            let s = build_slice_system(&fam, cli.degree_cap)?;
            let vars = fam.vars();
            let mut lines = Vec::new();
            for (i, (y, x)) in s.y.iter().zip(&s.x).enumerate() {
                lines.push(format!("y{} = {}", i + 1, y.canonical(vars)));
                lines.push(format!("x{} = {}", i + 1, x.canonical(vars)));
            }
            lines.push(format!("h = {}", s.h.canonical(vars)));
            (0, text_or_json(lines.join("\n"), json::slices_to_json(&s)))
        }
        Cmd::Project { family, expr } => {
            let fam = ctx.family(family)?;
            let s = build_slice_system(&fam, cli.degree_cap)?;
            let p = kernel_project(&parse_expr(expr, fam.vars())?, &s)?;
            let shown = p.canonical(fam.vars());
            (0, text_or_json(shown.clone(), json!({ "value": shown })))
        }
        Cmd::Expand { family, expr } => {
            let fam = ctx.family(family)?;
            let s = build_slice_system(&fam, cli.degree_cap)?;
            let g = parse_poly(expr, fam.vars())?;
            let e = slice_expand(&g, &s);
            if reconstruct(&e, &s) != RatFn::from_poly(g) {
                return Err(Error::Internal("expansion does not reconstruct".into()));
            }
            let lines: Vec<String> = e
                .iter()
                .map(|(alpha, c)| {
                    let a: Vec<String> = alpha.iter().map(u32::to_string).collect();
                    format!("({}): {}", a.join(","), c.canonical(fam.vars()))
                })
                .collect();
            (
                0,
                text_or_json(lines.join("\n"), json::expansion_to_json(&e, fam.vars())),
            )
        }
        Cmd::Level { family, expr } => {
            let fam = ctx.family(family)?;
            let level = annihilated_level(&parse_expr(expr, fam.vars())?, &fam);
            (
                0,
                text_or_json(level.to_string(), json!({ "level": level })),
            )
        }
        Cmd::DjMember { deriv, family } | Cmd::RxMember { deriv, family } => {
            let d = ctx.deriv(deriv)?;
            let fam = ctx.family(family)?;
            d.vars().ensure_same(fam.vars())?;
            let r = if matches!(cli.cmd, Cmd::DjMember { .. }) {
                dj_membership(&d, &fam)
            } else {
                rx_membership(&d, &fam)
            };
            let code = if r.member { 0 } else { 1 };
            (
                code,
                text_or_json(
                    report_text(&r, fam.vars()),
                    json::report_to_json(&r, fam.vars()),
                ),
            )
        }
        Cmd::FamilyInclude { big, small } => {
            let (big, small) = (ctx.family(big)?, ctx.family(small)?);
            let inc = family_includes(&big, &small);
            let (code, text) = bool_line(inc.holds, inc.failure.clone());
            let coeffs: Vec<Vec<String>> = inc
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.canonical(big.vars())).collect())
                .collect();
            (
                code,
                text_or_json(
                    text,
                    json!({ "holds": inc.holds, "coeffs": coeffs, "failure": inc.failure }),
                ),
            )
        }
        Cmd::FamilyEqual { f1, f2 } => {
            let (a, b) = (ctx.family(f1)?, ctx.family(f2)?);
            let eq = family_equivalent(&a, &b)?;
            let (code, text) = bool_line(eq, None);
            (code, text_or_json(text, json!({ "equivalent": eq })))
        }
        Cmd::ReduceCommuting {
            basis,
            rank,
            max_steps,
        } => {
            let (_, ds) = ctx.basis(basis)?;
            let fam = commuting_reduction(&ds, *rank, *max_steps, cli.cap)?;
            (0, pretty(&json::family_to_json(&fam)))
        }
        Cmd::Cylinder { family } => {
            let fam = ctx.family(family)?;
            let s = build_slice_system(&fam, cli.degree_cap)?;
            let c = cylinder_presentation(&fam, &s)?;
            let vars = fam.vars();
            let mut lines = vec![format!("f = {}", c.f.canonical(vars))];
            for (v, e) in &c.table {
                let terms: Vec<String> = e
                    .iter()
                    .map(|(alpha, coef)| {
                        let a: Vec<String> = alpha.iter().map(u32::to_string).collect();
                        format!("({}): {}", a.join(","), coef.canonical(vars))
                    })
                    .collect();
                lines.push(format!("{} = {}", vars.name(*v), terms.join("; ")));
            }
            (
                0,
                text_or_json(lines.join("\n"), json::cylinder_to_json(&c)),
            )
        }
        Cmd::Weights { autos, order, base } => {
            let mut pairs = Vec::new();
            for f in autos {
                let (a, declared) = ctx.auto(f)?;
                let inv = ctx.inverse(&a, declared)?;
                pairs.push((a, inv));
            }
            let vars = pairs[0].0.vars().clone();
            let order = order
                .iter()
                .map(|n| var_index(&vars, n))
                .collect::<Result<Vec<_>>>()?;
            let mut base_w = BTreeMap::new();
            for (k, v) in parse_assignments(&base.join(","))? {
                let w = v
                    .parse::<i64>()
                    .map_err(|_| Error::Schema(format!("weight `{v}` is not an integer")))?;
                base_w.insert(var_index(&vars, &k)?, w);
            }
            (
                0,
                pretty(&json::weights_to_json(&bounding_weights(
                    &pairs, &order, &base_w,
                )?)),
            )
        }
        Cmd::DegreeCheck { auto, weights } => {
            let (a, declared) = ctx.auto(auto)?;
            let inv = ctx.inverse(&a, declared)?;
            let w = json::weights_from_json(&inputs.json(weights)?, a.vars())?;
            let bad = is_degree_preserving(&a, &inv, &w);
            let (code, text) = bool_line(bad.is_none(), bad.as_ref().map(|b| b.display(a.vars())));
            (
                code,
                text_or_json(
                    text,
                    json!({ "preserving": bad.is_none(), "witness": bad.map(|b| b.display(a.vars())) }),
                ),
            )
        }
        Cmd::RunCorpus { dir } => {
            let report = run_corpus(std::path::Path::new(dir))?;
            (report.code, report.text)
        }
        Cmd::Apply { deriv, expr } => {
            let d = ctx.deriv(deriv)?;
            let v = d.apply_ratfn(&parse_expr(expr, d.vars())?);
            let shown = v.canonical(d.vars());
            (0, text_or_json(shown.clone(), json!({ "value": shown })))
        }
        Cmd::NilIndex { deriv, expr } => {
            let d = ctx.deriv(deriv)?;
            let f = parse_poly(expr, d.vars())?;
            match nilpotency_index(&d, &f, cli.cap) {
                Some(m) => (0, text_or_json(m.to_string(), json!({ "index": m }))),
                None => {
                    return Err(Error::NotUnipotent {
                        var: expr.clone(),
                        cap: cli.cap,
                    })
                }
            }
        }
        Cmd::Commuting { basis } => {
            let (_, ds) = ctx.basis(basis)?;
            let bad = check_commuting(&ds);
            let text = if bad.is_empty() {
                "commuting".to_string()
            } else {
                let pairs: Vec<String> = bad
                    .iter()
                    .map(|(i, j)| format!("({},{})", i + 1, j + 1))
                    .collect();
                format!("non-commuting: {}", pairs.join(" "))
            };
            let pairs: Vec<[usize; 2]> = bad.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
            (
                if bad.is_empty() { 0 } else { 1 },
                text_or_json(text, json!({ "pairs": pairs })),
            )
        }
        Cmd::Rank { basis } => {
            let (_, ds) = ctx.basis(basis)?;
            let r = if ds.is_empty() {
                0
            } else {
                symbolic_rank(&coefficient_matrix(&ds))
            };
            let free = is_locally_free(&ds);
            let text = format!("rank {r}{}", if free { ", locally free" } else { "" });
            (
                0,
                text_or_json(text, json!({ "rank": r, "locally_free": free })),
            )
        }
        Cmd::Normalize { expr, vars } => {
            let v = vars.varset()?;
            let shown = parse_expr(expr, &v)?.canonical(&v);
            (0, text_or_json(shown.clone(), json!({ "value": shown })))
        }
        Cmd::Gcd { p, q, vars } => {
            let v = vars.varset()?;
            let g = poly_gcd(&parse_poly(p, &v)?, &parse_poly(q, &v)?).canonical(&v);
            (0, text_or_json(g.clone(), json!({ "value": g })))
        }
        Cmd::Eval { expr, vars, at } => {
            let v = vars.varset()?;
            let value = evaluate_at(&parse_expr(expr, &v)?, &v, &parse_point(at)?)?.to_string();
            (0, text_or_json(value.clone(), json!({ "value": value })))
        }
        Cmd::Deg {
            expr,
            vars,
            weights,
        } => {
            let v = vars.varset()?;
            let mut w = vec![1i64; v.len()];
            for (k, val) in parse_assignments(&weights.join(","))? {
                w[var_index(&v, &k)?] = val
                    .parse()
                    .map_err(|_| Error::Schema(format!("weight `{val}` is not an integer")))?;
            }
            let d = parse_poly(expr, &v)?.weighted_degree(&w).to_string();
            (0, text_or_json(d.clone(), json!({ "degree": d })))
        }
    })
}
