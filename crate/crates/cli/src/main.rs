//! `carlitz`: command-line front end for `carlitz-core`.

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use carlitz_core::acceptance::{self, Config};
use carlitz_core::ideals::{alpha, factor_ring_invariants, ring_invariant};
use carlitz_core::orbits::{brute_count_orbits, list_orbits, phi_form};
use carlitz_core::parse::{parse_c, parse_fq, parse_h, parse_k};
use carlitz_core::{
    classify, count_orbits, factor_central, oracle_check, CarlitzAuto, CyclicOrbit, Exec, KCtx, ModVec,
    ModuleKind, OrbitClass, OrbitError, ParseError, WeightModule,
};

#[derive(Parser)]
#[command(name = "carlitz", version, about = "Exact arithmetic in the Carlitz algebra C_nu")]
struct Cli {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// q = p^nu.
    #[arg(long, global = true, default_value_t = 1)]
    nu: u32,
    /// Degree of the coefficient field over F_p (default 6*nu).
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the orbit of the maximal ideal (H - lambda).
    Classify { lambda: String },
    /// Count or list finite orbits.
    Orbits {
        #[command(subcommand)]
        op: OrbitsCmd,
    },
    /// The central generator of the orbit through lambda.
    Alpha { lambda: String },
    /// Factor a central polynomial in H.
    Factor { poly: String },
    /// Multiply two algebra elements.
    Mul { lhs: String, rhs: String },
    /// Test whether an element is central.
    Central { element: String },
    /// Weight-module operations.
    Module {
        #[command(subcommand)]
        op: ModuleCmd,
    },
    /// Automorphism operations.
    Auto {
        #[command(subcommand)]
        op: AutoCmd,
    },
    /// Operator-model oracle.
    Oracle {
        #[command(subcommand)]
        op: OracleCmd,
    },
    /// Ring invariants, and factor-ring invariants for a cyclic lambda.
    Invariants { lambda: Option<String> },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

#[derive(Subcommand)]
enum OrbitsCmd {
    /// Number of orbits of length n, by formula and by enumeration.
    Count { n: u32 },
    /// All orbits of length n.
    List { n: u32 },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Minus,
    Plus,
    Linear,
    Cyclic,
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Act on a vector given as a JSON map {index: coeff}.
    Act {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 8)]
        window: u32,
        element: String,
        vector: String,
    },
}

#[derive(Subcommand)]
enum AutoCmd {
    /// Apply tau_{alpha,gamma,delta}.
    Apply {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "1")]
        gamma: String,
        #[arg(long, default_value = "0")]
        delta: String,
        element: String,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare two elements on random monomials: `check <u> == <w>`.
    Check {
        lhs: String,
        #[arg(value_parser = ["=="])]
        eq: String,
        rhs: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

enum CliError {
    Parse { input: String, err: ParseError },
    Domain(String),
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parsed<T>(input: &str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|err| CliError::Parse { input: input.to_string(), err })
}

/// Text and JSON renderings of one command's result.
struct Output {
    text: String,
    json: Value,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let k = cli.k.unwrap_or(6 * cli.nu);
    let ctx = KCtx::new(cli.p, cli.nu, k).map_err(domain)?;
    let exec = Exec::default();
    let out = match &cli.cmd {
        Cmd::Classify { lambda } => {
            let lam = parsed(lambda, parse_k(&ctx, lambda))?;
            let class = classify(&lam);
            let mut j = class.to_json();
            j["lambda"] = json!(lam.to_string());
            Output { text: class.to_string(), json: j }
        }
        Cmd::Orbits { op: OrbitsCmd::Count { n } } => {
            let mobius = count_orbits(ctx.q(), *n).map_err(domain)?;
            // The count does not depend on the ambient field, so fall back
            // to F_{q^n} when the configured one is too small.
            let brute = match brute_count_orbits(&ctx, *n, exec) {
                Err(OrbitError::AmbientTooSmall { .. }) => {
                    let own = KCtx::new(cli.p, cli.nu, cli.nu * n).map_err(domain)?;
                    brute_count_orbits(&own, *n, exec)
                }
                r => r,
            }
            .map_err(domain)?;
            Output {
                text: format!("{mobius} (mobius) / {brute} (brute)"),
                json: json!({"n": n, "mobius": mobius, "brute": brute, "phi_form": phi_form(ctx.q(), *n).to_string()}),
            }
        }
        Cmd::Orbits { op: OrbitsCmd::List { n } } => {
            let orbits = list_orbits(&ctx, *n, exec).map_err(domain)?;
            let text = orbits
                .iter()
                .map(|o| format!("{o}  representative {}", o.representative(&ctx)))
                .collect::<Vec<_>>()
                .join("\n");
            let json = orbits
                .iter()
                .map(|o| json!({"orbit_key": o.key().to_string(), "n": o.len(), "representative": o.representative(&ctx).to_string()}))
                .collect();
            Output { text, json: Value::Array(json) }
        }
        Cmd::Alpha { lambda } => {
            let lam = parsed(lambda, parse_k(&ctx, lambda))?;
            let a = alpha(&lam).map_err(domain)?;
            let orbit = CyclicOrbit::from_lambda(&lam).map_err(domain)?;
            Output { text: a.to_string(), json: json!({"orbit": orbit.to_string(), "alpha": a.to_string()}) }
        }
        Cmd::Factor { poly } => {
            let d = parsed(poly, parse_h(&ctx, poly))?;
            let c = factor_central(&d, exec).map_err(domain)?;
            Output { text: c.to_string(), json: c.to_json() }
        }
        Cmd::Mul { lhs, rhs } => {
            let u = parsed(lhs, parse_c(&ctx, lhs))?;
            let w = parsed(rhs, parse_c(&ctx, rhs))?;
            let r = &u * &w;
            Output { text: r.to_string(), json: json!({"result": r.to_string(), "terms": r.to_json()}) }
        }
        Cmd::Central { element } => {
            let u = parsed(element, parse_c(&ctx, element))?;
            let c = u.is_central();
            Output { text: c.to_string(), json: json!({"element": u.to_string(), "central": c}) }
        }
        Cmd::Module { op: ModuleCmd::Act { kind, lambda, c, window, element, vector } } => {
            let need = |name: &str, v: &Option<String>| -> Result<_, CliError> {
                let s = v.as_ref().ok_or_else(|| CliError::Domain(format!("MissingArgument: --{name} is required for this kind")))?;
                parsed(s, parse_k(&ctx, s))
            };
            let kind = match kind {
                KindArg::Minus => ModuleKind::MinusDeg,
                KindArg::Plus => ModuleKind::PlusDeg,
                KindArg::Linear => ModuleKind::LinearNonDeg { lambda: need("lambda", lambda)? },
                KindArg::Cyclic => {
                    let lam = need("lambda", lambda)?;
                    let n = match classify(&lam) {
                        OrbitClass::Cyclic { n, .. } => n,
                        other => {
                            return Err(CliError::Domain(format!(
                                "ClassificationMismatch: {lam} is {other}, expected Cyclic"
                            )))
                        }
                    };
                    let c = match c {
                        Some(_) => need("c", c)?,
                        None => ctx.one(),
                    };
                    ModuleKind::Cyclic { lambda: lam, n, c }
                }
            };
            let m = WeightModule::new(&ctx, kind, *window).map_err(domain)?;
            let u = parsed(element, parse_c(&ctx, element))?;
            let v = parse_vector(&ctx, vector)?;
            let r = m.act(&u, &v).map_err(domain)?;
            Output { text: r.to_string(), json: json!({"module": m.to_string(), "result": r.to_json()}) }
        }
        Cmd::Auto { op: AutoCmd::Apply { alpha, gamma, delta, element } } => {
            let a = parsed(alpha, parse_k(&ctx, alpha))?;
            let g = parsed(gamma, parse_fq(ctx.field(), gamma))?;
            let d = parsed(delta, parse_fq(ctx.field(), delta))?;
            let t = CarlitzAuto::new(a, g, d).map_err(domain)?;
            let u = parsed(element, parse_c(&ctx, element))?;
            let r = t.apply(&u);
            Output { text: r.to_string(), json: json!({"auto": t.to_string(), "result": r.to_string()}) }
        }
        Cmd::Oracle { op: OracleCmd::Check { lhs, rhs, trials, .. } } => {
            let u = parsed(lhs, parse_c(&ctx, lhs))?;
            let w = parsed(rhs, parse_c(&ctx, rhs))?;
            let v = oracle_check(&u, &w, *trials, cli.seed, exec);
            let nf = u == w;
            Output {
                text: format!("{v}; normal forms {}", if nf { "equal" } else { "differ" }),
                json: json!({"consistent": v.consistent(), "trials": v.trials, "separated_at": v.separated_at, "normal_forms_equal": nf}),
            }
        }
        Cmd::Invariants { lambda } => {
            let r = ring_invariant(&ctx);
            let mut text = format!("ring invariant min |Z(C/m)| = {r}");
            let mut j = json!({"ring_invariant": r});
            if let Some(s) = lambda {
                let lam = parsed(s, parse_k(&ctx, s))?;
                let o = CyclicOrbit::from_lambda(&lam).map_err(domain)?;
                let f = factor_ring_invariants(&o, &ctx);
                text.push_str(&format!(
                    "\n{o}: C/m = M_{}(K[t, t^-1; sigma^{}]), centre order {}, Krull dim {}, gl.dim {}, domain {}",
                    f.matrix_degree, f.matrix_degree, f.centre_order, f.kdim, f.gldim, f.is_domain
                ));
                j["orbit"] = json!({
                    "orbit": o.to_string(), "matrix_degree": f.matrix_degree, "centre_order": f.centre_order,
                    "kdim": f.kdim, "gldim": f.gldim, "is_domain": f.is_domain,
                });
            }
            Output { text, json: j }
        }
        Cmd::Selftest { corrupt } => {
            let report = acceptance::run(&Config { seed: cli.seed, exec, corrupt: *corrupt });
            if !report.all_passed() {
                let out = if cli.json { report.to_json().to_string() } else { report.to_string() };
                println!("{out}");
                return Err(CliError::Domain("SelftestFailed: some acceptance criteria failed".into()));
            }
            Output { text: report.to_string(), json: report.to_json() }
        }
    };
    Ok(out)
}

fn parse_vector(ctx: &KCtx, s: &str) -> Result<ModVec, CliError> {
    let bad = |msg: String| CliError::Parse { input: s.to_string(), err: ParseError { pos: 0, msg } };
    let v: Value = serde_json::from_str(s).map_err(|e| bad(format!("vector is not JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| bad("vector must be a JSON object {index: coeff}".into()))?;
    let mut pairs = Vec::new();
    for (i, c) in obj {
        let i: i64 = i.parse().map_err(|_| bad(format!("index {i:?} is not an integer")))?;
        let c = match c {
            Value::String(t) => parsed(t, parse_k(ctx, t))?,
            Value::Number(n) => ctx.from_int(n.as_i64().ok_or_else(|| bad(format!("coefficient {n} is not an integer")))?),
            other => return Err(bad(format!("coefficient {other} must be a string or integer"))),
        };
        pairs.push((i, c));
    }
    Ok(ModVec::from_pairs(pairs))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse { input, err }) => {
            eprintln!("error: {err}\n  {input}\n  {}^", " ".repeat(err.pos));
            ExitCode::from(2)
        }
    }
}
