//! `orbihall`: command-line frontend for the orbifold / quantum Hall
//! toolkit. One subcommand per module, JSON output with `--json`, exact
//! rationals rendered as `p/q`, and a `selfcheck` command that runs the
//! cross-module verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use serde_json::{json, Value};

use orbihall_core::braid::{
    braid_presentation, build_matrix_rep, enumerate_anyons_1d, enumerate_seifert_ndim,
    statistics_phase, verify_relations, BraidContext,
};
use orbihall_core::checks::{run_all, CheckLevel};
use orbihall_core::laughlin::{
    laughlin_eval, pfaffian_state_eval, slater_eval, vandermonde_eval, ParticleConfig,
};
use orbihall_core::orbifold::{
    abelianization, conductance_spectrum, ktheory_ranks, orbifold_line_euler, presentation,
    riemann_hurwitz_genus, satake_euler, satake_euler_symn, OrbifoldSignature, SeifertData,
};
use orbihall_core::rational::render_rational;
use orbihall_core::selberg::{mc_selberg_estimate, mehta_integral, rm_expectation, Observable};
use orbihall_core::series::fock_graded_dimension;
use orbihall_core::wreath::verify_sym_identity;
use orbihall_core::{FiniteAction, FiniteGroup};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "orbihall", version, about = "Orbifold invariants and quantum Hall data")]
struct Cli {
    /// Emit the machine-readable JSON envelope instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Write the JSON envelope to a file as well
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbifold signature invariants
    Orbifold {
        #[command(subcommand)]
        op: OrbifoldOp,
    },
    /// Wreath-product sector sums and the generating-function identity
    Wreath {
        #[command(subcommand)]
        op: WreathOp,
    },
    /// Fock graded dimension series
    Fock {
        #[arg(long)]
        k0: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Anyon enumeration and braid representations
    Anyons {
        #[command(subcommand)]
        op: AnyonOp,
    },
    /// Laughlin-type wave functions and Schur expansions
    Laughlin {
        #[command(subcommand)]
        op: LaughlinOp,
    },
    /// Selberg/Mehta integral: closed form vs Monte Carlo
    Selberg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Self-normalized random-matrix expectation
    RmExpect {
        /// one of: one, p2, p4, abs_V_power(t)
        #[arg(long)]
        observable: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the verification suites
    Selfcheck {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Args)]
struct SigArg {
    /// Signature, e.g. "g=0;nu=2,3,7"
    #[arg(long)]
    sig: String,
}

#[derive(Subcommand)]
enum OrbifoldOp {
    /// Satake orbifold Euler characteristic
    Euler {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Euler characteristic of the n-th symmetric power
    Symn {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        n: u64,
    },
    /// K-theory ranks (K0, K1)
    Ktheory {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Riemann-Hurwitz genus of the smooth cover
    Cover {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        order: u64,
    },
    /// Fuchsian generators and relations
    Presentation {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Abelianization invariants via Smith normal form
    Abelianization {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Hall conductance value set
    Conductance {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        max_rank: u64,
        #[arg(long, default_value_t = 5)]
        max_multiple: u64,
    },
    /// Orbifold Euler number of a line bundle with Seifert data
    LineEuler {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        chi: i64,
        /// Comma-separated Seifert invariants, one per cone point
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        betas: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum WreathOp {
    /// String-theoretic Euler characteristic of a small action
    StringEuler {
        /// Group spec: trivial | cyclic:k | sym:k | product:(a,b)
        #[arg(long)]
        group: String,
        /// Action: trivial:<points> or regular (cyclic groups only)
        #[arg(long, default_value = "regular")]
        action: String,
    },
    /// Verify the symmetric-product generating-function identity
    SymIdentity {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "regular")]
        action: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum AnyonOp {
    /// 1-dimensional representations of the orbifold braid group
    #[command(name = "1d")]
    OneDim {
        #[command(flatten)]
        sig: SigArg,
        /// Number of strands
        #[arg(long)]
        n: usize,
    },
    /// Admissible Seifert tuples for the N^g-dimensional construction
    Ndim {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        clock: u64,
    },
    /// Build a clock/shift representation and verify all relations
    Rep {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        clock: u64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        betas: Vec<i64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum LaughlinOp {
    /// Evaluate Slater/Laughlin/Pfaffian states at given coordinates
    Eval {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        /// JSON file holding [[re, im], ...] coordinates
        #[arg(long)]
        points: String,
        /// Also evaluate the Pfaffian state (requires even particle count)
        #[arg(long)]
        pfaffian: bool,
    },
    /// Schur expansion of V^p (even p) or alternant table (odd p)
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
}

struct Failure {
    message: String,
    usage: bool,
}

fn usage_err(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        usage: true,
    }
}

fn run_err(message: impl std::fmt::Display) -> Failure {
    Failure {
        message: message.to_string(),
        usage: false,
    }
}

fn parse_sig(text: &str) -> Result<OrbifoldSignature, Failure> {
    OrbifoldSignature::parse(text).map_err(|e| usage_err(format!("bad --sig: {e}")))
}

fn parse_group_action(group: &str, action: &str) -> Result<FiniteAction, Failure> {
    let g = FiniteGroup::parse(group).map_err(|e| usage_err(format!("bad --group: {e}")))?;
    if action == "regular" {
        let k = g.order();
        if FiniteGroup::cyclic(k) != g {
            return Err(usage_err("--action regular requires a cyclic group"));
        }
        return Ok(FiniteAction::regular_cyclic(k));
    }
    if let Some(points) = action.strip_prefix("trivial:") {
        let k: usize = points
            .parse()
            .map_err(|_| usage_err("bad --action trivial:<points>"))?;
        return Ok(FiniteAction::trivial(g, k));
    }
    Err(usage_err("unknown --action (use regular or trivial:<points>)"))
}

fn load_points(path: &str) -> Result<Vec<Complex64>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage_err(format!("cannot read --points {path}: {e}")))?;
    let raw: Vec<[f64; 2]> = serde_json::from_str(&text)
        .map_err(|e| usage_err(format!("--points must be [[re, im], ...]: {e}")))?;
    Ok(raw.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Returns (payload, pass flag for verification commands).
fn dispatch(cmd: &Command) -> Result<(Value, Option<bool>), Failure> {
    match cmd {
        Command::Orbifold { op } => orbifold_dispatch(op),
        Command::Wreath { op } => wreath_dispatch(op),
        Command::Fock { k0, k1, order } => {
            let series = fock_graded_dimension(*k0, *k1, *order);
            Ok((
                json!({ "k0": k0, "k1": k1, "coefficients": series.render() }),
                None,
            ))
        }
        Command::Anyons { op } => anyon_dispatch(op),
        Command::Laughlin { op } => laughlin_dispatch(op),
        Command::Selberg {
            n,
            gamma,
            samples,
            seed,
        } => {
            let closed = mehta_integral(*n, *gamma).map_err(run_err)?;
            let (est, err) = mc_selberg_estimate(*n, *gamma, *samples, *seed).map_err(run_err)?;
            let agree = (closed - est).abs() <= 3.0 * err;
            Ok((
                json!({
                    "closed_form": closed,
                    "monte_carlo": est,
                    "std_error": err,
                    "within_3_sigma": agree,
                }),
                Some(agree),
            ))
        }
        Command::RmExpect {
            observable,
            n,
            gamma,
            samples,
            seed,
        } => {
            let obs = Observable::parse(observable)
                .ok_or_else(|| usage_err(format!("unknown observable '{observable}'")))?;
            let (est, err) = rm_expectation(obs, *n, *gamma, *samples, *seed).map_err(run_err)?;
            Ok((
                json!({ "observable": observable, "estimate": est, "std_error": err }),
                None,
            ))
        }
        Command::Selfcheck { level } => {
            let lvl = match level {
                Level::Quick => CheckLevel::Quick,
                Level::Full => CheckLevel::Full,
            };
            let results = run_all(lvl);
            let all_pass = results.iter().all(|r| r.pass);
            let payload = json!({
                "criteria": results.iter().map(|r| json!({
                    "index": r.index,
                    "description": r.description,
                    "pass": r.pass,
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
                "all_pass": all_pass,
            });
            Ok((payload, Some(all_pass)))
        }
    }
}

fn orbifold_dispatch(op: &OrbifoldOp) -> Result<(Value, Option<bool>), Failure> {
    match op {
        OrbifoldOp::Euler { sig } => {
            let s = parse_sig(&sig.sig)?;
            Ok((json!({ "satake": render_rational(&satake_euler(&s)) }), None))
        }
        OrbifoldOp::Symn { sig, n } => {
            let s = parse_sig(&sig.sig)?;
            if *n == 0 {
                return Err(usage_err("--n must be positive"));
            }
            Ok((
                json!({ "n": n, "satake_symn": render_rational(&satake_euler_symn(&s, *n)) }),
                None,
            ))
        }
        OrbifoldOp::Ktheory { sig } => {
            let s = parse_sig(&sig.sig)?;
            let (k0, k1) = ktheory_ranks(&s);
            Ok((json!({ "k0_rank": k0, "k1_rank": k1 }), None))
        }
        OrbifoldOp::Cover { sig, order } => {
            let s = parse_sig(&sig.sig)?;
            let cover = riemann_hurwitz_genus(&s, *order).map_err(run_err)?;
            Ok((
                json!({ "group_order": cover.group_order, "cover_genus": cover.cover_genus }),
                None,
            ))
        }
        OrbifoldOp::Presentation { sig } => {
            let s = parse_sig(&sig.sig)?;
            let p = presentation(&s);
            Ok((
                json!({ "generators": p.generators, "relations": p.relations }),
                None,
            ))
        }
        OrbifoldOp::Abelianization { sig } => {
            let s = parse_sig(&sig.sig)?;
            let inv = abelianization(&s);
            Ok((serde_json::to_value(inv).map_err(run_err)?, None))
        }
        OrbifoldOp::Conductance {
            sig,
            n,
            max_rank,
            max_multiple,
        } => {
            let s = parse_sig(&sig.sig)?;
            if *n == 0 || *max_rank == 0 || *max_multiple == 0 {
                return Err(usage_err("--n, --max-rank, --max-multiple must be positive"));
            }
            let values: Vec<String> = conductance_spectrum(&s, *n, *max_rank, *max_multiple)
                .iter()
                .map(render_rational)
                .collect();
            Ok((json!({ "n": n, "values": values }), None))
        }
        OrbifoldOp::LineEuler { sig, chi, betas } => {
            let s = parse_sig(&sig.sig)?;
            let seifert = SeifertData::new(betas.clone(), &s).map_err(run_err)?;
            let value = orbifold_line_euler(*chi, &s, &seifert).map_err(run_err)?;
            Ok((json!({ "line_euler": render_rational(&value) }), None))
        }
    }
}

fn wreath_dispatch(op: &WreathOp) -> Result<(Value, Option<bool>), Failure> {
    match op {
        WreathOp::StringEuler { group, action } => {
            let a = parse_group_action(group, action)?;
            let direct = orbihall_core::wreath::string_euler_direct(&a).map_err(run_err)?;
            let central = orbihall_core::wreath::string_euler_centralizer(&a).map_err(run_err)?;
            let agree = direct == central;
            Ok((
                json!({
                    "direct": render_rational(&direct),
                    "centralizer": render_rational(&central),
                    "agree": agree,
                }),
                Some(agree),
            ))
        }
        WreathOp::SymIdentity {
            group,
            action,
            n_max,
        } => {
            let a = parse_group_action(group, action)?;
            let report = verify_sym_identity(&a, *n_max).map_err(run_err)?;
            let payload = json!({
                "base_chi": render_rational(&report.base_chi),
                "entries": report.entries.iter().map(|e| json!({
                    "n": e.n,
                    "direct": render_rational(&e.direct),
                    "series_coeff": render_rational(&e.series_coeff),
                    "matches": e.matches,
                })).collect::<Vec<_>>(),
                "all_match": report.all_match,
            });
            Ok((payload, Some(report.all_match)))
        }
    }
}

fn anyon_dispatch(op: &AnyonOp) -> Result<(Value, Option<bool>), Failure> {
    match op {
        AnyonOp::OneDim { sig, n } => {
            let s = parse_sig(&sig.sig)?;
            let ctx = BraidContext::new(s, *n).map_err(run_err)?;
            let anyons = enumerate_anyons_1d(&ctx).map_err(run_err)?;
            let list: Vec<Value> = anyons
                .iter()
                .map(|a| {
                    json!({
                        "alpha": render_rational(&a.alpha),
                        "betas": a.seifert.betas(),
                        "free_phases": a.free_phases,
                    })
                })
                .collect();
            Ok((json!({ "count": list.len(), "anyons": list }), None))
        }
        AnyonOp::Ndim { sig, n, clock } => {
            let s = parse_sig(&sig.sig)?;
            let ctx = BraidContext::new(s, *n).map_err(run_err)?;
            let tuples = enumerate_seifert_ndim(&ctx, *clock).map_err(run_err)?;
            let list: Vec<Value> = tuples.iter().map(|t| json!({ "betas": t.betas() })).collect();
            Ok((json!({ "count": list.len(), "tuples": list }), None))
        }
        AnyonOp::Rep {
            sig,
            n,
            clock,
            betas,
            tol,
        } => {
            let s = parse_sig(&sig.sig)?;
            let ctx = BraidContext::new(s.clone(), *n).map_err(run_err)?;
            let seifert = SeifertData::new(betas.clone(), &s).map_err(run_err)?;
            let rep = build_matrix_rep(&ctx, *clock, &seifert).map_err(run_err)?;
            let pres = braid_presentation(&ctx);
            let report = verify_relations(&rep, &pres, *tol);
            let alpha = statistics_phase(&rep).ok();
            let payload = json!({
                "dimension": rep.dimension,
                "unitarity_defect": rep.unitarity_defect(),
                "statistics_alpha": alpha,
                "max_residual": report.max_residual,
                "pass": report.pass,
                "residuals": report.residuals.iter().map(|r| json!({
                    "relation": r.relation,
                    "residual": r.residual,
                })).collect::<Vec<_>>(),
            });
            let pass = report.pass;
            Ok((payload, Some(pass)))
        }
    }
}

fn laughlin_dispatch(op: &LaughlinOp) -> Result<(Value, Option<bool>), Failure> {
    match op {
        LaughlinOp::Eval {
            p,
            ell,
            points,
            pfaffian,
        } => {
            let zs = load_points(points)?;
            let cfg = ParticleConfig::new(zs, *ell).map_err(run_err)?;
            let mut payload = json!({
                "n": cfg.len(),
                "p": p,
                "vandermonde": complex_json(vandermonde_eval(&cfg)),
                "slater": complex_json(slater_eval(&cfg)),
                "laughlin": complex_json(laughlin_eval(&cfg, *p)),
            });
            if *pfaffian {
                let value = pfaffian_state_eval(&cfg, *p).map_err(run_err)?;
                payload["pfaffian_state"] = complex_json(value);
            }
            Ok((payload, None))
        }
        LaughlinOp::Expand { n, p } => {
            let expansion =
                orbihall_core::sympoly::vandermonde_power_expand(*n, *p).map_err(run_err)?;
            let payload = match expansion {
                orbihall_core::sympoly::VandermondeExpansion::Schur(map) => {
                    let table: serde_json::Map<String, Value> = map
                        .iter()
                        .map(|(l, c)| {
                            let key = l
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",");
                            (format!("({key})"), Value::String(render_rational(c)))
                        })
                        .collect();
                    json!({ "kind": "schur", "table": table })
                }
                orbihall_core::sympoly::VandermondeExpansion::Alternant(map) => {
                    let table: serde_json::Map<String, Value> = map
                        .iter()
                        .map(|(e, c)| {
                            let key = e
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",");
                            (format!("({key})"), Value::String(render_rational(c)))
                        })
                        .collect();
                    json!({ "kind": "alternant", "table": table })
                }
            };
            Ok((payload, None))
        }
    }
}

fn print_human(out: &mut dyn Write, payload: &Value, indent: usize) {
    // write errors (e.g. a closed pipe) are deliberately ignored
    let pad = "  ".repeat(indent);
    match payload {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        print_human(out, v, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {v}");
                    }
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}-");
                        print_human(out, v, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {v}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{other}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&cli.command) {
        Ok((payload, pass)) => {
            let envelope = json!({
                "command": echo,
                "timestamp": chrono::Utc::now().to_rfc3339(),
                "version": VERSION,
                "payload": payload,
                "pass": pass,
            });
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, serde_json::to_string_pretty(&envelope).unwrap()) {
                    eprintln!("error: cannot write --out {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&envelope).unwrap());
            } else {
                print_human(&mut out, &payload, 0);
                if let Some(p) = pass {
                    let _ = writeln!(out, "status: {}", if p { "PASS" } else { "FAIL" });
                }
            }
            match pass {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(if f.usage { 2 } else { 1 })
        }
    }
}
