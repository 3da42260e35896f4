mod schema;

use clap::{Args, Parser, Subcommand};
use holonomy::braidgrpd::{self, LogColoring};
use holonomy::linalg;
use holonomy::qdilog::{RootConfig, Tolerance};
use holonomy::rmatrix;
use holonomy::verify::{self, Options, Suite};
use holonomy::Error;
use schema::{cx, BraidIn, CharIn, CrossingIn, SchemaError, SegmentOut, ZetaSetOut};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "holonomy", version, about = "Holonomy R-matrices at roots of unity: evaluation and identity checks")]
struct Cli {
    /// Order of the root of unity; a comma-separated list for `selftest`.
    #[arg(long = "N", global = true, value_name = "INT[,INT..]")]
    n: Option<String>,
    /// Relative tolerance; for `selftest` it replaces every suite tolerance.
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Threshold below which a factor counts as vanishing.
    #[arg(long, global = true)]
    tol_singular: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format; only `json` is supported.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity suites and report the worst deviation per identity.
    Selftest {
        /// Run only these criteria (1-12).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// R-matrix of a single crossing.
    Rmat {
        /// Emit Kashaev's matrix instead of reading a crossing.
        #[arg(long, conflicts_with = "colored_jones")]
        kashaev: bool,
        /// Emit the colored Jones R-matrix in the weight basis.
        #[arg(long)]
        colored_jones: bool,
        /// Accept pinched crossings and use the closed pinched formula.
        #[arg(long)]
        pinched: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Evaluate the state sum of a colored braid.
    Braid {
        /// Skip the matrix and report its size only.
        #[arg(long)]
        matrix_free: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Propagate characters through a braid.
    Color {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Read the JSON input from a file; stdin is used when neither this nor --json is given.
    #[arg(long, short, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long)]
    json: Option<String>,
}

/// A failure with its exit code: 1 for computation failures, 2 for malformed input.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Failure { code: 2, body: json!({ "error": { "kind": "invalid_input", "message": msg } }) }
    }

    fn lib(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::InvalidOrder(_)
            | Error::InvalidTolerance(_)
            | Error::RootMismatch(_)
            | Error::Inconsistent(_)
            | Error::NonInteger(_)
            | Error::Dimension { .. }
            | Error::GeneratorRange(..) => ("invalid_input", 2),
            Error::Pinched(_) => ("pinched", 1),
            Error::NotPinched => ("not_pinched", 1),
            Error::Inadmissible(_) => ("inadmissible", 1),
            Error::Singular(_) => ("singular", 1),
            Error::Constraint(_) | Error::FusionConstraint(_) => ("constraint", 1),
            Error::Ineligible(_) => ("ineligible", 1),
        };
        let mut err = json!({ "kind": kind, "message": e.to_string() });
        match e {
            Error::Inadmissible(k) => err["crossing"] = json!(k),
            Error::Pinched(r) => {
                err["region"] = json!(r.to_string());
                err["message"] = json!(format!("zeta0_{r} is an integer: the crossing is pinched; rerun with --pinched"));
            }
            _ => {}
        }
        Failure { code, body: json!({ "error": err }) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::lib(e)
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::input(e.0)
    }
}

fn parse_ns(s: Option<&str>, default: &[usize]) -> Result<Vec<usize>, Failure> {
    let Some(s) = s else { return Ok(default.to_vec()) };
    let ns: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::input(format!("N must be an integer, got \"{t}\""))))
        .collect::<Result<_, _>>()?;
    if ns.is_empty() || ns.iter().any(|&n| n < 2) {
        return Err(Failure::input("N must be ≥ 2"));
    }
    Ok(ns)
}

fn single_n(cli: &Cli) -> Result<usize, Failure> {
    let ns = parse_ns(cli.n.as_deref(), &[2])?;
    if ns.len() != 1 {
        return Err(Failure::input("this command takes a single N"));
    }
    Ok(ns[0])
}

fn check_tol(name: &str, v: Option<f64>) -> Result<(), Failure> {
    match v {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::input(format!("{name} must be positive, got {t}"))),
        _ => Ok(()),
    }
}

fn root_config(cli: &Cli) -> Result<RootConfig, Failure> {
    let n = single_n(cli)?;
    let mut tol = Tolerance::default();
    if let Some(r) = cli.tol_rel {
        tol.rel = r;
    }
    if let Some(s) = cli.tol_singular {
        tol.singular = s;
    }
    Ok(RootConfig::with_tol(n, tol)?)
}

fn read_input(a: &InputArgs) -> Result<String, Failure> {
    if let Some(j) = &a.json {
        return Ok(j.clone());
    }
    let mut s = String::new();
    match &a.input {
        Some(p) => s = std::fs::read_to_string(p).map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn parse_json<T: serde::de::DeserializeOwned>(a: &InputArgs) -> Result<T, Failure> {
    serde_json::from_str(&read_input(a)?).map_err(|e| Failure::input(format!("malformed input: {e}")))
}

#[derive(Serialize)]
struct CheckOut<'a> {
    identity: &'a str,
    #[serde(rename = "N")]
    n: Option<usize>,
    max_dev: f64,
    tol: f64,
    passed: bool,
}

fn suite_json(s: &Suite) -> Value {
    let checks: Vec<CheckOut> = s
        .checks
        .iter()
        .map(|c| CheckOut { identity: &c.name, n: (c.n > 0).then_some(c.n), max_dev: c.dev, tol: c.tol, passed: c.passed() })
        .collect();
    json!({ "id": s.id, "name": s.name, "passed": s.passed(), "checks": checks })
}

fn selftest(cli: &Cli, only: &[u8]) -> Result<(Value, bool), Failure> {
    let ns = parse_ns(cli.n.as_deref(), &[2, 3, 5, 7])?;
    check_tol("--tol-rel", cli.tol_rel)?;
    check_tol("--tol-singular", cli.tol_singular)?;
    if let Some(bad) = only.iter().find(|&&k| !(1..=12).contains(&k)) {
        return Err(Failure::input(format!("criterion {bad} does not exist; use 1-12")));
    }
    let o = Options { ns: ns.clone(), seed: cli.seed, tol_override: cli.tol_rel };
    let all: [fn(&Options) -> Suite; 12] = [
        verify::dilog_suite,
        verify::intertwining_suite,
        verify::recurrence_suite,
        verify::r2_suite,
        verify::r3_suite,
        verify::factorization_suite,
        verify::pinched_suite,
        verify::determinant_suite,
        verify::weight_basis_suite,
        verify::log_dependence_suite,
        verify::character_suite,
        verify::representation_suite,
    ];
    let chosen: Vec<_> = all.iter().enumerate().filter(|(i, _)| only.is_empty() || only.contains(&(*i as u8 + 1))).map(|(_, f)| *f).collect();
    let suites: Vec<Suite> = std::thread::scope(|sc| {
        let hs: Vec<_> = chosen.iter().map(|f| sc.spawn(|| f(&o))).collect();
        hs.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let passed = suites.iter().all(Suite::passed);
    let report = json!({
        "N": ns,
        "seed": cli.seed,
        "passed": passed,
        "criteria": suites.iter().map(suite_json).collect::<Vec<_>>(),
    });
    Ok((report, passed))
}

fn rmat_cmd(cli: &Cli, kashaev: bool, colored_jones: bool, pinched: bool, input: &InputArgs) -> Result<Value, Failure> {
    let cfg = root_config(cli)?;
    if kashaev || colored_jones {
        let (kind, r) = if kashaev {
            ("kashaev", rmatrix::kashaev_rmat(&cfg))
        } else {
            ("colored_jones", rmatrix::colored_jones_dual(&cfg))
        };
        let det = linalg::det(&r.braiding());
        return Ok(json!({ "N": cfg.n(), "kind": kind, "entries": schema::rtensor(&r), "det_lu": cx(det) }));
    }
    let req: CrossingIn = parse_json(input)?;
    let c = req.to_crossing()?;
    c.validate(&cfg)?;
    let is_pinched = c.is_pinched(&cfg);
    if is_pinched && !pinched {
        return Err(Error::Pinched(c.pinched_region(&cfg).map(|r| r.label()).unwrap_or('?')).into());
    }
    let r = if is_pinched { rmatrix::rmat_pinched(&cfg, &c)? } else { rmatrix::rmat(&cfg, &c)? };
    let det_lu = linalg::det(&r.braiding());
    let det_closed = if is_pinched { None } else { Some(rmatrix::det_braiding(&cfg, &c)?) };
    let agree = det_closed.map(|d| linalg::rel_err(d, det_lu) <= cfg.tol.rel);
    Ok(json!({
        "N": cfg.n(),
        "sign": c.sign.value() as i64,
        "entries": schema::rtensor(&r),
        "zeta": ZetaSetOut::of(&c),
        "kappa": cx(c.kappa_value()),
        "pinched": is_pinched,
        "det_closed": det_closed.map(cx),
        "det_lu": cx(det_lu),
        "det_agree": agree,
    }))
}

fn color_json(cfg: &RootConfig, req: &BraidIn) -> Result<(Value, braidgrpd::DiagramGraph, braidgrpd::ChiColoring), Failure> {
    let d = braidgrpd::build_diagram(&req.word()?);
    let chi = braidgrpd::propagate_chi(cfg, &d, &req.top()?)?;
    let segs: Vec<SegmentOut> = d
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| SegmentOut { id: i, strand: s.strand, slot: s.slot, created_by: s.created_by, chi: CharIn::from_char(&chi.seg[i]), beta: None })
        .collect();
    let pinched: Vec<usize> = chi.pinched.iter().enumerate().filter(|(_, p)| **p).map(|(i, _)| i).collect();
    let v = json!({
        "width": d.width,
        "word": req.word,
        "segments": segs,
        "crossings": schema::crossings_out(&d, &chi.pinched),
        "pinched_crossings": pinched,
        "bottom_colors": chi.bottom(&d).iter().map(CharIn::from_char).collect::<Vec<_>>(),
        "bottom_strands": d.bottom_strands(),
    });
    Ok((v, d, chi))
}

fn color_cmd(cli: &Cli, input: &InputArgs) -> Result<Value, Failure> {
    let cfg = root_config(cli)?;
    let req: BraidIn = parse_json(input)?;
    Ok(color_json(&cfg, &req)?.0)
}

fn braid_cmd(cli: &Cli, matrix_free: bool, input: &InputArgs) -> Result<Value, Failure> {
    let cfg = root_config(cli)?;
    let req: BraidIn = parse_json(input)?;
    let (mut v, d, chi) = color_json(&cfg, &req)?;
    let top = req.top_data(&req.top()?)?;
    let mut lc = LogColoring::principal(&d, &chi, &top);
    req.apply_overrides(&d, &mut lc)?;
    if let Some(target) = req.lambda()? {
        braidgrpd::fit_longitudes(&d, &mut lc, &target)?;
    }
    braidgrpd::check_log_coloring(&cfg, &d, &chi, &lc)?;
    for (i, s) in v["segments"].as_array_mut().expect("segments array").iter_mut().enumerate() {
        s["beta"] = json!(cx(lc.beta[i]));
    }
    let lam = braidgrpd::log_longitudes(&d, &lc);
    v["N"] = json!(cfg.n());
    v["regions"] = json!(lc.gamma.iter().map(|g| cx(*g)).collect::<Vec<_>>());
    v["components"] = json!((0..d.width).map(|s| json!({ "strand": s, "mu": cx(lc.mu[s]), "lambda": cx(lam[s]) })).collect::<Vec<_>>());
    let glue = braidgrpd::edge_gluing_residuals(&d, &lc).iter().fold(0.0f64, |m, (_, r)| m.max(*r));
    v["edge_gluing_max"] = json!(glue);
    let dim = cfg.n().pow(d.width as u32);
    if matrix_free {
        v["matrix_free"] = json!({ "dim": dim, "crossings": d.crossings.len() });
    } else {
        let m = braidgrpd::jfunc_eval(&cfg, &d, &chi, &lc)?;
        v["matrix"] = json!(schema::matrix(&m));
    }
    Ok(v)
}

fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format != "json" {
        emit(&Failure::input(format!("unsupported format \"{}\"; only json is available", cli.format)).body);
        return ExitCode::from(2);
    }
    let out = match &cli.command {
        Command::Selftest { only } => selftest(&cli, only).map(|(v, ok)| (v, if ok { 0 } else { 1 })),
        Command::Rmat { kashaev, colored_jones, pinched, input } => rmat_cmd(&cli, *kashaev, *colored_jones, *pinched, input).map(|v| (v, 0)),
        Command::Braid { matrix_free, input } => braid_cmd(&cli, *matrix_free, input).map(|v| (v, 0)),
        Command::Color { input } => color_cmd(&cli, input).map(|v| (v, 0)),
    };
    match out {
        Ok((v, code)) => {
            emit(&v);
            ExitCode::from(code)
        }
        Err(f) => {
            emit(&f.body);
            eprintln!("error: {}", f.body["error"]["message"].as_str().unwrap_or("failed"));
            ExitCode::from(f.code)
        }
    }
}
