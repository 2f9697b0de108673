//! `malcev`: command-line front end for the octonionic Malcev toolkit.

mod json;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use malcev_core::bch::{self, BchConfig};
use malcev_core::harmonics::{self, LaplacianTable};
use malcev_core::moufang::{self, Convention, Trajectory};
use malcev_core::sampling::DEFAULT_SEED;
use malcev_core::spectral;
use malcev_core::verify::{self, VerifyOptions};
use malcev_core::{builtin, load_algebra, AlgebraSpec, Exec, Octonion, Vector};
use serde_json::{json, Value};

const EXIT_INVARIANT: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "malcev", version, about = "Octonionic Malcev algebra toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Builtin algebra name or path to a JSON algebra file.
    #[arg(long, global = true, default_value = "octonion")]
    algebra: String,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Command-specific tolerance; must be positive.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Omit the timestamp so identical runs are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the invariant suite; exit 1 if a gated check fails.
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Re-read a verify artifact instead of computing.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Spectrum of ad(x).
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Moufang flow t -> exp(t x) p0 on the unit octonions.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0,0,0,0,0")]
        p0: String,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Left)]
        convention: ConventionArg,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Operator norm of the defect S(x,y) over basis pairs and random samples.
    Defect {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Truncated BCH error for (s x, s y) at each scale s.
    Bch {
        #[arg(long, default_value_t = bch::MAX_ORDER)]
        order: usize,
        /// Comma-separated scales.
        #[arg(long, default_value = "0.05")]
        scales: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0,0,0,0")]
        x: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,1,0,0,0,0")]
        y: String,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Laplacian eigenvalues and multiplicities on the 7-sphere.
    Laplacian {
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        #[arg(long)]
        check: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Left,
    Right,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Left => Convention::Left,
            ConventionArg::Right => Convention::Right,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<malcev_core::Error> for Failure {
    fn from(e: malcev_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

struct Outcome {
    artifact: String,
    passed: bool,
}

impl Outcome {
    fn ok(artifact: String) -> Self {
        Outcome { artifact, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.global, &out.artifact) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: gated invariant failed");
                ExitCode::from(EXIT_INVARIANT)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}

fn emit(g: &Global, artifact: &str) -> std::io::Result<()> {
    match &g.output {
        Some(p) => fs::write(p, artifact),
        None => {
            print!("{artifact}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Verify { check: Some(p), .. } => check_json(p, &["algebra", "checks", "classification", "passed"]),
        Command::Spectrum { check: Some(p), .. } => {
            check_json(p, &["eigenvalues", "purely_imaginary", "generator_norm"])
        }
        Command::Orbit { check: Some(p), .. } => check_orbit(p),
        Command::Defect { check: Some(p), .. } => check_json(p, &["basis_sup", "sampled_sup", "samples"]),
        Command::Bch { check: Some(p), .. } => check_bch(p),
        Command::Laplacian { check: Some(p), .. } => check_laplacian(p),
        Command::Verify { samples, check: None } => cmd_verify(g, *samples),
        Command::Spectrum { x, check: None } => cmd_spectrum(g, x.as_deref()),
        Command::Orbit { x, p0, t_max, steps, convention, check: None } => {
            cmd_orbit(g, x.as_deref(), p0, *t_max, *steps, (*convention).into())
        }
        Command::Defect { samples, check: None } => cmd_defect(g, *samples),
        Command::Bch { order, scales, x, y, b, k, check: None } => cmd_bch(g, *order, scales, x, y, *b, *k),
        Command::Laplacian { k_max, check: None } => cmd_laplacian(g, *k_max),
    }
}

fn resolve_algebra(name: &str) -> Result<AlgebraSpec, Failure> {
    if Path::new(name).is_file() {
        Ok(load_algebra(name)?)
    } else {
        Ok(builtin(name)?)
    }
}

fn require_octonion(alg: &AlgebraSpec, cmd: &str) -> Result<(), Failure> {
    if alg.is_octonion() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("`{cmd}` requires the octonion algebra, got `{}`", alg.name())))
    }
}

fn parse_list(spec: &str, what: &str) -> Result<Vec<f64>, Failure> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Usage(format!("malformed {what} entry `{s}` in `{spec}`")))
        })
        .collect()
}

fn parse_vector(spec: &str, dim: usize, what: &str) -> Result<Vector, Failure> {
    let v = parse_list(spec, what)?;
    if v.len() != dim {
        return Err(Failure::Usage(format!("{what} needs {dim} coefficients, got {}", v.len())));
    }
    Ok(Vector::from_vec(v))
}

fn json_format(g: &Global, default: Format) -> Format {
    g.format.unwrap_or(default)
}

fn finish(g: &Global, mut value: Value) -> String {
    if !g.reproducible {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        if let Value::Object(m) = &mut value {
            m.insert("timestamp".into(), json!(secs));
        }
    }
    json::to_string(&value)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

fn cmd_verify(g: &Global, samples: usize) -> CmdResult {
    let alg = resolve_algebra(&g.algebra)?;
    let opts = VerifyOptions { seed: g.seed, tol: g.tol.unwrap_or(1e-12), samples, exec: Exec::Parallel };
    let report = verify::run(&alg, &opts);
    let artifact = match json_format(g, Format::Json) {
        Format::Json => finish(g, to_value(&report)),
        Format::Csv => {
            let mut s = String::from("name,gated,passed,value,threshold\n");
            for c in &report.checks {
                s += &format!("{},{},{},{:.16e},{:.16e}\n", c.name, c.gated, c.passed, c.value, c.threshold);
            }
            s
        }
    };
    Ok(Outcome { artifact, passed: report.passed })
}

fn cmd_spectrum(g: &Global, x: Option<&str>) -> CmdResult {
    let alg = resolve_algebra(&g.algebra)?;
    let x = match x {
        Some(s) => parse_vector(s, alg.dim(), "--x")?,
        None => alg.basis(0),
    };
    let rep = spectral::spectrum_ad(&alg, &x, g.tol)?;
    let artifact = match json_format(g, Format::Json) {
        Format::Json => finish(
            g,
            json!({
                "algebra": alg.name(),
                "x": x.iter().collect::<Vec<_>>(),
                "generator_norm": rep.generator_norm,
                "tol": rep.tol_used,
                "purely_imaginary": rep.purely_imaginary,
                "eigenvalues": to_value(&rep.eigenvalues),
            }),
        ),
        Format::Csv => {
            let mut s = String::from("re,im,mult\n");
            for e in &rep.eigenvalues {
                s += &format!("{:.16e},{:.16e},{}\n", e.re, e.im, e.mult);
            }
            s
        }
    };
    Ok(Outcome::ok(artifact))
}

fn cmd_orbit(g: &Global, x: Option<&str>, p0: &str, t_max: f64, steps: usize, conv: Convention) -> CmdResult {
    let alg = resolve_algebra(&g.algebra)?;
    require_octonion(&alg, "orbit")?;
    let xv = match x {
        Some(s) => parse_vector(s, 7, "--x")?,
        None => alg.basis(0),
    };
    let pv = parse_vector(p0, 8, "--p0")?;
    let x = moufang::imaginary_from_vector(&xv)?;
    let p = Octonion(std::array::from_fn(|i| pv[i]));
    let grid = spectral::TimeGrid::new(t_max, steps)?;
    let times: Vec<f64> = (0..steps).map(|i| grid.time(i)).collect();
    let traj = moufang::flow_trajectory(&x, &p, &times, conv, Exec::Parallel)?;
    let artifact = match json_format(g, Format::Csv) {
        Format::Csv => traj.to_csv(),
        Format::Json => {
            let eps = g.tol.unwrap_or(1e-6);
            let pts = traj.points();
            let ret = (pts[pts.len() - 1] - pts[0]).norm();
            let closure = moufang::orbit_closure_dim(&traj, eps.max(grid.dt * xv.norm()));
            let period = std::f64::consts::TAU / xv.norm();
            finish(
                g,
                json!({
                    "x": xv.iter().collect::<Vec<_>>(),
                    "p0": pv.iter().collect::<Vec<_>>(),
                    "t_max": t_max,
                    "steps": steps,
                    "period": if xv.norm() > 0.0 { json!(period) } else { Value::Null },
                    "return_distance": ret,
                    "closure_dim": closure.ok(),
                }),
            )
        }
    };
    Ok(Outcome::ok(artifact))
}

fn cmd_defect(g: &Global, samples: usize) -> CmdResult {
    let alg = resolve_algebra(&g.algebra)?;
    let dn = alg.defect_norm(samples, g.seed, Exec::Parallel)?;
    let artifact = match json_format(g, Format::Json) {
        Format::Json => finish(
            g,
            json!({
                "algebra": alg.name(),
                "samples": samples,
                "seed": g.seed,
                "basis_sup": dn.basis_sup,
                "sampled_sup": dn.sampled_sup,
                "bracket_bound_basis": alg.bracket_bound_basis(),
            }),
        ),
        Format::Csv => format!("basis_sup,sampled_sup\n{:.16e},{:.16e}\n", dn.basis_sup, dn.sampled_sup),
    };
    Ok(Outcome::ok(artifact))
}

fn cmd_bch(g: &Global, order: usize, scales: &str, x: &str, y: &str, b: f64, k: f64) -> CmdResult {
    let alg = resolve_algebra(&g.algebra)?;
    require_octonion(&alg, "bch")?;
    let cfg = BchConfig::new(order, b, k)?;
    let scales = parse_list(scales, "--scales")?;
    let x = parse_vector(x, 7, "--x")?;
    let y = parse_vector(y, 7, "--y")?;
    let reports = scales.iter().map(|&s| bch::bch_report(&cfg, &(&x * s), &(&y * s))).collect::<Result<Vec<_>, _>>()?;
    let artifact = match json_format(g, Format::Json) {
        Format::Json => {
            let items: Vec<Value> = reports.iter().map(to_value).collect();
            match items.as_slice() {
                [one] => json::to_string(one),
                _ => json::to_string(&Value::Array(items)),
            }
        }
        Format::Csv => {
            let mut s = String::from("scale,order,error,radius_ok,bound\n");
            for (sc, r) in scales.iter().zip(&reports) {
                s += &format!("{:.16e},{},{:.16e},{},{:.16e}\n", sc, r.order, r.error, r.radius_ok, r.bound);
            }
            s
        }
    };
    Ok(Outcome::ok(artifact))
}

fn cmd_laplacian(g: &Global, k_max: i64) -> CmdResult {
    let table = harmonics::laplacian_table(k_max, Exec::Parallel)?;
    let artifact = match json_format(g, Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => finish(g, to_value(&table)),
    };
    Ok(Outcome::ok(artifact))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))
}

fn accepted(what: &str) -> CmdResult {
    Ok(Outcome::ok(format!("ok: {what}\n")))
}

fn check_json(path: &Path, keys: &[&str]) -> CmdResult {
    let text = read(path)?;
    if !is_json(&text) {
        return check_csv_shape(&text);
    }
    let v = parse_json(&text)?;
    for k in keys {
        if v.get(k).is_none() {
            return Err(Failure::Usage(format!("missing field `{k}`")));
        }
    }
    if v.get("passed") == Some(&Value::Bool(false)) {
        return Err(Failure::Invariant("artifact records a failed gated check".into()));
    }
    accepted("json artifact")
}

fn check_csv_shape(text: &str) -> CmdResult {
    let mut lines = text.lines();
    let width = lines.next().ok_or_else(|| Failure::Usage("empty CSV".into()))?.split(',').count();
    for (i, l) in lines.enumerate() {
        if l.split(',').count() != width {
            return Err(Failure::Usage(format!("CSV row {} has the wrong width", i + 2)));
        }
    }
    accepted("csv artifact")
}

fn check_orbit(path: &Path) -> CmdResult {
    let text = read(path)?;
    if is_json(&text) {
        return check_json(path, &["x", "p0", "return_distance", "closure_dim"]);
    }
    let traj = Trajectory::from_csv(&text)?;
    accepted(&format!("trajectory with {} samples", traj.len()))
}

fn check_bch(path: &Path) -> CmdResult {
    let text = read(path)?;
    if !is_json(&text) {
        return check_csv_shape(&text);
    }
    let v = parse_json(&text)?;
    let parse = |v: Value| serde_json::from_value::<bch::BchReport>(v).map_err(|e| Failure::Usage(e.to_string()));
    let n = match v {
        Value::Array(items) => items.into_iter().map(parse).collect::<Result<Vec<_>, _>>()?.len(),
        other => parse(other).map(|_| 1)?,
    };
    accepted(&format!("{n} bch report(s)"))
}

fn check_laplacian(path: &Path) -> CmdResult {
    let text = read(path)?;
    let table: LaplacianTable = if is_json(&text) {
        let mut v = parse_json(&text)?;
        if let Value::Object(m) = &mut v {
            m.remove("timestamp");
        }
        serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string()))?
    } else {
        LaplacianTable::from_csv(&text)?
    };
    accepted(&format!("laplacian table with {} rows", table.rows.len()))
}
