//! `localizer` — compute index pairings of finite-range lattice operators
//! from the spectrum of their spectral localizer.
//!
//! Exit codes: 0 success (verified, or `--allow-unverified`), 1 runtime
//! failure, 2 argument or model-file error, 3 operator not invertible,
//! 4 localizer conditions violated, 5 odd signature (no index defined).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};
use spectral_localizer::clifford::{build_clifford, CliffordRep};
use spectral_localizer::lattice::{build_ball, LatticeBall};
use spectral_localizer::linalg::hermitian_eigenvalues;
use spectral_localizer::localizer::{build_localizer, gap_check, half_signature_lean};
use spectral_localizer::models;
use spectral_localizer::operators::{
    condition_report, BoundMode, Coefficient, ConditionReport, HoppingOperator, HoppingTerm,
};
use spectral_localizer::oracle::{
    eta_partial_sum, odd_chern_d3, spectral_flow, winding_number_d1, BlochSymbol,
};
use spectral_localizer::signature::{half_signature, matrix_signature, InertiaMethod};
use spectral_localizer::symmetry::{
    build_r, classify, verify_symmetry, z2_invariant, Branch, InvariantKind, RealSymmetryData,
};
use spectral_localizer::{CMatrix, Error, RMatrix};

#[derive(Parser)]
#[command(name = "localizer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Half-signature of the spectral localizer, with the (κ, ρ) certificate.
    Invariant {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also diagonalize and check the spectral gap bound g/√2.
        #[arg(long)]
        gap_check: bool,
        /// Report the result even when the certificate fails.
        #[arg(long)]
        allow_unverified: bool,
    },
    /// Half-signature over a list of ρ or κ values (plateau scans).
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Fixed κ (or `auto`).
        #[arg(long, default_value = "auto")]
        kappa: String,
        /// Comma-separated ρ values to sweep.
        #[arg(long, value_delimiter = ',')]
        rho_list: Vec<f64>,
        /// Comma-separated κ values to sweep (needs a fixed --rho).
        #[arg(long, value_delimiter = ',')]
        kappa_list: Vec<f64>,
        /// Fixed ρ (or `auto`).
        #[arg(long, default_value = "auto")]
        rho: String,
    },
    /// Momentum-space oracle: winding number (d = 1) or odd Chern (d = 3).
    Oracle {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Per-axis k-grid resolution.
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Spectral flow of the localizer along the path λ ↦ λ·A.
    Flow {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Coarse λ-grid steps before bisection.
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Crossing-location tolerance.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Eta partial sum Σ sign(λ)|λ|^{-s} over the localizer spectrum.
    Eta {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Exponent of the eta sum.
        #[arg(long, default_value_t = 0.0)]
        s: f64,
    },
    /// Real symmetry class of the pairing and the class-appropriate invariant.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Residual tolerance for the symmetry relation.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = BranchArg::First)]
        branch: BranchArg,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Built-in model: shift, defect, ssh, chiral3d, diii.
    #[arg(long, conflicts_with = "model_file")]
    model: Option<String>,
    /// JSON model definition (see README for the schema).
    #[arg(long)]
    model_file: Option<PathBuf>,
    /// Model parameter, repeatable: --param m=0.5 --param t=1.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Args)]
struct WindowArgs {
    /// Localizer scale κ, or `auto` for the certified maximum.
    #[arg(long, default_value = "auto")]
    kappa: String,
    /// Truncation radius ρ, or `auto` for the certified minimum.
    #[arg(long, default_value = "auto")]
    rho: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum BranchArg {
    First,
    Second,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NotInvertible => 3,
            Error::OddSignature(_) => 5,
            Error::InvalidModel(_) | Error::InvalidKappa(_) | Error::InvalidRadius(_) => 2,
            _ => 1,
        };
        Failure::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Model {
    name: String,
    op: HoppingOperator,
    symmetry: Option<RealSymmetryData>,
}

fn parse_params(raw: &[String]) -> Result<HashMap<String, String>, Failure> {
    let mut map = HashMap::new();
    for entry in raw {
        let (k, v) = entry
            .split_once('=')
            .ok_or_else(|| Failure::new(2, format!("--param `{entry}` is not KEY=VALUE")))?;
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

fn param_f64(p: &HashMap<String, String>, key: &str, default: Option<f64>) -> Result<f64, Failure> {
    match p.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| Failure::new(2, format!("parameter `{key}={v}` is not a number"))),
        None => default.ok_or_else(|| Failure::new(2, format!("missing required --param {key}=…"))),
    }
}

fn param_i64(p: &HashMap<String, String>, key: &str, default: i64) -> Result<i64, Failure> {
    match p.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| Failure::new(2, format!("parameter `{key}={v}` is not an integer"))),
        None => Ok(default),
    }
}

fn build_model(args: &ModelArgs) -> Result<Model, Failure> {
    if let Some(path) = &args.model_file {
        return load_model_file(path);
    }
    let name = args
        .model
        .as_deref()
        .ok_or_else(|| Failure::new(2, "one of --model or --model-file is required"))?;
    let p = parse_params(&args.params)?;
    let (op, symmetry) = match name {
        "shift" => (models::shift_model(param_i64(&p, "n", 1)?), None),
        "defect" => (
            models::defect_shift_model(param_f64(&p, "rho", Some(20.0))?)?,
            None,
        ),
        "ssh" => (
            models::ssh_model(
                param_f64(&p, "m", None)?,
                param_f64(&p, "t", Some(1.0))?,
                param_f64(&p, "w", Some(0.0))?,
                param_i64(&p, "seed", 0)? as u64,
            ),
            None,
        ),
        "chiral3d" => (models::chiral_3d_model(param_f64(&p, "m", None)?)?, None),
        "diii" => {
            let (op, data) =
                models::diii_chain_model(param_f64(&p, "m", None)?, param_f64(&p, "t", Some(1.0))?);
            (op, Some(data))
        }
        other => return Err(Failure::new(2, format!("unknown model `{other}`"))),
    };
    Ok(Model { name: name.to_string(), op, symmetry })
}

#[derive(Deserialize)]
struct ModelFile {
    d: usize,
    fiber_dim: usize,
    hoppings: Vec<HoppingFile>,
    #[serde(default)]
    symmetry: Option<SymmetryFile>,
}

#[derive(Deserialize)]
struct HoppingFile {
    r: Vec<i64>,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct SymmetryFile {
    s: Vec<Vec<f64>>,
    sign_a: i8,
    sign_prime_a: i8,
}

fn dense(re: &[Vec<f64>], im: Option<&Vec<Vec<f64>>>, n: usize) -> Result<CMatrix, Failure> {
    let bad = || Failure::new(2, format!("hopping coefficient is not {n}x{n}"));
    if re.len() != n || re.iter().any(|row| row.len() != n) {
        return Err(bad());
    }
    if let Some(im) = im {
        if im.len() != n || im.iter().any(|row| row.len() != n) {
            return Err(bad());
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        Complex64::new(re[i][j], im.map_or(0.0, |m| m[i][j]))
    }))
}

fn load_model_file(path: &PathBuf) -> Result<Model, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    let file: ModelFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    let mut terms = Vec::new();
    for h in &file.hoppings {
        if h.r.len() != file.d {
            return Err(Failure::new(2, "hopping displacement length must equal d"));
        }
        terms.push(HoppingTerm {
            displacement: h.r.clone(),
            coeff: Coefficient::Const(dense(&h.re, h.im.as_ref(), file.fiber_dim)?),
        });
    }
    let op = HoppingOperator::new(file.d, file.fiber_dim, terms)?;
    let symmetry = match &file.symmetry {
        Some(sym) => {
            let n = file.fiber_dim;
            if sym.s.len() != n || sym.s.iter().any(|row| row.len() != n) {
                return Err(Failure::new(2, format!("symmetry.s is not {n}x{n}")));
            }
            Some(RealSymmetryData {
                s_fiber: RMatrix::from_fn(n, n, |i, j| sym.s[i][j]),
                sign_a: sym.sign_a,
                sign_prime_a: sym.sign_prime_a,
            })
        }
        None => None,
    };
    Ok(Model {
        name: path.display().to_string(),
        op,
        symmetry,
    })
}

/// Resolve `auto` window parameters from the certificate.
fn resolve_window(
    op: &HoppingOperator,
    rep: &CliffordRep,
    kappa: &str,
    rho: &str,
) -> Result<(f64, f64, ConditionReport), Failure> {
    let parse = |s: &str, what: &str| -> Result<Option<f64>, Failure> {
        if s == "auto" {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|_| Failure::new(2, format!("--{what} must be a number or `auto`")))
        }
    };
    let kappa_in = parse(kappa, "kappa")?;
    let rho_in = parse(rho, "rho")?;
    let probe = condition_report(op, rep, kappa_in.unwrap_or(1.0), rho_in.unwrap_or(1.0))?;
    // `auto` needs the certificate; explicit values may proceed and let the
    // caller judge the (possibly failing) report.
    if !probe.invertible && (kappa_in.is_none() || rho_in.is_none()) {
        return Err(Failure::new(3, "operator gap is zero; no certified window exists"));
    }
    let kappa = match kappa_in {
        Some(k) => k,
        None => {
            if !probe.kappa_max.is_finite() {
                return Err(Failure::new(2, "κ is unconstrained here; pass --kappa explicitly"));
            }
            probe.kappa_max
        }
    };
    let rho = match rho_in {
        Some(r) => r,
        None => (2.0 * probe.gap_g / kappa).ceil(),
    };
    let report = condition_report(op, rep, kappa, rho)?;
    Ok((kappa, rho, report))
}

fn report_fields(record: &mut Vec<(String, Value)>, report: &ConditionReport) {
    let bound = match report.bound_mode {
        BoundMode::Exact => "exact",
        BoundMode::UpperBound => "upper-bound",
    };
    record.push(("norm_a".into(), json!(report.norm_a)));
    record.push(("gap".into(), json!(report.gap_g)));
    record.push(("commutator_norm".into(), json!(report.comm_norm)));
    record.push(("kappa_max".into(), json!(report.kappa_max)));
    record.push(("rho_min".into(), json!(report.rho_min)));
    record.push(("bound_mode".into(), json!(bound)));
    record.push(("invertible".into(), json!(report.invertible)));
    record.push(("verified".into(), json!(report.verified())));
}

trait Verified {
    fn verified(&self) -> bool;
}

impl Verified for ConditionReport {
    fn verified(&self) -> bool {
        self.invertible && self.cond1_ok && self.cond2_ok
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariant { model, window, output, gap_check: do_gap, allow_unverified } => {
            let m = build_model(&model)?;
            let rep = build_clifford(m.op.d as i64)?;
            let (kappa, rho, report) = resolve_window(&m.op, &rep, &window.kappa, &window.rho)?;
            let ball = build_ball(m.op.d, rho)?;
            let sig = half_signature_lean(&m.op, &rep, &ball, kappa)?;
            let mut record = base_record(&m, kappa, rho, &ball);
            report_fields(&mut record, &report);
            record.push(("half_signature".into(), json!(sig)));
            if do_gap {
                let l = build_localizer(&m.op, &rep, &ball, kappa)?;
                let gap = gap_check(&l, report.gap_g)?;
                record.push(("min_abs_eigenvalue".into(), json!(gap.min_abs_eigenvalue)));
                record.push(("gap_bound".into(), json!(gap.bound)));
                record.push(("gap_ok".into(), json!(gap.ok)));
            }
            emit(&[record], &output)?;
            if !report.verified() && !allow_unverified {
                return Err(Failure::new(
                    4,
                    "localizer conditions not satisfied (use --allow-unverified to keep the value)",
                ));
            }
            Ok(())
        }
        Command::Sweep { model, output, kappa, rho_list, kappa_list, rho } => {
            let m = build_model(&model)?;
            let rep = build_clifford(m.op.d as i64)?;
            if rho_list.is_empty() == kappa_list.is_empty() {
                return Err(Failure::new(2, "pass exactly one of --rho-list or --kappa-list"));
            }
            let mut records = Vec::new();
            if !rho_list.is_empty() {
                let (kappa, _, _) = resolve_window(&m.op, &rep, &kappa, "1")?;
                for &r in &rho_list {
                    records.push(sweep_point(&m, &rep, kappa, r)?);
                }
            } else {
                let (_, rho, _) = resolve_window(&m.op, &rep, "1", &rho)?;
                for &k in &kappa_list {
                    records.push(sweep_point(&m, &rep, k, rho)?);
                }
            }
            emit(&records, &output)
        }
        Command::Oracle { model, output, grid } => {
            let m = build_model(&model)?;
            let symbol = BlochSymbol::new(&m.op)?;
            let mut record = vec![("model".into(), json!(m.name))];
            match m.op.d {
                1 => {
                    let w = winding_number_d1(&symbol, grid)?;
                    record.push(("oracle".into(), json!("winding")));
                    record.push(("value".into(), json!(w)));
                }
                3 => {
                    let (c, residual) = odd_chern_d3(&symbol, grid)?;
                    record.push(("oracle".into(), json!("odd-chern")));
                    record.push(("value".into(), json!(c)));
                    record.push(("residual".into(), json!(residual)));
                }
                d => return Err(Failure::new(2, format!("no momentum oracle for d = {d}"))),
            }
            emit(&[record], &output)
        }
        Command::Flow { model, window, output, steps, tol } => {
            let m = build_model(&model)?;
            let rep = build_clifford(m.op.d as i64)?;
            let (kappa, rho, _) = resolve_window(&m.op, &rep, &window.kappa, &window.rho)?;
            let ball = build_ball(m.op.d, rho)?;
            let result = spectral_flow(
                |lambda| {
                    build_localizer(
                        &m.op.scaled(Complex64::new(lambda, 0.0)),
                        &rep,
                        &ball,
                        kappa,
                    )
                },
                steps,
                tol,
            )?;
            let mut record = base_record(&m, kappa, rho, &ball);
            record.push(("flow".into(), json!(result.flow)));
            record.push((
                "crossings".into(),
                Value::Array(
                    result
                        .crossings
                        .iter()
                        .map(|c| json!({"lambda": c.lambda, "delta": c.delta}))
                        .collect(),
                ),
            ));
            emit(&[record], &output)
        }
        Command::Eta { model, window, output, s } => {
            let m = build_model(&model)?;
            let rep = build_clifford(m.op.d as i64)?;
            let (kappa, rho, _) = resolve_window(&m.op, &rep, &window.kappa, &window.rho)?;
            let ball = build_ball(m.op.d, rho)?;
            let l = build_localizer(&m.op, &rep, &ball, kappa)?;
            let eigs = hermitian_eigenvalues(&l)?;
            let eta = eta_partial_sum(&eigs, s)?;
            let mut record = base_record(&m, kappa, rho, &ball);
            record.push(("s".into(), json!(s)));
            record.push(("eta".into(), json!(eta)));
            emit(&[record], &output)
        }
        Command::Verify { model, window, output, tol, branch } => {
            let m = build_model(&model)?;
            let data = m
                .symmetry
                .as_ref()
                .ok_or_else(|| Failure::new(2, "model carries no real symmetry data"))?;
            let rep = build_clifford(m.op.d as i64)?;
            let (kappa, rho, _) = resolve_window(&m.op, &rep, &window.kappa, &window.rho)?;
            let ball = build_ball(m.op.d, rho)?;
            let l = build_localizer(&m.op, &rep, &ball, kappa)?;
            let (s_l, s_prime_l, kind) =
                classify(rep.sign_d, rep.sign_prime_d, data.sign_a, data.sign_prime_a)?;
            let r = build_r(&rep, data, ball.len())?;
            let residual = verify_symmetry(&l, &r, s_l)?;
            let mut record = base_record(&m, kappa, rho, &ball);
            record.push(("s_l".into(), json!(s_l)));
            record.push(("s_prime_l".into(), json!(s_prime_l)));
            record.push(("class".into(), json!(format!("{kind:?}"))));
            record.push(("residual".into(), json!(residual)));
            if residual > tol {
                emit(&[record], &output)?;
                return Err(Failure::new(1, format!("symmetry residual {residual} above {tol}")));
            }
            match kind {
                InvariantKind::Z | InvariantKind::TwoZ => {
                    record.push(("half_signature".into(), json!(half_signature(&l)?)));
                }
                InvariantKind::Z2 => {
                    let branches: &[(Branch, &str)] = match branch {
                        BranchArg::First => &[(Branch::First, "z2")],
                        BranchArg::Second => &[(Branch::Second, "z2")],
                        BranchArg::Both => &[(Branch::First, "z2"), (Branch::Second, "z2_second")],
                    };
                    for (b, key) in branches {
                        record.push(((*key).into(), json!(z2_invariant(&l, &r, tol, *b)?)));
                    }
                    record.push((
                        "signature".into(),
                        json!(matrix_signature(&l, InertiaMethod::Factorization)?),
                    ));
                }
                InvariantKind::Trivial => {}
            }
            emit(&[record], &output)
        }
    }
}

fn base_record(m: &Model, kappa: f64, rho: f64, ball: &LatticeBall) -> Vec<(String, Value)> {
    vec![
        ("model".into(), json!(m.name)),
        ("d".into(), json!(m.op.d)),
        ("fiber_dim".into(), json!(m.op.fiber_dim)),
        ("kappa".into(), json!(kappa)),
        ("rho".into(), json!(rho)),
        ("sites".into(), json!(ball.len())),
    ]
}

fn sweep_point(
    m: &Model,
    rep: &CliffordRep,
    kappa: f64,
    rho: f64,
) -> Result<Vec<(String, Value)>, Failure> {
    let ball = build_ball(m.op.d, rho)?;
    let sig = half_signature_lean(&m.op, rep, &ball, kappa)?;
    let report = condition_report(&m.op, rep, kappa, rho)?;
    let mut record = base_record(m, kappa, rho, &ball);
    record.push(("half_signature".into(), json!(sig)));
    record.push(("verified".into(), json!(report.verified())));
    Ok(record)
}

fn emit(records: &[Vec<(String, Value)>], output: &OutputArgs) -> Result<(), Failure> {
    let text = match output.format {
        Format::Json => {
            let objects: Vec<Value> = records
                .iter()
                .map(|r| Value::Object(r.iter().cloned().collect()))
                .collect();
            let doc = if objects.len() == 1 {
                objects.into_iter().next().unwrap()
            } else {
                Value::Array(objects)
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some(first) = records.first() {
                let headers: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
                writeln!(s, "{}", headers.join(",")).unwrap();
                for record in records {
                    let row: Vec<String> = record.iter().map(|(_, v)| csv_cell(v)).collect();
                    writeln!(s, "{}", row.join(",")).unwrap();
                }
            }
            s
        }
    };
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Floats are printed with 17 significant digits so runs are reproducible
/// bit-for-bit; everything else uses its natural form.
fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
