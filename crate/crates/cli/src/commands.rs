//! Subcommand bodies. Each returns a JSON record {op, inputs, result, residuals, error_bound}.

use crate::{parse, BudgetArgs, Cmd, MapArgs, ScanArgs, Usage};
use clap::{Args, Subcommand, ValueEnum};
use herman_core::arithmetic::{brjuno_partial, cf_expand, cf_expand_rational, convergents, ContinuedFraction};
use herman_core::dynamics::{
    circle_rotation_number, circular_distance, classify_point, find_param_by_tongues, find_ring_seed, find_t_circle,
    rotation_number, verify_cycle, with_t, Fate, ParamSlice, TongueConfig,
};
use herman_core::maps::{
    derivative, evaluate, siegel_lambda_fixed, solve_siegel2_b, tau_symmetry_residual, u_candidates_period3,
    u_for_period2, MapSpec,
};
use herman_core::quadlike::{verify_mandelbrot_like, QuadGrid, Status};
use herman_core::render::{encode_ppm, render_dynamical, render_parameter, FateImage, ParamSlice2D, Window};
use herman_core::{Complex64, Error, SpherePoint};
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::TAU;
use std::path::PathBuf;

pub enum Outcome {
    Done { record: Value, ok: bool },
    Failed(Value),
    Usage(String),
}

enum Fail {
    Usage(String),
    Numeric(Error),
    Io(String),
}

impl From<Usage> for Fail {
    fn from(u: Usage) -> Self {
        Fail::Usage(u.0)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Numeric(e)
    }
}

struct Report {
    result: Value,
    residuals: Value,
    error_bound: Value,
    ok: bool,
}

impl Report {
    fn ok(result: Value) -> Self {
        Report { result, residuals: Value::Null, error_bound: Value::Null, ok: true }
    }

    fn residuals(mut self, v: Value) -> Self {
        self.residuals = v;
        self
    }

    fn bound(mut self, v: f64) -> Self {
        self.error_bound = json!(v);
        self
    }

    fn passed(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// Inputs echo: the parsed arguments, plus the resolved map when there is one.
fn inputs<T: Serialize>(args: &T, map: Option<&MapArgs>) -> Value {
    let mut v = to_json(args);
    if let (Some(m), Value::Object(obj)) = (map, &mut v) {
        if let Ok(spec) = m.spec() {
            obj.insert("resolved_map".into(), to_json(&spec));
        }
    }
    v
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| c == '(' || c == ' ' || c == '{').next().unwrap_or("").to_string()
}

pub fn run(cmd: Cmd) -> (&'static str, Outcome) {
    let (op, inputs, res) = match &cmd {
        Cmd::RenderDyn(a) => ("render-dyn", inputs(a, Some(&a.map)), render_dyn(a)),
        Cmd::RenderParam(a) => ("render-param", inputs(a, None), render_param(a)),
        Cmd::Rotnum(a) => ("rotnum", inputs(a, Some(&a.map)), rotnum(a)),
        Cmd::FindSeed(a) => ("find-seed", inputs(a, Some(&a.map)), find_seed(a)),
        Cmd::SolveU(a) => ("solve-u", inputs(a, None), solve_u(a)),
        Cmd::SolveSiegel2(a) => ("solve-siegel2", inputs(a, None), solve_siegel2(a)),
        Cmd::SiegelLambda(a) => ("siegel-lambda", inputs(a, None), siegel_lambda(a)),
        Cmd::VerifyCycle(a) => ("verify-cycle", inputs(a, Some(&a.map)), verify_cycle_cmd(a)),
        Cmd::SymmetryCheck(a) => ("symmetry-check", inputs(a, None), symmetry_check(a)),
        Cmd::VerifyQuadlike(a) => ("verify-quadlike", inputs(a, None), verify_quadlike(a)),
        Cmd::FindParam(a) => ("find-param", inputs(a, None), find_param(a)),
        Cmd::Cf(a) => ("cf", inputs(a, None), cf(a)),
    };
    let outcome = match res {
        Ok(r) => Outcome::Done {
            record: json!({
                "op": op,
                "inputs": inputs,
                "result": r.result,
                "residuals": r.residuals,
                "error_bound": r.error_bound,
            }),
            ok: r.ok,
        },
        Err(Fail::Usage(msg)) => Outcome::Usage(msg),
        Err(Fail::Numeric(e)) => Outcome::Failed(json!({
            "op": op,
            "inputs": inputs,
            "error": { "kind": error_kind(&e), "message": e.to_string() },
        })),
        Err(Fail::Io(msg)) => Outcome::Failed(json!({
            "op": op,
            "inputs": inputs,
            "error": { "kind": "Io", "message": msg },
        })),
    };
    (op, outcome)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn iterate_n(map: &MapSpec, z: SpherePoint, n: usize) -> Result<SpherePoint, Error> {
    (0..n).try_fold(z, |w, _| evaluate(map, w))
}

fn modulus(z: SpherePoint) -> f64 {
    z.finite().map_or(f64::INFINITY, |w| w.norm())
}

// ---- rendering ----

#[derive(Args, Debug, Serialize)]
pub struct RenderDynArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Ring period p; rings are detected for f^p.
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value = "-2,2,-1.5,1.5", value_parser = parse::window, allow_hyphen_values = true)]
    window: Window,
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(1..=8192))]
    width: u32,
    #[arg(long, default_value_t = 240, value_parser = clap::value_parser!(u32).range(1..=8192))]
    height: u32,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: PathBuf,
}

fn class_counts(img: &FateImage) -> Value {
    let mut counts = [0usize; 5];
    for f in &img.fates {
        let k = match f {
            Fate::RotationDomain { entry_steps: 0 } => 0,
            Fate::RotationDomain { .. } => 1,
            Fate::AttractedToCycle { .. } => 2,
            Fate::EscapeToInfinity => 3,
            Fate::Undecided => 4,
        };
        counts[k] += 1;
    }
    json!({
        "ring": counts[0],
        "ring_preimage": counts[1],
        "attracted": counts[2],
        "escape": counts[3],
        "undecided": counts[4],
    })
}

fn write_image(img: &FateImage, out: &PathBuf) -> Result<Report, Fail> {
    let bytes = encode_ppm(img);
    std::fs::write(out, &bytes).map_err(|e| Fail::Io(format!("{}: {e}", out.display())))?;
    Ok(Report::ok(json!({
        "out": out,
        "bytes": bytes.len(),
        "width": img.width,
        "height": img.height,
        "counts": class_counts(img),
    })))
}

fn render_dyn(a: &RenderDynArgs) -> Result<Report, Fail> {
    let map = a.map.spec()?;
    let img = render_dynamical(&map, a.window, a.width as usize, a.height as usize, &a.budget.budget(a.p));
    write_image(&img, &a.out)
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Slice2D {
    /// λ-plane of λz²e^z, orbit of −2.
    EntireZ2Exp,
    /// b-plane of the cubic family with a fixed and u from the period-2 condition.
    CubicRatB,
}

#[derive(Args, Debug, Serialize)]
pub struct RenderParamArgs {
    #[arg(long, value_enum)]
    slice: Slice2D,
    /// Fixed a for the cubic b-plane.
    #[arg(long, default_value = "4", value_parser = parse::complex, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, default_value = "-21,3,-6,6", value_parser = parse::window, allow_hyphen_values = true)]
    window: Window,
    #[arg(long, default_value_t = 480, value_parser = clap::value_parser!(u32).range(1..=8192))]
    width: u32,
    #[arg(long, default_value_t = 240, value_parser = clap::value_parser!(u32).range(1..=8192))]
    height: u32,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: PathBuf,
}

fn render_param(a: &RenderParamArgs) -> Result<Report, Fail> {
    let slice = match a.slice {
        Slice2D::EntireZ2Exp => ParamSlice2D::EntireZ2Exp,
        Slice2D::CubicRatB => ParamSlice2D::CubicRatB { a: a.a },
    };
    let img = render_parameter(&slice, a.window, a.width as usize, a.height as usize, &a.budget.budget(1));
    write_image(&img, &a.out)
}

// ---- rings and rotation numbers ----

#[derive(Args, Debug, Serialize)]
pub struct RotnumArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    /// Ring point; searched along the ray when absent.
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    seed: Option<SpherePoint>,
    #[arg(long, default_value = "0", value_parser = parse::complex, allow_hyphen_values = true)]
    center: Complex64,
    /// Steps of f^p.
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(4..))]
    n: u64,
    #[command(flatten)]
    scan: ScanArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn rotnum(a: &RotnumArgs) -> Result<Report, Fail> {
    let map = a.map.spec()?;
    let p = a.p as usize;
    let seed = match a.seed {
        Some(s) => s,
        None => find_ring_seed(&map, p, &a.scan.scan()?, &a.budget.budget(p))?,
    };
    let rep = rotation_number(&map, p, seed, a.center, a.n as usize)?;
    Ok(Report::ok(json!({
        "seed": seed,
        "rotation_number": rep.winding.value,
        "report": rep,
    }))
    .residuals(json!({ "estimator_discrepancy": rep.discrepancy }))
    .bound(rep.winding.error_bound))
}

#[derive(Args, Debug, Serialize)]
pub struct FindSeedArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[command(flatten)]
    scan: ScanArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn find_seed(a: &FindSeedArgs) -> Result<Report, Fail> {
    let map = a.map.spec()?;
    let budget = a.budget.budget(a.p as usize);
    let seed = find_ring_seed(&map, a.p as usize, &a.scan.scan()?, &budget)?;
    Ok(Report::ok(json!({
        "seed": seed,
        "modulus": modulus(seed),
        "fate": classify_point(&map, seed, &budget),
    })))
}

// ---- solvers ----

#[derive(Args, Debug, Serialize)]
pub struct SolveUArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    p: u8,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    b: Complex64,
}

fn solve_u(a: &SolveUArgs) -> Result<Report, Fail> {
    let zero = SpherePoint::Finite(Complex64::new(0.0, 0.0));
    if a.p == 2 {
        let u = u_for_period2(a.a, a.b)?;
        let map = MapSpec::CubicRat { a: a.a, b: a.b, u };
        let residual = modulus(iterate_n(&map, zero, 2)?);
        return Ok(Report::ok(json!({ "u": u })).residuals(json!({ "f2_at_0": residual })));
    }
    let roots = u_candidates_period3(a.a, a.b)?;
    let mut worst = 0.0f64;
    let candidates: Vec<Value> = roots
        .iter()
        .map(|&u| {
            let map = MapSpec::CubicRat { a: a.a, b: a.b, u };
            let r = iterate_n(&map, zero, 3).map_or(f64::INFINITY, modulus);
            worst = worst.max(r);
            json!({ "u": u, "f3_at_0": r })
        })
        .collect();
    Ok(Report::ok(json!({ "candidates": candidates })).residuals(json!({ "max_f3_at_0": worst })))
}

fn check_theta(theta: f64) -> Result<(), Fail> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Fail::Usage(format!("--theta must lie in (0, 1), got {theta}")))
    }
}

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

#[derive(Args, Debug, Serialize)]
pub struct Siegel2Args {
    #[arg(long, value_parser = parse::real)]
    theta: f64,
    /// Newton starting point.
    #[arg(long, default_value = "1+1i", value_parser = parse::complex, allow_hyphen_values = true)]
    seed: Complex64,
}

fn solve_siegel2(a: &Siegel2Args) -> Result<Report, Fail> {
    check_theta(a.theta)?;
    let b = solve_siegel2_b(a.theta, a.seed)?;
    let target = cis(a.theta);
    let equation = ((b + 1.0) * (-b).exp() - target).norm();
    let map = MapSpec::EntireSiegel2 { b };
    let product = derivative(&map, Complex64::new(0.0, 0.0))? * derivative(&map, b)?;
    Ok(Report::ok(json!({ "b": b, "multiplier_product": product })).residuals(json!({
        "equation": equation,
        "multiplier_product": (product - target).norm(),
    })))
}

#[derive(Args, Debug, Serialize)]
pub struct SiegelLambdaArgs {
    #[arg(long, value_parser = parse::real)]
    theta: f64,
}

fn siegel_lambda(a: &SiegelLambdaArgs) -> Result<Report, Fail> {
    check_theta(a.theta)?;
    let (lambda, z) = siegel_lambda_fixed(a.theta);
    let map = MapSpec::EntireZ2Exp { lambda };
    let fz = evaluate(&map, SpherePoint::Finite(z))?;
    let fixed = fz.finite().map_or(f64::INFINITY, |w| (w - z).norm());
    let m = derivative(&map, z)?;
    let arg_err = circular_distance(m.arg() / TAU, a.theta) * TAU;
    Ok(Report::ok(json!({ "lambda": lambda, "z_fixed": z, "multiplier": m })).residuals(json!({
        "fixed_point": fixed,
        "multiplier_modulus": (m.norm() - 1.0).abs(),
        "multiplier_argument": arg_err,
    })))
}

// ---- verification ----

#[derive(Args, Debug, Serialize)]
pub struct VerifyCycleArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
    z0: SpherePoint,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[arg(long, default_value_t = 1e-10, value_parser = parse::positive)]
    tol: f64,
}

fn verify_cycle_cmd(a: &VerifyCycleArgs) -> Result<Report, Fail> {
    let map = a.map.spec()?;
    let rep = verify_cycle(&map, a.z0, a.p as usize, a.tol)?;
    let ok = rep.within_tol;
    Ok(Report::ok(json!({ "status": status(ok), "cycle": rep }))
        .residuals(json!({ "chordal": rep.residual }))
        .passed(ok))
}

#[derive(Args, Debug, Serialize)]
pub struct SymmetryArgs {
    #[arg(long, default_value = "1/40", value_parser = parse::real)]
    r: f64,
    #[arg(long, default_value_t = 0.34172383, value_parser = parse::real)]
    t: f64,
    /// Checks both variants when absent.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    b_exponent: Option<u8>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1e-10, value_parser = parse::positive)]
    tol: f64,
}

/// Low-discrepancy points with |z| spread log-uniformly over [1e−2, 1e2].
fn symmetry_samples(n: usize) -> Vec<SpherePoint> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let s2 = 2f64.sqrt() - 1.0;
    (1..=n)
        .map(|k| {
            let u = (k as f64 * phi).fract();
            let v = (k as f64 * s2).fract();
            SpherePoint::Finite(Complex64::from_polar(10f64.powf(-2.0 + 4.0 * u), TAU * v))
        })
        .collect()
}

fn symmetry_check(a: &SymmetryArgs) -> Result<Report, Fail> {
    if !(a.r > 0.0 && a.r < 1.0) {
        return Err(Fail::Usage("--r must lie in (0, 1)".into()));
    }
    if let Some(e) = a.b_exponent {
        if e != 2 && e != 4 {
            return Err(Fail::Usage("--b-exponent must be 2 or 4".into()));
        }
    }
    let exps: Vec<u8> = a.b_exponent.map_or(vec![2, 4], |e| vec![e]);
    let pts = symmetry_samples(a.samples);
    let mut ok = true;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for e in exps {
        let map = MapSpec::QuarticBlaschke { r: a.r, t: a.t, b_exponent: e };
        let res = tau_symmetry_residual(&map, &pts)?;
        let pass = res < a.tol;
        ok &= pass;
        worst = worst.max(res);
        rows.push(json!({ "b_exponent": e, "residual": res, "status": status(pass) }));
    }
    Ok(Report::ok(json!({ "status": status(ok), "variants": rows }))
        .residuals(json!({ "max_chordal": worst }))
        .passed(ok))
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GridPreset {
    /// 10³ interior λ, 10⁴ boundary samples, 300×300 z-box.
    Default,
    /// 100 interior λ, 10³ boundary samples, 60×60 z-box.
    Small,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum RecordFilter {
    Failures,
    All,
    None,
}

#[derive(Args, Debug, Serialize)]
pub struct QuadArgs {
    #[arg(long, value_enum, default_value_t = GridPreset::Default)]
    grid: GridPreset,
    #[arg(long)]
    interior: Option<usize>,
    #[arg(long)]
    boundary: Option<usize>,
    #[arg(long)]
    zbox: Option<usize>,
    #[arg(long)]
    box_lambdas: Option<usize>,
    /// k in v_λ = kλ/e²; anything but 4 deliberately corrupts the critical value.
    #[arg(long, value_parser = parse::positive)]
    critical_value_scale: Option<f64>,
    /// Which per-sample records to include.
    #[arg(long, value_enum, default_value_t = RecordFilter::Failures)]
    records: RecordFilter,
}

fn verify_quadlike(a: &QuadArgs) -> Result<Report, Fail> {
    let mut grid = match a.grid {
        GridPreset::Default => QuadGrid::default(),
        GridPreset::Small => QuadGrid { interior: 100, boundary: 1000, zbox: 60, box_lambdas: 8, ..QuadGrid::default() },
    };
    grid.interior = a.interior.unwrap_or(grid.interior);
    grid.boundary = a.boundary.unwrap_or(grid.boundary);
    grid.zbox = a.zbox.unwrap_or(grid.zbox);
    grid.box_lambdas = a.box_lambdas.unwrap_or(grid.box_lambdas);
    grid.critical_value_scale = a.critical_value_scale.unwrap_or(grid.critical_value_scale);
    if grid.interior == 0 || grid.boundary < 8 || grid.zbox == 0 {
        return Err(Fail::Usage("grid needs interior ≥ 1, boundary ≥ 8 and zbox ≥ 1".into()));
    }
    let rep = verify_mandelbrot_like(&grid);
    let ok = rep.all_pass();
    let records: Vec<_> = match a.records {
        RecordFilter::All => rep.records.iter().collect(),
        RecordFilter::Failures => rep.records.iter().filter(|r| r.status == Status::Fail).collect(),
        RecordFilter::None => Vec::new(),
    };
    let margins: Value = rep.summary.iter().map(|s| (s.check_id.clone(), json!(s.min_margin))).collect();
    Ok(Report::ok(json!({
        "status": status(ok),
        "grid": rep.grid,
        "summary": rep.summary,
        "winding": rep.winding,
        "winding_doubled": rep.winding_doubled,
        "gamma1_modulus": rep.gamma1_modulus,
        "gamma2_modulus": rep.gamma2_modulus,
        "notes": rep.notes,
        "records": records,
    }))
    .residuals(json!({ "min_margins": margins }))
    .passed(ok))
}

// ---- parameter search ----

#[derive(Args, Debug, Serialize)]
pub struct FindParamArgs {
    #[command(subcommand)]
    method: Method,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
enum Method {
    /// Bisection on the rotation number of a circle family in t.
    Circle(CircleArgs),
    /// Nesting tongues of the convergents of θ along a one-parameter slice.
    Tongues(TongueArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CircleFamily {
    CubicBlaschke,
    Arnold,
}

#[derive(Args, Debug, Serialize)]
pub struct CircleArgs {
    #[arg(long, value_enum)]
    family: CircleFamily,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse::real)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, value_parser = parse::real, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse::real, allow_hyphen_values = true)]
    t1: f64,
    /// Lift iterations per rotation-number evaluation.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SliceKind {
    QuarticT,
    CubicRatImB,
    ArnoldT,
    CubicBlaschkeT,
}

#[derive(Args, Debug, Serialize)]
pub struct TongueArgs {
    #[arg(long, value_enum)]
    slice: SliceKind,
    #[arg(long, default_value = "1/40", value_parser = parse::real)]
    r: f64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
    b_exponent: u8,
    #[arg(long, default_value = "4", value_parser = parse::complex, allow_hyphen_values = true)]
    a: Complex64,
    /// Fixed Re b for the cubic Im b slice.
    #[arg(long, default_value_t = 0.0, value_parser = parse::real, allow_hyphen_values = true)]
    re_b: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    s0: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    s1: f64,
    #[arg(long, value_parser = parse::real)]
    theta: f64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=60))]
    depth: u64,
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..))]
    initial_samples: u64,
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..))]
    max_samples: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse::positive)]
    cycle_tol: f64,
}

fn find_param(a: &FindParamArgs) -> Result<Report, Fail> {
    match &a.method {
        Method::Circle(c) => find_param_circle(c),
        Method::Tongues(t) => find_param_tongues(t),
    }
}

fn find_param_circle(c: &CircleArgs) -> Result<Report, Fail> {
    check_theta(c.theta)?;
    if !(c.t1 > c.t0) {
        return Err(Fail::Usage("bracket needs t1 > t0".into()));
    }
    let map = match c.family {
        CircleFamily::CubicBlaschke => MapSpec::CubicBlaschke { a: c.a, t: c.t0 },
        CircleFamily::Arnold => {
            if c.a.im != 0.0 {
                return Err(Fail::Usage("--a must be real for the Arnold family".into()));
            }
            MapSpec::Arnold { a: c.a.re, t: c.t0 }
        }
    };
    let n = c.n as usize;
    let t = find_t_circle(&map, c.theta, (c.t0, c.t1), n)?;
    let rho = circle_rotation_number(&with_t(&map, t), n)?;
    Ok(Report::ok(json!({ "t": t, "rotation_number": rho.value }))
        .residuals(json!({ "rotation": circular_distance(rho.value, c.theta) }))
        .bound(rho.error_bound))
}

fn find_param_tongues(t: &TongueArgs) -> Result<Report, Fail> {
    check_theta(t.theta)?;
    if !(t.s1 > t.s0) {
        return Err(Fail::Usage("slice needs s1 > s0".into()));
    }
    let slice = match t.slice {
        SliceKind::QuarticT => {
            if !(t.r > 0.0 && t.r < 1.0) || (t.b_exponent != 2 && t.b_exponent != 4) {
                return Err(Fail::Usage("quartic slice needs r in (0, 1) and b-exponent 2 or 4".into()));
            }
            ParamSlice::QuarticT { r: t.r, b_exponent: t.b_exponent, t0: t.s0, t1: t.s1 }
        }
        SliceKind::CubicRatImB => ParamSlice::CubicRatImB { a: t.a, re_b: t.re_b, im0: t.s0, im1: t.s1 },
        SliceKind::ArnoldT => {
            if t.a.im != 0.0 {
                return Err(Fail::Usage("--a must be real for the Arnold family".into()));
            }
            ParamSlice::ArnoldT { a: t.a.re, t0: t.s0, t1: t.s1 }
        }
        SliceKind::CubicBlaschkeT => ParamSlice::CubicBlaschkeT { a: t.a, t0: t.s0, t1: t.s1 },
    };
    let cfg = TongueConfig {
        transient: t.transient,
        initial_samples: t.initial_samples as usize,
        max_samples: t.max_samples as usize,
        cycle_tol: t.cycle_tol,
    };
    let rep = find_param_by_tongues(&slice, t.theta, t.depth as usize, &cfg)?;
    let half_gap = rep.levels.last().map_or(f64::NAN, |l| 0.5 * (l.gap.1 - l.gap.0));
    Ok(Report::ok(json!({ "value": rep.value, "report": rep })).bound(half_gap))
}

// ---- arithmetic ----

#[derive(Args, Debug, Serialize)]
pub struct CfArgs {
    /// A real in (0, 1), `golden`, or an exact fraction p/q.
    #[arg(long)]
    x: String,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=90))]
    n: u64,
    /// Number of terms of the partial Brjuno sum.
    #[arg(long)]
    brjuno: Option<usize>,
}

fn exact_fraction(s: &str) -> Option<(u64, u64)> {
    let (p, q) = s.split_once('/')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn cf(a: &CfArgs) -> Result<Report, Fail> {
    let n = a.n as usize;
    let (expansion, x): (ContinuedFraction, f64) = match exact_fraction(&a.x) {
        Some((p, q)) => {
            if q == 0 || p == 0 || p >= q {
                return Err(Fail::Usage(format!("fraction must lie in (0, 1), got {}", a.x)));
            }
            (cf_expand_rational(p, q, n), p as f64 / q as f64)
        }
        None => {
            let x = parse::real(&a.x).map_err(Fail::Usage)?;
            if !(x > 0.0 && x < 1.0) {
                return Err(Fail::Usage(format!("--x must lie in (0, 1), got {x}")));
            }
            (cf_expand(x, n)?, x)
        }
    };
    let conv: Vec<Value> = convergents(&expansion).pairs.iter().map(|&(p, q)| json!([big(p), big(q)])).collect();
    let brjuno = match a.brjuno {
        Some(k) => Some(brjuno_partial(x, k)?),
        None => None,
    };
    Ok(Report::ok(json!({
        "partial_quotients": expansion.partial_quotients,
        "terminated": expansion.terminated,
        "convergents": conv,
        "brjuno_partial": brjuno,
    })))
}
