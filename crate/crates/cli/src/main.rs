mod commands;
mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use herman_core::dynamics::{Budget, RayScan};
use herman_core::maps::{u_for_period2, MapSpec};
use herman_core::Complex64;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "herman", version, about = "Herman rings, Siegel disks and their parameter spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Fate image of a dynamical plane, written as PPM.
    RenderDyn(commands::RenderDynArgs),
    /// Fate image of a parameter plane, written as PPM.
    RenderParam(commands::RenderParamArgs),
    /// Rotation number of the return map on a ring or Siegel disk.
    Rotnum(commands::RotnumArgs),
    /// Innermost ring point along a ray.
    FindSeed(commands::FindSeedArgs),
    /// u making 0 a super-attracting cycle of period 2 or 3 for the cubic family.
    SolveU(commands::SolveUArgs),
    /// Solves (b+1)e^{-b} = e^{2πiθ}.
    SolveSiegel2(commands::Siegel2Args),
    /// λ with a Siegel fixed point of rotation θ for λz²e^z.
    SiegelLambda(commands::SiegelLambdaArgs),
    /// Checks f^p(z0) = z0 and reports the multiplier.
    VerifyCycle(commands::VerifyCycleArgs),
    /// Checks h(1/z̄) = 1/conj(h(z)) for the quartic Blaschke family.
    SymmetryCheck(commands::SymmetryArgs),
    /// Sampled verification of the quadratic-like family for λz²e^z.
    VerifyQuadlike(commands::QuadArgs),
    /// Parameter search by circle bisection or tongue nesting.
    FindParam(commands::FindParamArgs),
    /// Continued fraction, convergents and partial Brjuno sum.
    Cf(commands::CfArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    CubicRat,
    NormalizedCubic,
    MeroTwoZeroExp,
    QuarticBlaschke,
    MeroPoleExp,
    EntireZ2Exp,
    EntireSiegel2,
    CubicBlaschke,
    Arnold,
    Quadratic,
    RigidRotation,
}

/// Map family and parameters. Only the parameters of the chosen family are read.
#[derive(Args, Debug, Clone, Serialize)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    /// Cubic family: defaults to the value making {0, b} a super-attracting 2-cycle.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub u: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub lambda: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub c: Option<Complex64>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub b_exponent: u8,
}

pub struct Usage(pub String);

fn need<T: Copy>(v: Option<T>, family: Family, name: &str) -> Result<T, Usage> {
    v.ok_or_else(|| Usage(format!("--{name} is required for family {family:?}")))
}

fn real_part(z: Complex64, name: &str) -> Result<f64, Usage> {
    if z.im != 0.0 {
        return Err(Usage(format!("--{name} must be real for this family")));
    }
    Ok(z.re)
}

impl MapArgs {
    pub fn spec(&self) -> Result<MapSpec, Usage> {
        let f = self.family;
        Ok(match f {
            Family::CubicRat => {
                let (a, b) = (need(self.a, f, "a")?, need(self.b, f, "b")?);
                let u = match self.u {
                    Some(u) => u,
                    None => u_for_period2(a, b).map_err(|e| Usage(e.to_string()))?,
                };
                MapSpec::CubicRat { a, b, u }
            }
            Family::NormalizedCubic => MapSpec::NormalizedCubic {
                alpha: need(self.alpha, f, "alpha")?,
                beta: need(self.beta, f, "beta")?,
                u: need(self.u, f, "u")?,
            },
            Family::MeroTwoZeroExp => MapSpec::MeroTwoZeroExp {
                a: need(self.a, f, "a")?,
                b: need(self.b, f, "b")?,
                u: need(self.u, f, "u")?,
            },
            Family::QuarticBlaschke => {
                if self.b_exponent != 2 && self.b_exponent != 4 {
                    return Err(Usage("--b-exponent must be 2 or 4".into()));
                }
                let r = need(self.r, f, "r")?;
                if !(r > 0.0 && r < 1.0) {
                    return Err(Usage("--r must lie in (0, 1)".into()));
                }
                MapSpec::QuarticBlaschke { r, t: need(self.t, f, "t")?, b_exponent: self.b_exponent }
            }
            Family::MeroPoleExp => MapSpec::MeroPoleExp { a: need(self.a, f, "a")?, b: need(self.b, f, "b")? },
            Family::EntireZ2Exp => MapSpec::EntireZ2Exp { lambda: need(self.lambda, f, "lambda")? },
            Family::EntireSiegel2 => MapSpec::EntireSiegel2 { b: need(self.b, f, "b")? },
            Family::CubicBlaschke => MapSpec::CubicBlaschke { a: need(self.a, f, "a")?, t: need(self.t, f, "t")? },
            Family::Arnold => MapSpec::Arnold {
                a: real_part(need(self.a, f, "a")?, "a")?,
                t: need(self.t, f, "t")?,
            },
            Family::Quadratic => MapSpec::Quadratic { c: need(self.c, f, "c")? },
            Family::RigidRotation => MapSpec::RigidRotation { theta: need(self.theta, f, "theta")? },
        })
    }
}

/// Iteration budget for orbit classification.
#[derive(Args, Debug, Clone, Serialize)]
pub struct BudgetArgs {
    /// Steps of the return map f^p.
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e6, value_parser = parse::positive)]
    pub escape_radius: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse::positive)]
    pub attract_tol: f64,
    #[arg(long, default_value_t = 1e-2, value_parser = parse::positive)]
    pub recurrence_tol: f64,
    #[arg(long, default_value_t = 5e-2, value_parser = parse::positive)]
    pub uniformity_tol: f64,
    #[arg(long, default_value_t = 64)]
    pub max_preperiod: usize,
    #[arg(long, default_value_t = 64)]
    pub max_cycle_period: usize,
}

impl BudgetArgs {
    pub fn budget(&self, p: usize) -> Budget {
        Budget {
            max_iter: self.max_iter,
            escape_radius: self.escape_radius,
            attract_tol: self.attract_tol,
            recurrence_tol: self.recurrence_tol,
            uniformity_tol: self.uniformity_tol,
            ring_period: p.max(1),
            max_preperiod: self.max_preperiod,
            max_cycle_period: self.max_cycle_period,
        }
    }
}

/// Ray used to look for a ring point.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ScanArgs {
    #[arg(long, default_value = "0", value_parser = parse::complex, allow_hyphen_values = true)]
    pub base: Complex64,
    #[arg(long, default_value = "1", value_parser = parse::complex, allow_hyphen_values = true)]
    pub direction: Complex64,
    #[arg(long, default_value_t = 0.05, value_parser = parse::real)]
    pub r_min: f64,
    #[arg(long, default_value_t = 2.5, value_parser = parse::real)]
    pub r_max: f64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

impl ScanArgs {
    pub fn scan(&self) -> Result<RayScan, Usage> {
        if self.direction.norm() == 0.0 {
            return Err(Usage("--direction must be nonzero".into()));
        }
        if !(self.r_max > self.r_min) || self.samples == 0 {
            return Err(Usage("ray needs r-max > r-min and at least one sample".into()));
        }
        Ok(RayScan {
            base: self.base,
            direction: self.direction,
            r_min: self.r_min,
            r_max: self.r_max,
            samples: self.samples,
        })
    }
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn emit(record: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(record).expect("report serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (op, outcome) = commands::run(cli.cmd);
    match outcome {
        commands::Outcome::Done { record, ok } => {
            emit(&record);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        commands::Outcome::Failed(record) => {
            emit(&record);
            ExitCode::from(1)
        }
        commands::Outcome::Usage(msg) => {
            eprintln!("error: {op}: {msg}");
            ExitCode::from(2)
        }
    }
}
