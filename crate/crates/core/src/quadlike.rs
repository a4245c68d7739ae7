//! Geometry of E_λ(z) = λz²e^z: the preimage curves σ_k of ℝ⁺, the regions they bound,
//! the quadratic-like restriction E_λ: U_λ → V_λ and numerical checks of its hypotheses.

use crate::dynamics::{classify_point, Budget, Fate};
use crate::error::{Error, Result};
use crate::maps::{evaluate, MapSpec};
use crate::sphere::{arg_2pi, SpherePoint};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI, TAU};

type C = Complex64;

/// Points this close (radially) to a boundary curve count as outside.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionGeometry {
    pub lambda: C,
    pub arg_lambda: f64,
}

impl RegionGeometry {
    /// Requires λ ∉ [0, ∞).
    pub fn new(lambda: C) -> Result<Self> {
        let arg_lambda = arg_2pi(lambda);
        if lambda.norm() == 0.0 || arg_lambda == 0.0 {
            return Err(Error::DomainError);
        }
        Ok(RegionGeometry { lambda, arg_lambda })
    }

    pub fn map(&self) -> MapSpec {
        MapSpec::EntireZ2Exp { lambda: self.lambda }
    }

    /// Critical value E_λ(−2) = 4λ/e².
    pub fn critical_value(&self) -> C {
        self.lambda * 4.0 / (E * E)
    }

    /// Radius at which the ray arg z = θ meets σ_k (branch chosen by the half plane of θ).
    fn radius(&self, k: i64, theta: f64) -> f64 {
        let s = theta.sin();
        if theta < PI {
            ((2 * k + 2) as f64 * PI - self.arg_lambda - 2.0 * theta) / s
        } else {
            ((2 * k + 4) as f64 * PI - self.arg_lambda - 2.0 * theta) / s
        }
    }

    fn zero_plus_limit(&self) -> f64 {
        PI - self.arg_lambda / 2.0
    }

    fn zero_minus_limit(&self) -> f64 {
        TAU - self.arg_lambda / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
    None,
}

/// The point of σ_k on the ray of angle θ.
pub fn sigma_point(geom: &RegionGeometry, k: i64, branch: Branch, theta: f64) -> Result<C> {
    let ok = match (k, branch) {
        (k, Branch::None) if k >= 1 => theta > 0.0 && theta < PI,
        (k, Branch::None) if k <= -1 => theta > PI && theta < TAU,
        (0, Branch::Plus) => theta > 0.0 && theta < geom.zero_plus_limit(),
        (0, Branch::Minus) => theta > geom.zero_minus_limit() && theta < TAU,
        _ => false,
    };
    if !ok {
        return Err(Error::DomainError);
    }
    let rho = geom.radius(k, theta);
    if rho.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DomainError);
    }
    Ok(C::from_polar(rho, theta))
}

/// |Im z − ((2k+2)π − arg λ − arg z²)| with arg in [0, 2π).
pub fn sigma_residual(geom: &RegionGeometry, k: i64, z: C) -> f64 {
    (z.im - ((2 * k + 2) as f64 * PI - geom.arg_lambda - arg_2pi(z * z))).abs()
}

/// Whether z lies in the open strip S_k.
pub fn in_strip(geom: &RegionGeometry, k: i64, z: C) -> bool {
    let lo = (2 * k) as f64 * PI - geom.arg_lambda;
    z.im > lo && z.im < lo + TAU
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Omega0,
    OmegaTilde0,
    OmegaK(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub inside: bool,
    pub on_boundary: bool,
}

impl Membership {
    fn between(rho: f64, lo: f64, hi: f64) -> Self {
        let near = (rho - lo).abs() < BOUNDARY_TOL || (rho - hi).abs() < BOUNDARY_TOL;
        Membership {
            inside: !near && rho > lo && rho < hi,
            on_boundary: near,
        }
    }

    const OUT: Membership = Membership { inside: false, on_boundary: false };
}

/// Membership decided along the ray through z, where each boundary curve is crossed once.
pub fn region_contains(geom: &RegionGeometry, region: Region, z: C) -> Membership {
    let rho = z.norm();
    if rho == 0.0 {
        // 0 lies on σ_0 ∪ {0}.
        return Membership { inside: false, on_boundary: true };
    }
    let theta = arg_2pi(z);
    let upper = theta > 0.0 && theta < PI;
    let lower = theta > PI;
    let in_plus = upper && theta < geom.zero_plus_limit();
    let in_minus = lower && theta > geom.zero_minus_limit();
    match region {
        Region::Omega0 => {
            if theta == 0.0 {
                Membership::OUT
            } else if theta == PI {
                Membership { inside: true, on_boundary: false }
            } else if upper {
                let lo = if in_plus { geom.radius(0, theta) } else { 0.0 };
                Membership::between(rho, lo, geom.radius(1, theta))
            } else {
                let lo = if in_minus { geom.radius(0, theta) } else { 0.0 };
                Membership::between(rho, lo, geom.radius(-1, theta))
            }
        }
        Region::OmegaTilde0 => {
            if theta == 0.0 {
                Membership { inside: true, on_boundary: false }
            } else if in_plus || in_minus {
                Membership::between(rho, 0.0, geom.radius(0, theta))
            } else {
                Membership::OUT
            }
        }
        Region::OmegaK(k) if k >= 1 => {
            if upper {
                Membership::between(rho, geom.radius(k, theta), geom.radius(k + 1, theta))
            } else {
                Membership::OUT
            }
        }
        Region::OmegaK(k) if k <= -1 => {
            if lower {
                Membership::between(rho, geom.radius(k, theta), geom.radius(k - 1, theta))
            } else {
                Membership::OUT
            }
        }
        Region::OmegaK(_) => region_contains(geom, Region::Omega0, z),
    }
}

/// V_λ = {1/(16|λ|) < |z| < 30} ∖ ℝ⁺.
pub fn in_v(geom: &RegionGeometry, z: C) -> bool {
    let r = z.norm();
    let on_positive_axis = z.im == 0.0 && z.re > 0.0;
    r > 1.0 / (16.0 * geom.lambda.norm()) && r < 30.0 && !on_positive_axis
}

/// U_λ = E_λ⁻¹(V_λ) ∩ Ω_0.
pub fn in_u(geom: &RegionGeometry, z: C) -> bool {
    if !region_contains(geom, Region::Omega0, z).inside {
        return false;
    }
    match evaluate(&geom.map(), SpherePoint::Finite(z)) {
        Ok(SpherePoint::Finite(w)) => in_v(geom, w),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueMargins {
    pub modulus: f64,
    /// |v| − 1/(16|λ|)
    pub lower_margin: f64,
    /// 30 − |v|
    pub upper_margin: f64,
    pub off_positive_axis: bool,
}

pub fn check_critical_value(geom: &RegionGeometry) -> CriticalValueMargins {
    let v = geom.critical_value();
    CriticalValueMargins {
        modulus: v.norm(),
        lower_margin: v.norm() - 1.0 / (16.0 * geom.lambda.norm()),
        upper_margin: 30.0 - v.norm(),
        off_positive_axis: !(v.im == 0.0 && v.re > 0.0),
    }
}

/// Winding number about 0 of a closed sampled path.
pub fn winding_number(samples: &[C]) -> Result<i64> {
    let (first, last) = match (samples.first(), samples.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Ok(0),
    };
    if (first - last).norm() > 1e-9 {
        return Err(Error::PathNotClosed);
    }
    if samples.iter().any(|z| z.norm() < 1e-9) {
        return Err(Error::PathThroughZero);
    }
    let mut total = 0.0;
    for w in samples.windows(2) {
        let d = (w[1] / w[0]).arg();
        if d.abs() > PI / 2.0 {
            return Err(Error::UnderSampled(d));
        }
        total += d;
    }
    Ok((total / TAU).round() as i64)
}

/// The closed boundary of D = {1/2 ≤ |λ| ≤ 50, 1/10 ≤ arg λ ≤ 2π − 1/10}, traversed
/// γ_3 outward, γ_2, γ_4 inward, γ_1, with `per_piece` samples on each piece.
pub fn boundary_path(per_piece: usize) -> Vec<(usize, C)> {
    let (a0, a1) = (0.1, TAU - 0.1);
    let (r0, r1) = (0.5, 50.0);
    let n = per_piece.max(2);
    let s = |i: usize| i as f64 / n as f64;
    let mut out = Vec::with_capacity(4 * n + 1);
    for i in 0..n {
        out.push((3, C::from_polar(r0 + (r1 - r0) * s(i), a0)));
    }
    for i in 0..n {
        out.push((2, C::from_polar(r1, a0 + (a1 - a0) * s(i))));
    }
    for i in 0..n {
        out.push((4, C::from_polar(r1 + (r0 - r1) * s(i), a1)));
    }
    for i in 0..n {
        out.push((1, C::from_polar(r0, a1 + (a0 - a1) * s(i))));
    }
    out.push(out[0]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadGrid {
    pub interior: usize,
    pub boundary: usize,
    pub zbox: usize,
    /// How many boundary and interior λ the z-box check visits.
    pub box_lambdas: usize,
    /// Multiplier k in v_λ = kλ/e²; 4 is the true critical value.
    pub critical_value_scale: f64,
}

impl Default for QuadGrid {
    fn default() -> Self {
        QuadGrid {
            interior: 1000,
            boundary: 10_000,
            zbox: 300,
            box_lambdas: 24,
            critical_value_scale: 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub lambda: Option<C>,
    pub status: Status,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub status: Status,
    pub samples: usize,
    pub failures: usize,
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadReport {
    pub grid: QuadGrid,
    pub summary: Vec<CheckSummary>,
    pub winding: Option<i64>,
    pub winding_doubled: Option<i64>,
    pub gamma1_modulus: f64,
    pub gamma2_modulus: f64,
    pub notes: Vec<String>,
    pub records: Vec<CheckRecord>,
}

impl QuadReport {
    pub fn all_pass(&self) -> bool {
        self.summary.iter().all(|s| s.status == Status::Pass)
    }
}

fn record(id: &str, lambda: Option<C>, margin: f64) -> CheckRecord {
    CheckRecord {
        check_id: id.to_string(),
        lambda,
        status: if margin > 0.0 { Status::Pass } else { Status::Fail },
        margin,
    }
}

fn interior_lambdas(n: usize) -> Vec<C> {
    let na = 40.min(n.max(1));
    let nr = (n / na).max(1);
    let (l0, l1) = ((0.4f64).ln(), (51f64).ln());
    let mut out = Vec::with_capacity(na * nr);
    for i in 0..nr {
        let r = (l0 + (l1 - l0) * (i as f64 + 0.5) / nr as f64).exp();
        for j in 0..na {
            out.push(C::from_polar(r, TAU * (j as f64 + 0.5) / na as f64));
        }
    }
    out
}

/// Checks the four hypotheses behind the Mandelbrot-like family on sampled parameters.
pub fn verify_mandelbrot_like(grid: &QuadGrid) -> QuadReport {
    let scale = grid.critical_value_scale;
    let v_of = |lambda: C| lambda * scale / (E * E);
    let interior = interior_lambdas(grid.interior);
    let boundary = boundary_path((grid.boundary / 4).max(2));
    let boundary_pts = &boundary[..boundary.len() - 1];

    // (i) v_λ ∈ V_λ on Λ, boundary of D included.
    let mut records: Vec<CheckRecord> = interior
        .iter()
        .copied()
        .chain(boundary_pts.iter().map(|(_, l)| *l))
        .map(|lambda| {
            let v = v_of(lambda);
            let r = v.norm();
            let mut margin = (r - 1.0 / (16.0 * lambda.norm())).min(30.0 - r);
            if v.im == 0.0 && v.re > 0.0 {
                margin = margin.min(0.0);
            }
            record("i_critical_value_in_V", Some(lambda), margin)
        })
        .collect();

    // (ii) v_λ ∉ U_λ on ∂D.
    records.extend(boundary_pts.iter().map(|&(piece, lambda)| {
        let geom = RegionGeometry::new(lambda).expect("boundary avoids the positive axis");
        let v = v_of(lambda);
        let margin = match piece {
            1 => 1.0 / (6.0 * lambda.norm()) - v.norm(),
            2 => v.norm() - 25.0,
            _ => {
                let theta = arg_2pi(v);
                let m = region_contains(&geom, Region::OmegaTilde0, v);
                if m.inside {
                    geom.radius(0, theta) - v.norm()
                } else {
                    -1.0
                }
            }
        };
        let margin = if in_u(&geom, v) { margin.min(0.0) } else { margin };
        record(&format!("ii_v_outside_U_gamma{piece}"), Some(lambda), margin)
    }));

    // (iii) winding of λ ↦ v_λ + 2 around ∂D, and with doubled sampling.
    let path = |pp: usize| -> Vec<C> { boundary_path(pp).into_iter().map(|(_, l)| v_of(l) + 2.0).collect() };
    let winding = winding_number(&path((grid.boundary / 4).max(2))).ok();
    let winding_doubled = winding_number(&path((grid.boundary / 2).max(4))).ok();
    let wind_ok = winding == Some(1) && winding_doubled == Some(1);
    records.push(record("iii_winding_number", None, if wind_ok { 1.0 } else { -1.0 }));

    // (iv) U_λ ⊂ {1/(6|λ|) < |z| < 25} on the z-box.
    let nb = grid.box_lambdas / 2;
    let ni = grid.box_lambdas - nb;
    let mut box_lambdas: Vec<C> = (0..nb)
        .map(|i| boundary_pts[i * boundary_pts.len() / nb.max(1)].1)
        .collect();
    box_lambdas.extend((0..ni).map(|i| interior[i * interior.len() / ni.max(1) + interior.len() / (2 * ni.max(1))]));
    let nz = grid.zbox.max(2);
    let box_records: Vec<CheckRecord> = box_lambdas
        .par_iter()
        .map(|&lambda| {
            let geom = RegionGeometry::new(lambda).expect("sampled λ avoid the positive axis");
            let lo = 1.0 / (6.0 * lambda.norm());
            let mut margin = f64::INFINITY;
            for i in 0..nz {
                let x = -20.0 + 25.0 * (i as f64 + 0.5) / nz as f64;
                for j in 0..nz {
                    let y = -4.0 * PI + 8.0 * PI * (j as f64 + 0.5) / nz as f64;
                    let z = C::new(x, y);
                    if in_u(&geom, z) {
                        let r = z.norm();
                        margin = margin.min((r - lo).min(25.0 - r));
                    }
                }
            }
            record("iv_U_in_annulus", Some(lambda), margin)
        })
        .collect();
    records.extend(box_records);

    let mut summary: Vec<CheckSummary> = Vec::new();
    for r in &records {
        let family = r.check_id.split('_').next().unwrap_or("").to_string();
        let id = match family.as_str() {
            "i" => "i_critical_value_in_V",
            "ii" => "ii_v_outside_U",
            "iii" => "iii_winding_number",
            _ => "iv_U_in_annulus",
        };
        let entry = match summary.iter_mut().find(|s| s.check_id == id) {
            Some(e) => e,
            None => {
                summary.push(CheckSummary {
                    check_id: id.to_string(),
                    status: Status::Pass,
                    samples: 0,
                    failures: 0,
                    min_margin: f64::INFINITY,
                });
                summary.last_mut().unwrap()
            }
        };
        entry.samples += 1;
        entry.min_margin = entry.min_margin.min(r.margin);
        if r.status == Status::Fail {
            entry.failures += 1;
            entry.status = Status::Fail;
        }
    }
    let g1 = C::from_polar(0.5, PI);
    let g2 = C::from_polar(50.0, PI);
    QuadReport {
        grid: *grid,
        summary,
        winding,
        winding_doubled,
        gamma1_modulus: v_of(g1).norm(),
        gamma2_modulus: v_of(g2).norm(),
        notes: vec![
            "U_λ containment is checked on interior grid points of U_λ, not on a sampled boundary".to_string(),
        ],
        records,
    }
}

/// Fate of the free critical point −2 under E_λ. Recurrent orbits are reported as Undecided.
pub fn param_fate_e(lambda: C, budget: &Budget) -> Fate {
    let map = MapSpec::EntireZ2Exp { lambda };
    match classify_point(&map, SpherePoint::Finite(C::new(-2.0, 0.0)), &budget.with_period(1)) {
        Fate::RotationDomain { .. } => Fate::Undecided,
        f => f,
    }
}

/// Distinct solutions of E_λ(z) = w in Ω_0, by Newton from a seeds×seeds grid on the z-box.
pub fn preimages_in_omega0(geom: &RegionGeometry, w: C, seeds: usize) -> Vec<C> {
    let target = w / geom.lambda;
    let f = |z: C| z * z * z.exp() - target;
    let df = |z: C| z * (z + 2.0) * z.exp();
    let mut roots: Vec<C> = Vec::new();
    for i in 0..seeds {
        for j in 0..seeds {
            let mut z = C::new(
                -20.0 + 25.0 * (i as f64 + 0.5) / seeds as f64,
                -4.0 * PI + 8.0 * PI * (j as f64 + 0.5) / seeds as f64,
            );
            let mut converged = false;
            for _ in 0..100 {
                let d = df(z);
                if d.norm() == 0.0 || !z.re.is_finite() || z.re > 50.0 {
                    break;
                }
                let step = f(z) / d;
                z -= step;
                if step.norm() < 1e-14 * (1.0 + z.norm()) {
                    converged = true;
                    break;
                }
            }
            if !converged || f(z).norm() > 1e-10 * (1.0 + target.norm()) {
                continue;
            }
            if region_contains(geom, Region::Omega0, z).inside && !roots.iter().any(|r| (r - z).norm() < 1e-8) {
                roots.push(z);
            }
        }
    }
    roots
}
