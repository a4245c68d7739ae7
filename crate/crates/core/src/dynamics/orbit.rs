use crate::error::Result;
use crate::maps::{derivative, evaluate, poles, MapSpec};
use crate::sphere::{chordal, SpherePoint};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopRules {
    /// Escape radius for rational maps with attracting ∞; transcendental maps use the fixed rule.
    pub escape_radius: Option<f64>,
    pub pole_proximity: Option<f64>,
    /// Stop when consecutive points are this close in the chordal metric.
    pub convergence_tol: Option<f64>,
}

impl Default for StopRules {
    fn default() -> Self {
        StopRules {
            escape_radius: Some(1e6),
            pole_proximity: None,
            convergence_tol: None,
        }
    }
}

impl StopRules {
    pub fn none() -> Self {
        StopRules {
            escape_radius: None,
            pole_proximity: None,
            convergence_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Budget,
    Escape,
    PoleHit,
    Converged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<SpherePoint>,
    pub log_deriv_sum: f64,
    pub terminated_by: Termination,
}

/// Escape test shared by iteration and classification.
///
/// Transcendental maps escape once Re z > 700 or |z| > 1e100. Rational maps escape past
/// `radius` only when ∞ attracts; for the others ∞ is an ordinary point.
pub fn escaped(map: &MapSpec, z: SpherePoint, radius: f64) -> bool {
    match z {
        SpherePoint::Infinity => map.is_transcendental() || map.infinity_attracts(),
        SpherePoint::Finite(w) => {
            if map.is_transcendental() {
                w.re > 700.0 || w.norm() > 1e100
            } else {
                map.infinity_attracts() && w.norm() > radius
            }
        }
    }
}

pub fn iterate(map: &MapSpec, z0: SpherePoint, n: usize, stops: StopRules) -> Result<Orbit> {
    let pole_list = poles(map);
    let mut points = Vec::with_capacity(n + 1);
    points.push(z0);
    let mut log_deriv_sum = 0.0;
    let mut z = z0;
    let mut terminated_by = Termination::Budget;
    for _ in 0..n {
        if let SpherePoint::Finite(w) = z {
            if let Ok(d) = derivative(map, w) {
                log_deriv_sum += d.norm().ln();
            }
        }
        let next = evaluate(map, z)?;
        points.push(next);
        if let Some(r) = stops.escape_radius {
            if escaped(map, next, r) {
                terminated_by = Termination::Escape;
                break;
            }
        } else if map.is_transcendental() && escaped(map, next, f64::INFINITY) {
            terminated_by = Termination::Escape;
            break;
        }
        if let (Some(delta), SpherePoint::Finite(w)) = (stops.pole_proximity, next) {
            if pole_list.iter().any(|(p, _)| (w - p).norm() < delta) {
                terminated_by = Termination::PoleHit;
                break;
            }
        }
        if let Some(tol) = stops.convergence_tol {
            if chordal(z, next) < tol {
                terminated_by = Termination::Converged;
                break;
            }
        }
        z = next;
    }
    Ok(Orbit {
        points,
        log_deriv_sum,
        terminated_by,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    /// Chordal distance between f^p(z0) and z0.
    pub residual: f64,
    /// Π|f'| over the finite non-pole cycle points.
    pub multiplier_abs: f64,
    pub through_infinity: bool,
    pub points: Vec<SpherePoint>,
    pub within_tol: bool,
}

pub fn verify_cycle(map: &MapSpec, z0: SpherePoint, p: usize, tol: f64) -> Result<CycleReport> {
    let pole_list = poles(map);
    let mut points = Vec::with_capacity(p + 1);
    points.push(z0);
    let mut z = z0;
    let mut multiplier_abs = 1.0;
    let mut through_infinity = false;
    for _ in 0..p {
        // Points chordally within tol of ∞ or of a pole are treated as passing through ∞.
        let near_pole = pole_list
            .iter()
            .any(|(q, _)| chordal(z, SpherePoint::Finite(*q)) <= tol);
        match z {
            SpherePoint::Finite(w) if !near_pole && chordal(z, SpherePoint::Infinity) > tol => {
                multiplier_abs *= derivative(map, w)?.norm();
            }
            _ => through_infinity = true,
        }
        z = evaluate(map, z)?;
        points.push(z);
    }
    let residual = chordal(z, z0);
    Ok(CycleReport {
        residual,
        multiplier_abs,
        through_infinity,
        within_tol: residual <= tol,
        points,
    })
}

/// Smallest p ≤ max_period with f^p(z0) = z0 within tol, with its report.
pub fn find_cycle(map: &MapSpec, z0: SpherePoint, max_period: usize, tol: f64) -> Result<Option<CycleReport>> {
    let mut z = z0;
    for p in 1..=max_period {
        z = evaluate(map, z)?;
        if chordal(z, z0) <= tol {
            return verify_cycle(map, z0, p, tol).map(Some);
        }
    }
    Ok(None)
}
