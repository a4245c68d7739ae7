use super::classify::{classify_point, Budget, Fate};
use crate::error::{Error, Result};
use crate::maps::{evaluate, MapSpec};
use crate::sphere::{chordal, SpherePoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RotationMethod {
    WindingMean,
    ClosestReturn,
    CircleLift,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationEstimate {
    pub value: f64,
    pub method: RotationMethod,
    pub iterations: usize,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationReport {
    pub winding: RotationEstimate,
    pub closest_return: RotationEstimate,
    /// Times of successive record closest returns to the seed.
    pub return_times: Vec<usize>,
    /// Circular distance between the two estimates.
    pub discrepancy: f64,
}

/// Largest allowed disagreement between the two estimators.
pub const AGREEMENT_TOL: f64 = 1e-2;

fn wrap01(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap01(a - b);
    d.min(1.0 - d)
}

/// Rotation number of f^p on the invariant curve through `seed`, about `center`.
pub fn rotation_number(
    map: &MapSpec,
    p: usize,
    seed: SpherePoint,
    center: Complex64,
    n: usize,
) -> Result<RotationReport> {
    let budget = Budget::default().with_period(p).with_iterations(n);
    if classify_point(map, seed, &budget) != (Fate::RotationDomain { entry_steps: 0 }) {
        return Err(Error::NotRecurrent);
    }
    let mut w = Vec::with_capacity(n + 1);
    let mut z = seed;
    w.push(seed.finite().ok_or(Error::NotRecurrent)? - center);
    for _ in 0..n {
        for _ in 0..p {
            z = evaluate(map, z)?;
        }
        let v = z.finite().ok_or(Error::NotRecurrent)? - center;
        if v.norm() == 0.0 {
            return Err(Error::CenterOutsideRing);
        }
        w.push(v);
    }
    let winding = winding_estimate(&w)?;
    let (closest_return, return_times) = closest_return_estimate(&w)?;
    let discrepancy = circular_distance(winding.value, closest_return.value);
    if discrepancy > AGREEMENT_TOL {
        return Err(Error::CenterOutsideRing);
    }
    Ok(RotationReport {
        winding,
        closest_return,
        return_times,
        discrepancy,
    })
}

/// Mean angular increment of the orbit about the origin.
///
/// Each increment takes the branch within π of the circular mean increment, so steps
/// larger than a half turn are lifted consistently.
fn winding_estimate(w: &[Complex64]) -> Result<RotationEstimate> {
    let n = w.len() - 1;
    let principal: Vec<f64> = w.windows(2).map(|p| (p[1] / p[0]).arg()).collect();
    let (s, c) = principal
        .iter()
        .fold((0.0, 0.0), |(s, c), a| (s + a.sin(), c + a.cos()));
    let mean = s.atan2(c);
    let mut lift = Vec::with_capacity(n + 1);
    lift.push(0.0);
    let mut total = 0.0;
    for &a in &principal {
        let mut d = a;
        while d <= mean - PI {
            d += TAU;
        }
        while d > mean + PI {
            d -= TAU;
        }
        total += d;
        lift.push(total);
    }
    // A lift that runs a full turn against its own drift does not encircle the center.
    let drift = total.signum();
    let mut extreme: f64 = 0.0;
    for &l in &lift {
        if drift * (l - extreme) < -TAU {
            return Err(Error::CenterOutsideRing);
        }
        extreme = if drift >= 0.0 { extreme.max(l) } else { extreme.min(l) };
    }
    let slope = total / n as f64;
    let (lo, hi) = lift
        .iter()
        .enumerate()
        .map(|(m, l)| l - slope * m as f64)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)));
    Ok(RotationEstimate {
        value: wrap01(slope / TAU),
        method: RotationMethod::WindingMean,
        iterations: n,
        error_bound: (hi - lo) / (TAU * n as f64),
    })
}

/// Rotation number from the best return time q ≤ N/2.
///
/// q·θ ≈ p + δ/2π, where p is read off the cyclic order of the first q orbit points and δ
/// is the mean angular displacement of the q-th iterate, which is small.
fn closest_return_estimate(w: &[Complex64]) -> Result<(RotationEstimate, Vec<usize>)> {
    let n = w.len() - 1;
    let w0 = SpherePoint::Finite(w[0]);
    let mut best = f64::INFINITY;
    let mut times = Vec::new();
    for (m, &v) in w.iter().enumerate().skip(1).take(n / 2) {
        let d = chordal(SpherePoint::Finite(v), w0);
        if d < best {
            best = d;
            times.push(m);
        }
    }
    let q = *times.last().ok_or(Error::NotRecurrent)?;
    let p = rank_shift(&w[..q]).ok_or(Error::CenterOutsideRing)?;
    let deltas: Vec<f64> = (0..=n - q).map(|j| (w[j + q] / w[j]).arg()).collect();
    let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
    let mut acc = 0.0;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for d in &deltas {
        acc += d - mean;
        lo = lo.min(acc);
        hi = hi.max(acc);
    }
    let value = wrap01((p as f64 + mean / TAU) / q as f64);
    Ok((
        RotationEstimate {
            value,
            method: RotationMethod::ClosestReturn,
            iterations: n,
            error_bound: (hi - lo) / (TAU * q as f64 * deltas.len() as f64),
        },
        times,
    ))
}

/// Most common shift in angular rank from one point to the next, modulo the set size.
pub(crate) fn rank_shift(points: &[Complex64]) -> Option<usize> {
    let m = points.len();
    if m == 1 {
        return Some(0);
    }
    let mut order: Vec<usize> = (0..m).collect();
    let angle = |z: Complex64| crate::sphere::arg_2pi(z);
    order.sort_by(|&i, &j| angle(points[i]).total_cmp(&angle(points[j])));
    let mut rank = vec![0usize; m];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut counts = vec![0usize; m];
    for j in 0..m - 1 {
        counts[(rank[j + 1] + m - rank[j]) % m] += 1;
    }
    let (shift, &count) = counts.iter().enumerate().max_by_key(|(_, c)| **c)?;
    if 2 * count < m - 1 {
        return None;
    }
    Some(shift)
}

/// Lift of a degree-one circle map that carries an additive parameter t:
/// F(x) = x + t + Δ₀(x), with Δ₀ taken from the map at t = 0.
pub struct CircleLift {
    t: f64,
    grid: Vec<f64>,
    map0: MapSpec,
}

const LIFT_GRID: usize = 4096;

impl CircleLift {
    pub fn new(map: &MapSpec) -> Result<Self> {
        let (map0, t) = match *map {
            MapSpec::Arnold { a, t } => (MapSpec::Arnold { a, t: 0.0 }, t),
            MapSpec::CubicBlaschke { a, t } => (MapSpec::CubicBlaschke { a, t: 0.0 }, t),
            _ => return Err(Error::Unsupported),
        };
        let mut worst = 0.0f64;
        let mut grid = Vec::with_capacity(LIFT_GRID + 1);
        let mut prev: Option<f64> = None;
        for i in 0..=LIFT_GRID {
            let x = i as f64 / LIFT_GRID as f64;
            let z = Complex64::from_polar(1.0, TAU * x);
            let fz = evaluate(&map0, SpherePoint::Finite(z))?
                .finite()
                .ok_or(Error::CircleNotInvariant(f64::INFINITY))?;
            worst = worst.max((fz.norm() - 1.0).abs());
            let mut d = (fz / z).arg() / TAU;
            if let Some(pv) = prev {
                d += (pv - d).round();
            }
            grid.push(d);
            prev = Some(d);
        }
        if worst > 1e-9 {
            return Err(Error::CircleNotInvariant(worst));
        }
        if (grid[LIFT_GRID] - grid[0]).abs() > 1e-6 {
            // Not a degree-one map of the circle.
            return Err(Error::Unsupported);
        }
        Ok(CircleLift { t, grid, map0 })
    }

    pub fn with_t(&self, t: f64) -> CircleLift {
        CircleLift {
            t,
            grid: self.grid.clone(),
            map0: self.map0,
        }
    }

    fn delta(&self, x: f64) -> f64 {
        let frac = x.rem_euclid(1.0);
        let pos = frac * LIFT_GRID as f64;
        let i = (pos.floor() as usize).min(LIFT_GRID - 1);
        let s = pos - i as f64;
        let guess = self.grid[i] * (1.0 - s) + self.grid[i + 1] * s;
        let z = Complex64::from_polar(1.0, TAU * frac);
        let exact = match evaluate(&self.map0, SpherePoint::Finite(z)) {
            Ok(SpherePoint::Finite(fz)) => (fz / z).arg() / TAU,
            _ => return guess,
        };
        exact + (guess - exact).round()
    }

    pub fn apply(&self, x: f64) -> f64 {
        x + self.t + self.delta(x)
    }

    /// Unreduced rotation number (F^N(0))/N; differs from the true value by less than 1/N.
    pub fn rotation(&self, n: usize) -> f64 {
        let mut x = 0.0;
        for _ in 0..n {
            x = self.apply(x);
        }
        x / n as f64
    }
}

pub fn circle_rotation_number(map: &MapSpec, n: usize) -> Result<RotationEstimate> {
    let lift = CircleLift::new(map)?;
    Ok(RotationEstimate {
        value: wrap01(lift.rotation(n)),
        method: RotationMethod::CircleLift,
        iterations: n,
        error_bound: 1.0 / n as f64,
    })
}

/// Bisection in t for the circle family until ρ(t) = θ.
///
/// ρ is compared unreduced, so the bracket must satisfy ρ(t0) < θ < ρ(t1) for the lift with
/// Δ₀(0) ∈ (−1/2, 1/2].
pub fn find_t_circle(map: &MapSpec, theta: f64, bracket: (f64, f64), n: usize) -> Result<f64> {
    let base = CircleLift::new(map)?;
    let rho = |t: f64| base.with_t(t).rotation(n);
    let (mut t0, mut t1) = bracket;
    if !(rho(t0) < theta && theta < rho(t1)) {
        return Err(Error::BracketInvalid);
    }
    loop {
        let mid = 0.5 * (t0 + t1);
        let r = rho(mid);
        if (r - theta).abs() < 1e-6 || t1 - t0 < 1e-10 {
            return Ok(mid);
        }
        if r < theta {
            t0 = mid;
        } else {
            t1 = mid;
        }
    }
}

pub fn with_t(map: &MapSpec, t: f64) -> MapSpec {
    match *map {
        MapSpec::Arnold { a, .. } => MapSpec::Arnold { a, t },
        MapSpec::CubicBlaschke { a, .. } => MapSpec::CubicBlaschke { a, t },
        MapSpec::QuarticBlaschke { r, b_exponent, .. } => MapSpec::QuarticBlaschke { r, t, b_exponent },
        other => other,
    }
}
