use super::orbit::escaped;
use crate::error::{Error, Result};
use crate::maps::{evaluate, MapSpec};
use crate::sphere::{chordal, SpherePoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum Fate {
    EscapeToInfinity,
    AttractedToCycle {
        period: usize,
        representative: SpherePoint,
    },
    RotationDomain {
        entry_steps: usize,
    },
    Undecided,
}

impl Fate {
    pub fn is_decided(&self) -> bool {
        !matches!(self, Fate::Undecided)
    }

    /// Class and period, ignoring the exact representative.
    pub fn same_kind(&self, other: &Fate) -> bool {
        match (self, other) {
            (Fate::EscapeToInfinity, Fate::EscapeToInfinity) => true,
            (Fate::Undecided, Fate::Undecided) => true,
            (Fate::AttractedToCycle { period: a, .. }, Fate::AttractedToCycle { period: b, .. }) => a == b,
            (Fate::RotationDomain { entry_steps: a }, Fate::RotationDomain { entry_steps: b }) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// N, counted in steps of the return map f^p.
    pub max_iter: usize,
    pub escape_radius: f64,
    /// Chordal tolerance for detecting convergence to a cycle.
    pub attract_tol: f64,
    /// Closest return within N steps must be below this fraction of the orbit's spread.
    pub recurrence_tol: f64,
    /// After the closest return time q, sup_j d(w_{j+q}, w_j) must stay below this fraction.
    pub uniformity_tol: f64,
    pub ring_period: usize,
    /// Largest number of f-steps allowed before the orbit lands in a ring.
    pub max_preperiod: usize,
    pub max_cycle_period: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_iter: 2000,
            escape_radius: 1e6,
            attract_tol: 1e-9,
            recurrence_tol: 1e-2,
            uniformity_tol: 5e-2,
            ring_period: 1,
            max_preperiod: 64,
            max_cycle_period: 64,
        }
    }
}

impl Budget {
    pub fn with_period(mut self, p: usize) -> Self {
        self.ring_period = p.max(1);
        self
    }

    pub fn with_iterations(mut self, n: usize) -> Self {
        self.max_iter = n;
        self
    }
}

/// Steps between attraction checks; fixed so that decisions do not depend on the budget.
const CHECK_EVERY: usize = 8;

pub fn classify_point(map: &MapSpec, z: SpherePoint, budget: &Budget) -> Fate {
    let p = budget.ring_period.max(1);
    let total = budget.max_preperiod + p * budget.max_iter;
    if escaped(map, z, budget.escape_radius) {
        return Fate::EscapeToInfinity;
    }
    let mut orbit = Vec::with_capacity(total + 1);
    orbit.push(z);
    let mut w = z;
    for m in 1..=total {
        w = match evaluate(map, w) {
            Ok(v) => v,
            Err(_) => return Fate::Undecided,
        };
        orbit.push(w);
        if escaped(map, w, budget.escape_radius) {
            return Fate::EscapeToInfinity;
        }
        if m % CHECK_EVERY == 0 {
            if let Some(f) = detect_cycle(&orbit, budget.max_cycle_period, budget.attract_tol) {
                return f;
            }
        }
    }
    rotation_entry(&orbit, p, budget).map_or(Fate::Undecided, |k| Fate::RotationDomain { entry_steps: k })
}

/// Looks for the smallest q with the last q points repeating the q before them.
fn detect_cycle(orbit: &[SpherePoint], max_period: usize, tol: f64) -> Option<Fate> {
    let m = orbit.len() - 1;
    for q in 1..=max_period {
        if m < 2 * q {
            break;
        }
        if chordal(orbit[m], orbit[m - q]) >= tol {
            continue;
        }
        if (1..q).all(|j| chordal(orbit[m - j], orbit[m - j - q]) < tol) {
            let representative = orbit[m + 1 - q..=m]
                .iter()
                .copied()
                .min_by(|a, b| sphere_key(*a).total_cmp(&sphere_key(*b)))
                .unwrap();
            return Some(Fate::AttractedToCycle { period: q, representative });
        }
    }
    None
}

fn sphere_key(z: SpherePoint) -> f64 {
    z.finite().map_or(f64::INFINITY, |w| w.norm())
}

/// First preperiod k ≤ K at which the f^p-orbit is recurrent, if the tail is recurrent.
fn rotation_entry(orbit: &[SpherePoint], p: usize, budget: &Budget) -> Option<usize> {
    let k_max = budget.max_preperiod;
    let test = |k: usize| recurrent(orbit, k, p, budget);
    if !test(k_max) {
        return None;
    }
    if test(0) {
        return Some(0);
    }
    let (mut lo, mut hi) = (0, k_max);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if test(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Recurrence of w_j = orbit[k + p j], j = 0..=N.
pub(crate) fn recurrent(orbit: &[SpherePoint], k: usize, p: usize, budget: &Budget) -> bool {
    let n = budget.max_iter;
    if n < 4 || k + p * n >= orbit.len() {
        return false;
    }
    let w = |j: usize| orbit[k + p * j];
    let w0 = w(0);
    let mut spread = 0.0f64;
    let mut best = f64::INFINITY;
    let mut q = 0;
    // Leave at least N/4 samples for the uniformity check.
    let q_max = n - n / 4;
    for j in 1..=n {
        let d = chordal(w(j), w0);
        spread = spread.max(d);
        if j <= q_max && d < best {
            best = d;
            q = j;
        }
    }
    if spread == 0.0 || best >= budget.recurrence_tol * spread {
        return false;
    }
    let limit = budget.uniformity_tol * spread;
    (0..=n - q).all(|j| chordal(w(j + q), w(j)) < limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayScan {
    pub base: Complex64,
    pub direction: Complex64,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
}

impl RayScan {
    pub fn point(&self, i: usize) -> Complex64 {
        let s = if self.samples <= 1 {
            0.0
        } else {
            i as f64 / (self.samples - 1) as f64
        };
        let dir = self.direction / self.direction.norm();
        self.base + dir * (self.r_min + (self.r_max - self.r_min) * s)
    }
}

/// Innermost sample on the ray classified as RotationDomain(0) for the return map f^p.
pub fn find_ring_seed(map: &MapSpec, p: usize, scan: &RayScan, budget: &Budget) -> Result<SpherePoint> {
    let budget = budget.with_period(p);
    for i in 0..scan.samples {
        let z = SpherePoint::new(scan.point(i));
        if let Fate::RotationDomain { entry_steps: 0 } = classify_point(map, z, &budget) {
            return Ok(z);
        }
    }
    Err(Error::NoRingFound)
}
