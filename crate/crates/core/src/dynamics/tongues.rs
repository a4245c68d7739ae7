//! Parameter search along a one-real-parameter slice by nesting tongues of convergents.

use super::rotation::rank_shift;
use crate::arithmetic::{cf_expand, convergents};
use crate::error::{Error, Result};
use crate::maps::{critical_points, evaluate, quartic_free_critical, u_for_period2, MapSpec};
use crate::sphere::{chordal, SpherePoint};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "slice")]
pub enum ParamSlice {
    /// t ↦ QuarticBlaschke{r, t}
    QuarticT { r: f64, b_exponent: u8, t0: f64, t1: f64 },
    /// s ↦ CubicRat{a, b = re_b + i s, u = u_for_period2(a, b)}
    CubicRatImB { a: Complex64, re_b: f64, im0: f64, im1: f64 },
    ArnoldT { a: f64, t0: f64, t1: f64 },
    CubicBlaschkeT { a: Complex64, t0: f64, t1: f64 },
}

impl ParamSlice {
    pub fn range(&self) -> (f64, f64) {
        match *self {
            ParamSlice::QuarticT { t0, t1, .. } => (t0, t1),
            ParamSlice::CubicRatImB { im0, im1, .. } => (im0, im1),
            ParamSlice::ArnoldT { t0, t1, .. } => (t0, t1),
            ParamSlice::CubicBlaschkeT { t0, t1, .. } => (t0, t1),
        }
    }

    pub fn map_at(&self, s: f64) -> Result<MapSpec> {
        Ok(match *self {
            ParamSlice::QuarticT { r, b_exponent, .. } => MapSpec::QuarticBlaschke { r, t: s, b_exponent },
            ParamSlice::CubicRatImB { a, re_b, .. } => {
                let b = Complex64::new(re_b, s);
                MapSpec::CubicRat { a, b, u: u_for_period2(a, b)? }
            }
            ParamSlice::ArnoldT { a, .. } => MapSpec::Arnold { a, t: s },
            ParamSlice::CubicBlaschkeT { a, .. } => MapSpec::CubicBlaschke { a, t: s },
        })
    }

    pub fn ring_period(&self) -> usize {
        match self {
            ParamSlice::QuarticT { .. } | ParamSlice::CubicRatImB { .. } => 2,
            _ => 1,
        }
    }

    /// The point whose orbit is followed into the tongues.
    pub fn tracked_point(&self, map: &MapSpec) -> SpherePoint {
        match *map {
            MapSpec::QuarticBlaschke { r, t, b_exponent } => {
                let [c1, c2] = quartic_free_critical(r, t, b_exponent);
                SpherePoint::Finite(if c1.norm() <= c2.norm() { c1 } else { c2 })
            }
            MapSpec::CubicRat { .. } => critical_points(map)
                .into_iter()
                .filter_map(|(p, _)| p.finite())
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .map(SpherePoint::Finite)
                .unwrap_or(SpherePoint::Infinity),
            _ => SpherePoint::Finite(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TongueConfig {
    /// f-steps discarded before looking for a cycle.
    pub transient: usize,
    pub initial_samples: usize,
    pub max_samples: usize,
    pub cycle_tol: f64,
}

impl Default for TongueConfig {
    fn default() -> Self {
        TongueConfig {
            transient: 20_000,
            initial_samples: 64,
            max_samples: 4096,
            cycle_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TongueLevel {
    pub level: usize,
    pub p: u128,
    pub q: u128,
    /// Sampled extent of the tongue.
    pub tongue: (f64, f64),
    /// Interval between this tongue and the previous one.
    pub gap: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TongueReport {
    pub value: f64,
    pub levels: Vec<TongueLevel>,
    /// Leading convergent levels with no tongue on the slice, passed over before the first hit.
    pub skipped: Vec<usize>,
}

/// Period and rank of the attracting cycle reached by the tracked orbit, if any.
pub fn tracked_cycle(slice: &ParamSlice, s: f64, cfg: &TongueConfig, max_period: usize) -> Option<(usize, Option<usize>)> {
    let map = slice.map_at(s).ok()?;
    let mut z = slice.tracked_point(&map);
    for _ in 0..cfg.transient {
        z = evaluate(&map, z).ok()?;
    }
    let mut pts = Vec::with_capacity(2 * max_period + 1);
    pts.push(z);
    for _ in 0..2 * max_period {
        z = evaluate(&map, z).ok()?;
        pts.push(z);
    }
    let period = (1..=max_period).find(|&q| (0..q).all(|j| chordal(pts[j], pts[j + q]) < cfg.cycle_tol))?;
    let p_ring = slice.ring_period();
    if period % p_ring != 0 {
        return Some((period, None));
    }
    let q = period / p_ring;
    // Rank shift of the return map on each of the p_ring sub-orbits; keep a consistent one.
    let center = slice.center();
    let rank = (0..p_ring).find_map(|off| {
        let sub: Option<Vec<Complex64>> = (0..q).map(|j| pts[off + j * p_ring].finite().map(|w| w - center)).collect();
        let sub = sub?;
        rank_shift(&sub).filter(|_| consistent_rank(&sub))
    });
    Some((period, rank))
}

fn consistent_rank(points: &[Complex64]) -> bool {
    let m = points.len();
    if m <= 2 {
        return true;
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| crate::sphere::arg_2pi(points[i]).total_cmp(&crate::sphere::arg_2pi(points[j])));
    let mut rank = vec![0usize; m];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let shift = (rank[1] + m - rank[0]) % m;
    (0..m - 1).all(|j| (rank[j + 1] + m - rank[j]) % m == shift)
}

/// Maximal runs of consecutive samples whose tracked orbit lands on a cycle with rotation p/q.
fn runs(slice: &ParamSlice, lo: f64, hi: f64, samples: usize, p: u128, q: u128, cfg: &TongueConfig) -> Vec<(f64, f64)> {
    let p_ring = slice.ring_period();
    let period = q as usize * p_ring;
    let want_rank = (p % q) as usize;
    let pts: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / samples as f64)
        .collect();
    let hits: Vec<bool> = pts
        .par_iter()
        .map(|&s| match tracked_cycle(slice, s, cfg, period) {
            Some((per, Some(rank))) => per == period && rank == want_rank,
            _ => false,
        })
        .collect();
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..=samples {
        let hit = i < samples && hits[i];
        match (hit, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((pts[s], pts[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn find_runs(slice: &ParamSlice, lo: f64, hi: f64, p: u128, q: u128, cfg: &TongueConfig) -> Vec<(f64, f64)> {
    let mut m = cfg.initial_samples;
    loop {
        let r = runs(slice, lo, hi, m, p, q, cfg);
        if !r.is_empty() || m >= cfg.max_samples {
            return r;
        }
        m *= 2;
    }
}

fn widest(r: &[(f64, f64)]) -> Option<(f64, f64)> {
    r.iter().copied().max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)))
}

/// Nests tongues of successive convergents of θ and returns the midpoint of the deepest gap.
///
/// Levels with q = 1 are skipped: their cycles coincide in period with the super-attracting
/// cycle of the ring period. Leading levels whose tongue is absent from the slice (the free
/// critical orbit is captured by a super-attracting basin there) are passed over until the
/// first tongue is found; after that every level must be found.
pub fn find_param_by_tongues(slice: &ParamSlice, theta: f64, depth: usize, cfg: &TongueConfig) -> Result<TongueReport> {
    let cf = cf_expand(theta, depth.max(1))?;
    let conv = convergents(&cf).pairs;
    let (s0, s1) = slice.range();
    let mut levels: Vec<TongueLevel> = Vec::new();
    // Gap between the two most recent tongues; `near` is the edge of the latest tongue.
    let mut gap: Option<(f64, f64)> = None;
    let mut last_tongue: Option<(f64, f64)> = None;
    let mut skipped = Vec::new();
    for (k, &(p, q)) in conv.iter().enumerate() {
        let level = k + 1;
        if q < 2 {
            continue;
        }
        let fail = || Error::TongueNotFound {
            deepest: levels.last().map_or(0, |l| l.level),
        };
        let (tongue, new_gap) = match (last_tongue, gap) {
            (None, _) => match widest(&find_runs(slice, s0, s1, p, q, cfg)) {
                Some(t) => (t, None),
                None => {
                    skipped.push(level);
                    continue;
                }
            },
            (Some(prev), None) => {
                // Second tongue: nearest run anywhere on the slice.
                let r = find_runs(slice, s0, s1, p, q, cfg);
                let mid = 0.5 * (prev.0 + prev.1);
                let t = r
                    .into_iter()
                    .filter(|t| t.1 < prev.0 || t.0 > prev.1)
                    .min_by(|a, b| (0.5 * (a.0 + a.1) - mid).abs().total_cmp(&(0.5 * (b.0 + b.1) - mid).abs()))
                    .ok_or_else(fail)?;
                (t, Some(between(prev, t)))
            }
            (Some(prev), Some(g)) => {
                let t = widest(&find_runs(slice, g.0, g.1, p, q, cfg)).ok_or_else(fail)?;
                (t, Some(between(prev, t)))
            }
        };
        levels.push(TongueLevel {
            level,
            p,
            q,
            tongue,
            gap: new_gap.unwrap_or(tongue),
        });
        last_tongue = Some(tongue);
        gap = new_gap;
    }
    let g = gap.ok_or(Error::TongueNotFound {
        deepest: levels.last().map_or(0, |l| l.level),
    })?;
    Ok(TongueReport {
        value: 0.5 * (g.0 + g.1),
        levels,
        skipped,
    })
}

fn between(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    if a.1 < b.0 {
        (a.1, b.0)
    } else {
        (b.1, a.0)
    }
}
