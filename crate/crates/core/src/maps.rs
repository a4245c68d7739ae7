//! Map families, evaluation on the sphere, derivatives, critical points and poles,
//! plus the parameter constraints that place super-attracting cycles and Siegel multipliers.

use crate::error::{Error, Result};
use crate::poly;
use crate::sphere::SpherePoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum MapSpec {
    /// u z²(z−a)/(1−az) + b
    CubicRat { a: C, b: C, u: C },
    /// u z²(z−α)/(1−ωz) + β with ω = (2α−3)/(α−2)
    NormalizedCubic { alpha: C, beta: C, u: C },
    /// u (z−b)/(z−a) z² e^z
    MeroTwoZeroExp { a: C, b: C, u: C },
    /// e^{2πit} ((z−1/r)/(1−z/r))³ (z−B)/(1−B̄z) with B = r^e e^{−2πit}, e = `b_exponent`
    QuarticBlaschke { r: f64, t: f64, b_exponent: u8 },
    /// ((a−b)/(b e^b)) z²/(z−a) e^z + b
    MeroPoleExp { a: C, b: C },
    /// λ z² e^z
    EntireZ2Exp { lambda: C },
    /// −z e^{z−b} + b
    EntireSiegel2 { b: C },
    /// e^{2πit} z²(z−a)/(1−āz)
    CubicBlaschke { a: C, t: f64 },
    /// e^{2πit} z e^{(a/2)(z−1/z)}
    Arnold { a: f64, t: f64 },
    Quadratic { c: C },
    RigidRotation { theta: f64 },
}

fn cis(x: f64) -> C {
    C::from_polar(1.0, TAU * x)
}

/// Quotient that reports an exactly vanishing denominator as the point at infinity.
fn div(num: C, den: C) -> SpherePoint {
    if den == ZERO {
        SpherePoint::Infinity
    } else {
        SpherePoint::new(num / den)
    }
}

impl MapSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            MapSpec::CubicRat { .. } => "CubicRat",
            MapSpec::NormalizedCubic { .. } => "NormalizedCubic",
            MapSpec::MeroTwoZeroExp { .. } => "MeroTwoZeroExp",
            MapSpec::QuarticBlaschke { .. } => "QuarticBlaschke",
            MapSpec::MeroPoleExp { .. } => "MeroPoleExp",
            MapSpec::EntireZ2Exp { .. } => "EntireZ2Exp",
            MapSpec::EntireSiegel2 { .. } => "EntireSiegel2",
            MapSpec::CubicBlaschke { .. } => "CubicBlaschke",
            MapSpec::Arnold { .. } => "Arnold",
            MapSpec::Quadratic { .. } => "Quadratic",
            MapSpec::RigidRotation { .. } => "RigidRotation",
        }
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(
            self,
            MapSpec::MeroTwoZeroExp { .. }
                | MapSpec::MeroPoleExp { .. }
                | MapSpec::EntireZ2Exp { .. }
                | MapSpec::EntireSiegel2 { .. }
                | MapSpec::Arnold { .. }
        )
    }

    /// Rational families for which ∞ is an attracting fixed point.
    pub fn infinity_attracts(&self) -> bool {
        matches!(
            self,
            MapSpec::CubicRat { .. }
                | MapSpec::NormalizedCubic { .. }
                | MapSpec::CubicBlaschke { .. }
                | MapSpec::Quadratic { .. }
        )
    }

    /// B = r^e e^{−2πit} for the quartic family.
    pub fn quartic_b(r: f64, t: f64, b_exponent: u8) -> C {
        cis(-t) * r.powi(b_exponent as i32)
    }

    pub fn omega(alpha: C) -> C {
        (alpha * 2.0 - 3.0) / (alpha - 2.0)
    }
}

pub fn evaluate(map: &MapSpec, z: SpherePoint) -> Result<SpherePoint> {
    let z = match z {
        SpherePoint::Finite(z) => z,
        SpherePoint::Infinity => return evaluate_at_infinity(map),
    };
    Ok(match *map {
        MapSpec::CubicRat { a, b, u } => rat_cubic(z, a, a, b, u),
        MapSpec::NormalizedCubic { alpha, beta, u } => {
            rat_cubic(z, alpha, MapSpec::omega(alpha), beta, u)
        }
        MapSpec::CubicBlaschke { a, t } => match div(z * z * (z - a), ONE - a.conj() * z) {
            SpherePoint::Finite(w) => SpherePoint::new(cis(t) * w),
            inf => inf,
        },
        MapSpec::MeroTwoZeroExp { a, b, u } => {
            if z == a {
                SpherePoint::Infinity
            } else {
                SpherePoint::new(u * (z - b) / (z - a) * z * z * z.exp())
            }
        }
        MapSpec::QuarticBlaschke { r, t, b_exponent } => quartic(z, r, t, b_exponent),
        MapSpec::MeroPoleExp { a, b } => {
            if z == a {
                SpherePoint::Infinity
            } else {
                let k = (a - b) / (b * b.exp());
                SpherePoint::new(k * z * z / (z - a) * z.exp() + b)
            }
        }
        MapSpec::EntireZ2Exp { lambda } => SpherePoint::new(lambda * z * z * z.exp()),
        MapSpec::EntireSiegel2 { b } => SpherePoint::new(-z * (z - b).exp() + b),
        MapSpec::Arnold { a, t } => {
            if z == ZERO {
                return Err(Error::EssentialSingularity);
            }
            SpherePoint::new(cis(t) * z * ((z - z.inv()) * (a / 2.0)).exp())
        }
        MapSpec::Quadratic { c } => SpherePoint::new(z * z + c),
        MapSpec::RigidRotation { theta } => SpherePoint::new(cis(theta) * z),
    })
}

fn evaluate_at_infinity(map: &MapSpec) -> Result<SpherePoint> {
    match *map {
        MapSpec::QuarticBlaschke { r, t, b_exponent } => {
            let bb = MapSpec::quartic_b(r, t, b_exponent);
            Ok(SpherePoint::new(cis(t) * r.powi(3) / bb.conj()))
        }
        ref m if m.is_transcendental() => Err(Error::EssentialSingularity),
        _ => Ok(SpherePoint::Infinity),
    }
}

/// u z²(z−α)/(1−ωz) + β
fn rat_cubic(z: C, alpha: C, omega: C, beta: C, u: C) -> SpherePoint {
    match div(z * z * (z - alpha), ONE - omega * z) {
        SpherePoint::Finite(w) => SpherePoint::new(u * w + beta),
        inf => inf,
    }
}

fn quartic(z: C, r: f64, t: f64, e: u8) -> SpherePoint {
    let bb = MapSpec::quartic_b(r, t, e);
    let rot = cis(t);
    if z.norm() <= 1.0 {
        let num = (z - 1.0 / r).powi(3) * (z - bb);
        let den = (ONE - z / r).powi(3) * (ONE - bb.conj() * z);
        match div(num, den) {
            SpherePoint::Finite(w) => SpherePoint::new(rot * w),
            inf => inf,
        }
    } else {
        // Same rational function written in w = 1/z.
        let w = z.inv();
        let num = (ONE - w / r).powi(3) * (ONE - bb * w);
        let den = (w - 1.0 / r).powi(3) * (w - bb.conj());
        match div(num, den) {
            SpherePoint::Finite(v) => SpherePoint::new(rot * v),
            inf => inf,
        }
    }
}

pub fn derivative(map: &MapSpec, z: C) -> Result<C> {
    if poles(map).iter().any(|(p, _)| *p == z) {
        return Err(Error::PoleInput);
    }
    Ok(match *map {
        MapSpec::CubicRat { a, u, .. } => u * rat_cubic_factor(z, a, a),
        MapSpec::NormalizedCubic { alpha, u, .. } => {
            u * rat_cubic_factor(z, alpha, MapSpec::omega(alpha))
        }
        MapSpec::CubicBlaschke { a, t } => cis(t) * rat_cubic_factor(z, a, a.conj()),
        MapSpec::MeroTwoZeroExp { a, b, u } => {
            // (Q' + Q) e^z with Q = (z³ − b z²)/(z − a)
            let q = (z * z * z - b * z * z) / (z - a);
            let dq = ((z * z * 3.0 - b * z * 2.0) * (z - a) - (z * z * z - b * z * z))
                / ((z - a) * (z - a));
            u * (dq + q) * z.exp()
        }
        MapSpec::QuarticBlaschke { r, t, b_exponent } => {
            let bb = MapSpec::quartic_b(r, t, b_exponent);
            let n = poly::mul(
                &poly::from_roots(&[C::new(1.0 / r, 0.0); 3]),
                &[-bb, ONE],
            );
            let d1 = [ONE, C::new(-1.0 / r, 0.0)];
            let d = poly::mul(
                &poly::mul(&poly::mul(&d1, &d1), &d1),
                &[ONE, -bb.conj()],
            );
            let (nv, dv) = (poly::eval(&n, z), poly::eval(&d, z));
            let (dn, dd) = (
                poly::eval(&poly::derivative(&n), z),
                poly::eval(&poly::derivative(&d), z),
            );
            cis(t) * (dn * dv - nv * dd) / (dv * dv)
        }
        MapSpec::MeroPoleExp { a, b } => {
            let k = (a - b) / (b * b.exp());
            k * z.exp() * z * (z * z + (ONE - a) * z - a * 2.0) / ((z - a) * (z - a))
        }
        MapSpec::EntireZ2Exp { lambda } => lambda * z * (z + 2.0) * z.exp(),
        MapSpec::EntireSiegel2 { b } => -(ONE + z) * (z - b).exp(),
        MapSpec::Arnold { a, t } => {
            if z == ZERO {
                return Err(Error::EssentialSingularity);
            }
            cis(t) * ((z - z.inv()) * (a / 2.0)).exp() * (ONE + (z + z.inv()) * (a / 2.0))
        }
        MapSpec::Quadratic { .. } => z * 2.0,
        MapSpec::RigidRotation { theta } => cis(theta),
    })
}

/// d/dz [z²(z−α)/(1−ωz)] = z(−2ωz² + (3+αω)z − 2α)/(1−ωz)².
fn rat_cubic_factor(z: C, alpha: C, omega: C) -> C {
    let den = ONE - omega * z;
    z * (-(omega * 2.0) * z * z + (alpha * omega + 3.0) * z - alpha * 2.0) / (den * den)
}

/// Roots of 2ωz² − (3+αω)z + 2α, the finite nonzero critical points of the cubic forms.
fn rat_cubic_free_critical(alpha: C, omega: C) -> [C; 2] {
    poly::quadratic_roots(omega * 2.0, -(alpha * omega + 3.0), alpha * 2.0)
}

/// Critical points with multiplicity. Transcendental families list finite ones only.
pub fn critical_points(map: &MapSpec) -> Vec<(SpherePoint, u32)> {
    let fin = |z: C| SpherePoint::Finite(z);
    match *map {
        MapSpec::CubicRat { a, .. } => {
            let [c1, c2] = rat_cubic_free_critical(a, a);
            vec![(fin(ZERO), 1), (SpherePoint::Infinity, 1), (fin(c1), 1), (fin(c2), 1)]
        }
        MapSpec::NormalizedCubic { alpha, .. } => {
            let [c1, c2] = rat_cubic_free_critical(alpha, MapSpec::omega(alpha));
            vec![(fin(ZERO), 1), (SpherePoint::Infinity, 1), (fin(c1), 1), (fin(c2), 1)]
        }
        MapSpec::CubicBlaschke { a, .. } => {
            let [c1, c2] = rat_cubic_free_critical(a, a.conj());
            vec![(fin(ZERO), 1), (SpherePoint::Infinity, 1), (fin(c1), 1), (fin(c2), 1)]
        }
        MapSpec::MeroTwoZeroExp { a, b, .. } => {
            let cubic = [a * b * 2.0, a * b - a * 3.0 - b, C::new(2.0, 0.0) - a - b, ONE];
            let mut out = vec![(fin(ZERO), 1)];
            if let Ok(rs) = poly::roots(&cubic, 500, 1e-10) {
                out.extend(rs.into_iter().map(|z| (fin(z), 1)));
            }
            out
        }
        MapSpec::QuarticBlaschke { r, t, b_exponent } => {
            let [c1, c2] = quartic_free_critical(r, t, b_exponent);
            vec![
                (fin(C::new(1.0 / r, 0.0)), 2),
                (fin(C::new(r, 0.0)), 2),
                (fin(c1), 1),
                (fin(c2), 1),
            ]
        }
        MapSpec::MeroPoleExp { a, .. } => {
            let s = (ONE + a * 6.0 + a * a).sqrt();
            vec![
                (fin(ZERO), 1),
                (fin((a - 1.0 + s) / 2.0), 1),
                (fin((a - 1.0 - s) / 2.0), 1),
            ]
        }
        MapSpec::EntireZ2Exp { .. } => vec![(fin(ZERO), 1), (fin(C::new(-2.0, 0.0)), 1)],
        MapSpec::EntireSiegel2 { .. } => vec![(fin(C::new(-1.0, 0.0)), 1)],
        MapSpec::Arnold { a, .. } => {
            if a == 0.0 {
                Vec::new()
            } else {
                let h = C::new(a / 2.0, 0.0);
                poly::quadratic_roots(h, ONE, h)
                    .into_iter()
                    .map(|z| (fin(z), 1))
                    .collect()
            }
        }
        MapSpec::Quadratic { .. } => vec![(fin(ZERO), 1), (SpherePoint::Infinity, 1)],
        MapSpec::RigidRotation { .. } => Vec::new(),
    }
}

/// The two critical points of the quartic that are not 1/r or r.
pub fn quartic_free_critical(r: f64, t: f64, b_exponent: u8) -> [C; 2] {
    let bb = MapSpec::quartic_b(r, t, b_exponent);
    let lin = |p: C| vec![-p, ONE];
    let (p1, p2, p3, p4) = (
        lin(C::new(1.0 / r, 0.0)),
        lin(C::new(r, 0.0)),
        lin(bb),
        lin(bb.conj().inv()),
    );
    // Numerator of 3/(z−1/r) − 3/(z−r) + 1/(z−B) − 1/(z−1/B̄) over the common denominator.
    let t1 = poly::scale(&poly::mul(&poly::mul(&p2, &p3), &p4), C::new(3.0, 0.0));
    let t2 = poly::scale(&poly::mul(&poly::mul(&p1, &p3), &p4), C::new(-3.0, 0.0));
    let t3 = poly::mul(&poly::mul(&p1, &p2), &p4);
    let t4 = poly::scale(&poly::mul(&poly::mul(&p1, &p2), &p3), C::new(-1.0, 0.0));
    let num = poly::add(&poly::add(&t1, &t2), &poly::add(&t3, &t4));
    poly::quadratic_roots(num[2], num[1], num[0])
}

pub fn poles(map: &MapSpec) -> Vec<(C, u32)> {
    match *map {
        MapSpec::CubicRat { a, .. } => vec![(a.inv(), 1)],
        MapSpec::NormalizedCubic { alpha, .. } => vec![(MapSpec::omega(alpha).inv(), 1)],
        MapSpec::CubicBlaschke { a, .. } => vec![(a.conj().inv(), 1)],
        MapSpec::MeroTwoZeroExp { a, b, .. } if a != b => vec![(a, 1)],
        MapSpec::QuarticBlaschke { r, t, b_exponent } => {
            let bb = MapSpec::quartic_b(r, t, b_exponent);
            vec![(C::new(r, 0.0), 3), (bb.conj().inv(), 1)]
        }
        MapSpec::MeroPoleExp { a, .. } => vec![(a, 1)],
        _ => Vec::new(),
    }
}

/// u = (ab−1)/(b(b−a)), which makes f(b) = 0 and hence {0, b} a super-attracting 2-cycle.
pub fn u_for_period2(a: C, b: C) -> Result<C> {
    if b == ZERO || b == a {
        return Err(Error::DegenerateParameters("b must differ from 0 and a"));
    }
    Ok((a * b - 1.0) / (b * (b - a)))
}

/// Coefficients (lowest degree first) of the quartic in u whose roots make 0 ↦ b ↦ c ↦ 0.
pub fn period3_quartic(a: C, b: C) -> Result<[C; 5]> {
    if (ONE - a * b) == ZERO {
        return Err(Error::DegenerateParameters("ab = 1 puts the pole at b"));
    }
    let k = b * b * (b - a) / (ONE - a * b);
    let d = b - a;
    Ok([
        b * (ONE - a * b),
        b * b * d - a * b * k,
        b * b * k + b * k * d * 2.0,
        b * k * k * 2.0 + k * k * d,
        k * k * k,
    ])
}

pub fn u_candidates_period3(a: C, b: C) -> Result<Vec<C>> {
    let p = period3_quartic(a, b)?;
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if p[4].norm() <= 1e-14 * scale || scale == 0.0 {
        let lower = poly::trim(&p, 1e-14);
        let lower_degree_roots = if lower.len() > 1 {
            poly::roots(&lower, 500, 1e-10).unwrap_or_default()
        } else {
            Vec::new()
        };
        return Err(Error::DegenerateQuartic { lower_degree_roots });
    }
    poly::roots(&p, 500, 1e-10)
}

const NEWTON_BUDGET: usize = 200;

/// Solves (b+1)e^{−b} = e^{2πiθ} by damped Newton.
pub fn solve_siegel2_b(theta: f64, seed: C) -> Result<C> {
    let target = cis(theta);
    let g = |b: C| (b + 1.0) * (-b).exp() - target;
    let mut b = seed;
    let mut gb = g(b);
    for it in 0..NEWTON_BUDGET {
        if gb.norm() < 1e-13 {
            break;
        }
        let dg = -b * (-b).exp();
        if dg.norm() == 0.0 {
            return Err(Error::NoConvergence {
                iterations: it,
                residual: gb.norm(),
            });
        }
        let step = gb / dg;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=40 {
            let cand = b - step * lambda;
            let gc = g(cand);
            if gc.norm() < gb.norm() {
                b = cand;
                gb = gc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let residual = gb.norm();
    if residual >= 1e-12 {
        return Err(Error::NoConvergence {
            iterations: NEWTON_BUDGET,
            residual,
        });
    }
    if b.norm() < 1e-5 {
        return Err(Error::ZeroSolution);
    }
    Ok(b)
}

/// λ and z* with E_λ(z*) = z* and E_λ'(z*) = e^{2πiθ}: z* = e^{2πiθ} − 2, λ = e^{−z*}/z*.
pub fn siegel_lambda_fixed(theta: f64) -> (C, C) {
    let z = cis(theta) - 2.0;
    ((-z).exp() / z, z)
}

/// Conjugates the normalized cubic by L(z) = κz into the f_{a,b} form.
pub fn rescale_normalized(alpha: C, beta: C, u_norm: C) -> Result<MapSpec> {
    let near = |w: f64| (alpha - w).norm() < 1e-12;
    if near(0.0) || near(1.5) || near(2.0) {
        return Err(Error::SingularRescale);
    }
    let kappa = ((alpha * 2.0 - 3.0) / (alpha * (alpha - 2.0))).sqrt();
    Ok(MapSpec::CubicRat {
        a: alpha * kappa,
        b: beta * kappa,
        u: u_norm / (kappa * kappa),
    })
}

/// Largest chordal distance between h(τz) and τ(h(z)) over the samples.
pub fn tau_symmetry_residual(map: &MapSpec, samples: &[SpherePoint]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in samples {
        let lhs = evaluate(map, z.tau())?;
        let rhs = evaluate(map, z)?.tau();
        worst = worst.max(lhs.chordal(rhs));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fin(z: C) -> SpherePoint {
        SpherePoint::Finite(z)
    }

    #[test]
    fn cubic_rat_at_zero_is_b() {
        let m = MapSpec::CubicRat { a: c(4.0, 0.0), b: c(1.5, -2.0), u: c(0.3, 0.1) };
        assert_eq!(evaluate(&m, fin(ZERO)).unwrap(), fin(c(1.5, -2.0)));
        assert_eq!(evaluate(&m, SpherePoint::Infinity).unwrap(), SpherePoint::Infinity);
        assert_eq!(evaluate(&m, fin(c(0.25, 0.0))).unwrap(), SpherePoint::Infinity);
    }

    #[test]
    fn quartic_zero_at_inverse_radius() {
        let m = MapSpec::QuarticBlaschke { r: 1.0 / 40.0, t: 0.34172383, b_exponent: 2 };
        let v = evaluate(&m, fin(c(40.0, 0.0))).unwrap().finite().unwrap();
        assert!(v.norm() < 1e-300);
    }

    #[test]
    fn quartic_cycles_by_exponent() {
        let r = 1.0 / 40.0;
        let h2 = MapSpec::QuarticBlaschke { r, t: 0.3, b_exponent: 2 };
        let h4 = MapSpec::QuarticBlaschke { r, t: 0.3, b_exponent: 4 };
        let at_inf2 = evaluate(&h2, SpherePoint::Infinity).unwrap().finite().unwrap();
        assert!((at_inf2 - c(r, 0.0)).norm() < 1e-15);
        let at0 = evaluate(&h2, fin(ZERO)).unwrap().finite().unwrap();
        assert!((at0 - c(1.0 / r, 0.0)).norm() < 1e-10);
        let at_inf4 = evaluate(&h4, SpherePoint::Infinity).unwrap().finite().unwrap();
        assert!((at_inf4 - c(1.0 / r, 0.0)).norm() < 1e-10);
        let at0_4 = evaluate(&h4, fin(ZERO)).unwrap().finite().unwrap();
        assert!((at0_4 - c(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mero_pole_and_two_cycle() {
        let (a, b) = (c(0.01, 0.0), c(-1.23796766, -0.16535887));
        let m = MapSpec::MeroPoleExp { a, b };
        assert_eq!(evaluate(&m, fin(a)).unwrap(), SpherePoint::Infinity);
        assert_eq!(evaluate(&m, fin(ZERO)).unwrap(), fin(b));
        let back = evaluate(&m, fin(b)).unwrap().finite().unwrap();
        assert!(back.norm() < 1e-15);
        assert_eq!(poles(&m), vec![(a, 1)]);
    }

    #[test]
    fn transcendental_at_infinity_errors() {
        let m = MapSpec::EntireZ2Exp { lambda: ONE };
        assert_eq!(evaluate(&m, SpherePoint::Infinity), Err(Error::EssentialSingularity));
        assert_eq!(evaluate(&m, fin(ZERO)).unwrap(), fin(ZERO));
        assert_eq!(derivative(&m, c(-2.0, 0.0)).unwrap(), ZERO);
    }

    #[test]
    fn cubic_rat_free_critical_points_match_quadratic_formula() {
        let m = MapSpec::CubicRat { a: c(4.0, 0.0), b: c(1.0, 1.0), u: c(0.5, 0.0) };
        let s = 105f64.sqrt();
        let want = [(19.0 + s) / 16.0, (19.0 - s) / 16.0];
        let cps = critical_points(&m);
        assert_eq!(cps.len(), 4);
        let finite: Vec<C> = cps.iter().filter_map(|(p, _)| p.finite()).filter(|z| z.norm() > 0.0).collect();
        for w in want {
            assert!(finite.iter().any(|z| (z - c(w, 0.0)).norm() < 1e-14));
            assert!(derivative(&m, c(w, 0.0)).unwrap().norm() < 1e-13);
        }
        assert!((finite[0] * finite[1] - ONE).norm() < 1e-14);
    }

    #[test]
    fn mero_pole_critical_points_from_the_quadratic_factor() {
        let a = c(0.01, 0.0);
        let m = MapSpec::MeroPoleExp { a, b: c(-1.23796766, -0.16535887) };
        let s = (1.0 + 6.0 * 0.01 + 1e-4f64).sqrt();
        let cps: Vec<C> = critical_points(&m).iter().filter_map(|(p, _)| p.finite()).collect();
        assert_eq!(cps[0], ZERO);
        assert!((cps[1] - c((0.01 - 1.0 + s) / 2.0, 0.0)).norm() < 1e-15);
        assert!((cps[2] - c((0.01 - 1.0 - s) / 2.0, 0.0)).norm() < 1e-15);
        for z in cps {
            assert!(derivative(&m, z).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn quartic_has_six_critical_points() {
        let m = MapSpec::QuarticBlaschke { r: 0.025, t: 0.34172383, b_exponent: 2 };
        let cps = critical_points(&m);
        assert_eq!(cps.iter().map(|(_, k)| k).sum::<u32>(), 6);
        for (p, _) in cps.iter().skip(2) {
            let z = p.finite().unwrap();
            let scale = derivative(&m, z * 1.01).unwrap().norm();
            assert!(derivative(&m, z).unwrap().norm() < 1e-8 * scale);
        }
        let poles = poles(&m);
        let want = cis(-0.34172383) / (0.025 * 0.025);
        assert!((poles[1].0 - want).norm() < 1e-9);
        assert_eq!(poles[0], (c(0.025, 0.0), 3));
    }

    #[test]
    fn u_for_period2_hand_value() {
        let u = u_for_period2(c(4.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((u - c(-1.75, 0.0)).norm() < 1e-15);
        assert!(u_for_period2(c(4.0, 0.0), c(4.0, 0.0)).is_err());
        assert!(u_for_period2(c(4.0, 0.0), ZERO).is_err());
    }

    #[test]
    fn period3_quartic_degenerates_at_b_equal_a() {
        match u_candidates_period3(c(4.0, 0.0), c(4.0, 0.0)) {
            Err(Error::DegenerateQuartic { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn siegel_lambda_half() {
        let (lambda, z) = siegel_lambda_fixed(0.5);
        assert!((z - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((lambda - c(-(3f64.exp()) / 3.0, 0.0)).norm() < 1e-12);
        let m = MapSpec::EntireZ2Exp { lambda };
        assert!((derivative(&m, z).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn siegel2_theta_zero_is_rejected() {
        assert!(solve_siegel2_b(0.0, c(0.01, 0.01)).is_err());
    }

    #[test]
    fn rescale_examples() {
        let m = rescale_normalized(c(2.5, 0.0), c(1.0, 0.0), ONE).unwrap();
        if let MapSpec::CubicRat { a, .. } = m {
            assert!((a - c(10f64.sqrt(), 0.0)).norm() < 1e-14);
        }
        assert_eq!(rescale_normalized(c(2.0, 0.0), ONE, ONE), Err(Error::SingularRescale));
        assert_eq!(rescale_normalized(c(1.5, 0.0), ONE, ONE), Err(Error::SingularRescale));
        assert_eq!(rescale_normalized(ZERO, ONE, ONE), Err(Error::SingularRescale));
    }

    #[test]
    fn normalized_cubic_critical_point_one() {
        let alpha = c(2.7, 0.4);
        let m = MapSpec::NormalizedCubic { alpha, beta: ONE, u: ONE };
        let cps: Vec<C> = critical_points(&m).iter().filter_map(|(p, _)| p.finite()).collect();
        assert!(cps.iter().any(|z| (z - ONE).norm() < 1e-13));
        let other = alpha / MapSpec::omega(alpha);
        assert!(cps.iter().any(|z| (z - other).norm() < 1e-12));
    }
}
