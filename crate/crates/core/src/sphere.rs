//! Points of the Riemann sphere and the chordal metric.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Moduli above this are treated as the point at infinity.
pub const OVERFLOW: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// Non-finite values and moduli above [`OVERFLOW`] become `Infinity`.
    pub fn new(z: Complex64) -> Self {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > OVERFLOW {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(z)
        }
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// The inversion z ↦ 1/z̄.
    pub fn tau(self) -> Self {
        match self {
            SpherePoint::Infinity => SpherePoint::Finite(Complex64::new(0.0, 0.0)),
            SpherePoint::Finite(z) if z.re == 0.0 && z.im == 0.0 => SpherePoint::Infinity,
            SpherePoint::Finite(z) => SpherePoint::new(z / z.norm_sqr()),
        }
    }

    /// z ↦ 1/conj(z) applied to a value, same as `tau`.
    pub fn inv_conj(self) -> Self {
        self.tau()
    }

    pub fn chordal(self, other: SpherePoint) -> f64 {
        chordal(self, other)
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::new(z)
    }
}

/// Chordal distance on the unit-diameter-2 sphere: 2|z−w|/√((1+|z|²)(1+|w|²)).
pub fn chordal(a: SpherePoint, b: SpherePoint) -> f64 {
    match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Finite(z), SpherePoint::Infinity)
        | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / z.norm().hypot(1.0),
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => chordal_finite(z, w),
    }
}

#[inline]
pub fn chordal_finite(z: Complex64, w: Complex64) -> f64 {
    let (a, b) = (z.norm_sqr(), w.norm_sqr());
    // One sqrt when the product of the squared moduli cannot overflow; hypot otherwise.
    if a < 1e150 && b < 1e150 {
        2.0 * ((z - w).norm_sqr() / ((1.0 + a) * (1.0 + b))).sqrt()
    } else {
        2.0 * ((z - w).norm() / z.norm().hypot(1.0)) / w.norm().hypot(1.0)
    }
}

/// Argument in [0, 2π).
pub fn arg_2pi(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        let r = a + std::f64::consts::TAU;
        if r >= std::f64::consts::TAU {
            0.0
        } else {
            r
        }
    } else {
        a
    }
}
