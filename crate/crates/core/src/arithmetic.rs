//! Continued fractions, convergents and partial Brjuno sums.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The golden mean (√5−1)/2.
pub fn golden() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub x: f64,
    pub partial_quotients: Vec<u64>,
    /// True when the expansion ended because the remainder vanished.
    pub terminated: bool,
}

impl ContinuedFraction {
    /// Builds [0; a_1, …, a_n], normalizing a trailing 1 into the previous quotient.
    pub fn from_quotients(quotients: &[u64]) -> Self {
        let mut q: Vec<u64> = quotients.to_vec();
        if q.len() > 1 && q.last() == Some(&1) {
            q.pop();
            *q.last_mut().unwrap() += 1;
        }
        ContinuedFraction {
            x: value_of(&q),
            partial_quotients: q,
            terminated: true,
        }
    }
}

fn value_of(q: &[u64]) -> f64 {
    q.iter().rev().fold(0.0, |acc, &a| 1.0 / (a as f64 + acc))
}

/// Gauss-map expansion in floating point.
///
/// Alongside the remainder we carry a bound on its absolute error; a quotient is refused
/// once the remainder is below 1e−12 or its error bound could move the integer part.
pub fn cf_expand(x: f64, n: usize) -> Result<ContinuedFraction> {
    let mut quotients = Vec::with_capacity(n);
    let mut rem = x;
    let mut err = f64::EPSILON * x.abs();
    let mut terminated = false;
    while quotients.len() < n {
        if rem == 0.0 {
            terminated = true;
            break;
        }
        if rem < 1e-12 {
            return Err(Error::PrecisionExhausted { terms: quotients.len() });
        }
        let inv = 1.0 / rem;
        // d(1/x) = dx/x²
        let inv_err = err / (rem * (rem - err).max(f64::MIN_POSITIVE)) + f64::EPSILON * inv;
        let a = inv.floor();
        let frac = inv - a;
        let room = frac.min(1.0 - frac);
        if frac != 0.0 && inv_err >= room {
            return Err(Error::PrecisionExhausted { terms: quotients.len() });
        }
        quotients.push(a as u64);
        rem = frac;
        err = inv_err;
    }
    Ok(ContinuedFraction {
        x,
        partial_quotients: quotients,
        terminated,
    })
}

/// Exact expansion of num/den by the Euclidean algorithm.
pub fn cf_expand_rational(num: u64, den: u64, n: usize) -> ContinuedFraction {
    let mut quotients = Vec::new();
    let (mut p, mut q) = (num % den, den);
    while p != 0 && quotients.len() < n {
        quotients.push(q / p);
        let r = q % p;
        q = p;
        p = r;
    }
    ContinuedFraction {
        x: num as f64 / den as f64,
        partial_quotients: quotients,
        terminated: p == 0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergents {
    /// (p_k, q_k) for k = 1..n.
    pub pairs: Vec<(u128, u128)>,
}

pub fn convergents(cf: &ContinuedFraction) -> Convergents {
    // p_{-1}=1, q_{-1}=0, p_0=0, q_0=1 for [0; a_1, ...].
    let (mut p_prev, mut q_prev) = (1u128, 0u128);
    let (mut p, mut q) = (0u128, 1u128);
    let mut pairs = Vec::with_capacity(cf.partial_quotients.len());
    for &a in &cf.partial_quotients {
        let a = a as u128;
        let (pn, qn) = (a * p + p_prev, a * q + q_prev);
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
        pairs.push((p, q));
    }
    Convergents { pairs }
}

/// Σ_{k=1}^{n} log(q_{k+1})/q_k.
pub fn brjuno_partial(x: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let cf = cf_expand(x, n + 1)?;
    let conv = convergents(&cf);
    let q: Vec<f64> = conv.pairs.iter().map(|&(_, q)| q as f64).collect();
    Ok((0..n.min(q.len().saturating_sub(1)))
        .map(|k| q[k + 1].ln() / q[k])
        .sum())
}
