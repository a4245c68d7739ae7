//! Literal parsers for complex numbers, reals, sphere points and windows.

use herman_core::arithmetic::golden;
use herman_core::render::Window;
use herman_core::{Complex64, SpherePoint};

/// Real literal: a float, a fraction `p/q`, or `golden`.
pub fn real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s == "golden" {
        return Ok(golden());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: f64 = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(n / d);
    }
    let v: f64 = s.parse().map_err(|_| format!("not a real number: {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: {s:?}"));
    }
    Ok(v)
}

/// Complex literal "a+bi", "a-bi", "bi", "a", or `golden`; no spaces.
pub fn complex(s: &str) -> Result<Complex64, String> {
    if s.contains(char::is_whitespace) {
        return Err(format!("complex literal must not contain spaces: {s:?}"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|x| Complex64::new(x, 0.0));
    };
    // Split at the last sign that is not a leading sign or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => real(other.strip_prefix('+').unwrap_or(other)).map_err(|_| format!("bad imaginary part in {s:?}"))?,
    };
    let re = real(re).map_err(|_| format!("bad real part in {s:?}"))?;
    Ok(Complex64::new(re, im))
}

/// Sphere point: a complex literal, or `inf`.
pub fn point(s: &str) -> Result<SpherePoint, String> {
    match s {
        "inf" | "infinity" => Ok(SpherePoint::Infinity),
        _ => complex(s).map(SpherePoint::Finite),
    }
}

/// Window "re_min,re_max,im_min,im_max".
pub fn window(s: &str) -> Result<Window, String> {
    let parts: Vec<f64> = s.split(',').map(real).collect::<Result<_, _>>()?;
    let [a, b, c, d] = parts[..] else {
        return Err(format!("window needs four comma-separated numbers, got {s:?}"));
    };
    let w = Window::new(a, b, c, d);
    if !w.is_valid() {
        return Err(format!("degenerate window {s:?}"));
    }
    Ok(w)
}

pub fn positive(s: &str) -> Result<f64, String> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be > 0, got {s:?}"))
    }
}
