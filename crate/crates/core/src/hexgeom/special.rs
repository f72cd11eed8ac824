//! Dilogarithm and the two log-trigonometric antiderivatives
//! `Λ₁(u) = ∫₀ᵘ ln cosh s ds` and `Λ₂(u) = ∫₀ᵘ ln sinh s ds`.

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// Real dilogarithm `Li₂(x) = Σ xᵏ/k²` on `[-1, 1]`.
///
/// The series is only summed on `[0, 1/2]`; the rest of the interval is
/// folded onto it with the reflection formula (near 1) and Landen's
/// identity (negative arguments).
pub fn dilog(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("dilog argument {x} outside [-1, 1]"));
    }
    Ok(dilog_unchecked(x))
}

fn dilog_unchecked(x: f64) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x == 0.0 {
        0.0
    } else if x < 0.0 {
        // Landen: x/(x-1) lies in (0, 1/2].
        let l = (-x).ln_1p();
        -dilog_unchecked(x / (x - 1.0)) - 0.5 * l * l
    } else if x > 0.5 {
        PI2_6 - x.ln() * (-x).ln_1p() - dilog_series(1.0 - x)
    } else {
        dilog_series(x)
    }
}

/// Bernoulli-number series in `u = -ln(1-x)`, valid for `0 <= x <= 1/2`.
fn dilog_series(x: f64) -> f64 {
    // B_{2k} / (2k+1)! for k = 1..
    const COEFF: [f64; 10] = [
        1.0 / 36.0,
        -1.0 / 3600.0,
        1.0 / 211_680.0,
        -1.0 / 10_886_400.0,
        1.0 / 526_901_760.0,
        -4.064_761_645_144_225_6e-11,
        8.921_691_020_456_453e-13,
        -1.993_929_586_072_107_6e-14,
        4.518_980_029_619_918e-16,
        -1.035_651_761_218_124_8e-17,
    ];
    let u = -(-x).ln_1p();
    let u2 = u * u;
    let mut sum = u - 0.25 * u2;
    let mut pow = u;
    for c in COEFF {
        pow *= u2;
        sum += c * pow;
    }
    sum
}

/// `Λ₁(u) = ∫₀ᵘ ln cosh s ds`, an odd function of `u`.
pub fn lambda1(u: f64) -> f64 {
    if u < 0.0 {
        return -lambda1(-u);
    }
    if u < 0.05 {
        let u2 = u * u;
        return u
            * u2
            * (1.0 / 6.0 + u2 * (-1.0 / 60.0 + u2 * (1.0 / 315.0 - u2 * 17.0 / 22680.0)));
    }
    0.5 * u * u - u * LN_2 + 0.5 * dilog_unchecked(-(-2.0 * u).exp()) + PI * PI / 24.0
}

/// `Λ₂(u) = ∫₀ᵘ ln sinh s ds` for `u >= 0`; the log singularity at 0 is integrable and `Λ₂(0) = 0`.
pub fn lambda2(u: f64) -> Result<f64> {
    if u.is_nan() || u < 0.0 {
        return domain(format!("lambda2 requires u >= 0, got {u}"));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    Ok(0.5 * u * u - u * LN_2 + 0.5 * dilog_unchecked((-2.0 * u).exp()) - PI2_6 / 2.0)
}

pub fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a - LN_2 + (-2.0 * a).exp().ln_1p()
}

/// `ln sinh u` for `u > 0`.
pub fn ln_sinh(u: f64) -> f64 {
    u - LN_2 + (-(-2.0 * u).exp_m1()).ln()
}

/// `arccosh w = ln(w + sqrt((w-1)(w+1)))`.
pub fn acosh(w: f64) -> f64 {
    (w + ((w - 1.0) * (w + 1.0)).sqrt()).ln()
}

/// `arccosh(1 + d)` without forming `1 + d`.
pub fn acosh1p(d: f64) -> f64 {
    (d + (d * (d + 2.0)).sqrt()).ln_1p()
}
