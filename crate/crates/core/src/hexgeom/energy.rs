//! The hexagon energy `θ` on the cone `H₃`, with its gradient and Hessian.
//!
//! `θ` is the potential of the closed 1-form `Σ ln cosh(y_i/2) dt_i`,
//! normalized by `θ(0) = 0`. It has the closed form
//!
//! ```text
//! 2θ(t) = Λ₁(t₁+t₂+t₃) + Σ Λ₁(t_i) − Λ₂(t₁+t₂) − Λ₂(t₂+t₃) − Λ₂(t₃+t₁)
//! ```

use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::special::{acosh1p, lambda1, lambda2, ln_cosh, ln_sinh};
use super::{t_to_x, TTriple, YTriple, PAIRS};
use crate::error::{domain, Result};

/// Smallest pairwise sum `t_i + t_j` treated as strictly inside the cone.
pub const INTERIOR_MARGIN: f64 = 1e-14;

/// Rounding slack accepted when clamping onto the closed cone.
const CLOSURE_SLACK: f64 = 1e-14;

fn require_interior(t: TTriple) -> Result<()> {
    let m = t.min_pair_sum();
    if m > INTERIOR_MARGIN {
        Ok(())
    } else {
        domain(format!(
            "t = {:?} is not strictly inside H3 (min pair sum {m:e})",
            t.values()
        ))
    }
}

/// `θ(t)` on the closed cone.
pub fn theta(t: TTriple) -> Result<f64> {
    let pairs = t.pair_sums();
    if pairs.iter().any(|&p| p < -CLOSURE_SLACK) {
        return domain(format!("t = {:?} lies outside the closed cone", t.values()));
    }
    let v = t.values();
    let mut twice = lambda1(t.sum()) + v.iter().map(|&c| lambda1(c)).sum::<f64>();
    for p in pairs {
        twice -= lambda2(p.max(0.0))?;
    }
    Ok(0.5 * twice)
}

/// `∂θ/∂t_i = ½ (ln cosh Σt + ln cosh t_i − ln sinh(t_i+t_j) − ln sinh(t_i+t_k))`,
/// valid wherever all pairwise sums are positive.
pub(crate) fn grad_unchecked(t: [f64; 3]) -> [f64; 3] {
    let total = ln_cosh(t[0] + t[1] + t[2]);
    PAIRS.map(|(i, j, k)| {
        0.5 * (total + ln_cosh(t[i]) - ln_sinh(t[i] + t[j]) - ln_sinh(t[i] + t[k]))
    })
}

/// Gradient of `θ`; component `i` equals `ln cosh(y_i / 2)`.
pub fn theta_grad(t: TTriple) -> Result<TTriple> {
    require_interior(t)?;
    Ok(TTriple::new_unchecked(grad_unchecked(t.values())))
}

/// y-edge lengths of the hexagon with t-coordinates `t`, recovered from
/// `cosh(y_i/2) = exp(∂θ/∂t_i)`.
pub fn y_from_t(t: TTriple) -> Result<YTriple> {
    require_interior(t)?;
    let g = grad_unchecked(t.values());
    YTriple::new(g.map(|gi| 2.0 * acosh1p(gi.exp_m1())))
}

/// Hessian of `θ` in t-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexHessian(pub [[f64; 3]; 3]);

impl HexHessian {
    pub fn entry(&self, r: usize, s: usize) -> f64 {
        self.0[r][s]
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|r, s| self.0[r][s])
    }

    pub fn max_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `-H` has positive diagonal and strictly dominates its off-diagonal row sums.
    pub fn negated_is_diagonally_dominant(&self) -> bool {
        (0..3).all(|r| {
            let off: f64 = (0..3).filter(|&s| s != r).map(|s| self.0[r][s].abs()).sum();
            -self.0[r][r] > off
        })
    }
}

/// Closed-form Hessian:
/// off-diagonal `−2A sh_i sh_j`, diagonal `−2A sh_i (sh_j + sh_k + 1)` where
/// `sh_i = sinh²(y_i/2)` and `A = sinh x_i / (sinh² y_i sinh x_j sinh x_k)`.
pub fn theta_hessian(t: TTriple) -> Result<HexHessian> {
    require_interior(t)?;
    hessian_unchecked(t.values()).map(HexHessian)
}

pub(crate) fn hessian_unchecked(tv: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    let t = TTriple::new_unchecked(tv);
    let g = grad_unchecked(tv);
    // sinh²(y/2) = cosh²(y/2) − 1 = e^{2g} − 1
    let sh = g.map(|gi| (2.0 * gi).exp_m1());
    let x = t_to_x(t)?;
    // sinh y = 2 sinh(y/2) cosh(y/2)
    let sinh_y0 = 2.0 * sh[0].sqrt() * g[0].exp();
    let a = x[0].sinh() / (sinh_y0 * sinh_y0 * x[1].sinh() * x[2].sinh());
    let mut h = [[0.0; 3]; 3];
    for (i, j, k) in PAIRS {
        h[i][i] = -2.0 * a * sh[i] * (sh[j] + sh[k] + 1.0);
        h[i][j] = -2.0 * a * sh[i] * sh[j];
        h[j][i] = h[i][j];
    }
    Ok(h)
}

// 10-point Gauss–Legendre rule on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_3,
    0.219_086_362_515_982,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

fn gauss_legendre(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (n, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        acc += w * (f(mid - half * n) + f(mid + half * n));
    }
    acc * half
}

fn form_along(from: [f64; 3], to: [f64; 3], tau: f64) -> f64 {
    let d = [to[0] - from[0], to[1] - from[1], to[2] - from[2]];
    let p = [
        from[0] + tau * d[0],
        from[1] + tau * d[1],
        from[2] + tau * d[2],
    ];
    let g = grad_unchecked(p);
    g[0] * d[0] + g[1] * d[1] + g[2] * d[2]
}

/// `∫ ω` along the straight segment `from → to`.
///
/// A segment leaving the origin is split geometrically toward `τ = 0`,
/// where `ω` has its logarithmic singularity; other segments are split
/// uniformly.
fn segment_integral(from: [f64; 3], to: [f64; 3], pieces: usize) -> f64 {
    let pieces = pieces.max(1);
    let f = |tau| form_along(from, to, tau);
    if from == [0.0; 3] {
        let mut acc = 0.0;
        let mut hi = 1.0;
        for _ in 0..pieces {
            let lo = 0.5 * hi;
            acc += gauss_legendre(lo, hi, f);
            hi = lo;
        }
        acc + gauss_legendre(0.0, hi, f)
    } else {
        let h = 1.0 / pieces as f64;
        (0..pieces)
            .map(|k| gauss_legendre(k as f64 * h, (k + 1) as f64 * h, f))
            .sum()
    }
}

/// `θ(t)` as the line integral of `Σ ln cosh(y_i/2) dt_i` from the origin.
///
/// Independent of the dilogarithm closed form used by [`theta`].
pub fn theta_by_path_integral(t: TTriple, segments: usize) -> Result<f64> {
    if t.values() == [0.0; 3] {
        return Ok(0.0);
    }
    theta_by_polyline(&[TTriple::new_unchecked([0.0; 3]), t], segments)
}

/// Line integral of the same 1-form along a polyline starting at the origin.
/// Every vertex after the first must be strictly inside the cone.
pub fn theta_by_polyline(vertices: &[TTriple], segments: usize) -> Result<f64> {
    match vertices.first() {
        Some(v) if v.values() == [0.0; 3] => {}
        _ => return domain("polyline must start at the origin"),
    }
    if vertices.len() == 1 {
        return Ok(0.0);
    }
    if vertices[1].values() == [0.0; 3] {
        return domain("degenerate first segment");
    }
    let mut acc = 0.0;
    for w in vertices.windows(2) {
        require_interior(w[1])?;
        acc += segment_integral(w[0].values(), w[1].values(), segments);
    }
    Ok(acc)
}
