//! Energy maximization on the slice of length structures with a fixed
//! E-coordinate, and the forward map from edge lengths to E-coordinates.
//!
//! The slice is parametrized by one shift `s_e` per edge: the two x-arcs
//! facing `e` get t-values `z(e)/2 + s_e` and `z(e)/2 − s_e`. Every point of
//! the slice has E-invariant `z` by construction, so the maximization is
//! unconstrained over an open convex set.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{HexComplex, Side};
use crate::coords::{
    boundary_lengths, e_invariant, x_of, ECoordinate, LengthStructure, TCoordinate,
};
use crate::error::{domain, Error, Result};
use crate::hexgeom::{
    cosine_law_x, cosine_law_y, energy_grad_unchecked, hessian_unchecked, special, theta, TTriple,
    XTriple, YTriple,
};
use crate::polytope::{interior_point, shifts_from_t, t_from_shifts};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    /// Sup-norm of the reduced gradient.
    pub gradient_tol: f64,
    /// Largest `|y_a(e) − y_b(e)|` accepted.
    pub mismatch_tol: f64,
    pub max_iterations: usize,
    pub backtrack: f64,
    pub armijo: f64,
    /// Trial points with a pairwise t-sum at or below this are rejected.
    pub margin_floor: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            gradient_tol: 1e-10,
            mismatch_tol: 1e-10,
            max_iterations: 200,
            backtrack: 0.5,
            armijo: 1e-4,
            margin_floor: 1e-12,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.gradient_tol,
            self.mismatch_tol,
            self.armijo,
            self.margin_floor,
        ];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return domain("solver tolerances must be positive");
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return domain(format!(
                "backtracking factor {} not in (0, 1)",
                self.backtrack
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub gradient_norm: f64,
    pub mismatch: f64,
    pub energy: f64,
    /// Energy after each accepted step, starting with the initial point.
    pub energy_history: Vec<f64>,
    /// E-invariant of the final length structure.
    pub achieved: Vec<f64>,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicMetric {
    /// Geodesic length of each edge: the mean of its two hexagon-side values.
    pub edge_lengths: Vec<f64>,
    pub arc_lengths: Vec<f64>,
    pub hexagon_x: Vec<XTriple>,
    pub hexagon_y: Vec<YTriple>,
    pub boundary_lengths: Vec<f64>,
    /// Largest difference between the two side values of an edge.
    pub mismatch: f64,
}

/// `V(t) = Σ θ` over hexagons.
pub fn energy(c: &HexComplex, t: &TCoordinate) -> Result<f64> {
    if t.values().len() != c.arc_count() {
        return domain("t-coordinate has the wrong length");
    }
    let margin = t.margin(c);
    if margin <= 0.0 {
        return domain(format!("t is outside the domain (margin {margin:e})"));
    }
    (0..c.hexagon_count())
        .map(|h| {
            theta(TTriple::new_unchecked(
                c.hexagon_arcs(h).map(|w| t.values()[w]),
            ))
        })
        .sum()
}

/// `(arc, ±1)` for the edge each x-arc faces: `∂t_w/∂s_e`.
fn arc_signs(c: &HexComplex) -> Vec<(usize, f64)> {
    (0..c.arc_count())
        .map(|w| {
            let (e, side) = c.x_to_edge(w);
            (e, if side == Side::A { 1.0 } else { -1.0 })
        })
        .collect()
}

/// `∂θ/∂t_w = ln cosh(y/2)` for every x-arc, hexagon by hexagon.
fn arc_gradient(c: &HexComplex, t: &TCoordinate) -> Vec<f64> {
    let mut g = vec![0.0; c.arc_count()];
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        let gh = energy_grad_unchecked(arcs.map(|w| t.values()[w]));
        for i in 0..3 {
            g[arcs[i]] = gh[i];
        }
    }
    g
}

/// `∂V/∂s_e = ln cosh(y_a(e)/2) − ln cosh(y_b(e)/2)`.
pub fn reduced_gradient(c: &HexComplex, t: &TCoordinate) -> Vec<f64> {
    let g = arc_gradient(c, t);
    let mut out = vec![0.0; c.edge_count()];
    for (w, (e, sign)) in arc_signs(c).into_iter().enumerate() {
        out[e] += sign * g[w];
    }
    out
}

/// Hessian of `V` in the shift variables, assembled from hexagon blocks.
pub fn reduced_hessian(c: &HexComplex, t: &TCoordinate) -> Result<DMatrix<f64>> {
    let signs = arc_signs(c);
    let m = c.edge_count();
    let mut hs = DMatrix::zeros(m, m);
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        let block = hessian_unchecked(arcs.map(|w| t.values()[w]))?;
        for i in 0..3 {
            let (ei, si) = signs[arcs[i]];
            for j in 0..3 {
                let (ej, sj) = signs[arcs[j]];
                hs[(ei, ej)] += si * sj * block[i][j];
            }
        }
    }
    Ok(hs)
}

/// Per edge, the y-lengths seen from its two sides `(a, b)`.
fn side_lengths(c: &HexComplex, t: &TCoordinate) -> Vec<(f64, f64)> {
    let g = arc_gradient(c, t);
    let y = |w: usize| 2.0 * special::acosh1p(g[w].exp_m1());
    (0..c.edge_count())
        .map(|e| {
            let (p, q) = c.facing_arcs(e);
            (y(p), y(q))
        })
        .collect()
}

fn mismatch(c: &HexComplex, t: &TCoordinate) -> f64 {
    side_lengths(c, t)
        .into_iter()
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Newton direction `(−H)⁻¹ g`; steepest ascent if `−H` is not numerically positive definite.
fn ascent_direction(h: DMatrix<f64>, g: &[f64]) -> Vec<f64> {
    let gv = DVector::from_column_slice(g);
    match (-h).cholesky() {
        Some(ch) => ch.solve(&gv).iter().copied().collect(),
        None => g.to_vec(),
    }
}

/// Maximizes `V` on the slice of E-coordinate `z`, starting from the
/// max-margin interior point.
pub fn maximize(
    c: &HexComplex,
    z: &ECoordinate,
    cfg: &SolveConfig,
) -> Result<(TCoordinate, SolveReport)> {
    let start = interior_point(c, z)?;
    maximize_from(c, z, &start.s, cfg)
}

/// Maximizes `V` starting from shifts `s0`, which must lie in the domain.
pub fn maximize_from(
    c: &HexComplex,
    z: &ECoordinate,
    s0: &[f64],
    cfg: &SolveConfig,
) -> Result<(TCoordinate, SolveReport)> {
    cfg.validate()?;
    if s0.len() != c.edge_count() {
        return domain(format!(
            "expected {} shifts, got {}",
            c.edge_count(),
            s0.len()
        ));
    }
    let mut s = s0.to_vec();
    let mut t = t_from_shifts(c, z, &s);
    if t.margin(c) <= cfg.margin_floor {
        return domain("starting point is outside the domain");
    }
    let mut v = energy(c, &t)?;
    let mut history = vec![v];
    let mut grad = reduced_gradient(c, &t);
    let mut iterations = 0;
    let fail = |iterations, gradient, mismatch, reason: String| Error::NonConvergence {
        iterations,
        gradient,
        mismatch,
        reason,
    };
    loop {
        let gnorm = sup(&grad);
        let mis = mismatch(c, &t);
        if gnorm < cfg.gradient_tol && mis < cfg.mismatch_tol {
            let achieved = crate::coords::e_invariant_of_t(c, &t).values().to_vec();
            let report = SolveReport {
                iterations,
                gradient_norm: gnorm,
                mismatch: mis,
                energy: v,
                energy_history: history,
                achieved,
                converged: true,
            };
            return Ok((t, report));
        }
        if iterations >= cfg.max_iterations {
            return Err(fail(
                iterations,
                gnorm,
                mis,
                "iteration limit reached".into(),
            ));
        }
        iterations += 1;
        let d = ascent_direction(reduced_hessian(c, &t)?, &grad);
        let slope: f64 = grad.iter().zip(&d).map(|(a, b)| a * b).sum();
        let mut alpha = 1.0;
        let mut accepted = None;
        let mut boundary_hits = 0;
        while alpha > 1e-30 {
            let trial: Vec<f64> = s.iter().zip(&d).map(|(a, b)| a + alpha * b).collect();
            let tt = t_from_shifts(c, z, &trial);
            if tt.margin(c) <= cfg.margin_floor {
                boundary_hits += 1;
                alpha *= cfg.backtrack;
                continue;
            }
            let vt = energy(c, &tt)?;
            if vt >= v + cfg.armijo * alpha * slope {
                accepted = Some((trial, tt, vt));
                break;
            }
            // At roundoff level the energy cannot resolve the increase; fall
            // back to requiring a smaller gradient.
            let gt = reduced_gradient(c, &tt);
            if (vt - v).abs() <= 1e-14 * (1.0 + v.abs()) && sup(&gt) < gnorm {
                accepted = Some((trial, tt, vt.max(v)));
                break;
            }
            alpha *= cfg.backtrack;
        }
        match accepted {
            Some((ns, nt, nv)) => {
                s = ns;
                t = nt;
                v = nv;
                history.push(v);
                grad = reduced_gradient(c, &t);
            }
            None => {
                let reason = if boundary_hits > 0 {
                    "line search stalled at the domain boundary".to_string()
                } else {
                    "line search found no increase".to_string()
                };
                return Err(fail(iterations, gnorm, mis, reason));
            }
        }
    }
}

/// Largest `α` with `s + α d` still in the open domain (`∞` if unbounded).
pub fn max_step(c: &HexComplex, z: &ECoordinate, s: &[f64], d: &[f64]) -> f64 {
    let t0 = t_from_shifts(c, z, s);
    let signs = arc_signs(c);
    let rate = |w: usize| {
        let (e, sign) = signs[w];
        sign * d[e]
    };
    let mut best = f64::INFINITY;
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        for k in 0..3 {
            let (p, q) = (arcs[k], arcs[(k + 1) % 3]);
            let p0 = t0.values()[p] + t0.values()[q];
            let dp = rate(p) + rate(q);
            if dp < 0.0 {
                best = best.min(p0 / -dp);
            }
        }
    }
    best
}

/// A random point of the domain: from the max-margin point, move a random
/// fraction in `[0.1, 0.9]` of the way to the boundary along a random direction.
pub fn random_start<R: Rng>(c: &HexComplex, z: &ECoordinate, rng: &mut R) -> Result<Vec<f64>> {
    let base = interior_point(c, z)?.s;
    let d: Vec<f64> = (0..c.edge_count())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let reach = max_step(c, z, &base, &d).min(10.0);
    let frac = rng.gen_range(0.1..0.9);
    Ok(base
        .iter()
        .zip(&d)
        .map(|(b, di)| b + frac * reach * di)
        .collect())
}

/// Reads off the metric of a maximizer.
pub fn extract_metric(
    c: &HexComplex,
    t: &TCoordinate,
    cfg: &SolveConfig,
) -> Result<HyperbolicMetric> {
    let x = x_of(c, t)?;
    let sides = side_lengths(c, t);
    let mismatch = sides.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if mismatch > cfg.mismatch_tol {
        return Err(Error::Inconsistent(format!(
            "edge lengths differ across sides by {mismatch:e}"
        )));
    }
    let edge_lengths: Vec<f64> = sides.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    let hexagon_x: Vec<XTriple> = (0..c.hexagon_count())
        .map(|h| XTriple::new(c.hexagon_arcs(h).map(|w| x.values()[w])))
        .collect::<Result<_>>()?;
    let hexagon_y = hexagon_x.iter().map(|&xh| cosine_law_y(xh)).collect();
    Ok(HyperbolicMetric {
        edge_lengths,
        arc_lengths: x.values().to_vec(),
        hexagon_x,
        hexagon_y,
        boundary_lengths: boundary_lengths(c, &x),
        mismatch,
    })
}

/// The length structure of the metric with the given edge lengths: each
/// hexagon is the right-angled hexagon with those y-sides.
pub fn length_structure_of(c: &HexComplex, edge_lengths: &[f64]) -> Result<LengthStructure> {
    if edge_lengths.len() != c.edge_count() {
        return domain(format!(
            "expected {} edge lengths, got {}",
            c.edge_count(),
            edge_lengths.len()
        ));
    }
    let mut x = vec![0.0; c.arc_count()];
    for h in 0..c.hexagon_count() {
        let y = YTriple::new(c.hexagon_edges(h).map(|e| edge_lengths[e]))?;
        let xh = cosine_law_x(y);
        for (i, w) in c.hexagon_arcs(h).into_iter().enumerate() {
            x[w] = xh[i];
        }
    }
    LengthStructure::new(c, x)
}

/// E-coordinate and boundary lengths of the metric with the given edge lengths.
pub fn forward_map(c: &HexComplex, edge_lengths: &[f64]) -> Result<(ECoordinate, Vec<f64>)> {
    let x = length_structure_of(c, edge_lengths)?;
    Ok((e_invariant(c, &x), boundary_lengths(c, &x)))
}

/// Shifts of the point of the slice with the given t-coordinate.
pub fn shifts_of(c: &HexComplex, t: &TCoordinate) -> Vec<f64> {
    shifts_from_t(c, t)
}
