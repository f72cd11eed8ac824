//! Which E-coordinates come from hyperbolic metrics.
//!
//! A vector `z` is realizable iff `y·z > 0` for every nonzero `y` in the cone
//!
//! ```text
//! D = { y >= 0 : y_i + y_j >= y_k for the edges e_i, e_j, e_k of every hexagon }
//! ```
//!
//! (Farkas' lemma applied to the length structures with E-invariant `z`).
//! [`check_feasibility`] decides this with one LP over `D ∩ {Σ y = 1}`;
//! [`check_cycles`] is the explicit cycle-by-cycle test against the
//! enumerated fundamental cycles, which generate `D`.

pub mod simplex;

use serde::{Deserialize, Serialize};

use crate::complex::{EdgeCycle, EdgeId, HexComplex};
use crate::coords::{boundary_values, x_of, ECoordinate, TCoordinate};
use crate::error::{Error, Result};
use simplex::{LinearProgram, LpOutcome, Relation};

/// Threshold on the normalized LP minimum.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Inequality description of the cone `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeD {
    edges: usize,
    /// rows `r` with `r · y >= 0`
    rows: Vec<Vec<f64>>,
}

impl ConeD {
    pub fn of(c: &HexComplex) -> Self {
        let m = c.edge_count();
        let mut rows = Vec::with_capacity(3 * c.hexagon_count());
        for h in 0..c.hexagon_count() {
            let e = c.hexagon_edges(h);
            for k in 0..3 {
                let mut r = vec![0.0; m];
                r[e[(k + 1) % 3]] += 1.0;
                r[e[(k + 2) % 3]] += 1.0;
                r[e[k]] -= 1.0;
                rows.push(r);
            }
        }
        Self { edges: m, rows }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// `y >= -tol` componentwise and every triangle row `>= -tol`.
    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        y.len() == self.edges
            && y.iter().all(|&v| v >= -tol)
            && self
                .rows
                .iter()
                .all(|r| r.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() >= -tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Interior,
    /// The LP minimum is within the tolerance of zero.
    Boundary,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// A length structure with E-invariant `z`, in t- and x-coordinates.
    Interior {
        t: Vec<f64>,
        x: Vec<f64>,
        margin: f64,
    },
    /// `direction ∈ D`, normalized to unit sum, with `direction · z = value <= tol`.
    Certificate { direction: Vec<f64>, value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeReport {
    pub feasible: bool,
    pub verdict: Verdict,
    /// `min { y·z : y ∈ D, Σ y = 1 }`
    pub lp_minimum: f64,
    pub witness: Witness,
    /// `Σ z` over each boundary edge cycle.
    pub boundary_values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteriorPoint {
    /// One shift per edge: the two facing t-values are `z/2 + s` and `z/2 − s`.
    pub s: Vec<f64>,
    pub t: TCoordinate,
    /// Smallest pairwise t-sum within a hexagon.
    pub margin: f64,
}

fn cone_minimum(c: &HexComplex, z: &ECoordinate) -> Result<(f64, Vec<f64>)> {
    let cone = ConeD::of(c);
    let m = c.edge_count();
    let mut lp = LinearProgram::minimize(z.values().to_vec());
    for r in cone.rows() {
        lp.constrain(r.clone(), Relation::Ge, 0.0);
    }
    lp.constrain(vec![1.0; m], Relation::Eq, 1.0);
    match lp.solve()? {
        LpOutcome::Optimal { x, .. } => {
            let value = z.dot(&x);
            Ok((value, x))
        }
        other => Err(Error::Lp(format!("cone LP returned {other:?}"))),
    }
}

/// Decides whether `z` lies in the open polytope of realizable E-coordinates.
pub fn check_feasibility(c: &HexComplex, z: &ECoordinate) -> Result<PolytopeReport> {
    let (min, y) = cone_minimum(c, z)?;
    let boundary_values = boundary_values(c, z);
    if min > FEASIBILITY_TOL {
        let p = max_margin_point(c, z)?;
        let x = x_of(c, &p.t)?;
        return Ok(PolytopeReport {
            feasible: true,
            verdict: Verdict::Interior,
            lp_minimum: min,
            witness: Witness::Interior {
                t: p.t.values().to_vec(),
                x: x.values().to_vec(),
                margin: p.margin,
            },
            boundary_values,
        });
    }
    Ok(PolytopeReport {
        feasible: false,
        verdict: if min >= -FEASIBILITY_TOL {
            Verdict::Boundary
        } else {
            Verdict::Infeasible
        },
        lp_minimum: min,
        witness: Witness::Certificate {
            direction: y,
            value: min,
        },
        boundary_values,
    })
}

/// Cycles among `cycles` whose z-sum is not positive, with their sums.
/// A cycle of length `k` counts as violated when its sum is at most `k·tol`,
/// matching the normalization of the LP test.
pub fn check_cycles<'a>(z: &ECoordinate, cycles: &'a [EdgeCycle]) -> Vec<(&'a EdgeCycle, f64)> {
    cycles
        .iter()
        .filter_map(|cyc| {
            let s = z.cycle_total(cyc);
            (s <= FEASIBILITY_TOL * cyc.len() as f64).then_some((cyc, s))
        })
        .collect()
}

fn arc_shift(c: &HexComplex) -> Vec<(EdgeId, f64)> {
    (0..c.arc_count())
        .map(|w| {
            let (e, side) = c.x_to_edge(w);
            (
                e,
                if side == crate::complex::Side::A {
                    1.0
                } else {
                    -1.0
                },
            )
        })
        .collect()
}

/// t-coordinate of the length structure with E-invariant `z` and shifts `s`.
pub fn t_from_shifts(c: &HexComplex, z: &ECoordinate, s: &[f64]) -> TCoordinate {
    let t = arc_shift(c)
        .into_iter()
        .map(|(e, sign)| 0.5 * z.values()[e] + sign * s[e])
        .collect();
    TCoordinate::from_vec(t)
}

/// Shifts recovering a t-coordinate whose E-invariant is `z`.
pub fn shifts_from_t(c: &HexComplex, t: &TCoordinate) -> Vec<f64> {
    (0..c.edge_count())
        .map(|e| {
            let (p, q) = c.facing_arcs(e);
            0.5 * (t.values()[p] - t.values()[q])
        })
        .collect()
}

/// Maximizes the smallest pairwise t-sum over all length structures with E-invariant `z`.
fn max_margin_point(c: &HexComplex, z: &ECoordinate) -> Result<InteriorPoint> {
    let m = c.edge_count();
    // variables: s⁺ (m), s⁻ (m), μ
    let nv = 2 * m + 1;
    let mut obj = vec![0.0; nv];
    obj[2 * m] = -1.0;
    let mut lp = LinearProgram::minimize(obj);
    let shift = arc_shift(c);
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        for k in 0..3 {
            let (p, q) = (arcs[k], arcs[(k + 1) % 3]);
            let mut row = vec![0.0; nv];
            let mut rhs = 0.0;
            for w in [p, q] {
                let (e, sign) = shift[w];
                row[e] += sign;
                row[m + e] -= sign;
                rhs -= 0.5 * z.values()[e];
            }
            row[2 * m] = -1.0;
            lp.constrain(row, Relation::Ge, rhs);
        }
    }
    match lp.solve()? {
        LpOutcome::Optimal { x, .. } => {
            let s: Vec<f64> = (0..m).map(|e| x[e] - x[m + e]).collect();
            let t = t_from_shifts(c, z, &s);
            let margin = t.margin(c);
            if margin <= 0.0 {
                return Err(Error::Lp(format!("max-margin point has margin {margin:e}")));
            }
            Ok(InteriorPoint { s, t, margin })
        }
        other => Err(Error::Lp(format!("margin LP returned {other:?}"))),
    }
}

/// A point of `L_t(z)` with the largest possible margin; errors with the
/// certificate when `z` is not realizable.
pub fn interior_point(c: &HexComplex, z: &ECoordinate) -> Result<InteriorPoint> {
    let report = check_feasibility(c, z)?;
    if !report.feasible {
        return Err(Error::Infeasible(Box::new(report)));
    }
    max_margin_point(c, z)
}

/// Constraints of the polytope as edge lists: boundary equalities and
/// fundamental-cycle inequalities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeDescription {
    pub equalities: Vec<Vec<EdgeId>>,
    pub inequalities: Vec<Vec<EdgeId>>,
    pub truncated: bool,
}

pub fn describe(c: &HexComplex, limit: usize) -> PolytopeDescription {
    let en = c.enumerate_fundamental_cycles(limit);
    PolytopeDescription {
        equalities: c
            .boundary_components()
            .iter()
            .map(|b| b.cycle.edges())
            .collect(),
        inequalities: en.cycles.iter().map(|cyc| cyc.edges()).collect(),
        truncated: en.truncated,
    }
}
