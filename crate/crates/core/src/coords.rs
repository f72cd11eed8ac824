//! Length structures, their t-coordinates and E-invariants.

use serde::{Deserialize, Serialize};

use crate::complex::{EdgeCycle, HexComplex};
use crate::error::{domain, Result};

/// A positive length on every x-arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStructure(Vec<f64>);

/// `t(w) = (x(w') + x(w'') − x(w)) / 2` within each hexagon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TCoordinate(Vec<f64>);

/// One real number per edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ECoordinate(Vec<f64>);

impl LengthStructure {
    pub fn new(c: &HexComplex, x: Vec<f64>) -> Result<Self> {
        if x.len() != c.arc_count() {
            return domain(format!(
                "expected {} x-arc lengths, got {}",
                c.arc_count(),
                x.len()
            ));
        }
        if let Some(w) = x.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return domain(format!("x-arc {w} has non-positive length {}", x[w]));
        }
        Ok(Self(x))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl TCoordinate {
    /// Checks only the length; use [`x_of`] to test membership in the domain.
    pub fn new(c: &HexComplex, t: Vec<f64>) -> Result<Self> {
        if t.len() != c.arc_count() {
            return domain(format!(
                "expected {} t-values, got {}",
                c.arc_count(),
                t.len()
            ));
        }
        Ok(Self(t))
    }

    pub(crate) fn from_vec(t: Vec<f64>) -> Self {
        Self(t)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Smallest `t(w) + t(w')` over pairs of x-arcs in a common hexagon.
    pub fn margin(&self, c: &HexComplex) -> f64 {
        (0..c.hexagon_count())
            .flat_map(|h| {
                let [a, b, d] = c.hexagon_arcs(h).map(|w| self.0[w]);
                [a + b, b + d, d + a]
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl ECoordinate {
    pub fn new(c: &HexComplex, z: Vec<f64>) -> Result<Self> {
        if z.len() != c.edge_count() {
            return domain(format!(
                "expected {} edge values, got {}",
                c.edge_count(),
                z.len()
            ));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return domain("E-coordinate values must be finite");
        }
        Ok(Self(z))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, y: &[f64]) -> f64 {
        self.0.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// `Σ z(e_i)` over the edges of a cycle, with repetition.
    pub fn cycle_total(&self, cyc: &EdgeCycle) -> f64 {
        cyc.steps().iter().map(|s| self.0[s.edge]).sum()
    }
}

pub fn t_of(c: &HexComplex, x: &LengthStructure) -> TCoordinate {
    let mut t = vec![0.0; c.arc_count()];
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        let v = arcs.map(|w| x.0[w]);
        for i in 0..3 {
            t[arcs[i]] = 0.5 * (v[(i + 1) % 3] + v[(i + 2) % 3] - v[i]);
        }
    }
    TCoordinate(t)
}

/// `x(w) = t(w') + t(w'')`; fails unless every such sum is positive.
pub fn x_of(c: &HexComplex, t: &TCoordinate) -> Result<LengthStructure> {
    let mut x = vec![0.0; c.arc_count()];
    for h in 0..c.hexagon_count() {
        let arcs = c.hexagon_arcs(h);
        let v = arcs.map(|w| t.0[w]);
        for i in 0..3 {
            x[arcs[i]] = v[(i + 1) % 3] + v[(i + 2) % 3];
        }
    }
    LengthStructure::new(c, x)
}

/// `z(e) = t(w) + t(w')` for the two x-arcs facing `e`.
pub fn e_invariant_of_t(c: &HexComplex, t: &TCoordinate) -> ECoordinate {
    ECoordinate(
        (0..c.edge_count())
            .map(|e| {
                let (p, q) = c.facing_arcs(e);
                t.0[p] + t.0[q]
            })
            .collect(),
    )
}

pub fn e_invariant(c: &HexComplex, x: &LengthStructure) -> ECoordinate {
    e_invariant_of_t(c, &t_of(c, x))
}

/// Half the total length of the x-arcs adjacent to `e` minus those facing it.
pub fn e_invariant_adjacent_minus_facing(c: &HexComplex, x: &LengthStructure) -> ECoordinate {
    ECoordinate(
        (0..c.edge_count())
            .map(|e| {
                let adj: f64 = c.adjacent_arcs(e).iter().map(|&w| x.0[w]).sum();
                let (p, q) = c.facing_arcs(e);
                0.5 * (adj - x.0[p] - x.0[q])
            })
            .collect(),
    )
}

/// `(Σ z(e_i), Σ x(w_i))` where `w_i` is the x-arc cut off between `e_i` and `e_{i+1}`.
/// The two sums agree for every length structure.
pub fn cycle_sum(c: &HexComplex, x: &LengthStructure, cyc: &EdgeCycle) -> (f64, f64) {
    let z = e_invariant(c, x);
    let arcs: f64 = cyc.steps().iter().map(|s| x.0[c.corner_arc(s)]).sum();
    (z.cycle_total(cyc), arcs)
}

/// Total x-arc length of each boundary component.
pub fn boundary_lengths(c: &HexComplex, x: &LengthStructure) -> Vec<f64> {
    c.boundary_components()
        .iter()
        .map(|b| b.arcs.iter().map(|&w| x.0[w]).sum())
        .collect()
}

/// `Σ z(e)` over each boundary edge cycle: the boundary lengths any metric
/// with E-coordinate `z` must have.
pub fn boundary_values(c: &HexComplex, z: &ECoordinate) -> Vec<f64> {
    c.boundary_components()
        .iter()
        .map(|b| z.cycle_total(&b.cycle))
        .collect()
}
