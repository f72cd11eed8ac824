//! Explicit right-angled hexagons in the hyperboloid model, used to check
//! the cosine law and solved metrics without going through it.
//!
//! Points satisfy `⟨p, p⟩ = −1`, `p₀ > 0` for `⟨a, b⟩ = −a₀b₀ + a₁b₁ + a₂b₂`.

use serde::{Deserialize, Serialize};

use crate::complex::HexComplex;
use crate::hexgeom::{cosine_law_y, XTriple};
use crate::solver::HyperbolicMetric;

pub fn minkowski(a: [f64; 3], b: [f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn combine(a: f64, p: [f64; 3], b: f64, q: [f64; 3]) -> [f64; 3] {
    [
        a * p[0] + b * q[0],
        a * p[1] + b * q[1],
        a * p[2] + b * q[2],
    ]
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = minkowski(v, v).sqrt();
    v.map(|c| c / n)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPoint(pub [f64; 3]);

impl HPoint {
    pub const ORIGIN: HPoint = HPoint([1.0, 0.0, 0.0]);

    /// Rescales onto the upper sheet; `None` for vectors that are not timelike.
    pub fn normalized(v: [f64; 3]) -> Option<Self> {
        let q = -minkowski(v, v);
        (q > 0.0 && v[0] > 0.0).then(|| HPoint(v.map(|c| c / q.sqrt())))
    }

    /// `|⟨p, p⟩ + 1|`.
    pub fn normalization_error(&self) -> f64 {
        (minkowski(self.0, self.0) + 1.0).abs()
    }

    /// `2 asinh(‖p − q‖ / 2)`, which equals `arccosh(−⟨p, q⟩)` but keeps
    /// full relative accuracy for nearby points.
    pub fn distance(&self, q: &HPoint) -> f64 {
        let d = combine(1.0, self.0, -1.0, q.0);
        2.0 * (0.5 * minkowski(d, d).max(0.0).sqrt()).asinh()
    }

    /// Unit tangent at `self` pointing along the geodesic to `q`.
    pub fn direction_to(&self, q: &HPoint) -> [f64; 3] {
        unit(combine(1.0, q.0, minkowski(self.0, q.0), self.0))
    }

    pub fn transformed(&self, m: &Isometry) -> HPoint {
        HPoint(m.apply(self.0))
    }
}

/// A linear map preserving the Minkowski form and the upper sheet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry(pub [[f64; 3]; 3]);

impl Isometry {
    pub fn boost(a: f64) -> Self {
        let (c, s) = (a.cosh(), a.sinh());
        Self([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn rotation(phi: f64) -> Self {
        let (c, s) = (phi.cos(), phi.sin());
        Self([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    }

    pub fn then(&self, next: &Isometry) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| next.0[i][k] * self.0[k][j]).sum();
            }
        }
        Self(out)
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }
}

/// Position and unit tangent of a walker along geodesics.
#[derive(Clone, Copy, Debug)]
struct Frame {
    p: [f64; 3],
    v: [f64; 3],
}

impl Frame {
    fn advance(&self, len: f64) -> Frame {
        let (c, s) = (len.cosh(), len.sinh());
        let p = combine(c, self.p, s, self.v);
        let v = combine(s, self.p, c, self.v);
        // project back onto the hyperboloid and its tangent plane
        let p = HPoint::normalized(p).map_or(p, |h| h.0);
        let v = unit(combine(1.0, v, minkowski(p, v), p));
        Frame { p, v }
    }

    /// Quarter turn in the tangent plane; `sign` chooses the side.
    fn turn(&self, sign: f64) -> Frame {
        let jp = [-self.p[0], self.p[1], self.p[2]];
        let jv = [-self.v[0], self.v[1], self.v[2]];
        let w = [
            jp[1] * jv[2] - jp[2] * jv[1],
            jp[2] * jv[0] - jp[0] * jv[2],
            jp[0] * jv[1] - jp[1] * jv[0],
        ];
        Frame {
            p: self.p,
            v: unit(w).map(|c| sign * c),
        }
    }
}

/// Side lengths by slot: `x₁, y₃, x₂, y₁, x₃, y₂`.
fn slot_lengths(x: XTriple) -> [f64; 6] {
    let y = cosine_law_y(x);
    [x[0], y[2], x[1], y[0], x[2], y[1]]
}

/// Six vertices in cyclic order; side `p` runs from vertex `p` to `p + 1`.
///
/// Sides 0, 1, 2 are laid off forward from the origin and sides 5, 4
/// backward, turning a right angle at each vertex. Side 3 (`y₁`) closes the
/// hexagon and is measured, never prescribed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexRealization {
    pub vertices: [HPoint; 6],
    /// Expected side lengths by slot.
    pub expected: [f64; 6],
}

pub fn realize_hexagon(x: XTriple) -> HexRealization {
    let expected = slot_lengths(x);
    let start = Frame {
        p: HPoint::ORIGIN.0,
        v: [0.0, 1.0, 0.0],
    };
    let mut v = [HPoint::ORIGIN; 6];
    let mut f = start;
    for (k, len) in expected[..3].iter().enumerate() {
        f = f.advance(*len);
        v[k + 1] = HPoint(f.p);
        f = f.turn(1.0);
    }
    let mut b = start.turn(1.0);
    b = b.advance(expected[5]);
    v[5] = HPoint(b.p);
    b = b.turn(-1.0).advance(expected[4]);
    v[4] = HPoint(b.p);
    HexRealization {
        vertices: v,
        expected,
    }
}

impl HexRealization {
    pub fn measured_sides(&self) -> [f64; 6] {
        std::array::from_fn(|k| self.vertices[k].distance(&self.vertices[(k + 1) % 6]))
    }

    pub fn side_residual(&self) -> f64 {
        self.measured_sides()
            .iter()
            .zip(&self.expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|⟨u, w⟩|` for the unit tangents along the two sides at a vertex.
    pub fn angle_residual(&self) -> f64 {
        (0..6)
            .map(|k| {
                let p = &self.vertices[k];
                let u = p.direction_to(&self.vertices[(k + 1) % 6]);
                let w = p.direction_to(&self.vertices[(k + 5) % 6]);
                minkowski(u, w).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn normalization_residual(&self) -> f64 {
        self.vertices
            .iter()
            .map(HPoint::normalization_error)
            .fold(0.0, f64::max)
    }

    pub fn transformed(&self, m: &Isometry) -> Self {
        Self {
            vertices: self.vertices.map(|p| p.transformed(m)),
            expected: self.expected,
        }
    }
}

/// Residuals of one hexagon over the three realizations that close on `y₁`,
/// `y₂` and `y₃` in turn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexCheck {
    /// Measured closing sides: entry `i` is the side opposite `x_i`.
    pub measured_y: [f64; 3],
    pub side_residual: f64,
    pub angle_residual: f64,
}

pub fn check_hexagon(x: XTriple) -> HexCheck {
    let mut measured_y = [0.0; 3];
    let (mut side, mut angle) = (0.0f64, 0.0f64);
    for (i, y) in measured_y.iter_mut().enumerate() {
        let r = realize_hexagon(x.permuted([i, (i + 1) % 3, (i + 2) % 3]));
        *y = r.measured_sides()[3];
        side = side.max(r.side_residual());
        angle = angle.max(r.angle_residual());
    }
    HexCheck {
        measured_y,
        side_residual: side,
        angle_residual: angle,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricVerification {
    pub passed: bool,
    pub tolerance: f64,
    pub hexagons: Vec<HexCheck>,
    /// Per edge, the largest disagreement among the two measured sides and the reported length.
    pub edge_residuals: Vec<f64>,
    pub boundary_residuals: Vec<f64>,
    pub failures: Vec<String>,
}

/// Rebuilds every hexagon of `m` and compares it with the metric's own claims.
pub fn verify_metric(c: &HexComplex, m: &HyperbolicMetric, tol: f64) -> MetricVerification {
    let mut failures = Vec::new();
    let hexagons: Vec<HexCheck> = m.hexagon_x.iter().map(|&x| check_hexagon(x)).collect();
    for (h, hc) in hexagons.iter().enumerate() {
        if hc.side_residual > tol || hc.angle_residual > tol || !hc.side_residual.is_finite() {
            failures.push(format!(
                "hexagon {h}: side residual {:e}, angle residual {:e}",
                hc.side_residual, hc.angle_residual
            ));
        }
    }
    let measured = |s: crate::complex::SlotRef| {
        let i = match s.pos {
            3 => 0,
            5 => 1,
            _ => 2,
        };
        hexagons[s.hex].measured_y[i]
    };
    let edge_residuals: Vec<f64> = (0..c.edge_count())
        .map(|e| {
            let (a, b) = c.edge_slots(e);
            let (ya, yb) = (measured(a), measured(b));
            let y = m.edge_lengths[e];
            (ya - yb).abs().max((ya - y).abs()).max((yb - y).abs())
        })
        .collect();
    for (e, r) in edge_residuals.iter().enumerate() {
        if r.is_nan() || *r > tol {
            failures.push(format!(
                "edge {}: side lengths disagree by {r:e}",
                c.label(e)
            ));
        }
    }
    let boundary_residuals: Vec<f64> = c
        .boundary_components()
        .iter()
        .zip(&m.boundary_lengths)
        .map(|(b, l)| {
            let total: f64 = b
                .arcs
                .iter()
                .map(|&w| {
                    let s = c.arc_slot(w);
                    m.hexagon_x[s.hex][(s.pos / 2) as usize]
                })
                .sum();
            (total - l).abs()
        })
        .collect();
    for (k, r) in boundary_residuals.iter().enumerate() {
        if r.is_nan() || *r > tol {
            failures.push(format!("boundary component {k}: length off by {r:e}"));
        }
    }
    if m.boundary_lengths.len() != c.boundary_count() {
        failures.push("boundary component count does not match".into());
    }
    MetricVerification {
        passed: failures.is_empty(),
        tolerance: tol,
        hexagons,
        edge_residuals,
        boundary_residuals,
        failures,
    }
}
