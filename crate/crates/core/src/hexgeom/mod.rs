//! Geometry of a single colored right-angled hexagon.
//!
//! Sides are labelled so that x-edge `i` is opposite y-edge `i`. The
//! t-coordinates `t_i = (x_j + x_k - x_i) / 2` identify hexagons with the
//! open cone `H₃ = { t : t_i + t_j > 0 }`.

mod energy;
pub mod special;

pub(crate) use energy::{grad_unchecked as energy_grad_unchecked, hessian_unchecked};
pub use energy::{
    theta, theta_by_path_integral, theta_by_polyline, theta_grad, theta_hessian, y_from_t,
    HexHessian, INTERIOR_MARGIN,
};
pub use special::{lambda1, lambda2};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn check_positive(kind: &str, v: [f64; 3]) -> Result<[f64; 3]> {
    if v.iter().all(|c| c.is_finite() && *c > 0.0) {
        Ok(v)
    } else {
        domain(format!(
            "{kind} lengths must be positive and finite, got {v:?}"
        ))
    }
}

/// Lengths of the three x-edges.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XTriple([f64; 3]);

/// Lengths of the three y-edges; `y[i]` is opposite `x[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YTriple([f64; 3]);

/// A point of the closed cone `t_i + t_j >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTriple([f64; 3]);

impl XTriple {
    pub fn new(x: [f64; 3]) -> Result<Self> {
        check_positive("x-edge", x).map(Self)
    }

    pub fn values(&self) -> [f64; 3] {
        self.0
    }

    /// The same hexagon with its labels permuted: result `i` is input `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self(perm.map(|p| self.0[p]))
    }
}

impl YTriple {
    pub fn new(y: [f64; 3]) -> Result<Self> {
        check_positive("y-edge", y).map(Self)
    }

    pub fn values(&self) -> [f64; 3] {
        self.0
    }
}

impl TTriple {
    /// Accepts any point of the closed cone.
    pub fn new(t: [f64; 3]) -> Result<Self> {
        if t.iter().any(|c| !c.is_finite()) {
            return domain(format!("t-coordinates must be finite, got {t:?}"));
        }
        let s = Self(t);
        if s.min_pair_sum() < 0.0 {
            return domain(format!(
                "t = {t:?} lies outside the closed cone t_i + t_j >= 0"
            ));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(t: [f64; 3]) -> Self {
        Self(t)
    }

    pub fn values(&self) -> [f64; 3] {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `[t_1 + t_2, t_2 + t_3, t_3 + t_1]`
    pub fn pair_sums(&self) -> [f64; 3] {
        let t = self.0;
        [t[0] + t[1], t[1] + t[2], t[2] + t[0]]
    }

    pub fn min_pair_sum(&self) -> f64 {
        self.pair_sums().into_iter().fold(f64::INFINITY, f64::min)
    }
}

impl std::ops::Index<usize> for XTriple {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::Index<usize> for YTriple {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::Index<usize> for TTriple {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `arccosh((cosh a_i + cosh a_j cosh a_k) / (sinh a_j sinh a_k))` for each `i`.
///
/// The excess over 1 is formed as `(cosh a_i + cosh(a_j - a_k)) / (sinh a_j sinh a_k)`
/// so that long adjacent sides do not cancel.
fn hexagon_law(a: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, j, k) in PAIRS {
        let excess = (a[i].cosh() + (a[j] - a[k]).cosh()) / (a[j].sinh() * a[k].sinh());
        out[i] = special::acosh1p(excess);
    }
    out
}

/// y-edge lengths of the right-angled hexagon with the given x-edge lengths.
pub fn cosine_law_y(x: XTriple) -> YTriple {
    YTriple(hexagon_law(x.0))
}

/// Inverse of [`cosine_law_y`]. The law is symmetric under swapping colors.
pub fn cosine_law_x(y: YTriple) -> XTriple {
    XTriple(hexagon_law(y.0))
}

/// `sinh(x_1) / sinh(y_1)`; the same value for every index (sine law).
pub fn sine_ratio(x: XTriple) -> f64 {
    sine_ratio_at(x, 0)
}

pub fn sine_ratio_at(x: XTriple, i: usize) -> f64 {
    let y = cosine_law_y(x);
    x[i].sinh() / y[i].sinh()
}

pub fn x_to_t(x: XTriple) -> TTriple {
    let x = x.0;
    TTriple(PAIRS.map(|(i, j, k)| 0.5 * (x[j] + x[k] - x[i])))
}

pub fn t_to_x(t: TTriple) -> Result<XTriple> {
    let t = t.0;
    XTriple::new(PAIRS.map(|(_, j, k)| t[j] + t[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: f64 = 1.316_957_896_924_816_7; // arccosh 2

    #[test]
    fn symmetric_fixed_point() {
        let y = cosine_law_y(XTriple::new([C; 3]).unwrap());
        for v in y.values() {
            assert!((v - C).abs() < 1e-14);
        }
        let x = cosine_law_x(YTriple::new([C; 3]).unwrap());
        for v in x.values() {
            assert!((v - C).abs() < 1e-14);
        }
        assert!((sine_ratio(XTriple::new([C; 3]).unwrap()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unit_triple_against_high_precision_values() {
        // mpmath, 30 digits
        let y = cosine_law_y(XTriple::new([1.0; 3]).unwrap());
        for v in y.values() {
            assert!((v - 1.704_912_832_358_013_7).abs() < 1e-14);
        }
        assert!(
            (sine_ratio(XTriple::new([1.0; 3]).unwrap()) - 0.441_878_225_938_165).abs() < 1e-14
        );

        let y = cosine_law_y(XTriple::new([0.5, 1.2, 2.0]).unwrap()).values();
        let expect = [
            0.916_549_609_106_871_1,
            1.831_842_259_451_881_7,
            2.687_129_632_220_492,
        ];
        for i in 0..3 {
            assert!((y[i] - expect[i]).abs() < 1e-14, "{i}: {}", y[i]);
        }
    }

    #[test]
    fn relabeling_swaps_opposite_sides() {
        let (a, b, c) = (0.7, 1.9, 2.4);
        let y = cosine_law_y(XTriple::new([a, b, c]).unwrap());
        let z = cosine_law_y(XTriple::new([a, c, b]).unwrap());
        assert_eq!(y[0], z[0]);
        assert_eq!(y[1], z[2]);
        assert_eq!(y[2], z[1]);
    }

    #[test]
    fn t_coordinates() {
        assert_eq!(
            x_to_t(XTriple::new([3.0, 4.0, 5.0]).unwrap()).values(),
            [3.0, 2.0, 1.0]
        );
        assert_eq!(x_to_t(XTriple::new([0.8; 3]).unwrap()).values(), [0.4; 3]);
        let x = XTriple::new([0.3, 2.2, 1.7]).unwrap();
        let back = t_to_x(x_to_t(x)).unwrap().values();
        for i in 0..3 {
            assert!((back[i] - x[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(XTriple::new([1.0, 0.0, 1.0]).is_err());
        assert!(YTriple::new([1.0, -2.0, 1.0]).is_err());
        assert!(XTriple::new([1.0, f64::NAN, 1.0]).is_err());
        assert!(TTriple::new([1.0, -1.5, 2.0]).is_err());
        // boundary of the cone is a valid TTriple but not a hexagon
        let t = TTriple::new([1.0, -1.0, 2.0]).unwrap();
        assert!(t_to_x(t).is_err());
    }
}
