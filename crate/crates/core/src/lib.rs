//! Hyperbolic metrics with geodesic boundary on ideally triangulated
//! surfaces, parameterized by edge coordinates.
//!
//! A triangulation is a set of colored right-angled hexagons glued along
//! their y-edges ([`complex`]). A length structure assigns a length to every
//! x-arc; its E-coordinate assigns a real number to every edge ([`coords`]).
//! The E-coordinates that come from hyperbolic metrics form an explicit
//! convex polytope ([`polytope`]); for any point of it the metric is the
//! unique maximizer of a strictly concave energy built from the hexagon
//! potential `θ` ([`hexgeom`], [`solver`]). [`realize`] rebuilds hexagons in
//! the hyperboloid model to check results independently.

pub mod complex;
pub mod coords;
pub mod error;
pub mod fixtures;
pub mod hexgeom;
pub mod polytope;
pub mod realize;
pub mod solver;

pub use complex::{HexComplex, SlotRef};
pub use error::{Error, Result};
