//! Small triangulations used throughout the tests and the CLI examples.

use crate::complex::{Gluing, GluingSpec};

type Pair = ((usize, u8), (usize, u8), bool);

fn spec(hexagons: usize, gluings: &[Pair]) -> GluingSpec {
    GluingSpec {
        hexagons,
        gluings: gluings
            .iter()
            .map(|&(a, b, r)| Gluing::new(a, b, r))
            .collect(),
        labels: None,
    }
}

/// Pair of pants: two hexagons glued slot-to-slot along all three seams.
pub fn pants() -> GluingSpec {
    spec(
        2,
        &[
            ((0, 1), (1, 1), true),
            ((0, 3), (1, 3), true),
            ((0, 5), (1, 5), true),
        ],
    )
}

/// One-holed torus: two hexagons glued with a cyclic shift.
pub fn one_holed_torus() -> GluingSpec {
    spec(
        2,
        &[
            ((0, 1), (1, 3), false),
            ((0, 3), (1, 5), false),
            ((0, 5), (1, 1), false),
        ],
    )
}

/// A four-hexagon surface with `χ = −2`.
pub fn four_hexagons() -> GluingSpec {
    spec(
        4,
        &[
            ((0, 1), (1, 1), false),
            ((0, 3), (2, 3), false),
            ((0, 5), (3, 5), false),
            ((1, 3), (2, 5), false),
            ((1, 5), (3, 1), false),
            ((2, 1), (3, 3), false),
        ],
    )
}

/// Two hexagons, each with two of its own y-slots glued together.
pub fn self_glued() -> GluingSpec {
    spec(
        2,
        &[
            ((0, 1), (0, 3), false),
            ((0, 5), (1, 1), false),
            ((1, 3), (1, 5), false),
        ],
    )
}

pub fn all() -> Vec<(&'static str, GluingSpec)> {
    vec![
        ("pants", pants()),
        ("one-holed-torus", one_holed_torus()),
        ("four-hexagons", four_hexagons()),
        ("self-glued", self_glued()),
    ]
}
