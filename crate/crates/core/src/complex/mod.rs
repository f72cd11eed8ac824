//! Colored hexagons glued along y-edges.
//!
//! Each hexagon has six slots `0..6` in counterclockwise order; even slots
//! are x-edges and odd slots are y-edges. Slot `p` runs from hexagon vertex
//! `p` to vertex `p + 1`, and the slot opposite `p` is `p + 3 (mod 6)`.
//!
//! A gluing pairs two y-slots. With `reversed == false` the start vertex of
//! the first slot is identified with the end vertex of the second (the
//! orientation-coherent choice); with `reversed == true` start goes to start.

mod cycles;

pub use cycles::{CycleEnumeration, CycleStep, EdgeCycle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type EdgeId = usize;
/// Index of an x-arc: `3 * hexagon + slot / 2`.
pub type ArcId = usize;

/// Serialized as `[hex, pos]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, u8)", into = "(usize, u8)")]
pub struct SlotRef {
    pub hex: usize,
    pub pos: u8,
}

impl SlotRef {
    pub fn new(hex: usize, pos: u8) -> Self {
        Self { hex, pos }
    }

    pub fn is_x(&self) -> bool {
        self.pos.is_multiple_of(2)
    }

    pub fn is_y(&self) -> bool {
        self.pos % 2 == 1
    }

    fn key(&self) -> usize {
        6 * self.hex + self.pos as usize
    }
}

impl From<(usize, u8)> for SlotRef {
    fn from((hex, pos): (usize, u8)) -> Self {
        Self { hex, pos }
    }
}

impl From<SlotRef> for (usize, u8) {
    fn from(s: SlotRef) -> Self {
        (s.hex, s.pos)
    }
}

impl std::fmt::Display for SlotRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.hex, self.pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: SlotRef,
    pub b: SlotRef,
    #[serde(default)]
    pub reversed: bool,
}

impl Gluing {
    pub fn new(a: (usize, u8), b: (usize, u8), reversed: bool) -> Self {
        Self {
            a: SlotRef::new(a.0, a.1),
            b: SlotRef::new(b.0, b.1),
            reversed,
        }
    }
}

/// Input description of a triangulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub hexagons: usize,
    pub gluings: Vec<Gluing>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Accept a disconnected complex, recording a warning instead of failing.
    pub allow_disconnected: bool,
}

/// One boundary component: its x-arcs in cyclic order and the induced edge cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCycle {
    pub arcs: Vec<ArcId>,
    pub cycle: EdgeCycle,
}

/// Which of the two glued slots of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct HexComplex {
    hexagons: usize,
    gluings: Vec<Gluing>,
    labels: Vec<String>,
    /// indexed by `SlotRef::key`, `usize::MAX` on x-slots
    slot_edge: Vec<EdgeId>,
    boundary: Vec<BoundaryCycle>,
    components: usize,
    warnings: Vec<String>,
}

impl HexComplex {
    pub fn build(spec: &GluingSpec) -> Result<Self> {
        Self::build_with(spec, BuildOptions::default())
    }

    pub fn build_with(spec: &GluingSpec, opts: BuildOptions) -> Result<Self> {
        let n = spec.hexagons;
        if n == 0 {
            return Err(Error::Invalid("no hexagons".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::Invalid(format!("hexagon count {n} is odd")));
        }
        let mut slot_edge = vec![usize::MAX; 6 * n];
        for (e, g) in spec.gluings.iter().enumerate() {
            for s in [g.a, g.b] {
                if s.hex >= n || s.pos >= 6 {
                    return Err(Error::Invalid(format!("slot {s} does not exist")));
                }
                if s.is_x() {
                    return Err(Error::Invalid(format!(
                        "slot {s} is an x-slot and cannot be glued"
                    )));
                }
                if slot_edge[s.key()] != usize::MAX {
                    return Err(Error::Invalid(format!("slot {s} is glued more than once")));
                }
                slot_edge[s.key()] = e;
            }
        }
        for h in 0..n {
            for pos in [1u8, 3, 5] {
                let s = SlotRef::new(h, pos);
                if slot_edge[s.key()] == usize::MAX {
                    return Err(Error::Invalid(format!("slot {s} is not glued")));
                }
            }
        }
        debug_assert_eq!(spec.gluings.len() * 2, 3 * n);

        let labels = match &spec.labels {
            Some(l) => {
                if l.len() != spec.gluings.len() {
                    return Err(Error::Invalid(format!(
                        "{} labels given for {} edges",
                        l.len(),
                        spec.gluings.len()
                    )));
                }
                let mut seen = std::collections::HashSet::new();
                for name in l {
                    if !seen.insert(name.as_str()) {
                        return Err(Error::Invalid(format!("duplicate edge label {name:?}")));
                    }
                }
                l.clone()
            }
            None => (0..spec.gluings.len()).map(|e| format!("e{e}")).collect(),
        };

        let mut complex = HexComplex {
            hexagons: n,
            gluings: spec.gluings.clone(),
            labels,
            slot_edge,
            boundary: Vec::new(),
            components: 0,
            warnings: Vec::new(),
        };
        complex.components = complex.count_components();
        if complex.components > 1 {
            let msg = format!("complex has {} connected components", complex.components);
            if opts.allow_disconnected {
                complex.warnings.push(msg);
            } else {
                return Err(Error::Invalid(msg));
            }
        }
        complex.boundary = complex.trace_boundary();
        Ok(complex)
    }

    fn count_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.hexagons).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for g in &self.gluings {
            let (ra, rb) = (find(&mut parent, g.a.hex), find(&mut parent, g.b.hex));
            parent[ra] = rb;
        }
        (0..self.hexagons)
            .filter(|&h| find(&mut parent, h) == h)
            .count()
    }

    pub fn hexagon_count(&self) -> usize {
        self.hexagons
    }

    pub fn edge_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn arc_count(&self) -> usize {
        3 * self.hexagons
    }

    pub fn connected_components(&self) -> usize {
        self.components
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: EdgeId) -> &str {
        &self.labels[e]
    }

    /// Edge by label, or by decimal index.
    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.labels.iter().position(|l| l == name).or_else(|| {
            name.parse::<usize>()
                .ok()
                .filter(|&e| e < self.edge_count())
        })
    }

    /// `χ = −n/2`.
    pub fn euler_characteristic(&self) -> i64 {
        -(self.hexagons as i64) / 2
    }

    pub fn edge_slots(&self, e: EdgeId) -> (SlotRef, SlotRef) {
        let g = &self.gluings[e];
        (g.a, g.b)
    }

    pub fn slot_edge(&self, s: SlotRef) -> Result<EdgeId> {
        if !s.is_y() || s.hex >= self.hexagons || s.pos >= 6 {
            return Err(Error::Invalid(format!(
                "{s} is not a y-slot of this complex"
            )));
        }
        Ok(self.slot_edge[s.key()])
    }

    pub(crate) fn edge_at(&self, hex: usize, pos: u8) -> EdgeId {
        self.slot_edge[6 * hex + pos as usize]
    }

    /// The slot glued to `s`, and whether the gluing is reversed.
    pub fn partner(&self, s: SlotRef) -> Result<(SlotRef, bool)> {
        let g = &self.gluings[self.slot_edge(s)?];
        Ok(if g.a == s {
            (g.b, g.reversed)
        } else {
            (g.a, g.reversed)
        })
    }

    pub fn side_of(&self, s: SlotRef) -> Result<(EdgeId, Side)> {
        let e = self.slot_edge(s)?;
        Ok((
            e,
            if self.gluings[e].a == s {
                Side::A
            } else {
                Side::B
            },
        ))
    }

    pub fn opposite_x_slot(&self, s: SlotRef) -> Result<SlotRef> {
        if !s.is_y() || s.hex >= self.hexagons || s.pos >= 6 {
            return Err(Error::Invalid(format!("{s} is not a y-slot")));
        }
        Ok(SlotRef::new(s.hex, (s.pos + 3) % 6))
    }

    pub fn arc_id(&self, s: SlotRef) -> Result<ArcId> {
        if !s.is_x() || s.hex >= self.hexagons || s.pos >= 6 {
            return Err(Error::Invalid(format!("{s} is not an x-slot")));
        }
        Ok(3 * s.hex + (s.pos / 2) as usize)
    }

    pub fn arc_slot(&self, w: ArcId) -> SlotRef {
        SlotRef::new(w / 3, (2 * (w % 3)) as u8)
    }

    /// The x-arcs facing the two sides of `e`, in gluing order `(a, b)`.
    pub fn facing_arcs(&self, e: EdgeId) -> (ArcId, ArcId) {
        let g = &self.gluings[e];
        let face = |s: SlotRef| 3 * s.hex + (((s.pos + 3) % 6) / 2) as usize;
        (face(g.a), face(g.b))
    }

    /// Inverse of [`facing_arcs`](Self::facing_arcs): the edge an x-arc faces, and on which side.
    pub fn x_to_edge(&self, w: ArcId) -> (EdgeId, Side) {
        let s = self.arc_slot(w);
        let y = SlotRef::new(s.hex, (s.pos + 3) % 6);
        self.side_of(y)
            .expect("opposite of an x-slot is a glued y-slot")
    }

    /// The four x-arcs next to the two glued slots of `e`, with multiplicity.
    pub fn adjacent_arcs(&self, e: EdgeId) -> [ArcId; 4] {
        let g = &self.gluings[e];
        let around = |s: SlotRef| {
            let before = 3 * s.hex + ((s.pos + 5) % 6 / 2) as usize;
            let after = 3 * s.hex + ((s.pos + 1) % 6 / 2) as usize;
            [before, after]
        };
        let [p, q] = around(g.a);
        let [r, s] = around(g.b);
        [p, q, r, s]
    }

    /// x-arcs of hexagon `h` at slots 0, 2, 4.
    pub fn hexagon_arcs(&self, h: usize) -> [ArcId; 3] {
        [3 * h, 3 * h + 1, 3 * h + 2]
    }

    /// Edges of hexagon `h` in opposite order to [`hexagon_arcs`](Self::hexagon_arcs):
    /// entry `i` is the edge at the y-slot facing x-arc `i` (slots 3, 5, 1).
    pub fn hexagon_edges(&self, h: usize) -> [EdgeId; 3] {
        [3u8, 5, 1].map(|p| self.edge_at(h, p))
    }

    pub fn boundary_components(&self) -> &[BoundaryCycle] {
        &self.boundary
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// Position on the other side of the gluing matched with vertex `v` of y-slot `s`.
    fn glued_vertex(&self, s: SlotRef, v: u8) -> (usize, u8) {
        let (t, reversed) = self.partner(s).expect("y-slot");
        let at_start = v == s.pos;
        let to_start = at_start == reversed;
        (t.hex, if to_start { t.pos } else { (t.pos + 1) % 6 })
    }

    fn trace_boundary(&self) -> Vec<BoundaryCycle> {
        let x_slot_of = |v: u8| if v.is_multiple_of(2) { v } else { v - 1 };
        let y_slot_of = |v: u8| if v % 2 == 1 { v } else { (v + 5) % 6 };
        let mut seen = vec![false; self.arc_count()];
        let mut out = Vec::new();
        for start in 0..self.arc_count() {
            if seen[start] {
                continue;
            }
            let s0 = self.arc_slot(start);
            let (mut hex, mut arc_pos, mut entry) = (s0.hex, s0.pos, s0.pos);
            let mut arcs = vec![start];
            let mut steps = Vec::new();
            seen[start] = true;
            loop {
                let exit = if entry == arc_pos {
                    (arc_pos + 1) % 6
                } else {
                    arc_pos
                };
                let y = SlotRef::new(hex, y_slot_of(exit));
                let edge = self.edge_at(hex, y.pos);
                let (h2, v2) = self.glued_vertex(y, exit);
                let pos2 = x_slot_of(v2);
                let other = if v2 == pos2 { (pos2 + 1) % 6 } else { pos2 };
                steps.push(CycleStep {
                    edge,
                    hex: h2,
                    from: y_slot_of(v2),
                    to: y_slot_of(other),
                });
                let w = 3 * h2 + (pos2 / 2) as usize;
                if w == start {
                    break;
                }
                seen[w] = true;
                arcs.push(w);
                hex = h2;
                arc_pos = pos2;
                entry = v2;
            }
            out.push(BoundaryCycle {
                arcs,
                cycle: EdgeCycle::from_steps(steps),
            });
        }
        out
    }
}
