//! Edge cycles realized as closed normal curves.
//!
//! A normal curve enters a hexagon through one y-slot and leaves through a
//! different one, cutting off the x-arc between them. Fundamental cycles are
//! the connected simple normal curves meeting every edge at most twice; they
//! are found by enumerating intersection vectors `y ∈ {0,1,2}^E` that satisfy
//! the per-hexagon matching conditions and keeping those whose normal curve
//! has a single component.

use serde::{Deserialize, Serialize};

use super::{ArcId, EdgeId, HexComplex, SlotRef};
use crate::error::{Error, Result};

/// Cross `edge` into hexagon `hex` through y-slot `from`, leave through y-slot `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleStep {
    pub edge: EdgeId,
    pub hex: usize,
    pub from: u8,
    pub to: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeCycle {
    steps: Vec<CycleStep>,
}

impl EdgeCycle {
    pub fn from_steps(steps: Vec<CycleStep>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[CycleStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// How many times each edge is crossed.
    pub fn edge_counts(&self, edge_count: usize) -> Vec<u32> {
        let mut c = vec![0; edge_count];
        for s in &self.steps {
            c[s.edge] += 1;
        }
        c
    }

    /// No edge appears more than twice.
    pub fn is_fundamental(&self) -> bool {
        let mut counts = std::collections::HashMap::new();
        self.steps.iter().all(|s| {
            let c = counts.entry(s.edge).or_insert(0);
            *c += 1;
            *c <= 2
        })
    }

    /// Checks that consecutive steps are joined by gluings and that every
    /// step is a corner between two distinct y-slots.
    pub fn validate(&self, c: &HexComplex) -> Result<()> {
        let k = self.steps.len();
        if k == 0 {
            return Err(Error::Invalid("empty edge cycle".into()));
        }
        for (i, s) in self.steps.iter().enumerate() {
            let from = SlotRef::new(s.hex, s.from);
            let to = SlotRef::new(s.hex, s.to);
            if s.from == s.to || !from.is_y() || !to.is_y() {
                return Err(Error::Invalid(format!("step {i} is not a corner arc")));
            }
            if c.slot_edge(from)? != s.edge {
                return Err(Error::Invalid(format!(
                    "step {i} enters through the wrong edge"
                )));
            }
            let next = &self.steps[(i + 1) % k];
            let (p, _) = c.partner(to)?;
            if p != SlotRef::new(next.hex, next.from) {
                return Err(Error::Invalid(format!(
                    "steps {i} and {} are not glued",
                    (i + 1) % k
                )));
            }
        }
        Ok(())
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let k = self.steps.len();
        let steps = (0..k)
            .rev()
            .map(|i| {
                let s = self.steps[i];
                CycleStep {
                    edge: self.steps[(i + 1) % k].edge,
                    hex: s.hex,
                    from: s.to,
                    to: s.from,
                }
            })
            .collect();
        Self { steps }
    }

    /// Lexicographically least rotation of the cycle or its reverse.
    pub fn canonical(&self) -> Self {
        let mut best = self.steps.clone();
        for base in [self.clone(), self.reversed()] {
            let k = base.steps.len();
            for r in 0..k {
                let rot: Vec<_> = (0..k).map(|i| base.steps[(i + r) % k]).collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        Self { steps: best }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleEnumeration {
    pub cycles: Vec<EdgeCycle>,
    pub truncated: bool,
}

impl HexComplex {
    /// x-arc cut off by a corner step: the one adjacent to both of its y-slots.
    pub fn corner_arc(&self, s: &CycleStep) -> ArcId {
        let third = 9 - s.from - s.to; // {1,3,5} minus the other two
        3 * s.hex + (((third + 3) % 6) / 2) as usize
    }

    /// All fundamental edge cycles, up to rotation and reversal, in a
    /// deterministic order. At most `limit` cycles are returned.
    pub fn enumerate_fundamental_cycles(&self, limit: usize) -> CycleEnumeration {
        let m = self.edge_count();
        let mut y = vec![0u8; m];
        let mut out = CycleEnumeration {
            cycles: Vec::new(),
            truncated: false,
        };
        // hexagons whose last edge (in index order) is e
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); m];
        for h in 0..self.hexagon_count() {
            let last = *self.hexagon_edges(h).iter().max().unwrap();
            closing[last].push(h);
        }
        self.search(0, &mut y, &closing, limit, &mut out);
        out
    }

    fn search(
        &self,
        e: usize,
        y: &mut [u8],
        closing: &[Vec<usize>],
        limit: usize,
        out: &mut CycleEnumeration,
    ) -> bool {
        if e == y.len() {
            if y.iter().all(|&v| v == 0) {
                return true;
            }
            if let Some(cycle) = self.connected_normal_curve(y) {
                if out.cycles.len() == limit {
                    out.truncated = true;
                    return false;
                }
                out.cycles.push(cycle.canonical());
            }
            return true;
        }
        for v in 0..=2u8 {
            y[e] = v;
            let ok = closing[e].iter().all(|&h| {
                let n = self.hexagon_edges(h).map(|f| y[f] as i32);
                (n[0] + n[1] + n[2]) % 2 == 0
                    && n[0] + n[1] >= n[2]
                    && n[1] + n[2] >= n[0]
                    && n[2] + n[0] >= n[1]
            });
            if ok && !self.search(e + 1, y, closing, limit, out) {
                y[e] = 0;
                return false;
            }
        }
        y[e] = 0;
        true
    }

    /// The normal multicurve with intersection numbers `y`, if it is connected.
    /// `y` must satisfy the per-hexagon parity and triangle conditions.
    pub(crate) fn connected_normal_curve(&self, y: &[u8]) -> Option<EdgeCycle> {
        let total: usize = y.iter().map(|&v| v as usize).sum();
        let start_edge = y.iter().position(|&v| v > 0)?;
        let count = |s: SlotRef| y[self.edge_at(s.hex, s.pos)] as usize;

        // Point `i` on slot `s` (counted from the slot's start vertex) is
        // joined inside the hexagon to a point on a neighbouring slot.
        let corner = |s: SlotRef, i: usize| -> (SlotRef, usize) {
            let prev = SlotRef::new(s.hex, (s.pos + 4) % 6);
            let next = SlotRef::new(s.hex, (s.pos + 2) % 6);
            let (np, nq, nn) = (count(prev), count(s), count(next));
            let near_start = (np + nq - nn) / 2;
            if i < near_start {
                (prev, np - 1 - i)
            } else {
                (next, nq - 1 - i)
            }
        };
        let cross = |s: SlotRef, i: usize| -> (SlotRef, usize) {
            let (t, reversed) = self.partner(s).expect("y-slot");
            let n = count(s);
            (t, if reversed { i } else { n - 1 - i })
        };

        let (a, _) = self.edge_slots(start_edge);
        let start = (a, 0usize);
        let mut cur = start;
        let mut steps = Vec::new();
        loop {
            let (s, i) = cur;
            let (out_slot, j) = corner(s, i);
            steps.push(CycleStep {
                edge: self.edge_at(s.hex, s.pos),
                hex: s.hex,
                from: s.pos,
                to: out_slot.pos,
            });
            cur = cross(out_slot, j);
            if cur == start {
                break;
            }
            if steps.len() > total {
                return None;
            }
        }
        (steps.len() == total).then(|| EdgeCycle::from_steps(steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sets(en: &CycleEnumeration) -> Vec<Vec<EdgeId>> {
        let mut v: Vec<_> = en
            .cycles
            .iter()
            .map(|c| {
                let mut e = c.edges();
                e.sort();
                e
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn pants_has_three_cuffs() {
        let c = HexComplex::build(&fixtures::pants()).unwrap();
        let en = c.enumerate_fundamental_cycles(100);
        assert!(!en.truncated);
        assert_eq!(sets(&en), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    /// Independent oracle: all closed corner walks with edge multiplicity
    /// <= 2, kept when some ordering of the crossing points along each edge
    /// draws every hexagon's corner arcs as pairwise non-crossing chords.
    fn embeddable_walks(c: &HexComplex) -> Vec<Vec<EdgeId>> {
        let m = c.edge_count();
        let mut walks = std::collections::BTreeSet::new();
        fn extend(
            c: &HexComplex,
            start: SlotRef,
            cur: SlotRef,
            steps: &mut Vec<CycleStep>,
            mult: &mut Vec<u8>,
            walks: &mut std::collections::BTreeSet<Vec<CycleStep>>,
        ) {
            for p in [1u8, 3, 5] {
                if p == cur.pos {
                    continue;
                }
                let out = SlotRef::new(cur.hex, p);
                let e_in = c.slot_edge(cur).unwrap();
                if mult[e_in] == 2 {
                    continue;
                }
                mult[e_in] += 1;
                steps.push(CycleStep {
                    edge: e_in,
                    hex: cur.hex,
                    from: cur.pos,
                    to: p,
                });
                let (next, _) = c.partner(out).unwrap();
                if next == start {
                    walks.insert(
                        EdgeCycle::from_steps(steps.clone())
                            .canonical()
                            .steps
                            .clone(),
                    );
                }
                extend(c, start, next, steps, mult, walks);
                steps.pop();
                mult[e_in] -= 1;
            }
        }
        for h in 0..c.hexagon_count() {
            for p in [1u8, 3, 5] {
                let s0 = SlotRef::new(h, p);
                extend(c, s0, s0, &mut Vec::new(), &mut vec![0; m], &mut walks);
            }
        }
        let mut out = std::collections::BTreeSet::new();
        for w in walks {
            if embeddable(c, &w) {
                let mut e: Vec<_> = w.iter().map(|s| s.edge).collect();
                e.sort();
                out.insert(e);
            }
        }
        out.into_iter().collect()
    }

    fn embeddable(c: &HexComplex, steps: &[CycleStep]) -> bool {
        let k = steps.len();
        let m = c.edge_count();
        // crossing i is where step i enters its hexagon
        let on_edge: Vec<Vec<usize>> = (0..m)
            .map(|e| (0..k).filter(|&i| steps[i].edge == e).collect())
            .collect();
        let doubled: Vec<usize> = (0..m).filter(|&e| on_edge[e].len() == 2).collect();
        'orders: for mask in 0..(1u32 << doubled.len()) {
            // rank[i] = position of crossing i along side a of its edge
            let mut rank = vec![0usize; k];
            for crossings in &on_edge {
                for (r, &i) in crossings.iter().enumerate() {
                    rank[i] = r;
                }
            }
            for (b, &e) in doubled.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    let (i, j) = (on_edge[e][0], on_edge[e][1]);
                    rank.swap(i, j);
                }
            }
            // boundary coordinate of crossing i seen from slot s
            let coord = |i: usize, s: SlotRef| -> f64 {
                let e = steps[i].edge;
                let n = on_edge[e].len();
                let (a, _) = c.edge_slots(e);
                let reversed = c.gluings()[e].reversed;
                let r = if s == a || reversed {
                    rank[i]
                } else {
                    n - 1 - rank[i]
                };
                // self-glued edge: the same slot pair lies in one hexagon
                s.pos as f64 + (r as f64 + 1.0) / (n as f64 + 1.0)
            };
            let chords: Vec<(usize, f64, f64)> = (0..k)
                .map(|i| {
                    let st = steps[i];
                    let j = (i + 1) % k;
                    (
                        st.hex,
                        coord(i, SlotRef::new(st.hex, st.from)),
                        coord(j, SlotRef::new(st.hex, st.to)),
                    )
                })
                .collect();
            for (x, &(h1, a1, b1)) in chords.iter().enumerate() {
                for &(h2, a2, b2) in &chords[x + 1..] {
                    if h1 != h2 {
                        continue;
                    }
                    let (lo, hi) = if a1 < b1 { (a1, b1) } else { (b1, a1) };
                    let inside = |v: f64| v > lo && v < hi;
                    if inside(a2) != inside(b2) {
                        continue 'orders;
                    }
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn enumeration_matches_embeddable_walk_oracle() {
        for spec in [fixtures::pants(), fixtures::one_holed_torus()] {
            let c = HexComplex::build(&spec).unwrap();
            let en = c.enumerate_fundamental_cycles(1000);
            assert_eq!(sets(&en), embeddable_walks(&c));
        }
    }

    #[test]
    fn boundary_cycles_are_enumerated() {
        for (name, spec) in fixtures::all() {
            let c = HexComplex::build(&spec).unwrap();
            let en = c.enumerate_fundamental_cycles(10_000);
            assert!(!en.truncated, "{name}");
            for b in c.boundary_components() {
                assert!(b.cycle.is_fundamental(), "{name}");
                assert!(
                    en.cycles.contains(&b.cycle.canonical()),
                    "{name}: {:?}",
                    b.cycle.edges()
                );
            }
        }
    }

    #[test]
    fn enumerated_cycles_are_valid_and_distinct() {
        for (name, spec) in fixtures::all() {
            let c = HexComplex::build(&spec).unwrap();
            let en = c.enumerate_fundamental_cycles(10_000);
            let mut seen = std::collections::HashSet::new();
            for cyc in &en.cycles {
                cyc.validate(&c).unwrap();
                assert!(cyc.is_fundamental(), "{name}");
                assert!(seen.insert(cyc.clone()), "{name}: duplicate");
                assert_eq!(cyc.canonical(), cyc.reversed().canonical());
            }
        }
    }

    #[test]
    fn truncation_flag() {
        let c = HexComplex::build(&fixtures::four_hexagons()).unwrap();
        let all = c.enumerate_fundamental_cycles(10_000);
        assert!(all.cycles.len() > 2);
        let some = c.enumerate_fundamental_cycles(2);
        assert!(some.truncated);
        assert_eq!(some.cycles.len(), 2);
        assert_eq!(&some.cycles[..], &all.cycles[..2]);
    }

    #[test]
    fn torus_slopes() {
        let c = HexComplex::build(&fixtures::one_holed_torus()).unwrap();
        let en = c.enumerate_fundamental_cycles(100);
        let s = sets(&en);
        for pair in [vec![0, 1], vec![0, 2], vec![1, 2]] {
            assert!(s.contains(&pair), "{s:?}");
        }
    }
}
