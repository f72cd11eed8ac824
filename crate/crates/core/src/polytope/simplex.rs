//! Dense two-phase tableau simplex for small linear programs.
//!
//! Minimizes `c·x` subject to linear rows and `x >= 0`. Entering and
//! leaving variables follow Bland's smallest-index rule, so degenerate
//! pivots cannot cycle.

use crate::error::{Error, Result};

const EPS: f64 = 1e-11;
/// Largest tableau (rows × columns) accepted.
pub const MAX_CELLS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<f64>,
    rel: Relation,
    rhs: f64,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    /// Minimize `objective · x` over `x >= 0`.
    pub fn minimize(objective: Vec<f64>) -> Self {
        Self {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.objective.len(), "row width");
        self.rows.push(Row { coeffs, rel, rhs });
        self
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Tableau::new(self)?.run(&self.objective)
    }
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_orig: usize,
    n_cols: usize,
    /// First artificial column; all later columns are artificial.
    art_start: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Result<Self> {
        let n = lp.objective.len();
        let m = lp.rows.len();
        // rows with rhs < 0 are negated so that the initial basis is feasible
        let normalized: Vec<(f64, Relation)> = lp
            .rows
            .iter()
            .map(|r| {
                let sign = if r.rhs < 0.0 { -1.0 } else { 1.0 };
                let rel = match (r.rel, sign < 0.0) {
                    (Relation::Le, true) => Relation::Ge,
                    (Relation::Ge, true) => Relation::Le,
                    (rel, _) => rel,
                };
                (sign, rel)
            })
            .collect();
        let slacks = normalized
            .iter()
            .filter(|(_, r)| *r != Relation::Eq)
            .count();
        let arts = normalized
            .iter()
            .filter(|(_, r)| *r != Relation::Le)
            .count();
        let art_start = n + slacks;
        let n_cols = art_start + arts;
        if m.saturating_mul(n_cols + 1) > MAX_CELLS {
            return Err(Error::Lp(format!(
                "problem too large: {m} rows x {n_cols} columns"
            )));
        }
        let mut a = vec![vec![0.0; n_cols + 1]; m];
        let mut basis = vec![0; m];
        let (mut slack, mut art) = (n, art_start);
        for (i, (row, &(sign, rel))) in lp.rows.iter().zip(&normalized).enumerate() {
            for (dst, &v) in a[i][..n].iter_mut().zip(&row.coeffs) {
                *dst = sign * v;
            }
            a[i][n_cols] = sign * row.rhs;
            if rel != Relation::Eq {
                a[i][slack] = if rel == Relation::Le { 1.0 } else { -1.0 };
                if rel == Relation::Le {
                    basis[i] = slack;
                }
                slack += 1;
            }
            if rel != Relation::Le {
                a[i][art] = 1.0;
                basis[i] = art;
                art += 1;
            }
        }
        Ok(Self {
            a,
            basis,
            n_orig: n,
            n_cols,
            art_start,
        })
    }

    fn rhs(&self, i: usize) -> f64 {
        self.a[i][self.n_cols]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.a[r][col];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[col] = 0.0;
            }
        }
        self.basis[r] = col;
    }

    /// Reduced costs of `cost` (indexed by column) with respect to the basis.
    fn reduced(&self, cost: &[f64], allowed: usize) -> Vec<f64> {
        let mut d: Vec<f64> = cost[..allowed].to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (j, dj) in d.iter_mut().enumerate() {
                    *dj -= cb * self.a[i][j];
                }
            }
        }
        d
    }

    /// Runs simplex iterations on columns `0..allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<bool> {
        let max_iter = 50 * (self.a.len() + allowed) + 1000;
        for _ in 0..max_iter {
            let d = self.reduced(cost, allowed);
            let scale = 1.0 + cost.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let Some(col) = (0..allowed).find(|&j| d[j] < -EPS * scale) else {
                return Ok(true);
            };
            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.a.len() {
                let aij = self.a[i][col];
                if aij > EPS {
                    let ratio = self.rhs(i) / aij;
                    best = match best {
                        None => Some((ratio, i)),
                        Some((r0, i0)) => {
                            if ratio < r0 - EPS
                                || (ratio <= r0 + EPS && self.basis[i] < self.basis[i0])
                            {
                                Some((ratio, i))
                            } else {
                                Some((r0, i0))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Ok(false),
                Some((_, r)) => self.pivot(r, col),
            }
        }
        Err(Error::Lp("iteration limit reached".into()))
    }

    fn run(mut self, objective: &[f64]) -> Result<LpOutcome> {
        let m = self.a.len();
        if self.n_cols > self.art_start {
            let mut cost = vec![0.0; self.n_cols];
            for c in cost.iter_mut().skip(self.art_start) {
                *c = 1.0;
            }
            self.optimize(&cost, self.n_cols)?;
            let infeas: f64 = (0..m)
                .filter(|&i| self.basis[i] >= self.art_start)
                .map(|i| self.rhs(i))
                .sum();
            let scale = 1.0 + (0..m).map(|i| self.rhs(i).abs()).fold(0.0, f64::max);
            if infeas > 1e-9 * scale {
                return Ok(LpOutcome::Infeasible);
            }
            // drive remaining artificials out of the basis
            let mut i = 0;
            while i < self.a.len() {
                if self.basis[i] >= self.art_start {
                    match (0..self.art_start).find(|&j| self.a[i][j].abs() > 1e-9) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            // redundant row
                            self.a.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![0.0; self.n_cols];
        cost[..self.n_orig].copy_from_slice(objective);
        if !self.optimize(&cost, self.art_start)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![0.0; self.n_orig];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_orig {
                x[b] = self.rhs(i).max(0.0);
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpOutcome::Optimal { value, x })
    }
}
