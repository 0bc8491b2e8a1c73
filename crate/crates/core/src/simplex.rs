//! Dense two-phase primal simplex for small equality-form programs
//! `max c.x  s.t.  A x = b, x >= 0`.
//!
//! The tableau is kept after solving so the objective can be swapped and the
//! program re-optimized from the current basis, which is how the relaxation
//! solver calls it once per iteration.

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-10;
const FEAS_EPS: f64 = 1e-7;

#[derive(Debug, Clone)]
pub(crate) struct Simplex {
    rows: usize,
    vars: usize,
    width: usize,
    tab: Vec<f64>,
    reduced: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LpStatus {
    Optimal,
    Unbounded,
}

impl Simplex {
    /// Builds the tableau and runs phase one. Returns `None` if the program is
    /// infeasible. Each row is a sparse list of `(column, coefficient)`.
    pub fn new(vars: usize, rows: &[Vec<(usize, f64)>], rhs: &[f64]) -> Option<Self> {
        let m = rows.len();
        let width = vars + m + 1;
        let mut tab = vec![0.0; m * width];
        for (r, row) in rows.iter().enumerate() {
            let sign = if rhs[r] < 0.0 { -1.0 } else { 1.0 };
            let line = &mut tab[r * width..(r + 1) * width];
            for &(j, a) in row {
                line[j] += sign * a;
            }
            line[vars + r] = 1.0;
            line[width - 1] = sign * rhs[r];
        }
        let mut lp = Self {
            rows: m,
            vars,
            width,
            tab,
            reduced: vec![0.0; width],
            cost: vec![0.0; vars + m],
            basis: (vars..vars + m).collect(),
        };

        // phase one: maximize minus the sum of artificials
        for j in vars..vars + m {
            lp.cost[j] = -1.0;
        }
        lp.price();
        lp.iterate(true);
        let infeasibility: f64 = lp
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &j)| j >= vars)
            .map(|(r, _)| lp.rhs(r))
            .sum();
        let scale = rhs.iter().fold(1.0f64, |a, b| a.max(b.abs()));
        if infeasibility > FEAS_EPS * scale {
            return None;
        }
        // drive remaining artificials out; rows where that fails are redundant
        for r in 0..m {
            if lp.basis[r] >= vars {
                let line = &lp.tab[r * width..r * width + vars];
                if let Some(j) = (0..vars)
                    .filter(|&j| line[j].abs() > PIVOT_EPS)
                    .max_by(|&a, &b| line[a].abs().total_cmp(&line[b].abs()))
                {
                    lp.pivot(r, j);
                }
            }
        }
        for j in vars..vars + m {
            lp.cost[j] = 0.0;
        }
        Some(lp)
    }

    fn rhs(&self, r: usize) -> f64 {
        self.tab[r * self.width + self.width - 1]
    }

    /// Recomputes reduced costs `c_j - c_B B^-1 A_j` from scratch.
    fn price(&mut self) {
        let w = self.width;
        self.reduced[..w - 1].copy_from_slice(&self.cost);
        self.reduced[w - 1] = 0.0;
        for r in 0..self.rows {
            let cb = self.cost[self.basis[r]];
            if cb != 0.0 {
                let line = &self.tab[r * w..(r + 1) * w];
                for (d, &a) in self.reduced.iter_mut().zip(line) {
                    *d -= cb * a;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let inv = 1.0 / self.tab[r * w + e];
        for v in &mut self.tab[r * w..(r + 1) * w] {
            *v *= inv;
        }
        self.tab[r * w + e] = 1.0;
        let (before, rest) = self.tab.split_at_mut(r * w);
        let (pivot_row, after) = rest.split_at_mut(w);
        for line in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = line[e];
            if f != 0.0 {
                for (v, &p) in line.iter_mut().zip(pivot_row.iter()) {
                    *v -= f * p;
                }
                line[e] = 0.0;
            }
        }
        let f = self.reduced[e];
        if f != 0.0 {
            for (v, &p) in self.reduced.iter_mut().zip(pivot_row.iter()) {
                *v -= f * p;
            }
            self.reduced[e] = 0.0;
        }
        self.basis[r] = e;
    }

    fn iterate(&mut self, allow_artificial: bool) -> LpStatus {
        let w = self.width;
        let columns = if allow_artificial { w - 1 } else { self.vars };
        let mut degenerate_run = 0usize;
        let max_iter = 50 * (self.rows + columns) + 1000;
        for _ in 0..max_iter {
            // Dantzig pricing, Bland's rule after a long degenerate streak
            let bland = degenerate_run > self.rows + 10;
            let entering = if bland {
                (0..columns).find(|&j| self.reduced[j] > COST_EPS)
            } else {
                (0..columns)
                    .filter(|&j| self.reduced[j] > COST_EPS)
                    .max_by(|&a, &b| self.reduced[a].total_cmp(&self.reduced[b]))
            };
            let Some(e) = entering else {
                return LpStatus::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.tab[r * w + e];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r).max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some((lr, best)) => {
                            ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return LpStatus::Unbounded;
            };
            if ratio <= 1e-12 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, e);
        }
        LpStatus::Optimal
    }

    /// Re-optimizes for a new objective from the current basis.
    pub fn maximize(&mut self, objective: &[f64]) -> LpStatus {
        debug_assert_eq!(objective.len(), self.vars);
        self.cost[..self.vars].copy_from_slice(objective);
        self.price();
        self.iterate(false)
    }

    pub fn solution(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.vars];
        for (r, &j) in self.basis.iter().enumerate() {
            if j < self.vars {
                x[j] = self.rhs(r).max(0.0);
            }
        }
        x
    }
}
