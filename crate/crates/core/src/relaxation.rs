//! Conditional-gradient solver for the continuous relaxation of the
//! caterpillar assignment problem, with some vertices pinned.
//!
//! The objective depends on the assignment only through the vector of
//! position weights, and is concave there, so the solver works on position
//! weight vectors. Every iterate yields a certified upper bound: the value at
//! the iterate plus the largest gain of the linearization over the feasible
//! set.

use crate::assignment::{
    backbone_quadratic, position_prices, AssignmentMatrix, AssignmentMode, PartialAssignment,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::simplex::{LpStatus, Simplex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationOptions {
    pub max_iterations: usize,
    pub relative_gap: f64,
}

impl Default for RelaxationOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            relative_gap: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RelaxationOutcome {
    /// Smallest certified upper bound seen.
    pub upper: f64,
    /// Relaxation value at the final iterate.
    pub lower: f64,
    pub iterations: usize,
    /// Final iterate as a fractional assignment, when requested.
    pub certificate: Option<AssignmentMatrix>,
}

/// Linear maximization over the pinned polytope.
enum Oracle {
    /// Nothing left to decide.
    Fixed,
    /// All internal vertices pinned: free pendants fill fixed slot counts.
    Transport {
        pendants: Vec<usize>,
        slots: Vec<usize>,
    },
    Lp {
        simplex: Simplex,
        vars: Vec<(usize, usize)>,
    },
}

/// One vertex of the pinned polytope: its position weights and the free
/// entries that produce them.
#[derive(Debug, Clone)]
struct Atom {
    w: Vec<f64>,
    entries: Vec<(usize, usize, f64)>,
    lambda: f64,
}

pub(crate) struct Relaxation<'a> {
    inst: &'a Instance,
    partial: &'a PartialAssignment,
    fixed_w: Vec<f64>,
    oracle: Oracle,
}

impl<'a> Relaxation<'a> {
    pub fn new(inst: &'a Instance, partial: &'a PartialAssignment) -> Result<Self> {
        let (n, q) = (inst.n(), inst.q());
        if partial.n() != n {
            return Err(Error::InconsistentPartial(format!(
                "partial has {} rows, instance has {n} vertices",
                partial.n()
            )));
        }
        let bad = |msg: String| Err(Error::InconsistentPartial(msg));
        let mut internal_at: Vec<Option<usize>> = vec![None; q];
        let mut pendants_at = vec![0usize; q];
        let mut fixed_w = vec![0.0; q];
        let mut free_internal = Vec::new();
        let mut free_pendant = Vec::new();
        for i in 0..n {
            match partial.get(i) {
                Some(k) if k >= q => {
                    return bad(format!("vertex {i} pinned to position {k} >= {q}"))
                }
                Some(k) => {
                    fixed_w[k] += inst.weight(i);
                    if inst.is_internal(i) {
                        if let Some(other) = internal_at[k] {
                            return bad(format!(
                                "internal vertices {other} and {i} share position {k}"
                            ));
                        }
                        internal_at[k] = Some(i);
                    } else {
                        pendants_at[k] += 1;
                    }
                }
                None if inst.is_internal(i) => free_internal.push(i),
                None => free_pendant.push(i),
            }
        }
        let free_positions: Vec<usize> = (0..q).filter(|&k| internal_at[k].is_none()).collect();
        // remaining pendant slots at positions whose internal vertex is pinned
        let mut slots = vec![0usize; q];
        for k in 0..q {
            if let Some(i) = internal_at[k] {
                let used = inst.backbone_neighbours(k) + pendants_at[k];
                if used > inst.degree(i) {
                    return bad(format!(
                        "position {k} holds more pendants than its degree allows"
                    ));
                }
                slots[k] = inst.degree(i) - used;
            }
        }

        let oracle = if free_internal.is_empty() {
            if free_pendant.is_empty() {
                Oracle::Fixed
            } else {
                let total: usize = slots.iter().sum();
                if total != free_pendant.len() {
                    return bad(format!(
                        "{} free pendant slots for {} free pendants",
                        total,
                        free_pendant.len()
                    ));
                }
                Oracle::Transport {
                    pendants: free_pendant,
                    slots,
                }
            }
        } else {
            let max_free_degree = free_internal
                .iter()
                .map(|&i| inst.degree(i))
                .max()
                .unwrap_or(0);
            let mut vars = Vec::new();
            for &i in &free_internal {
                for &k in &free_positions {
                    if inst.degree(i) >= inst.backbone_neighbours(k) + pendants_at[k] {
                        vars.push((i, k));
                    }
                }
            }
            let x_count = vars.len();
            let pendant_positions: Vec<usize> = (0..q)
                .filter(|&k| match internal_at[k] {
                    Some(_) => slots[k] > 0,
                    None => max_free_degree > inst.backbone_neighbours(k) + pendants_at[k],
                })
                .collect();
            for &j in &free_pendant {
                for &k in &pendant_positions {
                    vars.push((j, k));
                }
            }
            let mut column = vec![usize::MAX; n * q];
            for (c, &(v, k)) in vars.iter().enumerate() {
                column[v * q + k] = c;
            }
            let index_of =
                |v: usize, k: usize| Some(column[v * q + k]).filter(|&c| c != usize::MAX);
            let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
            let mut rhs = Vec::new();
            for &i in &free_internal {
                rows.push(
                    free_positions
                        .iter()
                        .filter_map(|&k| index_of(i, k))
                        .map(|c| (c, 1.0))
                        .collect(),
                );
                rhs.push(1.0);
            }
            for &k in &free_positions {
                rows.push(
                    free_internal
                        .iter()
                        .filter_map(|&i| index_of(i, k))
                        .map(|c| (c, 1.0))
                        .collect(),
                );
                rhs.push(1.0);
            }
            for &j in &free_pendant {
                rows.push(
                    pendant_positions
                        .iter()
                        .filter_map(|&k| index_of(j, k))
                        .map(|c| (c, 1.0))
                        .collect(),
                );
                rhs.push(1.0);
            }
            for k in 0..q {
                let mut row: Vec<(usize, f64)> = free_pendant
                    .iter()
                    .filter_map(|&j| index_of(j, k))
                    .map(|c| (c, 1.0))
                    .collect();
                match internal_at[k] {
                    Some(_) => {
                        if slots[k] == 0 {
                            continue;
                        }
                        rows.push(row);
                        rhs.push(slots[k] as f64);
                    }
                    None => {
                        for (c, &(i, kk)) in vars[..x_count].iter().enumerate() {
                            if kk == k {
                                row.push((c, -(inst.degree(i) as f64)));
                            }
                        }
                        rows.push(row);
                        rhs.push(-((inst.backbone_neighbours(k) + pendants_at[k]) as f64));
                    }
                }
            }
            let simplex = Simplex::new(vars.len(), &rows, &rhs).ok_or_else(|| {
                Error::InconsistentPartial(
                    "no fractional completion satisfies the constraints".into(),
                )
            })?;
            Oracle::Lp { simplex, vars }
        };
        Ok(Self {
            inst,
            partial,
            fixed_w,
            oracle,
        })
    }

    fn value(&self, w: &[f64]) -> f64 {
        backbone_quadratic(w) + self.inst.caterpillar_constant()
    }

    /// Vertex maximizing `gradient . w` over the pinned polytope.
    fn linear_max(&mut self, gradient: &[f64]) -> Atom {
        let inst = self.inst;
        let mut w = self.fixed_w.clone();
        let mut entries = Vec::new();
        match &mut self.oracle {
            Oracle::Fixed => {}
            Oracle::Transport { pendants, slots } => {
                let mut order: Vec<usize> = (0..slots.len()).filter(|&k| slots[k] > 0).collect();
                order.sort_by(|&a, &b| gradient[b].total_cmp(&gradient[a]).then(a.cmp(&b)));
                let mut heavy_first = pendants.clone();
                heavy_first
                    .sort_by(|&a, &b| inst.weight(b).total_cmp(&inst.weight(a)).then(a.cmp(&b)));
                let mut next = heavy_first.into_iter();
                for k in order {
                    for _ in 0..slots[k] {
                        let j = next.next().expect("slot count matches pendant count");
                        w[k] += inst.weight(j);
                        entries.push((j, k, 1.0));
                    }
                }
            }
            Oracle::Lp { simplex, vars } => {
                let objective: Vec<f64> = vars
                    .iter()
                    .map(|&(v, k)| inst.weight(v) * gradient[k])
                    .collect();
                let status = simplex.maximize(&objective);
                debug_assert_eq!(status, LpStatus::Optimal);
                for (c, value) in simplex.solution().into_iter().enumerate() {
                    if value > 0.0 {
                        let (v, k) = vars[c];
                        w[k] += inst.weight(v) * value;
                        entries.push((v, k, value));
                    }
                }
            }
        }
        Atom {
            w,
            entries,
            lambda: 0.0,
        }
    }

    /// Runs the solver. With `threshold`, stops as soon as the bound is known
    /// to be at most the threshold, or the relaxation is known to exceed it.
    ///
    /// In cumulative-sum coordinates `S_c = w_1 + .. + w_c` the objective is
    /// a constant minus `|S - mu/2|^2`, so the relaxation is a nearest-point
    /// problem over the image of the polytope. It is solved with Wolfe's
    /// method, which keeps a small set of polytope vertices (the corral) and
    /// the nearest point of their affine hull.
    pub fn solve(
        &mut self,
        options: &RelaxationOptions,
        threshold: Option<f64>,
        want_certificate: bool,
    ) -> RelaxationOutcome {
        let q = self.inst.q();
        let half = self.inst.total_weight() / 2.0;
        let lift = |w: &[f64]| -> Vec<f64> {
            let mut s = 0.0;
            w[..q.saturating_sub(1)]
                .iter()
                .map(|&x| {
                    s += x;
                    s - half
                })
                .collect()
        };
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

        // start from the vertex favoured by spreading free weight evenly
        let free_weight = self.inst.total_weight() - self.fixed_w.iter().sum::<f64>();
        let start: Vec<f64> = self
            .fixed_w
            .iter()
            .map(|&f| f + free_weight / q as f64)
            .collect();
        let mut first = self.linear_max(&position_prices(&start));
        first.lambda = 1.0;
        let mut w = first.w.clone();
        let mut lifted = vec![lift(&first.w)];
        let mut corral = vec![first];

        let mut upper = f64::INFINITY;
        let mut lower = self.value(&w);
        let mut iterations = 0;
        while iterations < options.max_iterations {
            iterations += 1;
            let gradient = position_prices(&w);
            let fw = self.linear_max(&gradient);
            let fw_gap = (dot(&fw.w, &gradient) - dot(&w, &gradient)).max(0.0);
            lower = self.value(&w);
            upper = upper.min(lower + fw_gap);

            if upper - lower <= options.relative_gap * upper.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            if let Some(t) = threshold {
                if upper <= t || lower > t {
                    break;
                }
            }
            if corral.iter().any(|a| same_point(&a.w, &fw.w)) {
                break;
            }
            lifted.push(lift(&fw.w));
            corral.push(fw);

            // minor cycle: move to the affine minimizer, dropping vertices
            // whenever it leaves the convex hull
            loop {
                let Some(alpha) = affine_minimizer(&lifted) else {
                    corral.pop();
                    lifted.pop();
                    break;
                };
                if alpha.iter().all(|&a| a > 1e-12) {
                    for (atom, a) in corral.iter_mut().zip(alpha) {
                        atom.lambda = a;
                    }
                    break;
                }
                let (drop, theta) = corral
                    .iter()
                    .zip(&alpha)
                    .enumerate()
                    .filter(|(_, (_, &a))| a <= 1e-12)
                    .map(|(i, (atom, &a))| (i, atom.lambda / (atom.lambda - a)))
                    .min_by(|x, y| x.1.total_cmp(&y.1))
                    .expect("some coefficient is not positive");
                for (atom, a) in corral.iter_mut().zip(&alpha) {
                    atom.lambda = theta * a + (1.0 - theta) * atom.lambda;
                }
                corral[drop].lambda = 0.0;
                let keep: Vec<bool> = corral.iter().map(|a| a.lambda > 1e-15).collect();
                let mut it = keep.iter();
                corral.retain(|_| *it.next().expect("same length"));
                let mut it = keep.iter();
                lifted.retain(|_| *it.next().expect("same length"));
            }
            let total: f64 = corral.iter().map(|a| a.lambda).sum();
            w = vec![0.0; q];
            for atom in &mut corral {
                atom.lambda /= total;
                for (x, v) in w.iter_mut().zip(&atom.w) {
                    *x += atom.lambda * v;
                }
            }
        }
        lower = lower.max(self.value(&w));
        let upper = upper.max(lower);

        let certificate = want_certificate.then(|| {
            let mut x = AssignmentMatrix::zeros(self.inst.n(), q, AssignmentMode::Fractional);
            for (i, p) in self.partial.positions().iter().enumerate() {
                if let Some(k) = p {
                    x.set(i, *k, 1.0);
                }
            }
            for atom in &corral {
                for &(v, k, value) in &atom.entries {
                    x.set(v, k, x.get(v, k) + atom.lambda * value);
                }
            }
            x
        });
        RelaxationOutcome {
            upper,
            lower,
            iterations,
            certificate,
        }
    }
}

/// Coefficients `a` with `sum a = 1` minimizing `|sum a_i p_i|`, or `None`
/// when the points are affinely dependent.
fn affine_minimizer(points: &[Vec<f64>]) -> Option<Vec<f64>> {
    let m = points.len();
    let size = m + 1;
    let mut a = vec![0.0; size * (size + 1)];
    let at = |r: usize, c: usize| r * (size + 1) + c;
    let mut scale: f64 = 0.0;
    for i in 0..m {
        for j in 0..=i {
            let g: f64 = points[i].iter().zip(&points[j]).map(|(x, y)| x * y).sum();
            a[at(i, j)] = g;
            a[at(j, i)] = g;
        }
        scale = scale.max(a[at(i, i)]);
        a[at(i, m)] = 1.0;
        a[at(m, i)] = 1.0;
    }
    a[at(m, size)] = 1.0;
    let tiny = 1e-13 * scale.max(1.0);
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&r, &s| a[at(r, col)].abs().total_cmp(&a[at(s, col)].abs()))
            .expect("non-empty range");
        if a[at(pivot, col)].abs() <= tiny {
            return None;
        }
        if pivot != col {
            for c in 0..=size {
                a.swap(at(pivot, c), at(col, c));
            }
        }
        for r in 0..size {
            if r != col {
                let f = a[at(r, col)] / a[at(col, col)];
                if f != 0.0 {
                    for c in col..=size {
                        a[at(r, c)] -= f * a[at(col, c)];
                    }
                }
            }
        }
    }
    Some((0..m).map(|i| a[at(i, size)] / a[at(i, i)]).collect())
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= 1e-12 * (1.0 + x.abs()))
}

/// Largest gain of the linearization at `x` over the unpinned polytope,
/// i.e. how far `x` is from certifying itself optimal.
pub(crate) fn linearization_gap(inst: &Instance, w: &[f64]) -> Result<f64> {
    let empty = PartialAssignment::empty(inst.n());
    let mut relax = Relaxation::new(inst, &empty)?;
    let gradient = position_prices(w);
    let vertex = relax.linear_max(&gradient);
    let dot = |v: &[f64]| v.iter().zip(&gradient).map(|(a, b)| a * b).sum::<f64>();
    Ok((dot(&vertex.w) - dot(w)).max(0.0))
}
