//! Assignment of vertices to backbone positions.
//!
//! Row `i` of an [`AssignmentMatrix`] says how vertex `i` (canonical order) is
//! spread over the `q` backbone positions. A binary matrix describes a
//! caterpillar; a fractional one a point of the continuous relaxation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

pub const FRACTIONAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignmentMode {
    Binary,
    Fractional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentMatrix {
    n: usize,
    q: usize,
    entries: Vec<f64>,
    mode: AssignmentMode,
}

impl AssignmentMatrix {
    pub fn zeros(n: usize, q: usize, mode: AssignmentMode) -> Self {
        Self {
            n,
            q,
            entries: vec![0.0; n * q],
            mode,
        }
    }

    /// Binary matrix with vertex `i` at position `positions[i]`.
    pub fn from_positions(q: usize, positions: &[usize]) -> Self {
        let mut x = Self::zeros(positions.len(), q, AssignmentMode::Binary);
        for (i, &k) in positions.iter().enumerate() {
            x.set(i, k, 1.0);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn mode(&self) -> AssignmentMode {
        self.mode
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.entries[i * self.q + k]
    }

    pub fn set(&mut self, i: usize, k: usize, value: f64) {
        self.entries[i * self.q + k] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.q..(i + 1) * self.q]
    }

    /// Position of every vertex, if each row holds a single 1.
    pub fn positions(&self) -> Option<Vec<usize>> {
        (0..self.n)
            .map(|i| {
                let row = self.row(i);
                let ones: Vec<usize> = (0..self.q).filter(|&k| row[k] == 1.0).collect();
                let zeros = row.iter().filter(|&&v| v == 0.0).count();
                (ones.len() == 1 && zeros + 1 == self.q).then(|| ones[0])
            })
            .collect()
    }

    /// Same matrix with the backbone read from the other end.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for k in 0..self.q {
                out.set(i, k, self.get(i, self.q - 1 - k));
            }
        }
        out
    }

    /// `t * self + (1 - t) * other`, always fractional.
    pub fn blend(&self, t: f64, other: &Self) -> Self {
        assert_eq!((self.n, self.q), (other.n, other.q));
        Self {
            n: self.n,
            q: self.q,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| t * a + (1.0 - t) * b)
                .collect(),
            mode: AssignmentMode::Fractional,
        }
    }

    pub fn with_mode(mut self, mode: AssignmentMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn to_file(&self) -> AssignmentFile {
        let mut entries = Vec::new();
        for i in 0..self.n {
            for k in 0..self.q {
                let v = self.get(i, k);
                if v != 0.0 {
                    entries.push((i, k, v));
                }
            }
        }
        AssignmentFile {
            n: self.n,
            q: self.q,
            entries,
        }
    }

    /// Reads the nonzero listing; the matrix is binary iff every listed value is 1.
    pub fn from_file(file: &AssignmentFile) -> Result<Self> {
        let binary = file.entries.iter().all(|e| e.2 == 1.0);
        let mode = if binary {
            AssignmentMode::Binary
        } else {
            AssignmentMode::Fractional
        };
        let mut x = Self::zeros(file.n, file.q, mode);
        for &(i, k, v) in &file.entries {
            if i >= file.n || k >= file.q {
                return Err(Error::Input(format!(
                    "entry ({i}, {k}) outside a {}x{} matrix",
                    file.n, file.q
                )));
            }
            x.set(i, k, v);
        }
        Ok(x)
    }
}

/// Nonzero listing of an assignment matrix, indices in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub n: usize,
    pub q: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

/// A single violated constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Binary mode: entry is neither 0 nor 1.
    NotBinary { i: usize, k: usize, value: f64 },
    /// Fractional mode: entry outside `[0, 1]`.
    OutOfRange { i: usize, k: usize, value: f64 },
    /// Row does not sum to one.
    UniqueAssignment { i: usize, sum: f64 },
    /// Internal vertices at a position do not sum to one.
    InternalAssignment { k: usize, sum: f64 },
    /// Degree balance at a position is off.
    DegreeBalance { k: usize, sum: f64, expected: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotBinary { i, k, value } => write!(f, "x[{i}][{k}] = {value} is not 0/1"),
            Violation::OutOfRange { i, k, value } => {
                write!(f, "x[{i}][{k}] = {value} is outside [0, 1]")
            }
            Violation::UniqueAssignment { i, sum } => write!(f, "row {i} sums to {sum}, not 1"),
            Violation::InternalAssignment { k, sum } => {
                write!(f, "internal vertices at position {k} sum to {sum}, not 1")
            }
            Violation::DegreeBalance { k, sum, expected } => {
                write!(
                    f,
                    "degree balance at position {k} is {sum}, expected {expected}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Feasibility {
    pub violations: Vec<Violation>,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_dims(inst: &Instance, x: &AssignmentMatrix) -> Result<()> {
    if x.n != inst.n() || x.q != inst.q() {
        return Err(Error::DimensionMismatch {
            rows: x.n,
            cols: x.q,
            n: inst.n(),
            q: inst.q(),
        });
    }
    Ok(())
}

/// Lists every violated constraint of the caterpillar assignment polytope.
pub fn check_feasible(inst: &Instance, x: &AssignmentMatrix) -> Result<Feasibility> {
    check_dims(inst, x)?;
    let (n, q) = (inst.n(), inst.q());
    let binary = x.mode == AssignmentMode::Binary;
    let tol = if binary { 0.0 } else { FRACTIONAL_TOLERANCE };
    let off = |a: f64, b: f64| (a - b).abs() > tol * b.abs().max(1.0);
    let mut violations = Vec::new();

    for i in 0..n {
        for k in 0..q {
            let value = x.get(i, k);
            if binary {
                if value != 0.0 && value != 1.0 {
                    violations.push(Violation::NotBinary { i, k, value });
                }
            } else if !(-tol..=1.0 + tol).contains(&value) {
                violations.push(Violation::OutOfRange { i, k, value });
            }
        }
    }
    for i in 0..n {
        let sum: f64 = x.row(i).iter().sum();
        if off(sum, 1.0) {
            violations.push(Violation::UniqueAssignment { i, sum });
        }
    }
    for k in 0..q {
        let sum: f64 = (0..q).map(|i| x.get(i, k)).sum();
        if off(sum, 1.0) {
            violations.push(Violation::InternalAssignment { k, sum });
        }
    }
    for k in 0..q {
        let sum: f64 = (0..n)
            .map(|i| (inst.degree(i) as f64 - 2.0) * x.get(i, k))
            .sum();
        let expected = inst.backbone_neighbours(k) as f64 - 2.0;
        if off(sum, expected) {
            violations.push(Violation::DegreeBalance { k, sum, expected });
        }
    }
    Ok(Feasibility { violations })
}

/// Weight associated with each backbone position.
pub fn position_weights_of(inst: &Instance, x: &AssignmentMatrix) -> Result<Vec<f64>> {
    check_dims(inst, x)?;
    let mut w = vec![0.0; inst.q()];
    for i in 0..inst.n() {
        let mu = inst.weight(i);
        for (k, wk) in w.iter_mut().enumerate() {
            *wk += mu * x.get(i, k);
        }
    }
    Ok(w)
}

/// `p_k = sum_l w_l |k - l|`.
pub fn position_prices(w: &[f64]) -> Vec<f64> {
    let q = w.len();
    let mut prices = vec![0.0; q];
    // left-to-right and right-to-left sweeps
    let (mut acc, mut mass) = (0.0, 0.0);
    for k in 0..q {
        acc += mass;
        prices[k] = acc;
        mass += w[k];
    }
    let (mut acc, mut mass) = (0.0, 0.0);
    for k in (0..q).rev() {
        acc += mass;
        prices[k] += acc;
        mass += w[k];
    }
    prices
}

/// `1/2 sum_{k,l} w_k w_l |k - l|`, computed as the sum over backbone edges of
/// the weight on either side.
pub fn backbone_quadratic(w: &[f64]) -> f64 {
    let total: f64 = w.iter().sum();
    let mut left = 0.0;
    let mut acc = 0.0;
    for &wk in &w[..w.len().saturating_sub(1)] {
        left += wk;
        acc += left * (total - left);
    }
    acc
}

/// The quadratic program objective: only the term that depends on the assignment.
pub fn qap_objective(inst: &Instance, x: &AssignmentMatrix) -> Result<f64> {
    Ok(backbone_quadratic(&position_weights_of(inst, x)?))
}

/// Index of the caterpillar (or relaxation point) described by `x`.
pub fn vwwi_assignment(inst: &Instance, x: &AssignmentMatrix) -> Result<f64> {
    check_dims(inst, x)?;
    if inst.q() == 0 {
        return Ok(inst.weights().iter().product());
    }
    let verdict = check_feasible(inst, x)?;
    if !verdict.is_feasible() {
        return Err(Error::InfeasibleAssignment(verdict.violations));
    }
    Ok(vwwi_from_position_weights(
        inst,
        &position_weights_of(inst, x)?,
    ))
}

/// Index value given position weights; the two-vertex tree has no backbone
/// and is handled directly.
pub fn vwwi_from_position_weights(inst: &Instance, w: &[f64]) -> f64 {
    if inst.q() == 0 {
        return inst.weights().iter().product();
    }
    backbone_quadratic(w) + inst.caterpillar_constant()
}

/// Row-wise partial assignment: `Some(k)` pins a vertex to position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    positions: Vec<Option<usize>>,
}

impl PartialAssignment {
    pub fn empty(n: usize) -> Self {
        Self {
            positions: vec![None; n],
        }
    }

    pub fn from_positions(positions: Vec<Option<usize>>) -> Self {
        Self { positions }
    }

    /// Rows holding a single 1 are fixed, all-zero rows are free.
    pub fn from_matrix(x: &AssignmentMatrix) -> Result<Self> {
        let mut positions = Vec::with_capacity(x.n());
        for i in 0..x.n() {
            let row = x.row(i);
            let nonzero: Vec<usize> = (0..x.q()).filter(|&k| row[k] != 0.0).collect();
            match nonzero.as_slice() {
                [] => positions.push(None),
                [k] if row[*k] == 1.0 => positions.push(Some(*k)),
                _ => {
                    return Err(Error::InconsistentPartial(format!(
                        "row {i} is neither empty nor a single 1"
                    )))
                }
            }
        }
        Ok(Self { positions })
    }

    pub fn fix(&mut self, vertex: usize, position: usize) {
        self.positions[vertex] = Some(position);
    }

    pub fn release(&mut self, vertex: usize) {
        self.positions[vertex] = None;
    }

    pub fn get(&self, vertex: usize) -> Option<usize> {
        self.positions[vertex]
    }

    pub fn positions(&self) -> &[Option<usize>] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn fixed_count(&self) -> usize {
        self.positions.iter().filter(|p| p.is_some()).count()
    }

    pub fn to_matrix(&self, q: usize) -> AssignmentMatrix {
        let mut x = AssignmentMatrix::zeros(self.n(), q, AssignmentMode::Binary);
        for (i, p) in self.positions.iter().enumerate() {
            if let Some(k) = p {
                x.set(i, *k, 1.0);
            }
        }
        x
    }
}
