//! Caterpillars: trees whose internal vertices form a path.

use crate::assignment::{
    backbone_quadratic, check_feasible, position_prices, AssignmentMatrix, AssignmentMode,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tree::WeightedTree;

/// A caterpillar given by its backbone and the pendants hanging off each
/// backbone vertex. Vertex ids are arbitrary `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Caterpillar {
    weights: Vec<f64>,
    backbone: Vec<usize>,
    pendants: Vec<Vec<usize>>,
}

impl Caterpillar {
    /// `pendants[k]` lists the pendant vertices attached to `backbone[k]`.
    pub fn new(weights: Vec<f64>, backbone: Vec<usize>, pendants: Vec<Vec<usize>>) -> Result<Self> {
        let n = weights.len();
        let q = backbone.len();
        let bad = |msg: String| Err(Error::InvalidTree(msg));
        if q == 0 {
            return bad("caterpillar needs a backbone vertex".into());
        }
        if pendants.len() != q {
            return bad(format!(
                "{} pendant lists for {q} positions",
                pendants.len()
            ));
        }
        let mut seen = vec![false; n];
        for &v in backbone.iter().chain(pendants.iter().flatten()) {
            if v >= n || seen[v] {
                return bad(format!("vertex {v} is out of range or used twice"));
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return bad("some vertex is neither on the backbone nor a pendant".into());
        }
        // every backbone vertex must be internal (degree at least 2)
        for (k, list) in pendants.iter().enumerate() {
            let degree = list.len() + crate::instance::backbone_neighbours(q, k);
            if degree < 2 {
                return bad(format!(
                    "backbone vertex at position {k} has degree {degree}"
                ));
            }
        }
        Ok(Self {
            weights,
            backbone,
            pendants,
        })
    }

    pub fn q(&self) -> usize {
        self.backbone.len()
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn backbone(&self) -> &[usize] {
        &self.backbone
    }

    pub fn pendants(&self, k: usize) -> &[usize] {
        &self.pendants[k]
    }

    /// Vertices associated with position `k`: the backbone vertex and its pendants.
    pub fn associated(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.backbone[k]).chain(self.pendants[k].iter().copied())
    }

    pub fn position_weights(&self) -> Vec<f64> {
        (0..self.q())
            .map(|k| self.associated(k).map(|v| self.weights[v]).sum())
            .collect()
    }

    pub fn position_prices(&self) -> Vec<f64> {
        position_prices(&self.position_weights())
    }

    pub fn reversed(&self) -> Self {
        let mut backbone = self.backbone.clone();
        let mut pendants = self.pendants.clone();
        backbone.reverse();
        pendants.reverse();
        Self {
            weights: self.weights.clone(),
            backbone,
            pendants,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> =
            self.backbone.windows(2).map(|p| (p[0], p[1])).collect();
        for (k, list) in self.pendants.iter().enumerate() {
            edges.extend(list.iter().map(|&u| (self.backbone[k], u)));
        }
        edges
    }

    pub fn to_tree(&self) -> WeightedTree {
        WeightedTree::new(self.weights.clone(), self.edges())
            .expect("caterpillar invariants guarantee a tree")
    }
}

/// Index from the position decomposition: backbone quadratic term, plus total
/// weight times pendant weight, minus squared pendant weights.
pub fn vwwi_caterpillar(c: &Caterpillar) -> f64 {
    let total: f64 = c.weights.iter().sum();
    let pendant: f64 = c.pendants.iter().flatten().map(|&v| c.weights[v]).sum();
    let pendant_sq: f64 = c
        .pendants
        .iter()
        .flatten()
        .map(|&v| c.weights[v] * c.weights[v])
        .sum();
    backbone_quadratic(&c.position_weights()) + total * pendant - pendant_sq
}

/// Builds the caterpillar of a feasible binary assignment. Vertex ids are the
/// instance's canonical indices.
pub fn caterpillar_from_assignment(inst: &Instance, x: &AssignmentMatrix) -> Result<Caterpillar> {
    let verdict = check_feasible(inst, x)?;
    if x.mode() != AssignmentMode::Binary || !verdict.is_feasible() {
        return Err(Error::InfeasibleAssignment(verdict.violations));
    }
    let positions = x
        .positions()
        .ok_or_else(|| Error::InfeasibleAssignment(Vec::new()))?;
    caterpillar_from_positions(inst, &positions)
}

/// Same as [`caterpillar_from_assignment`] for a position-per-vertex vector
/// that is already known to be feasible.
pub(crate) fn caterpillar_from_positions(
    inst: &Instance,
    positions: &[usize],
) -> Result<Caterpillar> {
    let q = inst.q();
    let mut backbone = vec![usize::MAX; q];
    let mut pendants = vec![Vec::new(); q];
    for (i, &k) in positions.iter().enumerate() {
        if inst.is_internal(i) {
            backbone[k] = i;
        } else {
            pendants[k].push(i);
        }
    }
    Caterpillar::new(inst.weights().to_vec(), backbone, pendants)
}

/// Edges of the tree described by a position vector; the two-vertex
/// instance (no backbone) is a single edge.
pub fn tree_edges(inst: &Instance, positions: &[usize]) -> Result<Vec<(usize, usize)>> {
    if inst.q() == 0 {
        return Ok(vec![(0, 1)]);
    }
    Ok(caterpillar_from_positions(inst, positions)?.edges())
}
