//! Optimizers over caterpillars: a greedy heuristic, exact branch and bound,
//! and two exhaustive oracles.

mod bnb;
mod brute;
mod greedy;

use serde::{Deserialize, Serialize};

pub use bnb::{branch_and_bound, branch_and_bound_with, BnbOptions};
pub use brute::{
    best_tree_by_enumeration, brute_force_caterpillars, brute_force_search_space,
    brute_force_trees, BRUTE_FORCE_LIMIT, TREE_ENUMERATION_LIMIT,
};
pub use greedy::greedy_caterpillar;

use crate::assignment::{vwwi_from_position_weights, AssignmentMatrix, AssignmentMode};
use crate::caterpillar::{caterpillar_from_positions, tree_edges, Caterpillar};
use crate::error::Result;
use crate::instance::Instance;
use crate::tree::WeightedTree;

/// Result of a solver run. `positions[i]` is the backbone position of
/// canonical vertex `i`; it is empty for the two-vertex instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub positions: Vec<usize>,
    pub value: f64,
    pub nodes_explored: u64,
    pub nodes_pruned: u64,
    /// Seconds.
    pub wall_time: f64,
    pub proven_optimal: bool,
    /// Incumbent values in the order they were found.
    pub incumbent_history: Vec<f64>,
}

/// JSON form of a [`SolveReport`]. Vertex ids are in the caller's order and
/// the weights are included, so the file also reads as a tree file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReportFile {
    pub value: f64,
    pub assignment: Vec<[usize; 2]>,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<f64>,
    pub nodes: u64,
    pub pruned: u64,
    pub seconds: f64,
    pub optimal: bool,
}

impl SolveReport {
    pub fn assignment(&self, inst: &Instance) -> AssignmentMatrix {
        if inst.q() == 0 {
            return AssignmentMatrix::zeros(inst.n(), 0, AssignmentMode::Binary);
        }
        AssignmentMatrix::from_positions(inst.q(), &self.positions)
    }

    /// `None` for the two-vertex instance, which has no backbone.
    pub fn caterpillar(&self, inst: &Instance) -> Option<Caterpillar> {
        if inst.q() == 0 {
            return None;
        }
        caterpillar_from_positions(inst, &self.positions).ok()
    }

    /// The tree in canonical vertex ids.
    pub fn tree(&self, inst: &Instance) -> Result<WeightedTree> {
        WeightedTree::new(inst.weights().to_vec(), tree_edges(inst, &self.positions)?)
    }

    pub fn to_file(&self, inst: &Instance) -> Result<SolveReportFile> {
        let orig = inst.original_index();
        let edges = tree_edges(inst, &self.positions)?
            .into_iter()
            .map(|(u, v)| [orig[u], orig[v]])
            .collect();
        let mut assignment: Vec<[usize; 2]> = self
            .positions
            .iter()
            .enumerate()
            .map(|(i, &k)| [orig[i], k])
            .collect();
        assignment.sort_unstable();
        Ok(SolveReportFile {
            value: self.value,
            assignment,
            edges,
            weights: inst.to_file().weights,
            nodes: self.nodes_explored,
            pruned: self.nodes_pruned,
            seconds: self.wall_time,
            optimal: self.proven_optimal,
        })
    }
}

/// Index of a complete position vector, with position weights summed in
/// vertex order so equal assignments give bit-identical values.
fn evaluate(inst: &Instance, positions: &[usize]) -> f64 {
    let mut w = vec![0.0; inst.q()];
    for (i, &k) in positions.iter().enumerate() {
        w[k] += inst.weight(i);
    }
    vwwi_from_position_weights(inst, &w)
}

/// Instances with at most one internal vertex have a single tree.
fn unique_tree(inst: &Instance) -> Option<SolveReport> {
    let positions = match inst.q() {
        0 => Vec::new(),
        1 => vec![0; inst.n()],
        _ => return None,
    };
    let value = if inst.q() == 0 {
        inst.weights().iter().product()
    } else {
        inst.caterpillar_constant()
    };
    Some(SolveReport {
        positions,
        value,
        nodes_explored: 1,
        nodes_pruned: 0,
        wall_time: 0.0,
        proven_optimal: true,
        incumbent_history: vec![value],
    })
}

/// True if the sequence never goes up and then down again.
pub fn is_v_shaped(values: &[f64]) -> bool {
    let mut rising = false;
    for pair in values.windows(2) {
        if pair[1] > pair[0] {
            rising = true;
        } else if pair[1] < pair[0] && rising {
            return false;
        }
    }
    true
}
