//! Maximizing the vertex-weighted Wiener index over all trees with a given
//! sequence of (weight, degree) pairs.
//!
//! Some tree attaining the maximum is a caterpillar, so the problem reduces to
//! placing internal vertices along a backbone path and hanging pendants off
//! them. The crate evaluates indices, builds caterpillars, bounds the optimum
//! from above, and solves it greedily, exactly, or by exhaustive enumeration.
//!
//! ```
//! use wiener_max::{branch_and_bound, upper_bound, Instance};
//!
//! let inst = Instance::new(&[1.0, 1.0, 4.0, 3.0, 2.0, 1.0], &[3, 3, 1, 1, 1, 1])?;
//! let best = branch_and_bound(&inst, None, None)?;
//! assert_eq!(best.value, 126.0);
//! assert!(upper_bound(&inst)?.value >= best.value);
//! # Ok::<(), wiener_max::Error>(())
//! ```

pub mod assignment;
pub mod bench;
pub mod bounds;
pub mod caterpillar;
pub mod cli;
pub mod error;
pub mod instance;
pub mod relaxation;
mod simplex;
pub mod solvers;
pub mod tree;

pub use assignment::{
    backbone_quadratic, check_feasible, position_prices, position_weights_of, qap_objective,
    vwwi_assignment, AssignmentFile, AssignmentMatrix, AssignmentMode, Feasibility,
    PartialAssignment, Violation,
};
pub use bounds::{
    closed_form_bound, closed_form_terms, partial_relaxation_bound, relative_error,
    relative_error_from, rocp_solution_matrix, upper_bound, BoundMethod, BoundReport,
    ClosedFormTerms,
};
pub use caterpillar::{caterpillar_from_assignment, vwwi_caterpillar, Caterpillar};
pub use error::{Error, Result};
pub use instance::{validate_instance, Instance, InstanceFile};
pub use solvers::{
    branch_and_bound, branch_and_bound_with, brute_force_caterpillars, brute_force_trees,
    greedy_caterpillar, is_v_shaped, BnbOptions, SolveReport, SolveReportFile,
};
pub use tree::{vwwi_tree, wiener_index, TreeFile, WeightedTree};
