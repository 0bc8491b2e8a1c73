//! Upper bounds on the largest index over all trees of an instance.
//!
//! For degree-monotone weights and at least four backbone positions the
//! continuous relaxation is solved in closed form by a symmetric "double V"
//! matrix: the heaviest pairs of vertices are split half-and-half between
//! mirror positions, moving inward. [`upper_bound`] evaluates that matrix,
//! [`closed_form_terms`] computes the same number from aggregated pair
//! weights, and [`partial_relaxation_bound`] solves the relaxation
//! numerically when some vertices are pinned.

use serde::{Deserialize, Serialize};

use crate::assignment::{
    position_weights_of, vwwi_assignment, AssignmentMatrix, AssignmentMode, PartialAssignment,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relaxation::{linearization_gap, Relaxation, RelaxationOptions};

/// Brute-force search space accepted for backbones of at most three positions
/// before falling back to branch and bound.
const SMALL_BACKBONE_ENUMERATION: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ClosedForm,
    RocpMatrix,
    PartialRelaxation,
    /// Backbones of at most three positions are solved exactly.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub method: BoundMethod,
    pub certificate: Option<AssignmentMatrix>,
    pub gap_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportFile {
    pub value: f64,
    pub method: BoundMethod,
    pub gap: f64,
}

impl BoundReport {
    pub fn to_file(&self) -> BoundReportFile {
        BoundReportFile {
            value: self.value,
            method: self.method,
            gap: self.gap_estimate,
        }
    }
}

/// Aggregates of the closed-form bound. `pair_weights[k - 1]` is `M_k` and
/// `block_ends[k]` is `D_k`, the number of pendants assigned to the outer `k`
/// mirror pairs of positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormTerms {
    pub pair_weights: Vec<f64>,
    pub block_ends: Vec<usize>,
    pub value: f64,
}

fn require_relaxation_shape(inst: &Instance) -> Result<()> {
    if inst.q() < 4 {
        return Err(Error::SmallBackbone { q: inst.q() });
    }
    if !inst.is_monotone() {
        return Err(Error::NonMonotoneWeights);
    }
    Ok(())
}

/// Pendant block sizes of the double V matrix, outermost first; for odd `q`
/// the last entry is the central block.
fn pendant_blocks(inst: &Instance) -> Vec<usize> {
    let q = inst.q();
    let d = inst.degrees();
    let mut blocks: Vec<usize> = (0..q / 2)
        .map(|k| {
            let inner = if k == 0 { 2 } else { 4 };
            d[2 * k] + d[2 * k + 1] - inner
        })
        .collect();
    if q % 2 == 1 {
        blocks.push(d[q - 1] - 2);
    }
    blocks
}

/// The symmetric relaxation optimum for monotone weights and `q >= 4`.
pub fn rocp_solution_matrix(inst: &Instance) -> Result<AssignmentMatrix> {
    require_relaxation_shape(inst)?;
    let (n, q) = (inst.n(), inst.q());
    let half = q / 2;
    let mut x = AssignmentMatrix::zeros(n, q, AssignmentMode::Fractional);
    for k in 0..half {
        for i in [2 * k, 2 * k + 1] {
            x.set(i, k, 0.5);
            x.set(i, q - 1 - k, 0.5);
        }
    }
    if q % 2 == 1 {
        x.set(q - 1, half, 1.0);
    }
    let mut next = q;
    for (k, size) in pendant_blocks(inst).into_iter().enumerate() {
        for j in next..next + size {
            if k < half {
                x.set(j, k, 0.5);
                x.set(j, q - 1 - k, 0.5);
            } else {
                x.set(j, half, 1.0);
            }
        }
        next += size;
    }
    debug_assert_eq!(next, n);
    Ok(x)
}

/// Largest index over all trees of the instance, or an upper bound on it.
pub fn upper_bound(inst: &Instance) -> Result<BoundReport> {
    if !inst.is_monotone() {
        return Err(Error::NonMonotoneWeights);
    }
    if inst.q() < 4 {
        return small_backbone_optimum(inst);
    }
    let x = rocp_solution_matrix(inst)?;
    let value = vwwi_assignment(inst, &x)?;
    let gap_estimate = linearization_gap(inst, &position_weights_of(inst, &x)?)?;
    Ok(BoundReport {
        value,
        method: BoundMethod::RocpMatrix,
        certificate: Some(x),
        gap_estimate,
    })
}

fn small_backbone_optimum(inst: &Instance) -> Result<BoundReport> {
    use crate::solvers::{branch_and_bound, brute_force_caterpillars, brute_force_search_space};
    let report = if brute_force_search_space(inst) <= SMALL_BACKBONE_ENUMERATION {
        brute_force_caterpillars(inst)?
    } else {
        branch_and_bound(inst, None, None)?
    };
    Ok(BoundReport {
        value: report.value,
        method: BoundMethod::Exact,
        certificate: None,
        gap_estimate: 0.0,
    })
}

/// Closed-form evaluation of the double V matrix through pair aggregates.
pub fn closed_form_terms(inst: &Instance) -> Result<ClosedFormTerms> {
    require_relaxation_shape(inst)?;
    let (n, q) = (inst.n(), inst.q());
    let mu = inst.weights();
    let d = inst.degrees();
    let half = q / 2;
    let outer = q.div_ceil(2);

    let mut block_ends = vec![0usize];
    for k in 1..=half {
        let inner: usize = d[..2 * k].iter().sum::<usize>() + 2;
        block_ends.push(inner - 2 * (2 * k));
    }
    if q % 2 == 1 {
        block_ends.push(n - q);
    }

    let mut pair_weights: Vec<f64> = (1..=half)
        .map(|k| {
            let pendants: f64 = (block_ends[k - 1]..block_ends[k]).map(|i| mu[q + i]).sum();
            0.5 * (mu[2 * k - 2] + mu[2 * k - 1] + pendants)
        })
        .collect();
    let central_pendants: f64 = (0..d[q - 1] - 2).map(|i| mu[n - 1 - i]).sum();
    pair_weights.push(0.5 * (mu[q - 1] + central_pendants));

    let total = inst.total_weight();
    let mut spread = 0.0;
    let mut weighted_prefix = 0.0;
    for k in 1..=outer {
        let m = pair_weights[k - 1];
        spread += 2.0 * m * (k as f64 * m + 2.0 * weighted_prefix);
        weighted_prefix += k as f64 * m;
    }
    let value = total * ((q as f64 + 1.0) / 4.0 * total + inst.pendant_weight())
        - inst.pendant_square_sum()
        - spread;
    Ok(ClosedFormTerms {
        pair_weights,
        block_ends,
        value,
    })
}

pub fn closed_form_bound(inst: &Instance) -> Result<BoundReport> {
    let terms = closed_form_terms(inst)?;
    Ok(BoundReport {
        value: terms.value,
        method: BoundMethod::ClosedForm,
        certificate: None,
        gap_estimate: 0.0,
    })
}

/// Valid upper bound over all binary completions of `fixed`.
pub fn partial_relaxation_bound(inst: &Instance, fixed: &PartialAssignment) -> Result<BoundReport> {
    partial_relaxation_bound_with(inst, fixed, &RelaxationOptions::default())
}

pub fn partial_relaxation_bound_with(
    inst: &Instance,
    fixed: &PartialAssignment,
    options: &RelaxationOptions,
) -> Result<BoundReport> {
    if inst.q() == 0 {
        let value = inst.weights().iter().product();
        return Ok(BoundReport {
            value,
            method: BoundMethod::PartialRelaxation,
            certificate: None,
            gap_estimate: 0.0,
        });
    }
    let mut relax = Relaxation::new(inst, fixed)?;
    let outcome = relax.solve(options, None, true);
    Ok(BoundReport {
        value: outcome.upper,
        method: BoundMethod::PartialRelaxation,
        certificate: outcome.certificate,
        gap_estimate: outcome.upper - outcome.lower,
    })
}

/// `bound / achieved - 1`.
pub fn relative_error_from(bound: f64, achieved: f64) -> Result<f64> {
    if achieved > 0.0 {
        Ok(bound / achieved - 1.0)
    } else {
        Err(Error::NonPositiveAchieved(achieved))
    }
}

/// Relative error of [`upper_bound`] against an achieved index value.
pub fn relative_error(inst: &Instance, achieved: f64) -> Result<f64> {
    if achieved <= 0.0 {
        return Err(Error::NonPositiveAchieved(achieved));
    }
    relative_error_from(upper_bound(inst)?.value, achieved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::check_feasible;

    #[test]
    fn odd_q_matrix_layout() {
        let inst = Instance::new(&[1.0; 9], &[3, 3, 2, 2, 2, 1, 1, 1, 1]).unwrap();
        let x = rocp_solution_matrix(&inst).unwrap();
        for i in 0..2 {
            assert_eq!(x.row(i), &[0.5, 0.0, 0.0, 0.0, 0.5]);
        }
        assert_eq!(x.row(2), &[0.0, 0.5, 0.0, 0.5, 0.0]);
        assert_eq!(x.row(4), &[0.0, 0.0, 1.0, 0.0, 0.0]);
        for j in 5..9 {
            assert_eq!(x.row(j), &[0.5, 0.0, 0.0, 0.0, 0.5]);
        }
        assert!(check_feasible(&inst, &x).unwrap().is_feasible());
    }

    #[test]
    fn small_backbone_rejected() {
        let inst = Instance::new(&[1.0; 4], &[3, 1, 1, 1]).unwrap();
        assert_eq!(
            rocp_solution_matrix(&inst),
            Err(Error::SmallBackbone { q: 1 })
        );
        assert!(matches!(
            closed_form_terms(&inst),
            Err(Error::SmallBackbone { .. })
        ));
    }

    #[test]
    fn non_monotone_rejected() {
        let inst = Instance::new(
            &[1.0, 1.0, 2.0, 5.0, 1.0, 1.0, 1.0, 1.0],
            &[3, 3, 2, 2, 1, 1, 1, 1],
        )
        .unwrap();
        assert!(!inst.is_monotone());
        assert_eq!(upper_bound(&inst), Err(Error::NonMonotoneWeights));
        assert_eq!(rocp_solution_matrix(&inst), Err(Error::NonMonotoneWeights));
    }

    #[test]
    fn first_block_end_for_paths() {
        let inst = Instance::new(&[1.0; 6], &[2, 2, 2, 2, 1, 1]).unwrap();
        let terms = closed_form_terms(&inst).unwrap();
        assert_eq!(terms.block_ends, vec![0, 2, 2]);
        // d_q = 2: central aggregate is half the last internal weight
        assert_eq!(*terms.pair_weights.last().unwrap(), 0.5);
    }

    #[test]
    fn relative_error_arithmetic() {
        assert_eq!(relative_error_from(5.0, 5.0).unwrap(), 0.0);
        assert!((relative_error_from(101.0, 100.0).unwrap() - 0.01).abs() < 1e-15);
        assert!(matches!(
            relative_error_from(1.0, 0.0),
            Err(Error::NonPositiveAchieved(_))
        ));
    }
}
