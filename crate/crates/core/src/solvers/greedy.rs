use std::time::Instant;

use super::{evaluate, unique_tree, SolveReport};
use crate::assignment::position_prices;
use crate::error::Result;
use crate::instance::Instance;

/// Builds a caterpillar by repeatedly placing the next internal vertex on the
/// most expensive vacant position, or the next pendant on the most expensive
/// position with spare capacity, whichever adds more.
pub fn greedy_caterpillar(inst: &Instance) -> Result<SolveReport> {
    if let Some(report) = unique_tree(inst) {
        return Ok(report);
    }
    let start = Instant::now();
    let (n, q) = (inst.n(), inst.q());
    let mu = inst.weights();
    let mut positions = vec![usize::MAX; n];
    let mut internal_at: Vec<Option<usize>> = vec![None; q];
    let mut pendant_count = vec![0usize; q];
    let mut w = vec![0.0; q];

    positions[q] = 0;
    pendant_count[0] = 1;
    w[0] = mu[q];
    let (mut i, mut j) = (0, q + 1);

    let spare =
        |internal_at: &[Option<usize>], pendant_count: &[usize], k: usize| match internal_at[k] {
            Some(v) => inst.degree(v) > inst.backbone_neighbours(k) + pendant_count[k],
            None => false,
        };

    while i < q || j < n {
        let p = position_prices(&w);
        let argmax = |keep: &dyn Fn(usize) -> bool| {
            (0..q)
                .filter(|&k| keep(k))
                .fold(None, |best: Option<usize>, k| match best {
                    Some(b) if p[b] >= p[k] => Some(b),
                    _ => Some(k),
                })
        };
        let vacant = if i < q {
            argmax(&|k| internal_at[k].is_none())
        } else {
            None
        };
        let open = if j < n {
            argmax(&|k| spare(&internal_at, &pendant_count, k))
        } else {
            None
        };
        let place_internal = match (vacant, open) {
            (Some(k), Some(l)) => mu[i] * p[k] > mu[j] * p[l],
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => unreachable!("a valid degree sequence always leaves room"),
        };
        if place_internal {
            let k = vacant.unwrap();
            positions[i] = k;
            internal_at[k] = Some(i);
            w[k] += mu[i];
            i += 1;
        } else {
            let l = open.unwrap();
            positions[j] = l;
            pendant_count[l] += 1;
            w[l] += mu[j];
            j += 1;
        }
    }

    let value = evaluate(inst, &positions);
    Ok(SolveReport {
        positions,
        value,
        nodes_explored: 0,
        nodes_pruned: 0,
        wall_time: start.elapsed().as_secs_f64(),
        proven_optimal: false,
        incumbent_history: vec![value],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::{check_feasible, vwwi_assignment};

    #[test]
    fn split_pendants_example() {
        let inst = Instance::new(&[1.0, 1.0, 4.0, 3.0, 2.0, 1.0], &[3, 3, 1, 1, 1, 1]).unwrap();
        let report = greedy_caterpillar(&inst).unwrap();
        assert_eq!(report.value, 126.0);
        let x = report.assignment(&inst);
        assert!(check_feasible(&inst, &x).unwrap().is_feasible());
        assert_eq!(vwwi_assignment(&inst, &x).unwrap(), 126.0);
    }

    #[test]
    fn star_is_returned_directly() {
        let inst = Instance::new(&[1.0; 5], &[4, 1, 1, 1, 1]).unwrap();
        let report = greedy_caterpillar(&inst).unwrap();
        assert_eq!(report.value, 16.0);
        assert_eq!(report.positions, vec![0; 5]);
    }
}
