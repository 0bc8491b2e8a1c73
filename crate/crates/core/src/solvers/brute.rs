use std::time::Instant;

use super::{evaluate, unique_tree, SolveReport};
use crate::assignment::backbone_quadratic;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tree::{vwwi_tree, WeightedTree};

/// Largest search space [`brute_force_caterpillars`] accepts.
pub const BRUTE_FORCE_LIMIT: f64 = 1e8;
/// Largest order [`brute_force_trees`] accepts.
pub const TREE_ENUMERATION_LIMIT: usize = 9;

/// `q! (n-q)! / prod (d_i - 2)!` over internal vertices: internal orderings
/// times pendant distributions.
pub fn brute_force_search_space(inst: &Instance) -> f64 {
    let ln_fact = |m: usize| (2..=m).map(|x| (x as f64).ln()).sum::<f64>();
    let q = inst.q();
    let ln = ln_fact(q) + ln_fact(inst.n() - q)
        - inst.degrees()[..q]
            .iter()
            .map(|&d| ln_fact(d - 2))
            .sum::<f64>();
    ln.exp()
}

/// Enumerates every caterpillar (internal orderings up to reversal, every
/// pendant distribution) and keeps the best.
pub fn brute_force_caterpillars(inst: &Instance) -> Result<SolveReport> {
    if let Some(report) = unique_tree(inst) {
        return Ok(report);
    }
    let count = brute_force_search_space(inst);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            count,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let start = Instant::now();
    let mut walk = Walk {
        inst,
        order: Vec::with_capacity(inst.q()),
        used: vec![false; inst.q()],
        capacity: vec![0; inst.q()],
        w: vec![0.0; inst.q()],
        positions: vec![0; inst.n()],
        best: f64::NEG_INFINITY,
        best_positions: Vec::new(),
        leaves: 0,
        history: Vec::new(),
    };
    walk.internals();
    Ok(SolveReport {
        value: evaluate(inst, &walk.best_positions),
        positions: walk.best_positions,
        nodes_explored: walk.leaves,
        nodes_pruned: 0,
        wall_time: start.elapsed().as_secs_f64(),
        proven_optimal: true,
        incumbent_history: walk.history,
    })
}

struct Walk<'a> {
    inst: &'a Instance,
    order: Vec<usize>,
    used: Vec<bool>,
    capacity: Vec<usize>,
    w: Vec<f64>,
    positions: Vec<usize>,
    best: f64,
    best_positions: Vec<usize>,
    leaves: u64,
    history: Vec<f64>,
}

impl Walk<'_> {
    fn internals(&mut self) {
        let q = self.inst.q();
        let k = self.order.len();
        if k == q {
            for (k, &v) in self.order.iter().enumerate() {
                self.positions[v] = k;
                self.w[k] = self.inst.weight(v);
                self.capacity[k] = self.inst.degree(v) - self.inst.backbone_neighbours(k);
            }
            self.pendants(q);
            return;
        }
        for v in 0..q {
            // reversal symmetry: first vertex id below last
            if self.used[v] || (k + 1 == q && v < self.order[0]) {
                continue;
            }
            self.used[v] = true;
            self.order.push(v);
            self.internals();
            self.order.pop();
            self.used[v] = false;
        }
    }

    fn pendants(&mut self, j: usize) {
        if j == self.inst.n() {
            self.leaves += 1;
            let value = backbone_quadratic(&self.w) + self.inst.caterpillar_constant();
            if value > self.best {
                self.best = value;
                self.best_positions = self.positions.clone();
                self.history.push(value);
            }
            return;
        }
        let mu = self.inst.weight(j);
        for k in 0..self.inst.q() {
            if self.capacity[k] == 0 {
                continue;
            }
            self.capacity[k] -= 1;
            self.w[k] += mu;
            self.positions[j] = k;
            self.pendants(j + 1);
            self.w[k] -= mu;
            self.capacity[k] += 1;
        }
    }
}

/// Best index over all trees with the instance's weight and degree pairs.
pub fn brute_force_trees(inst: &Instance) -> Result<f64> {
    Ok(best_tree_by_enumeration(inst)?.0)
}

/// Enumerates labeled trees through Prüfer sequences in which vertex `i`
/// appears `d_i - 1` times. Vertex ids are canonical.
pub fn best_tree_by_enumeration(inst: &Instance) -> Result<(f64, WeightedTree)> {
    let n = inst.n();
    if n > TREE_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: TREE_ENUMERATION_LIMIT,
        });
    }
    let weights = inst.weights().to_vec();
    if n == 2 {
        let tree = WeightedTree::new(weights, vec![(0, 1)])?;
        return Ok((vwwi_tree(&tree), tree));
    }
    let mut sequence: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, inst.degree(v) - 1))
        .collect();
    let mut best: Option<(f64, WeightedTree)> = None;
    loop {
        let tree = WeightedTree::new(weights.clone(), prufer_edges(&sequence, n))?;
        let value = vwwi_tree(&tree);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, tree));
        }
        if !next_permutation(&mut sequence) {
            break;
        }
    }
    Ok(best.expect("at least one tree"))
}

fn prufer_edges(sequence: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in sequence {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Lexicographic successor; false once the sequence is the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len())
        .rev()
        .find(|&j| a[j] > a[i - 1])
        .expect("successor exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
