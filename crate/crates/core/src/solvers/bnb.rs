use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{evaluate, greedy_caterpillar, unique_tree, SolveReport};
use crate::assignment::{position_prices, vwwi_from_position_weights, PartialAssignment};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relaxation::{Relaxation, RelaxationOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct BnbOptions {
    /// Seconds.
    pub time_limit: Option<f64>,
    pub node_limit: Option<u64>,
    /// With pruning off every V-shaped assignment is visited.
    pub pruning: bool,
    /// Worker threads; 1 runs a plain depth-first search.
    pub threads: usize,
    pub relaxation: RelaxationOptions,
}

impl Default for BnbOptions {
    fn default() -> Self {
        Self {
            time_limit: None,
            node_limit: None,
            pruning: true,
            threads: 1,
            relaxation: RelaxationOptions::default(),
        }
    }
}

pub fn branch_and_bound(
    inst: &Instance,
    time_limit: Option<f64>,
    node_limit: Option<u64>,
) -> Result<SolveReport> {
    branch_and_bound_with(
        inst,
        &BnbOptions {
            time_limit,
            node_limit,
            ..BnbOptions::default()
        },
    )
}

/// Exact search over V-shaped assignments: internal vertices, heaviest first,
/// go to the leftmost or rightmost vacant position, and each pendant goes to
/// the outermost position with spare capacity on either side as soon as both
/// sides have one. Nodes whose relaxation bound does not beat the incumbent
/// are pruned.
pub fn branch_and_bound_with(inst: &Instance, options: &BnbOptions) -> Result<SolveReport> {
    if let Some(report) = unique_tree(inst) {
        return Ok(report);
    }
    if !inst.is_monotone() {
        return Err(Error::NonMonotoneWeights);
    }
    let start = Instant::now();
    let greedy = greedy_caterpillar(inst)?;
    let search = Search {
        inst,
        options,
        deadline: options
            .time_limit
            .map(|s| start + Duration::from_secs_f64(s.max(0.0))),
        best_bits: AtomicU64::new(greedy.value.to_bits()),
        incumbent: Mutex::new(Incumbent {
            value: greedy.value,
            positions: greedy.positions,
            history: vec![greedy.value],
        }),
        nodes: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
    };

    let root = State::root(inst);
    if options.threads <= 1 {
        search.explore(&root);
    } else {
        search.explore_parallel(root)?;
    }

    let incumbent = search
        .incumbent
        .into_inner()
        .expect("incumbent lock poisoned");
    Ok(SolveReport {
        value: evaluate(inst, &incumbent.positions),
        positions: incumbent.positions,
        nodes_explored: search.nodes.into_inner(),
        nodes_pruned: search.pruned.into_inner(),
        wall_time: start.elapsed().as_secs_f64(),
        proven_optimal: !search.stopped.into_inner(),
        incumbent_history: incumbent.history,
    })
}

#[derive(Debug, Clone)]
struct State {
    partial: PartialAssignment,
    internal_at: Vec<Option<usize>>,
    pendant_count: Vec<usize>,
    w: Vec<f64>,
    next_internal: usize,
    next_pendant: usize,
    /// Vacant positions are `lo..hi`.
    lo: usize,
    hi: usize,
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Internal(usize),
    Pendant(usize),
}

impl State {
    fn root(inst: &Instance) -> Self {
        let q = inst.q();
        Self {
            partial: PartialAssignment::empty(inst.n()),
            internal_at: vec![None; q],
            pendant_count: vec![0; q],
            w: vec![0.0; q],
            next_internal: 0,
            next_pendant: q,
            lo: 0,
            hi: q,
        }
    }

    fn complete(&self, inst: &Instance) -> bool {
        self.next_internal == inst.q() && self.next_pendant == inst.n()
    }

    fn has_spare(&self, inst: &Instance, k: usize) -> bool {
        match self.internal_at[k] {
            Some(v) => inst.degree(v) > inst.backbone_neighbours(k) + self.pendant_count[k],
            None => false,
        }
    }

    /// Candidate moves, most promising first.
    fn moves(&self, inst: &Instance) -> Vec<Move> {
        let q = inst.q();
        let prices = position_prices(&self.w);
        let ordered = |left: usize, right: usize, make: fn(usize) -> Move| {
            if left == right {
                vec![make(left)]
            } else if prices[left] > prices[right] {
                vec![make(left), make(right)]
            } else {
                vec![make(right), make(left)]
            }
        };
        if self.next_pendant < inst.n() {
            let (left_range, right_range) = if self.lo < self.hi {
                (0..self.lo, self.hi..q)
            } else {
                (0..q, 0..q)
            };
            let left = left_range.clone().find(|&k| self.has_spare(inst, k));
            let right = right_range.rev().find(|&k| self.has_spare(inst, k));
            if let (Some(l), Some(r)) = (left, right) {
                return ordered(l, r, Move::Pendant);
            }
        }
        debug_assert!(self.next_internal < q && self.lo < self.hi);
        if self.next_internal == 0 {
            return vec![Move::Internal(self.lo)];
        }
        ordered(self.lo, self.hi - 1, Move::Internal)
    }

    fn apply(&self, inst: &Instance, mv: Move) -> Self {
        let mut next = self.clone();
        match mv {
            Move::Internal(k) => {
                let v = next.next_internal;
                next.partial.fix(v, k);
                next.internal_at[k] = Some(v);
                next.w[k] += inst.weight(v);
                next.next_internal += 1;
                if k == next.lo {
                    next.lo += 1;
                } else {
                    next.hi -= 1;
                }
            }
            Move::Pendant(k) => {
                let v = next.next_pendant;
                next.partial.fix(v, k);
                next.pendant_count[k] += 1;
                next.w[k] += inst.weight(v);
                next.next_pendant += 1;
            }
        }
        next
    }

    fn positions(&self) -> Vec<usize> {
        self.partial
            .positions()
            .iter()
            .map(|p| p.expect("complete state"))
            .collect()
    }
}

struct Incumbent {
    value: f64,
    positions: Vec<usize>,
    history: Vec<f64>,
}

struct Search<'a> {
    inst: &'a Instance,
    options: &'a BnbOptions,
    deadline: Option<Instant>,
    best_bits: AtomicU64,
    incumbent: Mutex<Incumbent>,
    nodes: AtomicU64,
    pruned: AtomicU64,
    stopped: AtomicBool,
}

impl Search<'_> {
    fn best(&self) -> f64 {
        f64::from_bits(self.best_bits.load(Ordering::Acquire))
    }

    fn offer(&self, state: &State) {
        let value = vwwi_from_position_weights(self.inst, &state.w);
        if value <= self.best() {
            return;
        }
        let mut inc = self.incumbent.lock().expect("incumbent lock poisoned");
        if value > inc.value {
            inc.value = value;
            inc.positions = state.positions();
            inc.history.push(value);
            self.best_bits.store(value.to_bits(), Ordering::Release);
        }
    }

    /// Counts a node and checks the limits; false means stop.
    fn enter(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.options.node_limit.is_some_and(|limit| count > limit);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stopped.store(true, Ordering::Relaxed);
            self.nodes.fetch_sub(1, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Children of `state` that survive the bound test; complete children
    /// are evaluated on the spot.
    fn expand(&self, state: &State) -> Vec<State> {
        let mut survivors = Vec::new();
        for mv in state.moves(self.inst) {
            let child = state.apply(self.inst, mv);
            if child.complete(self.inst) {
                self.offer(&child);
                continue;
            }
            if self.options.pruning && !self.promising(&child) {
                self.pruned.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            survivors.push(child);
        }
        survivors
    }

    fn promising(&self, state: &State) -> bool {
        let best = self.best();
        let threshold = best + 1e-12 * best.abs();
        let Ok(mut relax) = Relaxation::new(self.inst, &state.partial) else {
            return false;
        };
        relax
            .solve(&self.options.relaxation, Some(threshold), false)
            .upper
            > threshold
    }

    fn explore(&self, state: &State) {
        if !self.enter() {
            return;
        }
        for child in self.expand(state) {
            self.explore(&child);
            if self.stopped.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn explore_parallel(&self, root: State) -> Result<()> {
        let threads = self.options.threads;
        let mut frontier = vec![root];
        while frontier.len() < 8 * threads {
            let mut next = Vec::new();
            for state in &frontier {
                if self.enter() {
                    next.extend(self.expand(state));
                }
            }
            if next.is_empty() || self.stopped.load(Ordering::Relaxed) {
                return Ok(());
            }
            frontier = next;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
        pool.install(|| frontier.par_iter().for_each(|state| self.explore(state)));
        Ok(())
    }
}
