//! Random instances and the error, timing and gap experiments.
//!
//! Degree sequences come from uniformly random Prüfer sequences, weights are
//! uniform on `(0, 1]`. Every instance is a pure function of `(n, seed)`, and
//! experiment rows are keyed by `(n, instance)`, so tables do not depend on
//! scheduling.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{relative_error_from, upper_bound};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::{branch_and_bound, greedy_caterpillar};

pub const MIN_RANDOM_ORDER: usize = 4;

fn rng_for(n: usize, seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Seed of instance `index` in a sweep started from `seed`.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64)
}

pub fn random_instance(n: usize, seed: u64, enforce_monotone: bool) -> Result<Instance> {
    if n < MIN_RANDOM_ORDER {
        return Err(Error::TooSmall {
            n,
            min: MIN_RANDOM_ORDER,
        });
    }
    let mut rng = rng_for(n, seed);
    let mut degrees = vec![1i64; n];
    for _ in 0..n - 2 {
        degrees[rng.gen_range(0..n)] += 1;
    }
    let mut weights: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
    if enforce_monotone {
        let mut internal: Vec<usize> = (0..n).filter(|&v| degrees[v] > 1).collect();
        let mut sorted: Vec<f64> = internal.iter().map(|&v| weights[v]).collect();
        sorted.sort_by(|a, b| b.total_cmp(a));
        internal.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        for (&v, w) in internal.iter().zip(sorted) {
            weights[v] = w;
        }
    }
    Instance::new(&weights, &degrees)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub instance: usize,
    pub seed: u64,
    pub ub: f64,
    pub greedy: f64,
    pub exact: Option<f64>,
    /// `ub / greedy - 1`.
    pub re_estimate: f64,
    pub seconds: Option<f64>,
    pub nodes: Option<u64>,
    pub optimal: Option<bool>,
    /// `ub / exact - 1`, when the exact value is known.
    pub re_exact: Option<f64>,
}

impl ExperimentRow {
    fn sanity_holds(&self) -> bool {
        let tol = 1e-9 * self.ub.abs().max(1.0);
        let ordered = self.ub + tol >= self.greedy;
        match self.exact {
            Some(opt) => ordered && self.ub + tol >= opt && opt + tol >= self.greedy,
            None => ordered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub count: usize,
    pub median_re: f64,
    pub p10_re: f64,
    pub p90_re: f64,
    pub mean_ub_over_exact: Option<f64>,
    pub mean_greedy_over_exact: Option<f64>,
    pub mean_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
}

/// Linear interpolation between closest ranks; `values` need not be sorted.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = p.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let (lo, hi) = (rank.floor() as usize, rank.ceil() as usize);
    v[lo] + (v[hi] - v[lo]) * (rank - lo as f64)
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

impl ExperimentTable {
    pub fn sizes(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.rows.iter().map(|r| r.n).collect();
        ns.dedup();
        ns
    }

    pub fn rows_for(&self, n: usize) -> impl Iterator<Item = &ExperimentRow> {
        self.rows.iter().filter(move |r| r.n == n)
    }

    /// True if `ub >= exact >= greedy` on every row.
    pub fn is_sane(&self) -> bool {
        self.rows.iter().all(ExperimentRow::sanity_holds)
    }

    pub fn summary(&self, n: usize) -> Summary {
        let rows: Vec<&ExperimentRow> = self.rows_for(n).collect();
        let re: Vec<f64> = rows.iter().map(|r| r.re_estimate).collect();
        let exact: Vec<(&ExperimentRow, f64)> = rows
            .iter()
            .filter_map(|r| r.exact.map(|e| (*r, e)))
            .collect();
        let ub_ratio: Vec<f64> = exact.iter().map(|(r, e)| r.ub / e).collect();
        let greedy_ratio: Vec<f64> = exact.iter().map(|(r, e)| r.greedy / e).collect();
        let seconds: Vec<f64> = rows.iter().filter_map(|r| r.seconds).collect();
        Summary {
            n,
            count: rows.len(),
            median_re: percentile(&re, 0.5),
            p10_re: percentile(&re, 0.1),
            p90_re: percentile(&re, 0.9),
            mean_ub_over_exact: mean(&ub_ratio),
            mean_greedy_over_exact: mean(&greedy_ratio),
            mean_seconds: mean(&seconds),
        }
    }

    /// One line per instance, then `median`, `p10` and `p90` rows per `n`
    /// with `instance = -1` and the statistic named in the `seed` column.
    /// Timing columns are left out when `with_timing` is false.
    pub fn write_csv<W: Write>(&self, out: W, with_timing: bool) -> Result<()> {
        let io = |e: csv::Error| Error::Input(format!("csv: {e}"));
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record([
            "n",
            "instance",
            "seed",
            "ub",
            "greedy",
            "exact",
            "re_estimate",
            "seconds",
            "nodes",
            "optimal",
            "re_exact",
        ])
        .map_err(io)?;
        let num = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
        for n in self.sizes() {
            for r in self.rows_for(n) {
                w.write_record([
                    r.n.to_string(),
                    r.instance.to_string(),
                    r.seed.to_string(),
                    format!("{}", r.ub),
                    format!("{}", r.greedy),
                    num(r.exact),
                    format!("{}", r.re_estimate),
                    if with_timing {
                        num(r.seconds)
                    } else {
                        String::new()
                    },
                    r.nodes.map(|x| x.to_string()).unwrap_or_default(),
                    r.optimal.map(|x| x.to_string()).unwrap_or_default(),
                    num(r.re_exact),
                ])
                .map_err(io)?;
            }
            let rows: Vec<&ExperimentRow> = self.rows_for(n).collect();
            let column = |f: &dyn Fn(&ExperimentRow) -> Option<f64>| -> Vec<f64> {
                rows.iter().filter_map(|r| f(r)).collect()
            };
            let ub = column(&|r| Some(r.ub));
            let greedy = column(&|r| Some(r.greedy));
            let exact = column(&|r| r.exact);
            let re = column(&|r| Some(r.re_estimate));
            let seconds = column(&|r| r.seconds);
            let nodes = column(&|r| r.nodes.map(|x| x as f64));
            let re_exact = column(&|r| r.re_exact);
            for (label, p) in [("median", 0.5), ("p10", 0.1), ("p90", 0.9)] {
                let stat = |v: &[f64]| {
                    if v.is_empty() {
                        String::new()
                    } else {
                        format!("{}", percentile(v, p))
                    }
                };
                w.write_record([
                    n.to_string(),
                    "-1".to_string(),
                    label.to_string(),
                    stat(&ub),
                    stat(&greedy),
                    stat(&exact),
                    stat(&re),
                    if with_timing {
                        stat(&seconds)
                    } else {
                        String::new()
                    },
                    stat(&nodes),
                    String::new(),
                    stat(&re_exact),
                ])
                .map_err(io)?;
            }
        }
        w.flush().map_err(|e| Error::Input(format!("csv: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self, with_timing: bool) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, with_timing)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

fn jobs(ns: &[usize], per_n: usize, seed: u64) -> Vec<(usize, usize, u64)> {
    ns.iter()
        .flat_map(|&n| (0..per_n).map(move |i| (n, i, instance_seed(seed, i))))
        .collect()
}

fn bound_and_greedy(n: usize, instance: usize, seed: u64) -> Result<(Instance, ExperimentRow)> {
    let inst = random_instance(n, seed, true)?;
    let ub = upper_bound(&inst)?.value;
    let greedy = greedy_caterpillar(&inst)?.value;
    let re_estimate = relative_error_from(ub, greedy).unwrap_or(f64::INFINITY);
    let row = ExperimentRow {
        n,
        instance,
        seed,
        ub,
        greedy,
        exact: None,
        re_estimate,
        seconds: None,
        nodes: None,
        optimal: None,
        re_exact: None,
    };
    Ok((inst, row))
}

fn with_exact(
    inst: &Instance,
    mut row: ExperimentRow,
    time_limit: Option<f64>,
) -> Result<ExperimentRow> {
    let report = branch_and_bound(inst, time_limit, None)?;
    row.seconds = Some(report.wall_time);
    row.nodes = Some(report.nodes_explored);
    row.optimal = Some(report.proven_optimal);
    if report.proven_optimal {
        row.exact = Some(report.value);
        row.re_exact = relative_error_from(row.ub, report.value).ok();
    }
    Ok(row)
}

/// Upper bound against greedy, instances evaluated in parallel.
pub fn error_experiment(ns: &[usize], per_n: usize, seed: u64) -> Result<ExperimentTable> {
    let rows = jobs(ns, per_n, seed)
        .into_par_iter()
        .map(|(n, i, s)| bound_and_greedy(n, i, s).map(|(_, row)| row))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentTable { rows })
}

/// Branch and bound timings. Instances run one after another so that timings
/// are not skewed by sharing cores.
pub fn timing_experiment(
    ns: &[usize],
    per_n: usize,
    seed: u64,
    time_limit: Option<f64>,
) -> Result<ExperimentTable> {
    let rows = jobs(ns, per_n, seed)
        .into_iter()
        .map(|(n, i, s)| {
            let (inst, row) = bound_and_greedy(n, i, s)?;
            with_exact(&inst, row, time_limit)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentTable { rows })
}

/// Bound and greedy against the exact optimum, instances in parallel.
pub fn gap_experiment(ns: &[usize], per_n: usize, seed: u64) -> Result<ExperimentTable> {
    let rows = jobs(ns, per_n, seed)
        .into_par_iter()
        .map(|(n, i, s)| {
            let (inst, row) = bound_and_greedy(n, i, s)?;
            with_exact(&inst, row, None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentTable { rows })
}
