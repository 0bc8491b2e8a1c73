//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! lines always show up in `cargo test` output.

mod common;

use std::time::Instant;

use common::{caterpillar_edges, floyd_vwwi, paired_instance, rel_close};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wiener_max::bench::{error_experiment, random_instance, timing_experiment};
use wiener_max::caterpillar::Caterpillar;
use wiener_max::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Monotone instances with `n <= 10`; every other one has integer weights.
fn small_instances() -> Vec<(Instance, bool)> {
    (0..100u64)
        .map(|s| {
            let n = 4 + (s as usize % 7);
            let inst = random_instance(n, 1000 + s, true).unwrap();
            if s % 2 == 0 {
                (inst, false)
            } else {
                let file = inst.to_file();
                let weights: Vec<f64> = file.weights.iter().map(|w| (9.0 * w).ceil()).collect();
                (Instance::new(&weights, &file.degrees).unwrap(), true)
            }
        })
        .collect()
}

fn tree_instances() -> Vec<Instance> {
    (0..50u64)
        .map(|s| random_instance(4 + (s as usize % 5), 2000 + s, s % 2 == 0).unwrap())
        .collect()
}

fn oracle_equivalence(cases: &[(Instance, bool)], optima: &mut Vec<f64>) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for (inst, integer) in cases {
        let bnb = branch_and_bound(inst, None, None).unwrap();
        let brute = brute_force_caterpillars(inst).unwrap();
        let ok = bnb.proven_optimal
            && if *integer {
                bnb.value == brute.value
            } else {
                rel_close(bnb.value, brute.value, 1e-9)
            };
        failures += usize::from(!ok);
        worst = worst.max((bnb.value - brute.value).abs() / brute.value.max(1e-300));
        optima.push(brute.value);
    }
    outcome(
        failures == 0,
        format!(
            "{} instances, {failures} mismatches, max relative difference {worst:.1e}",
            cases.len()
        ),
    )
}

fn caterpillar_optimality(cases: &[Instance], optima: &mut Vec<f64>) -> Outcome {
    let mut failures = 0;
    for inst in cases {
        let trees = brute_force_trees(inst).unwrap();
        let caterpillars = brute_force_caterpillars(inst).unwrap().value;
        failures += usize::from(!rel_close(trees, caterpillars, 1e-9));
        optima.push(caterpillars);
    }
    outcome(
        failures == 0,
        format!("{} instances, {failures} mismatches", cases.len()),
    )
}

fn bound_validity(small: &[(Instance, bool)], trees: &[Instance], optima: &[f64]) -> Outcome {
    let mut violations = 0;
    let instances = small.iter().map(|c| &c.0).chain(trees);
    for (inst, &opt) in instances.zip(optima) {
        // the closed-form bound needs monotone weights; otherwise use the
        // numerical relaxation
        let ub = if inst.is_monotone() {
            upper_bound(inst).unwrap().value
        } else {
            partial_relaxation_bound(inst, &PartialAssignment::empty(inst.n()))
                .unwrap()
                .value
        };
        violations += usize::from(ub < opt * (1.0 - 1e-12));
    }
    let mut loose = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let inst = paired_instance(seed);
        let ub = upper_bound(&inst).unwrap().value;
        let exact = branch_and_bound(&inst, None, None).unwrap();
        let rel = (ub - exact.value).abs() / exact.value;
        worst = worst.max(rel);
        loose += usize::from(!exact.proven_optimal || rel > 1e-9);
    }
    outcome(
        violations == 0 && loose == 0,
        format!(
            "{} bound violations over {} instances; paired instances: {loose} of 20 not tight, max relative gap {worst:.1e}",
            violations,
            optima.len()
        ),
    )
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(3..=60usize);
        let q = rng.gen_range(1..=n - 2);
        // pendant count n - q split over q positions, ends need at least one
        let mut ids: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            ids.swap(i, rng.gen_range(0..=i));
        }
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let backbone = ids[..q].to_vec();
        let mut pendants = vec![Vec::new(); q];
        let mut rest = ids[q..].iter().copied();
        if q == 1 {
            pendants[0].extend(rest.by_ref());
        } else {
            pendants[0].push(rest.next().unwrap());
            pendants[q - 1].push(rest.next().unwrap());
            for v in rest {
                pendants[rng.gen_range(0..q)].push(v);
            }
        }
        let c = Caterpillar::new(weights.clone(), backbone.clone(), pendants.clone()).unwrap();
        let direct = vwwi_tree(&c.to_tree());
        let formula = vwwi_caterpillar(&c);
        worst = worst.max((direct - formula).abs() / direct.max(1e-300));
        if n <= 20 {
            let floyd = floyd_vwwi(&weights, &caterpillar_edges(&backbone, &pendants));
            worst = worst.max((floyd - formula).abs() / floyd.max(1e-300));
        }
    }
    let p3 = Caterpillar::new(vec![1.0; 3], vec![0], vec![vec![1, 2]]).unwrap();
    let p3_value = vwwi_caterpillar(&p3);
    outcome(
        worst <= 1e-9 && p3_value == 4.0,
        format!("1000 caterpillars, max relative difference {worst:.1e}; unit P3 gives {p3_value}"),
    )
}

fn greedy_quality() -> Outcome {
    let table = error_experiment(&[10, 20, 50], 200, 0).unwrap();
    let mut pass = table.is_sane();
    let mut parts = Vec::new();
    for n in [10, 20, 50] {
        let s = table.summary(n);
        pass &= s.median_re <= 0.01;
        if n == 50 {
            pass &= s.p90_re <= 0.002;
        }
        parts.push(format!(
            "n={n}: median {:.3}% p90 {:.3}%",
            100.0 * s.median_re,
            100.0 * s.p90_re
        ));
    }
    outcome(pass, parts.join(", "))
}

fn branch_and_bound_scale() -> Outcome {
    let inst = random_instance(20, 20, true).unwrap();
    let report = branch_and_bound(&inst, Some(60.0), None).unwrap();
    let single = report.proven_optimal && report.wall_time < 60.0;
    let table = timing_experiment(&[10, 15, 20], 20, 0, Some(60.0)).unwrap();
    let means: Vec<f64> = [10, 15, 20]
        .iter()
        .map(|&n| table.summary(n).mean_seconds.unwrap())
        .collect();
    let all_optimal = table.rows.iter().all(|r| r.optimal == Some(true));
    let trend = means.windows(2).all(|p| p[0] <= p[1]);
    outcome(
        single && all_optimal && trend,
        format!(
            "n=20 seed 20 proven in {:.3}s; mean seconds n=10/15/20: {:.4}/{:.4}/{:.4}",
            report.wall_time, means[0], means[1], means[2]
        ),
    )
}

fn v_shape(cases: &[(Instance, bool)]) -> Outcome {
    let mut checked = 0;
    let mut failures = 0;
    for (inst, _) in cases {
        if inst.q() < 2 || !inst.weights().iter().all(|&w| w > 0.0) {
            continue;
        }
        let report = branch_and_bound(inst, None, None).unwrap();
        let c = report.caterpillar(inst).unwrap();
        let internal_w: Vec<f64> = c.backbone().iter().map(|&v| inst.weight(v)).collect();
        let internal_d: Vec<f64> = c
            .backbone()
            .iter()
            .map(|&v| inst.degree(v) as f64)
            .collect();
        let pendant_max: Vec<f64> = (0..c.q())
            .filter(|&k| !c.pendants(k).is_empty())
            .map(|k| {
                c.pendants(k)
                    .iter()
                    .map(|&v| inst.weight(v))
                    .fold(f64::MIN, f64::max)
            })
            .collect();
        let ok = report.proven_optimal
            && is_v_shaped(&internal_w)
            && is_v_shaped(&internal_d)
            && is_v_shaped(&pendant_max);
        failures += usize::from(!ok);
        checked += 1;
    }
    outcome(
        failures == 0,
        format!("{checked} optimal caterpillars, {failures} not V-shaped"),
    )
}

fn relaxation_machinery() -> Outcome {
    let mut count = 0;
    let mut seed = 0;
    let mut infeasible = 0;
    let mut asymmetric = 0;
    let mut closed_worst: f64 = 0.0;
    let mut relax_worst: f64 = 0.0;
    while count < 200 {
        seed += 1;
        let inst = random_instance(10 + (seed as usize % 41), 3000 + seed, true).unwrap();
        if inst.q() < 4 {
            continue;
        }
        count += 1;
        let x = rocp_solution_matrix(&inst).unwrap();
        infeasible += usize::from(!check_feasible(&inst, &x).unwrap().is_feasible());
        let q = inst.q();
        asymmetric +=
            usize::from((0..inst.n()).any(|i| (0..q).any(|k| x.get(i, k) != x.get(i, q - 1 - k))));
        let ub = upper_bound(&inst).unwrap().value;
        let closed = closed_form_terms(&inst).unwrap().value;
        closed_worst = closed_worst.max((closed - ub).abs() / ub);
        let relaxed = partial_relaxation_bound(&inst, &PartialAssignment::empty(inst.n()))
            .unwrap()
            .value;
        relax_worst = relax_worst.max((relaxed - ub).abs() / ub);
    }
    outcome(
        infeasible == 0 && asymmetric == 0 && closed_worst <= 1e-9 && relax_worst <= 1e-6,
        format!(
            "200 instances: {infeasible} infeasible, {asymmetric} asymmetric; closed form deviation {closed_worst:.1e}, relaxation deviation {relax_worst:.1e}"
        ),
    )
}

fn partition_case() -> Outcome {
    let k = 3usize;
    let mut weights = vec![0.0, 0.0];
    weights.extend(std::iter::repeat_n(1.0, 2 * k));
    let pendants: Vec<usize> = (2..2 + 2 * k).collect();
    let mut balanced = f64::MIN;
    let mut splits = 0;
    for mask in 0u32..(1 << (2 * k)) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let left: Vec<usize> = pendants
            .iter()
            .copied()
            .filter(|p| mask & (1 << (p - 2)) != 0)
            .collect();
        let right: Vec<usize> = pendants
            .iter()
            .copied()
            .filter(|p| mask & (1 << (p - 2)) == 0)
            .collect();
        balanced = balanced.max(floyd_vwwi(
            &weights,
            &caterpillar_edges(&[0, 1], &[left, right]),
        ));
        splits += 1;
    }
    let degree = (k + 1) as i64;
    let mut degrees = vec![degree, degree];
    degrees.extend(std::iter::repeat_n(1, 2 * k));
    let inst = Instance::new(&weights, &degrees).unwrap();
    let exact = branch_and_bound(&inst, None, None).unwrap();
    let brute = brute_force_caterpillars(&inst).unwrap().value;
    outcome(
        exact.proven_optimal && exact.value == balanced && brute == balanced,
        format!(
            "{splits} balanced splits give {balanced}; branch and bound {}, enumeration {brute}",
            exact.value
        ),
    )
}

fn main() {
    let small = small_instances();
    let trees = tree_instances();
    let mut optima = Vec::new();
    type Check<'a> = (&'a str, Box<dyn FnOnce(&mut Vec<f64>) -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        (
            "1 oracle equivalence",
            Box::new(|o| oracle_equivalence(&small, o)),
        ),
        (
            "2 caterpillar optimality",
            Box::new(|o| caterpillar_optimality(&trees, o)),
        ),
        (
            "3 bound validity and tightness",
            Box::new(|o| bound_validity(&small, &trees, o)),
        ),
        ("4 decomposition correctness", Box::new(|_| decomposition())),
        ("5 greedy quality", Box::new(|_| greedy_quality())),
        (
            "6 branch and bound scale",
            Box::new(|_| branch_and_bound_scale()),
        ),
        ("7 V-shape structure", Box::new(|_| v_shape(&small))),
        (
            "8 relaxation machinery",
            Box::new(|_| relaxation_machinery()),
        ),
        ("9 partition special case", Box::new(|_| partition_case())),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let result = check(&mut optima);
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {name}: {} [{:.2}s]",
            result.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!result.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
