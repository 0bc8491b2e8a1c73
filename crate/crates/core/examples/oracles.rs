//! Exhaustive oracles: every caterpillar, and every tree for tiny orders.
use wiener_max::bench::random_instance;
use wiener_max::solvers::best_tree_by_enumeration;
use wiener_max::{branch_and_bound, brute_force_caterpillars, brute_force_trees, Instance};

fn main() -> wiener_max::Result<()> {
    // two internal vertices with no weight and six unit pendants: the best
    // split puts three pendants on each side
    let inst = Instance::new(
        &[0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
        &[4, 4, 1, 1, 1, 1, 1, 1],
    )?;
    let report = brute_force_caterpillars(&inst)?;
    println!(
        "balanced split: value {}, positions {:?}",
        report.value, report.positions
    );

    for seed in 0..5 {
        let inst = random_instance(8, seed, true)?;
        let (trees, best) = best_tree_by_enumeration(&inst)?;
        let caterpillars = brute_force_caterpillars(&inst)?.value;
        let bnb = branch_and_bound(&inst, None, None)?.value;
        println!(
            "seed {seed}: all trees {trees:.9}, caterpillars {caterpillars:.9}, branch and bound {bnb:.9}, degrees {:?}",
            best.degrees()
        );
        assert_eq!(brute_force_trees(&inst)?, trees);
    }
    Ok(())
}
