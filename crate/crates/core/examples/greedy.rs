//! The greedy caterpillar and the relative error it certifies for the bound.
use wiener_max::bench::random_instance;
use wiener_max::{greedy_caterpillar, relative_error_from, upper_bound, Instance};

fn main() -> wiener_max::Result<()> {
    let inst = Instance::new(&[1.0, 1.0, 4.0, 3.0, 2.0, 1.0], &[3, 3, 1, 1, 1, 1])?;
    let report = greedy_caterpillar(&inst)?;
    println!("positions {:?}, value {}", report.positions, report.value);

    for seed in 0..5 {
        let inst = random_instance(40, seed, true)?;
        let greedy = greedy_caterpillar(&inst)?.value;
        let ub = upper_bound(&inst)?.value;
        println!(
            "seed {seed}: greedy {greedy:.6}, bound {ub:.6}, error at most {:.4}%",
            100.0 * relative_error_from(ub, greedy)?
        );
    }
    Ok(())
}
