//! Exact branch and bound, with limits and with several threads.
use wiener_max::bench::random_instance;
use wiener_max::{branch_and_bound, branch_and_bound_with, is_v_shaped, BnbOptions};

fn main() -> wiener_max::Result<()> {
    let inst = random_instance(20, 3, true)?;
    let report = branch_and_bound(&inst, None, None)?;
    println!(
        "n=20: value {:.6}, optimal {}, {} nodes, {} pruned, {:.3}s",
        report.value,
        report.proven_optimal,
        report.nodes_explored,
        report.nodes_pruned,
        report.wall_time
    );
    println!("incumbents {:?}", report.incumbent_history);

    let cat = report.caterpillar(&inst).expect("q >= 2");
    let internal: Vec<f64> = cat.backbone().iter().map(|&v| inst.weight(v)).collect();
    println!(
        "internal weights along the backbone {internal:?}, V-shaped {}",
        is_v_shaped(&internal)
    );

    let limited = branch_and_bound(&inst, None, Some(10))?;
    println!(
        "node limit 10: value {:.6}, optimal {}",
        limited.value, limited.proven_optimal
    );

    let parallel = branch_and_bound_with(
        &inst,
        &BnbOptions {
            threads: 4,
            ..BnbOptions::default()
        },
    )?;
    println!(
        "4 threads: value {:.6}, optimal {}",
        parallel.value, parallel.proven_optimal
    );
    Ok(())
}
