//! Small versions of the error, gap and timing sweeps, written as CSV.
use wiener_max::bench::{error_experiment, gap_experiment, timing_experiment};

fn main() -> wiener_max::Result<()> {
    let errors = error_experiment(&[10, 20, 50], 50, 0)?;
    for n in errors.sizes() {
        let s = errors.summary(n);
        println!(
            "n={n}: median {:.4}%, p10 {:.4}%, p90 {:.4}%",
            100.0 * s.median_re,
            100.0 * s.p10_re,
            100.0 * s.p90_re
        );
    }

    let gaps = gap_experiment(&[10, 15], 10, 1)?;
    for n in gaps.sizes() {
        let s = gaps.summary(n);
        println!(
            "n={n}: mean bound/opt {:.5}, mean greedy/opt {:.5}",
            s.mean_ub_over_exact.unwrap_or(f64::NAN),
            s.mean_greedy_over_exact.unwrap_or(f64::NAN)
        );
    }

    let timing = timing_experiment(&[10, 14, 18], 5, 2, Some(30.0))?;
    print!("{}", timing.to_csv_string(true)?);
    Ok(())
}
