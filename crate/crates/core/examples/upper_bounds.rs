//! Upper bounds: the symmetric relaxation matrix, its closed form, and the
//! numerical relaxation with some vertices pinned.
use wiener_max::{
    closed_form_terms, partial_relaxation_bound, rocp_solution_matrix, upper_bound, Instance,
    PartialAssignment,
};

fn main() -> wiener_max::Result<()> {
    let inst = Instance::new(
        &[0.9, 0.8, 0.6, 0.5, 0.4, 0.7, 0.6, 0.3, 0.2, 0.1],
        &[3, 3, 3, 2, 2, 1, 1, 1, 1, 1],
    )?;
    let x = rocp_solution_matrix(&inst)?;
    for i in 0..inst.n() {
        println!("row {i}: {:?}", x.row(i));
    }
    let ub = upper_bound(&inst)?;
    println!(
        "upper bound {} ({:?}), linearization gap {:e}",
        ub.value, ub.method, ub.gap_estimate
    );

    let terms = closed_form_terms(&inst)?;
    println!("pair weights {:?}", terms.pair_weights);
    println!("block ends {:?}", terms.block_ends);
    println!("closed form {}", terms.value);

    let mut fixed = PartialAssignment::empty(inst.n());
    println!(
        "relaxation, nothing pinned: {}",
        partial_relaxation_bound(&inst, &fixed)?.value
    );
    // pin the heaviest vertex to the middle of the backbone
    fixed.fix(0, inst.q() / 2);
    let pinned = partial_relaxation_bound(&inst, &fixed)?;
    println!(
        "relaxation, vertex 0 in the middle: {} (gap {:e})",
        pinned.value, pinned.gap_estimate
    );
    Ok(())
}
