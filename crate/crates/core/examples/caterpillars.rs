//! Build a caterpillar from an assignment of vertices to backbone positions
//! and compare the position-weight formula with a direct tree evaluation.
use wiener_max::{
    caterpillar_from_assignment, check_feasible, qap_objective, vwwi_assignment, vwwi_caterpillar,
    vwwi_tree, AssignmentMatrix, Instance,
};

fn main() -> wiener_max::Result<()> {
    // two internal vertices of degree 4 and 3, five pendants
    let inst = Instance::new(&[1.0; 7], &[4, 3, 1, 1, 1, 1, 1])?;
    let x = AssignmentMatrix::from_positions(inst.q(), &[0, 1, 0, 0, 0, 1, 1]);
    println!("feasible: {}", check_feasible(&inst, &x)?.is_feasible());
    println!("backbone term: {}", qap_objective(&inst, &x)?);
    println!("index from assignment: {}", vwwi_assignment(&inst, &x)?);

    let cat = caterpillar_from_assignment(&inst, &x)?;
    println!("position weights {:?}", cat.position_weights());
    println!("prices {:?}", cat.position_prices());
    println!("caterpillar formula: {}", vwwi_caterpillar(&cat));
    println!("tree evaluation:     {}", vwwi_tree(&cat.to_tree()));

    // moving a pendant breaks the degree balance
    let bad = AssignmentMatrix::from_positions(inst.q(), &[0, 1, 0, 0, 1, 1, 1]);
    for v in check_feasible(&inst, &bad)?.violations {
        println!("violation: {v}");
    }
    Ok(())
}
