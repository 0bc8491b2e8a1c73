//! Evaluate the weighted and unweighted Wiener index of small trees.
use wiener_max::tree::{path, star};
use wiener_max::{vwwi_tree, wiener_index, WeightedTree};

fn main() -> wiener_max::Result<()> {
    let p4 = path(vec![1.0; 4])?;
    println!("unit path on 4 vertices: WI = {}", wiener_index(&p4));

    let s = star(vec![2.0, 1.0, 1.0, 1.0])?;
    println!("star with a heavy centre: VWWI = {}", vwwi_tree(&s));

    let t = WeightedTree::new(
        vec![0.5, 2.0, 1.0, 3.0, 1.5],
        vec![(0, 1), (1, 2), (1, 3), (3, 4)],
    )?;
    println!("degrees {:?}, VWWI = {}", t.degrees(), vwwi_tree(&t));
    for row in t.distance_matrix() {
        println!("  {row:?}");
    }
    Ok(())
}
