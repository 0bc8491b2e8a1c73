//! JSON instance, tree and assignment files.
use wiener_max::{
    branch_and_bound, vwwi_tree, AssignmentMatrix, Instance, InstanceFile, TreeFile, WeightedTree,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = r#"{"weights": [0.3, 0.9, 0.6, 0.5, 0.7, 0.1, 0.4, 0.8],
                   "degrees": [2, 1, 3, 1, 3, 1, 2, 1]}"#;
    let file: InstanceFile = serde_json::from_str(text)?;
    let inst = Instance::from_file(&file)?;
    println!(
        "canonical order {:?}, monotone {}",
        inst.original_index(),
        inst.is_monotone()
    );

    let report = branch_and_bound(&inst, None, None)?;
    let out = serde_json::to_string(&report.to_file(&inst)?)?;
    println!("{out}");

    // the report is also a tree file
    let tree: TreeFile = serde_json::from_str(&out)?;
    println!(
        "re-evaluated: {}",
        vwwi_tree(&WeightedTree::from_file(&tree)?)
    );

    let x = report.assignment(&inst);
    let back = AssignmentMatrix::from_file(&x.to_file())?;
    println!("assignment round trip: {}", back == x);
    Ok(())
}
