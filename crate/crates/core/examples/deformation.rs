// Normal-bundle matrices of the model lines, their kernels and the
// resulting splitting types.

use dwork::deformation::{deformation_report, normal_matrix, splitting_type, LineFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = normal_matrix(LineFamily::L3);
    println!("psi for the van Geemen line (divided by 5):");
    for (label, row) in m.row_labels.iter().zip(&m.entries) {
        println!("  {label:>14}: {}", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" | "));
    }
    let report = deformation_report();
    for k in &report.kernels {
        println!("h0 {:<14} = {} (expected {})", k.name, k.computed, k.expected);
    }
    assert!(report.kernels_ok());
    println!("h0 = 1 on a rank 2 bundle of degree -2: {}", splitting_type(1, 2, None)?);
    Ok(())
}
