//! Walks the group catalog: dimensions, basis normalization, structure
//! constants and the Jacobi identity.

use lieforge::catalog::{
    anti_hermitian_residual, structure_constants, symplectic_residual, GroupSpec, DEFAULT_SCAN_GROUPS,
};

fn main() -> lieforge::Result<()> {
    println!("{:<5} {:>4} {:>6} {:>7} {:>11} {:>11} {:>11}", "group", "dim", "matrix", "k_auto", "anti-herm", "jacobi", "symplectic");
    for name in DEFAULT_SCAN_GROUPS {
        let g: GroupSpec = name.parse()?;
        let f = structure_constants(&g);
        println!(
            "{:<5} {:>4} {:>6} {:>7} {:>11.2e} {:>11.2e} {:>11.2e}",
            g.name,
            g.dim,
            g.matrix_size,
            g.auto_k(),
            anti_hermitian_residual(&g),
            f.jacobi_residual(),
            symplectic_residual(&g),
        );
    }

    // su(2) in the iσ basis: [X_a, X_b] = -ε_abc X_c.
    let su2: GroupSpec = "su2".parse()?;
    let f = structure_constants(&su2);
    println!("\nsu2: f_012 = {}, f_120 = {}, f_102 = {}", f.get(0, 1, 2), f.get(1, 2, 0), f.get(1, 0, 2));
    Ok(())
}
