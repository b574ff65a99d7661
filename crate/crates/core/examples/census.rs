// The line census: cones and crossing lines of the Fermat fiber, van
// Geemen lines, and the bookkeeping arithmetic.

use dwork::census::{census_arithmetic, enumerate_fermat_lines, solve_van_geemen_branch, solve_van_geemen_numeric};
use dwork::numeric::Ball;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = enumerate_fermat_lines();
    println!("{} cones, {} crossing lines", f.cones.len(), f.crossings.len());
    assert_eq!((f.cones.len(), f.crossings.len()), (50, 375));

    let sols = solve_van_geemen_numeric(&Ball::exact_int(1), 128)?;
    for s in sols.iter().take(2) {
        println!("a = {}, residual < {}", s.a, s.residual_bound());
    }
    assert_eq!(sols.len(), 10);
    assert_eq!(solve_van_geemen_branch(0).len(), 5);

    let table = census_arithmetic();
    for row in &table.rows {
        println!("({}) {}: {}", row.id, row.statement, if row.holds() { "ok" } else { "MISMATCH" });
    }
    table.check()?;
    Ok(())
}
