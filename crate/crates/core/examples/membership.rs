// Deciding whether a line lies in X_t, and solving the line system in a
// chart.

use dwork::census::model_crossing_line;
use dwork::membership::{contained, pullback_coefficients_formal, solve_line_system};
use dwork::numeric::{rat, Cyclo, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = model_crossing_line();
    assert!(pullback_coefficients_formal(&l).iter().all(|c| c.is_zero()));
    assert_eq!(contained(&l, &Cyclo::from_int(7)), Some(true));
    println!("(a:b:-a:-b:0) lies in every fiber");

    let u = [0, 1, 2, 3, -1].map(|v| rat(v, 1));
    let sol = solve_line_system(0, &u)?;
    assert!(sol.residuals().iter().all(Ring::is_zero));
    assert_eq!(sol.closed_form(), sol.y5);
    println!("chart 0, u = (0,1,2,3,-1): y^5 = {:?}, w = {}", sol.y5.iter().map(|y| y.to_string()).collect::<Vec<_>>(), sol.w());
    Ok(())
}
