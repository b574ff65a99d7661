// Schubert calculus on G(2,5): the class of the surface of lines and its
// degrees.

use dwork::schubert::{incidence_decomposition, SchubertClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s1 = SchubertClass::sigma(1, 0);
    println!("s1^4 = {}", s1.pow(4));
    let t = incidence_decomposition();
    println!("[S] = {}", t.surface);
    println!("deg in P^9 = {}, degree of the swept threefold = {}", t.plucker_degree, t.threefold_degree);
    assert!(t.matches_expected());
    Ok(())
}
