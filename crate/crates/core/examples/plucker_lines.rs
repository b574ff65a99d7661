// Lines in P^4: Plücker coordinates, the quadric relations and the
// symmetry group acting on them.

use dwork::lines::{stabilizer, Group, ProjLine, ProjPoint, SymmetryElement};
use dwork::numeric::{Cyclo, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l: ProjLine<Cyclo> = ProjLine::new(ProjPoint::from_ints([1, 0, -1, 0, 0])?, ProjPoint::from_ints([0, 1, 0, -1, 0])?)?;
    assert!(l.plucker_residuals().iter().all(Ring::is_zero));
    println!("plucker vector: {:?}", l.plucker().iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let g = SymmetryElement::new([0, 1, 0, 4, 0], [1, 0, 2, 3, 4]);
    let moved = dwork::lines::apply_symmetry(&g, &l);
    assert!(!moved.same_line(&l) || g.is_identity());
    let stab = stabilizer(&l, Group::ProductOne);
    println!("stabilizer of the crossing line in G has order {}", stab.len());
    assert_eq!(stab.len(), 5);
    Ok(())
}
