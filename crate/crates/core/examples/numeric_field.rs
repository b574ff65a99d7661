// Exact arithmetic in Q(zeta_15), a fifth-root tower over it, and a
// certified complex embedding.

use dwork::numeric::{embed_complex, radical_adjoin, rat, Cyclo, Field, Ring, Tower};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = Cyclo::mu();
    let xi = Cyclo::xi();
    assert!(mu.pow(5).is_one());
    assert!(Cyclo::one().plus(&xi).plus(&xi.pow(2)).is_zero());
    let inv = mu.plus(&Cyclo::from_int(2)).inverse().ok_or("not invertible")?;
    assert!(inv.times(&mu.plus(&Cyclo::from_int(2))).is_one());
    println!("mu = {mu}\n1/(mu + 2) = {inv}");

    let tower = radical_adjoin(Cyclo::from_rational(&rat(27, 2)))?;
    let r = tower.root();
    assert_eq!(r.pow(5), Tower::from(rat(27, 2)));
    let t = Tower::from_int(6).divide(&r.times(&r)).ok_or("r is zero")?;
    assert_eq!(t.pow(5), Tower::from(rat(128, 3)));
    println!("R^5 = 27/2 and t = 6/R^2 gives t^5 = {}", t.pow(5));

    let ball = embed_complex(&r, 0, 128)?;
    println!("R under the principal embedding: {ball}");
    Ok(())
}
