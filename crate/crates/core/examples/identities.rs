// Running part of the identity suite and reading the certificates.

use dwork::identities::run_selected;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = run_selected(&["row-relation".to_string(), "vandermonde-inverse".to_string()])?;
    for c in &cases {
        println!("{:<32} {:>8} instances={} <{}>", c.name, if c.verified() { "verified" } else { "FAILED" }, c.instances, c.anchor);
    }
    assert!(cases.iter().all(|c| c.verified()));
    Ok(())
}
