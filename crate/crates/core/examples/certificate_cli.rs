// Driving the command line in-process and parsing its JSON certificate.

use dwork::cert::Certificate;
use dwork::cli::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["dwork", "schubert", "--format", "json"], &mut out, &mut err);
    let cert = Certificate::from_json_str(std::str::from_utf8(&out)?)?;
    println!("{}: exit {code}, pass = {}, {} cases", cert.suite, cert.pass, cert.cases.len());
    assert_eq!(code, 0);
    assert!(cert.pass);
    Ok(())
}
