// Save and reload framework documents, and report a malformed one.

use cfsem::io;

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/indep-state.json"))?;
    let path = std::env::temp_dir().join(format!("cfsem-example-{}.json", std::process::id()));
    io::save(&fw, &path)?;
    let back = io::load(&path)?;
    std::fs::remove_file(&path)?;
    println!("round trip equal: {}", back == fw);
    print!("{}", io::to_string(&fw));

    let bad = r#"{"version":"1","arguments":[{"id":"x","capacity":0}],"attacks":[]}"#;
    match io::parse(bad) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
