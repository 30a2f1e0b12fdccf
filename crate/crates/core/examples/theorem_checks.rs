// Run every theorem checker on a fixture.

use cfsem::io;
use cfsem::oracle::check_all;

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/disc.json"))?;
    for report in check_all(&fw, "disc")? {
        let witness = report.counterexample.as_deref().map(|w| format!(" [{w}]")).unwrap_or_default();
        println!("{} {}{witness} {}", report.theorem, report.verdict, report.detail);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
