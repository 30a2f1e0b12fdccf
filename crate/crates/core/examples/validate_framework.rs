// Build a framework in code, validate the strength axioms and read a
// violation report.

use cfsem::{framework, Aggregator, StrengthModel, VariantPolicy};

pub fn run_example() -> cfsem::Result<()> {
    let strengths = StrengthModel::new(Aggregator::Sum, VariantPolicy::Persist)
        .with(("a1", 4), ("a3", 5), 3)
        .with(("a2", 3), ("a3", 5), 1)
        .with(("a3", 5), ("a1", 4), 3);
    let fw = framework(&[("a1", 4), ("a2", 3), ("a3", 5)], strengths)?;
    let report = fw.validate_axioms();
    println!("{} arguments, axioms hold: {}", fw.len(), report.ok);

    // A weaker capacity variant may not attack harder than the full argument.
    let broken = StrengthModel::new(Aggregator::Max, VariantPolicy::Persist)
        .with(("x", 2), ("y", 2), 1)
        .with(("x", 1), ("y", 2), 2);
    let fw = framework(&[("x", 2), ("y", 2)], broken)?;
    let report = fw.validate_axioms();
    println!("axioms hold: {}", report.ok);
    for v in &report.violations {
        println!("  {v}");
    }
    if let Err(e) = fw.validated() {
        println!("rejected: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
