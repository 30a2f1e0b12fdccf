// A restricted framework, where every attack defeats, read as a
// group-attack framework: both sides enumerate the same sets.

use cfsem::oracle::generate_restricted;
use cfsem::{check_reduction, NPFramework, NPKind};

pub fn run_example() -> cfsem::Result<()> {
    let fw = generate_restricted(5, 0.35, 11);
    let report = check_reduction(&fw)?;
    println!("reduction holds: {}", report.ok);
    let np = NPFramework::from_framework(&fw);
    for (a1, target) in &np.attacks {
        println!("  {{{}}} attacks {target}", a1.iter().cloned().collect::<Vec<_>>().join(","));
    }
    for kind in [NPKind::ConflictFree, NPKind::Admissible, NPKind::Preferred] {
        println!("{kind}: {} sets", cfsem::np_semantics(&np, kind)?.len());
    }
    let preferred: Vec<String> = fw.semantics().c_preferred_sets()?.iter().map(cfsem::display_set).collect();
    println!("c-preferred: {}", preferred.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
