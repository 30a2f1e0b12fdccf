// Conflict-eliminable, c-admissible and c-preferred sets of a framework.

use cfsem::io;

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/asym.json"))?;
    let sem = fw.semantics();
    let show = |sets: Vec<cfsem::ArgSet>| sets.iter().map(cfsem::display_set).collect::<Vec<_>>().join(" ");
    println!("conflict-eliminable: {}", show(sem.conflict_eliminable_sets()?));
    println!("c-admissible: {}", show(sem.c_admissible_sets()?));
    println!("c-preferred: {}", show(sem.c_preferred_sets()?));
    for s in sem.c_preferred_sets()? {
        println!("{} has state {}", cfsem::display_set(&s), sem.state_rank(&s)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
