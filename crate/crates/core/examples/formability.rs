// The four formability semantics for one party of the seven-argument
// framework.

use cfsem::{io, Formability};

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/seven.json"))?;
    let sem = fw.semantics();
    let party = fw.set_of_ids(&["a2"])?;
    for kind in Formability::ALL {
        let result = sem.formability(kind, &party)?;
        let partners: Vec<String> = result.partners.iter().map(cfsem::display_set).collect();
        println!("{kind}({}) = {}", cfsem::display_set(&party), partners.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
