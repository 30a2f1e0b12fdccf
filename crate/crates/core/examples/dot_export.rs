// Graphviz drawings of a framework and of a coalition's view.

use cfsem::dot::{export_dot, DotScope};
use cfsem::io;

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ldp.json"))?;
    print!("{}", export_dot(&fw, &DotScope::Whole)?);
    let coalition = fw.set_of_ids(&["a1", "a3"])?;
    print!("{}", export_dot(&fw, &DotScope::ViewOf(coalition))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
