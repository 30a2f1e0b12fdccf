// Intrinsic arguments and the view of a coalition.

use cfsem::{io, ArgSet};

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ldp.json"))?;
    let sem = fw.semantics();
    for ids in [&["a1", "a3"][..], &["a1", "a2", "a3"]] {
        let coalition: ArgSet = fw.set_of_ids(ids)?;
        let view = sem.view(&coalition)?;
        println!("coalition {}", cfsem::display_set(&coalition));
        println!("  intrinsic {}", cfsem::display_set(&view.intrinsic.members));
        println!("  view      {}", cfsem::display_set(&view.arguments));
        for e in &view.attacks {
            println!("  {} -> {} ({})", cfsem::display_set(&e.attackers), e.target, e.strength);
        }
        for d in &view.diagnostics {
            println!("  note: {d}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
