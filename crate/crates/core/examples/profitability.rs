// Profit of joining a coalition, seen from each side.

use cfsem::io;

pub fn run_example() -> cfsem::Result<()> {
    let fw = io::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/asym.json"))?;
    let sem = fw.semantics();
    let joined = fw.set_of_ids(&["s1", "a2"])?;
    for side in ["s1", "a2"] {
        let s1 = fw.set_of_ids(&[side])?;
        let v = sem.profitable(&s1, &joined)?;
        println!(
            "{} joining {}: holds {}, larger set {}, better state {}, fewer attackers {} ({} -> {})",
            cfsem::display_set(&s1),
            cfsem::display_set(&joined),
            v.holds,
            v.larger_set,
            v.better_state,
            v.fewer_attackers,
            v.attacker_counts.0,
            v.attacker_counts.1
        );
    }
    let s1 = fw.set_of_ids(&["s1"])?;
    println!("maximal coalitions for {{s1}}:");
    for m in sem.max_sets(&s1)? {
        println!("  {} (maximal profit: {})", cfsem::display_set(&m), sem.max_profitable(&s1, &m)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
