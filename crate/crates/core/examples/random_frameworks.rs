// Seeded random frameworks and a brute-force cross-check of the evaluator.

use cfsem::oracle::{generate_random, Brute, RandomModelSpec};
use cfsem::Aggregator;

pub fn run_example() -> cfsem::Result<()> {
    for (seed, aggregator) in [(1, Aggregator::Max), (2, Aggregator::Sum), (3, Aggregator::ExplicitOnly)] {
        let fw = generate_random(&RandomModelSpec::new(5, 0.4, seed).with_aggregator(aggregator));
        let sem = fw.semantics();
        let fast = sem.c_preferred_sets()?;
        let slow = Brute::new(&fw)?.c_preferred_sets()?;
        println!(
            "seed {seed} ({aggregator}): {} attack entries, {} c-preferred sets, brute force agrees: {}",
            fw.strengths().entries().len(),
            fast.len(),
            fast == slow
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cfsem::Result<()> {
    run_example()
}
