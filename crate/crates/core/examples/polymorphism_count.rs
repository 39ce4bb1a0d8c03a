//! Counts binary polymorphisms from K3 to K5 and lists a few of them.

use std::time::Instant;

use pcsplab::minion::{count_polymorphisms, enumerate_polymorphisms};
use pcsplab::structure::generators::clique;
use pcsplab::Budget;

fn main() -> pcsplab::Result<()> {
    let budget = Budget::default();
    let start = Instant::now();
    let n = count_polymorphisms(&clique(3), &clique(5), 2, &budget)?;
    println!("|Pol^(2)(K3, K5)| = {n} ({:?})", start.elapsed());

    for m in 3..=5 {
        let slice = enumerate_polymorphisms(&clique(3), &clique(m), 1, &budget)?;
        println!("unary polymorphisms K3 -> K{m}: {}", slice.tables(1)?.len());
    }
    Ok(())
}
