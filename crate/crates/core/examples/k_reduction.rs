//! The k-reduction of 1-in-3 instances over (T, H2); a solution of the
//! instance evaluates to a homomorphism from the output into H2.

use pcsplab::hom::find_homomorphism;
use pcsplab::reduce::random::{planted_one_in_three, seeded};
use pcsplab::reduce::{evaluation_witness, k_reduction, KReduction};
use pcsplab::structure::generators::{nae, one_in_three};
use pcsplab::Budget;

fn main() -> pcsplab::Result<()> {
    let budget = Budget::default();
    let (t, h2) = (one_in_three(), nae(2));
    let mut rng = seeded(5);
    for k in 1..=3 {
        let i = planted_one_in_three(&mut rng, 5, 3);
        match k_reduction(&t, &h2, k, &i, &budget)? {
            KReduction::Output { structure, plan, class } => {
                let h = find_homomorphism(&i, &t, budget.search)?.expect("planted");
                let w = evaluation_witness(&plan, &class, structure.domain_size(), &h)?;
                println!(
                    "k = {k}: {} subsets, {} elements, witness valid {}",
                    plan.subsets.len(),
                    structure.domain_size(),
                    w.validate(&structure, &h2)
                );
            }
            KReduction::PromiseViolation { subset } => println!("k = {k}: violation on {subset:?}"),
        }
    }
    Ok(())
}
