//! Weak near-unanimity on (K3, K6): a hand-written pair, then a search.

use pcsplab::minion::{check_condition, satisfies, FunctionTable, MinionSlice, MinorCondition};
use pcsplab::structure::generators::{clique, nae};
use pcsplab::Budget;

fn main() -> pcsplab::Result<()> {
    let budget = Budget::default();
    let (k3, k6) = (clique(3), clique(6));
    let wnu = MinorCondition::wnu();
    println!("{wnu}");

    // n keeps a repeated value and sends three distinct colours to 3..5.
    let n = FunctionTable::from_fn(3, 3, 6, |x| {
        if x[0] == x[1] || x[0] == x[2] {
            x[0]
        } else if x[1] == x[2] {
            x[1]
        } else {
            x[0] + 3
        }
    })?;
    let s = FunctionTable::from_fn(2, 3, 6, |x| x[0])?;
    println!(
        "hand-written pair: polymorphisms {} {}, identities {}",
        n.is_polymorphism(&k3, &k6),
        s.is_polymorphism(&k3, &k6),
        satisfies(&wnu, &[n, s])?
    );

    let slice = MinionSlice::polymorphisms(&k3, &k6, &[2], &budget)?.with_implicit(&[3])?;
    match check_condition(&wnu, &slice, &budget)? {
        Some(w) => println!("search found n = {}, s = {}", w[0], w[1]),
        None => println!("search found nothing"),
    }

    let slice = MinionSlice::polymorphisms(&nae(2), &nae(3), &[2, 3], &budget)?;
    let found = check_condition(&wnu, &slice, &budget)?.is_some();
    println!("WNU in Pol(H2, H3): {found}");
    Ok(())
}
