//! AIP and BLP+AIP on 1-in-3 instances, rounded to NAE assignments.

use pcsplab::hom::exists_homomorphism;
use pcsplab::relax::{aip_accepts, blp_aip, round_one_in_three, AipOutcome};
use pcsplab::reduce::random::{planted_one_in_three, seeded};
use pcsplab::structure::generators::{nae, one_in_three};
use pcsplab::structure::{Relation, Structure};
use pcsplab::HomSearchConfig;

fn main() -> pcsplab::Result<()> {
    let t = one_in_three();
    let h2 = nae(2);
    let sig = t.signature().clone();

    // x + x + x = 1 has no integer solution.
    let uuu = Structure::from_relations("uuu", 1, sig.clone(), vec![Relation::from_tuples(3, [[0, 0, 0]])])?;
    if let AipOutcome::Infeasible(c) = aip_accepts(&t, &uuu)? {
        let y: Vec<String> = c.y.iter().map(|q| q.to_string()).collect();
        println!("uuu rejected, certificate [{}]", y.join(" "));
    }

    let mut rng = seeded(3);
    for _ in 0..3 {
        let i = planted_one_in_three(&mut rng, 7, 5);
        if let AipOutcome::Solution(x) = aip_accepts(&t, &i)? {
            let h = round_one_in_three(&i, &x)?;
            println!("{} -> H2 via {:?}, valid {}", i.name(), h.map(), h.validate(&i, &h2));
        }
        let out = blp_aip(&t, &i)?;
        println!("  blp+aip accepts {}, support {}", out.accepted, out.support.len());
    }

    // (0,1,2), (0,1,3), (2,3,4), (0,0,4): no 1-in-3 solution, but NAE-colourable?
    let i = Structure::from_relations(
        "mixed",
        5,
        sig,
        vec![Relation::from_tuples(3, [[0, 1, 2], [0, 1, 3], [2, 3, 4], [0, 0, 4]])],
    )?;
    let cfg = HomSearchConfig::default();
    println!(
        "mixed: to T {}, to H2 {}, AIP {}",
        exists_homomorphism(&i, &t, cfg)?,
        exists_homomorphism(&i, &h2, cfg)?,
        aip_accepts(&t, &i)?.is_solution()
    );
    Ok(())
}
