//! Free structures generated by a template, over projections and over Pol(T, H2).

use pcsplab::hom::{are_isomorphic, exists_homomorphism};
use pcsplab::minion::{free_structure, FreeMinion};
use pcsplab::structure::generators::{clique, nae, one_in_three};
use pcsplab::{Budget, HomSearchConfig};

fn main() -> pcsplab::Result<()> {
    let budget = Budget::default();
    let cfg = HomSearchConfig::default();

    let k3 = clique(3);
    let f = free_structure(FreeMinion::Projections { domain: 3 }, &k3, &budget)?;
    println!("projections over K3: {} elements, ~ K3 {}", f.structure.domain_size(), are_isomorphic(&f.structure, &k3, cfg)?);

    let (t, h2) = (one_in_three(), nae(2));
    let f = free_structure(FreeMinion::Polymorphisms { a: &t, b: &h2 }, &t, &budget)?;
    println!("Pol(T, H2) over T: {} elements", f.structure.domain_size());
    for (e, v) in f.elements.iter().zip(f.evaluation_map()) {
        println!("  {e} -> {v}");
    }
    println!("maps to H2: {}", exists_homomorphism(&f.structure, &h2, cfg)?);
    Ok(())
}
