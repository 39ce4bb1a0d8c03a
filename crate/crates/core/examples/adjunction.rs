//! Random checks of I -> rho(B) iff phi(I) -> B, and of the arc-graph pair.

use pcsplab::reduce::random::{random_digraph, random_structure, seeded};
use pcsplab::reduce::{adjunction_sides, arc_adjunction_sides, GadgetData};
use pcsplab::Budget;

fn main() -> pcsplab::Result<()> {
    let budget = Budget::default();
    let g = GadgetData::arc();
    let mut rng = seeded(1);
    let (mut yes, mut agree) = (0, 0);
    for _ in 0..100 {
        let i = random_structure(&mut rng, g.source(), 4, 0.3);
        let b = random_structure(&mut rng, g.target(), 4, 0.4);
        let s = adjunction_sides(&g, &i, &b, budget.search)?;
        agree += usize::from(s.holds());
        yes += usize::from(s.right);
    }
    println!("gadget: {agree}/100 agree, {yes} positive");

    let mut agree = 0;
    for _ in 0..100 {
        let (g, h) = (random_digraph(&mut rng, 4), random_digraph(&mut rng, 3));
        agree += usize::from(arc_adjunction_sides(&g, &h, &budget)?.holds());
    }
    println!("arc graph: {agree}/100 agree");
    Ok(())
}
