//! The arc-graph gadget on paths, cycles and the bidirected triangle.

use pcsplab::hom::are_isomorphic;
use pcsplab::reduce::{apply_gadget_replacement, arc_graph, pp_power, GadgetData};
use pcsplab::structure::generators::{cycle, path};
use pcsplab::structure::{serialize_structure, Relation, Signature, Structure};
use pcsplab::HomSearchConfig;

fn main() -> pcsplab::Result<()> {
    let cfg = HomSearchConfig::default();
    let g = GadgetData::arc();
    for n in 1..=4 {
        let out = apply_gadget_replacement(&g, &path(n))?;
        println!("phi(P{n}) ~ P{}: {}", n + 1, are_isomorphic(&out, &path(n + 1), cfg)?);
    }

    let sig = Signature::from_pairs(&[("E", 2)]);
    let edges = [0, 1, 1, 0, 1, 2, 2, 1, 0, 2, 2, 0];
    let tri = Structure::from_relations("tri", 3, sig, vec![Relation::from_tuples(2, edges.chunks(2))])?;
    print!("{}", serialize_structure(&apply_gadget_replacement(&g, &tri)?));

    println!("delta(C5) ~ C5: {}", are_isomorphic(&arc_graph(&cycle(5))?, &cycle(5), cfg)?);
    print!("{}", serialize_structure(&pp_power(&g, &cycle(3), cfg)?));
    Ok(())
}
