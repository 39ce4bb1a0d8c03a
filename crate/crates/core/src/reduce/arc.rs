//! The arc graph `δ` of a digraph and its right adjoint `δ_R`.

use crate::budget::{Budget, HomSearchConfig};
use crate::error::{Error, Result};
use crate::hom::exists_homomorphism;
use crate::structure::{Relation, Structure};

use super::gadget::AdjunctionSides;

fn require_digraph(g: &Structure) -> Result<()> {
    let sig = g.signature();
    if sig.len() != 1 || sig.symbols()[0].arity != 2 {
        return Err(Error::WrongSignature(format!(
            "`{}` is not a digraph (one binary relation)",
            g.name()
        )));
    }
    Ok(())
}

/// `δ(G)`: vertex `k` is the `k`-th edge of `G` in canonical order, with
/// `(x, y) → (y, w)` for every 2-path.
pub fn arc_graph(g: &Structure) -> Result<Structure> {
    require_digraph(g)?;
    let e = g.relation(0);
    // Edges are sorted, so the out-edges of `y` form a contiguous block.
    let mut first = vec![e.len(); g.domain_size() + 1];
    for k in (0..e.len()).rev() {
        first[e.tuple(k)[0]] = k;
    }
    for v in (0..g.domain_size()).rev() {
        if first[v] == e.len() {
            first[v] = first[v + 1];
        }
    }
    let mut data = Vec::new();
    for (k, t) in e.tuples().enumerate() {
        let y = t[1];
        for l in first[y]..first[y + 1] {
            data.push(k);
            data.push(l);
        }
    }
    Structure::from_relations(
        format!("arc-{}", g.name()),
        e.len(),
        g.signature().clone(),
        vec![Relation::from_tuples(2, data.chunks(2))],
    )
}

/// `δ_R(H)`: vertex `U` is the subset with bit `i` set iff `i ∈ U` (the
/// empty set included); `U → V` iff some `u ∈ U` has `(u, v) ∈ E` for all
/// `v ∈ V`.
pub fn arc_graph_right_adjoint(h: &Structure, budget: &Budget) -> Result<Structure> {
    require_digraph(h)?;
    let n = h.domain_size();
    let size = budget.check_power("subsets of the domain", 2, n)?;
    budget.check_tuples("subset pairs", 4, n)?;
    // out[u] = bitmask of out-neighbours.
    let mut out = vec![0usize; n];
    for t in h.relation(0).tuples() {
        out[t[0]] |= 1 << t[1];
    }
    let mut data = Vec::new();
    for u_set in 0..size {
        // V works iff V ⊆ out[u] for some u ∈ U.
        for v_set in 0..size {
            if (0..n).any(|u| u_set >> u & 1 == 1 && v_set & !out[u] == 0) {
                data.push(u_set);
                data.push(v_set);
            }
        }
    }
    Structure::from_relations(
        format!("arcR-{}", h.name()),
        size,
        h.signature().clone(),
        vec![Relation::from_tuples(2, data.chunks(2))],
    )
}

/// Both sides of `δ(G) → H ⟺ G → δ_R(H)`.
pub fn arc_adjunction_sides(g: &Structure, h: &Structure, budget: &Budget) -> Result<AdjunctionSides> {
    let cfg: HomSearchConfig = budget.search;
    Ok(AdjunctionSides {
        left: exists_homomorphism(&arc_graph(g)?, h, cfg)?,
        right: exists_homomorphism(g, &arc_graph_right_adjoint(h, budget)?, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::are_isomorphic;
    use crate::structure::generators::*;

    #[test]
    fn cycles_paths_loop() {
        let cfg = HomSearchConfig::default();
        for n in 3..=6 {
            assert!(are_isomorphic(&arc_graph(&cycle(n)).unwrap(), &cycle(n), cfg).unwrap());
        }
        assert!(arc_graph(&path(2)).unwrap().same_shape(&path(1)));
        assert!(arc_graph(&single_loop()).unwrap().same_shape(&single_loop()));
    }

    #[test]
    fn right_adjoint_of_loop() {
        let r = arc_graph_right_adjoint(&single_loop(), &Budget::default()).unwrap();
        assert_eq!(r.domain_size(), 2);
        // ∅ has no out-edges; {v} reaches {v} and ∅.
        let edges: Vec<&[usize]> = r.relation(0).tuples().collect();
        assert_eq!(edges, vec![&[1, 0][..], &[1, 1][..]]);
    }

    #[test]
    fn right_adjoint_size() {
        for n in 0..5 {
            let r = arc_graph_right_adjoint(&clique(n), &Budget::default()).unwrap();
            assert_eq!(r.domain_size(), 1 << n);
        }
    }

    #[test]
    fn wrong_signature() {
        assert!(matches!(arc_graph(&one_in_three()), Err(Error::WrongSignature(_))));
        assert!(matches!(
            arc_graph_right_adjoint(&one_in_three(), &Budget::default()),
            Err(Error::WrongSignature(_))
        ));
    }

    #[test]
    fn adjunction_on_small_cases() {
        let b = Budget::default();
        for g in [path(3), cycle(3), cycle(4), single_loop(), clique(3)] {
            for h in [clique(2), clique(3), cycle(3), path(2)] {
                assert!(arc_adjunction_sides(&g, &h, &b).unwrap().holds());
            }
        }
    }
}
