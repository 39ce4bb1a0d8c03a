//! Free structures of function minions.
//!
//! For a generator `G` with `N` elements, the domain is the list of `N`-ary
//! functions of the minion. For a `k`-ary symbol whose relation in `G` has
//! tuples `r₀, …, r_{m-1}`, the tuple `(f₀, …, f_{k-1})` is related iff some
//! `m`-ary `g` has `f_t = g^{π_t}` for every `t`, where `π_t(j) = r_j[t]`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::table::{fill_tuple, FunctionTable};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hom::HomSearch;
use crate::structure::{power, Relation, Structure};

/// The minions whose free structures can be built.
#[derive(Debug, Clone, Copy)]
pub enum FreeMinion<'a> {
    /// `Pol(a, b)`, enumerated through the homomorphism engine.
    Polymorphisms { a: &'a Structure, b: &'a Structure },
    /// Projections on a set of the given size; witnesses are symbolic, so
    /// any generator size is fine.
    Projections { domain: usize },
}

#[derive(Debug, Clone)]
pub struct FreeStructure {
    pub structure: Structure,
    /// The function behind each element.
    pub elements: Vec<FunctionTable>,
}

impl FreeStructure {
    /// `f ↦ f(0, 1, …, N-1)`, reading generator elements as elements of the
    /// minion's source set; a homomorphism into `B` when the generator is `A`.
    pub fn evaluation_map(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|f| {
                let n = f.arity();
                let args: Vec<usize> = (0..n).map(|i| i % f.source_size()).collect();
                f.eval(&args)
            })
            .collect()
    }
}

pub fn free_structure(minion: FreeMinion<'_>, generator: &Structure, budget: &Budget) -> Result<FreeStructure> {
    let n = generator.domain_size();
    if n == 0 {
        return Err(Error::ArityMismatch("the generator needs at least one element".into()));
    }
    let src = match minion {
        FreeMinion::Polymorphisms { a, b } => {
            if !a.is_similar(b) {
                return Err(Error::NotSimilar(format!("`{}` and `{}`", a.name(), b.name())));
            }
            a.domain_size()
        }
        FreeMinion::Projections { domain } => domain,
    };
    let elements = n_ary_members(minion, n, budget)?;
    let index: HashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, f)| (f.values(), i)).collect();

    // Positional weights of an N-tuple in the table encoding.
    let len = src.checked_pow(n as u32).ok_or(Error::BudgetExceeded {
        what: "free structure element tables",
        needed: u128::MAX,
        cap: budget.max_power_elements as u128,
    })?;
    let mut relations = Vec::new();
    let mut cache: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for rel in generator.relations() {
        let k = rel.arity();
        let m = rel.len();
        let mut data = Vec::new();
        if m > 0 {
            match minion {
                FreeMinion::Projections { .. } => {
                    // g = p_m^j gives f_t = p_N^{r_j[t]}.
                    let proj_index: Vec<usize> = (0..n)
                        .map(|i| index[FunctionTable::projection(n, i, src).values()])
                        .collect();
                    for r in rel.tuples() {
                        data.extend(r.iter().map(|&x| proj_index[x]));
                    }
                }
                FreeMinion::Polymorphisms { a, b } => {
                    if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(m) {
                        let members = n_ary_members(FreeMinion::Polymorphisms { a, b }, m, budget)?;
                        e.insert(members.into_iter().map(|f| f.values().to_vec()).collect());
                    }
                    // weights[t][x] = index into g's table of the input x ∘ π_t.
                    let gw: Vec<usize> = (0..m).map(|j| src.pow((m - 1 - j) as u32)).collect();
                    let mut args = vec![0usize; n];
                    let lookups: Vec<Vec<usize>> = (0..k)
                        .map(|t| {
                            (0..len)
                                .map(|x| {
                                    fill_tuple(x, src, &mut args);
                                    rel.tuples().zip(&gw).map(|(r, w)| args[r[t]] * w).sum()
                                })
                                .collect()
                        })
                        .collect();
                    let mut f = vec![0usize; len];
                    for g in &cache[&m] {
                        for lookup in &lookups {
                            for (slot, &gi) in f.iter_mut().zip(lookup) {
                                *slot = g[gi];
                            }
                            let idx = *index.get(f.as_slice()).ok_or_else(|| {
                                Error::ArityMismatch("a minor left the enumerated window".into())
                            })?;
                            data.push(idx);
                        }
                    }
                }
            }
        }
        relations.push(Relation::from_tuples(k, data.chunks(k)));
    }
    let name = format!("F({})", generator.name());
    let structure = Structure::from_relations(name, elements.len(), generator.signature().clone(), relations)?;
    Ok(FreeStructure { structure, elements })
}

/// Members of arity `n`, in canonical order.
fn n_ary_members(minion: FreeMinion<'_>, n: usize, budget: &Budget) -> Result<Vec<FunctionTable>> {
    match minion {
        FreeMinion::Projections { domain } => {
            budget.check_power("projection tables", domain, n)?;
            let mut v: Vec<FunctionTable> = (0..n).map(|i| FunctionTable::projection(n, i, domain)).collect();
            v.sort();
            v.dedup();
            Ok(v)
        }
        FreeMinion::Polymorphisms { a, b } => {
            let p = power(a, n, budget)?;
            let mut out = Vec::new();
            let cap = budget.search.enumeration_cap;
            let mut over = false;
            HomSearch::new(&p, b, budget.search).for_each(|map| {
                if out.len() == cap {
                    over = true;
                    return ControlFlow::Break(());
                }
                out.push(map.to_vec());
                ControlFlow::Continue(())
            })?;
            if over {
                return Err(Error::CapExceeded(cap));
            }
            out.sort_unstable();
            out.into_iter()
                .map(|v| FunctionTable::new(n, a.domain_size(), b.domain_size(), v))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{are_isomorphic, exists_homomorphism};
    use crate::structure::generators::*;
    use crate::structure::{Homomorphism, Signature};
    use crate::HomSearchConfig;

    #[test]
    fn projections_reproduce_the_generator() {
        let budget = Budget::default();
        for g in [clique(3), one_in_three(), path(2), cycle(3)] {
            let domain = g.domain_size().max(2);
            let f = free_structure(FreeMinion::Projections { domain }, &g, &budget).unwrap();
            assert!(are_isomorphic(&f.structure, &g, HomSearchConfig::default()).unwrap());
            let ev = Homomorphism::new(f.evaluation_map());
            assert!(ev.validate(&f.structure, &g));
        }
    }

    #[test]
    fn symbolic_projections_match_pol_of_3sat() {
        // Pol(SAT3, SAT3) is the projection minion on {0, 1}.
        let budget = Budget::default();
        let sat = three_sat();
        for g in [one_in_three(), path(2), clique(3), single_loop()] {
            let sym = free_structure(FreeMinion::Projections { domain: 2 }, &g, &budget).unwrap();
            let real = free_structure(FreeMinion::Polymorphisms { a: &sat, b: &sat }, &g, &budget).unwrap();
            assert_eq!(sym.elements, real.elements);
            assert_eq!(sym.structure, real.structure);
        }
    }

    #[test]
    fn pol_t_h2_maps_to_h2() {
        let budget = Budget::default();
        let t = one_in_three();
        let h2 = nae(2);
        let f = free_structure(FreeMinion::Polymorphisms { a: &t, b: &h2 }, &t, &budget).unwrap();
        assert!(exists_homomorphism(&f.structure, &h2, budget.search).unwrap());
        let ev = Homomorphism::new(f.evaluation_map());
        assert!(ev.validate(&f.structure, &h2));
    }

    #[test]
    fn empty_relations_stay_empty() {
        let sig = Signature::from_pairs(&[("R", 3)]);
        let g = Structure::new("G", 2, sig, vec![vec![]]).unwrap();
        let t = one_in_three();
        let h2 = nae(2);
        let f = free_structure(FreeMinion::Polymorphisms { a: &t, b: &h2 }, &g, &Budget::default()).unwrap();
        assert!(f.structure.relation(0).is_empty());
    }
}
