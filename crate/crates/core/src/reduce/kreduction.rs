//! The `k`-reduction: one copy of `B^{F_K}` for every set `K` of at most `k`
//! elements of the instance, where `F_K = hom(I[K], A)`, glued along
//! restrictions `b_K(h) = b(h|_L)` for `L ⊂ K`.

use std::collections::HashMap;

use super::unionfind::{quotient, UnionFind};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hom::enumerate_homomorphisms;
use crate::structure::{power_any, Homomorphism, Relation, Structure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KReductionPlan {
    pub k: usize,
    /// Every non-empty `K` with `|K| ≤ k`, by size then lexicographically.
    pub subsets: Vec<Vec<usize>>,
    /// `F_K`, each map listing the images of the elements of `K` in order.
    pub homs: Vec<Vec<Vec<usize>>>,
    /// First element of each copy of `B^{F_K}`.
    pub offsets: Vec<usize>,
    /// Number of elements before gluing.
    pub elements: usize,
    /// `|B|`.
    pub base: usize,
}

impl KReductionPlan {
    /// For every `h ∈ F_K`, the position of `h|_L` in `F_L`.
    pub fn restriction(&self, k_idx: usize, l_idx: usize) -> Vec<usize> {
        let kset = &self.subsets[k_idx];
        let lset = &self.subsets[l_idx];
        let pos: Vec<usize> = lset
            .iter()
            .map(|x| kset.iter().position(|y| y == x).expect("L is a subset of K"))
            .collect();
        let index: HashMap<&[usize], usize> = self.homs[l_idx]
            .iter()
            .enumerate()
            .map(|(p, h)| (h.as_slice(), p))
            .collect();
        self.homs[k_idx]
            .iter()
            .map(|h| {
                let r: Vec<usize> = pos.iter().map(|&p| h[p]).collect();
                index[r.as_slice()]
            })
            .collect()
    }

    /// Index of a subset, if present.
    pub fn subset_index(&self, set: &[usize]) -> Option<usize> {
        self.subsets.iter().position(|s| s == set)
    }

    /// Checks that restricting `K → K′ → L` agrees with `K → L` for every
    /// chain `L ⊂ K′ ⊂ K`.
    pub fn restrictions_commute(&self) -> bool {
        let n = self.subsets.len();
        for kk in 0..n {
            for mid in 0..n {
                if !proper_subset(&self.subsets[mid], &self.subsets[kk]) {
                    continue;
                }
                let r1 = self.restriction(kk, mid);
                for l in 0..n {
                    if !proper_subset(&self.subsets[l], &self.subsets[mid]) {
                        continue;
                    }
                    let r2 = self.restriction(mid, l);
                    let direct = self.restriction(kk, l);
                    if r1.iter().map(|&x| r2[x]).ne(direct.iter().copied()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn digit(&self, code: usize, len: usize, p: usize) -> usize {
        code / self.base.pow((len - 1 - p) as u32) % self.base
    }
}

fn proper_subset(l: &[usize], k: &[usize]) -> bool {
    l.len() < k.len() && l.iter().all(|x| k.contains(x))
}

/// Non-empty subsets of `0..n` with at most `k` elements, by size then
/// lexicographically.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=k.min(n) {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            out.push(c.clone());
            let Some(i) = (0..size).rev().find(|&i| c[i] < n - size + i) else { break };
            c[i] += 1;
            for j in i + 1..size {
                c[j] = c[j - 1] + 1;
            }
        }
    }
    out
}

/// `I[K]` with the elements of `K` renumbered in order.
pub fn induced_substructure(i: &Structure, set: &[usize]) -> Result<Structure> {
    let mut local = vec![usize::MAX; i.domain_size()];
    for (p, &v) in set.iter().enumerate() {
        local[v] = p;
    }
    let relations = i
        .relations()
        .iter()
        .map(|r| {
            Relation::from_tuples(
                r.arity(),
                r.tuples()
                    .filter(|t| t.iter().all(|&v| local[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| local[v]).collect::<Vec<_>>()),
            )
        })
        .collect();
    Structure::from_relations(format!("{}[K]", i.name()), set.len(), i.signature().clone(), relations)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KReduction {
    Output {
        structure: Structure,
        plan: KReductionPlan,
        /// Class of every element of the unglued copies.
        class: Vec<usize>,
    },
    /// `I[K]` has no homomorphism to `A`, so neither does `I`.
    PromiseViolation { subset: Vec<usize> },
}

pub fn k_reduction(a: &Structure, b: &Structure, k: usize, i: &Structure, budget: &Budget) -> Result<KReduction> {
    if k == 0 {
        return Err(Error::ArityMismatch("k must be positive".into()));
    }
    i.require_similar(a)?;
    a.require_similar(b)?;
    let subsets = subsets_up_to(i.domain_size(), k);
    let mut homs = Vec::with_capacity(subsets.len());
    for set in &subsets {
        let sub = induced_substructure(i, set)?;
        let f: Vec<Vec<usize>> = enumerate_homomorphisms(&sub, a, budget.search)?
            .into_iter()
            .map(Homomorphism::into_map)
            .collect();
        if f.is_empty() {
            return Ok(KReduction::PromiseViolation { subset: set.clone() });
        }
        homs.push(f);
    }
    let base = b.domain_size();
    let mut offsets = Vec::with_capacity(subsets.len());
    let mut elements = 0usize;
    for f in &homs {
        offsets.push(elements);
        elements += budget.check_power("k-reduction gadget", base, f.len())?;
        if elements > budget.max_power_elements {
            return Err(Error::BudgetExceeded {
                what: "k-reduction elements",
                needed: elements as u128,
                cap: budget.max_power_elements as u128,
            });
        }
    }
    let plan = KReductionPlan {
        k,
        subsets,
        homs,
        offsets,
        elements,
        base,
    };

    let mut data: Vec<Vec<usize>> = vec![Vec::new(); b.signature().len()];
    for (idx, f) in plan.homs.iter().enumerate() {
        let p = power_any(b, f.len(), budget, String::new())?;
        let off = plan.offsets[idx];
        for (d, rel) in data.iter_mut().zip(p.relations()) {
            for t in rel.tuples() {
                d.extend(t.iter().map(|&x| x + off));
            }
        }
    }
    let relations = data
        .into_iter()
        .zip(b.signature().arities())
        .map(|(d, ar)| Relation::from_tuples(ar, d.chunks(ar)))
        .collect();
    let name = format!("k{}-{}", k, i.name());
    let raw = Structure::from_relations(name.clone(), elements, b.signature().clone(), relations)?;

    let mut uf = UnionFind::new(elements);
    for kk in 0..plan.subsets.len() {
        let fk = plan.homs[kk].len();
        let weights: Vec<usize> = (0..fk).map(|p| base.pow((fk - 1 - p) as u32)).collect();
        for l in 0..kk {
            if !proper_subset(&plan.subsets[l], &plan.subsets[kk]) {
                continue;
            }
            let r = plan.restriction(kk, l);
            let fl = plan.homs[l].len();
            for code in 0..base.pow(fl as u32) {
                let lifted: usize = r
                    .iter()
                    .zip(&weights)
                    .map(|(&q, &w)| plan.digit(code, fl, q) * w)
                    .sum();
                uf.union(plan.offsets[l] + code, plan.offsets[kk] + lifted);
            }
        }
    }
    let (structure, class) = quotient(&raw, &mut uf, name)?;
    Ok(KReduction::Output { structure, plan, class })
}

/// The map `b ↦ b(h|_K)` from the output to `B`, for a homomorphism
/// `h: I → A`.
pub fn evaluation_witness(plan: &KReductionPlan, class: &[usize], classes: usize, h: &Homomorphism) -> Result<Homomorphism> {
    let mut value = vec![usize::MAX; classes];
    for (idx, set) in plan.subsets.iter().enumerate() {
        let restricted: Vec<usize> = set.iter().map(|&v| h.apply(v)).collect();
        let p = plan.homs[idx]
            .iter()
            .position(|f| *f == restricted)
            .ok_or_else(|| Error::InvalidPoint("the map is not a homomorphism I → A".into()))?;
        let len = plan.homs[idx].len();
        for code in 0..plan.base.pow(len as u32) {
            let c = class[plan.offsets[idx] + code];
            let v = plan.digit(code, len, p);
            if value[c] == usize::MAX {
                value[c] = v;
            } else if value[c] != v {
                return Err(Error::InvalidPoint("evaluation differs on glued elements".into()));
            }
        }
    }
    Ok(Homomorphism::new(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{are_isomorphic, find_homomorphism};
    use crate::structure::generators::*;

    fn inst(n: usize, tuples: Vec<Vec<usize>>) -> Structure {
        Structure::new("I", n, one_in_three().signature().clone(), vec![tuples]).unwrap()
    }

    #[test]
    fn subset_order() {
        let s = subsets_up_to(3, 2);
        assert_eq!(s, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets_up_to(2, 5).len(), 3);
    }

    #[test]
    fn loop_triple_is_a_violation() {
        let t = one_in_three();
        let i = inst(2, vec![vec![0, 1, 1], vec![0, 0, 0]]);
        for k in 1..=3 {
            let r = k_reduction(&t, &t, k, &i, &Budget::default()).unwrap();
            assert_eq!(r, KReduction::PromiseViolation { subset: vec![0] });
        }
    }

    #[test]
    fn full_set_contains_the_top_power() {
        let t = one_in_three();
        let i = inst(3, vec![vec![0, 1, 2]]);
        let KReduction::Output { structure, plan, class } = k_reduction(&t, &t, 3, &i, &Budget::default()).unwrap()
        else {
            panic!()
        };
        let top = plan.subset_index(&[0, 1, 2]).unwrap();
        assert_eq!(plan.homs[top].len(), 3);
        // Every smaller copy is glued into the top one.
        let top_classes: std::collections::BTreeSet<usize> =
            (0..8).map(|c| class[plan.offsets[top] + c]).collect();
        assert_eq!(top_classes.len(), 8);
        assert_eq!(structure.domain_size(), 8);
        assert!(are_isomorphic(&structure, &power_any(&t, 3, &Budget::default(), "T3".into()).unwrap(), Default::default()).unwrap());
        assert!(plan.restrictions_commute());
    }

    #[test]
    fn witness_validates() {
        let t = one_in_three();
        let i = inst(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 3, 3]]);
        let h = find_homomorphism(&i, &t, Default::default()).unwrap().unwrap();
        for k in [1, 2, 3] {
            let KReduction::Output { structure, plan, class } = k_reduction(&t, &t, k, &i, &Budget::default()).unwrap()
            else {
                panic!()
            };
            assert!(plan.restrictions_commute());
            let w = evaluation_witness(&plan, &class, structure.domain_size(), &h).unwrap();
            assert!(w.validate(&structure, &t), "k = {k}");
        }
    }

    #[test]
    fn non_homomorphism_rejected() {
        let t = one_in_three();
        let i = inst(3, vec![vec![0, 1, 2]]);
        let bad = Homomorphism::new(vec![1, 1, 1]);
        let KReduction::Output { structure, plan, class } = k_reduction(&t, &t, 3, &i, &Budget::default()).unwrap()
        else {
            panic!()
        };
        assert!(evaluation_witness(&plan, &class, structure.domain_size(), &bad).is_err());
        // At k = 2 the triple is never seen whole, so the same map evaluates fine.
        let KReduction::Output { structure, plan, class } = k_reduction(&t, &t, 2, &i, &Budget::default()).unwrap()
        else {
            panic!()
        };
        assert!(evaluation_witness(&plan, &class, structure.domain_size(), &bad).is_ok());
    }
}
