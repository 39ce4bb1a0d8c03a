//! Gadget replacement `φ` and the pp-power `ρ` built from the same data.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::unionfind::{quotient, UnionFind};
use crate::budget::HomSearchConfig;
use crate::error::{Error, Result};
use crate::hom::{enumerate_homomorphisms, exists_homomorphism, HomSearch};
use crate::structure::generators::path;
use crate::structure::{Homomorphism, Relation, Signature, Structure};

/// A variable gadget `G`, a constraint gadget `G_R` per source symbol and
/// embeddings `e_{R,i}: G → G_R` (0-based `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetData {
    source: Signature,
    variable: Structure,
    constraints: Vec<Structure>,
    embeddings: Vec<Vec<Homomorphism>>,
}

impl GadgetData {
    pub fn new(
        source: Signature,
        variable: Structure,
        constraints: Vec<Structure>,
        embeddings: Vec<Vec<Homomorphism>>,
    ) -> Result<Self> {
        if constraints.len() != source.len() || embeddings.len() != source.len() {
            return Err(Error::MalformedGadget(format!(
                "{} source symbols, {} constraint gadgets, {} embedding lists",
                source.len(),
                constraints.len(),
                embeddings.len()
            )));
        }
        for ((sym, g_r), es) in source.symbols().iter().zip(&constraints).zip(&embeddings) {
            if !g_r.is_similar(&variable) {
                return Err(Error::MalformedGadget(format!(
                    "gadget for `{}` is not similar to the variable gadget",
                    sym.name
                )));
            }
            if es.len() != sym.arity {
                return Err(Error::MalformedGadget(format!(
                    "`{}` has arity {} but {} embeddings",
                    sym.name,
                    sym.arity,
                    es.len()
                )));
            }
            for (i, e) in es.iter().enumerate() {
                if !e.validate(&variable, g_r) {
                    return Err(Error::MalformedGadget(format!(
                        "e_{{{},{}}} is not a homomorphism",
                        sym.name,
                        i + 1
                    )));
                }
            }
        }
        Ok(GadgetData {
            source,
            variable,
            constraints,
            embeddings,
        })
    }

    /// Digraphs to digraphs: `G = P₁`, `G_E = P₂`, the embeddings picking
    /// the first and second edge.
    pub fn arc() -> Self {
        let sig = Signature::from_pairs(&[("E", 2)]);
        GadgetData::new(
            sig,
            path(1),
            vec![path(2)],
            vec![vec![Homomorphism::new(vec![0, 1]), Homomorphism::new(vec![1, 2])]],
        )
        .expect("arc gadget")
    }

    /// The gadget with `φ(I) = I` and `ρ(B) = B`: a bare point for
    /// variables and a single `R`-tuple on `k` points for each symbol.
    pub fn identity(sig: &Signature) -> Self {
        let variable = Structure::new(
            "pt",
            1,
            sig.clone(),
            sig.symbols().iter().map(|_| Vec::new()).collect(),
        )
        .expect("point");
        let mut constraints = Vec::new();
        let mut embeddings = Vec::new();
        for (r, sym) in sig.symbols().iter().enumerate() {
            let rels = (0..sig.len())
                .map(|s| if s == r { vec![(0..sym.arity).collect()] } else { Vec::new() })
                .collect();
            constraints.push(Structure::new(format!("G_{}", sym.name), sym.arity, sig.clone(), rels).expect("tuple"));
            embeddings.push((0..sym.arity).map(|i| Homomorphism::new(vec![i])).collect());
        }
        GadgetData::new(sig.clone(), variable, constraints, embeddings).expect("identity gadget")
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    /// Signature of the output of `φ` and of the input of `ρ`.
    pub fn target(&self) -> &Signature {
        self.variable.signature()
    }

    pub fn variable(&self) -> &Structure {
        &self.variable
    }

    pub fn constraint(&self, symbol: usize) -> &Structure {
        &self.constraints[symbol]
    }

    pub fn embedding(&self, symbol: usize, i: usize) -> &Homomorphism {
        &self.embeddings[symbol][i]
    }
}

/// Copies of the gadgets laid out one after another, and the merges that
/// glue them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationPlan {
    /// Total number of elements before merging.
    pub elements: usize,
    /// First element of `G^v` for each `v`.
    pub vertex_offset: Vec<usize>,
    /// First element of each constraint copy, by symbol then tuple.
    pub constraint_offset: Vec<Vec<usize>>,
    /// Pairs `(g_v, e_{R,i}(g)_{R; v̄})`.
    pub merges: Vec<(usize, usize)>,
}

pub fn identification_plan(g: &GadgetData, i: &Structure) -> Result<IdentificationPlan> {
    if !i.signature().is_similar(&g.source) {
        return Err(Error::NotSimilar(format!(
            "`{}` does not match the gadget's source signature",
            i.name()
        )));
    }
    let gn = g.variable.domain_size();
    let vertex_offset: Vec<usize> = (0..i.domain_size()).map(|v| v * gn).collect();
    let mut next = i.domain_size() * gn;
    let mut constraint_offset = Vec::new();
    let mut merges = Vec::new();
    for (r, rel) in i.relations().iter().enumerate() {
        let size = g.constraints[r].domain_size();
        let mut offs = Vec::with_capacity(rel.len());
        for t in rel.tuples() {
            offs.push(next);
            for (pos, &v) in t.iter().enumerate() {
                let e = &g.embeddings[r][pos];
                for x in 0..gn {
                    merges.push((vertex_offset[v] + x, next + e.apply(x)));
                }
            }
            next += size;
        }
        constraint_offset.push(offs);
    }
    Ok(IdentificationPlan {
        elements: next,
        vertex_offset,
        constraint_offset,
        merges,
    })
}

/// `φ(I)`: the glued copies, elements numbered by the smallest original
/// index in their class.
pub fn apply_gadget_replacement(g: &GadgetData, i: &Structure) -> Result<Structure> {
    Ok(apply_gadget_replacement_traced(g, i)?.0)
}

/// Also returns the class of every element of the plan.
pub fn apply_gadget_replacement_traced(
    g: &GadgetData,
    i: &Structure,
) -> Result<(Structure, IdentificationPlan, Vec<usize>)> {
    let plan = identification_plan(g, i)?;
    let target = g.target();
    let mut data: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
    let mut copy = |s: &Structure, off: usize| {
        for (d, rel) in data.iter_mut().zip(s.relations()) {
            for t in rel.tuples() {
                d.extend(t.iter().map(|&x| x + off));
            }
        }
    };
    for &off in &plan.vertex_offset {
        copy(&g.variable, off);
    }
    for (r, offs) in plan.constraint_offset.iter().enumerate() {
        for &off in offs {
            copy(&g.constraints[r], off);
        }
    }
    let relations = data
        .into_iter()
        .zip(target.arities())
        .map(|(d, k)| Relation::from_tuples(k, d.chunks(k)))
        .collect();
    let raw = Structure::from_relations(format!("phi-{}", i.name()), plan.elements, target.clone(), relations)?;
    let mut uf = UnionFind::new(plan.elements);
    for &(a, b) in &plan.merges {
        uf.union(a, b);
    }
    let (q, class) = quotient(&raw, &mut uf, format!("phi-{}", i.name()))?;
    Ok((q, plan, class))
}

/// `ρ(B′)`: elements are `hom(G, B′)` in lexicographic order; `R` holds
/// `(f ∘ e_{R,1}, …, f ∘ e_{R,k})` for every `f: G_R → B′`.
pub fn pp_power(g: &GadgetData, b: &Structure, cfg: HomSearchConfig) -> Result<Structure> {
    if !b.signature().is_similar(g.target()) {
        return Err(Error::NotSimilar(format!(
            "`{}` does not match the gadget's target signature",
            b.name()
        )));
    }
    let elements = enumerate_homomorphisms(&g.variable, b, cfg)?;
    let index: HashMap<Vec<usize>, usize> = elements
        .iter()
        .enumerate()
        .map(|(k, h)| (h.map().to_vec(), k))
        .collect();
    let mut relations = Vec::with_capacity(g.source.len());
    for (r, sym) in g.source.symbols().iter().enumerate() {
        let mut data = Vec::new();
        let mut count = 0usize;
        let mut over = false;
        let mut composed = vec![0usize; g.variable.domain_size()];
        HomSearch::new(&g.constraints[r], b, cfg).for_each(|f| {
            count += 1;
            if count > cfg.enumeration_cap {
                over = true;
                return ControlFlow::Break(());
            }
            for e in &g.embeddings[r] {
                for (x, slot) in composed.iter_mut().enumerate() {
                    *slot = f[e.apply(x)];
                }
                data.push(index[&composed]);
            }
            ControlFlow::Continue(())
        })?;
        if over {
            return Err(Error::CapExceeded(cfg.enumeration_cap));
        }
        relations.push(Relation::from_tuples(sym.arity, data.chunks(sym.arity)));
    }
    Structure::from_relations(format!("rho-{}", b.name()), elements.len(), g.source.clone(), relations)
}

/// Both sides of `I → ρ(B′) ⟺ φ(I) → B′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjunctionSides {
    /// `I → ρ(B′)`, or `A → ω(B)` in general.
    pub right: bool,
    /// `φ(I) → B′`, or `γ(A) → B` in general.
    pub left: bool,
}

impl AdjunctionSides {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn adjunction_sides(g: &GadgetData, i: &Structure, b: &Structure, cfg: HomSearchConfig) -> Result<AdjunctionSides> {
    let rho = pp_power(g, b, cfg)?;
    let phi = apply_gadget_replacement(g, i)?;
    Ok(AdjunctionSides {
        right: exists_homomorphism(i, &rho, cfg)?,
        left: exists_homomorphism(&phi, b, cfg)?,
    })
}

/// Whether the adjunction biconditional holds for this triple.
pub fn check_adjunction(g: &GadgetData, i: &Structure, b: &Structure, cfg: HomSearchConfig) -> Result<bool> {
    Ok(adjunction_sides(g, i, b, cfg)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::are_isomorphic;
    use crate::structure::generators::*;

    fn cfg() -> HomSearchConfig {
        HomSearchConfig::default()
    }

    fn digraph(n: usize, edges: &[(usize, usize)]) -> Structure {
        Structure::new(
            "D",
            n,
            Signature::from_pairs(&[("E", 2)]),
            vec![edges.iter().map(|&(a, b)| vec![a, b]).collect()],
        )
        .unwrap()
    }

    #[test]
    fn path_one_becomes_path_two() {
        let out = apply_gadget_replacement(&GadgetData::arc(), &path(1)).unwrap();
        assert!(out.same_shape(&path(2)));
    }

    #[test]
    fn paths_grow_by_one() {
        for n in 1..=6 {
            let out = apply_gadget_replacement(&GadgetData::arc(), &path(n)).unwrap();
            assert!(are_isomorphic(&out, &path(n + 1), cfg()).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn figure_columns() {
        let g = GadgetData::arc();
        // Two opposite edges give a 2-cycle.
        let two = digraph(2, &[(0, 1), (1, 0)]);
        let out = apply_gadget_replacement(&g, &two).unwrap();
        assert!(are_isomorphic(&out, &two, cfg()).unwrap());
        // The bidirected triangle collapses to a single looped vertex.
        let tri = digraph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]);
        let out = apply_gadget_replacement(&g, &tri).unwrap();
        assert!(out.same_shape(&single_loop()));
        // Five vertices on a cycle with one doubled edge.
        let five = digraph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 4)]);
        let out = apply_gadget_replacement(&g, &five).unwrap();
        let expected = digraph(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]);
        assert!(are_isomorphic(&out, &expected, cfg()).unwrap());
    }

    #[test]
    fn pp_power_examples() {
        let g = GadgetData::arc();
        let r = pp_power(&g, &cycle(3), cfg()).unwrap();
        assert!(are_isomorphic(&r, &cycle(3), cfg()).unwrap());
        let r = pp_power(&g, &path(1), cfg()).unwrap();
        assert_eq!(r.domain_size(), 1);
        assert!(r.relation(0).is_empty());
    }

    #[test]
    fn identity_gadget() {
        let sig = one_in_three().signature().clone();
        let g = GadgetData::identity(&sig);
        let i = Structure::new("I", 4, sig, vec![vec![vec![0, 1, 2], vec![2, 2, 3]]]).unwrap();
        assert_eq!(apply_gadget_replacement(&g, &i).unwrap().relations(), i.relations());
        assert_eq!(pp_power(&g, &one_in_three(), cfg()).unwrap().relations(), one_in_three().relations());
        assert!(check_adjunction(&g, &i, &one_in_three(), cfg()).unwrap());
    }

    #[test]
    fn adjunction_arc_p3_c3() {
        let s = adjunction_sides(&GadgetData::arc(), &path(3), &cycle(3), cfg()).unwrap();
        assert!(s.holds());
        assert!(s.left && s.right);
    }

    #[test]
    fn malformed() {
        let sig = Signature::from_pairs(&[("E", 2)]);
        let bad = GadgetData::new(
            sig.clone(),
            path(1),
            vec![path(2)],
            vec![vec![Homomorphism::new(vec![1, 0]), Homomorphism::new(vec![1, 2])]],
        );
        assert!(matches!(bad, Err(Error::MalformedGadget(_))));
        let short = GadgetData::new(sig, path(1), vec![path(2)], vec![vec![Homomorphism::new(vec![0, 1])]]);
        assert!(matches!(short, Err(Error::MalformedGadget(_))));
        assert!(matches!(
            apply_gadget_replacement(&GadgetData::arc(), &one_in_three()),
            Err(Error::NotSimilar(_))
        ));
    }
}
