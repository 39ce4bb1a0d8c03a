use std::collections::{BTreeMap, BTreeSet};

use super::table::{minor, FunctionTable, MinorMap};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hom::HomSearch;
use crate::structure::{power, Structure};

/// The functions of one arity in a slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Window {
    /// An explicit sorted list. `complete` is set when the list is all of
    /// `Pol⁽ⁿ⁾(A, B)`.
    Tables { tables: Vec<FunctionTable>, complete: bool },
    /// All polymorphisms of this arity, never materialized.
    AllPolymorphisms,
}

/// A bounded window of a function minion, keyed by arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinionSlice {
    source_size: usize,
    target_size: usize,
    template: Option<(Structure, Structure)>,
    windows: BTreeMap<usize, Window>,
}

impl MinionSlice {
    /// Explicit `Pol⁽ⁿ⁾(a, b)` for each listed arity.
    pub fn polymorphisms(a: &Structure, b: &Structure, arities: &[usize], budget: &Budget) -> Result<Self> {
        let mut slice = MinionSlice::implicit(a, b, &[])?;
        for &n in arities {
            let tables = enumerate_tables(a, b, n, budget)?;
            slice.windows.insert(n, Window::Tables { tables, complete: true });
        }
        Ok(slice)
    }

    /// A slice whose listed arities are all of `Pol⁽ⁿ⁾(a, b)`, kept implicit.
    pub fn implicit(a: &Structure, b: &Structure, arities: &[usize]) -> Result<Self> {
        a.require_similar(b)?;
        Ok(MinionSlice {
            source_size: a.domain_size(),
            target_size: b.domain_size(),
            template: Some((a.clone(), b.clone())),
            windows: arities.iter().map(|&n| (n, Window::AllPolymorphisms)).collect(),
        })
    }

    /// Adds implicit windows for arities not yet present. Needs a template.
    pub fn with_implicit(mut self, arities: &[usize]) -> Result<Self> {
        if self.template.is_none() {
            return Err(Error::ArityWindowMismatch("implicit windows need a template".into()));
        }
        for &n in arities {
            self.windows.entry(n).or_insert(Window::AllPolymorphisms);
        }
        Ok(self)
    }

    /// Projections on an `n`-element set.
    pub fn projections(n: usize, arities: &[usize]) -> Self {
        let windows = arities
            .iter()
            .map(|&k| {
                let tables: BTreeSet<FunctionTable> = (0..k).map(|i| FunctionTable::projection(k, i, n)).collect();
                (
                    k,
                    Window::Tables {
                        tables: tables.into_iter().collect(),
                        complete: false,
                    },
                )
            })
            .collect();
        MinionSlice {
            source_size: n,
            target_size: n,
            template: None,
            windows,
        }
    }

    /// Explicit tables (any order, duplicates removed) with an optional template.
    pub fn from_tables(
        source_size: usize,
        target_size: usize,
        template: Option<(Structure, Structure)>,
        tables: Vec<FunctionTable>,
        arities: &[usize],
    ) -> Result<Self> {
        let mut by_arity: BTreeMap<usize, BTreeSet<FunctionTable>> = arities.iter().map(|&n| (n, BTreeSet::new())).collect();
        for t in tables {
            if t.source_size() != source_size || t.target_size() != target_size {
                return Err(Error::ArityMismatch("table sizes differ from the slice".into()));
            }
            by_arity
                .get_mut(&t.arity())
                .ok_or(Error::MissingArity(t.arity()))?
                .insert(t);
        }
        Ok(MinionSlice {
            source_size,
            target_size,
            template,
            windows: by_arity
                .into_iter()
                .map(|(n, s)| {
                    (
                        n,
                        Window::Tables {
                            tables: s.into_iter().collect(),
                            complete: false,
                        },
                    )
                })
                .collect(),
        })
    }

    /// The smallest set of tables with arities in `arities` that contains
    /// the seeds of those arities and is closed under minors between them.
    pub fn minor_closure(
        seeds: &[FunctionTable],
        arities: &[usize],
        template: Option<(Structure, Structure)>,
    ) -> Result<Self> {
        let first = seeds.first().ok_or(Error::MissingArity(0))?;
        let (src, tgt) = (first.source_size(), first.target_size());
        let wanted: BTreeSet<usize> = arities.iter().copied().collect();
        let mut seen: BTreeSet<FunctionTable> = BTreeSet::new();
        let mut stack: Vec<FunctionTable> = Vec::new();
        for s in seeds {
            if wanted.contains(&s.arity()) && seen.insert(s.clone()) {
                stack.push(s.clone());
            }
        }
        let mut maps: BTreeMap<usize, Vec<MinorMap>> = BTreeMap::new();
        for &m in &wanted {
            maps.insert(m, wanted.iter().flat_map(|&n| MinorMap::all(m, n)).collect());
        }
        while let Some(t) = stack.pop() {
            for pi in &maps[&t.arity()] {
                let f = minor(&t, pi)?;
                if seen.insert(f.clone()) {
                    stack.push(f);
                }
            }
        }
        MinionSlice::from_tables(src, tgt, template, seen.into_iter().collect(), arities)
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn template(&self) -> Option<&(Structure, Structure)> {
        self.template.as_ref()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.windows.keys().copied().collect()
    }

    pub fn window(&self, arity: usize) -> Result<&Window> {
        self.windows.get(&arity).ok_or(Error::MissingArity(arity))
    }

    /// Explicit tables of one arity.
    pub fn tables(&self, arity: usize) -> Result<&[FunctionTable]> {
        match self.window(arity)? {
            Window::Tables { tables, .. } => Ok(tables),
            Window::AllPolymorphisms => Err(Error::ArityWindowMismatch(format!(
                "arity {arity} is implicit and has no table list"
            ))),
        }
    }

    /// All explicit tables in arity order.
    pub fn all_tables(&self) -> Result<Vec<&FunctionTable>> {
        let mut out = Vec::new();
        for &n in self.windows.keys() {
            out.extend(self.tables(n)?);
        }
        Ok(out)
    }

    /// Whether the window of this arity is exactly `Pol⁽ⁿ⁾` of the template.
    pub fn is_complete(&self, arity: usize) -> bool {
        matches!(
            self.windows.get(&arity),
            Some(Window::AllPolymorphisms) | Some(Window::Tables { complete: true, .. })
        )
    }

    pub fn contains(&self, t: &FunctionTable) -> bool {
        match self.windows.get(&t.arity()) {
            Some(Window::Tables { tables, .. }) => tables.binary_search(t).is_ok(),
            Some(Window::AllPolymorphisms) => {
                let (a, b) = self.template.as_ref().expect("implicit windows carry a template");
                t.is_polymorphism(a, b)
            }
            None => false,
        }
    }
}

fn enumerate_tables(a: &Structure, b: &Structure, n: usize, budget: &Budget) -> Result<Vec<FunctionTable>> {
    let p = power(a, n, budget)?;
    let homs = HomSearch::new(&p, b, budget.search).enumerate()?;
    homs.into_iter()
        .map(|h| FunctionTable::new(n, a.domain_size(), b.domain_size(), h.into_map()))
        .collect()
}

/// `Pol⁽ⁿ⁾(a, b)` as a one-arity slice, tables in canonical order.
pub fn enumerate_polymorphisms(a: &Structure, b: &Structure, n: usize, budget: &Budget) -> Result<MinionSlice> {
    MinionSlice::polymorphisms(a, b, &[n], budget)
}

/// `|Pol⁽ⁿ⁾(a, b)|` without materializing tables.
pub fn count_polymorphisms(a: &Structure, b: &Structure, n: usize, budget: &Budget) -> Result<u64> {
    a.require_similar(b)?;
    let p = power(a, n, budget)?;
    HomSearch::new(&p, b, budget.search).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::generators::*;

    #[test]
    fn small_counts() {
        let budget = Budget::default();
        assert_eq!(count_polymorphisms(&clique(3), &clique(3), 1, &budget).unwrap(), 6);
        let s = enumerate_polymorphisms(&one_in_three(), &nae(2), 1, &budget).unwrap();
        let tables = s.tables(1).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].values(), &[0, 1]);
        assert_eq!(tables[1].values(), &[1, 0]);
    }

    #[test]
    fn counts_match_brute_force() {
        let budget = Budget::default();
        let brute = |a: &Structure, b: &Structure, n: usize| {
            let len = a.domain_size().pow(n as u32);
            let total = b.domain_size().pow(len as u32);
            (0..total)
                .filter(|&code| {
                    let vals = crate::structure::decode_tuple(code, b.domain_size(), len);
                    FunctionTable::new(n, a.domain_size(), b.domain_size(), vals)
                        .unwrap()
                        .is_polymorphism(a, b)
                })
                .count() as u64
        };
        for (a, b, n) in [
            (clique(3), clique(3), 1),
            (one_in_three(), nae(2), 1),
            (one_in_three(), nae(2), 2),
            (clique(2), clique(3), 2),
            (nae(2), nae(2), 2),
        ] {
            assert_eq!(count_polymorphisms(&a, &b, n, &budget).unwrap(), brute(&a, &b, n));
        }
    }

    #[test]
    fn enumerated_windows_are_minor_closed() {
        let budget = Budget::default();
        let a = one_in_three();
        let b = nae(2);
        let slice = MinionSlice::polymorphisms(&a, &b, &[1, 2, 3], &budget).unwrap();
        for t in slice.all_tables().unwrap() {
            assert!(t.is_polymorphism(&a, &b));
            for n in 1..=3 {
                for pi in MinorMap::all(t.arity(), n) {
                    assert!(slice.contains(&minor(t, &pi).unwrap()));
                }
            }
        }
    }

    #[test]
    fn closure_of_a_projection() {
        let p = FunctionTable::projection(2, 0, 2);
        let s = MinionSlice::minor_closure(&[p], &[1, 2, 3], None).unwrap();
        let proj = MinionSlice::projections(2, &[1, 2, 3]);
        for n in 1..=3 {
            assert_eq!(s.tables(n).unwrap(), proj.tables(n).unwrap());
        }
    }

    #[test]
    fn implicit_membership() {
        let s = MinionSlice::implicit(&clique(3), &clique(4), &[2]).unwrap();
        assert!(s.tables(2).is_err());
        assert!(s.contains(&FunctionTable::projection(2, 1, 3).widen_target(4).unwrap()));
        assert!(matches!(s.window(3), Err(Error::MissingArity(3))));
    }
}
