//! Chains of minors and coordinate selections.

use std::collections::{BTreeMap, BTreeSet};

use super::table::{minor, FunctionTable, MinorMap};
use crate::error::{Error, Result};

/// Tables `t₀, …, t_r` with `t_{i+1} = t_i^{π_{i,i+1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOfMinors {
    tables: Vec<FunctionTable>,
    steps: Vec<MinorMap>,
}

impl ChainOfMinors {
    pub fn new(start: FunctionTable, steps: Vec<MinorMap>) -> Result<Self> {
        let mut tables = vec![start];
        for (k, pi) in steps.iter().enumerate() {
            let next = minor(&tables[k], pi).map_err(|e| Error::MalformedChain(format!("step {k}: {e}")))?;
            tables.push(next);
        }
        Ok(ChainOfMinors { tables, steps })
    }

    /// Checks given tables against the steps.
    pub fn from_parts(tables: Vec<FunctionTable>, steps: Vec<MinorMap>) -> Result<Self> {
        if tables.len() != steps.len() + 1 {
            return Err(Error::MalformedChain("need one more table than steps".into()));
        }
        for (k, pi) in steps.iter().enumerate() {
            let m = minor(&tables[k], pi).map_err(|e| Error::MalformedChain(format!("step {k}: {e}")))?;
            if m != tables[k + 1] {
                return Err(Error::MalformedChain(format!("table {} is not the stated minor", k + 1)));
            }
        }
        Ok(ChainOfMinors { tables, steps })
    }

    pub fn tables(&self) -> &[FunctionTable] {
        &self.tables
    }

    pub fn steps(&self) -> &[MinorMap] {
        &self.steps
    }

    /// The chain length `r`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `π_{i,j}` for `i ≤ j`, the composite of the steps in between.
    pub fn composite(&self, i: usize, j: usize) -> MinorMap {
        assert!(i <= j && j < self.tables.len());
        let mut acc = MinorMap::identity(self.tables[i].arity());
        for step in &self.steps[i..j] {
            acc = acc.then(step).expect("chain steps compose");
        }
        acc
    }
}

/// A set of at most `d` coordinates for each table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelectionMap {
    sets: BTreeMap<FunctionTable, BTreeSet<usize>>,
}

impl SelectionMap {
    pub fn new() -> Self {
        SelectionMap::default()
    }

    pub fn insert(&mut self, t: FunctionTable, coords: impl IntoIterator<Item = usize>) {
        self.sets.insert(t, coords.into_iter().collect());
    }

    pub fn get(&self, t: &FunctionTable) -> Option<&BTreeSet<usize>> {
        self.sets.get(t)
    }

    fn validate(&self, d: usize) -> Result<()> {
        for (t, s) in &self.sets {
            if s.is_empty() || s.len() > d {
                return Err(Error::MalformedSelection(format!("set of size {} with d = {d}", s.len())));
            }
            if s.iter().any(|&c| c >= t.arity()) {
                return Err(Error::MalformedSelection(format!("coordinate outside arity {}", t.arity())));
            }
        }
        Ok(())
    }
}

/// True iff some `i < j` has `sel(t_j) ∩ π_{i,j}(sel(t_i)) ≠ ∅`.
pub fn check_chain_selection(chain: &ChainOfMinors, sel: &SelectionMap, d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::MalformedSelection("d must be positive".into()));
    }
    sel.validate(d)?;
    let sets: Vec<&BTreeSet<usize>> = chain
        .tables
        .iter()
        .map(|t| {
            sel.get(t)
                .ok_or_else(|| Error::MalformedSelection(format!("no set for chain table {t}")))
        })
        .collect::<Result<_>>()?;
    for i in 0..chain.tables.len() {
        for j in i + 1..chain.tables.len() {
            let pi = chain.composite(i, j);
            if sets[i].iter().any(|&c| sets[j].contains(&pi.map()[c])) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionSearch {
    /// Number of selections tried.
    pub examined: u64,
    /// The first selection satisfying the chain, if any.
    pub witness: Option<SelectionMap>,
}

/// Tries every selection on the distinct tables of the chain. A `None`
/// witness proves no set-valued map with sets of size at most `d` works on
/// this chain.
pub fn refute_chain_selections(chain: &ChainOfMinors, d: usize) -> Result<SelectionSearch> {
    if d == 0 {
        return Err(Error::MalformedSelection("d must be positive".into()));
    }
    let distinct: Vec<FunctionTable> = chain.tables.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let options: Vec<Vec<BTreeSet<usize>>> = distinct.iter().map(|t| subsets_up_to(t.arity(), d)).collect();
    let mut choice = vec![0usize; distinct.len()];
    let mut examined = 0u64;
    loop {
        let mut sel = SelectionMap::new();
        for (k, t) in distinct.iter().enumerate() {
            sel.insert(t.clone(), options[k][choice[k]].iter().copied());
        }
        examined += 1;
        if check_chain_selection(chain, &sel, d)? {
            return Ok(SelectionSearch {
                examined,
                witness: Some(sel),
            });
        }
        let mut pos = distinct.len();
        loop {
            if pos == 0 {
                return Ok(SelectionSearch { examined, witness: None });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < options[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Non-empty subsets of `0..n` with at most `d` elements, by size then lexicographically.
fn subsets_up_to(n: usize, d: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if (mask.count_ones() as usize) <= d {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<_>>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn or2() -> FunctionTable {
        FunctionTable::from_fn(2, 2, 2, |x| x[0] | x[1]).unwrap()
    }

    #[test]
    fn identity_chain_always_passes() {
        let t = FunctionTable::from_fn(2, 2, 2, |x| x[0]).unwrap();
        let chain = ChainOfMinors::new(t.clone(), vec![MinorMap::identity(2)]).unwrap();
        for c in 0..2 {
            let mut sel = SelectionMap::new();
            sel.insert(t.clone(), [c]);
            assert!(check_chain_selection(&chain, &sel, 1).unwrap());
        }
    }

    #[test]
    fn symmetric_swap_chain_refuted() {
        let swap = MinorMap::new(2, vec![1, 0]).unwrap();
        let chain = ChainOfMinors::new(or2(), vec![swap]).unwrap();
        assert_eq!(chain.tables()[0], chain.tables()[1]);
        let r = refute_chain_selections(&chain, 1).unwrap();
        assert_eq!(r.witness, None);
        assert_eq!(r.examined, 2);
        // With d = 2 the full set works.
        assert!(refute_chain_selections(&chain, 2).unwrap().witness.is_some());
    }

    #[test]
    fn essential_coordinates_of_projections() {
        let p = FunctionTable::projection(3, 1, 2);
        let steps = vec![
            MinorMap::new(4, vec![2, 0, 3]).unwrap(),
            MinorMap::new(2, vec![0, 1, 1, 0]).unwrap(),
        ];
        let chain = ChainOfMinors::new(p, steps).unwrap();
        let mut sel = SelectionMap::new();
        for t in chain.tables() {
            sel.insert(t.clone(), t.essential_coordinates());
        }
        assert!(check_chain_selection(&chain, &sel, 1).unwrap());
    }

    #[test]
    fn composite_matches_tables() {
        let t = FunctionTable::from_fn(3, 2, 2, |x| x[0] & (x[1] | x[2])).unwrap();
        let steps = vec![
            MinorMap::new(3, vec![1, 2, 0]).unwrap(),
            MinorMap::new(2, vec![0, 1, 1]).unwrap(),
        ];
        let chain = ChainOfMinors::new(t, steps).unwrap();
        assert_eq!(minor(&chain.tables()[0], &chain.composite(0, 2)).unwrap(), chain.tables()[2]);
    }

    #[test]
    fn malformed_inputs() {
        let t = or2();
        let bad = ChainOfMinors::from_parts(
            vec![t.clone(), FunctionTable::projection(2, 0, 2)],
            vec![MinorMap::identity(2)],
        );
        assert!(matches!(bad, Err(Error::MalformedChain(_))));
        let chain = ChainOfMinors::new(t.clone(), vec![MinorMap::identity(2)]).unwrap();
        let mut sel = SelectionMap::new();
        sel.insert(t.clone(), [0, 1]);
        assert!(matches!(check_chain_selection(&chain, &sel, 1), Err(Error::MalformedSelection(_))));
        assert!(matches!(
            check_chain_selection(&chain, &SelectionMap::new(), 1),
            Err(Error::MalformedSelection(_))
        ));
    }

    #[test]
    fn subsets_order() {
        let s = subsets_up_to(3, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], BTreeSet::from([0]));
        assert_eq!(s[3], BTreeSet::from([0, 1]));
    }
}
