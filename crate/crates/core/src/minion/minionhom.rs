use std::collections::{BTreeMap, HashMap};

use super::slice::MinionSlice;
use super::table::{minor, FunctionTable, MinorMap};
use crate::budget::HomSearchConfig;
use crate::error::{Error, Result};

/// A minor-preserving, arity-preserving map defined on one window.
///
/// This is bounded evidence only: it says nothing about arities outside the
/// window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedMinionHom {
    map: BTreeMap<FunctionTable, FunctionTable>,
}

impl BoundedMinionHom {
    pub fn apply(&self, t: &FunctionTable) -> Option<&FunctionTable> {
        self.map.get(t)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&FunctionTable, &FunctionTable)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Backtracking search for `ξ` with `ξ(g)^π = ξ(g^π)` whenever `g` and
/// `g^π` both lie in `from`. Tables are visited in canonical order and
/// images tried in canonical order; assigning `ξ(g)` forces `ξ` on every
/// minor of `g`.
pub fn search_minion_homomorphism(
    from: &MinionSlice,
    to: &MinionSlice,
    cfg: HomSearchConfig,
) -> Result<Option<BoundedMinionHom>> {
    if from.arities() != to.arities() {
        return Err(Error::ArityWindowMismatch(format!(
            "{:?} vs {:?}",
            from.arities(),
            to.arities()
        )));
    }
    let arities = from.arities();
    let src: Vec<&FunctionTable> = from.all_tables()?;
    let dst: Vec<&FunctionTable> = to.all_tables()?;
    let maps: HashMap<usize, Vec<MinorMap>> = arities
        .iter()
        .map(|&m| (m, arities.iter().flat_map(|&n| MinorMap::all(m, n)).collect()))
        .collect();

    let src_index: HashMap<&FunctionTable, usize> = src.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let dst_index: HashMap<&FunctionTable, usize> = dst.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    // edges[g] = (π id, index of g^π) for minors that stay in the window.
    let mut edges: Vec<Vec<(usize, usize)>> = Vec::with_capacity(src.len());
    for g in &src {
        let mut e = Vec::new();
        for (pid, pi) in maps[&g.arity()].iter().enumerate() {
            if let Some(&h) = src_index.get(&minor(g, pi)?) {
                e.push((pid, h));
            }
        }
        edges.push(e);
    }
    // image_minor[c][π id] = index of dst[c]^π, if it lies in `to`.
    let mut image_minor: Vec<Vec<Option<usize>>> = Vec::with_capacity(dst.len());
    for c in &dst {
        let mut row = Vec::new();
        for pi in &maps[&c.arity()] {
            row.push(dst_index.get(&minor(c, pi)?).copied());
        }
        image_minor.push(row);
    }
    let candidates: HashMap<usize, Vec<usize>> = arities
        .iter()
        .map(|&n| (n, (0..dst.len()).filter(|&c| dst[c].arity() == n).collect()))
        .collect();

    let mut search = Search {
        edges: &edges,
        image_minor: &image_minor,
        assign: vec![None; src.len()],
        trail: Vec::new(),
        nodes: 0,
        limit: cfg.node_limit,
    };
    let arity_of: Vec<usize> = src.iter().map(|t| t.arity()).collect();
    if !search.dfs(&arity_of, &candidates)? {
        return Ok(None);
    }
    let map = src
        .iter()
        .zip(&search.assign)
        .map(|(g, c)| ((*g).clone(), dst[c.expect("complete assignment")].clone()))
        .collect();
    Ok(Some(BoundedMinionHom { map }))
}

struct Search<'a> {
    edges: &'a [Vec<(usize, usize)>],
    image_minor: &'a [Vec<Option<usize>>],
    assign: Vec<Option<usize>>,
    trail: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn force(&mut self, g: usize, c: usize) -> bool {
        let mut queue = vec![(g, c)];
        while let Some((g, c)) = queue.pop() {
            match self.assign[g] {
                Some(d) if d == c => continue,
                Some(_) => return false,
                None => {}
            }
            self.assign[g] = Some(c);
            self.trail.push(g);
            for &(pid, h) in &self.edges[g] {
                match self.image_minor[c][pid] {
                    Some(d) => queue.push((h, d)),
                    None => return false,
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let g = self.trail.pop().unwrap();
            self.assign[g] = None;
        }
    }

    fn dfs(&mut self, arity_of: &[usize], candidates: &HashMap<usize, Vec<usize>>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::NodeLimitExceeded(self.limit));
        }
        let Some(g) = self.assign.iter().position(Option::is_none) else {
            return Ok(true);
        };
        for &c in &candidates[&arity_of[g]] {
            let mark = self.trail.len();
            if self.force(g, c) && self.dfs(arity_of, candidates)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}
