//! Homomorphism search: backtracking with generalized arc consistency.
//!
//! Branching picks the variable with the fewest remaining candidates (ties
//! by index). [`find_homomorphism`] still returns the lexicographically
//! least homomorphism: the first solution found is improved variable by
//! variable, trying only smaller values.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::budget::HomSearchConfig;
use crate::error::{Error, Result};
use crate::structure::{Homomorphism, Structure};

struct Con {
    rel: usize,
    scope: Vec<usize>,
    /// For each position, the first position holding the same variable.
    first: Vec<usize>,
    /// Distinct variables with the position where each first occurs.
    vars: Vec<(usize, usize)>,
}

/// A configurable search from `source` into `target`.
pub struct HomSearch<'a> {
    source: &'a Structure,
    target: &'a Structure,
    cfg: HomSearchConfig,
    initial: Option<Vec<Vec<usize>>>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Structure, target: &'a Structure, cfg: HomSearchConfig) -> Self {
        HomSearch {
            source,
            target,
            cfg,
            initial: None,
            injective: false,
        }
    }

    /// Restricts each source element to a list of allowed target elements.
    pub fn with_domains(mut self, domains: Vec<Vec<usize>>) -> Self {
        self.initial = Some(domains);
        self
    }

    /// Only injective maps.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    fn engine(&self) -> Result<Engine<'a>> {
        self.source.require_similar(self.target)?;
        if let Some(d) = &self.initial {
            if d.len() != self.source.domain_size() {
                return Err(Error::ArityMismatch(format!(
                    "{} initial domains for {} source elements",
                    d.len(),
                    self.source.domain_size()
                )));
            }
        }
        Ok(Engine::new(self.source, self.target, self.cfg, self.injective))
    }

    fn root(&self, e: &mut Engine<'_>) -> Option<Vec<u64>> {
        let mut dom = vec![0u64; e.n * e.words];
        for v in 0..e.n {
            match &self.initial {
                Some(d) => {
                    for &x in &d[v] {
                        if x < e.m {
                            dom[v * e.words + x / 64] |= 1 << (x % 64);
                        }
                    }
                }
                None => {
                    for x in 0..e.m {
                        dom[v * e.words + x / 64] |= 1 << (x % 64);
                    }
                }
            }
        }
        if (0..e.n).any(|v| e.size(&dom, v) == 0) {
            return None;
        }
        let all: Vec<usize> = (0..e.cons.len()).collect();
        e.propagate(&mut dom, &all).then_some(dom)
    }

    /// The lexicographically least homomorphism, if any.
    pub fn find(&self) -> Result<Option<Homomorphism>> {
        let mut e = self.engine()?;
        let Some(mut base) = self.root(&mut e) else {
            return Ok(None);
        };
        let Some(mut witness) = e.search_one(base.clone())? else {
            return Ok(None);
        };
        for v in 0..e.n {
            for val in 0..witness[v] {
                if !e.has(&base, v, val) {
                    continue;
                }
                let mut trial = base.clone();
                if !e.pin(&mut trial, v, val) {
                    continue;
                }
                if let Some(w) = e.search_one(trial)? {
                    witness = w;
                    break;
                }
            }
            let ok = e.pin(&mut base, v, witness[v]);
            debug_assert!(ok);
        }
        Ok(Some(Homomorphism::new(witness)))
    }

    /// Whether some homomorphism exists; cheaper than [`Self::find`].
    pub fn exists(&self) -> Result<bool> {
        Ok(self.any()?.is_some())
    }

    /// Some homomorphism, not necessarily the least one.
    pub fn any(&self) -> Result<Option<Homomorphism>> {
        let mut e = self.engine()?;
        match self.root(&mut e) {
            Some(dom) => Ok(e.search_one(dom)?.map(Homomorphism::new)),
            None => Ok(None),
        }
    }

    /// Calls `visit` on every homomorphism in search order (not sorted).
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> Result<()> {
        let mut e = self.engine()?;
        if let Some(dom) = self.root(&mut e) {
            let _ = e.dfs(dom, &mut visit)?;
        }
        Ok(())
    }

    /// All homomorphisms, sorted by map array.
    pub fn enumerate(&self) -> Result<Vec<Homomorphism>> {
        let cap = self.cfg.enumeration_cap;
        let mut out = Vec::new();
        let mut over = false;
        self.for_each(|m| {
            if out.len() == cap {
                over = true;
                return ControlFlow::Break(());
            }
            out.push(Homomorphism::new(m.to_vec()));
            ControlFlow::Continue(())
        })?;
        if over {
            return Err(Error::CapExceeded(cap));
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }
}

struct Engine<'a> {
    n: usize,
    m: usize,
    words: usize,
    target: &'a Structure,
    cons: Vec<Con>,
    watch: Vec<Vec<usize>>,
    injective: bool,
    nodes: u64,
    limit: u64,
    scratch: Vec<u64>,
    queued: Vec<bool>,
}

impl<'a> Engine<'a> {
    fn new(source: &Structure, target: &'a Structure, cfg: HomSearchConfig, injective: bool) -> Self {
        let n = source.domain_size();
        let m = target.domain_size();
        let words = m.div_ceil(64).max(1);
        let mut cons = Vec::new();
        let mut watch = vec![Vec::new(); n];
        for (r, rel) in source.relations().iter().enumerate() {
            for t in rel.tuples() {
                let first: Vec<usize> = (0..t.len())
                    .map(|j| t.iter().position(|&x| x == t[j]).unwrap())
                    .collect();
                let vars: Vec<(usize, usize)> = (0..t.len())
                    .filter(|&j| first[j] == j)
                    .map(|j| (t[j], j))
                    .collect();
                let id = cons.len();
                for &(v, _) in &vars {
                    watch[v].push(id);
                }
                cons.push(Con {
                    rel: r,
                    scope: t.to_vec(),
                    first,
                    vars,
                });
            }
        }
        let queued = vec![false; cons.len()];
        Engine {
            n,
            m,
            words,
            target,
            cons,
            watch,
            injective,
            nodes: 0,
            limit: cfg.node_limit,
            scratch: Vec::new(),
            queued,
        }
    }

    fn has(&self, dom: &[u64], v: usize, x: usize) -> bool {
        dom[v * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    fn size(&self, dom: &[u64], v: usize) -> u32 {
        dom[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones())
            .sum()
    }

    fn single_value(&self, dom: &[u64], v: usize) -> Option<usize> {
        if self.size(dom, v) != 1 {
            return None;
        }
        let slot = &dom[v * self.words..(v + 1) * self.words];
        slot.iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn pin(&mut self, dom: &mut [u64], v: usize, x: usize) -> bool {
        for w in &mut dom[v * self.words..(v + 1) * self.words] {
            *w = 0;
        }
        dom[v * self.words + x / 64] |= 1 << (x % 64);
        let watched = self.watch[v].clone();
        self.propagate(dom, &watched)
    }

    /// Prunes a single constraint; records changed variables.
    fn revise(&mut self, c: usize, dom: &mut [u64], changed: &mut Vec<usize>) -> bool {
        let words = self.words;
        let con = &self.cons[c];
        let rel = self.target.relation(con.rel);
        self.scratch.clear();
        self.scratch.resize(con.vars.len() * words, 0);
        'tuples: for t in rel.tuples() {
            for j in 0..t.len() {
                let f = con.first[j];
                if f != j {
                    if t[j] != t[f] {
                        continue 'tuples;
                    }
                } else {
                    let x = t[j];
                    if dom[con.scope[j] * words + x / 64] >> (x % 64) & 1 == 0 {
                        continue 'tuples;
                    }
                }
            }
            for (vi, &(_, j)) in con.vars.iter().enumerate() {
                let x = t[j];
                self.scratch[vi * words + x / 64] |= 1 << (x % 64);
            }
        }
        for (vi, &(v, _)) in con.vars.iter().enumerate() {
            let mut any = false;
            let mut diff = false;
            for w in 0..words {
                let old = dom[v * words + w];
                let new = old & self.scratch[vi * words + w];
                if new != old {
                    diff = true;
                    dom[v * words + w] = new;
                }
                any |= new != 0;
            }
            if !any {
                return false;
            }
            if diff {
                changed.push(v);
            }
        }
        true
    }

    fn propagate(&mut self, dom: &mut [u64], start: &[usize]) -> bool {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for q in self.queued.iter_mut() {
            *q = false;
        }
        for &c in start {
            if !self.queued[c] {
                self.queued[c] = true;
                queue.push_back(c);
            }
        }
        if self.injective && self.n > self.m {
            return false;
        }
        let mut changed = Vec::new();
        let mut broadcast = vec![false; if self.injective { self.n } else { 0 }];
        loop {
            while let Some(c) = queue.pop_front() {
                self.queued[c] = false;
                changed.clear();
                if !self.revise(c, dom, &mut changed) {
                    return false;
                }
                for &v in &changed {
                    for &d in &self.watch[v] {
                        if !self.queued[d] {
                            self.queued[d] = true;
                            queue.push_back(d);
                        }
                    }
                }
            }
            if !self.injective {
                return true;
            }
            // All-different: remove fixed values from every other variable.
            let mut progress = false;
            for v in 0..self.n {
                if broadcast[v] {
                    continue;
                }
                let Some(x) = self.single_value(dom, v) else { continue };
                broadcast[v] = true;
                for u in 0..self.n {
                    if u != v && self.has(dom, u, x) {
                        dom[u * self.words + x / 64] &= !(1 << (x % 64));
                        if self.size(dom, u) == 0 {
                            return false;
                        }
                        progress = true;
                        for &d in &self.watch[u] {
                            if !self.queued[d] {
                                self.queued[d] = true;
                                queue.push_back(d);
                            }
                        }
                    }
                }
            }
            if !progress {
                return true;
            }
        }
    }

    fn search_one(&mut self, dom: Vec<u64>) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        let _ = self.dfs(dom, &mut |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    fn dfs(&mut self, dom: Vec<u64>, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::NodeLimitExceeded(self.limit));
        }
        let mut best: Option<(u32, usize)> = None;
        for v in 0..self.n {
            let s = self.size(&dom, v);
            if s > 1 && best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, v));
                if s == 2 {
                    break;
                }
            }
        }
        let Some((_, var)) = best else {
            let map: Vec<usize> = (0..self.n).map(|v| self.single_value(&dom, v).unwrap()).collect();
            return Ok(visit(&map));
        };
        for x in 0..self.m {
            if !self.has(&dom, var, x) {
                continue;
            }
            let mut child = dom.clone();
            if self.pin(&mut child, var, x) {
                if let ControlFlow::Break(()) = self.dfs(child, visit)? {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// The lexicographically least homomorphism `i → a`, if one exists.
pub fn find_homomorphism(i: &Structure, a: &Structure, cfg: HomSearchConfig) -> Result<Option<Homomorphism>> {
    HomSearch::new(i, a, cfg).find()
}

pub fn exists_homomorphism(i: &Structure, a: &Structure, cfg: HomSearchConfig) -> Result<bool> {
    HomSearch::new(i, a, cfg).exists()
}

/// Every homomorphism `i → a`, sorted by map array.
pub fn enumerate_homomorphisms(i: &Structure, a: &Structure, cfg: HomSearchConfig) -> Result<Vec<Homomorphism>> {
    HomSearch::new(i, a, cfg).enumerate()
}

pub fn count_homomorphisms(i: &Structure, a: &Structure, cfg: HomSearchConfig) -> Result<u64> {
    HomSearch::new(i, a, cfg).count()
}

/// A bijection mapping the relations of `a` exactly onto those of `b`.
pub fn find_isomorphism(a: &Structure, b: &Structure, cfg: HomSearchConfig) -> Result<Option<Homomorphism>> {
    if !a.is_similar(b)
        || a.domain_size() != b.domain_size()
        || a.relations().iter().zip(b.relations()).any(|(x, y)| x.len() != y.len())
    {
        return Ok(None);
    }
    // An injective hom between equal-size structures with equal tuple counts
    // is onto on both elements and tuples.
    HomSearch::new(a, b, cfg).injective().find()
}

pub fn are_isomorphic(a: &Structure, b: &Structure, cfg: HomSearchConfig) -> Result<bool> {
    Ok(find_isomorphism(a, b, cfg)?.is_some())
}

/// Exhaustive oracle: checks all `|a|^|i|` maps in lexicographic order.
pub fn brute_force_homomorphisms(i: &Structure, a: &Structure) -> Vec<Homomorphism> {
    let n = i.domain_size();
    let m = a.domain_size();
    if !i.is_similar(a) || (m == 0 && n > 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        let h = Homomorphism::new(map.clone());
        if h.validate(i, a) {
            out.push(h);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < m {
                break;
            }
            map[pos] = 0;
        }
    }
}

/// A PCSP template: similar structures with a verified homomorphism `A → B`.
#[derive(Debug, Clone)]
pub struct Template {
    a: Structure,
    b: Structure,
    witness: Homomorphism,
}

impl Template {
    pub fn new(a: Structure, b: Structure, cfg: HomSearchConfig) -> Result<Self> {
        a.require_similar(&b)?;
        match find_homomorphism(&a, &b, cfg)? {
            Some(witness) => Ok(Template { a, b, witness }),
            None => Err(Error::NotATemplate(format!("`{}` does not map to `{}`", a.name(), b.name()))),
        }
    }

    pub fn a(&self) -> &Structure {
        &self.a
    }

    pub fn b(&self) -> &Structure {
        &self.b
    }

    /// The least homomorphism `A → B`.
    pub fn witness(&self) -> &Homomorphism {
        &self.witness
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PcspAnswer {
    pub maps_to_a: bool,
    pub maps_to_b: bool,
}

impl PcspAnswer {
    /// False for instances that map to `B` but not to `A`.
    pub fn in_promise(&self) -> bool {
        self.maps_to_a || !self.maps_to_b
    }

    pub fn label(&self) -> &'static str {
        match (self.maps_to_a, self.maps_to_b) {
            (true, _) => "yes",
            (false, false) => "no",
            (false, true) => "outside promise",
        }
    }
}

/// Exact ground truth for an instance of the promise problem.
pub fn decide_pcsp_oracle(t: &Template, i: &Structure, cfg: HomSearchConfig) -> Result<PcspAnswer> {
    Ok(PcspAnswer {
        maps_to_a: exists_homomorphism(i, &t.a, cfg)?,
        maps_to_b: exists_homomorphism(i, &t.b, cfg)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SandwichOutcome {
    /// A homomorphism from the instance into `B`.
    Accept(Homomorphism),
    Reject,
}

/// Solves the promise problem through a finite `S` with `A → S → B`.
#[derive(Debug, Clone)]
pub struct FiniteSandwich {
    template: Template,
    s: Structure,
    hom_sb: Homomorphism,
    cfg: HomSearchConfig,
}

impl FiniteSandwich {
    pub fn new(template: Template, s: Structure, hom_sb: Homomorphism, cfg: HomSearchConfig) -> Result<Self> {
        if !s.is_similar(template.a()) {
            return Err(Error::InvalidSandwich(format!("`{}` is not similar to the template", s.name())));
        }
        if !hom_sb.validate(&s, template.b()) {
            return Err(Error::InvalidSandwich("the map S → B is not a homomorphism".into()));
        }
        if !exists_homomorphism(template.a(), &s, cfg)? {
            return Err(Error::InvalidSandwich(format!("`{}` does not map to `{}`", template.a().name(), s.name())));
        }
        Ok(FiniteSandwich {
            template,
            s,
            hom_sb,
            cfg,
        })
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn solve(&self, i: &Structure) -> Result<SandwichOutcome> {
        Ok(match find_homomorphism(i, &self.s, self.cfg)? {
            Some(h) => SandwichOutcome::Accept(h.then(&self.hom_sb)),
            None => SandwichOutcome::Reject,
        })
    }
}
