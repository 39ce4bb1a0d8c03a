//! Minor conditions: parsing, checking in a slice, and triviality.
//!
//! Text form:
//!
//! ```text
//! symbols: n/3, s/2;
//! n(x,x,y) = s(x,y); n(x,y,x) = s(x,y); n(y,x,x) = s(x,y);
//! ```

use std::collections::HashMap;
use std::fmt;

use super::slice::{MinionSlice, Window};
use super::table::{minor, FunctionTable, MinorMap};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hom::HomSearch;
use crate::reduce::unionfind::{quotient, UnionFind};
use crate::structure::format::Lexer;
use crate::structure::{decode_tuple, encode_tuple, power, Relation, Structure};

/// `lhs(args) = rhs(args)` over the variables `0..vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: usize,
    pub lhs_args: Vec<usize>,
    pub rhs: usize,
    pub rhs_args: Vec<usize>,
    pub var_names: Vec<String>,
}

impl Identity {
    pub fn vars(&self) -> usize {
        self.var_names.len()
    }

    fn lhs_map(&self) -> MinorMap {
        MinorMap::new(self.vars(), self.lhs_args.clone()).expect("checked at construction")
    }

    fn rhs_map(&self) -> MinorMap {
        MinorMap::new(self.vars(), self.rhs_args.clone()).expect("checked at construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorCondition {
    symbols: Vec<(String, usize)>,
    identities: Vec<Identity>,
}

impl MinorCondition {
    pub fn new(symbols: Vec<(String, usize)>, identities: Vec<Identity>) -> Result<Self> {
        for (i, (name, ar)) in symbols.iter().enumerate() {
            if *ar == 0 || symbols[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::ArityMismatch(format!("bad symbol `{name}/{ar}`")));
            }
        }
        for id in &identities {
            for (sym, args) in [(id.lhs, &id.lhs_args), (id.rhs, &id.rhs_args)] {
                let Some((name, ar)) = symbols.get(sym) else {
                    return Err(Error::ArityMismatch(format!("unknown symbol index {sym}")));
                };
                if args.len() != *ar {
                    return Err(Error::ArityMismatch(format!(
                        "`{name}` has arity {ar} but is applied to {} arguments",
                        args.len()
                    )));
                }
                if args.iter().any(|&v| v >= id.vars()) {
                    return Err(Error::ArityMismatch("variable index out of range".into()));
                }
            }
        }
        Ok(MinorCondition { symbols, identities })
    }

    /// The ternary weak near-unanimity condition with symbols `n/3`, `s/2`.
    pub fn wnu() -> Self {
        parse_condition("symbols: n/3, s/2; n(x,x,y) = s(x,y); n(x,y,x) = s(x,y); n(y,x,x) = s(x,y);")
            .expect("valid")
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn without_identity(&self, index: usize) -> Self {
        let mut c = self.clone();
        c.identities.remove(index);
        c
    }
}

impl fmt::Display for MinorCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.symbols.iter().map(|(n, a)| format!("{n}/{a}")).collect();
        write!(f, "symbols: {};", syms.join(", "))?;
        for id in &self.identities {
            let side = |s: usize, args: &[usize]| {
                let a: Vec<&str> = args.iter().map(|&v| id.var_names[v].as_str()).collect();
                format!("{}({})", self.symbols[s].0, a.join(","))
            };
            write!(f, " {} = {};", side(id.lhs, &id.lhs_args), side(id.rhs, &id.rhs_args))?;
        }
        Ok(())
    }
}

pub fn parse_condition(text: &str) -> Result<MinorCondition> {
    let mut lx = Lexer::new(text)?;
    lx.keyword("symbols")?;
    lx.expect(':')?;
    let mut symbols: Vec<(String, usize)> = Vec::new();
    loop {
        let line = lx.line();
        let name = lx.ident()?;
        lx.expect('/')?;
        let ar = lx.number()?;
        if ar == 0 || symbols.iter().any(|(n, _)| *n == name) {
            return Err(Error::parse(line, format!("bad symbol declaration `{name}/{ar}`")));
        }
        symbols.push((name, ar));
        if lx.eat(';') {
            break;
        }
        lx.expect(',')?;
    }
    let index: HashMap<String, usize> = symbols.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
    let mut identities = Vec::new();
    while !lx.at_end() {
        let line = lx.line();
        let mut vars: Vec<String> = Vec::new();
        let mut side = |lx: &mut Lexer| -> Result<(usize, Vec<usize>)> {
            let name = lx.ident()?;
            let sym = *index
                .get(&name)
                .ok_or_else(|| Error::parse(line, format!("undeclared symbol `{name}`")))?;
            lx.expect('(')?;
            let mut args = Vec::new();
            loop {
                let v = lx.ident()?;
                let idx = match vars.iter().position(|x| *x == v) {
                    Some(i) => i,
                    None => {
                        vars.push(v);
                        vars.len() - 1
                    }
                };
                args.push(idx);
                if lx.eat(')') {
                    break;
                }
                lx.expect(',')?;
            }
            if args.len() != symbols[sym].1 {
                return Err(Error::parse(
                    line,
                    format!("`{name}` has arity {} but is applied to {} arguments", symbols[sym].1, args.len()),
                ));
            }
            Ok((sym, args))
        };
        let (lhs, lhs_args) = side(&mut lx)?;
        lx.expect('=')?;
        let (rhs, rhs_args) = side(&mut lx)?;
        if !lx.eat(';') && !lx.at_end() {
            return Err(lx.err("expected `;` after identity"));
        }
        identities.push(Identity {
            lhs,
            lhs_args,
            rhs,
            rhs_args,
            var_names: vars,
        });
    }
    MinorCondition::new(symbols, identities)
}

/// Whether the given tables (one per symbol, in symbol order) satisfy
/// every identity.
pub fn satisfies(cond: &MinorCondition, assignment: &[FunctionTable]) -> Result<bool> {
    if assignment.len() != cond.symbols.len() {
        return Err(Error::ArityMismatch("one table per symbol expected".into()));
    }
    for (t, (name, ar)) in assignment.iter().zip(&cond.symbols) {
        if t.arity() != *ar {
            return Err(Error::ArityMismatch(format!("table for `{name}` has arity {}", t.arity())));
        }
    }
    for id in &cond.identities {
        if minor(&assignment[id.lhs], &id.lhs_map())? != minor(&assignment[id.rhs], &id.rhs_map())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first witness in canonical order (symbols in order, each ranging
/// over its window in table order), or `None` if the slice has none.
pub fn check_condition(cond: &MinorCondition, slice: &MinionSlice, budget: &Budget) -> Result<Option<Vec<FunctionTable>>> {
    for (_, ar) in &cond.symbols {
        slice.window(*ar)?;
    }
    let all_complete = cond.symbols.iter().all(|(_, ar)| slice.is_complete(*ar));
    let any_implicit = cond
        .symbols
        .iter()
        .any(|(_, ar)| matches!(slice.window(*ar), Ok(Window::AllPolymorphisms)));
    if all_complete && slice.template().is_some() {
        check_by_quotient(cond, slice, budget)
    } else if !any_implicit {
        check_by_tables(cond, slice)
    } else {
        Err(Error::ArityWindowMismatch(
            "implicit windows can only be combined with complete windows".into(),
        ))
    }
}

/// Backtracking over explicit tables.
pub fn check_by_tables(cond: &MinorCondition, slice: &MinionSlice) -> Result<Option<Vec<FunctionTable>>> {
    let lists: Vec<&[FunctionTable]> = cond
        .symbols
        .iter()
        .map(|(_, ar)| slice.tables(*ar))
        .collect::<Result<_>>()?;
    let mut chosen: Vec<usize> = Vec::with_capacity(lists.len());
    // Identities whose later symbol is `k`, checked once `k` is chosen.
    let mut due: Vec<Vec<&Identity>> = vec![Vec::new(); lists.len()];
    for id in &cond.identities {
        due[id.lhs.max(id.rhs)].push(id);
    }
    let ok = |chosen: &[usize], k: usize| -> Result<bool> {
        for id in &due[k] {
            let l = minor(&lists[id.lhs][chosen[id.lhs]], &id.lhs_map())?;
            let r = minor(&lists[id.rhs][chosen[id.rhs]], &id.rhs_map())?;
            if l != r {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut next = 0usize;
    loop {
        let k = chosen.len();
        if k == lists.len() {
            return Ok(Some(chosen.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect()));
        }
        if next < lists[k].len() {
            chosen.push(next);
            if ok(&chosen, k)? {
                next = 0;
            } else {
                next = chosen.pop().unwrap() + 1;
            }
        } else {
            match chosen.pop() {
                Some(i) => next = i + 1,
                None => return Ok(None),
            }
        }
    }
}

/// Glues the powers `A^{ar(f)}` along the identities and searches for the
/// lexicographically least homomorphism of the quotient into `B`.
pub fn check_by_quotient(cond: &MinorCondition, slice: &MinionSlice, budget: &Budget) -> Result<Option<Vec<FunctionTable>>> {
    let (a, b) = slice
        .template()
        .ok_or_else(|| Error::ArityWindowMismatch("slice has no template".into()))?;
    let base = a.domain_size();
    let mut offsets = Vec::with_capacity(cond.symbols.len());
    let mut total = 0usize;
    let mut relations: Vec<Vec<usize>> = vec![Vec::new(); a.relations().len()];
    for (_, ar) in &cond.symbols {
        let p = power(a, *ar, budget)?;
        offsets.push(total);
        for (acc, rel) in relations.iter_mut().zip(p.relations()) {
            for t in rel.tuples() {
                acc.extend(t.iter().map(|&x| x + total));
            }
        }
        total += p.domain_size();
    }
    budget.check_power("condition quotient", total, 1)?;
    let glued = Structure::from_relations(
        "glued",
        total,
        a.signature().clone(),
        relations
            .into_iter()
            .zip(a.signature().arities())
            .map(|(data, k)| Relation::from_tuples(k, data.chunks(k)))
            .collect(),
    )?;
    let mut uf = UnionFind::new(total);
    let mut args_l = Vec::new();
    let mut args_r = Vec::new();
    for id in &cond.identities {
        let count = budget.check_power("identity instances", base, id.vars())?;
        for x in 0..count {
            let vals = decode_tuple(x, base, id.vars());
            args_l.clear();
            args_l.extend(id.lhs_args.iter().map(|&v| vals[v]));
            args_r.clear();
            args_r.extend(id.rhs_args.iter().map(|&v| vals[v]));
            uf.union(
                offsets[id.lhs] + encode_tuple(&args_l, base),
                offsets[id.rhs] + encode_tuple(&args_r, base),
            );
        }
    }
    let (q, class) = quotient(&glued, &mut uf, "quotient")?;
    // Classes are numbered by their first member, so the least map on the
    // quotient gives the least concatenation of tables.
    let Some(h) = HomSearch::new(&q, b, budget.search).find()? else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for (s, (_, ar)) in cond.symbols.iter().enumerate() {
        let len = base.pow(*ar as u32);
        let values = (0..len).map(|x| h.apply(class[offsets[s] + x])).collect();
        out.push(FunctionTable::new(*ar, base, b.domain_size(), values)?);
    }
    Ok(Some(out))
}

/// A choice of coordinate per symbol under which projections satisfy the
/// condition, if any.
pub fn trivial_witness(cond: &MinorCondition) -> Option<Vec<usize>> {
    let arities: Vec<usize> = cond.symbols.iter().map(|s| s.1).collect();
    let mut choice = vec![0usize; arities.len()];
    loop {
        let good = cond
            .identities
            .iter()
            .all(|id| id.lhs_args[choice[id.lhs]] == id.rhs_args[choice[id.rhs]]);
        if good {
            return Some(choice);
        }
        let mut pos = arities.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < arities[pos] {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// True iff the condition holds in the projection minion.
pub fn is_trivial_condition(cond: &MinorCondition) -> bool {
    trivial_witness(cond).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::generators::*;

    fn witness_s() -> FunctionTable {
        FunctionTable::from_fn(2, 3, 6, |x| x[0]).unwrap()
    }

    fn witness_n() -> FunctionTable {
        FunctionTable::from_fn(3, 3, 6, |x| {
            if x[0] == x[1] || x[0] == x[2] {
                x[0]
            } else if x[1] == x[2] {
                x[1]
            } else {
                x[0] + 3
            }
        })
        .unwrap()
    }

    #[test]
    fn parse_and_print() {
        let c = MinorCondition::wnu();
        assert_eq!(c.symbols().len(), 2);
        assert_eq!(c.identities().len(), 3);
        assert_eq!(c.identities()[2].lhs_args, vec![0, 1, 1]);
        let again = parse_condition(&c.to_string()).unwrap();
        assert_eq!(again, c);
        assert!(parse_condition("symbols: f/2; f(x) = f(x,y);").is_err());
        assert!(parse_condition("symbols: f/2; g(x,y) = f(x,y);").is_err());
    }

    #[test]
    fn explicit_wnu_pair() {
        let (s, n) = (witness_s(), witness_n());
        assert!(s.is_polymorphism(&clique(3), &clique(6)));
        assert!(n.is_polymorphism(&clique(3), &clique(6)));
        assert!(satisfies(&MinorCondition::wnu(), &[n.clone(), s.clone()]).unwrap());
        let collapse = MinorMap::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(minor(&n, &collapse).unwrap(), s);
    }

    #[test]
    fn triviality() {
        let wnu = MinorCondition::wnu();
        assert!(!is_trivial_condition(&wnu));
        for i in 0..3 {
            assert!(is_trivial_condition(&wnu.without_identity(i)));
        }
        let empty = MinorCondition::new(vec![("f".into(), 2)], vec![]).unwrap();
        assert!(is_trivial_condition(&empty));
    }

    #[test]
    fn both_routes_agree() {
        let budget = Budget::default();
        let conds = [
            MinorCondition::wnu(),
            parse_condition("symbols: f/2; f(x,y) = f(y,x);").unwrap(),
            parse_condition("symbols: m/3; m(x,x,y) = m(y,x,x); m(x,y,x) = m(x,x,x);").unwrap(),
            parse_condition("symbols: f/2, g/2; f(x,y) = g(y,x); f(x,x) = g(x,x);").unwrap(),
        ];
        for (a, b) in [(one_in_three(), nae(2)), (clique(2), clique(3)), (nae(2), nae(3))] {
            let slice = MinionSlice::polymorphisms(&a, &b, &[2, 3], &budget).unwrap();
            for c in &conds {
                let q = check_by_quotient(c, &slice, &budget).unwrap();
                let t = check_by_tables(c, &slice).unwrap();
                assert_eq!(q, t, "{c} on ({}, {})", a.name(), b.name());
                if let Some(w) = &q {
                    assert!(satisfies(c, w).unwrap());
                }
            }
        }
    }

    #[test]
    fn swap_identity() {
        let g = FunctionTable::from_fn(2, 2, 2, |x| x[0] & !x[1] & 1).unwrap();
        let slice = MinionSlice::minor_closure(std::slice::from_ref(&g), &[2], None).unwrap();
        let c = parse_condition("symbols: f/2, g/2; f(x,y) = g(y,x);").unwrap();
        let w = check_condition(&c, &slice, &Budget::default()).unwrap().unwrap();
        assert!(satisfies(&c, &w).unwrap());
        let swap = MinorMap::new(2, vec![1, 0]).unwrap();
        let fixed = [minor(&g, &swap).unwrap(), g];
        assert!(satisfies(&c, &fixed).unwrap());
    }

    #[test]
    fn missing_arity() {
        let slice = MinionSlice::projections(2, &[2]);
        assert_eq!(
            check_condition(&MinorCondition::wnu(), &slice, &Budget::default()),
            Err(Error::MissingArity(3))
        );
    }
}
