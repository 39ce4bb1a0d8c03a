//! Text format for gadget data:
//!
//! ```text
//! source E/2;
//! variable structure P1 { domain 2; relation E/2 = { (0, 1) }; }
//! constraint E structure P2 { domain 3; relation E/2 = { (0, 1), (1, 2) }; }
//! e E 1 : 0 1
//! e E 2 : 1 2
//! ```
//!
//! Embedding positions are numbered from 1. Every source symbol needs one
//! constraint gadget and one map line per position.

use std::fmt::Write as _;

use super::gadget::GadgetData;
use crate::error::{Error, Result};
use crate::structure::format::{parse_structure_from, Lexer, Tok};
use crate::structure::{serialize_structure, validate_structure, Homomorphism, Signature, Structure, Symbol};

fn checked(mut s: Structure, line: usize) -> Result<Structure> {
    validate_structure(&s).map_err(|v| Error::parse(line, format!("structure `{}`: {v}", s.name())))?;
    s.canonicalize();
    Ok(s)
}

pub fn parse_gadget(text: &str) -> Result<GadgetData> {
    let mut lx = Lexer::new(text)?;
    lx.keyword("source")?;
    let mut symbols = Vec::new();
    loop {
        let name = lx.ident()?;
        lx.expect('/')?;
        let arity = lx.number()?;
        symbols.push(Symbol { name, arity });
        if lx.eat(';') {
            break;
        }
        lx.expect(',')?;
    }
    let source = Signature::new(symbols)?;
    let k = source.len();
    let mut variable = None;
    let mut constraints: Vec<Option<Structure>> = vec![None; k];
    let mut embeddings: Vec<Vec<Option<Homomorphism>>> =
        source.symbols().iter().map(|s| vec![None; s.arity]).collect();

    while !lx.at_end() {
        let line = lx.line();
        match lx.ident()?.as_str() {
            "variable" => {
                if variable.is_some() {
                    return Err(Error::parse(line, "second variable gadget"));
                }
                variable = Some(checked(parse_structure_from(&mut lx)?, line)?);
            }
            "constraint" => {
                let sym = lx.ident()?;
                let r = source
                    .position(&sym)
                    .ok_or_else(|| Error::parse(line, format!("unknown source symbol `{sym}`")))?;
                if constraints[r].is_some() {
                    return Err(Error::parse(line, format!("second gadget for `{sym}`")));
                }
                constraints[r] = Some(checked(parse_structure_from(&mut lx)?, line)?);
            }
            "e" => {
                let sym = lx.ident()?;
                let r = source
                    .position(&sym)
                    .ok_or_else(|| Error::parse(line, format!("unknown source symbol `{sym}`")))?;
                let i = lx.number()?;
                let arity = source.symbols()[r].arity;
                if i == 0 || i > arity {
                    return Err(Error::parse(line, format!("position {i} outside 1..={arity}")));
                }
                lx.expect(':')?;
                let mut map = Vec::new();
                while let Some(Tok::Num(_)) = lx.peek() {
                    map.push(lx.number()?);
                }
                if embeddings[r][i - 1].replace(Homomorphism::new(map)).is_some() {
                    return Err(Error::parse(line, format!("second map for e {sym} {i}")));
                }
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    let variable = variable.ok_or_else(|| lx.err("missing variable gadget"))?;
    let constraints = constraints
        .into_iter()
        .zip(source.symbols())
        .map(|(c, s)| c.ok_or_else(|| Error::MalformedGadget(format!("no constraint gadget for `{}`", s.name))))
        .collect::<Result<Vec<_>>>()?;
    let embeddings = embeddings
        .into_iter()
        .zip(source.symbols())
        .map(|(es, s)| {
            es.into_iter()
                .enumerate()
                .map(|(i, e)| e.ok_or_else(|| Error::MalformedGadget(format!("no map e {} {}", s.name, i + 1))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GadgetData::new(source, variable, constraints, embeddings)
}

pub fn serialize_gadget(g: &GadgetData) -> String {
    let mut out = String::from("source ");
    for (k, s) in g.source().symbols().iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}/{}", s.name, s.arity);
    }
    out.push_str(";\nvariable ");
    out.push_str(&serialize_structure(g.variable()));
    for (r, s) in g.source().symbols().iter().enumerate() {
        let _ = write!(out, "constraint {} ", s.name);
        out.push_str(&serialize_structure(g.constraint(r)));
    }
    for (r, s) in g.source().symbols().iter().enumerate() {
        for i in 0..s.arity {
            let _ = write!(out, "e {} {} :", s.name, i + 1);
            for x in g.embedding(r, i).map() {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
    }
    out
}
