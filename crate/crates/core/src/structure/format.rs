//! Text format for structures:
//!
//! ```text
//! structure K3 {
//!   domain 3;
//!   relation E/2 = { (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1) };
//! }
//! ```
//!
//! `#` starts a comment. The domain may also be given as a list of names,
//! `domain { red, green };`, in which case tuples refer to those names.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Homomorphism, Relation, Signature, Structure, Symbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(usize),
    Punct(char),
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

/// Shared tokenizer for every text format in the crate.
pub(crate) struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
}

impl Lexer {
    pub(crate) fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = line.split('#').next().unwrap_or("");
            let mut chars = line.char_indices().peekable();
            while let Some(&(start, c)) = chars.peek() {
                if c.is_whitespace() {
                    chars.next();
                } else if c.is_ascii_digit() {
                    let mut end = start;
                    while let Some(&(i, d)) = chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        end = i + d.len_utf8();
                        chars.next();
                    }
                    let n = line[start..end]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "number too large"))?;
                    toks.push((Tok::Num(n), line_no));
                } else if c.is_alphabetic() || c == '_' {
                    let mut end = start;
                    while let Some(&(i, d)) = chars.peek() {
                        if !(d.is_alphanumeric() || d == '_' || d == '\'' || d == '-' || d == '.') {
                            break;
                        }
                        end = i + d.len_utf8();
                        chars.next();
                    }
                    toks.push((Tok::Ident(line[start..end].to_string()), line_no));
                } else if "{}();,/=:|+".contains(c) {
                    toks.push((Tok::Punct(c), line_no));
                    chars.next();
                } else {
                    return Err(Error::parse(line_no, format!("unexpected character `{c}`")));
                }
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            last_line: text.lines().count().max(1),
        })
    }

    pub(crate) fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |t| t.1)
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn next(&mut self) -> Result<Tok> {
        let line = self.line();
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| Error::parse(line, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t.0.clone())
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line(), msg)
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        let line = self.line();
        match self.next()? {
            Tok::Punct(p) if p == c => Ok(()),
            other => Err(Error::parse(line, format!("expected `{c}`, found {other}"))),
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<()> {
        let line = self.line();
        match self.next()? {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(Error::parse(line, format!("expected `{kw}`, found {other}"))),
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String> {
        let line = self.line();
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => Err(Error::parse(line, format!("expected identifier, found {other}"))),
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        let line = self.line();
        match self.next()? {
            Tok::Num(n) => Ok(n),
            other => Err(Error::parse(line, format!("expected number, found {other}"))),
        }
    }
}

/// Parses exactly one structure. The relations keep the order in which they
/// were written; out-of-range entries and duplicates are left for
/// [`super::validate_structure`] to report.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut lx = Lexer::new(text)?;
    let s = parse_structure_from(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input after structure"));
    }
    Ok(s)
}

/// Parses a sequence of structures.
pub fn parse_structures(text: &str) -> Result<Vec<Structure>> {
    let mut lx = Lexer::new(text)?;
    let mut out = Vec::new();
    while !lx.at_end() {
        out.push(parse_structure_from(&mut lx)?);
    }
    Ok(out)
}

pub(crate) fn parse_structure_from(lx: &mut Lexer) -> Result<Structure> {
    lx.keyword("structure")?;
    let name = lx.ident()?;
    lx.expect('{')?;
    lx.keyword("domain")?;
    let mut names: Option<HashMap<String, usize>> = None;
    let domain_size = if lx.eat('{') {
        let mut map = HashMap::new();
        if !lx.eat('}') {
            loop {
                let line = lx.line();
                let n = lx.ident()?;
                let idx = map.len();
                if map.insert(n.clone(), idx).is_some() {
                    return Err(Error::parse(line, format!("duplicate element name `{n}`")));
                }
                if lx.eat('}') {
                    break;
                }
                lx.expect(',')?;
            }
        }
        let size = map.len();
        names = Some(map);
        size
    } else {
        lx.number()?
    };
    lx.expect(';')?;

    let mut symbols = Vec::new();
    let mut relations = Vec::new();
    while !lx.eat('}') {
        let line = lx.line();
        lx.keyword("relation")?;
        let rname = lx.ident()?;
        lx.expect('/')?;
        let arity = lx.number()?;
        if arity == 0 {
            return Err(Error::parse(line, format!("relation `{rname}` has arity 0")));
        }
        if symbols.iter().any(|s: &Symbol| s.name == rname) {
            return Err(Error::parse(line, format!("duplicate relation `{rname}`")));
        }
        lx.expect('=')?;
        lx.expect('{')?;
        let mut data = Vec::new();
        if !lx.eat('}') {
            loop {
                let tline = lx.line();
                lx.expect('(')?;
                let mut len = 0;
                loop {
                    let v = match (&names, lx.peek()) {
                        (Some(map), Some(Tok::Ident(_))) => {
                            let n = lx.ident()?;
                            *map.get(&n)
                                .ok_or_else(|| Error::parse(tline, format!("unknown element `{n}`")))?
                        }
                        _ => lx.number()?,
                    };
                    data.push(v);
                    len += 1;
                    if lx.eat(')') {
                        break;
                    }
                    lx.expect(',')?;
                }
                if len != arity {
                    return Err(Error::parse(
                        tline,
                        format!("tuple of length {len} in relation `{rname}` of arity {arity}"),
                    ));
                }
                if lx.eat('}') {
                    break;
                }
                lx.expect(',')?;
            }
        }
        lx.expect(';')?;
        symbols.push(Symbol { name: rname, arity });
        relations.push(Relation { arity, data });
    }
    let signature = Signature::new(symbols)?;
    Ok(Structure::from_parts_unchecked(name, domain_size, signature, relations))
}

/// A name the lexer reads back as one identifier: other characters become `_`.
pub(crate) fn ident_name(name: &str) -> String {
    let mut out: String = name
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || "_'-.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    if !out.starts_with(|c: char| c.is_alphabetic() || c == '_') {
        out.insert(0, '_');
    }
    out
}

/// Serializes a structure in the canonical layout. For canonical structures
/// with identifier names this is the exact inverse of [`parse_structure`];
/// other names are rewritten by replacing stray characters with `_`.
pub fn serialize_structure(s: &Structure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "structure {} {{", ident_name(s.name()));
    let _ = writeln!(out, "  domain {};", s.domain_size());
    for (sym, rel) in s.signature().symbols().iter().zip(s.relations()) {
        let _ = write!(out, "  relation {}/{} = {{", sym.name, sym.arity);
        if rel.is_empty() {
            out.push_str(" }");
        } else {
            for (k, t) in rel.tuples().enumerate() {
                out.push_str(if k == 0 { " (" } else { ", (" });
                for (j, x) in t.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{x}");
                }
                out.push(')');
            }
            out.push_str(" }");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// Parses a map file: whitespace-separated element indices.
pub fn parse_homomorphism(text: &str) -> Result<Homomorphism> {
    let mut map = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for word in line.split_whitespace() {
            map.push(
                word.parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad map entry `{word}`")))?,
            );
        }
    }
    Ok(Homomorphism::new(map))
}
