//! Finite relational structures, homomorphism maps, and powers.
//!
//! Domain elements are the dense integers `0..domain_size`. Relations are
//! kept in canonical form: tuples sorted lexicographically, no duplicates.

pub(crate) mod format;
pub mod generators;

use std::collections::HashMap;
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};

pub use format::{parse_homomorphism, parse_structure, parse_structures, serialize_structure};

/// A relation symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        for (i, s) in symbols.iter().enumerate() {
            if s.arity == 0 {
                return Err(Error::WrongSignature(format!("symbol `{}` has arity 0", s.name)));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::WrongSignature(format!("duplicate symbol `{}`", s.name)));
            }
        }
        Ok(Signature { symbols })
    }

    /// Convenience constructor from `(name, arity)` pairs; panics on invalid input.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Self {
        Signature::new(
            pairs
                .iter()
                .map(|&(name, arity)| Symbol {
                    name: name.to_string(),
                    arity,
                })
                .collect(),
        )
        .expect("valid signature")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.symbols.iter().map(|s| s.arity)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Same number of symbols with the same arities, in order.
    pub fn is_similar(&self, other: &Signature) -> bool {
        self.arities().eq(other.arities())
    }
}

/// A relation stored as a flat row-major array of tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    data: Vec<usize>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation { arity, data: Vec::new() }
    }

    pub fn from_tuples<I, T>(arity: usize, tuples: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[usize]>,
    {
        let mut data = Vec::new();
        for t in tuples {
            let t = t.as_ref();
            assert_eq!(t.len(), arity, "tuple length must equal arity");
            data.extend_from_slice(t);
        }
        Relation { arity, data }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.arity.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn tuple(&self, index: usize) -> &[usize] {
        &self.data[index * self.arity..(index + 1) * self.arity]
    }

    pub fn tuples(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.arity.max(1)).take(self.len())
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        if self.is_canonical() {
            self.binary_search(tuple).is_ok()
        } else {
            self.tuples().any(|t| t == tuple)
        }
    }

    fn binary_search(&self, tuple: &[usize]) -> std::result::Result<usize, usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Ok(mid),
            }
        }
        Err(lo)
    }

    pub fn is_canonical(&self) -> bool {
        (1..self.len()).all(|i| self.tuple(i - 1) < self.tuple(i))
    }

    fn canonicalize(&mut self) {
        if self.is_canonical() {
            return;
        }
        let mut tuples: Vec<&[usize]> = self.tuples().collect();
        tuples.sort_unstable();
        tuples.dedup();
        let data = tuples.concat();
        self.data = data;
    }
}

/// Why a structure is not well formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutOfRange { symbol: String, tuple: Vec<usize> },
    WrongArity { symbol: String, tuple: Vec<usize> },
    NotCanonical { symbol: String, tuple: Vec<usize> },
    SignatureMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { symbol, tuple } => {
                write!(f, "tuple {tuple:?} of `{symbol}` has an element outside the domain")
            }
            Violation::WrongArity { symbol, tuple } => {
                write!(f, "tuple {tuple:?} has the wrong arity for `{symbol}`")
            }
            Violation::NotCanonical { symbol, tuple } => {
                write!(f, "relation `{symbol}` is not canonical at tuple {tuple:?}")
            }
            Violation::SignatureMismatch => write!(f, "relation list does not match the signature"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    name: String,
    domain_size: usize,
    signature: Signature,
    relations: Vec<Relation>,
}

impl Structure {
    /// Builds a structure, canonicalizing every relation. Fails if a tuple
    /// has the wrong length or an element outside the domain.
    pub fn new(
        name: impl Into<String>,
        domain_size: usize,
        signature: Signature,
        relations: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::InvalidStructure(Violation::SignatureMismatch));
        }
        let mut rels = Vec::with_capacity(relations.len());
        for (sym, tuples) in signature.symbols().iter().zip(relations) {
            for t in &tuples {
                if t.len() != sym.arity {
                    return Err(Error::InvalidStructure(Violation::WrongArity {
                        symbol: sym.name.clone(),
                        tuple: t.clone(),
                    }));
                }
            }
            rels.push(Relation::from_tuples(sym.arity, tuples));
        }
        let mut s = Structure {
            name: name.into(),
            domain_size,
            signature,
            relations: rels,
        };
        s.canonicalize();
        s.check_ranges().map_err(Error::InvalidStructure)?;
        Ok(s)
    }

    /// Builds a structure from already flattened relations, canonicalizing them.
    pub fn from_relations(
        name: impl Into<String>,
        domain_size: usize,
        signature: Signature,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if relations.len() != signature.len()
            || relations.iter().zip(signature.arities()).any(|(r, a)| r.arity() != a)
        {
            return Err(Error::InvalidStructure(Violation::SignatureMismatch));
        }
        let mut s = Structure {
            name: name.into(),
            domain_size,
            signature,
            relations,
        };
        s.canonicalize();
        s.check_ranges().map_err(Error::InvalidStructure)?;
        Ok(s)
    }

    /// Keeps the relations exactly as given; use [`validate_structure`] to
    /// inspect the result.
    pub fn from_parts_unchecked(
        name: impl Into<String>,
        domain_size: usize,
        signature: Signature,
        relations: Vec<Relation>,
    ) -> Self {
        Structure {
            name: name.into(),
            domain_size,
            signature,
            relations,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, index: usize) -> &Relation {
        &self.relations[index]
    }

    pub fn relation_by_name(&self, name: &str) -> Option<&Relation> {
        self.signature.position(name).map(|i| &self.relations[i])
    }

    pub fn is_similar(&self, other: &Structure) -> bool {
        self.signature.is_similar(&other.signature)
    }

    /// Total number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(Relation::len).sum()
    }

    /// Equality of domain and relations, ignoring names.
    pub fn same_shape(&self, other: &Structure) -> bool {
        self.domain_size == other.domain_size
            && self.is_similar(other)
            && self.relations == other.relations
    }

    pub fn canonicalize(&mut self) {
        for r in &mut self.relations {
            r.canonicalize();
        }
    }

    fn check_ranges(&self) -> std::result::Result<(), Violation> {
        for (sym, rel) in self.signature.symbols().iter().zip(&self.relations) {
            if let Some(t) = rel.tuples().find(|t| t.iter().any(|&x| x >= self.domain_size)) {
                return Err(Violation::OutOfRange {
                    symbol: sym.name.clone(),
                    tuple: t.to_vec(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn require_similar(&self, other: &Structure) -> Result<()> {
        if self.is_similar(other) {
            Ok(())
        } else {
            Err(Error::NotSimilar(format!(
                "`{}` has arities {:?}, `{}` has arities {:?}",
                self.name,
                self.signature.arities().collect::<Vec<_>>(),
                other.name,
                other.signature.arities().collect::<Vec<_>>()
            )))
        }
    }

    /// Relabels elements through `map` (which must be a bijection onto
    /// `0..domain_size`), producing a canonical structure.
    pub fn relabel(&self, map: &[usize]) -> Structure {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Relation::from_tuples(
                    r.arity(),
                    r.tuples().map(|t| t.iter().map(|&x| map[x]).collect::<Vec<_>>()),
                )
            })
            .collect();
        let mut s = Structure {
            name: self.name.clone(),
            domain_size: self.domain_size,
            signature: self.signature.clone(),
            relations,
        };
        s.canonicalize();
        s
    }

    /// Disjoint union: elements of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Structure) -> Result<Structure> {
        self.require_similar(other)?;
        let shift = self.domain_size;
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(a, b)| {
                let mut data = a.data.clone();
                data.extend(b.data.iter().map(|&x| x + shift));
                Relation { arity: a.arity, data }
            })
            .collect();
        Structure::from_relations(
            format!("{}+{}", self.name, other.name),
            self.domain_size + other.domain_size,
            self.signature.clone(),
            relations,
        )
    }
}

/// Returns `Ok` iff every structure invariant holds, otherwise the first
/// violation found (symbols in order, tuples in stored order).
pub fn validate_structure(s: &Structure) -> std::result::Result<(), Violation> {
    if s.relations.len() != s.signature.len() {
        return Err(Violation::SignatureMismatch);
    }
    for (sym, rel) in s.signature.symbols().iter().zip(&s.relations) {
        if rel.arity() != sym.arity {
            return Err(Violation::SignatureMismatch);
        }
        let mut prev: Option<&[usize]> = None;
        for t in rel.tuples() {
            if t.iter().any(|&x| x >= s.domain_size) {
                return Err(Violation::OutOfRange {
                    symbol: sym.name.clone(),
                    tuple: t.to_vec(),
                });
            }
            if let Some(p) = prev {
                if p >= t {
                    return Err(Violation::NotCanonical {
                        symbol: sym.name.clone(),
                        tuple: t.to_vec(),
                    });
                }
            }
            prev = Some(t);
        }
    }
    Ok(())
}

/// A map between the domains of two similar structures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { map: (0..n).collect() }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    /// True iff this map is a homomorphism `source → target`.
    pub fn validate(&self, source: &Structure, target: &Structure) -> bool {
        if self.map.len() != source.domain_size()
            || !source.is_similar(target)
            || self.map.iter().any(|&x| x >= target.domain_size())
        {
            return false;
        }
        let mut image = Vec::new();
        source.relations().iter().zip(target.relations()).all(|(rs, rt)| {
            rs.tuples().all(|t| {
                image.clear();
                image.extend(t.iter().map(|&x| self.map[x]));
                rt.contains(&image)
            })
        })
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Mixed-radix decoding, most significant digit first.
pub fn decode_tuple(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// Inverse of [`decode_tuple`].
pub fn encode_tuple(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &d| acc * base + d)
}

/// The `n`-th power `bⁿ`; element `i` is the tuple `decode_tuple(i, |B|, n)`.
pub fn power(b: &Structure, n: usize, budget: &Budget) -> Result<Structure> {
    if n == 0 {
        return Err(Error::ArityMismatch("power exponent must be at least 1".into()));
    }
    power_any(b, n, budget, format!("{}^{}", b.name(), n))
}

/// Labelled power `B^X`: the same construction as [`power`] with
/// `labels.len()` coordinates, plus the label → coordinate map. The empty
/// exponent gives the one-element structure with full relations.
pub fn x_power(b: &Structure, labels: &[String], budget: &Budget) -> Result<(Structure, HashMap<String, usize>)> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::ArityMismatch(format!("duplicate label `{l}`")));
        }
    }
    let s = power_any(b, labels.len(), budget, format!("{}^X{}", b.name(), labels.len()))?;
    Ok((s, index))
}

pub(crate) fn power_any(b: &Structure, n: usize, budget: &Budget, name: String) -> Result<Structure> {
    let base = b.domain_size();
    let size = budget.check_power("power domain", base, n)?;
    // Positional weights, most significant coordinate first.
    let weights: Vec<usize> = (0..n).map(|i| base.pow((n - 1 - i) as u32)).collect();
    let mut relations = Vec::with_capacity(b.relations().len());
    for rel in b.relations() {
        let k = rel.arity();
        let count = budget.check_tuples("power relation", rel.len(), n)?;
        let mut data = Vec::with_capacity(count * k);
        // Odometer over column choices: column i of the matrix is rel[choice[i]].
        let mut choice = vec![0usize; n];
        let mut live = n == 0 || !rel.is_empty();
        while live {
            for row in 0..k {
                let idx: usize = choice
                    .iter()
                    .zip(&weights)
                    .map(|(&c, &w)| rel.tuple(c)[row] * w)
                    .sum();
                data.push(idx);
            }
            live = false;
            for pos in (0..n).rev() {
                choice[pos] += 1;
                if choice[pos] < rel.len() {
                    live = true;
                    break;
                }
                choice[pos] = 0;
            }
        }
        relations.push(Relation { arity: k, data });
    }
    Structure::from_relations(name, size, b.signature().clone(), relations)
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    #[test]
    fn validate_reports() {
        assert_eq!(validate_structure(&clique(3)), Ok(()));

        let sig = Signature::from_pairs(&[("E", 2)]);
        let bad = Structure::from_parts_unchecked("bad", 3, sig.clone(), vec![Relation::from_tuples(2, [[0, 3]])]);
        assert!(matches!(validate_structure(&bad), Err(Violation::OutOfRange { tuple, .. }) if tuple == vec![0, 3]));

        let dup = Structure::from_parts_unchecked("dup", 3, sig, vec![Relation::from_tuples(2, [[0, 1], [0, 1]])]);
        assert!(matches!(validate_structure(&dup), Err(Violation::NotCanonical { .. })));
    }

    #[test]
    fn new_rejects_out_of_range() {
        let sig = Signature::from_pairs(&[("E", 2)]);
        assert!(Structure::new("x", 2, sig, vec![vec![vec![0, 2]]]).is_err());
    }

    #[test]
    fn signature_rules() {
        assert!(Signature::new(vec![Symbol { name: "R".into(), arity: 0 }]).is_err());
        let dup = vec![
            Symbol { name: "R".into(), arity: 1 },
            Symbol { name: "R".into(), arity: 2 },
        ];
        assert!(Signature::new(dup).is_err());
    }

    #[test]
    fn power_counts() {
        let budget = Budget::default();
        let k3 = clique(3);
        let p1 = power(&k3, 1, &budget).unwrap();
        assert!(p1.same_shape(&k3));
        // |R^{B^n}| = |R^B|^n
        let p2 = power(&k3, 2, &budget).unwrap();
        assert_eq!(p2.domain_size(), 9);
        assert_eq!(p2.relation(0).len(), 36);
        let h2 = nae(2);
        let q2 = power(&h2, 2, &budget).unwrap();
        assert_eq!(q2.domain_size(), 4);
        assert_eq!(q2.relation(0).len(), 36);
        assert!(power(&k3, 0, &budget).is_err());
    }

    #[test]
    fn power_budget() {
        let budget = Budget {
            max_power_elements: 8,
            ..Budget::default()
        };
        assert!(power(&clique(3), 2, &budget).unwrap_err().is_budget());
    }

    #[test]
    fn x_power_edge_cases() {
        let budget = Budget::default();
        let (zero, map) = x_power(&one_in_three(), &[], &budget).unwrap();
        assert_eq!(zero.domain_size(), 1);
        assert_eq!(zero.relation(0).tuples().collect::<Vec<_>>(), vec![&[0, 0, 0][..]]);
        assert!(map.is_empty());

        let labels = vec!["h1".to_string(), "h2".to_string()];
        let (k, map) = x_power(&clique(3), &labels, &budget).unwrap();
        assert!(k.same_shape(&power(&clique(3), 2, &budget).unwrap()));
        assert_eq!(map["h2"], 1);

        let (h, _) = x_power(&nae(2), &["h".to_string()], &budget).unwrap();
        assert!(h.same_shape(&nae(2)));

        assert!(x_power(&nae(2), &["a".to_string(), "a".to_string()], &budget).is_err());
    }

    #[test]
    fn power_elements_are_mixed_radix() {
        let p = power(&clique(3), 2, &Budget::default()).unwrap();
        // (r1, r2) adjacent iff both coordinates differ.
        for t in p.relation(0).tuples() {
            let a = decode_tuple(t[0], 3, 2);
            let b = decode_tuple(t[1], 3, 2);
            assert!(a[0] != b[0] && a[1] != b[1]);
        }
        assert_eq!(encode_tuple(&[2, 1], 3), 7);
        assert_eq!(decode_tuple(7, 3, 2), vec![2, 1]);
    }

    #[test]
    fn homomorphism_validation() {
        let k3 = clique(3);
        assert!(Homomorphism::identity(3).validate(&k3, &k3));
        assert!(!Homomorphism::new(vec![0, 0, 1]).validate(&k3, &k3));
        assert!(!Homomorphism::new(vec![0, 1]).validate(&k3, &k3));
        let h = Homomorphism::new(vec![1, 2, 0]);
        assert_eq!(h.then(&h).map(), &[2, 0, 1]);
    }
}
