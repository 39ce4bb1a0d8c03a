use crate::error::Result;
use crate::structure::{Relation, Structure};

/// Union-find with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Class index of every element, classes numbered by their smallest
    /// member, plus the number of classes.
    pub fn canonical_classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        (out, next)
    }
}

/// Quotient of `s` by the partition in `uf`; returns the canonical quotient
/// and the map from elements of `s` to classes.
pub fn quotient(s: &Structure, uf: &mut UnionFind, name: impl Into<String>) -> Result<(Structure, Vec<usize>)> {
    let (class, count) = uf.canonical_classes();
    let relations = s
        .relations()
        .iter()
        .map(|r| {
            Relation::from_tuples(
                r.arity(),
                r.tuples().map(|t| t.iter().map(|&x| class[x]).collect::<Vec<_>>()),
            )
        })
        .collect();
    let q = Structure::from_relations(name, count, s.signature().clone(), relations)?;
    Ok((q, class))
}
