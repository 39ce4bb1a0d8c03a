use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{decode_tuple, encode_tuple, Homomorphism, Structure};

/// A total function `Aⁿ → B` stored densely. Entry `x` is the value on the
/// tuple `decode_tuple(x, |A|, n)`, so a polymorphism's table is exactly a
/// homomorphism map out of `power(A, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionTable {
    arity: usize,
    source_size: usize,
    target_size: usize,
    values: Vec<usize>,
}

impl FunctionTable {
    pub fn new(arity: usize, source_size: usize, target_size: usize, values: Vec<usize>) -> Result<Self> {
        let expected = source_size.checked_pow(arity as u32);
        if arity == 0 || expected != Some(values.len()) {
            return Err(Error::ArityMismatch(format!(
                "{} values for arity {arity} over a {source_size}-element domain",
                values.len()
            )));
        }
        if values.iter().any(|&v| v >= target_size) {
            return Err(Error::ArityMismatch("table value outside the target domain".into()));
        }
        Ok(FunctionTable {
            arity,
            source_size,
            target_size,
            values,
        })
    }

    pub fn from_homomorphism(h: &Homomorphism, arity: usize, source_size: usize, target_size: usize) -> Result<Self> {
        FunctionTable::new(arity, source_size, target_size, h.map().to_vec())
    }

    /// Builds a table by evaluating `f` on every input tuple.
    pub fn from_fn(arity: usize, source_size: usize, target_size: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let len = source_size.pow(arity as u32);
        let values = (0..len).map(|x| f(&decode_tuple(x, source_size, arity))).collect();
        FunctionTable::new(arity, source_size, target_size, values)
    }

    /// The projection onto coordinate `coord` (0-based) over an `n`-element set.
    pub fn projection(arity: usize, coord: usize, n: usize) -> Self {
        assert!(coord < arity);
        FunctionTable::from_fn(arity, n, n, |x| x[coord]).expect("projection is well formed")
    }

    /// The same function viewed with a larger codomain.
    pub fn widen_target(&self, target_size: usize) -> Result<Self> {
        FunctionTable::new(self.arity, self.source_size, target_size, self.values.clone())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn eval(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.values[encode_tuple(args, self.source_size)]
    }

    pub fn as_homomorphism(&self) -> Homomorphism {
        Homomorphism::new(self.values.clone())
    }

    /// True iff the table is a homomorphism `power(a, arity) → b`, checked
    /// without materializing the power.
    pub fn is_polymorphism(&self, a: &Structure, b: &Structure) -> bool {
        if a.domain_size() != self.source_size || b.domain_size() != self.target_size || !a.is_similar(b) {
            return false;
        }
        let n = self.arity;
        let mut args = vec![0usize; n];
        let mut image = Vec::new();
        for (ra, rb) in a.relations().iter().zip(b.relations()) {
            if ra.is_empty() {
                continue;
            }
            let k = ra.arity();
            let mut choice = vec![0usize; n];
            let mut live = true;
            while live {
                image.clear();
                for row in 0..k {
                    for (i, &c) in choice.iter().enumerate() {
                        args[i] = ra.tuple(c)[row];
                    }
                    image.push(self.eval(&args));
                }
                if !rb.contains(&image) {
                    return false;
                }
                live = false;
                for pos in (0..n).rev() {
                    choice[pos] += 1;
                    if choice[pos] < ra.len() {
                        live = true;
                        break;
                    }
                    choice[pos] = 0;
                }
            }
        }
        true
    }

    /// Coordinates (0-based) on which the value actually depends.
    pub fn essential_coordinates(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&i| {
                let stride = self.source_size.pow((self.arity - 1 - i) as u32);
                (0..self.values.len()).any(|x| {
                    let digit = (x / stride) % self.source_size;
                    digit + 1 < self.source_size && self.values[x] != self.values[x + stride]
                })
            })
            .collect()
    }

    /// Whether swapping coordinates `i` and `j` leaves the table unchanged.
    fn invariant_under_swap(&self, i: usize, j: usize) -> bool {
        let mut args = vec![0usize; self.arity];
        for x in 0..self.values.len() {
            fill_tuple(x, self.source_size, &mut args);
            args.swap(i, j);
            if self.values[encode_tuple(&args, self.source_size)] != self.values[x] {
                return false;
            }
        }
        true
    }

    /// Whether the table is unchanged by an arbitrary argument permutation
    /// (`perm[i]` is the argument placed in position `i`).
    pub fn invariant_under(&self, perm: &[usize]) -> bool {
        let mut args = vec![0usize; self.arity];
        let mut permuted = vec![0usize; self.arity];
        for x in 0..self.values.len() {
            fill_tuple(x, self.source_size, &mut args);
            for (i, &p) in perm.iter().enumerate() {
                permuted[i] = args[p];
            }
            if self.values[encode_tuple(&permuted, self.source_size)] != self.values[x] {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub(crate) fn fill_tuple(mut x: usize, base: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = x % base;
        x /= base;
    }
}

/// A coordinate map `π: [m] → [n]` (0-based), read as
/// `f(x₀..x_{n-1}) = g(x_{π(0)}..x_{π(m-1)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorMap {
    from_arity: usize,
    to_arity: usize,
    map: Vec<usize>,
}

impl MinorMap {
    pub fn new(to_arity: usize, map: Vec<usize>) -> Result<Self> {
        if map.is_empty() || to_arity == 0 || map.iter().any(|&x| x >= to_arity) {
            return Err(Error::ArityMismatch(format!("{map:?} is not a map into [{to_arity}]")));
        }
        Ok(MinorMap {
            from_arity: map.len(),
            to_arity,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        MinorMap {
            from_arity: n,
            to_arity: n,
            map: (0..n).collect(),
        }
    }

    pub fn from_arity(&self) -> usize {
        self.from_arity
    }

    pub fn to_arity(&self) -> usize {
        self.to_arity
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// First `self`, then `next`: the map `x ↦ next(self(x))`. If
    /// `t_j = t_i^self` and `t_k = t_j^next` then `t_k = t_i^(self.then(next))`.
    pub fn then(&self, next: &MinorMap) -> Result<MinorMap> {
        if self.to_arity != next.from_arity {
            return Err(Error::ArityMismatch("minor maps do not compose".into()));
        }
        MinorMap::new(next.to_arity, self.map.iter().map(|&x| next.map[x]).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.to_arity];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// The inverse of a permutation.
    pub fn inverse(&self) -> Option<MinorMap> {
        if self.from_arity != self.to_arity || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.from_arity];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Some(MinorMap {
            from_arity: self.from_arity,
            to_arity: self.to_arity,
            map: inv,
        })
    }

    /// All `n^m` maps `[m] → [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<MinorMap> {
        let total = n.pow(m as u32);
        (0..total)
            .map(|x| MinorMap {
                from_arity: m,
                to_arity: n,
                map: decode_tuple(x, n, m),
            })
            .collect()
    }
}

/// `g^π`: the table `f` of arity `π.to_arity()` with
/// `f(x) = g(x_{π(0)}, …, x_{π(m-1)})`.
pub fn minor(g: &FunctionTable, pi: &MinorMap) -> Result<FunctionTable> {
    if pi.from_arity != g.arity {
        return Err(Error::ArityMismatch(format!(
            "minor map from arity {} applied to a table of arity {}",
            pi.from_arity, g.arity
        )));
    }
    let base = g.source_size;
    let n = pi.to_arity;
    // Weight of each target coordinate in g's encoding.
    let mut weight = vec![0usize; n];
    for (j, &p) in pi.map.iter().enumerate() {
        weight[p] += base.pow((g.arity - 1 - j) as u32);
    }
    let len = base.pow(n as u32);
    let mut values = Vec::with_capacity(len);
    let mut args = vec![0usize; n];
    for x in 0..len {
        fill_tuple(x, base, &mut args);
        let idx: usize = args.iter().zip(&weight).map(|(a, w)| a * w).sum();
        values.push(g.values[idx]);
    }
    Ok(FunctionTable {
        arity: n,
        source_size: base,
        target_size: g.target_size,
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub symmetric: bool,
    pub parity_symmetric: bool,
    pub cancellation: bool,
    pub alternating: bool,
    /// 0-based.
    pub essential: Vec<usize>,
}

pub fn classify_table(f: &FunctionTable) -> Classification {
    let n = f.arity;
    let symmetric = (1..n).all(|i| f.invariant_under_swap(i - 1, i));
    let odd = n % 2 == 1;
    // Positions 0, 2, 4, ... and 1, 3, 5, ... are the two parity classes;
    // adjacent swaps inside each class generate the parity-preserving group.
    let parity_symmetric = odd && (2..n).all(|i| f.invariant_under_swap(i - 2, i));
    let cancellation = odd && (n == 1 || cancels(f));
    Classification {
        symmetric,
        parity_symmetric,
        cancellation,
        alternating: parity_symmetric && cancellation,
        essential: f.essential_coordinates(),
    }
}

/// `f(x₁..x_{n-2}, y, y) = f(x₁..x_{n-2}, z, z)` for all arguments.
fn cancels(f: &FunctionTable) -> bool {
    let n = f.arity;
    let base = f.source_size;
    let mut args = vec![0usize; n];
    let prefix_len = base.pow((n - 2) as u32);
    for p in 0..prefix_len {
        fill_tuple(p, base, &mut args[..n - 2]);
        args[n - 2] = 0;
        args[n - 1] = 0;
        let reference = f.eval(&args);
        for y in 1..base {
            args[n - 2] = y;
            args[n - 1] = y;
            if f.eval(&args) != reference {
                return false;
            }
        }
    }
    true
}
