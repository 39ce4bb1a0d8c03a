//! Built-in structures.

use super::{Signature, Structure};

fn edge_sig() -> Signature {
    Signature::from_pairs(&[("E", 2)])
}

fn ternary_sig() -> Signature {
    Signature::from_pairs(&[("R", 3)])
}

fn graph(name: String, n: usize, edges: Vec<Vec<usize>>) -> Structure {
    Structure::new(name, n, edge_sig(), vec![edges]).expect("generated graph is valid")
}

/// `K_n`: the complete graph, binary `≠` on `n` elements.
pub fn clique(n: usize) -> Structure {
    let edges = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b]))
        .collect();
    graph(format!("K{n}"), n, edges)
}

/// `H_n`: ternary not-all-equal on `n` elements.
pub fn nae(n: usize) -> Structure {
    let mut tuples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !(a == b && b == c) {
                    tuples.push(vec![a, b, c]);
                }
            }
        }
    }
    Structure::new(format!("H{n}"), n, ternary_sig(), vec![tuples]).expect("valid")
}

/// `T`: 1-in-3 on `{0, 1}`.
pub fn one_in_three() -> Structure {
    Structure::new(
        "T",
        2,
        ternary_sig(),
        vec![vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]],
    )
    .expect("valid")
}

/// `P_n`: the directed path with `n` edges on `{0, ..., n}`.
pub fn path(n: usize) -> Structure {
    graph(format!("P{n}"), n + 1, (0..n).map(|i| vec![i, i + 1]).collect())
}

/// `C_n`: the directed cycle `0 → 1 → ... → n-1 → 0`.
pub fn cycle(n: usize) -> Structure {
    graph(format!("C{n}"), n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// `C_n` with both orientations of each edge.
pub fn undirected_cycle(n: usize) -> Structure {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push(vec![i, (i + 1) % n]);
        edges.push(vec![(i + 1) % n, i]);
    }
    graph(format!("C{n}u"), n, edges)
}

/// A single vertex with a loop.
pub fn single_loop() -> Structure {
    graph("L".into(), 1, vec![vec![0, 0]])
}

/// The 3-SAT template on `{0, 1}`: `R_i` is the clause with its first `i`
/// literals negated.
pub fn three_sat() -> Structure {
    let sig = Signature::from_pairs(&[("R0", 3), ("R1", 3), ("R2", 3), ("R3", 3)]);
    let rels = (0..4)
        .map(|negated| {
            let mut tuples = Vec::new();
            for x in 0..8usize {
                let t = vec![(x >> 2) & 1, (x >> 1) & 1, x & 1];
                let satisfied = t
                    .iter()
                    .enumerate()
                    .any(|(j, &v)| if j < negated { v == 0 } else { v == 1 });
                if satisfied {
                    tuples.push(t);
                }
            }
            tuples
        })
        .collect();
    Structure::new("SAT3", 2, sig, rels).expect("valid")
}

/// Resolves built-in names: `K<n>`, `H<n>`, `T`, `P<n>`, `C<n>`, `C<n>u`,
/// `L`, `SAT3`.
pub fn builtin(name: &str) -> Option<Structure> {
    let num = |s: &str| s.parse::<usize>().ok();
    match name {
        "T" => return Some(one_in_three()),
        "L" => return Some(single_loop()),
        "SAT3" => return Some(three_sat()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('C') {
        if let Some(n) = rest.strip_suffix('u').and_then(num) {
            return (n >= 1).then(|| undirected_cycle(n));
        }
        return num(rest).filter(|&n| n >= 1).map(cycle);
    }
    let (head, rest) = name.split_at(name.len().min(1));
    let n = num(rest)?;
    match head {
        "K" => Some(clique(n)),
        "H" => Some(nae(n)),
        "P" => Some(path(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(clique(3).relation(0).len(), 6);
        assert_eq!(nae(2).relation(0).len(), 6);
        assert_eq!(nae(3).relation(0).len(), 24);
        assert_eq!(path(3).domain_size(), 4);
        assert_eq!(cycle(5).relation(0).len(), 5);
        assert_eq!(undirected_cycle(5).relation(0).len(), 10);
        for r in three_sat().relations() {
            assert_eq!(r.len(), 7);
        }
        assert!(three_sat().relation(3).contains(&[0, 1, 1]));
        assert!(!three_sat().relation(3).contains(&[1, 1, 1]));
    }

    #[test]
    fn t_and_h2_are_similar() {
        assert!(one_in_three().is_similar(&nae(2)));
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin("K5"), Some(clique(5)));
        assert_eq!(builtin("C5u"), Some(undirected_cycle(5)));
        assert_eq!(builtin("C4"), Some(cycle(4)));
        assert_eq!(builtin("P2"), Some(path(2)));
        assert_eq!(builtin("T"), Some(one_in_three()));
        assert_eq!(builtin("Q3"), None);
        assert_eq!(builtin(""), None);
    }
}
