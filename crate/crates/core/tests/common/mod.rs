//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's search engine.

#![allow(dead_code)]

use pcsplab::structure::{Relation, Signature, Structure};

/// Whether `map` sends every tuple of `i` into the matching relation of `a`.
pub fn is_hom(map: &[usize], i: &Structure, a: &Structure) -> bool {
    if map.len() != i.domain_size() || map.iter().any(|&x| x >= a.domain_size()) {
        return false;
    }
    i.relations().iter().zip(a.relations()).all(|(ri, ra)| {
        ri.tuples().all(|t| {
            let img: Vec<usize> = t.iter().map(|&v| map[v]).collect();
            ra.tuples().any(|u| u == img.as_slice())
        })
    })
}

/// Plain backtracking: a tuple is checked once all its entries are set.
pub fn brute_hom(i: &Structure, a: &Structure) -> Option<Vec<usize>> {
    let n = i.domain_size();
    let m = a.domain_size();
    // ready[v] = tuples whose largest entry is v.
    let mut ready: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); n];
    for (r, rel) in i.relations().iter().enumerate() {
        for t in rel.tuples() {
            if let Some(&top) = t.iter().max() {
                ready[top].push((r, t.to_vec()));
            }
        }
    }
    fn go(v: usize, map: &mut Vec<usize>, m: usize, a: &Structure, ready: &[Vec<(usize, Vec<usize>)>]) -> bool {
        if v == map.len() {
            return true;
        }
        for x in 0..m {
            map[v] = x;
            let ok = ready[v].iter().all(|(r, t)| {
                let img: Vec<usize> = t.iter().map(|&u| map[u]).collect();
                a.relation(*r).tuples().any(|u| u == img.as_slice())
            });
            if ok && go(v + 1, map, m, a, ready) {
                return true;
            }
        }
        false
    }
    let mut map = vec![0; n];
    go(0, &mut map, m, a, &ready).then_some(map)
}

pub fn brute_hom_exists(i: &Structure, a: &Structure) -> bool {
    brute_hom(i, a).is_some()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn tuple_set(rel: &Relation, map: &[usize]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = rel.tuples().map(|t| t.iter().map(|&x| map[x]).collect()).collect();
    v.sort();
    v
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Structure, b: &Structure) -> bool {
    if a.domain_size() != b.domain_size() || !a.is_similar(b) {
        return false;
    }
    let id: Vec<usize> = (0..b.domain_size()).collect();
    let targets: Vec<Vec<Vec<usize>>> = b.relations().iter().map(|r| tuple_set(r, &id)).collect();
    permutations(a.domain_size()).into_iter().any(|p| {
        a.relations()
            .iter()
            .zip(&targets)
            .all(|(r, t)| r.len() == t.len() && tuple_set(r, &p) == *t)
    })
}

pub fn digraph(n: usize, edges: &[(usize, usize)]) -> Structure {
    let data: Vec<[usize; 2]> = edges.iter().map(|&(x, y)| [x, y]).collect();
    Structure::from_relations(
        format!("g{n}"),
        n,
        Signature::from_pairs(&[("E", 2)]),
        vec![Relation::from_tuples(2, data)],
    )
    .unwrap()
}

pub fn ternary(n: usize, triples: &[[usize; 3]]) -> Structure {
    Structure::from_relations(
        format!("i{n}"),
        n,
        Signature::from_pairs(&[("R", 3)]),
        vec![Relation::from_tuples(3, triples.iter())],
    )
    .unwrap()
}

/// Exactly one 1 per triple.
pub fn one_in_three_ok(i: &Structure, x: &[usize]) -> bool {
    i.relation(0).tuples().all(|t| t.iter().filter(|&&v| x[v] == 1).count() == 1 && t.iter().all(|&v| x[v] < 2))
}

/// No triple constant.
pub fn nae_ok(i: &Structure, x: &[usize]) -> bool {
    i.relation(0).tuples().all(|t| t.iter().all(|&v| x[v] < 2) && !(x[t[0]] == x[t[1]] && x[t[1]] == x[t[2]]))
}

/// Two-colour assignments of `n` variables, as bit patterns.
pub fn exists_assignment(n: usize, ok: impl Fn(&[usize]) -> bool) -> bool {
    (0..1usize << n).any(|bits| {
        let x: Vec<usize> = (0..n).map(|v| bits >> v & 1).collect();
        ok(&x)
    })
}
