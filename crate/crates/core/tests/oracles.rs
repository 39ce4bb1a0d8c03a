mod common;

use common::*;
use pcsplab::hom::{are_isomorphic, count_homomorphisms, find_homomorphism};
use pcsplab::minion::{count_polymorphisms, FunctionTable};
use pcsplab::reduce::random::{random_structure, seeded};
use pcsplab::reduce::{apply_gadget_replacement, arc_graph, pp_power, GadgetData};
use pcsplab::relax::{blp_accepts, build_program, lp_feasible, ProgramKind};
use pcsplab::structure::{decode_tuple, parse_structure, serialize_structure, Signature, Structure};
use pcsplab::{Budget, HomSearchConfig};
use proptest::prelude::*;

fn sig_strategy() -> impl Strategy<Value = Signature> {
    prop_oneof![
        Just(Signature::from_pairs(&[("E", 2)])),
        Just(Signature::from_pairs(&[("R", 3)])),
        Just(Signature::from_pairs(&[("U", 1), ("E", 2)])),
    ]
}

/// Two random structures over a shared signature.
fn pair(max_a: usize, max_b: usize) -> impl Strategy<Value = (Structure, Structure)> {
    (sig_strategy(), any::<u64>(), 0.1f64..0.7).prop_map(move |(sig, seed, d)| {
        let mut rng = seeded(seed);
        (random_structure(&mut rng, &sig, max_a, d), random_structure(&mut rng, &sig, max_b, d))
    })
}

/// Every map `i → a` in lexicographic order, filtered.
fn all_homs(i: &Structure, a: &Structure) -> Vec<Vec<usize>> {
    let n = i.domain_size();
    let m = a.domain_size();
    if n == 0 {
        return vec![vec![]];
    }
    if m == 0 {
        return vec![];
    }
    (0..m.pow(n as u32))
        .map(|c| decode_tuple(c, m, n))
        .filter(|h| is_hom(h, i, a))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn search_matches_enumeration((i, a) in pair(5, 3)) {
        let cfg = HomSearchConfig::default();
        let homs = all_homs(&i, &a);
        let found = find_homomorphism(&i, &a, cfg).unwrap();
        prop_assert_eq!(found.map(|h| h.into_map()), homs.first().cloned());
        prop_assert_eq!(count_homomorphisms(&i, &a, cfg).unwrap(), homs.len() as u64);
        prop_assert_eq!(brute_hom_exists(&i, &a), !homs.is_empty());
    }

    #[test]
    fn isomorphism_matches_permutations((a, b) in pair(4, 4)) {
        let cfg = HomSearchConfig::default();
        prop_assert_eq!(are_isomorphic(&a, &b, cfg).unwrap(), brute_isomorphic(&a, &b));
        let p: Vec<usize> = (0..a.domain_size()).rev().collect();
        prop_assert!(are_isomorphic(&a, &a.relabel(&p), cfg).unwrap());
    }

    #[test]
    fn text_round_trip((a, _) in pair(6, 1)) {
        let text = serialize_structure(&a);
        let mut back = parse_structure(&text).unwrap();
        back.canonicalize();
        prop_assert!(back.same_shape(&a));
        prop_assert_eq!(serialize_structure(&back), text);
    }

    #[test]
    fn blp_accepts_yes_instances((i, a) in pair(4, 3)) {
        let (sys, vars) = build_program(&a, &i, ProgramKind::Blp).unwrap();
        let x = lp_feasible(&sys).unwrap();
        prop_assert_eq!(blp_accepts(&a, &i).unwrap(), x.is_some());
        if brute_hom_exists(&i, &a) {
            prop_assert!(x.is_some());
        }
        if let Some(x) = x {
            prop_assert!(sys.satisfied_by(&x));
            for v in 0..i.domain_size() {
                prop_assert!(vars.vertex_values(&x, v).iter().all(|q| !q.is_negative()));
            }
        }
    }

    #[test]
    fn identity_gadget_is_trivial((i, b) in pair(4, 3)) {
        let g = GadgetData::identity(i.signature());
        let cfg = HomSearchConfig::default();
        prop_assert!(brute_isomorphic(&apply_gadget_replacement(&g, &i).unwrap(), &i));
        prop_assert!(brute_isomorphic(&pp_power(&g, &b, cfg).unwrap(), &b));
    }

    #[test]
    fn arc_graph_matches_definition(seed in any::<u64>()) {
        let sig = Signature::from_pairs(&[("E", 2)]);
        let g = random_structure(&mut seeded(seed), &sig, 5, 0.35);
        let d = arc_graph(&g).unwrap();
        let edges: Vec<Vec<usize>> = g.relation(0).tuples().map(|t| t.to_vec()).collect();
        prop_assert_eq!(d.domain_size(), edges.len());
        for (k, e) in edges.iter().enumerate() {
            for (l, f) in edges.iter().enumerate() {
                prop_assert_eq!(d.relation(0).contains(&[k, l]), e[1] == f[0]);
            }
        }
    }
}

#[test]
fn polymorphism_counts_by_hand() {
    let budget = Budget::default();
    let mut rng = seeded(4);
    let sig = Signature::from_pairs(&[("E", 2)]);
    for _ in 0..25 {
        let a = random_structure(&mut rng, &sig, 3, 0.4);
        let b = random_structure(&mut rng, &sig, 3, 0.5);
        if a.domain_size() == 0 || b.domain_size() == 0 {
            continue;
        }
        let (n, m) = (a.domain_size(), b.domain_size());
        let cells = n * n;
        let by_hand = (0..m.pow(cells as u32))
            .filter(|&c| {
                let t = FunctionTable::new(2, n, m, decode_tuple(c, m, cells)).unwrap();
                a.relation(0).tuples().all(|x| {
                    a.relation(0).tuples().all(|y| {
                        let img = [t.eval(&[x[0], y[0]]), t.eval(&[x[1], y[1]])];
                        b.relation(0).contains(&img)
                    })
                })
            })
            .count() as u64;
        assert_eq!(count_polymorphisms(&a, &b, 2, &budget).unwrap(), by_hand);
    }
}
