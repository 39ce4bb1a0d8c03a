//! Seeded random structures for property harnesses.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::structure::{decode_tuple, Signature, Structure};

/// The generator used everywhere a seed is accepted.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A structure with `1..=max_size` elements where every possible tuple is
/// present independently with probability `density`.
pub fn random_structure<R: Rng>(rng: &mut R, sig: &Signature, max_size: usize, density: f64) -> Structure {
    let n = rng.gen_range(1..=max_size.max(1));
    let relations = sig
        .symbols()
        .iter()
        .map(|s| {
            let total = n.pow(s.arity as u32);
            (0..total)
                .filter(|_| rng.gen_bool(density))
                .map(|code| decode_tuple(code, n, s.arity))
                .collect()
        })
        .collect();
    Structure::new("R", n, sig.clone(), relations).expect("generated tuples are in range")
}

pub fn random_digraph<R: Rng>(rng: &mut R, max_size: usize) -> Structure {
    let density = rng.gen_range(0.15..0.6);
    random_structure(rng, &Signature::from_pairs(&[("E", 2)]), max_size, density)
}

/// An instance of 1-in-3 with `n` elements and up to `m` triples, all
/// satisfied by a hidden 0/1 assignment.
pub fn planted_one_in_three<R: Rng>(rng: &mut R, n: usize, m: usize) -> Structure {
    let sig = Signature::from_pairs(&[("R", 3)]);
    let hidden: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let ones: Vec<usize> = (0..n).filter(|&v| hidden[v]).collect();
    let zeros: Vec<usize> = (0..n).filter(|&v| !hidden[v]).collect();
    let mut tuples = Vec::new();
    if !ones.is_empty() && !zeros.is_empty() {
        for _ in 0..m {
            let mut t = vec![
                *ones.choose(rng).unwrap(),
                *zeros.choose(rng).unwrap(),
                *zeros.choose(rng).unwrap(),
            ];
            t.shuffle(rng);
            tuples.push(t);
        }
    }
    Structure::new("I", n, sig, vec![tuples]).expect("planted tuples are in range")
}
