//! Trash-colour form of functions `K₃ⁿ → K₄`: a colour `t`, a coordinate
//! `i` and a map `α` with `f(a) ∈ {t, α(aᵢ)}` for every input.

use super::table::FunctionTable;
use crate::error::{Error, Result};
use crate::structure::decode_tuple;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrashRepresentation {
    pub trash: usize,
    /// 0-based.
    pub coordinate: usize,
    pub alpha: Vec<usize>,
    /// Whether every valid triple uses this coordinate.
    pub coordinate_unique: bool,
}

/// For a fixed `(t, i)`, the least `α` that works (values never forced
/// are 0), if any.
fn alpha_for(f: &FunctionTable, t: usize, i: usize) -> Option<Vec<usize>> {
    let mut alpha: Vec<Option<usize>> = vec![None; f.source_size()];
    for (x, &v) in f.values().iter().enumerate() {
        if v == t {
            continue;
        }
        let a = decode_tuple(x, f.source_size(), f.arity())[i];
        match alpha[a] {
            None => alpha[a] = Some(v),
            Some(w) if w == v => {}
            Some(_) => return None,
        }
    }
    Some(alpha.into_iter().map(|v| v.unwrap_or(0)).collect())
}

/// The first valid `(t, i, α)` in the order `t`, then `i`, then `α`
/// lexicographically, or `None` if the table has no such form.
pub fn verify_trash_representation(f: &FunctionTable) -> Result<Option<TrashRepresentation>> {
    if f.source_size() != 3 || f.target_size() != 4 {
        return Err(Error::WrongTemplate(format!(
            "expected a table K3^n → K4, got {} → {}",
            f.source_size(),
            f.target_size()
        )));
    }
    let mut first: Option<(usize, usize, Vec<usize>)> = None;
    let mut coords = Vec::new();
    for t in 0..4 {
        for i in 0..f.arity() {
            if let Some(alpha) = alpha_for(f, t, i) {
                if first.is_none() {
                    first = Some((t, i, alpha));
                }
                if !coords.contains(&i) {
                    coords.push(i);
                }
            }
        }
    }
    Ok(first.map(|(trash, coordinate, alpha)| TrashRepresentation {
        trash,
        coordinate,
        alpha,
        coordinate_unique: coords.len() == 1,
    }))
}
