//! BLP, AIP and the combined BLP+AIP test.

use super::integer::{aip_solve, AipOutcome};
use super::numeric::{Int, Rational};
use super::program::{build_program, ProgramKind};
use super::simplex::{lp_feasible, variable_support};
use crate::error::{Error, Result};
use crate::structure::generators::{nae, one_in_three};
use crate::structure::{Homomorphism, Structure};

/// Whether the basic LP of `i` over `a` is feasible.
pub fn blp_accepts(a: &Structure, i: &Structure) -> Result<bool> {
    let (sys, _) = build_program(a, i, ProgramKind::Blp)?;
    Ok(lp_feasible(&sys)?.is_some())
}

/// The affine integer program of `i` over `a`.
pub fn aip_accepts(a: &Structure, i: &Structure) -> Result<AipOutcome> {
    let (sys, _) = build_program(a, i, ProgramKind::Aip)?;
    aip_solve(&sys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlpAipOutcome {
    pub accepted: bool,
    /// Columns positive in some BLP solution; empty when the BLP fails.
    pub support: Vec<usize>,
    /// A BLP solution positive on exactly the support.
    pub blp_point: Option<Vec<Rational>>,
    /// The AIP run restricted to the support, when the BLP is feasible.
    pub aip: Option<AipOutcome>,
}

/// BLP+AIP: the AIP with every column outside the BLP support fixed to 0.
pub fn blp_aip(a: &Structure, i: &Structure) -> Result<BlpAipOutcome> {
    let (blp, _) = build_program(a, i, ProgramKind::Blp)?;
    let support = match variable_support(&blp) {
        Ok(s) => s,
        Err(Error::Infeasible) => {
            return Ok(BlpAipOutcome {
                accepted: false,
                support: Vec::new(),
                blp_point: None,
                aip: None,
            })
        }
        Err(e) => return Err(e),
    };
    let (mut aip, _) = build_program(a, i, ProgramKind::Aip)?;
    let mut inside = vec![false; aip.columns()];
    for &j in &support.columns {
        inside[j] = true;
    }
    for (j, &keep) in inside.iter().enumerate() {
        if !keep {
            aip.fix_column(j, Rational::zero());
        }
    }
    let outcome = aip_solve(&aip)?;
    Ok(BlpAipOutcome {
        accepted: outcome.is_solution(),
        support: support.columns,
        blp_point: Some(support.point),
        aip: Some(outcome),
    })
}

/// Rounds an integer solution of the AIP of `i` over 1-in-3 to a
/// homomorphism `i → H2`: `v ↦ 1` when `μ_v(1) > 0`, else `0`.
///
/// In each constraint the values `μ_v(1)` sum to 1, so at least one is
/// positive and not all three are.
pub fn round_one_in_three(i: &Structure, point: &[Int]) -> Result<Homomorphism> {
    let t = one_in_three();
    if !i.is_similar(&t) {
        return Err(Error::WrongSignature(format!(
            "`{}` does not have a single ternary symbol",
            i.name()
        )));
    }
    let (sys, vars) = build_program(&t, i, ProgramKind::Aip)?;
    if point.len() != sys.columns() {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            sys.columns(),
            point.len()
        )));
    }
    if !sys.satisfied_by_integers(point) {
        return Err(Error::InvalidPoint("not a solution of the affine program".into()));
    }
    let h = Homomorphism::new(
        (0..i.domain_size())
            .map(|v| usize::from(point[vars.vertex(v, 1)].signum() > 0))
            .collect(),
    );
    debug_assert!(h.validate(i, &nae(2)));
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::exists_homomorphism;
    use crate::structure::generators::*;
    use crate::HomSearchConfig;

    fn inst(n: usize, tuples: Vec<Vec<usize>>) -> Structure {
        Structure::new("I", n, one_in_three().signature().clone(), vec![tuples]).unwrap()
    }

    #[test]
    fn single_triple() {
        let t = one_in_three();
        let i = inst(3, vec![vec![0, 1, 2]]);
        assert!(blp_accepts(&t, &i).unwrap());
        let AipOutcome::Solution(x) = aip_accepts(&t, &i).unwrap() else { panic!() };
        let h = round_one_in_three(&i, &x).unwrap();
        assert!(h.validate(&i, &nae(2)));
        assert!(blp_aip(&t, &i).unwrap().accepted);
    }

    #[test]
    fn doubled_vertex() {
        // (u, u, v): 2x + y = 1 has the integer solution x = 0, y = 1.
        let t = one_in_three();
        let i = inst(2, vec![vec![0, 0, 1]]);
        assert!(aip_accepts(&t, &i).unwrap().is_solution());
        // All three positions the same vertex: 3x = 1 has none.
        let i = inst(1, vec![vec![0, 0, 0]]);
        let out = aip_accepts(&t, &i).unwrap();
        let AipOutcome::Infeasible(c) = out else { panic!() };
        let (sys, _) = build_program(&t, &i, ProgramKind::Aip).unwrap();
        assert!(c.verify(&sys));
        assert!(!blp_aip(&t, &i).unwrap().accepted);
    }

    #[test]
    fn rounding_rejects_bad_points() {
        let i = inst(3, vec![vec![0, 1, 2]]);
        assert!(matches!(round_one_in_three(&i, &[Int::ZERO; 9]), Err(Error::InvalidPoint(_))));
        assert!(matches!(round_one_in_three(&i, &[Int::ZERO; 2]), Err(Error::InvalidPoint(_))));
        assert!(matches!(
            round_one_in_three(&clique(3), &[]),
            Err(Error::WrongSignature(_))
        ));
    }

    #[test]
    fn odd_cycle_over_k2() {
        // The uniform point satisfies the BLP; parity rules out the AIP.
        let k2 = clique(2);
        let c5 = undirected_cycle(5);
        assert!(!exists_homomorphism(&c5, &k2, HomSearchConfig::default()).unwrap());
        assert!(blp_accepts(&k2, &c5).unwrap());
        assert!(!aip_accepts(&k2, &c5).unwrap().is_solution());
        assert!(!blp_aip(&k2, &c5).unwrap().accepted);
    }
}
