//! Two instances the basic LP relaxation accepts although no homomorphism exists.

use pcsplab::hom::exists_homomorphism;
use pcsplab::relax::{build_program, blp_accepts, lp_feasible, ProgramKind};
use pcsplab::structure::generators::{clique, undirected_cycle};
use pcsplab::structure::Structure;
use pcsplab::HomSearchConfig;

fn report(template: &Structure, instance: &Structure) -> pcsplab::Result<()> {
    let cfg = HomSearchConfig::default();
    println!(
        "{} over {}: BLP {}, homomorphism {}",
        instance.name(),
        template.name(),
        blp_accepts(template, instance)?,
        exists_homomorphism(instance, template, cfg)?
    );
    Ok(())
}

fn main() -> pcsplab::Result<()> {
    report(&clique(2), &undirected_cycle(3))?;
    report(&clique(3), &clique(4))?;

    let (sys, vars) = build_program(&clique(2), &undirected_cycle(3), ProgramKind::Blp)?;
    println!("{} rows, {} columns", sys.rows().len(), sys.columns());
    if let Some(x) = lp_feasible(&sys)? {
        for v in 0..3 {
            let mu: Vec<String> = vars.vertex_values(&x, v).iter().map(|q| q.to_string()).collect();
            println!("  mu_{v} = ({})", mu.join(", "));
        }
    }
    Ok(())
}
