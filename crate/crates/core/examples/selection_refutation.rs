//! No single-coordinate selection survives swapping the arguments of a
//! symmetric binary function.

use pcsplab::minion::{check_chain_selection, refute_chain_selections, ChainOfMinors, FunctionTable, MinorMap, SelectionMap};

fn main() -> pcsplab::Result<()> {
    let or = FunctionTable::from_fn(2, 2, 2, |x| x[0] | x[1])?;
    let swap = MinorMap::new(2, vec![1, 0])?;
    let chain = ChainOfMinors::new(or.clone(), vec![swap])?;

    let r = refute_chain_selections(&chain, 1)?;
    println!("d = 1: {} selections tried, witness {:?}", r.examined, r.witness.is_some());
    let r = refute_chain_selections(&chain, 2)?;
    println!("d = 2: {} selections tried, witness {:?}", r.examined, r.witness.is_some());

    let mut sel = SelectionMap::new();
    sel.insert(or, [0]);
    println!("selecting coordinate 0: {}", check_chain_selection(&chain, &sel, 1)?);
    Ok(())
}
