//! Every binary polymorphism K3 -> K4 is "one coordinate plus a trash colour".

use pcsplab::minion::{enumerate_polymorphisms, verify_trash_representation};
use pcsplab::structure::generators::clique;
use pcsplab::Budget;

fn main() -> pcsplab::Result<()> {
    let slice = enumerate_polymorphisms(&clique(3), &clique(4), 2, &Budget::default())?;
    let tables = slice.tables(2)?;
    let mut unique = 0;
    for f in tables {
        if let Some(r) = verify_trash_representation(f)? {
            unique += usize::from(r.coordinate_unique);
        }
    }
    println!("{unique} of {} tables have a unique trash form", tables.len());

    let f = &tables[tables.len() / 2];
    let r = verify_trash_representation(f)?.expect("every table has one");
    println!("{f}: trash colour {}, coordinate {}, alpha {:?}", r.trash, r.coordinate, r.alpha);
    Ok(())
}
