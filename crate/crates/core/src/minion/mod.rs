//! Polymorphism minions at bounded arity.

pub mod condition;
pub mod free;
pub mod minionhom;
pub mod selection;
pub mod slice;
pub mod table;
pub mod trash;

pub use condition::{check_condition, is_trivial_condition, parse_condition, satisfies, trivial_witness, Identity, MinorCondition};
pub use free::{free_structure, FreeMinion, FreeStructure};
pub use minionhom::{search_minion_homomorphism, BoundedMinionHom};
pub use selection::{check_chain_selection, refute_chain_selections, ChainOfMinors, SelectionMap, SelectionSearch};
pub use slice::{count_polymorphisms, enumerate_polymorphisms, MinionSlice, Window};
pub use table::{classify_table, minor, Classification, FunctionTable, MinorMap};
pub use trash::{verify_trash_representation, TrashRepresentation};
