//! Linear relaxations of homomorphism problems: the basic LP, the affine
//! integer program and their combination.

pub mod blp_aip;
pub mod integer;
pub mod numeric;
pub mod program;
pub mod simplex;

pub use blp_aip::{aip_accepts, blp_accepts, blp_aip, round_one_in_three, BlpAipOutcome};
pub use integer::{aip_solve, AipOutcome, IntegerCertificate};
pub use numeric::{Int, Rational};
pub use program::{build_program, integral_point, Bounds, LinearSystem, ProgramKind, ProgramVariables};
pub use simplex::{lp_feasible, max_column, maximize, variable_support, Support};
