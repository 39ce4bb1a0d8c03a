//! Instance transformations: gadget replacement and pp-powers, the arc
//! graph and its right adjoint, and the `k`-reduction.

pub mod arc;
pub mod bundle;
pub mod gadget;
pub mod kreduction;
pub mod random;
pub mod unionfind;

pub use arc::{arc_adjunction_sides, arc_graph, arc_graph_right_adjoint};
pub use bundle::{parse_gadget, serialize_gadget};
pub use gadget::{
    adjunction_sides, apply_gadget_replacement, apply_gadget_replacement_traced, check_adjunction,
    identification_plan, pp_power, AdjunctionSides, GadgetData, IdentificationPlan,
};
pub use kreduction::{evaluation_witness, induced_substructure, k_reduction, subsets_up_to, KReduction, KReductionPlan};
pub use unionfind::{quotient, UnionFind};
