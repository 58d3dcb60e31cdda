//! Ground truth for tiny parameters.
//!
//! [`exact_z`] searches 0/1 matrices directly; the hypergraph helpers
//! produce random `(s, lambda)`-linear hypergraphs whose size profiles must
//! satisfy every row the linear programs impose.

mod exact;
mod hypergraph;

pub use exact::{exact_z, ExactSearch, DEFAULT_CELL_GUARD};
pub use hypergraph::{
    check_profile_feasible, deficiency, degree_profile, is_linear, random_linear_hypergraph,
    subsets_of_size, DegreeProfile, Hypergraph,
};
