//! Finite simplicial complexes and their free complete DGL models.

mod localize;
mod minimal;
mod model;
mod simplicial;

pub use localize::{component_inclusion_check, localize, ComponentCheck, Localization};
pub use minimal::{minimal_model, minimal_model_of, reduce_to_minimal, Elimination, MinimalModel};
pub use model::{model_of_complex, model_of_complex_with, ComplexModel};
pub use simplicial::{parse_complex, SimplicialComplex};
