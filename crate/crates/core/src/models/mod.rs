//! The cosimplicial family of simplex models and its checkers.

mod axioms;
mod barycentric;
mod explicit;
mod inductive;
mod simplex;
mod solve;
mod symmetric;

pub use explicit::{
    bch_transgression, ls_interval, ls_interval_alternate, point_model, subdivision_morphism,
    tetra_model, triangle_model,
};
pub use simplex::{chain_boundary, face_name, parse_face_name, simplex_faces, Face, Flavor, SimplexModel};
pub(crate) use simplex::face_index;
pub(crate) use explicit::complex_from_family;
pub use inductive::{build_family, build_model};
pub use solve::{solve_boundary, solve_boundary_with, StageMethod};
pub use symmetric::{
    build_symmetric_model, equivariance_residues, permutations, permute, sort_sign,
    symmetric_family,
};
pub use axioms::{
    check_cosimplicial_identities, check_model_axioms, codegeneracy, coface, inductive_property,
    restrict_to_face, CheckItem, CheckReport,
};
pub use barycentric::{barycentre, barycentric_mc, twisted_boundary_support};
