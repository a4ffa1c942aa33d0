//! Exact rational models of simplices and simplicial complexes by free
//! complete differential graded Lie algebras.

pub mod complex;
pub mod error;
pub mod homology;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod scalar;
pub mod series;
pub mod whitney;

pub use error::{Error, Result};
pub use lie::{
    Algebra, FreeCompleteDgl, FreeLieAlgebra, Generator, LieElement, TensorElement,
};
pub use scalar::Scalar;
