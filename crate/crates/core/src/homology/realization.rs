use crate::error::{Error, Result};
use crate::lie::{D2Residue, DglMorphism, FreeCompleteDgl, LieElement};
use crate::models::SimplexModel;
use crate::series::{gauge, is_mc};

/// Residues φ∂ − ∂φ of the map ℒₙ → L sending the i-th face generator to
/// `assignment[i]` (faces in the model's order).
pub fn simplex_residues(
    model: &SimplexModel,
    target: &FreeCompleteDgl,
    assignment: &[LieElement],
) -> Result<Vec<D2Residue>> {
    if model.truncation() < target.truncation() {
        return Err(Error::Config(format!(
            "the simplex model is truncated at {} but the target at {}",
            model.truncation(),
            target.truncation()
        )));
    }
    if assignment.len() != model.faces().len() {
        return Err(Error::Domain(format!(
            "an {}-simplex needs {} images, got {}",
            model.n(),
            model.faces().len(),
            assignment.len()
        )));
    }
    let phi = DglMorphism::new(
        model.algebra().clone(),
        target.algebra().clone(),
        assignment.to_vec(),
    )?;
    phi.chain_map_residues(model.dgl(), target)
}

/// Whether the assignment defines an n-simplex of the realization, i.e. a
/// DGL map ℒₙ → L modulo L^{>N}.
pub fn verify_simplex(
    model: &SimplexModel,
    target: &FreeCompleteDgl,
    assignment: &[LieElement],
) -> Result<bool> {
    Ok(simplex_residues(model, target, assignment)?.is_empty())
}

/// Checks that x carries the MC element a to b under the gauge action.
pub fn gauge_equivalent_certificate(
    dgl: &FreeCompleteDgl,
    a: &LieElement,
    b: &LieElement,
    x: &LieElement,
) -> Result<bool> {
    for (name, z) in [("a", a), ("b", b)] {
        if !is_mc(dgl, z)? {
            return Err(Error::Domain(format!("{name} = {z} is not Maurer-Cartan")));
        }
    }
    Ok(&gauge(dgl, x, a)? == b)
}
