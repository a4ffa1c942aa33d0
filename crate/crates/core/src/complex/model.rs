use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lie::{FreeCompleteDgl, Letter, LieElement};
use crate::models::{build_family, complex_from_family, face_index, Face, Flavor};

use super::simplicial::SimplicialComplex;

/// ℒ(K): one generator a_F of degree dim F − 1 per face, each face carrying
/// a copy of the simplex model of its dimension.
#[derive(Clone, Debug)]
pub struct ComplexModel {
    pub(crate) complex: SimplicialComplex,
    pub(crate) index: BTreeMap<Face, usize>,
    pub(crate) dgl: FreeCompleteDgl,
}

impl ComplexModel {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dgl(&self) -> &FreeCompleteDgl {
        &self.dgl
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn face(&self, face: &[usize]) -> Result<LieElement> {
        self.face_index(face)
            .map(|i| self.dgl.gen(i))
            .ok_or_else(|| Error::Domain(format!("{face:?} is not a face of the complex")))
    }

    pub fn vertex(&self, v: usize) -> Result<LieElement> {
        self.face(&[v])
    }

    pub fn letters_on(&self, vertices: &[usize]) -> Vec<Letter> {
        self.complex
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.iter().all(|v| vertices.contains(v)))
            .map(|(i, _)| i as Letter)
            .collect()
    }
}

/// ℒ(K) at truncation N, with faces modelled by the default (seed) family.
pub fn model_of_complex(k: &SimplicialComplex, truncation: usize) -> Result<ComplexModel> {
    model_of_complex_with(k, truncation, Flavor::Seed)
}

pub fn model_of_complex_with(
    k: &SimplicialComplex,
    truncation: usize,
    flavor: Flavor,
) -> Result<ComplexModel> {
    let family = build_family(k.dimension(), truncation, flavor)?;
    let faces = k.faces().to_vec();
    let dgl = complex_from_family(&faces, k.wide_names(), truncation, &family)?;
    Ok(ComplexModel {
        complex: k.clone(),
        dgl,
        index: face_index(&faces),
    })
}
