use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{chain_basis, degree_range, homology, span_homology, HomologyReport};
use crate::lie::{FreeCompleteDgl, LieElement};
use crate::linalg::kernel;
use crate::series::{is_mc, twist};

use super::model::model_of_complex;
use super::simplicial::SimplicialComplex;

/// The localization of L/L^{>N} at an MC element z, presented as the
/// subcomplex of (L, ∂_z) spanned by all positive degrees and by
/// ker ∂_z ∩ L₀. It maps isomorphically onto the quotient by L_{<0} ⊕ M for
/// any complement M of ker ∂_z in L₀.
#[derive(Clone, Debug)]
pub struct Localization {
    pub twisted: FreeCompleteDgl,
    /// Basis per degree, degrees ≥ 0 only.
    pub bases: BTreeMap<i32, Vec<LieElement>>,
}

impl Localization {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.bases.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    /// Basis elements whose ∂_z∂_z does not vanish.
    pub fn d_squared_failures(&self) -> Vec<LieElement> {
        self.bases
            .values()
            .flatten()
            .filter(|b| !self.twisted.d(&self.twisted.d(b)).is_zero())
            .cloned()
            .collect()
    }

    /// Elements of the localization ∂_z maps outside it.
    pub fn closure_failures(&self) -> Vec<LieElement> {
        self.bases
            .get(&0)
            .into_iter()
            .flatten()
            .filter(|b| !self.twisted.d(b).is_zero())
            .cloned()
            .collect()
    }

    pub fn homology(&self) -> HomologyReport {
        let hi = self.bases.keys().max().copied().unwrap_or(-1);
        span_homology(&self.twisted, &self.bases, true, 0, hi)
    }
}

pub fn localize(dgl: &FreeCompleteDgl, z: &LieElement) -> Result<Localization> {
    if !is_mc(dgl, z)? {
        return Err(Error::Domain(format!("{z} is not a Maurer-Cartan element")));
    }
    let twisted = twist(dgl, z)?;
    let mut bases = BTreeMap::new();
    let hi = degree_range(&twisted).map_or(-1, |r| r.1);
    for d in 0..=hi {
        let basis = chain_basis(&twisted, d);
        let basis = if d == 0 {
            let images: Vec<_> = basis.iter().map(|b| twisted.d(b).tensor().terms.clone()).collect();
            kernel(&images)
                .into_iter()
                .map(|c| {
                    let mut x = LieElement::zero(twisted.algebra());
                    for (j, s) in &c {
                        x.add_scaled(&basis[*j], s);
                    }
                    x
                })
                .collect()
        } else {
            basis
        };
        bases.insert(d, basis);
    }
    Ok(Localization { twisted, bases })
}

/// Homology dimensions of ℒ(K_a) and ℒ(K), both twisted by the vertex a, in
/// the degrees lo..=hi, where K_a is the component of a.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentCheck {
    pub component: Vec<usize>,
    pub truncation: usize,
    pub component_dims: BTreeMap<i32, usize>,
    pub complex_dims: BTreeMap<i32, usize>,
    pub agree: bool,
}

pub fn component_inclusion_check(
    k: &SimplicialComplex,
    vertex: usize,
    truncation: usize,
    lo: i32,
    hi: i32,
) -> Result<ComponentCheck> {
    let component = k
        .components()
        .into_iter()
        .find(|c| c.contains(&vertex))
        .ok_or_else(|| Error::Domain(format!("no vertex {vertex}")))?;
    let sub = k.induced(&component)?;
    let local = component.iter().position(|&v| v == vertex).unwrap();
    let dims = |c: &SimplicialComplex, v: usize| -> Result<BTreeMap<i32, usize>> {
        let m = model_of_complex(c, truncation)?;
        let t = twist(m.dgl(), &m.vertex(v)?)?;
        let report = homology(&t, lo, hi)?;
        Ok((lo..=hi).map(|d| (d, report.dim(d))).collect())
    };
    let component_dims = dims(&sub, local)?;
    let complex_dims = dims(k, vertex)?;
    Ok(ComponentCheck {
        agree: component_dims == complex_dims,
        component,
        truncation,
        component_dims,
        complex_dims,
    })
}
