//! Exact homology of nilpotent quotients L/L^{>N} and the invariants built
//! on it.

mod malcev;
mod pi;
mod realization;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::lie::{lyndon_basis, FreeCompleteDgl, LieElement, TensorElement, Word};
use crate::linalg::{kernel, rank, Echelon, SparseVec};
use crate::models::{permutations, permute, SimplexModel};
use crate::scalar::{factorial, Scalar};

pub use malcev::{malcev_tower, MalcevQuotient, MalcevTower};
pub use pi::{pi_n, PiGroup};
pub use realization::{gauge_equivalent_certificate, simplex_residues, verify_simplex};

/// Homology in one degree.
#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub degree: i32,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub dim: usize,
    /// Cycles whose classes form a basis of H.
    pub representatives: Vec<LieElement>,
    pub(crate) boundary_span: Vec<SparseVec<Word>>,
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub truncation: usize,
    pub entries: Vec<HomologyEntry>,
    /// Whether the ranks from equation-side and column-side elimination
    /// agreed everywhere.
    pub consistent: bool,
}

impl HomologyReport {
    pub fn entry(&self, degree: i32) -> Option<&HomologyEntry> {
        self.entries.iter().find(|e| e.degree == degree)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.entry(degree).map_or(0, |e| e.dim)
    }

    /// Nonzero dimensions keyed by degree.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.entries
            .iter()
            .filter(|e| e.dim > 0)
            .map(|e| (e.degree, e.dim))
            .collect()
    }

    pub fn to_summary(&self) -> HomologySummary {
        HomologySummary {
            truncation: self.truncation,
            consistent: self.consistent,
            degrees: self
                .entries
                .iter()
                .map(|e| DegreeSummary {
                    degree: e.degree,
                    chains: e.chains,
                    cycles: e.cycles,
                    boundaries: e.boundaries,
                    dim: e.dim,
                    representatives: e.representatives.iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSummary {
    pub degree: i32,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub dim: usize,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySummary {
    pub truncation: usize,
    pub consistent: bool,
    pub degrees: Vec<DegreeSummary>,
}

pub(crate) fn coords(x: &LieElement) -> SparseVec<Word> {
    x.tensor().terms.clone()
}

fn from_coords(dgl: &FreeCompleteDgl, v: &SparseVec<Word>) -> LieElement {
    LieElement::from_tensor_unchecked(TensorElement::from_terms(dgl.algebra(), v.clone()))
}

/// Range of degrees occupied by L/L^{>N}.
pub fn degree_range(dgl: &FreeCompleteDgl) -> Option<(i32, i32)> {
    let alg = dgl.algebra();
    let degs: Vec<i32> = alg.generators().iter().map(|g| g.degree).collect();
    let lo = *degs.iter().min()?;
    let hi = *degs.iter().max()?;
    let n = alg.truncation() as i32;
    Some((lo.min(lo * n), hi.max(hi * n)))
}

/// Lyndon basis of the degree-`degree` part of L/L^{>N}.
pub fn chain_basis(dgl: &FreeCompleteDgl, degree: i32) -> Vec<LieElement> {
    let alg = dgl.algebra();
    (1..=alg.truncation())
        .flat_map(|len| lyndon_basis(alg, degree, len))
        .map(|b| b.element)
        .collect()
}

/// Homology of (L/L^{>N}, ∂) in the degrees lo..=hi.
pub fn homology(dgl: &FreeCompleteDgl, lo: i32, hi: i32) -> Result<HomologyReport> {
    let spans: BTreeMap<i32, Vec<LieElement>> =
        (lo - 1..=hi + 1).map(|d| (d, chain_basis(dgl, d))).collect();
    Ok(span_homology(dgl, &spans, true, lo, hi))
}

/// Homology in every occupied degree.
pub fn homology_all(dgl: &FreeCompleteDgl) -> Result<HomologyReport> {
    match degree_range(dgl) {
        Some((lo, hi)) => homology(dgl, lo, hi),
        None => Ok(HomologyReport {
            truncation: dgl.truncation(),
            entries: Vec::new(),
            consistent: true,
        }),
    }
}

/// Homology of the generator complex (V, ∂₁).
pub fn linear_homology(dgl: &FreeCompleteDgl) -> Result<HomologyReport> {
    homology_all(&dgl.truncate(1)?)
}

/// Homology of (V, ∂₁) restricted to the vectors fixed by the symmetric
/// group acting on the vertices of the simplex.
pub fn invariant_linear_homology(model: &SimplexModel) -> Result<HomologyReport> {
    let linear = model.dgl().truncate(1)?;
    let alg = linear.algebra().clone();
    let perms = permutations(model.n() + 1);
    let scale = Scalar::from_integer(factorial(model.n() + 1)).recip();
    let mut spans: BTreeMap<i32, Vec<LieElement>> = BTreeMap::new();
    for (i, g) in alg.generators().iter().enumerate() {
        let x = model.dgl().gen(i);
        let mut avg = LieElement::zero(model.algebra());
        for s in &perms {
            avg = &avg + &permute(model, s, &x);
        }
        let avg = avg.scale(&scale).rehome(&alg);
        spans.entry(g.degree).or_default().push(avg);
    }
    let (lo, hi) = degree_range(&linear).unwrap_or((0, -1));
    Ok(span_homology(&linear, &spans, false, lo, hi))
}

/// Homology of the subcomplex spanned in each degree by `spans` (which must
/// be closed under ∂); unless `independent`, spanning sets are first pruned
/// to a basis.
pub(crate) fn span_homology(
    dgl: &FreeCompleteDgl,
    spans: &BTreeMap<i32, Vec<LieElement>>,
    independent: bool,
    lo: i32,
    hi: i32,
) -> HomologyReport {
    let empty = Vec::new();
    let mut consistent = true;
    let mut entries = Vec::new();
    // independent chains and their boundaries, per degree
    let mut cache: BTreeMap<i32, (Vec<LieElement>, Vec<SparseVec<Word>>)> = BTreeMap::new();
    let mut prepare = |d: i32| -> (Vec<LieElement>, Vec<SparseVec<Word>>) {
        cache
            .entry(d)
            .or_insert_with(|| {
                let span = spans.get(&d).unwrap_or(&empty);
                let mut chains: Vec<LieElement> = if independent {
                    span.clone()
                } else {
                    let mut ech = Echelon::new();
                    span.iter().filter(|x| ech.insert(&coords(x))).cloned().collect()
                };
                // pivoting on the last basis elements (long brackets) first
                // keeps fill-in low
                chains.reverse();
                let images = chains.iter().map(|b| coords(&dgl.d(b))).collect();
                (chains, images)
            })
            .clone()
    };
    for d in lo..=hi {
        let (chains, images) = prepare(d);
        let (_, above) = prepare(d + 1);
        let null = kernel(&images);
        let cycles: Vec<LieElement> = null
            .iter()
            .map(|z| {
                let mut v = SparseVec::new();
                for (j, c) in z {
                    crate::linalg::axpy(&mut v, c, &coords(&chains[*j]));
                }
                from_coords(dgl, &v)
            })
            .collect();
        let mut ech = Echelon::new();
        for b in &above {
            ech.insert(b);
        }
        let boundaries = ech.rank();
        let representatives: Vec<LieElement> = cycles
            .iter()
            .filter(|z| ech.insert(&coords(z)))
            .cloned()
            .collect();
        let dim = cycles.len().saturating_sub(boundaries);
        let col_rank = chains.len() - cycles.len();
        consistent &= rank(&images) == col_rank
            && representatives.len() == dim
            && cycles.len() >= boundaries;
        entries.push(HomologyEntry {
            degree: d,
            chains: chains.len(),
            cycles: cycles.len(),
            boundaries,
            dim,
            representatives,
            boundary_span: above,
        });
    }
    HomologyReport {
        truncation: dgl.truncation(),
        entries,
        consistent,
    }
}
