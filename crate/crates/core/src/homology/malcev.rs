use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{model_of_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lie::lyndon::{decompose, standard_split};
use crate::lie::{FreeCompleteDgl, FreeLieAlgebra, Generator, Letter, LieElement, Word};
use crate::linalg::{QuotientBasis, SparseVec};
use crate::scalar::{format_scalar, int, ratio, Scalar};
use crate::series::{bch, twist};

use super::{coords, homology, HomologyEntry};

/// H₀ of a nilpotent quotient with the group law given by BCH.
#[derive(Clone, Debug)]
pub struct MalcevQuotient {
    pub truncation: usize,
    pub basis: Vec<LieElement>,
    /// table[i][j] = coordinates of bch(basis[i], basis[j]).
    pub table: Vec<Vec<Vec<Scalar>>>,
    /// brackets[i][j] = coordinates of [basis[i], basis[j]].
    pub brackets: Vec<Vec<Vec<Scalar>>>,
    // universal BCH series in the Lyndon basis on two letters
    series: Vec<(Vec<Letter>, Scalar)>,
    dgl: FreeCompleteDgl,
    quotient: QuotientBasis<Word>,
}

impl MalcevQuotient {
    pub fn new(dgl: &FreeCompleteDgl) -> Result<Self> {
        let report = homology(dgl, 0, 0)?;
        Self::from_entry(dgl, &report.entries[0])
    }

    /// From an already computed degree-0 homology entry of `dgl`.
    pub fn from_entry(dgl: &FreeCompleteDgl, entry: &HomologyEntry) -> Result<Self> {
        if entry.degree != 0 {
            return Err(Error::Config("π₁ lives in degree 0".into()));
        }
        let basis = entry.representatives.clone();
        let reps: Vec<SparseVec<Word>> = basis.iter().map(coords).collect();
        let quotient = QuotientBasis::new(&entry.boundary_span, &reps)
            .ok_or_else(|| Error::Structural("homology representatives are dependent".into()))?;
        let mut q = MalcevQuotient {
            truncation: dgl.truncation(),
            basis,
            table: Vec::new(),
            brackets: Vec::new(),
            series: universal_bch(dgl.truncation())?,
            dgl: dgl.clone(),
            quotient,
        };
        let k = q.dim();
        let mut table = vec![vec![Vec::new(); k]; k];
        let mut brackets = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                // cycles are closed under brackets, so no cycle check here
                table[i][j] = q.class_of(&bch(&q.basis[i], &q.basis[j])?)?;
                brackets[i][j] = q.class_of(&q.basis[i].bracket(&q.basis[j])?)?;
            }
        }
        q.table = table;
        q.brackets = brackets;
        Ok(q)
    }

    /// The bracket on H₀ through the structure constants.
    pub fn bracket_coords(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// The BCH product evaluated on H₀ through the structure constants.
    pub fn product_coords(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut memo: HashMap<Vec<Letter>, Vec<Scalar>> = HashMap::new();
        memo.insert(vec![0], u.to_vec());
        memo.insert(vec![1], v.to_vec());
        let mut out = vec![Scalar::zero(); self.dim()];
        for (w, c) in &self.series {
            let e = self.eval_word(w, &mut memo);
            for (o, x) in out.iter_mut().zip(&e) {
                *o += c * x;
            }
        }
        out
    }

    fn eval_word(&self, w: &[Letter], memo: &mut HashMap<Vec<Letter>, Vec<Scalar>>) -> Vec<Scalar> {
        if let Some(e) = memo.get(w) {
            return e.clone();
        }
        let k = standard_split(w);
        let a = self.eval_word(&w[..k], memo);
        let b = self.eval_word(&w[k..], memo);
        let e = self.bracket_coords(&a, &b);
        memo.insert(w.to_vec(), e.clone());
        e
    }

    /// Basis pairs where the tensor-level BCH and the structure-constant
    /// evaluation disagree.
    pub fn table_mismatches(&self) -> Vec<(usize, usize)> {
        let k = self.dim();
        let mut bad = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if self.product_coords(&unit(k, i), &unit(k, j)) != self.table[i][j] {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dgl(&self) -> &FreeCompleteDgl {
        &self.dgl
    }

    pub fn element(&self, c: &[Scalar]) -> LieElement {
        let mut x = LieElement::zero(self.dgl.algebra());
        for (ci, b) in c.iter().zip(&self.basis) {
            x.add_scaled(b, ci);
        }
        x
    }

    /// Coordinates of the class of a degree-0 cycle.
    pub fn coordinates(&self, x: &LieElement) -> Result<Vec<Scalar>> {
        if !x.is_zero() && !x.has_degree(0) {
            return Err(Error::Domain("H₀ classes have degree 0".into()));
        }
        if !self.dgl.d(x).is_zero() {
            return Err(Error::Domain(format!("{x} is not a cycle")));
        }
        self.class_of(x)
    }

    fn class_of(&self, x: &LieElement) -> Result<Vec<Scalar>> {
        self.quotient
            .coordinates(&coords(x))
            .ok_or_else(|| Error::Structural(format!("{x} is a cycle outside the computed homology")))
    }

    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coordinates(&bch(&self.element(u), &self.element(v))?)
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coordinates(&self.element(u).bracket(&self.element(v))?)
    }

    pub fn inverse(&self, u: &[Scalar]) -> Vec<Scalar> {
        u.iter().map(|c| -c.clone()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().flatten().all(|c| c.is_zero())
    }

    /// Unit vectors followed by two fixed dense combinations.
    pub fn sample_elements(&self) -> Vec<Vec<Scalar>> {
        let k = self.dim();
        let mut out: Vec<Vec<Scalar>> = (0..k).map(|i| unit(k, i)).collect();
        if k > 0 {
            out.push((0..k).map(|i| int(1 + i as i64)).collect());
            out.push(
                (0..k)
                    .map(|i| ratio(if i % 2 == 0 { 1 } else { -1 }, i as i64 + 2))
                    .collect(),
            );
        }
        out
    }

    /// Triples (u, v, w) from `samples` with (uv)w ≠ u(vw).
    pub fn associativity_failures(&self, samples: &[Vec<Scalar>]) -> Result<Vec<(usize, usize, usize)>> {
        let mut bad = Vec::new();
        for (i, u) in samples.iter().enumerate() {
            for (j, v) in samples.iter().enumerate() {
                let uv = self.product_coords(u, v);
                for (l, w) in samples.iter().enumerate() {
                    let left = self.product_coords(&uv, w);
                    let right = self.product_coords(u, &self.product_coords(v, w));
                    if left != right {
                        bad.push((i, j, l));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Samples u with u·u⁻¹ ≠ 0 or u⁻¹·u ≠ 0.
    pub fn inverse_failures(&self, samples: &[Vec<Scalar>]) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (i, u) in samples.iter().enumerate() {
            let inv = self.inverse(u);
            let a = self.product_coords(u, &inv);
            let b = self.product_coords(&inv, u);
            if a.iter().chain(&b).any(|c| !c.is_zero()) {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    pub fn summary(&self) -> MalcevSummary {
        MalcevSummary {
            truncation: self.truncation,
            dim: self.dim(),
            basis: self.basis.iter().map(|b| b.to_string()).collect(),
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| c.iter().map(format_scalar).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// log(e^X e^Y) on two degree-0 letters, as (Lyndon word, coefficient).
fn universal_bch(truncation: usize) -> Result<Vec<(Vec<Letter>, Scalar)>> {
    let alg = FreeLieAlgebra::new(
        vec![Generator::new("X", 0), Generator::new("Y", 0)],
        truncation,
    )?;
    let z = bch(&alg.gen(0), &alg.gen(1))?;
    Ok(decompose(&z)?
        .into_iter()
        .map(|(w, _, c)| (w.letters().to_vec(), c))
        .collect())
}

fn unit(k: usize, i: usize) -> Vec<Scalar> {
    (0..k).map(|j| int((i == j) as i64)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MalcevSummary {
    pub truncation: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug)]
pub struct MalcevTower {
    pub levels: Vec<MalcevQuotient>,
    /// dim H₀ at level N minus dim at level N−1.
    pub layer_dims: Vec<usize>,
    /// Whether level N maps onto level N−1 (entry 0 refers to level 1 → 0).
    pub surjective: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerSummary {
    pub layer_dims: Vec<usize>,
    pub surjective: Vec<bool>,
    pub levels: Vec<MalcevSummary>,
}

impl MalcevTower {
    pub fn summary(&self) -> TowerSummary {
        TowerSummary {
            layer_dims: self.layer_dims.clone(),
            surjective: self.surjective.clone(),
            levels: self.levels.iter().map(|l| l.summary()).collect(),
        }
    }
}

/// H₀(ℒ(K)/L^{>N}, ∂_a) for N = 1..=n_max, a the basepoint vertex.
pub fn malcev_tower(k: &SimplicialComplex, basepoint: usize, n_max: usize) -> Result<MalcevTower> {
    if !k.is_connected() {
        return Err(Error::Domain(
            "the Malcev tower needs a connected complex; take components() first".into(),
        ));
    }
    if n_max == 0 {
        return Err(Error::Config("the tower needs N ≥ 1".into()));
    }
    let model = model_of_complex(k, n_max)?;
    let twisted = twist(model.dgl(), &model.vertex(basepoint)?)?;
    let mut levels: Vec<MalcevQuotient> = Vec::new();
    let mut layer_dims = Vec::new();
    let mut surjective = Vec::new();
    for n in 1..=n_max {
        let level = MalcevQuotient::new(&twisted.truncate(n)?)?;
        let prev_dim = levels.last().map_or(0, |p| p.dim());
        layer_dims.push(level.dim().saturating_sub(prev_dim));
        surjective.push(match levels.last() {
            None => true,
            Some(prev) => projects_onto(&level, prev)?,
        });
        levels.push(level);
    }
    Ok(MalcevTower {
        levels,
        layer_dims,
        surjective,
    })
}

fn projects_onto(upper: &MalcevQuotient, lower: &MalcevQuotient) -> Result<bool> {
    let images = upper
        .basis
        .iter()
        .map(|b| {
            let x = b.truncate(lower.truncation)?;
            lower.coordinates(&x)
        })
        .collect::<Result<Vec<_>>>()?;
    let vectors: Vec<SparseVec<usize>> = images
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        })
        .collect();
    Ok(crate::linalg::rank(&vectors) == lower.dim())
}
