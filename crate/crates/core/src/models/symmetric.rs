use crate::error::{Error, Result};
use crate::lie::{FreeCompleteDgl, Letter, LieElement};
use crate::scalar::{factorial, int, Scalar};

use super::explicit::{ls_interval, point_model};
use super::simplex::{assemble, Face, Flavor, SimplexModel};
use super::solve::Contraction;

/// All permutations of 0..k in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Sign of the permutation that sorts `seq` (distinct entries).
pub fn sort_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The action of a vertex permutation on a model of Δⁿ:
/// σ·a_F = ε·a_{sorted σ(F)} with ε the sign of the sort.
pub fn permute(model: &SimplexModel, sigma: &[usize], x: &LieElement) -> LieElement {
    let map: Vec<Option<(Letter, bool)>> = model
        .faces
        .iter()
        .map(|f| {
            let image: Face = f.iter().map(|&v| sigma[v]).collect();
            let neg = sort_sign(&image) < 0;
            let mut sorted = image;
            sorted.sort_unstable();
            Some((model.index[&sorted] as Letter, neg))
        })
        .collect();
    LieElement::from_tensor_unchecked(x.tensor().relabel(model.algebra(), &map))
}

/// Residues σ(∂g) − ∂(σg) for every adjacent transposition σ = (i, i+1) and
/// generator g, listed as (i, generator name, residue).
pub fn equivariance_residues(model: &SimplexModel) -> Vec<(usize, String, LieElement)> {
    let n = model.n;
    let dgl = model.dgl();
    let mut out = Vec::new();
    for i in 0..n {
        let mut sigma: Vec<usize> = (0..=n).collect();
        sigma.swap(i, i + 1);
        for (j, g) in dgl.generators().iter().enumerate() {
            let lhs = permute(model, &sigma, dgl.diff_of(j));
            let rhs = dgl.d(&permute(model, &sigma, &dgl.gen(j)));
            let r = &lhs - &rhs;
            if !r.is_zero() {
                out.push((i, g.name.clone(), r));
            }
        }
    }
    out
}

/// Project onto elements x with σ·x = sign(σ)·x for all σ.
fn antisymmetrize(model: &SimplexModel, perms: &[Vec<usize>], x: &LieElement) -> LieElement {
    let mut acc = LieElement::zero(model.algebra());
    for sigma in perms {
        acc.add_scaled(&permute(model, sigma, x), &int(sort_sign(sigma)));
    }
    acc.scale(&Scalar::new(1.into(), factorial(perms[0].len())))
}

/// The symmetric family ℒ₀ … ℒ_max_n.
pub fn symmetric_family(max_n: usize, truncation: usize) -> Result<Vec<SimplexModel>> {
    let mut family = vec![point_model(truncation)?];
    if max_n >= 1 {
        family.push(ls_interval(truncation)?);
    }
    for n in 2..=max_n {
        let m = symmetric_step(&family, n)?;
        family.push(m);
    }
    for m in &mut family {
        m.flavor = Flavor::Symmetric;
    }
    Ok(family)
}

pub fn build_symmetric_model(n: usize, truncation: usize) -> Result<SimplexModel> {
    Ok(symmetric_family(n, truncation)?.pop().unwrap())
}

// ∂x = Σ_q ∂_q x with ∂₁x the chain differential and, for q ≥ 2, ∂_q x an
// antisymmetrized solution of ∂₁(∂_q x) = −Σ_{i=2}^{q} ∂_i ∂_{q+1−i} x.
fn symmetric_step(family: &[SimplexModel], n: usize) -> Result<SimplexModel> {
    let truncation = family[0].truncation();
    let perms = permutations(n + 1);
    assemble(n, truncation, Flavor::Symmetric, family, |m| {
        let top = m.top_index();
        let all: Vec<Letter> = (0..=top as Letter).collect();
        let mut dx = m.chain_differential(&m.faces[top]);
        let contraction = {
            let mut diff = m.dgl.diff_table().to_vec();
            diff[top] = dx.clone();
            Contraction::new(&FreeCompleteDgl::new_unchecked(m.algebra().clone(), diff), &all)?
        };
        for q in 2..=truncation {
            let mut diff = m.dgl.diff_table().to_vec();
            diff[top] = dx.clone();
            let partial = FreeCompleteDgl::new_unchecked(m.algebra().clone(), diff);
            let rhs = -partial.d(&dx).length_part(q);
            if rhs.is_zero() {
                continue;
            }
            let omega = contraction.solve_length(&partial, &rhs, n as i32 - 2, q).map_err(|e| {
                Error::Construction(format!(
                    "symmetric solve in dimension {n}, length {q} failed: {e}"
                ))
            })?;
            let omega = antisymmetrize(m, &perms, &omega);
            dx = &dx + &omega;
        }
        Ok(dx)
    })
}
