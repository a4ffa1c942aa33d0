use crate::error::{Error, Result};
use crate::lie::{Algebra, DglMorphism, FreeCompleteDgl, FreeLieAlgebra, Generator, Letter};
use num_traits::Zero;
use crate::series::twist_unchecked;

use super::model::{model_of_complex, ComplexModel};
use super::simplicial::SimplicialComplex;

/// One elimination of a generator pair (x, y) with ∂₁x = c·y + ….
#[derive(Clone, Debug)]
pub struct Elimination {
    pub removed: String,
    pub solved: String,
}

#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub dgl: FreeCompleteDgl,
    pub eliminations: Vec<Elimination>,
    /// Generators where some quotient map failed to commute with ∂.
    pub chain_map_failures: Vec<String>,
}

/// Quotient of a free DGL by the generators in `kill` (their ideal must be
/// closed under ∂); the result keeps the remaining generators in order.
fn kill_generators(dgl: &FreeCompleteDgl, kill: &[Letter]) -> Result<(FreeCompleteDgl, DglMorphism)> {
    let alg = dgl.algebra();
    let keep: Vec<usize> = (0..alg.rank()).filter(|i| !kill.contains(&(*i as Letter))).collect();
    let gens: Vec<Generator> = keep.iter().map(|&i| alg.generators()[i].clone()).collect();
    let target: Algebra = FreeLieAlgebra::new(gens, alg.truncation())?;
    let mut images = vec![target.zero(); alg.rank()];
    for (j, &i) in keep.iter().enumerate() {
        images[i] = target.gen(j);
    }
    let q = DglMorphism::new(alg.clone(), target.clone(), images)?;
    let diff = keep.iter().map(|&i| q.map(dgl.diff_of(i))).collect();
    Ok((FreeCompleteDgl::new(target, diff)?, q))
}

/// Eliminate x with ∂x = c·y + R: the quotient by the ideal of x and ∂x,
/// presented on the remaining generators, with y ↦ −φ(R)/c.
fn eliminate(
    dgl: &FreeCompleteDgl,
    x: usize,
    y: usize,
) -> Result<(FreeCompleteDgl, DglMorphism)> {
    let alg = dgl.algebra();
    let dx = dgl.diff_of(x);
    let c = dx.coefficient(&[y as Letter]);
    if c.is_zero() {
        return Err(Error::Construction("elimination pivot is zero".into()));
    }
    let mut rest = dx.clone();
    rest.add_scaled(&alg.gen(y), &-c.clone());
    let keep: Vec<usize> = (0..alg.rank()).filter(|&i| i != x && i != y).collect();
    let gens: Vec<Generator> = keep.iter().map(|&i| alg.generators()[i].clone()).collect();
    let target: Algebra = FreeLieAlgebra::new(gens, alg.truncation())?;
    let mut images = vec![target.zero(); alg.rank()];
    for (j, &i) in keep.iter().enumerate() {
        images[i] = target.gen(j);
    }
    let factor = -c.recip();
    // each pass fixes one more word length of φ(y)
    for _ in 0..=alg.truncation() {
        let phi = DglMorphism::new(alg.clone(), target.clone(), images.clone())?;
        let next = phi.map(&rest).scale(&factor);
        if next == images[y] {
            break;
        }
        images[y] = next;
    }
    let phi = DglMorphism::new(alg.clone(), target.clone(), images)?;
    let diff = keep.iter().map(|&i| phi.map(dgl.diff_of(i))).collect();
    Ok((FreeCompleteDgl::new(target, diff)?, phi))
}

fn record_failures(
    phi: &DglMorphism,
    source: &FreeCompleteDgl,
    target: &FreeCompleteDgl,
    out: &mut Vec<String>,
) -> Result<()> {
    for r in phi.chain_map_residues(source, target)? {
        out.push(r.generator);
    }
    Ok(())
}

/// Reduce a free DGL by repeatedly eliminating pairs (x, y) where ∂₁x has a
/// nonzero coefficient c on y, until the linear part of ∂ vanishes. The
/// pairs in `forced` are eliminated first; then x is the lowest-degree
/// generator (first in order) with ∂₁x ≠ 0 and y its first linear term.
pub fn reduce_to_minimal(
    dgl: &FreeCompleteDgl,
    forced: &[(String, String)],
) -> Result<MinimalModel> {
    let mut cur = dgl.clone();
    let mut eliminations = Vec::new();
    let mut failures = Vec::new();
    for (xn, yn) in forced {
        let x = cur.algebra().index_of(xn).ok_or_else(|| Error::Domain(format!("no generator {xn}")))?;
        let y = cur.algebra().index_of(yn).ok_or_else(|| Error::Domain(format!("no generator {yn}")))?;
        let (next, phi) = eliminate(&cur, x, y)?;
        record_failures(&phi, &cur, &next, &mut failures)?;
        eliminations.push(Elimination {
            removed: xn.clone(),
            solved: yn.clone(),
        });
        cur = next;
    }
    loop {
        let alg = cur.algebra().clone();
        let mut order: Vec<usize> = (0..alg.rank()).collect();
        order.sort_by_key(|&i| (alg.generators()[i].degree, i));
        let pick = order.into_iter().find_map(|x| {
            cur.linear_part(x)
                .first()
                .map(|(y, _)| (x, *y))
        });
        let Some((x, y)) = pick else { break };
        let (next, phi) = eliminate(&cur, x, y)?;
        record_failures(&phi, &cur, &next, &mut failures)?;
        eliminations.push(Elimination {
            removed: alg.generators()[x].name.clone(),
            solved: alg.generators()[y].name.clone(),
        });
        cur = next;
    }
    Ok(MinimalModel {
        dgl: cur,
        eliminations,
        chain_map_failures: failures,
    })
}

/// Minimal model of (ℒ(K), ∂_{a_b}) for connected K: kill the basepoint,
/// eliminate tree edges against their child vertices (breadth-first tree
/// from the basepoint), then eliminate remaining linear pairs.
pub fn minimal_model(k: &SimplicialComplex, basepoint: usize, truncation: usize) -> Result<MinimalModel> {
    let model = model_of_complex(k, truncation)?;
    minimal_model_of(&model, basepoint)
}

pub fn minimal_model_of(model: &ComplexModel, basepoint: usize) -> Result<MinimalModel> {
    let k = model.complex();
    if !k.is_connected() {
        return Err(Error::Domain(
            "the complex is disconnected; take components() first".into(),
        ));
    }
    if basepoint >= k.vertex_count() {
        return Err(Error::Domain(format!("no vertex {basepoint}")));
    }
    let a = model.vertex(basepoint)?;
    let twisted = twist_unchecked(model.dgl(), &a);
    let base = model.face_index(&[basepoint]).unwrap() as Letter;
    let (quotient, q) = kill_generators(&twisted, &[base])?;
    let mut failures = Vec::new();
    record_failures(&q, &twisted, &quotient, &mut failures)?;
    let alg = model.dgl().algebra();
    let forced: Vec<(String, String)> = k
        .maximal_tree(basepoint)
        .into_iter()
        .map(|(p, c)| {
            let e = if p < c { [p, c] } else { [c, p] };
            let ei = model.face_index(&e).unwrap() as Letter;
            let ci = model.face_index(&[c]).unwrap() as Letter;
            (alg.name_of(ei).to_string(), alg.name_of(ci).to_string())
        })
        .collect();
    let mut result = reduce_to_minimal(&quotient, &forced)?;
    failures.append(&mut result.chain_map_failures);
    result.chain_map_failures = failures;
    Ok(result)
}
