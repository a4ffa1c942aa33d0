//! Closed-form models of the point, interval, triangle and tetrahedron.

use crate::error::{Error, Result};
use crate::lie::{Algebra, DglMorphism, FreeCompleteDgl, FreeLieAlgebra, Generator, LieElement};
use crate::scalar::{ratio, BernoulliTable, Scalar};
use crate::series::{bch, bch_many, exp_ad, twist_unchecked};

use super::simplex::{assemble, faces_algebra, glue_faces, Face, Flavor, SimplexModel};

/// ℒ₀: one Maurer–Cartan generator.
pub fn point_model(truncation: usize) -> Result<SimplexModel> {
    let alg = FreeLieAlgebra::new(vec![Generator::new("a0", -1)], truncation)?;
    let a = alg.gen(0);
    let d = a.br(&a).scale(&ratio(-1, 2));
    SimplexModel::new(0, Flavor::Seed, FreeCompleteDgl::new(alg, vec![d])?)
}

/// The Lawrence–Sullivan interval:
/// ∂a₀₁ = [a₀₁, a₁] + Σ (B_n/n!) ad_{a₀₁}ⁿ(a₁ − a₀).
pub fn ls_interval(truncation: usize) -> Result<SimplexModel> {
    let point = point_model(truncation)?;
    assemble(1, truncation, Flavor::Seed, &[point], |m| {
        let (a0, a1, x) = (m.dgl.gen(0), m.dgl.gen(1), m.dgl.gen(2));
        let table = BernoulliTable::new(truncation);
        Ok(&x.br(&a1) + &ad_series_with(&x, &(&a1 - &a0), |n| table.scaled(n)))
    })
}

/// The same differential written as
/// ∂a₀₁ = [a₀₁, a₀] + Σ (B_n (−1)ⁿ/n!) ad_{a₀₁}ⁿ(a₁ − a₀).
pub fn ls_interval_alternate(truncation: usize) -> Result<SimplexModel> {
    let point = point_model(truncation)?;
    assemble(1, truncation, Flavor::Seed, &[point], |m| {
        let (a0, a1, x) = (m.dgl.gen(0), m.dgl.gen(1), m.dgl.gen(2));
        let table = BernoulliTable::new(truncation);
        let sign = |n: usize| if n.is_multiple_of(2) { table.scaled(n) } else { -table.scaled(n) };
        Ok(&x.br(&a0) + &ad_series_with(&x, &(&a1 - &a0), sign))
    })
}

fn ad_series_with(x: &LieElement, v: &LieElement, coef: impl Fn(usize) -> Scalar) -> LieElement {
    let mut out = v.scale(&coef(0));
    let mut term = v.clone();
    for k in 1..=x.truncation() {
        term = x.br(&term);
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &coef(k));
    }
    out
}

/// Two LS intervals glued end to end (vertices 0, 1, 2; edges 01, 12) and
/// the morphism γ from ℒ₁ with γ(a₀₁) = a₀₁ * a₁₂.
pub fn subdivision_morphism(
    truncation: usize,
) -> Result<(SimplexModel, FreeCompleteDgl, DglMorphism)> {
    let interval = ls_interval(truncation)?;
    let faces: Vec<Face> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]];
    let target = complex_from_family(&faces, false, truncation, &[point_model(truncation)?, interval.clone()])?;
    let alg = target.algebra();
    let images = vec![
        alg.gen(0),
        alg.gen(2),
        bch(&alg.gen(3), &alg.gen(4))?,
    ];
    let gamma = DglMorphism::new(interval.algebra().clone(), alg.clone(), images)?;
    Ok((interval, target, gamma))
}

/// DGL on a closed list of faces, each a copy of the family's model.
pub(crate) fn complex_from_family(
    faces: &[Face],
    wide: bool,
    truncation: usize,
    family: &[SimplexModel],
) -> Result<FreeCompleteDgl> {
    let alg = faces_algebra(faces, wide, truncation)?;
    let diff = glue_faces(&alg, faces, family)?
        .into_iter()
        .zip(faces)
        .map(|(d, f)| {
            d.ok_or_else(|| Error::Construction(format!("no model for a face of dimension {}", f.len() - 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    FreeCompleteDgl::new(alg, diff)
}

/// The explicit triangle: ∂a₀₁₂ = a₀₁ * a₁₂ * (−a₀₂) − [a₀, a₀₁₂].
pub fn triangle_model(truncation: usize) -> Result<SimplexModel> {
    let family = vec![point_model(truncation)?, ls_interval(truncation)?];
    triangle_over(&family, Flavor::Seed)
}

pub(crate) fn triangle_over(family: &[SimplexModel], flavor: Flavor) -> Result<SimplexModel> {
    let truncation = family[0].truncation();
    assemble(2, truncation, flavor, family, |m| {
        let f = |face: &[usize]| m.face(face);
        let p = bch_many(&[f(&[0, 1])?, f(&[1, 2])?, -f(&[0, 2])?])?;
        Ok(&p - &f(&[0])?.br(&f(&[0, 1, 2])?))
    })
}

/// The element B_{e₁…e_k}: with uᵢ = D eᵢ for the differential D of `dgl`,
/// D(B) = u₁ * … * u_k and the linear part of B is Σ eᵢ.
///
/// Computed in the universal DGL on uᵢ (degree 0) and eᵢ (degree 1) with
/// d eᵢ = uᵢ: if h is the derivation uᵢ ↦ eᵢ, eᵢ ↦ 0 then dh + hd counts
/// word length, so B = Σ_k h(P_k)/k for the length-k parts P_k of the BCH
/// product, pushed forward along uᵢ ↦ D eᵢ, eᵢ ↦ eᵢ.
pub fn bch_transgression(es: &[LieElement], dgl: &FreeCompleteDgl) -> Result<LieElement> {
    if es.is_empty() {
        return Err(Error::Domain("transgression of an empty list".into()));
    }
    for e in es {
        crate::lie::ensure_same(dgl.algebra(), e.algebra())?;
        if !e.has_degree(1) {
            return Err(Error::Domain(format!(
                "transgression inputs have degree 1, got {:?}",
                e.degree()
            )));
        }
    }
    let k = es.len();
    let n = dgl.truncation();
    let mut gens = Vec::with_capacity(2 * k);
    for i in 0..k {
        gens.push(Generator::new(format!("u{i}"), 0));
    }
    for i in 0..k {
        gens.push(Generator::new(format!("e{i}"), 1));
    }
    let univ: Algebra = FreeLieAlgebra::new(gens, n)?;
    let us: Vec<LieElement> = (0..k).map(|i| univ.gen(i)).collect();
    let p = bch_many(&us)?;
    let mut h_images: Vec<LieElement> = (0..k).map(|i| univ.gen(k + i)).collect();
    h_images.extend((0..k).map(|_| univ.zero()));
    let h = crate::lie::Derivation::new(univ.clone(), h_images, 1)?;
    let mut b = univ.zero();
    for len in 1..=n {
        let part = p.length_part(len);
        if part.is_zero() {
            continue;
        }
        b.add_scaled(&h.apply(&part)?, &ratio(1, len as i64));
    }
    let mut images: Vec<LieElement> = es.iter().map(|e| dgl.d(e)).collect();
    images.extend(es.iter().cloned());
    let gamma = DglMorphism::new(univ, dgl.algebra().clone(), images)?;
    gamma.apply(&b)
}

/// The explicit tetrahedron:
/// ∂_{a₀}a₀₁₂₃ = e^{ad a₀₁}(a₁₂₃) − B_{a₀₁₂, a₀₂₃, −a₀₁₃}.
pub fn tetra_model(truncation: usize) -> Result<SimplexModel> {
    let family = vec![
        point_model(truncation)?,
        ls_interval(truncation)?,
        triangle_model(truncation)?,
    ];
    tetra_over(&family, Flavor::Seed)
}

pub(crate) fn tetra_over(family: &[SimplexModel], flavor: Flavor) -> Result<SimplexModel> {
    let truncation = family[0].truncation();
    assemble(3, truncation, flavor, family, |m| {
        let f = |face: &[usize]| m.face(face);
        let a0 = f(&[0])?;
        let twisted = twist_unchecked(&m.dgl, &a0);
        let b = bch_transgression(&[f(&[0, 1, 2])?, f(&[0, 2, 3])?, -f(&[0, 1, 3])?], &twisted)?;
        let e = exp_ad(&f(&[0, 1])?, &f(&[1, 2, 3])?)?;
        Ok(&(&e - &b) - &a0.br(&f(&[0, 1, 2, 3])?))
    })
}
