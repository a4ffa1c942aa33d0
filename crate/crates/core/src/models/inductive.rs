use crate::error::{Error, Result};
use crate::lie::Letter;
use crate::scalar::int;
use crate::series::twist_unchecked;

use super::explicit::{ls_interval, point_model, tetra_over, triangle_over};
use super::simplex::{assemble, Flavor, SimplexModel};
use super::solve::solve_boundary;
use super::symmetric::symmetric_family;

/// Models of Δ⁰ … Δ^max_n of one flavor, all at the same truncation.
pub fn build_family(max_n: usize, truncation: usize, flavor: Flavor) -> Result<Vec<SimplexModel>> {
    if flavor == Flavor::Symmetric {
        return symmetric_family(max_n, truncation);
    }
    if flavor == Flavor::External {
        return Err(Error::Config("external models are loaded, not built".into()));
    }
    let mut family = vec![point_model(truncation)?];
    if max_n >= 1 {
        family.push(ls_interval(truncation)?);
    }
    for n in 2..=max_n {
        let next = match (flavor, n) {
            (Flavor::Seed, 2) => triangle_over(&family, flavor)?,
            (Flavor::Seed, 3) => tetra_over(&family, flavor)?,
            (_, 2) => complete_triangle(&family, flavor)?,
            _ => horn_step(&family, n, flavor)?,
        };
        family.push(next);
    }
    for m in &mut family {
        m.flavor = flavor;
    }
    Ok(family)
}

/// A model of Δⁿ of the requested flavor.
pub fn build_model(n: usize, truncation: usize, flavor: Flavor) -> Result<SimplexModel> {
    Ok(build_family(n, truncation, flavor)?.pop().unwrap())
}

/// ∂_{a₀}a₀₁₂ = c + z with c = a₁₂ − a₀₂ + a₀₁ and z of length ≥ 2 chosen
/// so that ∂_{a₀}(c + z) = 0 inside the boundary subalgebra.
fn complete_triangle(family: &[SimplexModel], flavor: Flavor) -> Result<SimplexModel> {
    let truncation = family[0].truncation();
    assemble(2, truncation, flavor, family, |m| {
        let a0 = m.vertex(0)?;
        let twisted = twist_unchecked(&m.dgl, &a0);
        let c = m.chain_differential(&[0, 1, 2]);
        let boundary: Vec<Letter> = (0..m.top_index() as Letter).collect();
        let z = solve_boundary(&twisted, &-twisted.d(&c), &boundary, 0, 2)
            .map_err(|e| Error::Construction(format!("triangle completion failed: {e}")))?;
        Ok(&(&c + &z) - &a0.br(&m.dgl.gen(m.top_index())))
    })
}

/// ∂_{a₀}a_{0…n} = (−1)ⁿ(a_{0…n−1} − Γ) with ∂_{a₀}Γ = ∂_{a₀}a_{0…n−1} and Γ
/// in the subalgebra of the horn missing the face opposite vertex n.
fn horn_step(family: &[SimplexModel], n: usize, flavor: Flavor) -> Result<SimplexModel> {
    let truncation = family[0].truncation();
    assemble(n, truncation, flavor, family, |m| {
        let a0 = m.vertex(0)?;
        let twisted = twist_unchecked(&m.dgl, &a0);
        let back: Vec<usize> = (0..n).collect();
        let back_gen = m.face(&back)?;
        let back_index = m.face_index(&back).unwrap() as Letter;
        let target = twisted.d(&back_gen);
        if target.support().contains(&back_index) {
            return Err(Error::Construction(format!(
                "the model of dimension {} is not inductive: its a0-twisted top differential involves the top cell",
                n - 1
            )));
        }
        let horn: Vec<Letter> = (0..m.top_index() as Letter)
            .filter(|&l| l != back_index)
            .collect();
        let gamma = solve_boundary(&twisted, &target, &horn, n as i32 - 2, 1).map_err(|e| {
            Error::Construction(format!("horn filler in dimension {n} failed: {e}"))
        })?;
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let top_twisted = (&back_gen - &gamma).scale(&sign);
        Ok(&top_twisted - &a0.br(&m.dgl.gen(m.top_index())))
    })
}
