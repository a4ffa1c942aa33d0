use crate::error::Result;
use crate::lie::{Letter, LieElement};
use crate::scalar::ratio;
use crate::series::{gauge_unchecked, twist_unchecked};

use super::axioms::CheckItem;
use super::simplex::SimplexModel;

/// A Maurer–Cartan element whose linear part is the barycentre Σaᵢ/(n+1):
/// start at aₙ and gauge successively by a_{rn}/(n+1) for r = 0, …, n−1.
pub fn barycentric_mc(model: &SimplexModel) -> Result<LieElement> {
    let n = model.n();
    let c = ratio(1, n as i64 + 1);
    let mut x = model.vertex(n)?;
    for r in 0..n {
        let edge = model.face(&[r, n])?.scale(&c);
        x = gauge_unchecked(model.dgl(), &edge, &x);
    }
    Ok(x)
}

/// Σaᵢ/(n+1) as a length-one element.
pub fn barycentre(model: &SimplexModel) -> LieElement {
    let c = ratio(1, model.n() as i64 + 1);
    let mut x = model.algebra().zero();
    for v in 0..=model.n() {
        x.add_scaled(&model.vertex(v).unwrap(), &c);
    }
    x
}

/// Generators other than the top cell whose z-twisted differential involves
/// the top cell. (The top cell itself always has [z, top] in its image.)
pub fn twisted_boundary_support(model: &SimplexModel, z: &LieElement) -> CheckItem {
    let twisted = twist_unchecked(model.dgl(), z);
    let top = model.top_index() as Letter;
    let bad = (0..model.top_index())
        .filter(|&i| twisted.diff_of(i).support().contains(&top))
        .map(|i| (model.dgl().generators()[i].name.clone(), twisted.diff_of(i).to_string()))
        .collect();
    CheckItem::new("twisted_boundary_support", bad)
}
