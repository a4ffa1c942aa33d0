use crate::error::{Error, Result};
use crate::lie::FreeCompleteDgl;

use super::{homology, HomologyEntry, MalcevQuotient};

/// πₙ of the realization of L/L^{>N}.
#[derive(Clone, Debug)]
pub enum PiGroup {
    /// π₁: H₀ with the BCH group law.
    Fundamental(MalcevQuotient),
    /// πₙ for n ≥ 2: the rational vector space H_{n−1}.
    Higher(HomologyEntry),
}

impl PiGroup {
    pub fn dim(&self) -> usize {
        match self {
            PiGroup::Fundamental(q) => q.dim(),
            PiGroup::Higher(e) => e.dim,
        }
    }
}

/// πₙ⟨L⟩ ≅ H_{n−1}(L) for non-negatively graded L, computed on L/L^{>N}.
pub fn pi_n(dgl: &FreeCompleteDgl, n: usize) -> Result<PiGroup> {
    if n == 0 {
        return Err(Error::Config("π₀ is the set of gauge classes of MC elements; use gauge_equivalent_certificate".into()));
    }
    if let Some(g) = dgl.generators().iter().find(|g| g.degree < 0) {
        return Err(Error::Domain(format!(
            "generator {} has negative degree; πₙ needs L = L_{{≥0}}",
            g.name
        )));
    }
    if n == 1 {
        return Ok(PiGroup::Fundamental(MalcevQuotient::new(dgl)?));
    }
    let d = n as i32 - 1;
    let mut report = homology(dgl, d, d)?;
    Ok(PiGroup::Higher(report.entries.remove(0)))
}
