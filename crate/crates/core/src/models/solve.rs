use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie::tensor::add_term;
use crate::lie::{lyndon::basis_in, FreeCompleteDgl, Letter, LieElement, TensorElement, Word};
use crate::linalg::{kernel, solve, Echelon, SparseVec};
use crate::scalar::{int, Scalar};

/// How a single word-length stage ∂₁z = r is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageMethod {
    /// Contract the generator complex, lift through the tensor algebra, and
    /// project back with the Dynkin map.
    Homotopy,
    /// Exact linear solve against the Lyndon basis of that length.
    Basis,
}

/// Find β in the subalgebra on `letters`, of degree `degree` and word length
/// at least `min_length`, with D(β) = target modulo L^{>N}.
///
/// Works one word length at a time against the linear part ∂₁ of D. If some
/// stage is blocked by a ∂₁-homology class, one global solve over all lengths
/// (Lyndon basis, leftmost pivots, free variables zero) is tried before
/// reporting failure.
pub fn solve_boundary(
    dgl: &FreeCompleteDgl,
    target: &LieElement,
    letters: &[Letter],
    degree: i32,
    min_length: usize,
) -> Result<LieElement> {
    solve_boundary_with(StageMethod::Homotopy, dgl, target, letters, degree, min_length)
}

pub fn solve_boundary_with(
    method: StageMethod,
    dgl: &FreeCompleteDgl,
    target: &LieElement,
    letters: &[Letter],
    degree: i32,
    min_length: usize,
) -> Result<LieElement> {
    crate::lie::ensure_same(dgl.algebra(), target.algebra())?;
    if target.is_zero() {
        return Ok(target.clone());
    }
    if !target.has_degree(degree - 1) {
        return Err(Error::Domain(format!(
            "target has degree {:?}, expected {}",
            target.degree(),
            degree - 1
        )));
    }
    let mut letters = letters.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let stage = match method {
        StageMethod::Homotopy => Stage::Homotopy(Contraction::new(dgl, &letters)?),
        StageMethod::Basis => Stage::Basis,
    };
    match staged(&stage, dgl, target, &letters, degree, min_length) {
        Ok(b) => Ok(b),
        Err(Error::NoSolution { .. }) => global(dgl, target, &letters, degree, min_length),
        Err(e) => Err(e),
    }
}

enum Stage {
    Homotopy(Contraction),
    Basis,
}

fn staged(
    stage: &Stage,
    dgl: &FreeCompleteDgl,
    target: &LieElement,
    letters: &[Letter],
    degree: i32,
    min_length: usize,
) -> Result<LieElement> {
    let n = dgl.truncation();
    let mut beta = LieElement::zero(dgl.algebra());
    let mut residual = target.clone();
    for k in 1..=n {
        let part = residual.length_part(k);
        if part.is_zero() {
            continue;
        }
        if k < min_length {
            return Err(no_solution(degree, k, &part));
        }
        let z = match stage {
            Stage::Homotopy(c) => c.solve_length(dgl, &part, degree, k)?,
            Stage::Basis => solve_length(dgl, &part, letters, degree, k)?,
        };
        residual = &residual - &dgl.d(&z);
        beta = &beta + &z;
    }
    Ok(beta)
}

fn linear_part(dgl: &FreeCompleteDgl) -> FreeCompleteDgl {
    let linear = dgl.diff_table().iter().map(|d| d.length_part(1)).collect();
    FreeCompleteDgl::new_unchecked(dgl.algebra().clone(), linear)
}

/// Find z of word length exactly k in the subalgebra on `letters` with
/// ∂₁z = rhs, by a linear solve over the Lyndon basis.
pub(crate) fn solve_length(
    dgl: &FreeCompleteDgl,
    rhs: &LieElement,
    letters: &[Letter],
    degree: i32,
    k: usize,
) -> Result<LieElement> {
    let basis = basis_in(dgl.algebra(), letters, Some(degree), k);
    let linear = linear_part(dgl);
    let columns: Vec<SparseVec<Word>> = basis
        .iter()
        .map(|b| linear.d(&b.element).tensor().terms().clone())
        .collect();
    let coeffs = solve(&columns, rhs.tensor().terms()).map_err(|_| no_solution(degree, k, rhs))?;
    let mut z = LieElement::zero(dgl.algebra());
    for (j, c) in &coeffs {
        z.add_scaled(&basis[*j].element, c);
    }
    Ok(z)
}

fn global(
    dgl: &FreeCompleteDgl,
    target: &LieElement,
    letters: &[Letter],
    degree: i32,
    min_length: usize,
) -> Result<LieElement> {
    let n = dgl.truncation();
    let mut basis = Vec::new();
    for k in min_length.max(1)..=n {
        basis.extend(basis_in(dgl.algebra(), letters, Some(degree), k));
    }
    let columns: Vec<SparseVec<Word>> = basis
        .iter()
        .map(|b| dgl.d(&b.element).tensor().terms().clone())
        .collect();
    match solve(&columns, target.tensor().terms()) {
        Ok(coeffs) => {
            let mut z = LieElement::zero(dgl.algebra());
            for (j, c) in &coeffs {
                z.add_scaled(&basis[*j].element, c);
            }
            Ok(z)
        }
        Err(word) => Err(no_solution(degree, word.len(), target)),
    }
}

fn no_solution(degree: i32, length: usize, witness: &LieElement) -> Error {
    Error::NoSolution {
        degree,
        length,
        witness: witness.to_string(),
    }
}

type Combo = Vec<(Letter, Scalar)>;

/// A contraction of the generator complex (span of `letters`, ∂₁): maps h
/// of degree +1 and p = ιπ with ∂₁h + h∂₁ = 1 − p, p projecting onto chosen
/// homology representatives.
///
/// On length-k tensors, H = Σ_j ± p^{⊗(j−1)} ⊗ h ⊗ 1^{⊗(k−j)} satisfies
/// ∂H + H∂ = 1 − p^{⊗k}. For a Lie cycle r with p^{⊗k}(r) = 0 this gives
/// ∂(H r) = r, and since the Dynkin map θ commutes with ∂₁, θ(H r)/k is a
/// Lie solution.
pub(crate) struct Contraction {
    h: BTreeMap<Letter, Combo>,
    p: BTreeMap<Letter, Combo>,
}

impl Contraction {
    pub(crate) fn new(dgl: &FreeCompleteDgl, letters: &[Letter]) -> Result<Self> {
        let alg = dgl.algebra();
        let mut by_degree: BTreeMap<i32, Vec<Letter>> = BTreeMap::new();
        let mut boundary: BTreeMap<Letter, SparseVec<Letter>> = BTreeMap::new();
        for &l in letters {
            by_degree.entry(alg.degree_of(l)).or_default().push(l);
            let v: SparseVec<Letter> = dgl
                .diff_of(l as usize)
                .linear_coefficients()
                .into_iter()
                .map(|(i, c)| (i as Letter, c))
                .collect();
            if let Some(bad) = v.keys().find(|m| letters.binary_search(m).is_err()) {
                return Err(Error::Structural(format!(
                    "the linear differential of {} leaves the subalgebra through {}",
                    alg.name_of(l),
                    alg.name_of(*bad)
                )));
            }
            boundary.insert(l, v);
        }
        // C_d: letters of degree d whose boundaries are independent
        let mut lifts: BTreeMap<i32, Vec<(Letter, SparseVec<Letter>)>> = BTreeMap::new();
        for (&d, ls) in &by_degree {
            let mut ech = Echelon::new();
            for &l in ls {
                if ech.insert(&boundary[&l]) {
                    lifts.entry(d).or_default().push((l, boundary[&l].clone()));
                }
            }
        }
        let mut h = BTreeMap::new();
        let mut p = BTreeMap::new();
        for (&d, ls) in &by_degree {
            let images: Vec<&(Letter, SparseVec<Letter>)> =
                lifts.get(&(d + 1)).map(|v| v.iter().collect()).unwrap_or_default();
            let mut span: Echelon<Letter> = Echelon::new();
            for (_, b) in &images {
                span.insert(b);
            }
            let columns: Vec<SparseVec<Letter>> = ls.iter().map(|l| boundary[l].clone()).collect();
            let mut homology: Vec<SparseVec<Letter>> = Vec::new();
            for z in kernel(&columns) {
                let v: SparseVec<Letter> = z.into_iter().map(|(j, c)| (ls[j], c)).collect();
                if span.insert(&v) {
                    homology.push(v);
                }
            }
            let complement: Vec<Letter> = lifts.get(&d).map(|v| v.iter().map(|x| x.0).collect()).unwrap_or_default();
            let mut basis: Vec<SparseVec<Letter>> = images.iter().map(|(_, b)| b.clone()).collect();
            basis.extend(homology.iter().cloned());
            basis.extend(complement.iter().map(|&c| {
                let mut e = SparseVec::new();
                e.insert(c, Scalar::one());
                e
            }));
            debug_assert_eq!(basis.len(), ls.len());
            let nb = images.len();
            let nh = homology.len();
            for &l in ls {
                let mut e = SparseVec::new();
                e.insert(l, Scalar::one());
                let coords = solve(&basis, &e).map_err(|_| {
                    Error::Construction("generator complex decomposition failed".into())
                })?;
                let mut hl: SparseVec<Letter> = SparseVec::new();
                let mut pl: SparseVec<Letter> = SparseVec::new();
                for (i, c) in coords {
                    if i < nb {
                        add_term(&mut hl, images[i].0, c);
                    } else if i < nb + nh {
                        for (m, v) in &homology[i - nb] {
                            add_term(&mut pl, *m, &c * v);
                        }
                    }
                }
                h.insert(l, hl.into_iter().collect());
                p.insert(l, pl.into_iter().collect());
            }
        }
        Ok(Contraction { h, p })
    }

    fn apply(&self, t: &TensorElement, degrees: &dyn Fn(Letter) -> i32) -> (TensorElement, TensorElement) {
        let mut lift = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (w, c) in t.terms() {
            let letters = w.letters();
            // prefixes of p-images, with the Koszul sign of h passing them
            let mut prefixes: Vec<(Vec<Letter>, Scalar)> = vec![(Vec::new(), c.clone())];
            let mut prefix_deg = 0;
            for (j, &l) in letters.iter().enumerate() {
                let sign = if prefix_deg % 2 == 0 { int(1) } else { int(-1) };
                for (hm, hc) in &self.h[&l] {
                    for (pre, pc) in &prefixes {
                        let mut nw = pre.clone();
                        nw.push(*hm);
                        nw.extend_from_slice(&letters[j + 1..]);
                        add_term(&mut lift, Word::from_letters(&nw), pc * hc * &sign);
                    }
                }
                let mut next = Vec::new();
                for (pm, pcoef) in &self.p[&l] {
                    for (pre, pc) in &prefixes {
                        let mut nw = pre.clone();
                        nw.push(*pm);
                        next.push((nw, pc * pcoef));
                    }
                }
                prefixes = next;
                if prefixes.is_empty() {
                    break;
                }
                prefix_deg += degrees(l);
            }
            for (pre, pc) in prefixes {
                add_term(&mut proj, Word::from_letters(&pre), pc);
            }
        }
        (
            TensorElement::from_terms(t.algebra(), lift),
            TensorElement::from_terms(t.algebra(), proj),
        )
    }

    /// z of length k with ∂₁z = rhs, or a no-solution error if rhs has a
    /// nonzero homology component.
    pub(crate) fn solve_length(
        &self,
        dgl: &FreeCompleteDgl,
        rhs: &LieElement,
        degree: i32,
        k: usize,
    ) -> Result<LieElement> {
        let alg = dgl.algebra().clone();
        if let Some(bad) = rhs.support().iter().find(|l| !self.h.contains_key(l)) {
            return Err(Error::Domain(format!(
                "right-hand side involves {}, outside the subalgebra",
                alg.name_of(*bad)
            )));
        }
        let (lift, proj) = self.apply(rhs.tensor(), &|l| alg.degree_of(l));
        if !proj.is_zero() {
            return Err(no_solution(degree, k, rhs));
        }
        let z = LieElement::from_tensor_unchecked(
            lift.dynkin().scale(&Scalar::new(1.into(), (k as i64).into())),
        );
        let check = linear_part(dgl).d(&z);
        if &check != rhs {
            return Err(Error::Construction(format!(
                "stage solve at length {k} did not reproduce its right-hand side (not a cycle?)"
            )));
        }
        debug_assert!(!z.is_zero() || rhs.is_zero());
        Ok(z)
    }
}
