//! Series in the adjoint action: BCH product, e^{ad}, the Bernoulli operator,
//! gauge action, Maurer–Cartan elements and twisted differentials.
//!
//! Every series stops on its own: ad of a nonzero element raises word length,
//! so at most N terms survive in L/L^{>N}.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{dynkin_verify, ensure_same, FreeCompleteDgl, LieElement, TensorElement};
use crate::scalar::{factorial, BernoulliTable, Scalar};

fn require_degree_zero(x: &LieElement, what: &str) -> Result<()> {
    if x.has_degree(0) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} needs a degree-0 element, got degree {:?}",
            x.degree()
        )))
    }
}

fn exp_tensor(x: &TensorElement) -> TensorElement {
    let n = x.algebra().truncation();
    let mut out = TensorElement::one(x.algebra());
    let mut power = TensorElement::one(x.algebra());
    for k in 1..=n {
        power = power.mul(x);
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &inv_factorial(k));
    }
    out
}

// log(1 + z) for z without constant term.
fn log1p_tensor(z: &TensorElement) -> TensorElement {
    let n = z.algebra().truncation();
    let mut out = TensorElement::zero(z.algebra());
    let mut power = TensorElement::one(z.algebra());
    for k in 1..=n {
        power = power.mul(z);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&power, &Scalar::new(sign.into(), (k as i64).into()));
    }
    out
}

/// x * y = log(exp x · exp y) in L/L^{>N}.
pub fn bch(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    ensure_same(x.algebra(), y.algebra())?;
    require_degree_zero(x, "bch")?;
    require_degree_zero(y, "bch")?;
    if x.is_zero() {
        return Ok(y.clone());
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    let mut p = exp_tensor(x.tensor()).mul(&exp_tensor(y.tensor()));
    p.add_scaled(&TensorElement::one(x.algebra()), &-Scalar::one());
    let z = log1p_tensor(&p);
    let report = dynkin_verify(&z);
    if !report.ok {
        return Err(Error::Construction(format!(
            "BCH series failed the Dynkin test at length {}",
            report.defects[0].0
        )));
    }
    Ok(LieElement::from_tensor_unchecked(z))
}

/// x₁ * x₂ * … * x_k, folded from the left. Empty input gives 0 in `alg`.
pub fn bch_many(xs: &[LieElement]) -> Result<LieElement> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::Domain("bch of an empty list".into()))?;
    require_degree_zero(first, "bch")?;
    rest.iter().try_fold(first.clone(), |acc, x| bch(&acc, x))
}

/// Σ_n c_n ad_xⁿ(v) for the coefficient sequence `coef`.
fn ad_series(x: &LieElement, v: &LieElement, coef: impl Fn(usize) -> Scalar) -> LieElement {
    let mut out = v.scale(&coef(0));
    let mut term = v.clone();
    for k in 1..=x.truncation() {
        term = x.br(&term);
        if term.is_zero() {
            break;
        }
        let c = coef(k);
        if !c.is_zero() {
            out.add_scaled(&term, &c);
        }
    }
    out
}

fn inv_factorial(k: usize) -> Scalar {
    Scalar::new(1.into(), factorial(k))
}

/// e^{ad_x}(v) = Σ ad_xⁿ(v)/n!.
pub fn exp_ad(x: &LieElement, v: &LieElement) -> Result<LieElement> {
    ensure_same(x.algebra(), v.algebra())?;
    require_degree_zero(x, "exp_ad")?;
    Ok(ad_series(x, v, inv_factorial))
}

/// ad_x/(e^{ad_x} − 1)(v) = Σ (B_n/n!) ad_xⁿ(v).
pub fn bernoulli_op(x: &LieElement, v: &LieElement) -> Result<LieElement> {
    ensure_same(x.algebra(), v.algebra())?;
    require_degree_zero(x, "bernoulli_op")?;
    let table = BernoulliTable::new(x.truncation());
    Ok(ad_series(x, v, |n| table.scaled(n)))
}

/// (e^{ad_x} − 1)/ad_x (v) = Σ ad_xⁿ(v)/(n+1)!.
pub fn exp_ad_quotient(x: &LieElement, v: &LieElement) -> Result<LieElement> {
    ensure_same(x.algebra(), v.algebra())?;
    require_degree_zero(x, "exp_ad_quotient")?;
    Ok(ad_series(x, v, |n| inv_factorial(n + 1)))
}

/// ∂a + ½[a,a].
pub fn mc_residue(dgl: &FreeCompleteDgl, a: &LieElement) -> Result<LieElement> {
    ensure_same(dgl.algebra(), a.algebra())?;
    if !a.has_degree(-1) {
        return Err(Error::Domain(format!(
            "Maurer-Cartan elements have degree -1, got {:?}",
            a.degree()
        )));
    }
    let mut r = dgl.d(a);
    r.add_scaled(&a.br(a), &Scalar::new(1.into(), 2.into()));
    Ok(r)
}

pub fn is_mc(dgl: &FreeCompleteDgl, a: &LieElement) -> Result<bool> {
    Ok(mc_residue(dgl, a)?.is_zero())
}

fn require_mc(dgl: &FreeCompleteDgl, a: &LieElement) -> Result<()> {
    let r = mc_residue(dgl, a)?;
    if r.is_zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("not a Maurer-Cartan element: residue {r}")))
    }
}

/// x𝒢a = e^{ad_x}(a) − ((e^{ad_x} − 1)/ad_x)(∂x).
pub fn gauge(dgl: &FreeCompleteDgl, x: &LieElement, a: &LieElement) -> Result<LieElement> {
    ensure_same(dgl.algebra(), x.algebra())?;
    require_degree_zero(x, "gauge")?;
    require_mc(dgl, a)?;
    Ok(gauge_unchecked(dgl, x, a))
}

pub(crate) fn gauge_unchecked(dgl: &FreeCompleteDgl, x: &LieElement, a: &LieElement) -> LieElement {
    let e = ad_series(x, a, inv_factorial);
    let dx = dgl.d(x);
    &e - &ad_series(x, &dx, |n| inv_factorial(n + 1))
}

/// The DGL (L, ∂_a) with ∂_a = ∂ + ad_a.
pub fn twist(dgl: &FreeCompleteDgl, a: &LieElement) -> Result<FreeCompleteDgl> {
    require_mc(dgl, a)?;
    Ok(twist_unchecked(dgl, a))
}

pub(crate) fn twist_unchecked(dgl: &FreeCompleteDgl, a: &LieElement) -> FreeCompleteDgl {
    let alg = dgl.algebra().clone();
    let diff = (0..alg.rank())
        .map(|i| dgl.diff_of(i) + &a.br(&alg.gen(i)))
        .collect();
    FreeCompleteDgl::new_unchecked(alg, diff)
}
