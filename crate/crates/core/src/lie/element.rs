use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::{ensure_same, same_algebra, Algebra, Letter, TensorElement, Word};
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// An element of L/L^{>N}, stored as its image in the tensor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement(pub(crate) TensorElement);

/// Per-length outcome of the Dynkin test θ(tₙ) = n·tₙ.
#[derive(Clone, Debug)]
pub struct DynkinReport {
    pub ok: bool,
    /// (length, θ(tₙ) − n·tₙ) for each failing length.
    pub defects: Vec<(usize, TensorElement)>,
}

pub fn dynkin_verify(t: &TensorElement) -> DynkinReport {
    let mut defects = Vec::new();
    let max = t.max_length().unwrap_or(0);
    for n in 1..=max {
        let part = t.length_part(n);
        if part.is_zero() {
            continue;
        }
        let mut defect = part.dynkin();
        defect.add_scaled(&part, &-int(n as i64));
        if !defect.is_zero() {
            defects.push((n, defect));
        }
    }
    if !t.length_part(0).is_zero() {
        defects.push((0, t.length_part(0)));
    }
    DynkinReport {
        ok: defects.is_empty(),
        defects,
    }
}

impl LieElement {
    pub fn zero(alg: &Algebra) -> Self {
        LieElement(TensorElement::zero(alg))
    }

    pub fn generator(alg: &Algebra, i: usize) -> Self {
        LieElement(TensorElement::word(alg, &[i as Letter], Scalar::one()))
    }

    /// Accepts a tensor only if it passes the Dynkin test.
    pub fn from_tensor(t: TensorElement) -> Result<Self> {
        let report = dynkin_verify(&t);
        if report.ok {
            Ok(LieElement(t))
        } else {
            let (n, d) = &report.defects[0];
            Err(Error::Domain(format!(
                "tensor is not a Lie element: Dynkin defect at length {n}: {d}"
            )))
        }
    }

    pub(crate) fn from_tensor_unchecked(t: TensorElement) -> Self {
        LieElement(t)
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.0
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.alg
    }

    pub fn truncation(&self) -> usize {
        self.0.alg.truncation()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Homogeneous degree; `None` for zero (which has every degree) or mixed.
    pub fn degree(&self) -> Option<i32> {
        self.0.degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.degrees().len() <= 1
    }

    pub fn has_degree(&self, d: i32) -> bool {
        self.0.degrees().iter().all(|&x| x == d)
    }

    pub fn min_length(&self) -> Option<usize> {
        self.0.min_length()
    }

    pub fn length_part(&self, k: usize) -> Self {
        LieElement(self.0.length_part(k))
    }

    pub fn degree_part(&self, d: i32) -> Self {
        LieElement(self.0.degree_part(d))
    }

    /// Keep only lengths ≤ m without changing the ambient truncation.
    pub fn drop_above(&self, m: usize) -> Self {
        LieElement(self.0.drop_above(m))
    }

    /// Keep only lengths ≥ m.
    pub fn drop_below(&self, m: usize) -> Self {
        let terms = self
            .0
            .terms
            .iter()
            .filter(|(w, _)| w.len() >= m)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        LieElement(TensorElement {
            alg: self.0.alg.clone(),
            terms,
        })
    }

    /// Image in L/L^{>m}. Refuses to raise the truncation.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        let n = self.truncation();
        if m > n {
            return Err(Error::Config(format!(
                "cannot truncate an element at N={n} to the larger level {m}"
            )));
        }
        if m == n {
            return Ok(self.clone());
        }
        let alg = self.algebra().with_truncation(m)?;
        Ok(LieElement(self.0.rehome(&alg)))
    }

    /// Re-home in an algebra with the same generators (any truncation),
    /// dropping lengths above it.
    pub(crate) fn rehome(&self, alg: &Algebra) -> Self {
        LieElement(self.0.rehome(alg))
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        ensure_same(self.algebra(), other.algebra())?;
        Ok(self.br(other))
    }

    pub(crate) fn br(&self, other: &Self) -> Self {
        LieElement(self.0.commutator(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LieElement(self.0.scale(c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(LieElement(self.0.checked_add(&other.0)?))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        ensure_same(self.algebra(), other.algebra())?;
        Ok(self - other)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_same(self.algebra(), other.algebra());
        self.0.add_scaled(&other.0, c);
    }

    pub fn coefficient(&self, letters: &[Letter]) -> Scalar {
        self.0.coefficient(&Word::from_letters(letters))
    }

    /// Indices of generators appearing in some word.
    pub fn support(&self) -> std::collections::BTreeSet<Letter> {
        self.0
            .terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    /// Coefficients of the length-one part, by generator index.
    pub fn linear_coefficients(&self) -> Vec<(usize, Scalar)> {
        self.0
            .terms
            .iter()
            .take_while(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.letters()[0] as usize, c.clone()))
            .collect()
    }

    pub fn is_lie(&self) -> bool {
        dynkin_verify(&self.0).ok
    }
}

fn assert_same(a: &Algebra, b: &Algebra) {
    if !same_algebra(a, b) {
        panic!("arithmetic on Lie elements from different algebras");
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        assert_same(self.algebra(), rhs.algebra());
        let mut r = self.clone();
        r.0.add_scaled(&rhs.0, &Scalar::one());
        r
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        assert_same(self.algebra(), rhs.algebra());
        let mut r = self.clone();
        r.0.add_scaled(&rhs.0, &-Scalar::one());
        r
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

impl Mul<&LieElement> for &Scalar {
    type Output = LieElement;
    fn mul(self, rhs: &LieElement) -> LieElement {
        rhs.scale(self)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match super::serialize::to_bracket_terms(self) {
            Ok(terms) if terms.is_empty() => write!(f, "0"),
            Ok(terms) => {
                for (i, (c, b)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{b}")?;
                    } else {
                        write!(f, "{}*{b}", crate::scalar::format_scalar(c))?;
                    }
                }
                Ok(())
            }
            Err(_) => write!(f, "{}", self.0),
        }
    }
}
