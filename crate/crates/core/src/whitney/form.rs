use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::tensor::add_term;
use crate::scalar::{format_scalar, int, Scalar};

/// t₁^{e₁}⋯tₙ^{eₙ} · dt_{j₁}∧⋯∧dt_{j_k} with j₁ < ⋯ < j_k; bit j−1 of `dts`
/// stands for dt_j.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub dts: u32,
}

impl Monomial {
    pub fn form_degree(&self) -> usize {
        self.dts.count_ones() as usize
    }
}

/// A polynomial differential form on Δⁿ in the coordinates t₁,…,tₙ; t₀ and
/// dt₀ are eliminated through Σtᵢ = 1 and Σdtᵢ = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PolyForm {
    pub fn zero(n: usize) -> Self {
        PolyForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut f = Self::zero(n);
        add_term(&mut f.terms, Monomial { exps: vec![0; n], dts: 0 }, c);
        f
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    fn check_index(n: usize, i: usize) -> Result<()> {
        if i > n {
            return Err(Error::Domain(format!("no coordinate t{i} on the {n}-simplex")));
        }
        Ok(())
    }

    /// The barycentric coordinate tᵢ.
    pub fn t(n: usize, i: usize) -> Result<Self> {
        Self::check_index(n, i)?;
        if i == 0 {
            let mut f = Self::one(n);
            for j in 1..=n {
                f = &f - &Self::t(n, j)?;
            }
            return Ok(f);
        }
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        let mut f = Self::zero(n);
        add_term(&mut f.terms, Monomial { exps, dts: 0 }, Scalar::one());
        Ok(f)
    }

    pub fn dt(n: usize, i: usize) -> Result<Self> {
        Self::check_index(n, i)?;
        if i == 0 {
            let mut f = Self::zero(n);
            for j in 1..=n {
                f = &f - &Self::dt(n, j)?;
            }
            return Ok(f);
        }
        let mut f = Self::zero(n);
        add_term(
            &mut f.terms,
            Monomial {
                exps: vec![0; n],
                dts: 1 << (i - 1),
            },
            Scalar::one(),
        );
        Ok(f)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut f = Self::zero(self.n);
        if !c.is_zero() {
            for (m, x) in &self.terms {
                f.terms.insert(m.clone(), x * c);
            }
        }
        f
    }

    /// Part of form degree k.
    pub fn degree_part(&self, k: usize) -> Self {
        PolyForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.form_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms on simplices of different dimension");
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.dts & b.dts != 0 {
                    continue;
                }
                // moving each dt of b past the larger dts of a
                let swaps: u32 = (0..32)
                    .filter(|j| b.dts >> j & 1 == 1)
                    .map(|j| (a.dts >> j >> 1).count_ones())
                    .sum();
                let exps = a.exps.iter().zip(&b.exps).map(|(p, q)| p + q).collect();
                let c = x * y;
                let c = if swaps % 2 == 1 { -c } else { c };
                add_term(&mut out.terms, Monomial { exps, dts: a.dts | b.dts }, c);
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            for j in 0..self.n {
                let e = m.exps[j];
                if e == 0 || m.dts >> j & 1 == 1 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[j] -= 1;
                let before = (m.dts & ((1 << j) - 1)).count_ones();
                let v = c * int(e as i64);
                let v = if before % 2 == 1 { -v } else { v };
                add_term(&mut out.terms, Monomial { exps, dts: m.dts | 1 << j }, v);
            }
        }
        out
    }

    /// Pullback along the inclusion of the face (i₀ < ⋯ < i_k) of Δⁿ, as a
    /// form on Δᵏ whose coordinate t_r is t_{i_r}.
    pub fn restrict(&self, face: &[usize]) -> Result<Self> {
        check_face(face, self.n)?;
        let k = face.len() - 1;
        // images of t_j and dt_j for j = 1..n
        let mut t_img = Vec::with_capacity(self.n);
        let mut dt_img = Vec::with_capacity(self.n);
        for j in 1..=self.n {
            match face.iter().position(|&v| v == j) {
                Some(r) => {
                    t_img.push(Self::t(k, r)?);
                    dt_img.push(Self::dt(k, r)?);
                }
                None => {
                    t_img.push(Self::zero(k));
                    dt_img.push(Self::zero(k));
                }
            }
        }
        let mut out = Self::zero(k);
        for (m, c) in &self.terms {
            let mut f = Self::constant(k, c.clone());
            for (j, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    f = f.wedge(&t_img[j]);
                }
            }
            for (j, dt) in dt_img.iter().enumerate() {
                if m.dts >> j & 1 == 1 {
                    f = f.wedge(dt);
                }
            }
            out = &out + &f;
        }
        Ok(out)
    }

    /// ∫ over Δⁿ of the top-degree part, with t^a dt₁⋯dtₙ ↦ a₁!⋯aₙ!/(Σa+n)!.
    pub fn integrate_top(&self) -> Scalar {
        let full = if self.n == 0 { 0 } else { (1u32 << self.n) - 1 };
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            if m.dts != full {
                continue;
            }
            let mut num = Scalar::one();
            let mut s = self.n;
            for &a in &m.exps {
                num *= Scalar::from_integer(crate::scalar::factorial(a as usize));
                s += a as usize;
            }
            total += c * num / Scalar::from_integer(crate::scalar::factorial(s));
        }
        total
    }
}

pub(crate) fn check_face(face: &[usize], n: usize) -> Result<()> {
    if face.is_empty() || face.windows(2).any(|w| w[0] >= w[1]) || face.iter().any(|&v| v > n) {
        return Err(Error::Domain(format!(
            "{face:?} is not an increasing face of the {n}-simplex"
        )));
    }
    Ok(())
}

impl std::ops::Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.n, other.n, "forms on simplices of different dimension");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, other: &PolyForm) -> PolyForm {
        self + &other.scale(&-Scalar::one())
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{}", j + 1)),
                    _ => factors.push(format!("t{}^{e}", j + 1)),
                }
            }
            for j in 0..self.n {
                if m.dts >> j & 1 == 1 {
                    factors.push(format!("dt{}", j + 1));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_scalar(c))?;
            } else if c.is_one() {
                write!(f, "{}", factors.join(" "))?;
            } else {
                write!(f, "{} {}", format_scalar(c), factors.join(" "))?;
            }
        }
        Ok(())
    }
}
