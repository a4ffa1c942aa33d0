//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Formats as `p/q`; integers keep the `/1` so every scalar has the same shape.
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parses `p/q` or `p`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::Domain(format!("invalid rational {text:?}"));
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Bernoulli numbers of the first kind (`B_1 = -1/2`), indices `0..=max`.
///
/// Generated by `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Scalar>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Scalar> = vec![Scalar::one()];
        for m in 1..=max {
            let mut acc = Scalar::zero();
            for (j, b) in values.iter().enumerate() {
                acc += Scalar::from_integer(binomial(m + 1, j)) * b;
            }
            let lead = Scalar::from_integer(binomial(m + 1, m));
            values.push(-acc / lead);
        }
        BernoulliTable { values }
    }

    pub fn get(&self, n: usize) -> &Scalar {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `B_n / n!`
    pub fn scaled(&self, n: usize) -> Scalar {
        &self.values[n] / Scalar::from_integer(factorial(n))
    }
}
