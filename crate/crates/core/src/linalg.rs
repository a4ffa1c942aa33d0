//! Sparse exact elimination over ℚ.
//!
//! Vectors are ordered maps from keys to nonzero scalars. [`Echelon`] keeps
//! an echelon basis of a span (pivot = smallest key of each stored row) for
//! rank and membership questions. Linear systems are solved on the equation
//! side: one row per key, unknowns indexed by column position.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::lie::tensor::add_term;
use crate::scalar::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub(crate) fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        add_term(y, k.clone(), a * v);
    }
}

/// Echelon basis of the span of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The part of `v` left after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut rem = v.clone();
        self.reduce_in_place(&mut rem, |_, _| {});
        rem
    }

    // `on_step(pivot_row, factor)` sees every row subtracted.
    fn reduce_in_place(&self, rem: &mut SparseVec<K>, mut on_step: impl FnMut(usize, &Scalar)) {
        let mut cursor: Option<K> = None;
        loop {
            let next = {
                let lower = match &cursor {
                    None => Bound::Unbounded,
                    Some(c) => Bound::Excluded(c.clone()),
                };
                rem.range((lower, Bound::Unbounded))
                    .find(|(k, _)| self.pivots.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((k, c)) = next else { break };
            let r = self.pivots[&k];
            let row = &self.rows[r];
            let t = &c / &row[&k];
            axpy(rem, &-t.clone(), row);
            on_step(r, &t);
            cursor = Some(k);
        }
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let rem = self.reduce(v);
        match rem.keys().next().cloned() {
            None => false,
            Some(p) => {
                self.pivots.insert(p, self.rows.len());
                self.rows.push(rem);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Coordinates with respect to a basis of vectors taken modulo a subspace.
#[derive(Clone, Debug)]
pub struct QuotientBasis<K: Ord + Clone> {
    modulo: Echelon<K>,
    rows: Echelon<K>,
    // row r of `rows` equals Σ combos[r][j] · basis[j] modulo the subspace
    combos: Vec<SparseVec<usize>>,
    dim: usize,
}

impl<K: Ord + Clone> QuotientBasis<K> {
    /// `None` when the basis is dependent modulo the span of `modulo`.
    pub fn new(modulo: &[SparseVec<K>], basis: &[SparseVec<K>]) -> Option<Self> {
        let mut m = Echelon::new();
        for v in modulo {
            m.insert(v);
        }
        let mut qb = QuotientBasis {
            modulo: m,
            rows: Echelon::new(),
            combos: Vec::new(),
            dim: basis.len(),
        };
        for (i, b) in basis.iter().enumerate() {
            let mut rem = qb.modulo.reduce(b);
            let mut combo = SparseVec::new();
            combo.insert(i, Scalar::one());
            let combos = &qb.combos;
            qb.rows.reduce_in_place(&mut rem, |r, t| axpy(&mut combo, &-t.clone(), &combos[r]));
            let p = rem.keys().next().cloned()?;
            qb.rows.pivots.insert(p, qb.rows.rows.len());
            qb.rows.rows.push(rem);
            qb.combos.push(combo);
        }
        Some(qb)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients c with v ≡ Σ c_j basis[j], or `None` if v is not in the
    /// span of the basis and the subspace.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let mut rem = self.modulo.reduce(v);
        let mut acc = SparseVec::new();
        self.rows.reduce_in_place(&mut rem, |r, t| axpy(&mut acc, t, &self.combos[r]));
        if !rem.is_empty() {
            return None;
        }
        Some((0..self.dim).map(|j| acc.remove(&j).unwrap_or_else(Scalar::zero)).collect())
    }

    pub fn in_subspace(&self, v: &SparseVec<K>) -> bool {
        self.modulo.contains(v)
    }
}

/// Rank of a list of vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// The same vectors read as columns of a matrix, returned as its rows.
pub fn transpose<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut rows: BTreeMap<K, SparseVec<usize>> = BTreeMap::new();
    for (j, v) in vectors.iter().enumerate() {
        for (k, c) in v {
            rows.entry(k.clone()).or_default().insert(j, c.clone());
        }
    }
    rows.into_values().collect()
}

/// Row echelon form of the system Σ_j z_j · columns[j] = rhs.
struct System {
    rows: Vec<(SparseVec<usize>, Scalar)>,
    pivots: BTreeMap<usize, usize>,
    unknowns: usize,
}

impl System {
    fn new<K: Ord + Clone>(columns: &[SparseVec<K>], rhs: Option<&SparseVec<K>>) -> Result<Self, K> {
        let mut equations: BTreeMap<K, (SparseVec<usize>, Scalar)> = BTreeMap::new();
        for (j, v) in columns.iter().enumerate() {
            for (k, c) in v {
                equations
                    .entry(k.clone())
                    .or_insert_with(|| (SparseVec::new(), Scalar::zero()))
                    .0
                    .insert(j, c.clone());
            }
        }
        if let Some(rhs) = rhs {
            for (k, c) in rhs {
                equations
                    .entry(k.clone())
                    .or_insert_with(|| (SparseVec::new(), Scalar::zero()))
                    .1 = c.clone();
            }
        }
        let mut sys = System {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            unknowns: columns.len(),
        };
        let mut ech: Echelon<usize> = Echelon::new();
        for (key, (mut row, mut b)) in equations {
            ech.reduce_in_place(&mut row, |r, t| {
                b -= t * &sys.rows[r].1;
            });
            match row.keys().next().copied() {
                None if b.is_zero() => {}
                None => return Err(key),
                Some(p) => {
                    sys.pivots.insert(p, sys.rows.len());
                    ech.pivots.insert(p, ech.rows.len());
                    ech.rows.push(row.clone());
                    sys.rows.push((row, b));
                }
            }
        }
        Ok(sys)
    }

    /// Back substitution with the given values for free unknowns.
    fn back_substitute(&self, free: &SparseVec<usize>) -> SparseVec<usize> {
        let mut z: SparseVec<usize> = free.clone();
        for (&p, &r) in self.pivots.iter().rev() {
            let (row, b) = &self.rows[r];
            let mut acc = b.clone();
            for (j, c) in row.range(p + 1..) {
                if let Some(zj) = z.get(j) {
                    acc -= c * zj;
                }
            }
            let v = acc / &row[&p];
            if !v.is_zero() {
                z.insert(p, v);
            }
        }
        z
    }
}

/// Coefficients z with Σ z_j columns[j] = rhs, free unknowns set to zero;
/// `Err(key)` names an equation that cannot be satisfied.
pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], rhs: &SparseVec<K>) -> Result<SparseVec<usize>, K> {
    let sys = System::new(columns, Some(rhs))?;
    Ok(sys.back_substitute(&SparseVec::new()))
}

/// Basis of the kernel of the map sending the j-th unit vector to
/// `columns[j]`: one vector per non-pivot unknown.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let sys = match System::new(columns, None) {
        Ok(s) => s,
        Err(_) => unreachable!("homogeneous systems are consistent"),
    };
    (0..sys.unknowns)
        .filter(|j| !sys.pivots.contains_key(j))
        .map(|f| {
            let mut free = SparseVec::new();
            free.insert(f, Scalar::one());
            sys.back_substitute(&free)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    fn apply(cols: &[SparseVec<usize>], z: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (j, c) in z {
            axpy(&mut out, c, &cols[*j]);
        }
        out
    }

    #[test]
    fn rank_and_transpose_agree() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(&cols), 2);
        assert_eq!(rank(&transpose(&cols)), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 1)])];
        let b = v(&[(0, 3), (1, 5)]);
        let z = solve(&cols, &b).unwrap();
        assert_eq!(apply(&cols, &z), b);
        let ker = kernel(&cols);
        assert_eq!(ker.len(), 1);
        assert!(apply(&cols, &ker[0]).is_empty());
        assert!(solve(&cols[1..2], &v(&[(0, 1)])).is_err());
    }
}
