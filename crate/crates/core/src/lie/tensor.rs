use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{ensure_same, Algebra, Letter, Word};
use crate::error::Result;
use crate::scalar::{format_scalar, Scalar};

/// An element of the truncated tensor algebra on the generators of an
/// algebra: a finite map from words of length at most N to scalars.
#[derive(Clone, Debug)]
pub struct TensorElement {
    pub(crate) alg: Algebra,
    pub(crate) terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        super::same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

pub(crate) fn add_term<K: Ord>(terms: &mut BTreeMap<K, Scalar>, w: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl TensorElement {
    pub fn zero(alg: &Algebra) -> Self {
        TensorElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit of the tensor algebra (empty word).
    pub fn one(alg: &Algebra) -> Self {
        let mut t = Self::zero(alg);
        t.terms.insert(Word::empty(), Scalar::one());
        t
    }

    pub fn word(alg: &Algebra, letters: &[Letter], c: Scalar) -> Self {
        let mut t = Self::zero(alg);
        if letters.len() <= alg.truncation() {
            add_term(&mut t.terms, Word::from_letters(letters), c);
        }
        t
    }

    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut t = Self::zero(alg);
        for (w, c) in terms {
            if w.len() <= alg.truncation() {
                add_term(&mut t.terms, w, c);
            }
        }
        t
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degrees of all words present, deduplicated and sorted.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self
            .terms
            .keys()
            .map(|w| self.alg.word_degree(w.letters()))
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(d)` if homogeneous of degree d, `None` for zero or mixed.
    pub fn degree(&self) -> Option<i32> {
        let d = self.degrees();
        if d.len() == 1 {
            Some(d[0])
        } else {
            None
        }
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// The homogeneous part of word length `k`.
    pub fn length_part(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() == k)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    pub fn degree_part(&self, d: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| self.alg.word_degree(w.letters()) == d)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// Drop words longer than `m`, keeping the same algebra.
    pub fn drop_above(&self, m: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() <= m)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// Re-home this element in `alg`, which must have the same generators;
    /// words longer than its truncation are dropped.
    pub(crate) fn rehome(&self, alg: &Algebra) -> Self {
        let n = alg.truncation();
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() <= n)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        TensorElement {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        debug_assert!(super::same_algebra(&self.alg, &other.alg));
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            add_term(&mut self.terms, w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        TensorElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::one());
        Ok(r)
    }

    /// Concatenation product, truncated.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(super::same_algebra(&self.alg, &other.alg));
        let n = self.alg.truncation();
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            if u.len() > n {
                continue;
            }
            for (v, b) in &other.terms {
                if u.len() + v.len() > n {
                    // words are sorted by length, nothing further fits
                    break;
                }
                add_term(&mut terms, u.concat(v), a * b);
            }
        }
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// Graded commutator xy − (−1)^{|x||y|} yx, computed per word pair so
    /// inhomogeneous inputs are handled correctly.
    pub fn commutator(&self, other: &Self) -> Self {
        debug_assert!(super::same_algebra(&self.alg, &other.alg));
        let n = self.alg.truncation();
        let mut terms = BTreeMap::new();
        let odd_other: Vec<(&Word, &Scalar, bool)> = other
            .terms
            .iter()
            .map(|(v, b)| (v, b, self.alg.word_degree(v.letters()).rem_euclid(2) == 1))
            .collect();
        for (u, a) in &self.terms {
            let u_odd = self.alg.word_degree(u.letters()).rem_euclid(2) == 1;
            for &(v, b, v_odd) in &odd_other {
                if u.len() + v.len() > n {
                    break;
                }
                let c = a * b;
                add_term(&mut terms, v.concat(u), if u_odd && v_odd { c.clone() } else { -c.clone() });
                add_term(&mut terms, u.concat(v), c);
            }
        }
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// The Dynkin map: each word w₁…w_k goes to its left-normed bracket
    /// [[…[w₁,w₂],…],w_k].
    pub fn dynkin(&self) -> Self {
        let mut out = Self::zero(&self.alg);
        for (w, c) in &self.terms {
            let letters = w.letters();
            if letters.is_empty() {
                continue;
            }
            let mut acc = TensorElement::word(&self.alg, &letters[..1], Scalar::one());
            for &l in &letters[1..] {
                let g = TensorElement::word(&self.alg, &[l], Scalar::one());
                acc = acc.commutator(&g);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Algebra-homomorphism extension of letter images `images[l]` into the
    /// tensor algebra of `target`.
    pub(crate) fn map_letters(&self, target: &Algebra, images: &[TensorElement]) -> TensorElement {
        let mut out = TensorElement::zero(target);
        map_rec(&self.terms, 0, &TensorElement::one(target), images, &mut out);
        out
    }

    /// Apply the derivation with letter images `images[l]` of degree `shift`:
    /// D(w₁…w_k) = Σ_j (−1)^{shift·|w₁…w_{j−1}|} w₁…D(w_j)…w_k.
    pub(crate) fn apply_derivation(&self, images: &[TensorElement], shift: i32) -> TensorElement {
        let n = self.alg.truncation();
        let mut terms = BTreeMap::new();
        let odd_shift = shift.rem_euclid(2) == 1;
        for (w, c) in &self.terms {
            let letters = w.letters();
            let mut prefix_deg = 0i32;
            for j in 0..letters.len() {
                let img = &images[letters[j] as usize];
                let sign_neg = odd_shift && prefix_deg.rem_euclid(2) == 1;
                let prefix = &letters[..j];
                let suffix = &letters[j + 1..];
                for (v, b) in &img.terms {
                    if prefix.len() + v.len() + suffix.len() > n {
                        break;
                    }
                    let mut nw = smallvec::SmallVec::<[Letter; 8]>::with_capacity(
                        prefix.len() + v.len() + suffix.len(),
                    );
                    nw.extend_from_slice(prefix);
                    nw.extend_from_slice(v.letters());
                    nw.extend_from_slice(suffix);
                    let coef = c * b;
                    add_term(&mut terms, Word(nw), if sign_neg { -coef } else { coef });
                }
                prefix_deg += self.alg.degree_of(letters[j]);
            }
        }
        TensorElement {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// Substitute each letter by a signed letter of `target` (or kill the
    /// word when the letter maps to `None`).
    pub(crate) fn relabel(&self, target: &Algebra, map: &[Option<(Letter, bool)>]) -> TensorElement {
        let n = target.truncation();
        let mut terms = BTreeMap::new();
        'words: for (w, c) in &self.terms {
            if w.len() > n {
                continue;
            }
            let mut neg = false;
            let mut nw = smallvec::SmallVec::<[Letter; 8]>::with_capacity(w.len());
            for &l in w.letters() {
                match map[l as usize] {
                    None => continue 'words,
                    Some((m, s)) => {
                        nw.push(m);
                        neg ^= s;
                    }
                }
            }
            add_term(&mut terms, Word(nw), if neg { -c.clone() } else { c.clone() });
        }
        TensorElement {
            alg: target.clone(),
            terms,
        }
    }
}

// Groups words by their first letters so shared prefixes are multiplied once.
fn map_rec(
    terms: &BTreeMap<Word, Scalar>,
    depth: usize,
    prefix: &TensorElement,
    images: &[TensorElement],
    out: &mut TensorElement,
) {
    let mut groups: BTreeMap<Letter, BTreeMap<Word, Scalar>> = BTreeMap::new();
    for (w, c) in terms {
        if w.len() == depth {
            out.add_scaled(prefix, c);
        } else {
            groups
                .entry(w.letters()[depth])
                .or_default()
                .insert(w.clone(), c.clone());
        }
    }
    for (l, sub) in groups {
        let next = prefix.mul(&images[l as usize]);
        if next.is_zero() {
            continue;
        }
        map_rec(&sub, depth + 1, &next, images, out);
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_scalar(c))?;
            if w.is_empty() {
                write!(f, "1")?;
            }
            for (i, &l) in w.letters().iter().enumerate() {
                if i > 0 {
                    write!(f, "⊗")?;
                }
                write!(f, "{}", self.alg.name_of(l))?;
            }
        }
        Ok(())
    }
}
