use std::collections::HashMap;

use num_traits::Zero;

use super::{Algebra, Letter, LieElement, TensorElement, Word};
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// A basis vector of the free graded Lie algebra: either the standard
/// bracketing of a Lyndon word, or the square [P(u),P(u)] of an odd one.
#[derive(Clone, Debug)]
pub struct BasisElement {
    /// Leading (smallest) word; distinct across the basis.
    pub leading: Word,
    /// Set for squares: the odd Lyndon word u with leading = uu.
    pub square_of: Option<Word>,
    pub element: LieElement,
}

pub fn is_lyndon(w: &[Letter]) -> bool {
    // strictly smaller than every proper suffix
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length `len` over `letters` (sorted ascending), in
/// lexicographic order, restricted to total degree `degree` when given.
pub fn lyndon_words(
    alg: &Algebra,
    letters: &[Letter],
    degree: Option<i32>,
    len: usize,
) -> Vec<Word> {
    let mut letters = letters.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let mut out = Vec::new();
    if len == 0 || letters.is_empty() {
        return out;
    }
    let degs: Vec<i32> = letters.iter().map(|&l| alg.degree_of(l)).collect();
    let min_deg = *degs.iter().min().unwrap();
    let max_deg = *degs.iter().max().unwrap();
    let mut prefix: Vec<Letter> = Vec::with_capacity(len);
    for (fi, &first) in letters.iter().enumerate() {
        prefix.clear();
        prefix.push(first);
        extend(
            &letters[fi..],
            &degs[fi..],
            alg.degree_of(first),
            degree,
            (min_deg, max_deg),
            len,
            &mut prefix,
            &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    letters: &[Letter],
    degs: &[i32],
    deg: i32,
    target: Option<i32>,
    bounds: (i32, i32),
    len: usize,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    let remaining = (len - prefix.len()) as i32;
    if let Some(t) = target {
        if deg + remaining * bounds.0 > t || deg + remaining * bounds.1 < t {
            return;
        }
    }
    if remaining == 0 {
        if is_lyndon(prefix) {
            out.push(Word::from_letters(prefix));
        }
        return;
    }
    // letters[0] is the first letter of the word; later letters may equal it
    for (i, &l) in letters.iter().enumerate() {
        prefix.push(l);
        if prenecklace_ok(prefix) {
            extend(letters, degs, deg + degs[i], target, bounds, len, prefix, out);
        }
        prefix.pop();
    }
}

// A prefix of a Lyndon word is a prenecklace: it has a period p such that
// every letter agrees with the one p positions back or exceeds it at the first
// disagreement. This is the standard FKM acceptance test on the last letter.
fn prenecklace_ok(w: &[Letter]) -> bool {
    let mut p = 1;
    for i in 1..w.len() {
        if w[i] < w[i - p] {
            return false;
        }
        if w[i] > w[i - p] {
            p = i + 1;
        }
    }
    true
}

/// Standard factorization w = uv with v the longest proper Lyndon suffix.
pub(crate) fn standard_split(w: &[Letter]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap()
}

/// The standard bracketing P(w) of a Lyndon word.
pub fn standard_bracketing(alg: &Algebra, w: &[Letter]) -> LieElement {
    let mut cache = HashMap::new();
    bracketing_cached(alg, w, &mut cache)
}

pub(crate) fn bracketing_cached(
    alg: &Algebra,
    w: &[Letter],
    cache: &mut HashMap<Vec<Letter>, LieElement>,
) -> LieElement {
    if w.len() == 1 {
        return LieElement::generator(alg, w[0] as usize);
    }
    if let Some(e) = cache.get(w) {
        return e.clone();
    }
    let k = standard_split(w);
    let u = bracketing_cached(alg, &w[..k], cache);
    let v = bracketing_cached(alg, &w[k..], cache);
    let e = u.br(&v);
    cache.insert(w.to_vec(), e.clone());
    e
}

/// Ordered basis of the length-`length`, degree-`degree` component of the
/// free graded Lie algebra on all generators of `alg`, sorted by leading
/// word (length, then lexicographic).
pub fn lyndon_basis(alg: &Algebra, degree: i32, length: usize) -> Vec<BasisElement> {
    let letters: Vec<Letter> = (0..alg.rank() as Letter).collect();
    basis_in(alg, &letters, Some(degree), length)
}

/// Same as [`lyndon_basis`] restricted to the subalgebra on `letters`, and
/// optionally to all degrees at once.
pub fn basis_in(
    alg: &Algebra,
    letters: &[Letter],
    degree: Option<i32>,
    length: usize,
) -> Vec<BasisElement> {
    if length == 0 || length > alg.truncation() {
        return Vec::new();
    }
    let mut cache = HashMap::new();
    let mut out: Vec<BasisElement> = lyndon_words(alg, letters, degree, length)
        .into_iter()
        .map(|w| BasisElement {
            element: bracketing_cached(alg, w.letters(), &mut cache),
            leading: w,
            square_of: None,
        })
        .collect();
    if length.is_multiple_of(2) {
        let half = degree.map(|d| if d % 2 == 0 { Some(d / 2) } else { None });
        if half != Some(None) {
            let half = half.flatten();
            for u in lyndon_words(alg, letters, half, length / 2) {
                if alg.word_degree(u.letters()).rem_euclid(2) == 1 {
                    let p = bracketing_cached(alg, u.letters(), &mut cache);
                    out.push(BasisElement {
                        leading: u.concat(&u),
                        element: p.br(&p),
                        square_of: Some(u),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.leading.cmp(&b.leading));
    out
}

/// Coordinates of a Lie element in the Lyndon basis, as (basis leading word,
/// square flag, coefficient), sorted by leading word.
pub(crate) fn decompose(x: &LieElement) -> Result<Vec<(Word, Option<Word>, Scalar)>> {
    let alg = x.algebra().clone();
    let mut rest: TensorElement = x.tensor().clone();
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    while let Some((w, c)) = rest.terms.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        let letters = w.letters();
        if is_lyndon(letters) {
            let p = bracketing_cached(&alg, letters, &mut cache);
            rest.add_scaled(p.tensor(), &-c.clone());
            out.push((w, None, c));
            continue;
        }
        let n = letters.len();
        if n % 2 == 0 && letters[..n / 2] == letters[n / 2..] && is_lyndon(&letters[..n / 2]) {
            let u = &letters[..n / 2];
            if alg.word_degree(u).rem_euclid(2) == 1 {
                let u = u.to_vec();
                let p = bracketing_cached(&alg, &u, &mut cache);
                let sq = p.br(&p);
                let coef = &c / int(2);
                rest.add_scaled(sq.tensor(), &-coef.clone());
                out.push((w.clone(), Some(Word::from_letters(&u)), coef));
                continue;
            }
        }
        return Err(Error::Domain(format!(
            "element is not in the free Lie algebra (stuck at word of length {n})"
        )));
    }
    debug_assert!(out.iter().all(|(_, _, c)| !c.is_zero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{FreeLieAlgebra, Generator};

    fn two(deg_x: i32, deg_y: i32, n: usize) -> Algebra {
        FreeLieAlgebra::new(
            vec![Generator::new("x", deg_x), Generator::new("y", deg_y)],
            n,
        )
        .unwrap()
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0, 1]));
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[0, 1, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(is_lyndon(&[0]));
    }

    #[test]
    fn small_bases() {
        let a = two(0, 0, 4);
        assert_eq!(lyndon_basis(&a, 0, 2).len(), 1);
        assert_eq!(lyndon_basis(&a, 0, 3).len(), 2);
        let odd = FreeLieAlgebra::new(vec![Generator::new("a", -1)], 3).unwrap();
        assert_eq!(lyndon_basis(&odd, -2, 2).len(), 1);
        assert_eq!(lyndon_basis(&odd, -3, 3).len(), 0);
        let even = FreeLieAlgebra::new(vec![Generator::new("a", 0)], 3).unwrap();
        assert!(lyndon_basis(&even, 0, 2).is_empty());
    }

    #[test]
    fn decomposition_round_trips() {
        let a = two(-1, 0, 4);
        let x = a.gen(0);
        let y = a.gen(1);
        let e = x.br(&x).br(&y) + x.br(&y).scale(&int(3));
        let parts = decompose(&e).unwrap();
        let mut back = a.zero();
        for (w, sq, c) in parts {
            let b = match sq {
                None => standard_bracketing(&a, w.letters()),
                Some(u) => {
                    let p = standard_bracketing(&a, u.letters());
                    p.br(&p)
                }
            };
            back.add_scaled(&b, &c);
        }
        assert_eq!(back, e);
    }
}
