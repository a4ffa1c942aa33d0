//! Oracles shared by the integration tests, written without the library's
//! linear algebra.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dglkit_core::{FreeCompleteDgl, FreeLieAlgebra, Generator, Scalar};
use num_traits::Zero;

pub const POINT: &str = "0";
pub const TRIANGLE: &str = "0 1 2";
pub const CIRCLE: &str = "0 1\n1 2\n0 2";
pub const FIGURE_EIGHT: &str = "0 1\n1 2\n0 2\n0 3\n3 4\n0 4";
// triangle boundary and tetrahedron boundary sharing vertex 0
pub const CIRCLE_WEDGE_SPHERE: &str = "0 1\n1 2\n0 2\n0 3 4\n0 3 5\n0 4 5\n3 4 5";

pub fn torus() -> String {
    // the seven-vertex triangulation: {i, i+1, i+3} and {i, i+2, i+3} mod 7
    let mut text = String::from("# seven-vertex torus\n");
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            text += &format!("{} {} {}\n", i, (i + a) % 7, (i + b) % 7);
        }
    }
    text
}

/// Rank over ℚ by plain dense elimination.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unreduced Betti numbers from the simplicial chain complex, built from
/// the maximal faces without the library's closure or homology code.
pub fn betti_oracle(text: &str) -> Vec<usize> {
    let mut faces: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let mut top: Vec<usize> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        top.sort();
        for mask in 1u32..(1 << top.len()) {
            let f: Vec<usize> = (0..top.len()).filter(|i| mask >> i & 1 == 1).map(|i| top[i]).collect();
            let list = faces.entry(f.len() - 1).or_default();
            if !list.contains(&f) {
                list.push(f);
            }
        }
    }
    let dim = *faces.keys().max().unwrap();
    let boundary_rank = |p: usize| -> usize {
        if p == 0 || p > dim {
            return 0;
        }
        let rows: Vec<Vec<Scalar>> = faces[&p]
            .iter()
            .map(|f| {
                faces[&(p - 1)]
                    .iter()
                    .map(|g| {
                        match (0..f.len()).find(|&i| {
                            let mut h = f.clone();
                            h.remove(i);
                            &h == g
                        }) {
                            Some(i) => Scalar::from_integer(if i % 2 == 0 { 1.into() } else { (-1).into() }),
                            None => Scalar::zero(),
                        }
                    })
                    .collect()
            })
            .collect();
        dense_rank(rows)
    };
    (0..=dim)
        .map(|p| faces[&p].len() - boundary_rank(p) - boundary_rank(p + 1))
        .collect()
}

pub fn free(gens: &[(&str, i32)], n: usize) -> FreeCompleteDgl {
    let alg = FreeLieAlgebra::new(gens.iter().map(|&(s, d)| Generator::new(s, d)).collect(), n).unwrap();
    FreeCompleteDgl::trivial(alg)
}

/// Dimension of the length-k part of the free Lie algebra on r even
/// generators: (1/k) Σ_{d|k} μ(d) r^{k/d}.
pub fn witt(r: i64, k: i64) -> i64 {
    fn mobius(mut n: i64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }
    (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * r.pow((k / d) as u32)).sum::<i64>() / k
}

