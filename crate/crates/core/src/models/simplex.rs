use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{Algebra, FreeCompleteDgl, FreeLieAlgebra, Generator, Letter, LieElement};
use crate::scalar::int;

/// A face of a simplex: strictly increasing vertex indices.
pub type Face = Vec<usize>;

/// Generator name of a face: `a012` when every vertex index is a single
/// digit in the ambient complex, `a1_10_12` otherwise.
pub fn face_name(face: &[usize], wide: bool) -> String {
    let parts: Vec<String> = face.iter().map(|v| v.to_string()).collect();
    if wide {
        format!("a{}", parts.join("_"))
    } else {
        format!("a{}", parts.concat())
    }
}

pub fn parse_face_name(name: &str) -> Option<Face> {
    let body = name.strip_prefix('a')?;
    if body.is_empty() {
        return None;
    }
    let face: Option<Face> = if body.contains('_') {
        body.split('_').map(|p| p.parse().ok()).collect()
    } else {
        body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    let face = face?;
    face.windows(2).all(|w| w[0] < w[1]).then_some(face)
}

/// All faces of Δⁿ ordered by dimension, then lexicographically.
pub fn simplex_faces(n: usize) -> Vec<Face> {
    let mut faces: Vec<Face> = (1u64..(1u64 << (n + 1)))
        .map(|mask| (0..=n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    faces.sort_by(|a: &Face, b: &Face| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    faces
}

/// Simplicial boundary Σ_j (−1)ʲ (face without its j-th vertex).
pub fn chain_boundary(face: &[usize]) -> Vec<(Face, i64)> {
    if face.len() <= 1 {
        return Vec::new();
    }
    (0..face.len())
        .map(|j| {
            let mut f = face.to_vec();
            f.remove(j);
            (f, if j % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

pub(crate) fn faces_algebra(faces: &[Face], wide: bool, truncation: usize) -> Result<Algebra> {
    let gens = faces
        .iter()
        .map(|f| Generator::new(face_name(f, wide), f.len() as i32 - 2))
        .collect();
    FreeLieAlgebra::new(gens, truncation)
}

pub(crate) fn face_index(faces: &[Face]) -> BTreeMap<Face, usize> {
    faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect()
}

/// Copy `x` from the model of Δᵖ onto the p-face `face` of a target algebra
/// whose faces are indexed by `index`.
pub(crate) fn onto_face(
    x: &LieElement,
    source_faces: &[Face],
    face: &[usize],
    target: &Algebra,
    index: &BTreeMap<Face, usize>,
) -> Result<LieElement> {
    let map = source_faces
        .iter()
        .map(|s| {
            let image: Face = s.iter().map(|&v| face[v]).collect();
            index
                .get(&image)
                .map(|&i| Some((i as Letter, false)))
                .ok_or_else(|| Error::Construction(format!("face {image:?} missing from target")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LieElement::from_tensor_unchecked(x.tensor().relabel(target, &map)))
}

/// Differentials of every face of dimension p < family.len() in `faces`,
/// obtained by copying the top cell of the dimension-p model; faces of
/// higher dimension are left as `None`.
pub(crate) fn glue_faces(
    target: &Algebra,
    faces: &[Face],
    family: &[SimplexModel],
) -> Result<Vec<Option<LieElement>>> {
    let index = face_index(faces);
    faces
        .iter()
        .map(|f| {
            let p = f.len() - 1;
            match family.get(p) {
                None => Ok(None),
                Some(m) => {
                    let top = m.dgl.diff_of(m.faces.len() - 1);
                    onto_face(top, &m.faces, f, target, &index).map(Some)
                }
            }
        })
        .collect()
}

/// Build a model of Δⁿ whose proper faces are copies of the lower models in
/// `family` (indexed by dimension). `top` receives the DGL with ∂ of the top
/// generator set to zero and returns the real value.
pub(crate) fn assemble(
    n: usize,
    truncation: usize,
    flavor: Flavor,
    family: &[SimplexModel],
    top: impl FnOnce(&SimplexModel) -> Result<LieElement>,
) -> Result<SimplexModel> {
    debug_assert!(family.len() >= n);
    let faces = simplex_faces(n);
    let alg = faces_algebra(&faces, n >= 10, truncation)?;
    let glued = glue_faces(&alg, &faces, &family[..n])?;
    let diff: Vec<LieElement> = glued
        .into_iter()
        .map(|d| d.unwrap_or_else(|| LieElement::zero(&alg)))
        .collect();
    let partial = SimplexModel {
        n,
        flavor,
        index: face_index(&faces),
        faces,
        dgl: FreeCompleteDgl::new_unchecked(alg.clone(), diff.clone()),
    };
    let t = top(&partial)?;
    let mut diff = diff;
    *diff.last_mut().unwrap() = t;
    Ok(SimplexModel {
        dgl: FreeCompleteDgl::new(alg, diff)?,
        ..partial
    })
}

/// Which construction produced a simplex model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Explicit formulas through dimension 3, inductive above.
    Seed,
    /// The inductive horn-filling construction from dimension 2 on.
    Inductive,
    /// The Σ_{n+1}-equivariant construction.
    Symmetric,
    /// Loaded from a file or assembled by hand.
    External,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Seed => "seed",
            Flavor::Inductive => "inductive",
            Flavor::Symmetric => "symmetric",
            Flavor::External => "external",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "seed" => Some(Flavor::Seed),
            "inductive" => Some(Flavor::Inductive),
            "symmetric" => Some(Flavor::Symmetric),
            "external" => Some(Flavor::External),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A free complete DGL on the faces of Δⁿ.
#[derive(Clone, Debug)]
pub struct SimplexModel {
    pub(crate) n: usize,
    pub(crate) flavor: Flavor,
    pub(crate) faces: Vec<Face>,
    pub(crate) index: BTreeMap<Face, usize>,
    pub(crate) dgl: FreeCompleteDgl,
}

impl SimplexModel {
    /// Wrap a DGL whose generators are exactly the faces of Δⁿ in the
    /// standard order.
    pub fn new(n: usize, flavor: Flavor, dgl: FreeCompleteDgl) -> Result<Self> {
        let faces = simplex_faces(n);
        let wide = n >= 10;
        if dgl.generators().len() != faces.len() {
            return Err(Error::Structural(format!(
                "a model of the {n}-simplex needs {} generators, found {}",
                faces.len(),
                dgl.generators().len()
            )));
        }
        for (g, f) in dgl.generators().iter().zip(&faces) {
            if g.name != face_name(f, wide) || g.degree != f.len() as i32 - 2 {
                return Err(Error::Structural(format!(
                    "generator {} (degree {}) does not match face {}",
                    g.name,
                    g.degree,
                    face_name(f, wide)
                )));
            }
        }
        let index = face_index(&faces);
        Ok(SimplexModel {
            n,
            flavor,
            faces,
            index,
            dgl,
        })
    }

    /// Recognize a simplex model from its generator names.
    pub fn from_dgl(dgl: FreeCompleteDgl) -> Result<Self> {
        let count = dgl.generators().len();
        let n = (0..12)
            .find(|&n| (1usize << (n + 1)) - 1 == count)
            .ok_or_else(|| Error::Structural(format!("{count} generators is not 2^(n+1)-1")))?;
        SimplexModel::new(n, Flavor::External, dgl)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dgl(&self) -> &FreeCompleteDgl {
        &self.dgl
    }

    pub fn algebra(&self) -> &Algebra {
        self.dgl.algebra()
    }

    pub fn truncation(&self) -> usize {
        self.dgl.truncation()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn face(&self, face: &[usize]) -> Result<LieElement> {
        self.face_index(face)
            .map(|i| self.dgl.gen(i))
            .ok_or_else(|| Error::Domain(format!("{face:?} is not a face of the {}-simplex", self.n)))
    }

    pub fn vertex(&self, i: usize) -> Result<LieElement> {
        self.face(&[i])
    }

    pub fn top_index(&self) -> usize {
        self.faces.len() - 1
    }

    /// ∂ of the top generator.
    pub fn top_differential(&self) -> &LieElement {
        self.dgl.diff_of(self.top_index())
    }

    /// The chain differential of the face, as a length-one element.
    pub fn chain_differential(&self, face: &[usize]) -> LieElement {
        let mut x = LieElement::zero(self.algebra());
        for (f, s) in chain_boundary(face) {
            x.add_scaled(&self.dgl.gen(self.index[&f]), &int(s));
        }
        x
    }

    /// Index set of the generators lying on `face`.
    pub fn letters_on(&self, face: &[usize]) -> Vec<Letter> {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.iter().all(|v| face.contains(v)))
            .map(|(i, _)| i as Letter)
            .collect()
    }

    /// Truncate to a lower level.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        Ok(SimplexModel {
            dgl: self.dgl.truncate(m)?,
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut doc = self.dgl.to_document()?;
        doc.simplex_dimension = Some(self.n);
        doc.flavor = Some(self.flavor.as_str().to_string());
        crate::lie::document_to_json(&doc)
    }
}
