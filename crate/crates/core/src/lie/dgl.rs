use super::{ensure_same, Algebra, Generator, LieElement, TensorElement};
use crate::error::{Error, Result};

/// A free complete DGL (L̂(V), ∂) modulo L^{>N}, presented by the images of
/// its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCompleteDgl {
    alg: Algebra,
    diff: Vec<LieElement>,
}

/// A nonzero ∂² residue on one generator.
#[derive(Clone, Debug)]
pub struct D2Residue {
    pub generator: String,
    pub residue: LieElement,
}

impl FreeCompleteDgl {
    /// `diff[i]` is ∂ of generator i. Degrees are validated; ∂² is not.
    pub fn new(alg: Algebra, diff: Vec<LieElement>) -> Result<Self> {
        if diff.len() != alg.rank() {
            return Err(Error::Structural(format!(
                "differential table has {} entries for {} generators",
                diff.len(),
                alg.rank()
            )));
        }
        for (g, d) in alg.generators().iter().zip(&diff) {
            ensure_same(&alg, d.algebra())?;
            if !d.has_degree(g.degree - 1) {
                return Err(Error::Structural(format!(
                    "differential of {} (degree {}) has degree {:?}",
                    g.name,
                    g.degree,
                    d.degree()
                )));
            }
            if !d.is_lie() {
                return Err(Error::Structural(format!(
                    "differential of {} is not a Lie element",
                    g.name
                )));
            }
        }
        Ok(FreeCompleteDgl { alg, diff })
    }

    pub(crate) fn new_unchecked(alg: Algebra, diff: Vec<LieElement>) -> Self {
        FreeCompleteDgl { alg, diff }
    }

    /// The DGL with zero differential.
    pub fn trivial(alg: Algebra) -> Self {
        let diff = (0..alg.rank()).map(|_| LieElement::zero(&alg)).collect();
        FreeCompleteDgl { alg, diff }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn generators(&self) -> &[Generator] {
        self.alg.generators()
    }

    pub fn truncation(&self) -> usize {
        self.alg.truncation()
    }

    pub fn diff_table(&self) -> &[LieElement] {
        &self.diff
    }

    pub fn diff_of(&self, i: usize) -> &LieElement {
        &self.diff[i]
    }

    pub fn diff_named(&self, name: &str) -> Result<&LieElement> {
        let i = self
            .alg
            .index_of(name)
            .ok_or_else(|| Error::Structural(format!("no generator named {name}")))?;
        Ok(&self.diff[i])
    }

    pub fn gen(&self, i: usize) -> LieElement {
        self.alg.gen(i)
    }

    pub fn named(&self, name: &str) -> Result<LieElement> {
        self.alg.named(name)
    }

    /// Leibniz extension of the differential.
    pub fn apply_differential(&self, x: &LieElement) -> Result<LieElement> {
        ensure_same(&self.alg, x.algebra())?;
        Ok(self.d(x))
    }

    pub(crate) fn d(&self, x: &LieElement) -> LieElement {
        let images: Vec<TensorElement> = self.diff.iter().map(|e| e.0.clone()).collect();
        LieElement(x.0.apply_derivation(&images, -1))
    }

    pub fn check_d_squared(&self) -> Vec<D2Residue> {
        let images: Vec<TensorElement> = self.diff.iter().map(|e| e.0.clone()).collect();
        self.diff
            .iter()
            .enumerate()
            .filter_map(|(i, d)| {
                let r = LieElement(d.0.apply_derivation(&images, -1));
                (!r.is_zero()).then(|| D2Residue {
                    generator: self.alg.name_of(i as u16).to_string(),
                    residue: r,
                })
            })
            .collect()
    }

    /// The same presentation in L/L^{>m}, m ≤ N.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.truncation() {
            return Err(Error::Config(format!(
                "cannot raise truncation from {} to {m}",
                self.truncation()
            )));
        }
        let alg = self.alg.with_truncation(m)?;
        let diff = self.diff.iter().map(|d| d.rehome(&alg)).collect();
        Ok(FreeCompleteDgl { alg, diff })
    }

    /// The differential as a derivation value.
    pub fn as_derivation(&self) -> Derivation {
        Derivation {
            alg: self.alg.clone(),
            images: self.diff.clone(),
            degree: -1,
        }
    }

    /// Linear part of ∂ on generator i as (generator index, coefficient).
    pub fn linear_part(&self, i: usize) -> Vec<(usize, crate::scalar::Scalar)> {
        self.diff[i].linear_coefficients()
    }
}

/// A derivation of the free Lie algebra of a fixed degree, given by its
/// values on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    alg: Algebra,
    images: Vec<LieElement>,
    degree: i32,
}

impl Derivation {
    pub fn new(alg: Algebra, images: Vec<LieElement>, degree: i32) -> Result<Self> {
        if images.len() != alg.rank() {
            return Err(Error::Structural("derivation table has wrong size".into()));
        }
        for (g, im) in alg.generators().iter().zip(&images) {
            ensure_same(&alg, im.algebra())?;
            if !im.has_degree(g.degree + degree) {
                return Err(Error::Domain(format!(
                    "image of {} does not have degree {}",
                    g.name,
                    g.degree + degree
                )));
            }
        }
        Ok(Derivation {
            alg,
            images,
            degree,
        })
    }

    /// ad_x for homogeneous x.
    pub fn ad(x: &LieElement) -> Result<Self> {
        let degree = x
            .degree()
            .ok_or_else(|| Error::Domain("ad of an inhomogeneous or zero element".into()))?;
        let alg = x.algebra().clone();
        let images = (0..alg.rank()).map(|i| x.br(&alg.gen(i))).collect();
        Ok(Derivation {
            alg,
            images,
            degree,
        })
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        ensure_same(&self.alg, x.algebra())?;
        let images: Vec<TensorElement> = self.images.iter().map(|e| e.0.clone()).collect();
        Ok(LieElement(x.0.apply_derivation(&images, self.degree)))
    }
}

/// A morphism of free Lie algebras given on generators.
#[derive(Clone, Debug)]
pub struct DglMorphism {
    source: Algebra,
    target: Algebra,
    images: Vec<LieElement>,
}

impl DglMorphism {
    pub fn new(source: Algebra, target: Algebra, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Structural("morphism table has wrong size".into()));
        }
        for (g, im) in source.generators().iter().zip(&images) {
            ensure_same(&target, im.algebra())?;
            if !im.has_degree(g.degree) {
                return Err(Error::Domain(format!(
                    "image of {} does not have degree {}",
                    g.name, g.degree
                )));
            }
        }
        Ok(DglMorphism {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        ensure_same(&self.source, x.algebra())?;
        Ok(self.map(x))
    }

    pub(crate) fn map(&self, x: &LieElement) -> LieElement {
        let images: Vec<TensorElement> = self.images.iter().map(|e| e.0.clone()).collect();
        LieElement(x.0.map_letters(&self.target, &images))
    }

    /// Composite self ∘ other.
    pub fn compose(&self, other: &DglMorphism) -> Result<DglMorphism> {
        ensure_same(&self.source, &other.target)?;
        let images = other.images.iter().map(|x| self.map(x)).collect();
        Ok(DglMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// φ∂ − ∂φ on each source generator, listing the nonzero ones. Requires
    /// the source truncation to be at least the target's.
    pub fn chain_map_residues(
        &self,
        source: &FreeCompleteDgl,
        target: &FreeCompleteDgl,
    ) -> Result<Vec<D2Residue>> {
        if source.algebra().generators() != self.source.generators()
            || target.algebra() != &self.target
        {
            return Err(Error::Config("morphism and DGLs do not match".into()));
        }
        if source.truncation() < target.truncation() {
            return Err(Error::Config(
                "source truncation is below target truncation".into(),
            ));
        }
        let src = if source.truncation() == self.source.truncation() {
            source.clone()
        } else {
            source.truncate(self.source.truncation())?
        };
        let mut out = Vec::new();
        for (i, g) in self.source.generators().iter().enumerate() {
            let lhs = self.map(src.diff_of(i));
            let rhs = target.d(&self.images[i]);
            let r = &lhs - &rhs;
            if !r.is_zero() {
                out.push(D2Residue {
                    generator: g.name.clone(),
                    residue: r,
                });
            }
        }
        Ok(out)
    }
}
