//! Free graded Lie algebras, carried inside their tensor algebras and
//! truncated by bracket length.

mod dgl;
mod element;
pub(crate) mod lyndon;
mod serialize;
pub(crate) mod tensor;

pub use dgl::{D2Residue, Derivation, DglMorphism, FreeCompleteDgl};
pub use element::{dynkin_verify, DynkinReport, LieElement};
pub use lyndon::{basis_in, is_lyndon, lyndon_basis, lyndon_words, standard_bracketing, BasisElement};
pub use serialize::{
    document_from_json, document_to_json, parse_bracket, parse_element, to_bracket_terms, DglDocument,
    DiffEntry, GeneratorDoc,
};
pub use tensor::TensorElement;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Letter index into the generator list of an algebra.
pub type Letter = u16;

/// A word in the generators, ordered by length first and lexicographically
/// within a length.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub(crate) SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A named graded generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// The free graded Lie algebra on an ordered generator list, modulo brackets
/// of length greater than `truncation`.
#[derive(Clone, Debug)]
pub struct FreeLieAlgebra {
    generators: Vec<Generator>,
    truncation: usize,
    lookup: BTreeMap<String, usize>,
}

pub type Algebra = Arc<FreeLieAlgebra>;

impl PartialEq for FreeLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation && self.generators == other.generators
    }
}

impl Eq for FreeLieAlgebra {}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

impl FreeLieAlgebra {
    pub fn new(generators: Vec<Generator>, truncation: usize) -> Result<Algebra> {
        if truncation == 0 {
            return Err(Error::Config("truncation must be at least 1".into()));
        }
        if generators.len() > Letter::MAX as usize {
            return Err(Error::Config("too many generators".into()));
        }
        let mut lookup = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree < -1 {
                return Err(Error::Config(format!(
                    "generator {} has degree {} < -1",
                    g.name, g.degree
                )));
            }
            if !valid_name(&g.name) {
                return Err(Error::Config(format!("invalid generator name {:?}", g.name)));
            }
            if lookup.insert(g.name.clone(), i).is_some() {
                return Err(Error::Config(format!("duplicate generator name {}", g.name)));
            }
        }
        Ok(Arc::new(FreeLieAlgebra {
            generators,
            truncation,
            lookup,
        }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn degree_of(&self, letter: Letter) -> i32 {
        self.generators[letter as usize].degree
    }

    pub fn name_of(&self, letter: Letter) -> &str {
        &self.generators[letter as usize].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn word_degree(&self, word: &[Letter]) -> i32 {
        word.iter().map(|&l| self.degree_of(l)).sum()
    }

    /// Same generators, different truncation.
    pub fn with_truncation(&self, truncation: usize) -> Result<Algebra> {
        FreeLieAlgebra::new(self.generators.clone(), truncation)
    }

    /// The generator with index `i` as a Lie element.
    pub fn gen(self: &Arc<Self>, i: usize) -> LieElement {
        LieElement::generator(self, i)
    }

    /// The generator with the given name.
    pub fn named(self: &Arc<Self>, name: &str) -> Result<LieElement> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::Config(format!("unknown generator {name}")))?;
        Ok(self.gen(i))
    }

    pub fn zero(self: &Arc<Self>) -> LieElement {
        LieElement::zero(self)
    }
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn ensure_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else if a.generators == b.generators {
        Err(Error::Config(format!(
            "mixed truncations {} and {}",
            a.truncation, b.truncation
        )))
    } else {
        Err(Error::Config("elements belong to different generator sets".into()))
    }
}

impl fmt::Display for FreeLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, ") / L^>{}", self.truncation)
    }
}
