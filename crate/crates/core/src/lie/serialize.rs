//! Structured text form of DGLs and Lie elements.
//!
//! A DGL is written as JSON with the truncation, the ordered generator list
//! and, per generator, the terms of its differential as `["p/q", bracket]`
//! pairs in the Lyndon basis. Brackets are fully parenthesized, e.g.
//! `[a01,[a01,a0]]`. Parsing accepts any nested bracket expression.

use serde::{Deserialize, Serialize};

use super::lyndon::decompose;
use super::{Algebra, FreeCompleteDgl, FreeLieAlgebra, Generator, Letter, LieElement};
use crate::error::{parse_err, Error, Result};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub generator: String,
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DglDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplex_dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub truncation: usize,
    pub generators: Vec<GeneratorDoc>,
    pub differential: Vec<DiffEntry>,
}

fn bracket_string(alg: &Algebra, w: &[Letter]) -> String {
    if w.len() == 1 {
        return alg.name_of(w[0]).to_string();
    }
    let k = (1..w.len())
        .find(|&i| super::lyndon::is_lyndon(&w[i..]))
        .unwrap();
    format!(
        "[{},{}]",
        bracket_string(alg, &w[..k]),
        bracket_string(alg, &w[k..])
    )
}

/// Lyndon-basis coordinates of `x` with each basis vector spelled out.
pub fn to_bracket_terms(x: &LieElement) -> Result<Vec<(Scalar, String)>> {
    let alg = x.algebra();
    Ok(decompose(x)?
        .into_iter()
        .map(|(w, sq, c)| {
            let s = match sq {
                None => bracket_string(alg, w.letters()),
                Some(u) => {
                    let p = bracket_string(alg, u.letters());
                    format!("[{p},{p}]")
                }
            };
            (c, s)
        })
        .collect())
}

/// Parse a bracket expression such as `[a0,[a01,a1]]` over `alg`.
pub fn parse_bracket(alg: &Algebra, text: &str) -> Result<LieElement> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        alg,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Parse {
            line: 0,
            message: format!("trailing input in bracket {text:?}"),
        });
    }
    Ok(e)
}

/// Parse a list of `(coefficient, bracket)` terms into one element.
pub fn parse_element(alg: &Algebra, terms: &[(String, String)]) -> Result<LieElement> {
    let mut x = LieElement::zero(alg);
    for (c, b) in terms {
        let c = parse_scalar(c)?;
        let e = parse_bracket(alg, b)?;
        x.add_scaled(&e, &c);
    }
    Ok(x)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    alg: &'a Algebra,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 0,
            message: format!("{msg} at offset {}", self.pos),
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<LieElement> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let a = self.expr()?;
            self.expect(b',')?;
            let b = self.expr()?;
            self.expect(b']')?;
            return Ok(a.br(&b));
        }
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected generator name"));
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let i = self
            .alg
            .index_of(name)
            .ok_or_else(|| self.err(&format!("unknown generator {name}")))?;
        Ok(LieElement::generator(self.alg, i))
    }
}

impl FreeCompleteDgl {
    pub fn to_document(&self) -> Result<DglDocument> {
        let alg = self.algebra();
        let mut differential = Vec::with_capacity(alg.rank());
        for (g, d) in alg.generators().iter().zip(self.diff_table()) {
            let terms = to_bracket_terms(d)?
                .into_iter()
                .map(|(c, b)| (format_scalar(&c), b))
                .collect();
            differential.push(DiffEntry {
                generator: g.name.clone(),
                terms,
            });
        }
        Ok(DglDocument {
            simplex_dimension: None,
            flavor: None,
            truncation: self.truncation(),
            generators: alg
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            differential,
        })
    }

    pub fn from_document(doc: &DglDocument) -> Result<Self> {
        let gens = doc
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        let alg = FreeLieAlgebra::new(gens, doc.truncation)?;
        let mut diff: Vec<Option<LieElement>> = vec![None; alg.rank()];
        for entry in &doc.differential {
            let i = alg.index_of(&entry.generator).ok_or_else(|| {
                Error::Structural(format!(
                    "differential given for unknown generator {}",
                    entry.generator
                ))
            })?;
            if diff[i].is_some() {
                return Err(Error::Structural(format!(
                    "differential of {} given twice",
                    entry.generator
                )));
            }
            diff[i] = Some(parse_element(&alg, &entry.terms)?);
        }
        let diff = diff
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    Error::Structural(format!(
                        "generator {} missing from the differential table",
                        alg.name_of(i as Letter)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FreeCompleteDgl::new(alg, diff)
    }

    pub fn to_json(&self) -> Result<String> {
        document_to_json(&self.to_document()?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&document_from_json(text)?)
    }
}

pub fn document_to_json(doc: &DglDocument) -> Result<String> {
    serde_json::to_string_pretty(doc).map_err(|e| Error::Config(e.to_string()))
}

pub fn document_from_json(text: &str) -> Result<DglDocument> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}
