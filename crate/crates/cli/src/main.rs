//! `dglkit`: build, check and compute with free complete DGL models.
//!
//! Every subcommand prints one JSON document on stdout. Rationals are
//! written as "p/q" strings. Exit status is 0 on success, 1 when a check
//! fails or a construction is infeasible, and 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dglkit_core::complex::{minimal_model, model_of_complex, parse_complex, SimplicialComplex};
use dglkit_core::homology::{homology_all, linear_homology, malcev_tower, pi_n, PiGroup};
use dglkit_core::lie::{document_from_json, parse_bracket, DglDocument};
use dglkit_core::models::{
    build_model, build_symmetric_model, check_model_axioms, inductive_property, Flavor,
    SimplexModel,
};
use dglkit_core::scalar::{format_scalar, parse_scalar};
use dglkit_core::series::bch_many;
use dglkit_core::whitney::{check_whitney, elementary_form};
use dglkit_core::{Error, FreeCompleteDgl, FreeLieAlgebra, Generator, LieElement};

#[derive(Parser)]
#[command(name = "dglkit", version, about = "Free complete DGL models of simplices and simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Trunc {
    /// Bracket-length truncation N (computations happen in L/L^{>N}).
    #[arg(long = "trunc", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Seed,
    Inductive,
}

#[derive(Subcommand)]
enum Command {
    /// Build the model of Δⁿ.
    BuildModel {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        trunc: Trunc,
        /// Use the Σ_{n+1}-equivariant builder.
        #[arg(long, conflicts_with = "flavor")]
        symmetric: bool,
        #[arg(long, value_enum, default_value = "seed")]
        flavor: FlavorArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a serialized model: ∂² = 0, and the simplex axioms when the
    /// document describes a simplex.
    Check {
        #[arg(long)]
        model: PathBuf,
        /// List every residue instead of the first few per item.
        #[arg(long)]
        verbose: bool,
    },
    /// Build ℒ(K) for a complex file, or its minimal model.
    ModelOfComplex {
        #[arg(long)]
        complex: PathBuf,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homology of L/L^{>N} for a model file or a complex (twisted by the
    /// basepoint vertex).
    Homology {
        #[arg(long, conflicts_with = "complex", required_unless_present = "complex")]
        model: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long)]
        basepoint: Option<usize>,
        /// Homology of the generator complex (V, ∂₁) only.
        #[arg(long)]
        linear: bool,
    },
    /// Malcev tower H₀(ℒ(K)/L^{>N}, ∂_a) for N = 1..trunc.
    Malcev {
        #[arg(long)]
        complex: PathBuf,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// πₙ of the realization of a non-negatively graded model.
    Pi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        model: PathBuf,
        /// Truncate the model further before computing.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// BCH product of elements of a free Lie algebra.
    ///
    /// Elements are sums of terms separated by '+', each term an optional
    /// rational coefficient followed by '*' and a bracket, e.g.
    /// "x+-1/2*[x,y]". Without elements, the generators are multiplied.
    Bch {
        /// Generators as name:degree, comma separated.
        #[arg(long, default_value = "x:0,y:0")]
        generators: String,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Whitney forms on Δⁿ.
    Whitney {
        #[arg(long)]
        n: usize,
        /// Run the identity suite instead of listing elementary forms.
        #[arg(long)]
        check: bool,
    },
}

/// Outcome of a subcommand: the document and whether all checks passed.
struct Outcome {
    doc: Value,
    ok: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, ok: true }
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_) | Error::Domain(_) | Error::Parse { .. } | Error::Structural(_)
    )
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, Error> {
    parse_complex(&read(path)?)
}

fn read_document(path: &Path) -> Result<DglDocument, Error> {
    document_from_json(&read(path)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn emit(text: String, out: Option<&Path>) -> Result<Value, Error> {
    let doc: Value = serde_json::from_str(&text).expect("valid json");
    if let Some(p) = out {
        fs::write(p, text + "\n").map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
        return Ok(json!({ "written": p.display().to_string() }));
    }
    Ok(doc)
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::BuildModel {
            n,
            trunc,
            symmetric,
            flavor,
            out,
        } => {
            let t = trunc.trunc as usize;
            let model = if symmetric {
                build_symmetric_model(n, t)?
            } else {
                let flavor = match flavor {
                    FlavorArg::Seed => Flavor::Seed,
                    FlavorArg::Inductive => Flavor::Inductive,
                };
                build_model(n, t, flavor)?
            };
            Ok(Outcome::ok(emit(model.to_json()?, out.as_deref())?))
        }
        Command::Check { model, verbose } => check(&model, verbose),
        Command::ModelOfComplex {
            complex,
            trunc,
            basepoint,
            minimal,
            out,
        } => {
            let k = read_complex(&complex)?;
            let t = trunc.trunc as usize;
            if minimal {
                let m = minimal_model(&k, basepoint, t)?;
                let mut doc = to_value(&m.dgl.to_document()?);
                doc["eliminations"] = m
                    .eliminations
                    .iter()
                    .map(|e| json!([e.removed, e.solved]))
                    .collect();
                doc["chain_map_failures"] = to_value(&m.chain_map_failures);
                let ok = m.chain_map_failures.is_empty();
                let text = serde_json::to_string_pretty(&doc).expect("json");
                return Ok(Outcome {
                    doc: emit(text, out.as_deref())?,
                    ok,
                });
            }
            let m = model_of_complex(&k, t)?;
            Ok(Outcome::ok(emit(m.dgl().to_json()?, out.as_deref())?))
        }
        Command::Homology {
            model,
            complex,
            trunc,
            basepoint,
            linear,
        } => {
            let dgl = match (model, complex) {
                (Some(p), _) => {
                    let dgl = FreeCompleteDgl::from_document(&read_document(&p)?)?;
                    let t = (trunc.trunc as usize).min(dgl.truncation());
                    dgl.truncate(t)?
                }
                (None, Some(p)) => {
                    let k = read_complex(&p)?;
                    let m = model_of_complex(&k, trunc.trunc as usize)?;
                    match basepoint {
                        Some(v) => dglkit_core::series::twist(m.dgl(), &m.vertex(v)?)?,
                        None => m.dgl().clone(),
                    }
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let report = if linear {
                linear_homology(&dgl)?
            } else {
                homology_all(&dgl)?
            };
            Ok(Outcome {
                ok: report.consistent,
                doc: to_value(&report.to_summary()),
            })
        }
        Command::Malcev {
            complex,
            trunc,
            basepoint,
        } => {
            let k = read_complex(&complex)?;
            let tower = malcev_tower(&k, basepoint, trunc.trunc as usize)?;
            let mut associative = Vec::new();
            for q in &tower.levels {
                let samples = q.sample_elements();
                associative.push(
                    q.associativity_failures(&samples)?.is_empty()
                        && q.inverse_failures(&samples)?.is_empty()
                        && q.table_mismatches().is_empty(),
                );
            }
            let ok = tower.surjective.iter().chain(&associative).all(|&b| b);
            let mut doc = to_value(&tower.summary());
            doc["group_axioms"] = to_value(&associative);
            Ok(Outcome { doc, ok })
        }
        Command::Pi { n, model, trunc } => {
            let dgl = FreeCompleteDgl::from_document(&read_document(&model)?)?;
            let dgl = match trunc {
                Some(t) => dgl.truncate(t)?,
                None => dgl,
            };
            let doc = match pi_n(&dgl, n)? {
                PiGroup::Fundamental(q) => {
                    json!({ "n": 1, "dim": q.dim(), "abelian": q.is_abelian(), "group": to_value(&q.summary()) })
                }
                PiGroup::Higher(e) => json!({
                    "n": n,
                    "dim": e.dim,
                    "representatives": e.representatives.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                }),
            };
            Ok(Outcome::ok(doc))
        }
        Command::Bch {
            generators,
            trunc,
            elements,
        } => {
            let gens = parse_generators(&generators)?;
            let alg = FreeLieAlgebra::new(gens, trunc.trunc as usize)?;
            let xs: Vec<LieElement> = if elements.is_empty() {
                (0..alg.rank()).map(|i| alg.gen(i)).collect()
            } else {
                elements
                    .iter()
                    .map(|e| parse_sum(&alg, e))
                    .collect::<Result<_, _>>()?
            };
            let z = bch_many(&xs)?;
            let terms: Vec<Value> = dglkit_core::lie::to_bracket_terms(&z)?
                .into_iter()
                .map(|(c, b)| json!([format_scalar(&c), b]))
                .collect();
            Ok(Outcome::ok(json!({ "truncation": alg.truncation(), "terms": terms })))
        }
        Command::Whitney { n, check } => {
            if check {
                let report = check_whitney(n)?;
                return Ok(Outcome {
                    ok: report.passed(),
                    doc: json!({ "n": n, "passed": report.passed(), "items": to_value(&report.items) }),
                });
            }
            let forms: Vec<Value> = dglkit_core::models::simplex_faces(n)
                .iter()
                .map(|f| {
                    let label: String = f.iter().map(|v| v.to_string()).collect();
                    Ok(json!([label, elementary_form(f, n)?.to_string()]))
                })
                .collect::<Result<_, Error>>()?;
            Ok(Outcome::ok(json!({ "n": n, "elementary_forms": forms })))
        }
    }
}

fn check(path: &Path, verbose: bool) -> Result<Outcome, Error> {
    let doc = read_document(path)?;
    let dgl = FreeCompleteDgl::from_document(&doc)?;
    let mut report = match doc.simplex_dimension {
        Some(_) => {
            let model = SimplexModel::from_dgl(dgl)?;
            let mut r = check_model_axioms(&model);
            if doc.flavor.as_deref() == Some("inductive") {
                r.push(inductive_property(&model));
            }
            r
        }
        None => {
            let mut r = dglkit_core::models::CheckReport::default();
            let residues = dgl
                .check_d_squared()
                .into_iter()
                .map(|r| (r.generator, r.residue.to_string()))
                .collect();
            r.push(dglkit_core::models::CheckItem::new("d_squared", residues));
            r
        }
    };
    if !verbose {
        for item in &mut report.items {
            item.residues.truncate(5);
        }
    }
    Ok(Outcome {
        ok: report.passed(),
        doc: json!({ "passed": report.passed(), "items": to_value(&report.items) }),
    })
}

fn parse_generators(list: &str) -> Result<Vec<Generator>, Error> {
    list.split(',')
        .map(|g| {
            let (name, deg) = g
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("generator {g:?} is not name:degree")))?;
            let deg: i32 = deg
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad degree in {g:?}")))?;
            Ok(Generator::new(name.trim(), deg))
        })
        .collect()
}

fn parse_sum(alg: &dglkit_core::Algebra, text: &str) -> Result<LieElement, Error> {
    let mut x = LieElement::zero(alg);
    for term in text.split('+') {
        let term = term.trim();
        let (c, b) = match term.split_once('*') {
            Some((c, b)) => (parse_scalar(c.trim())?, b.trim()),
            None => match term.strip_prefix('-') {
                Some(b) => (parse_scalar("-1")?, b.trim()),
                None => (parse_scalar("1")?, term),
            },
        };
        x = x.checked_add(&parse_bracket(alg, b)?.scale(&c))?;
    }
    Ok(x)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.doc).expect("json");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("dglkit: {e}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
