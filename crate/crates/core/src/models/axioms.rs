use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{DglMorphism, FreeCompleteDgl, Letter, LieElement};
use crate::series::mc_residue;

use super::simplex::{simplex_faces, Face, Flavor, SimplexModel};

/// One named check with the generators on which it failed.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// (generator or location, residue) pairs.
    pub residues: Vec<(String, String)>,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, residues: Vec<(String, String)>) -> Self {
        CheckItem {
            name: name.into(),
            passed: residues.is_empty(),
            residues,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

fn show(x: &LieElement) -> String {
    x.to_string()
}

/// The sub-DGL on a face, relabeled as a model of Δᵖ. Fails if ∂ of some
/// generator on the face leaves the face.
pub fn restrict_to_face(model: &SimplexModel, face: &[usize]) -> Result<SimplexModel> {
    let p = face.len() - 1;
    let on_face = model.letters_on(face);
    let small = simplex_faces(p);
    let small_alg = super::simplex::faces_algebra(&small, p >= 10, model.truncation())?;
    let mut map: Vec<Option<(Letter, bool)>> = vec![None; model.faces.len()];
    for (j, s) in small.iter().enumerate() {
        let image: Face = s.iter().map(|&v| face[v]).collect();
        map[model.index[&image]] = Some((j as Letter, false));
    }
    let mut diff = Vec::with_capacity(small.len());
    for s in &small {
        let image: Face = s.iter().map(|&v| face[v]).collect();
        let d = model.dgl.diff_of(model.index[&image]);
        if let Some(bad) = d.support().iter().find(|l| !on_face.contains(l)) {
            return Err(Error::Structural(format!(
                "the differential of {} involves {}, which is not on the face",
                model.algebra().name_of(model.index[&image] as Letter),
                model.algebra().name_of(*bad)
            )));
        }
        diff.push(LieElement::from_tensor_unchecked(
            d.tensor().relabel(&small_alg, &map),
        ));
    }
    SimplexModel::new(p, model.flavor, FreeCompleteDgl::new(small_alg, diff)?)
}

/// The coface δᵢ: ℒ_{n−1} → ℒₙ, a_S ↦ a_{δᵢ(S)} with δᵢ(v) = v for v < i and
/// v + 1 otherwise.
pub fn coface(i: usize, source: &SimplexModel, target: &SimplexModel) -> Result<DglMorphism> {
    if target.n != source.n + 1 || i > target.n {
        return Err(Error::Domain(format!(
            "no coface {i} from dimension {} to {}",
            source.n, target.n
        )));
    }
    let images = source
        .faces
        .iter()
        .map(|s| {
            let image: Face = s.iter().map(|&v| if v < i { v } else { v + 1 }).collect();
            target.dgl.gen(target.index[&image])
        })
        .collect();
    DglMorphism::new(source.algebra().clone(), target.algebra().clone(), images)
}

/// The codegeneracy σᵢ: ℒ_{n+1} → ℒₙ, a_S ↦ a_{σᵢ(S)} with σᵢ(v) = v for
/// v ≤ i and v − 1 otherwise, and 0 when two vertices collapse. Only defined
/// here on the symmetric family.
pub fn codegeneracy(i: usize, source: &SimplexModel, target: &SimplexModel) -> Result<DglMorphism> {
    if source.flavor != Flavor::Symmetric || target.flavor != Flavor::Symmetric {
        return Err(Error::Unsupported(
            "codegeneracies are only available on the symmetric family".into(),
        ));
    }
    if source.n != target.n + 1 || i > target.n {
        return Err(Error::Domain(format!(
            "no codegeneracy {i} from dimension {} to {}",
            source.n, target.n
        )));
    }
    let images = source
        .faces
        .iter()
        .map(|s| {
            let image: Face = s.iter().map(|&v| if v <= i { v } else { v - 1 }).collect();
            if image.windows(2).all(|w| w[0] < w[1]) {
                target.dgl.gen(target.index[&image])
            } else {
                target.algebra().zero()
            }
        })
        .collect();
    DglMorphism::new(source.algebra().clone(), target.algebra().clone(), images)
}

fn residue_list(list: Vec<crate::lie::D2Residue>) -> Vec<(String, String)> {
    list.into_iter()
        .map(|r| (r.generator, show(&r.residue)))
        .collect()
}

/// Checks ∂² = 0, the Maurer–Cartan condition on vertices, the linear part
/// against the chain differential, that all p-faces carry the same model,
/// and that the cofaces from the back face model are chain maps.
pub fn check_model_axioms(model: &SimplexModel) -> CheckReport {
    let dgl = model.dgl();
    let mut report = CheckReport::default();
    report.push(CheckItem::new("d_squared", residue_list(dgl.check_d_squared())));

    let mut mc = Vec::new();
    for v in 0..=model.n {
        let a = model.vertex(v).unwrap();
        match mc_residue(dgl, &a) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => mc.push((format!("a{v}"), show(&r))),
            Err(e) => mc.push((format!("a{v}"), e.to_string())),
        }
    }
    report.push(CheckItem::new("mc_vertices", mc));

    let mut lin = Vec::new();
    for (i, f) in model.faces.iter().enumerate() {
        let expected = model.chain_differential(f);
        let got = dgl.diff_of(i).length_part(1);
        if got != expected {
            lin.push((dgl.generators()[i].name.clone(), show(&(&got - &expected))));
        }
    }
    report.push(CheckItem::new("linear_part", lin));

    // every p-face carries the model found on the face 0…p
    let mut faces_item = Vec::new();
    for p in 1..model.n {
        let back: Face = (0..=p).collect();
        let reference = match restrict_to_face(model, &back) {
            Ok(r) => r,
            Err(e) => {
                faces_item.push((format!("face {back:?}"), e.to_string()));
                continue;
            }
        };
        for f in model.faces.iter().filter(|f| f.len() == p + 1) {
            let copied = super::simplex::onto_face(
                reference.top_differential(),
                &reference.faces,
                f,
                model.algebra(),
                &model.index,
            );
            let actual = dgl.diff_of(model.index[f]);
            match copied {
                Ok(c) if &c == actual => {}
                Ok(c) => faces_item.push((
                    dgl.generators()[model.index[f]].name.clone(),
                    show(&(actual - &c)),
                )),
                Err(e) => faces_item.push((format!("face {f:?}"), e.to_string())),
            }
        }
    }
    report.push(CheckItem::new("faces_agree", faces_item));

    let mut cofaces = Vec::new();
    if model.n >= 1 {
        let back: Face = (0..model.n).collect();
        match restrict_to_face(model, &back) {
            Err(e) => cofaces.push(("back face".to_string(), e.to_string())),
            Ok(reference) => {
                for i in 0..=model.n {
                    let res = coface(i, &reference, model)
                        .and_then(|d| d.chain_map_residues(reference.dgl(), dgl));
                    match res {
                        Ok(list) => cofaces.extend(
                            residue_list(list)
                                .into_iter()
                                .map(|(g, r)| (format!("delta{i}({g})"), r)),
                        ),
                        Err(e) => cofaces.push((format!("delta{i}"), e.to_string())),
                    }
                }
            }
        }
    }
    report.push(CheckItem::new("cofaces_chain_maps", cofaces));
    report
}

/// Which generators other than the top one have a₀-twisted differential
/// involving the top cell; an inductive model has none, and the top cell's
/// own twisted differential must avoid it as well.
pub fn inductive_property(model: &SimplexModel) -> CheckItem {
    let a0 = model.vertex(0).unwrap();
    let twisted = crate::series::twist_unchecked(model.dgl(), &a0);
    let top = model.top_index() as Letter;
    let bad = twisted
        .diff_table()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.support().contains(&top))
        .map(|(i, d)| (model.dgl().generators()[i].name.clone(), show(d)))
        .collect();
    CheckItem::new("inductive", bad)
}

fn compare(name: String, f: &DglMorphism, g: &DglMorphism, out: &mut Vec<(String, String)>) {
    for (i, (x, y)) in f.images().iter().zip(g.images()).enumerate() {
        if x != y {
            out.push((
                format!("{name} on {}", f.source().name_of(i as Letter)),
                show(&(x - y)),
            ));
        }
    }
}

/// Chain-map property of all cofaces and codegeneracies in the family and
/// the cosimplicial identities among them.
pub fn check_cosimplicial_identities(family: &[SimplexModel]) -> Result<CheckReport> {
    let top = family.len().saturating_sub(1);
    let d = |i: usize, n: usize| coface(i, &family[n - 1], &family[n]);
    let s = |j: usize, n: usize| codegeneracy(j, &family[n + 1], &family[n]);
    let symmetric = family.iter().all(|m| m.flavor == Flavor::Symmetric);
    let mut report = CheckReport::default();

    let mut chain = Vec::new();
    for n in 1..=top {
        for i in 0..=n {
            let m = d(i, n)?;
            for (g, r) in residue_list(m.chain_map_residues(family[n - 1].dgl(), family[n].dgl())?) {
                chain.push((format!("delta{i}:{}->{n} {g}", n - 1), r));
            }
        }
        if symmetric {
            for j in 0..n {
                let m = s(j, n - 1)?;
                for (g, r) in residue_list(m.chain_map_residues(family[n].dgl(), family[n - 1].dgl())?) {
                    chain.push((format!("sigma{j}:{n}->{} {g}", n - 1), r));
                }
            }
        }
    }
    report.push(CheckItem::new("chain_maps", chain));

    // δʲδⁱ = δⁱδʲ⁻¹ for i < j, as maps ℒ_{n−1} → ℒ_{n+1}
    let mut dd = Vec::new();
    for n in 1..top {
        for j in 0..=n + 1 {
            for i in 0..j {
                let lhs = d(j, n + 1)?.compose(&d(i, n)?)?;
                let rhs = d(i, n + 1)?.compose(&d(j - 1, n)?)?;
                compare(format!("d{j}d{i} (n={n})"), &lhs, &rhs, &mut dd);
            }
        }
    }
    report.push(CheckItem::new("delta_delta", dd));

    if symmetric {
        // σʲσⁱ = σⁱσʲ⁺¹ for i ≤ j, as maps ℒ_{n+2} → ℒₙ
        let mut ss = Vec::new();
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = s(j, n)?.compose(&s(i, n + 1)?)?;
                    let rhs = s(i, n)?.compose(&s(j + 1, n + 1)?)?;
                    compare(format!("s{j}s{i} (n={n})"), &lhs, &rhs, &mut ss);
                }
            }
        }
        report.push(CheckItem::new("sigma_sigma", ss));

        // σʲδⁱ on ℒₙ
        let mut sd = Vec::new();
        for (n, model) in family.iter().enumerate().take(top) {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = s(j, n)?.compose(&d(i, n + 1)?)?;
                    let rhs = if i == j || i == j + 1 {
                        let alg = model.algebra();
                        let ids = (0..alg.rank()).map(|g| alg.gen(g)).collect();
                        DglMorphism::new(alg.clone(), alg.clone(), ids)?
                    } else if i < j {
                        d(i, n)?.compose(&s(j - 1, n - 1)?)?
                    } else {
                        d(i - 1, n)?.compose(&s(j, n - 1)?)?
                    };
                    compare(format!("s{j}d{i} (n={n})"), &lhs, &rhs, &mut sd);
                }
            }
        }
        report.push(CheckItem::new("sigma_delta", sd));
    }
    Ok(report)
}
