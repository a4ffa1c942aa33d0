//! Polynomial forms on simplices, Whitney elementary forms and the maps
//! i: C*(Δⁿ) → A_PL(Δⁿ), p: A_PL(Δⁿ) → C*(Δⁿ).

mod form;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::lie::tensor::add_term;
use crate::models::{simplex_faces, sort_sign, CheckItem, CheckReport, Face};
use crate::scalar::{factorial, format_scalar, Scalar};

pub use form::{Monomial, PolyForm};
use form::check_face;

/// A simplicial cochain on Δⁿ in the basis α_F dual to the faces F.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    pub values: BTreeMap<Face, Scalar>,
}

impl Cochain {
    pub fn basis(face: &[usize]) -> Self {
        let mut values = BTreeMap::new();
        values.insert(face.to_vec(), Scalar::from_integer(1.into()));
        Cochain { values }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Scalar) {
        for (f, x) in &other.values {
            add_term(&mut self.values, f.clone(), x * c);
        }
    }

    /// δα_F = Σ_{q ∉ F} ± α_{qF}, with qF sorted and the sign of the sort.
    pub fn d(&self, n: usize) -> Cochain {
        let mut out = Cochain::default();
        for (f, c) in &self.values {
            for q in (0..=n).filter(|q| !f.contains(q)) {
                let mut g = vec![q];
                g.extend(f);
                let s = sort_sign(&g);
                g.sort_unstable();
                add_term(&mut out.values, g, c * Scalar::from_integer(s.into()));
            }
        }
        out
    }
}

/// ω_{i₀…i_k} = k! Σⱼ (−1)ʲ t_{iⱼ} dt_{i₀}⋯(dt_{iⱼ} omitted)⋯dt_{i_k}.
pub fn elementary_form(face: &[usize], n: usize) -> Result<PolyForm> {
    check_face(face, n)?;
    Ok(alternating_form(face, n))
}

// the same formula for any sequence of distinct vertices
fn alternating_form(seq: &[usize], n: usize) -> PolyForm {
    let k = seq.len() - 1;
    let mut out = PolyForm::zero(n);
    for j in 0..=k {
        let mut term = PolyForm::t(n, seq[j]).expect("vertex in range");
        for (r, &v) in seq.iter().enumerate() {
            if r != j {
                term = term.wedge(&PolyForm::dt(n, v).expect("vertex in range"));
            }
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out = &out + &term.scale(&Scalar::from_integer(sign.into()));
    }
    out.scale(&Scalar::from_integer(factorial(k)))
}

pub fn whitney_i(c: &Cochain, n: usize) -> Result<PolyForm> {
    let mut out = PolyForm::zero(n);
    for (f, x) in &c.values {
        out = &out + &elementary_form(f, n)?.scale(x);
    }
    Ok(out)
}

/// I_F(ω): the integral of ω over the face F.
pub fn integrate(omega: &PolyForm, face: &[usize]) -> Result<Scalar> {
    Ok(omega.restrict(face)?.integrate_top())
}

/// p(ω) = Σ_F I_F(ω) α_F over all faces of Δⁿ.
pub fn integrate_p(omega: &PolyForm) -> Result<Cochain> {
    let mut out = Cochain::default();
    for f in simplex_faces(omega.dimension()) {
        let v = integrate(omega, &f)?;
        if !v.is_zero() {
            out.values.insert(f, v);
        }
    }
    Ok(out)
}

fn face_label(f: &[usize]) -> String {
    f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")
}

/// Sample forms: every elementary form and every t^e dt_J with |e| ≤ 2.
fn sample_forms(n: usize) -> Vec<PolyForm> {
    let mut out: Vec<PolyForm> = simplex_faces(n).iter().map(|f| alternating_form(f, n)).collect();
    let mut exps: Vec<Vec<u32>> = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        exps.push(e);
        for j in i..n {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            exps.push(e);
        }
    }
    for e in &exps {
        for mask in 0u32..(1 << n) {
            let mut f = PolyForm::one(n);
            for (i, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    f = f.wedge(&PolyForm::t(n, i + 1).unwrap());
                }
            }
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    f = f.wedge(&PolyForm::dt(n, j + 1).unwrap());
                }
            }
            out.push(f);
        }
    }
    out
}

/// The identities relating forms, cochains, i and p on Δⁿ.
pub fn check_whitney(n: usize) -> Result<CheckReport> {
    let faces = simplex_faces(n);
    let mut report = CheckReport::default();

    let mut bad = Vec::new();
    for f in &faces {
        let pi = integrate_p(&elementary_form(f, n)?)?;
        if pi != Cochain::basis(f) {
            bad.push((face_label(f), show_cochain(&pi)));
        }
    }
    report.push(CheckItem::new("p_after_i_is_identity", bad));

    let mut bad = Vec::new();
    for f in &faces {
        let lhs = elementary_form(f, n)?.d();
        let mut rhs = PolyForm::zero(n);
        for q in (0..=n).filter(|q| !f.contains(q)) {
            let mut seq = vec![q];
            seq.extend(f);
            rhs = &rhs + &alternating_form(&seq, n);
        }
        let r = &lhs - &rhs;
        if !r.is_zero() {
            bad.push((face_label(f), r.to_string()));
        }
    }
    report.push(CheckItem::new("d_of_elementary_form", bad));

    let mut bad = Vec::new();
    for f in &faces {
        let c = Cochain::basis(f);
        let r = &whitney_i(&c, n)?.d() - &whitney_i(&c.d(n), n)?;
        if !r.is_zero() {
            bad.push((face_label(f), r.to_string()));
        }
    }
    report.push(CheckItem::new("i_chain_map", bad));

    let samples = sample_forms(n);
    let mut bad = Vec::new();
    for (s, w) in samples.iter().enumerate() {
        let lhs = integrate_p(&w.d())?;
        let rhs = integrate_p(w)?.d(n);
        if lhs != rhs {
            bad.push((format!("sample {s}: {w}"), show_cochain(&lhs)));
        }
    }
    report.push(CheckItem::new("p_chain_map", bad));

    let mut bad = Vec::new();
    for f in &faces {
        let v = integrate(&elementary_form(f, n)?, f)?;
        if v != Scalar::from_integer(1.into()) {
            bad.push((face_label(f), format_scalar(&v)));
        }
    }
    report.push(CheckItem::new("unit_integral", bad));

    let top: Face = (0..=n).collect();
    let mut expected = PolyForm::constant(n, Scalar::from_integer(factorial(n)));
    for j in 1..=n {
        expected = expected.wedge(&PolyForm::dt(n, j)?);
    }
    let r = &elementary_form(&top, n)? - &expected;
    let bad = if r.is_zero() {
        Vec::new()
    } else {
        vec![(face_label(&top), r.to_string())]
    };
    report.push(CheckItem::new("top_form", bad));

    // ω_F restricted to a face G missing a vertex of F vanishes
    let mut bad = Vec::new();
    for f in &faces {
        let w = elementary_form(f, n)?;
        for g in faces.iter().filter(|g| f.iter().any(|v| !g.contains(v))) {
            let r = w.restrict(g)?;
            if !r.is_zero() {
                bad.push((format!("{} on {}", face_label(f), face_label(g)), r.to_string()));
            }
        }
    }
    report.push(CheckItem::new("face_vanishing", bad));

    let mut bad = Vec::new();
    for (s, w) in samples.iter().enumerate() {
        let r = w.d().d();
        if !r.is_zero() {
            bad.push((format!("sample {s}"), r.to_string()));
        }
    }
    report.push(CheckItem::new("d_squared", bad));

    let mut bad = Vec::new();
    let few: Vec<&PolyForm> = samples.iter().step_by(3).take(12).collect();
    for (a, x) in few.iter().enumerate() {
        for (b, y) in few.iter().enumerate() {
            let (p, q) = (form_degree(x), form_degree(y));
            let (Some(p), Some(q)) = (p, q) else { continue };
            let xy = x.wedge(y);
            let yx = y.wedge(x);
            let yx = if p * q % 2 == 1 { yx.scale(&-Scalar::from_integer(1.into())) } else { yx };
            if xy != yx {
                bad.push((format!("samples {a},{b}"), (&xy - &yx).to_string()));
            }
            let sign = if p % 2 == 1 { -Scalar::from_integer(1.into()) } else { Scalar::from_integer(1.into()) };
            let leibniz = &(&xy.d() - &x.d().wedge(y)) - &x.wedge(&y.d()).scale(&sign);
            if !leibniz.is_zero() {
                bad.push((format!("leibniz {a},{b}"), leibniz.to_string()));
            }
        }
    }
    report.push(CheckItem::new("graded_commutative_and_leibniz", bad));
    Ok(report)
}

fn form_degree(w: &PolyForm) -> Option<usize> {
    let mut degs = w.terms().keys().map(|m| m.form_degree());
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

fn show_cochain(c: &Cochain) -> String {
    if c.values.is_empty() {
        return "0".into();
    }
    c.values
        .iter()
        .map(|(f, x)| format!("{} α{}", format_scalar(x), face_label(f)))
        .collect::<Vec<_>>()
        .join(" + ")
}
