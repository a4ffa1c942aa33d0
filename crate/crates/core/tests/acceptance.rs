//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dglkit_core::complex::{minimal_model, model_of_complex, parse_complex};
use dglkit_core::homology::{
    invariant_linear_homology, linear_homology, malcev_tower, pi_n, verify_simplex, PiGroup,
};
use dglkit_core::lie::lyndon_basis;
use dglkit_core::models::{
    barycentre, barycentric_mc, build_model, check_cosimplicial_identities, check_model_axioms,
    equivariance_residues, inductive_property, ls_interval, ls_interval_alternate,
    subdivision_morphism, symmetric_family, tetra_model, triangle_model, Flavor, SimplexModel,
};
use dglkit_core::scalar::{int, ratio};
use dglkit_core::series::{bch, bch_many, exp_ad, is_mc, twist};
use dglkit_core::whitney::{check_whitney, whitney_i, Cochain, PolyForm};
use dglkit_core::{LieElement, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::prop;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use common::*;

type Outcome = Result<(), Box<dyn std::error::Error>>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn axioms_pass(m: &SimplexModel) -> Outcome {
    let report = check_model_axioms(m);
    let failed: Vec<_> = report.failures().map(|f| f.name.clone()).collect();
    ensure(failed.is_empty(), || format!("n = {} axioms failed: {failed:?}", m.n()))
}

// Non-commutative polynomials over ℚ in letters 0, 1, truncated by length.
type Poly = BTreeMap<Vec<u16>, Scalar>;

fn poly_mul(a: &Poly, b: &Poly, max: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= max {
                let w: Vec<u16> = u.iter().chain(v).copied().collect();
                *out.entry(w).or_insert_with(Scalar::zero) += x * y;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_exp(x: &Poly, max: usize) -> Poly {
    let mut out: Poly = [(vec![], Scalar::one())].into();
    let mut power = out.clone();
    for k in 1..=max {
        power = poly_mul(&power, x, max);
        for (w, c) in &power {
            *out.entry(w.clone()).or_insert_with(Scalar::zero) += c / int(factorial(k));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_log(g: &Poly, max: usize) -> Poly {
    let mut u = g.clone();
    u.remove(&vec![]);
    let mut out = Poly::new();
    let mut power: Poly = [(vec![], Scalar::one())].into();
    for k in 1..=max {
        power = poly_mul(&power, &u, max);
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        for (w, c) in &power {
            *out.entry(w.clone()).or_insert_with(Scalar::zero) += c * &sign / int(k as i64);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn as_poly(x: &LieElement) -> Poly {
    x.tensor().terms().iter().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect()
}

fn bch_coefficients() -> Outcome {
    let dgl = free(&[("x", 0), ("y", 0)], 3);
    let (x, y) = (dgl.gen(0), dgl.gen(1));
    let z = bch(&x, &y)?;
    let xy = x.bracket(&y)?;
    let mut expected = &x + &y;
    for (c, term) in [(ratio(1, 2), xy.clone()), (ratio(1, 12), x.bracket(&xy)?), (ratio(-1, 12), y.bracket(&xy)?)] {
        expected.add_scaled(&term, &c);
    }
    ensure(z == expected, || format!("bch = {z}"))?;
    let single = |l: u16| -> Poly { [(vec![l], Scalar::one())].into() };
    let oracle = poly_log(&poly_mul(&poly_exp(&single(0), 3), &poly_exp(&single(1), 3), 3), 3);
    ensure(as_poly(&z) == oracle, || "bch differs from log(exp x exp y)".into())
}

fn ls_interval_structure() -> Outcome {
    let m = ls_interval(6)?;
    let (a0, a1, e) = (m.vertex(0)?, m.vertex(1)?, m.face(&[0, 1])?);
    ensure(is_mc(m.dgl(), &a0)? && is_mc(m.dgl(), &a1)?, || "vertices are not MC".into())?;
    let d = m.top_differential();
    ensure(d.length_part(1) == &a1 - &a0, || format!("linear part {}", d.length_part(1)))?;
    let quad = e.bracket(&(&a0 + &a1))?.scale(&ratio(1, 2));
    ensure(d.length_part(2) == quad, || format!("quadratic part {}", d.length_part(2)))?;
    ensure(m.dgl().check_d_squared().is_empty(), || "∂² ≠ 0".into())?;
    ensure(m.dgl().diff_table() == ls_interval_alternate(6)?.dgl().diff_table(), || {
        "the two closed forms differ".into()
    })
}

fn random_elements(count: usize) -> Vec<(LieElement, LieElement)> {
    let dgl = free(&[("x", 0), ("y", 0), ("z", 0)], 5);
    let basis: Vec<LieElement> = (1..=3).flat_map(|k| lyndon_basis(dgl.algebra(), 0, k)).map(|b| b.element).collect();
    let combo = prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        cs.iter().zip(&basis).fold(dgl.algebra().zero(), |mut acc, (c, b)| {
            acc.add_scaled(b, &int(*c));
            acc
        })
    });
    let mut runner = TestRunner::deterministic();
    let pair = (combo.clone(), combo);
    (0..count).map(|_| pair.new_tree(&mut runner).unwrap().current()).collect()
}

fn conjugation_is_exp_ad() -> Outcome {
    for (i, (x, y)) in random_elements(20).into_iter().enumerate() {
        let lhs = bch_many(&[x.clone(), y.clone(), -x.clone()])?;
        let rhs = exp_ad(&x, &y)?;
        ensure(lhs == rhs, || format!("pair {i}: {x} / {y}"))?;
    }
    Ok(())
}

fn edge_intertwines() -> Outcome {
    let m = ls_interval(5)?;
    let (a0, a1, e) = (m.vertex(0)?, m.vertex(1)?, m.face(&[0, 1])?);
    let d0 = twist(m.dgl(), &a0)?;
    let d1 = twist(m.dgl(), &a1)?;
    for i in 0..3 {
        let g = m.dgl().gen(i);
        let lhs = d0.apply_differential(&exp_ad(&e, &g)?)?;
        let rhs = exp_ad(&e, &d1.apply_differential(&g)?)?;
        ensure(lhs == rhs, || format!("generator {i}"))?;
    }
    Ok(())
}

fn subdivision() -> Outcome {
    let (interval, target, gamma) = subdivision_morphism(5)?;
    let res = gamma.chain_map_residues(interval.dgl(), &target)?;
    ensure(res.is_empty(), || format!("{} residues", res.len()))
}

fn triangle() -> Outcome {
    let m = triangle_model(5)?;
    let f = |v: &[usize]| m.face(v).unwrap();
    let lhs = twist(m.dgl(), &f(&[0]))?.diff_of(m.top_index()).clone();
    let rhs = bch_many(&[f(&[0, 1]), f(&[1, 2]), -f(&[0, 2])])?;
    ensure(lhs == rhs, || "∂_{a0} a012 ≠ bch(a01, a12, −a02)".into())?;
    let linear = &(&f(&[0, 1]) + &f(&[1, 2])) - &f(&[0, 2]);
    ensure(m.top_differential().length_part(1) == linear, || "linear part".into())?;
    axioms_pass(&m)
}

fn higher_simplices() -> Outcome {
    let tetra = tetra_model(4)?;
    ensure(tetra.dgl().check_d_squared().is_empty(), || "tetrahedron ∂² ≠ 0".into())?;
    axioms_pass(&tetra)?;
    for (n, trunc) in [(3, 4), (4, 3)] {
        let m = build_model(n, trunc, Flavor::Inductive)?;
        axioms_pass(&m)?;
        ensure(inductive_property(&m).passed, || format!("inductive property n = {n}"))?;
    }
    Ok(())
}

fn symmetric() -> Outcome {
    let family = symmetric_family(3, 3)?;
    for m in &family {
        let res = equivariance_residues(m);
        ensure(res.is_empty(), || format!("n = {}: {} equivariance residues", m.n(), res.len()))?;
    }
    let report = check_cosimplicial_identities(&family)?;
    let failed: Vec<_> = report.failures().map(|f| f.name.clone()).collect();
    ensure(failed.is_empty(), || format!("cosimplicial identities failed: {failed:?}"))
}

fn invariant_homology() -> Outcome {
    for n in 0..=3 {
        let m = build_model(n, 2, Flavor::Seed)?;
        let report = invariant_linear_homology(&m)?;
        let dims: Vec<_> = report.dims().into_iter().filter(|&(_, d)| d > 0).collect();
        ensure(dims == vec![(-1, 1)], || format!("n = {n}: {dims:?}"))?;
        // Σaᵢ/(n+1) computed directly from the vertex generators
        let mut expected = LieElement::zero(report.entry(-1).unwrap().representatives[0].algebra());
        let alg = expected.algebra().clone();
        for i in 0..=n {
            expected.add_scaled(&alg.named(&format!("a{i}"))?, &ratio(1, n as i64 + 1));
        }
        let rep = &report.entry(-1).unwrap().representatives[0];
        ensure(rep == &expected, || format!("n = {n}: representative {rep}"))?;
    }
    Ok(())
}

fn barycentric() -> Outcome {
    for n in 0..=3 {
        let m = build_model(n, 4, Flavor::Seed)?;
        let z = barycentric_mc(&m)?;
        ensure(is_mc(m.dgl(), &z)?, || format!("n = {n}: not MC"))?;
        let mut expected = m.algebra().zero();
        for i in 0..=n {
            expected.add_scaled(&m.vertex(i)?, &ratio(1, n as i64 + 1));
        }
        ensure(z.length_part(1) == expected && barycentre(&m) == expected, || format!("n = {n}: linear part"))?;
    }
    Ok(())
}

fn complex_homology() -> Outcome {
    let torus = torus();
    let corpus = [
        ("point", POINT),
        ("triangle", TRIANGLE),
        ("circle", CIRCLE),
        ("figure eight", FIGURE_EIGHT),
        ("circle ∨ sphere", CIRCLE_WEDGE_SPHERE),
        ("torus", torus.as_str()),
    ];
    for (name, text) in corpus {
        let betti = betti_oracle(text);
        let report = linear_homology(model_of_complex(&parse_complex(text)?, 1)?.dgl())?;
        let got: Vec<usize> = (0..betti.len() as i32).map(|p| report.dim(p - 1)).collect();
        let extra = report.dims().iter().any(|(&d, &k)| k > 0 && (d < -1 || d >= betti.len() as i32 - 1));
        ensure(got == betti && !extra && report.consistent, || format!("{name}: {got:?} vs {betti:?}"))?;
    }
    Ok(())
}

fn minimal_models() -> Outcome {
    let summary = |text: &str, n: usize| -> Result<(Vec<i32>, bool), Box<dyn std::error::Error>> {
        let mm = minimal_model(&parse_complex(text)?, 0, n)?;
        ensure(mm.chain_map_failures.is_empty(), || "the reduction is not a chain map".into())?;
        let degs = mm.dgl.generators().iter().map(|g| g.degree).collect();
        Ok((degs, mm.dgl.diff_table().iter().all(|d| d.is_zero())))
    };
    ensure(summary(CIRCLE, 4)? == (vec![0], true), || "circle".into())?;
    ensure(summary(CIRCLE_WEDGE_SPHERE, 3)? == (vec![0, 1], true), || "circle ∨ sphere".into())?;
    ensure(summary(TRIANGLE, 4)?.0.is_empty(), || "triangle".into())
}

fn malcev() -> Outcome {
    let tower = malcev_tower(&parse_complex(FIGURE_EIGHT)?, 0, 5)?;
    let expected: Vec<usize> = (1..=5).map(|k| witt(2, k) as usize).collect();
    ensure(tower.layer_dims == expected, || format!("layers {:?} vs {expected:?}", tower.layer_dims))?;
    ensure(tower.surjective.iter().all(|&s| s), || "a projection is not onto".into())?;
    for q in &tower.levels {
        let samples = q.sample_elements();
        ensure(q.associativity_failures(&samples)?.is_empty(), || format!("N = {}: not associative", q.truncation))?;
        ensure(q.table_mismatches().is_empty(), || format!("N = {}: table mismatch", q.truncation))?;
    }
    Ok(())
}

fn homotopy_groups() -> Outcome {
    let odd = free(&[("y", 1)], 4);
    ensure(pi_n(&odd, 2)?.dim() == 1, || "π₂ ≠ ℚ".into())?;
    let PiGroup::Fundamental(q) = pi_n(&free(&[("x", 0), ("y", 0)], 2), 1)? else {
        return Err("π₁ is not a group".into());
    };
    ensure(!q.is_abelian(), || "π₁ is abelian".into())?;

    let model = triangle_model(4)?;
    let target = free(&[("g", 0), ("f", 0)], 4);
    let (g, f) = (target.gen(0), target.gen(1));
    let assign = |a02: LieElement| -> Vec<LieElement> {
        model
            .faces()
            .iter()
            .map(|face| match face.as_slice() {
                [0, 1] => g.clone(),
                [1, 2] => f.clone(),
                [0, 2] => a02.clone(),
                _ => target.algebra().zero(),
            })
            .collect()
    };
    ensure(verify_simplex(&model, &target, &assign(bch(&g, &f)?))?, || "2-simplex rejected".into())?;
    ensure(!verify_simplex(&model, &target, &assign(&g + &f))?, || "corrupted 2-simplex accepted".into())
}

fn whitney() -> Outcome {
    for n in 0..=3 {
        let report = check_whitney(n)?;
        for name in ["p_after_i_is_identity", "d_of_elementary_form", "unit_integral", "top_form"] {
            let item = report.items.iter().find(|i| i.name == name).ok_or(format!("no check {name}"))?;
            ensure(item.passed, || format!("n = {n}: {name}"))?;
        }
        let mut vol = PolyForm::constant(n, int(factorial(n)));
        for j in 1..=n {
            vol = vol.wedge(&PolyForm::dt(n, j)?);
        }
        let top: Vec<usize> = (0..=n).collect();
        ensure(whitney_i(&Cochain::basis(&top), n)? == vol, || format!("n = {n}: top form"))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let run = || -> Result<String, Box<dyn std::error::Error>> {
        let m = build_model(2, 4, Flavor::Inductive)?;
        let report = check_model_axioms(&SimplexModel::from_dgl(dglkit_core::FreeCompleteDgl::from_json(&m.to_json()?)?)?);
        Ok(m.to_json()? + &serde_json::to_string(&report)?)
    };
    ensure(run()? == run()?, || "outputs differ".into())
}

fn main() {
    let criteria: [Criterion; 16] = [
        ("bch coefficients through length 3", 1, bch_coefficients),
        ("LS interval at N = 6", 5, ls_interval_structure),
        ("bch(x, y, -x) = exp(ad x)(y)", 60, conjugation_is_exp_ad),
        ("edge exponential intertwines twisted differentials", 60, edge_intertwines),
        ("subdivision is a chain map", 60, subdivision),
        ("triangle transgression and axioms", 60, triangle),
        ("tetrahedron and inductive models", 120, higher_simplices),
        ("symmetric models and cosimplicial identities", 60, symmetric),
        ("invariant linear homology", 60, invariant_homology),
        ("barycentric MC element", 60, barycentric),
        ("linear homology of complexes", 60, complex_homology),
        ("minimal models", 60, minimal_models),
        ("Malcev tower of the figure eight", 300, malcev),
        ("homotopy groups and simplices", 60, homotopy_groups),
        ("Whitney forms", 60, whitney),
        ("determinism", 60, determinism),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()).into())
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= Duration::from_secs(limit), || format!("over the {limit}s limit"))
        });
        match outcome {
            Ok(()) => println!("PASS  {name} ({:.2}s)", took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name} ({:.2}s): {e}", took.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
