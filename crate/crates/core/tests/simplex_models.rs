use dglkit_core::models::{
    barycentre, barycentric_mc, build_family, build_model, codegeneracy, build_symmetric_model, check_cosimplicial_identities,
    check_model_axioms, equivariance_residues, inductive_property, ls_interval,
    ls_interval_alternate, subdivision_morphism, symmetric_family, tetra_model, triangle_model,
    Flavor, SimplexModel,
};
use dglkit_core::scalar::ratio;
use dglkit_core::series::{bch_many, exp_ad, gauge, is_mc, twist};
use dglkit_core::FreeCompleteDgl;

fn assert_checks(model: &SimplexModel) {
    let report = check_model_axioms(model);
    let failures: Vec<_> = report.failures().map(|f| f.name.clone()).collect();
    assert!(failures.is_empty(), "failed: {failures:?}");
}

#[test]
fn ls_interval_low_order_terms() {
    let m = ls_interval(6).unwrap();
    let (a0, a1, e) = (m.vertex(0).unwrap(), m.vertex(1).unwrap(), m.face(&[0, 1]).unwrap());
    let d = m.top_differential();
    assert_eq!(d.length_part(1), &a1 - &a0);
    let expected = e.bracket(&(&a0 + &a1)).unwrap().scale(&ratio(1, 2));
    assert_eq!(d.length_part(2), expected);
    // ad_e^2 terms carry B₂/2! = 1/12
    let cube = e.bracket(&e.bracket(&(&a1 - &a0)).unwrap()).unwrap().scale(&ratio(1, 12));
    assert_eq!(d.length_part(3), cube);
    assert!(m.dgl().check_d_squared().is_empty());
    assert!(is_mc(m.dgl(), &a0).unwrap() && is_mc(m.dgl(), &a1).unwrap());
}

#[test]
fn ls_closed_forms_agree() {
    for n in 1..=6 {
        assert_eq!(
            ls_interval(n).unwrap().dgl().diff_table(),
            ls_interval_alternate(n).unwrap().dgl().diff_table()
        );
    }
}

#[test]
fn ls_edge_gauges_between_vertices() {
    let m = ls_interval(5).unwrap();
    let (a0, a1, e) = (m.vertex(0).unwrap(), m.vertex(1).unwrap(), m.face(&[0, 1]).unwrap());
    assert_eq!(gauge(m.dgl(), &e, &a1).unwrap(), a0);
}

#[test]
fn edge_exponential_intertwines_twisted_differentials() {
    let m = ls_interval(5).unwrap();
    let (a0, a1, e) = (m.vertex(0).unwrap(), m.vertex(1).unwrap(), m.face(&[0, 1]).unwrap());
    let d0 = twist(m.dgl(), &a0).unwrap();
    let d1 = twist(m.dgl(), &a1).unwrap();
    for i in 0..3 {
        let g = m.dgl().gen(i);
        let lhs = d0.apply_differential(&exp_ad(&e, &g).unwrap()).unwrap();
        let rhs = exp_ad(&e, &d1.apply_differential(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "generator {i}");
    }
}

#[test]
fn subdivision_is_a_chain_map() {
    let (interval, target, gamma) = subdivision_morphism(5).unwrap();
    assert!(gamma.chain_map_residues(interval.dgl(), &target).unwrap().is_empty());
}

#[test]
fn triangle_transgression() {
    let m = triangle_model(5).unwrap();
    let f = |v: &[usize]| m.face(v).unwrap();
    let twisted = twist(m.dgl(), &f(&[0])).unwrap();
    let lhs = twisted.diff_of(m.top_index()).clone();
    let rhs = bch_many(&[f(&[0, 1]), f(&[1, 2]), -f(&[0, 2])]).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.length_part(1), &(&f(&[1, 2]) - &f(&[0, 2])) + &f(&[0, 1]));
    assert_checks(&m);
}

#[test]
fn tetrahedron_and_inductive_models() {
    assert_checks(&tetra_model(4).unwrap());
    for (n, trunc) in [(2, 4), (3, 4), (4, 3)] {
        let m = build_model(n, trunc, Flavor::Inductive).unwrap();
        assert_checks(&m);
        assert!(inductive_property(&m).passed, "inductive n={n}");
        assert_checks(&build_model(n, trunc, Flavor::Seed).unwrap());
    }
}

#[test]
fn symmetric_family_is_equivariant_and_cosimplicial() {
    let family = symmetric_family(3, 3).unwrap();
    for m in &family {
        assert!(equivariance_residues(m).is_empty(), "n={}", m.n());
        assert_checks(m);
    }
    let report = check_cosimplicial_identities(&family).unwrap();
    assert!(report.passed(), "{:?}", report.failures().map(|f| &f.name).collect::<Vec<_>>());
}

#[test]
fn seed_family_has_cofaces_only() {
    let family = build_family(2, 3, Flavor::Seed).unwrap();
    let report = check_cosimplicial_identities(&family).unwrap();
    let names: Vec<_> = report.items.iter().map(|i| i.name.as_str()).collect();
    assert_eq!(names, ["chain_maps", "delta_delta"]);
    assert!(report.passed());
    assert!(codegeneracy(0, &family[2], &family[1]).is_err());
}

#[test]
fn barycentric_element_is_mc() {
    for n in 0..=3 {
        let m = build_model(n, 4, Flavor::Seed).unwrap();
        let z = barycentric_mc(&m).unwrap();
        assert!(is_mc(m.dgl(), &z).unwrap(), "n={n}");
        assert_eq!(z.length_part(1), barycentre(&m));
    }
}

#[test]
fn serialization_round_trips() {
    let m = build_symmetric_model(2, 3).unwrap();
    let text = m.to_json().unwrap();
    let back = FreeCompleteDgl::from_json(&text).unwrap();
    assert_eq!(back.diff_table(), m.dgl().diff_table());
    let again = SimplexModel::from_dgl(back).unwrap().to_json().unwrap();
    // the flavor tag is the only difference after reloading
    assert_eq!(again.replace("\"external\"", "\"symmetric\""), text);
}

#[test]
fn corrupted_model_fails_d_squared() {
    let m = ls_interval(3).unwrap();
    let text = m.to_json().unwrap().replacen("\"1/12\"", "\"1/11\"", 1);
    let dgl = FreeCompleteDgl::from_json(&text).unwrap();
    assert!(!dgl.check_d_squared().is_empty());
}
