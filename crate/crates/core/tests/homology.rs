use dglkit_core::complex::{parse_complex, SimplicialComplex};
use dglkit_core::homology::{
    gauge_equivalent_certificate, homology_all, malcev_tower, pi_n, verify_simplex, PiGroup,
};
use dglkit_core::models::{ls_interval, point_model, triangle_model};
use dglkit_core::series::{bch, twist};
use dglkit_core::{Error, LieElement};

mod common;
use common::{free, witt, FIGURE_EIGHT};

fn cx(text: &str) -> SimplicialComplex {
    parse_complex(text).unwrap()
}

#[test]
fn contractible_models_are_acyclic_after_twisting() {
    for model in [point_model(3).unwrap(), ls_interval(3).unwrap(), triangle_model(3).unwrap()] {
        let a0 = model.vertex(0).unwrap();
        let twisted = twist(model.dgl(), &a0).unwrap();
        let report = homology_all(&twisted).unwrap();
        assert!(report.consistent);
        assert!(report.dims().values().all(|&d| d == 0), "n = {}: {:?}", model.n(), report.dims());
    }
}

#[test]
fn untwisted_point_model_is_acyclic() {
    // ∂a0 = −½[a0,a0] pairs the only two nonzero chains
    let report = homology_all(point_model(4).unwrap().dgl()).unwrap();
    assert_eq!(report.dims().values().sum::<usize>(), 0);
}

#[test]
fn pi_two_of_one_odd_generator() {
    let dgl = free(&[("y", 1)], 4);
    match pi_n(&dgl, 2).unwrap() {
        PiGroup::Higher(e) => {
            assert_eq!(e.dim, 1);
            assert_eq!(e.representatives, vec![dgl.gen(0)]);
        }
        PiGroup::Fundamental(_) => panic!("π₂ is not the fundamental group"),
    }
    assert_eq!(pi_n(&dgl, 3).unwrap().dim(), 1, "[y,y] spans H₂");
}

#[test]
fn pi_one_of_two_even_generators() {
    for n in 1..=4usize {
        let dgl = free(&[("x", 0), ("y", 0)], n);
        let PiGroup::Fundamental(q) = pi_n(&dgl, 1).unwrap() else {
            panic!("π₁ should be fundamental")
        };
        let expected: i64 = (1..=n as i64).map(|k| witt(2, k)).sum();
        assert_eq!(q.dim() as i64, expected);
        assert_eq!(q.is_abelian(), n == 1);
        let samples = q.sample_elements();
        assert!(q.associativity_failures(&samples).unwrap().is_empty());
        assert!(q.inverse_failures(&samples).unwrap().is_empty());
        assert!(q.table_mismatches().is_empty());
    }
}

#[test]
fn pi_rejects_bad_input() {
    assert!(matches!(pi_n(&free(&[("x", 0)], 2), 0), Err(Error::Config(_))));
    assert!(matches!(pi_n(triangle_model(2).unwrap().dgl(), 1), Err(Error::Domain(_))));
}

fn triangle_assignment(a02: impl Fn(&LieElement, &LieElement) -> LieElement) -> (bool, usize) {
    let n = 4;
    let model = triangle_model(n).unwrap();
    let target = free(&[("g", 0), ("f", 0)], n);
    let (g, f) = (target.gen(0), target.gen(1));
    let zero = target.algebra().zero();
    let images: Vec<LieElement> = model
        .faces()
        .iter()
        .map(|face| match face.as_slice() {
            [0, 1] => g.clone(),
            [1, 2] => f.clone(),
            [0, 2] => a02(&g, &f),
            _ => zero.clone(),
        })
        .collect();
    (verify_simplex(&model, &target, &images).unwrap(), images.len())
}

#[test]
fn two_simplex_from_a_pair_of_loops() {
    let (ok, count) = triangle_assignment(|g, f| bch(g, f).unwrap());
    assert_eq!(count, 7);
    assert!(ok);
    let (ok, _) = triangle_assignment(|g, f| g + f);
    assert!(!ok, "g + f differs from bch(g, f) from length two on");
}

#[test]
fn verify_simplex_checks_truncations() {
    let model = triangle_model(2).unwrap();
    let target = free(&[("g", 0)], 3);
    let zero = target.algebra().zero();
    assert!(verify_simplex(&model, &target, &vec![zero; 7]).is_err());
}

#[test]
fn gauge_certificates() {
    let m = ls_interval(4).unwrap();
    let dgl = m.dgl();
    let (a0, a1, a01) = (m.vertex(0).unwrap(), m.vertex(1).unwrap(), m.face(&[0, 1]).unwrap());
    assert!(gauge_equivalent_certificate(dgl, &a1, &a0, &a01).unwrap());
    assert!(!gauge_equivalent_certificate(dgl, &a0, &a1, &a01).unwrap());
    let zero = dgl.algebra().zero();
    assert!(gauge_equivalent_certificate(dgl, &a0, &a0, &zero).unwrap());
    assert!(!gauge_equivalent_certificate(dgl, &a0, &a1, &zero).unwrap());
    assert!(matches!(
        gauge_equivalent_certificate(dgl, &a01, &a0, &zero),
        Err(Error::Domain(_))
    ));
}

#[test]
fn small_malcev_towers() {
    let circle = malcev_tower(&cx("0 1\n1 2\n0 2"), 0, 3).unwrap();
    assert_eq!(circle.layer_dims, vec![1, 0, 0]);
    assert!(circle.surjective.iter().all(|&s| s));
    assert!(circle.levels.iter().all(|l| l.is_abelian()));

    let disc = malcev_tower(&cx("0 1 2"), 0, 3).unwrap();
    assert_eq!(disc.layer_dims, vec![0, 0, 0]);

    assert!(matches!(malcev_tower(&cx("0\n1"), 0, 2), Err(Error::Domain(_))));
}

#[test]
fn figure_eight_tower_to_length_three() {
    let tower = malcev_tower(&cx(FIGURE_EIGHT), 0, 3).unwrap();
    let expected: Vec<usize> = (1..=3).map(|k| witt(2, k) as usize).collect();
    assert_eq!(tower.layer_dims, expected);
    assert!(tower.surjective.iter().all(|&s| s));
    let top = tower.levels.last().unwrap();
    assert!(!top.is_abelian());
    assert!(top.associativity_failures(&top.sample_elements()).unwrap().is_empty());
}
