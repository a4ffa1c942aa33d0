//! Workloads shared by the benchmarks.

use dglkit_core::complex::{parse_complex, SimplicialComplex};
use dglkit_core::homology::malcev_tower;
use dglkit_core::models::{build_model, build_symmetric_model, check_model_axioms, Flavor};
use dglkit_core::series::bch;
use dglkit_core::{FreeLieAlgebra, Generator};

pub const FIGURE_EIGHT: &str = "0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n";

pub fn figure_eight() -> SimplicialComplex {
    parse_complex(FIGURE_EIGHT).expect("valid complex")
}

/// Number of Lyndon terms of x*y on two degree-0 generators at truncation n.
pub fn bch_two(n: usize) -> usize {
    let alg = FreeLieAlgebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)], n)
        .expect("valid algebra");
    let z = bch(&alg.gen(0), &alg.gen(1)).expect("degree 0");
    dglkit_core::lie::to_bracket_terms(&z).expect("Lie element").len()
}

/// Build and check a simplex model; returns whether the checks passed.
pub fn build_and_check(n: usize, truncation: usize, flavor: Flavor) -> bool {
    let model = build_model(n, truncation, flavor).expect("construction succeeds");
    check_model_axioms(&model).passed()
}

pub fn symmetric(n: usize, truncation: usize) -> usize {
    build_symmetric_model(n, truncation)
        .expect("construction succeeds")
        .faces()
        .len()
}

/// H₀ dimensions per length of the figure-eight tower.
pub fn figure_eight_tower(n: usize) -> Vec<usize> {
    malcev_tower(&figure_eight(), 0, n).expect("connected").layer_dims
}
