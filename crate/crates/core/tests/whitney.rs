use dglkit_core::scalar::{int, ratio};
use dglkit_core::whitney::{check_whitney, elementary_form, integrate, integrate_p, whitney_i, Cochain, PolyForm};
use dglkit_core::Scalar;
use num_traits::Zero;
use proptest::prelude::*;

fn t(n: usize, i: usize) -> PolyForm {
    PolyForm::t(n, i).unwrap()
}

fn dt(n: usize, i: usize) -> PolyForm {
    PolyForm::dt(n, i).unwrap()
}

fn power(n: usize, i: usize, e: u32) -> PolyForm {
    (0..e).fold(PolyForm::one(n), |f, _| f.wedge(&t(n, i)))
}

/// ∫₀¹ t₁ᵃ ∫₀^{1−t₁} t₂ᵇ dt₂ dt₁ = ∫₀¹ t₁ᵃ (1 − t₁)^{b+1} / (b+1) dt₁, with
/// the binomial expansion done by hand.
fn planar_oracle(a: u32, b: u32) -> Scalar {
    let mut total = Scalar::zero();
    let mut binom = int(1);
    for k in 0..=b + 1 {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        total += sign * &binom * ratio(1, (a + k + 1) as i64);
        binom = binom * int((b + 1 - k) as i64) / int((k + 1) as i64);
    }
    total / int((b + 1) as i64)
}

#[test]
fn checker_passes_up_to_dimension_three() {
    for n in 0..=3 {
        let report = check_whitney(n).unwrap();
        assert!(report.passed(), "n = {n}: {:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn interval_forms() {
    // ω₀₁ = t₀dt₁ − t₁dt₀ = (1 − t)dt + t dt
    assert_eq!(elementary_form(&[0, 1], 1).unwrap(), dt(1, 1));
    assert_eq!(elementary_form(&[0], 1).unwrap(), &PolyForm::one(1) - &t(1, 1));
    let p = integrate_p(&t(1, 1).wedge(&dt(1, 1))).unwrap();
    let mut expected = Cochain::default();
    expected.values.insert(vec![0, 1], ratio(1, 2));
    assert_eq!(p, expected);
}

#[test]
fn top_elementary_form_is_a_volume_form() {
    for n in 1..=3usize {
        let mut vol = PolyForm::constant(n, (1..=n as i64).map(int).product());
        for j in 1..=n {
            vol = vol.wedge(&dt(n, j));
        }
        let top: Vec<usize> = (0..=n).collect();
        assert_eq!(whitney_i(&Cochain::basis(&top), n).unwrap(), vol);
    }
}

#[test]
fn integrals_match_iterated_integration() {
    for a in 0..5 {
        for b in 0..5 {
            let f = power(2, 1, a).wedge(&power(2, 2, b)).wedge(&dt(2, 1)).wedge(&dt(2, 2));
            assert_eq!(integrate(&f, &[0, 1, 2]).unwrap(), planar_oracle(a, b), "a = {a}, b = {b}");
        }
    }
}

#[test]
fn out_of_range_faces_are_rejected() {
    assert!(PolyForm::t(2, 3).is_err());
    assert!(elementary_form(&[0, 4], 3).is_err());
    assert!(elementary_form(&[1, 0], 3).is_err());
    assert!(integrate(&PolyForm::one(2), &[0, 3]).is_err());
}

fn arb_form(n: usize, k: usize) -> impl Strategy<Value = PolyForm> {
    // sums of c · t^e dt_J with |J| = k
    let masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    prop::collection::vec(
        (-3i64..=3, prop::collection::vec(0u32..3, n), prop::sample::select(masks)),
        1..4,
    )
    .prop_map(move |terms| {
        terms.into_iter().fold(PolyForm::zero(n), |acc, (c, exps, mask)| {
            let mut f = PolyForm::constant(n, int(c));
            for (i, e) in exps.into_iter().enumerate() {
                f = f.wedge(&power(n, i + 1, e));
            }
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    f = f.wedge(&dt(n, j + 1));
                }
            }
            &acc + &f
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stokes_on_the_triangle(w in arb_form(2, 1)) {
        let lhs = integrate(&w.d(), &[0, 1, 2]).unwrap();
        let rhs = integrate(&w, &[1, 2]).unwrap() - integrate(&w, &[0, 2]).unwrap()
            + integrate(&w, &[0, 1]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn stokes_on_the_tetrahedron(w in arb_form(3, 2)) {
        let lhs = integrate(&w.d(), &[0, 1, 2, 3]).unwrap();
        let faces = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
        let mut rhs = Scalar::zero();
        for (i, f) in faces.iter().enumerate() {
            let v = integrate(&w, f).unwrap();
            if i % 2 == 0 { rhs += v } else { rhs -= v }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_is_a_derivation(a in arb_form(3, 1), b in arb_form(3, 1)) {
        prop_assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b).d();
        let rhs = &a.d().wedge(&b) - &a.wedge(&b.d());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&int(-1)));
    }
}
