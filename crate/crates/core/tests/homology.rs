use hodgelie::algebra::{parse_algebra_spec, quotient_truncated_poly, resolve_quotient};
use hodgelie::derham::{cyclic_homology, de_rham, resolution_for, weights_up_to};
use hodgelie::lie::{
    build_complex, homology_slice, lie_presentation, predicted_character, CeComplex, CeComplexSpec, Mode,
};

fn absolute(lie: &str, n: usize, a: hodgelie::algebra::GradedAlgebraPresentation) -> CeComplex {
    CeComplex::new(CeComplexSpec::new(lie_presentation(lie, n).unwrap(), a, Mode::Absolute)).unwrap()
}

#[test]
fn dual_numbers_square_the_homology_of_sl2() {
    let cx = absolute("sl", 2, quotient_truncated_poly(2).unwrap());
    let totals: Vec<usize> = (0..=6)
        .map(|k| {
            (0..=6)
                .map(|w| homology_slice(&cx, k, &[w], true).unwrap().homology_dim)
                .sum()
        })
        .collect();
    assert_eq!(totals, [1, 0, 0, 2, 0, 0, 1]);
}

#[test]
fn polynomial_currents_have_the_homology_of_sl2() {
    let cx = absolute("sl", 2, parse_algebra_spec("free x; window 4").unwrap());
    for w in 1..=4 {
        for r in build_complex(&cx, 0..=4, &[w], true).unwrap() {
            assert_eq!(r.homology_dim, 0, "k={} w={w}", r.k);
        }
    }
    let ground: Vec<usize> = build_complex(&cx, 0..=3, &[0], true)
        .unwrap()
        .iter()
        .map(|r| r.homology_dim)
        .collect();
    assert_eq!(ground, [1, 0, 0, 1]);
}

#[test]
fn gl2_on_dual_numbers_in_low_degree() {
    let a = quotient_truncated_poly(2).unwrap();
    let free = resolution_for(&a, 8).unwrap();
    let hc = cyclic_homology(
        &de_rham(&free, 1).unwrap(),
        "quot x^2",
        1,
        2,
        &weights_up_to(&[2]),
        true,
    )
    .unwrap();
    let gl2 = lie_presentation("gl", 2).unwrap();
    let predicted = predicted_character(&gl2, &hc, 2, &[2]).unwrap();
    let cx = absolute("gl", 2, a);
    for w in 0..=2 {
        for k in 0..=2 {
            let want = predicted
                .iter()
                .find(|e| e.degree == k && e.weight == [w])
                .map_or(0, |e| e.dim);
            assert_eq!(
                homology_slice(&cx, k, &[w], true).unwrap().homology_dim,
                want,
                "k={k} w={w}"
            );
        }
    }
}

#[test]
fn truncated_polynomial_hc_is_window_independent() {
    for m in [2, 3] {
        let weights = weights_up_to(&[3 * m]);
        let small = cyclic_homology(
            &de_rham(&resolve_quotient(m, 3 * m).unwrap(), 2).unwrap(),
            "q",
            2,
            5,
            &weights,
            true,
        );
        let large = cyclic_homology(
            &de_rham(&resolve_quotient(m, 3 * m + 3).unwrap(), 2).unwrap(),
            "q",
            2,
            5,
            &weights,
            true,
        );
        assert_eq!(small.unwrap().entries, large.unwrap().entries, "m={m}");
    }
}

#[test]
fn three_sphere_of_sl3_currents_on_the_ground_field() {
    let cx = absolute("sl", 3, parse_algebra_spec("free").unwrap());
    let h: Vec<usize> = build_complex(&cx, 0..=8, &[], true)
        .unwrap()
        .iter()
        .map(|r| r.homology_dim)
        .collect();
    assert_eq!(h, [1, 0, 0, 1, 0, 1, 0, 0, 1]);
}
