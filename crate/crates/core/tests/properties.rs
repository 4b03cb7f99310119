use hodgelie::algebra::parse_algebra_spec;
use hodgelie::exact::{
    rank, rank_kernel, rat, solve_membership, Membership, QTSeries, Rational, SparseMatQ, UFrac, ULaurent,
};
use hodgelie::lie::{check_d_squared, lie_presentation, CeComplex, CeComplexSpec, Mode};
use hodgelie::qchar::{weyl_apply, WeylElement};
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Plain Gaussian elimination over the rationals, row by row.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| rat(*x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
    }
    r
}

fn to_sparse(rows: &[Vec<i64>]) -> SparseMatQ {
    let n_cols = rows.first().map_or(0, Vec::len);
    let cols: Vec<Vec<(usize, Rational)>> = (0..n_cols)
        .map(|j| {
            (0..rows.len())
                .filter(|&i| rows[i][j] != 0)
                .map(|i| (i, rat(rows[i][j])))
                .collect()
        })
        .collect();
    SparseMatQ::from_columns(rows.len(), &cols)
}

fn matrix(max: usize, entries: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(entries.clone(), c), r))
}

fn series(n_q: i64, n_t: i64) -> impl Strategy<Value = QTSeries> {
    prop::collection::vec((0..=n_q, 0..=n_t, -2i64..=2, -3i64..=3), 0..6).prop_map(move |terms| {
        let mut s = QTSeries::zero(n_q, n_t);
        for (q, t, u, c) in terms {
            s.add_term(q, t, UFrac::from(ULaurent::monomial(rat(c), u)));
        }
        s
    })
}

fn laurent() -> impl Strategy<Value = ULaurent> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 1..4)
        .prop_map(|t| ULaurent::from_terms(t.into_iter().map(|(e, c)| (e, rat(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_dense_elimination(rows in matrix(12, -3..=3)) {
        let m = to_sparse(&rows);
        prop_assert_eq!(rank(&m), dense_rank(&rows));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in matrix(9, -2..=2)) {
        let m = to_sparse(&rows);
        let rk = rank_kernel(&m);
        prop_assert_eq!(rk.kernel.len() + rk.rank, m.cols());
        for v in &rk.kernel {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn membership_answers_are_certified(rows in matrix(7, -2..=2), target in prop::collection::vec(-2i64..=2, 7)) {
        let m = to_sparse(&rows);
        let v: Vec<Rational> = target[..m.rows()].iter().map(|x| rat(*x)).collect();
        match solve_membership(&m, &v).unwrap() {
            Membership::InImage { witness } => prop_assert_eq!(m.mul_vec(&witness).unwrap(), v),
            Membership::NotInImage { certificate } => {
                let left = m.transpose().mul_vec(&certificate).unwrap();
                prop_assert!(left.iter().all(|x| x.is_zero()));
                let pairing: Rational = certificate.iter().zip(&v).map(|(a, b)| a * b).sum();
                prop_assert!(!pairing.is_zero());
            }
        }
    }

    #[test]
    fn series_multiplication_is_commutative_and_associative(a in series(4, 3), b in series(4, 3), c in series(4, 3)) {
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a), 4, 3));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c)), 4, 3));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c)), 4, 3));
    }

    #[test]
    fn fraction_times_inverse_is_one(p in laurent(), q in laurent()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let x = UFrac::new(p.clone(), q.clone()).unwrap();
        let y = UFrac::new(q, p).unwrap();
        prop_assert!((&x * &y).is_one());
    }

    #[test]
    fn weyl_action_is_a_group_action(n1 in -2i64..=2, e1 in prop::bool::ANY, n2 in -2i64..=2, e2 in prop::bool::ANY, s in series(16, 2)) {
        let a = WeylElement::new(n1, if e1 { 1 } else { -1 }).unwrap();
        let b = WeylElement::new(n2, if e2 { 1 } else { -1 }).unwrap();
        let inner = weyl_apply(b, &s, 2, 12).unwrap();
        let twice = weyl_apply(a, &inner, 2, 6).unwrap();
        let once = weyl_apply(a.compose(b), &s, 2, 6).unwrap();
        prop_assert!(twice.agrees_with(&once, 6, 2));
        let back = weyl_apply(a.inverse(), &weyl_apply(a, &s, 2, 12).unwrap(), 2, 6).unwrap();
        prop_assert!(back.agrees_with(&s, 6, 2));
    }

    #[test]
    fn boundary_squares_to_zero(k in 2i64..=5, wx in 0i64..=2, wy in 0i64..=2, relative in prop::bool::ANY) {
        let a = parse_algebra_spec("free x:w=1,0; y:w=0,1; window 2,2").unwrap();
        let mode = if relative { Mode::Relative } else { Mode::Absolute };
        let cx = CeComplex::new(CeComplexSpec::new(lie_presentation("sl", 2).unwrap(), a, mode)).unwrap();
        prop_assert!(check_d_squared(&cx, k, &[wx, wy]).unwrap());
    }
}

#[test]
fn boundary_squares_to_zero_for_gl2_on_a_dg_algebra() {
    let a = parse_algebra_spec("free x; xi:odd:w=2; d xi = x^2; window 4").unwrap();
    let cx = CeComplex::new(CeComplexSpec::new(
        lie_presentation("gl", 2).unwrap(),
        a,
        Mode::Absolute,
    ))
    .unwrap();
    for w in 0..=3 {
        for k in 1..=4 {
            assert!(check_d_squared(&cx, k, &[w]).unwrap(), "k={k} w={w}");
        }
    }
}

#[test]
fn wide_random_matrices() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let rows: Vec<Vec<i64>> = (0..30)
            .map(|_| (0..40).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let m = to_sparse(&rows);
        assert_eq!(rank(&m), dense_rank(&rows));
    }
}

#[test]
fn rank_of_structured_matrices() {
    // Vandermonde on distinct nodes has full rank; rank-one outer product has rank one
    let vander: Vec<Vec<i64>> = (1..=6).map(|x: i64| (0..6).map(|j| x.pow(j)).collect()).collect();
    assert_eq!(rank(&to_sparse(&vander)), 6);
    let outer: Vec<Vec<i64>> = (1..=5).map(|i| (1..=7).map(|j| i * j).collect()).collect();
    assert_eq!(rank(&to_sparse(&outer)), 1);
}
