//! Dense cross-checks of the Bose-Mesner algebra of J(n,k).

use jshm_core::johnson::{bm_dense, d_vector, intersection_numbers, w_dense, wbar_dense, DenseMatrix};
use jshm_core::oracles::{exact_spectrum_f64, float_spectrum, spectra_match, SPECTRUM_TOLERANCE};
use jshm_core::projection::project_dense;
use jshm_core::{BMVector, EigenSystem, Execution, Rational, SchemeParams};
use proptest::prelude::*;

const BUDGET: u64 = 5000;

fn params(n: usize, k: usize) -> SchemeParams {
    SchemeParams::new(n, k).unwrap()
}

fn dense(v: &BMVector) -> DenseMatrix {
    bm_dense(v, BUDGET).unwrap()
}

fn basis(p: SchemeParams, r: usize) -> DenseMatrix {
    dense(&BMVector::basis(p, r).unwrap())
}

#[test]
fn classes_partition_all_ones() {
    for (n, k) in [(5, 2), (6, 3), (7, 3)] {
        let p = params(n, k);
        let sum = (1..=k).fold(basis(p, 0), |acc, r| acc.add(&basis(p, r)).unwrap());
        assert_eq!(sum, dense(&BMVector::all_ones(p)));
    }
}

#[test]
fn d_matrices_factor_through_inclusions() {
    for (n, k) in [(7, 3), (8, 4)] {
        let p = params(n, k);
        for i in 0..=k {
            let w = w_dense(i, p, BUDGET).unwrap();
            let wbar = wbar_dense(i, p, BUDGET).unwrap();
            let product = w.transpose().matmul(&wbar).unwrap();
            assert_eq!(product, dense(&d_vector(i, p).unwrap()), "D_{i} in {p}");
        }
    }
}

#[test]
fn products_close_with_intersection_numbers() {
    let p = params(6, 3);
    for (i, j) in [(1, 2), (1, 1), (2, 3), (3, 3)] {
        let coeffs = (0..=3)
            .map(|r| Rational::from_int(intersection_numbers(i, j, r, p).unwrap() as i64))
            .collect();
        let expected = dense(&BMVector::from_coeffs(p, coeffs).unwrap());
        let ab = basis(p, i).matmul(&basis(p, j)).unwrap();
        let ba = basis(p, j).matmul(&basis(p, i)).unwrap();
        assert_eq!(ab, expected, "A_{i} A_{j}");
        assert_eq!(ab, ba);
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

fn scheme() -> impl Strategy<Value = SchemeParams> {
    prop::sample::select(vec![(4, 2), (5, 2), (6, 2), (6, 3), (7, 3), (8, 3), (8, 4)]).prop_map(|(n, k)| params(n, k))
}

fn element() -> impl Strategy<Value = BMVector> {
    scheme().prop_flat_map(|p| {
        prop::collection::vec(small_rational(), p.k() + 1)
            .prop_map(move |c| BMVector::from_coeffs(p, c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schur_product_is_entrywise(u in element(), seed in any::<u64>()) {
        let p = u.params().unwrap();
        prop_assume!(p.n() <= 7);
        let coeffs = (0..=p.k()).map(|r| Rational::from_int(((seed >> (4 * r)) & 7) as i64 - 3)).collect();
        let v = BMVector::from_coeffs(p, coeffs).unwrap();
        prop_assert_eq!(dense(&u.schur(&v).unwrap()), dense(&u).hadamard(&dense(&v)).unwrap());
    }

    #[test]
    fn float_spectrum_matches_exact(v in element()) {
        let sys = EigenSystem::new(v.params().unwrap()).unwrap();
        let exact = exact_spectrum_f64(&sys, &v).unwrap();
        let approx = float_spectrum(&dense(&v)).unwrap();
        prop_assert!(spectra_match(&exact, &approx, SPECTRUM_TOLERANCE), "{:?} vs {:?}", exact, approx);
    }

    #[test]
    fn projection_of_gram_matrix_is_psd(
        (p, rows) in prop::sample::select(vec![(5, 2), (6, 2), (6, 3), (7, 2), (7, 3)])
            .prop_flat_map(|(n, k)| {
                let p = params(n, k);
                let order = jshm_core::exact::binom_u64(n, k) as usize;
                (Just(p), prop::collection::vec(prop::collection::vec(-2i64..=2, order), 1..4))
            })
    ) {
        let order = rows[0].len();
        let b = DenseMatrix::from_fn(rows.len(), order, Execution::Sequential, |i, j| Rational::from_int(rows[i][j]));
        let gram = b.transpose().matmul(&b).unwrap();
        let psi = project_dense(&gram, p).unwrap();
        let report = EigenSystem::new(p).unwrap().psd_report(&psi).unwrap();
        prop_assert!(report.psd, "min eigenvalue {}", report.min_eigenvalue);
        prop_assert_eq!(psi.trace().unwrap(), gram.trace());
        prop_assert_eq!(psi.elsm().unwrap(), gram.elsm());
    }
}
