mod common;

use common::*;
use hodgewalk::complex::clique_complex;
use hodgewalk::hodge::*;
use hodgewalk::isotest::{cycle, fig5a, fig5b, rook4x4, shrikhande, two_triangles};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn standard(sc: &hodgewalk::complex::OrientedSimplicialComplex, k: usize) -> DMatrix<i64> {
    let (d, u) = laplacian_parts_exact(sc, k).unwrap();
    d + u
}

fn nonzero_sorted(m: &DMatrix<i64>) -> Vec<f64> {
    symmetric_spectrum(&m.map(|x| x as f64), None).unwrap().nonzero()
}

#[test]
fn printed_laplacians() {
    let sc = fig5a();
    let l0 = DMatrix::from_row_slice(4, 4, &[1, -1, 0, 0, -1, 3, -1, -1, 0, -1, 2, -1, 0, -1, -1, 2]);
    let l1_down = DMatrix::from_row_slice(4, 4, &[2, 1, 0, -1, 1, 2, 1, -1, 0, 1, 2, 1, -1, -1, 1, 2]);
    let l1_up = DMatrix::from_row_slice(4, 4, &[0, 0, 0, 0, 0, 1, -1, 1, 0, -1, 1, -1, 0, 1, -1, 1]);
    let l1 = DMatrix::from_row_slice(4, 4, &[2, 1, 0, -1, 1, 3, 0, 0, 0, 0, 3, 0, -1, 0, 0, 3]);
    assert_eq!(standard(&sc, 0), l0);
    let (d, u) = laplacian_parts_exact(&sc, 1).unwrap();
    assert_eq!((d, u), (l1_down, l1_up));
    assert_eq!(standard(&sc, 1), l1);
    let op = hodge_laplacian(&sc, 1, Variant::Standard).unwrap();
    assert_eq!(op.integer_matrix().unwrap(), l1);

    let l1b = DMatrix::from_row_slice(
        5,
        5,
        &[2, -1, -1, 0, 0, -1, 2, 0, 1, -1, -1, 0, 2, 1, 0, 0, 1, 1, 2, -1, 0, -1, 0, -1, 2],
    );
    assert_eq!(standard(&fig5b(), 1), l1b);
}

#[test]
fn worked_kernel_vector() {
    let spec = spectrum(&hodge_laplacian(&fig5b(), 1, Variant::Standard).unwrap(), None).unwrap();
    assert_eq!(spec.kernel_dim(), 1);
    let u = spec.kernel_basis().column(0).into_owned();
    let expected = DVector::from_row_slice(&[1.0, 1.0, 1.0, -1.0, 0.0]) * 0.5;
    let s = u.dot(&expected).signum();
    assert!((u * s - expected).amax() < 1e-10);
}

#[test]
fn srg_l1_polynomials() {
    let rook = standard(&clique_complex(&rook4x4(), 2).unwrap(), 1);
    let shri = standard(&clique_complex(&shrikhande(), 2).unwrap(), 1);
    assert_eq!(char_poly_exact(&rook).unwrap(), expand(&[(8, 9), (4, 30), (0, 9)], &[]));
    assert_eq!(char_poly_exact(&shri).unwrap(), expand(&[(8, 9), (6, 1), (4, 15), (2, 9), (0, 2)], &[(-6, 4, 6)]));
}

#[test]
fn charpoly_agrees_with_determinants_at_integer_points() {
    let m = standard(&clique_complex(&shrikhande(), 2).unwrap(), 1);
    let p = char_poly_exact(&m).unwrap();
    for x in [-3, 1, 5, 7, 11] {
        assert_eq!(eval_poly(&p, x), char_value(&m, x));
    }
}

#[test]
fn hexagon_and_triangles_l0() {
    let c6 = standard(&clique_complex(&cycle(6).unwrap(), 2).unwrap(), 0);
    let tt = standard(&clique_complex(&two_triangles(), 2).unwrap(), 0);
    // Spectrum of C6 is 2 - 2cos(2 pi j / 6): {0, 1, 1, 3, 3, 4}.
    assert_eq!(char_poly_exact(&c6).unwrap(), expand(&[(0, 1), (1, 2), (3, 2), (4, 1)], &[]));
    // Two copies of K3: {0, 3, 3} twice.
    assert_eq!(char_poly_exact(&tt).unwrap(), expand(&[(0, 2), (3, 4)], &[]));
}

#[test]
fn float_charpoly_rejects_non_integers() {
    let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
    assert!(char_poly_exact_f64(&m).is_err());
    let m = DMatrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]);
    assert_eq!(char_poly_exact_f64(&m).unwrap(), expand(&[(1, 1), (3, 1)], &[]));
}

#[test]
fn heat_kernel_matches_series() {
    let sc = clique_complex(&connected_graph(8, 0.3, 3), 2).unwrap();
    let op = hodge_laplacian(&sc, 1, Variant::Standard).unwrap();
    let beta = 0.3;
    let k = spectral_kernel(&op, &Regularizer::Heat { beta }).unwrap();
    // exp(-beta L) by truncated Taylor series with squaring.
    let a = &op.matrix * (-beta / 64.0);
    let mut term = DMatrix::identity(a.nrows(), a.nrows());
    let mut sum = term.clone();
    for i in 1..20 {
        term = &term * &a / i as f64;
        sum += &term;
    }
    for _ in 0..6 {
        sum = &sum * &sum;
    }
    assert!(max_abs_diff(&k, &sum) < 1e-10);
}

#[test]
fn inverse_kernel_inverts_shifted_operator() {
    let sc = clique_complex(&connected_graph(7, 0.4, 5), 2).unwrap();
    let op = hodge_laplacian(&sc, 1, Variant::Standard).unwrap();
    let eps = 0.5;
    let k = spectral_kernel(&op, &Regularizer::InverseShifted { eps }).unwrap();
    let n = op.matrix.nrows();
    let shifted = &op.matrix + DMatrix::identity(n, n) * eps;
    assert!(max_abs_diff(&(k * shifted), &DMatrix::identity(n, n)) < 1e-10);
}

#[test]
fn regularizer_parsing() {
    assert_eq!("heat:0.5".parse::<Regularizer>().unwrap(), Regularizer::Heat { beta: 0.5 });
    assert!("cosine:1".parse::<Regularizer>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn powers_split_into_down_and_up(seed in 0u64..100_000) {
        let sc = random_complex(15, 3, seed);
        for k in 0..=sc.dim() {
            let (d, u) = laplacian_parts_exact(&sc, k).unwrap();
            let l = &d + &u;
            let (mut lr, mut dr, mut ur) = (l.clone(), d.clone(), u.clone());
            for _ in 2..=4 {
                lr = &lr * &l;
                dr = &dr * &d;
                ur = &ur * &u;
                prop_assert_eq!(&lr, &(&dr + &ur));
            }
        }
    }

    #[test]
    fn up_and_down_spectra_bridge(seed in 0u64..100_000) {
        let sc = random_complex(15, 3, seed);
        for k in 0..sc.dim() {
            let up = laplacian_parts_exact(&sc, k).unwrap().1;
            let down = laplacian_parts_exact(&sc, k + 1).unwrap().0;
            let (a, b) = (nonzero_sorted(&up), nonzero_sorted(&down));
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn laplacians_are_symmetric_psd(seed in 0u64..100_000) {
        let sc = random_complex(12, 3, seed);
        let mut r = rng(seed);
        for k in 0..=sc.dim() {
            let l = standard(&sc, k).map(|x| x as f64);
            prop_assert_eq!(&l, &l.transpose());
            for _ in 0..5 {
                let x = DVector::from_fn(l.nrows(), |_, _| r.random::<f64>() - 0.5);
                prop_assert!(x.dot(&(&l * &x)) >= -1e-12);
            }
        }
    }

    #[test]
    fn l1_has_at_least_as_many_nonzero_eigenvalues(seed in 0u64..100_000) {
        let sc = random_complex(12, 2, seed);
        prop_assert!(nonzero_sorted(&standard(&sc, 1)).len() >= nonzero_sorted(&standard(&sc, 0)).len());
    }

    #[test]
    fn normalized_l1_spectrum_is_compact(seed in 0u64..100_000) {
        let sc = random_complex(15, 2, seed);
        let spec = spectrum(&hodge_laplacian(&sc, 1, Variant::Normalized).unwrap(), None).unwrap();
        prop_assert!(spec.eigenvalues.iter().all(|&l| (-1e-8..=3.0 + 1e-8).contains(&l)));
    }

    #[test]
    fn betti_numbers(seed in 0u64..100_000) {
        let sc = random_complex(12, 3, seed);
        prop_assert_eq!(betti(&sc, 0).unwrap(), sc.graph().components().len());
        // Euler characteristic: alternating sums of Betti numbers and face counts agree.
        let mut chi_faces = 0i64;
        let mut chi_betti = 0i64;
        for k in 0..=sc.dim() {
            let s = if k % 2 == 0 { 1 } else { -1 };
            chi_faces += s * sc.count(k) as i64;
            chi_betti += s * betti(&sc, k).unwrap() as i64;
        }
        prop_assert_eq!(chi_faces, chi_betti);
    }

    #[test]
    fn decomposition_is_orthogonal(seed in 0u64..100_000) {
        let sc = random_complex(12, 3, seed);
        let mut r = rng(seed + 9);
        for k in 0..=sc.dim() {
            let x = DVector::from_fn(sc.count(k), |_, _| r.random::<f64>() * 2.0 - 1.0);
            let h = hodge_decompose(&sc, k, &x).unwrap();
            prop_assert!((&h.gradient + &h.harmonic + &h.curl - &x).amax() < 1e-9);
            prop_assert!(h.gradient.dot(&h.curl).abs() < 1e-9);
            prop_assert!(h.gradient.dot(&h.harmonic).abs() < 1e-9);
            prop_assert!(h.curl.dot(&h.harmonic).abs() < 1e-9);
            // Harmonic part is annihilated by L_k.
            let l = standard(&sc, k).map(|v| v as f64);
            prop_assert!((l * &h.harmonic).amax() < 1e-8);
        }
    }

    #[test]
    fn charpoly_matches_faddeev_leverrier(seed in 0u64..100_000) {
        let sc = random_complex(10, 2, seed);
        for k in 0..=sc.dim() {
            let l = standard(&sc, k);
            prop_assert_eq!(char_poly_exact(&l).unwrap(), faddeev_leverrier(&l));
        }
    }

    #[test]
    fn charpoly_of_roots(roots in proptest::collection::vec((-5i64..6, 1usize..3), 0..5)) {
        // Diagonal matrix with the given eigenvalues.
        let diag: Vec<i64> = roots.iter().flat_map(|&(r, k)| std::iter::repeat_n(r, k)).collect();
        let m = DMatrix::from_diagonal(&DVector::from_vec(diag));
        prop_assert_eq!(char_poly_exact(&m).unwrap(), poly_from_roots(&roots));
        prop_assert_eq!(poly_from_roots(&roots), expand(&roots, &[]));
    }
}

#[test]
fn empty_matrix_polynomial() {
    assert_eq!(char_poly_exact(&DMatrix::<i64>::zeros(0, 0)).unwrap(), vec![BigInt::from(1)]);
}

#[test]
fn normalized_operator_similar_to_symmetric_form() {
    let sc = clique_complex(&er_graph(12, 0.45, 77), 2).unwrap();
    let op = hodge_laplacian(&sc, 1, Variant::Normalized).unwrap();
    let w = op.weights().unwrap();
    let s = op.symmetric_form();
    let half = DMatrix::from_diagonal(&w.map(f64::sqrt));
    let inv_half = DMatrix::from_diagonal(&w.map(|x| 1.0 / x.sqrt()));
    assert!(max_abs_diff(&(&inv_half * &op.matrix * &half), &s) < 1e-12);
}
