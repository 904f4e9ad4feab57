//! Algebraic laws checked on random integer matrices.

mod common;

use common::{int, m};
use num_rational::Rational64;
use proptest::prelude::*;
use tropical_tensor::oracle::{brute_cycle_mean, brute_maper};
use tropical_tensor::*;

fn entry() -> impl Strategy<Value = TropScalar> {
    prop_oneof![1 => Just(TropScalar::Eps), 4 => (-10i64..=10).prop_map(TropScalar::int)]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = TropMatrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |e| TropMatrix::new(rows, cols, e).unwrap())
}

fn square(max: usize) -> impl Strategy<Value = TropMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

fn diagonal(n: usize) -> impl Strategy<Value = TropMatrix> {
    proptest::collection::vec(-10i64..=10, n)
        .prop_map(|d| diag(&d.into_iter().map(TropScalar::int).collect::<Vec<_>>()).unwrap())
}

fn generalized_permutation(max: usize) -> impl Strategy<Value = TropMatrix> {
    (1..=max)
        .prop_flat_map(|n| {
            (
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(-10i64..=10, n),
            )
        })
        .prop_map(|(perm, w)| {
            let n = perm.len();
            TropMatrix::from_fn(n, n, |i, j| {
                if perm[i] == j {
                    TropScalar::int(w[i])
                } else {
                    TropScalar::Eps
                }
            })
        })
}

fn mul(a: &TropMatrix, b: &TropMatrix) -> TropMatrix {
    mat_otimes(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mixed_product(
        (a, b, c, d) in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(p, q, r, s, t, u)| (matrix(p, q), matrix(s, t), matrix(q, r), matrix(t, u)))
    ) {
        let lhs = mul(&tensor(&a, &b).unwrap(), &tensor(&c, &d).unwrap());
        let rhs = tensor(&mul(&a, &c), &mul(&b, &d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_inverse(a in generalized_permutation(4), b in generalized_permutation(4)) {
        let ai = try_invert(&a).unwrap();
        let bi = try_invert(&b).unwrap();
        let t = tensor(&a, &b).unwrap();
        prop_assert_eq!(try_invert(&t).unwrap(), tensor(&ai, &bi).unwrap());
        prop_assert_eq!(mul(&t, &tensor(&ai, &bi).unwrap()), TropMatrix::identity(t.rows()));
    }

    #[test]
    fn maper_matches_enumeration(a in square(6)) {
        let res = maper(&a).unwrap();
        let (value, _) = brute_maper(&a).unwrap();
        prop_assert_eq!(res.value, value);
        if let Some(p) = &res.perm {
            prop_assert_eq!(p.weight(&a), res.value);
        } else {
            prop_assert!(res.value.is_eps());
        }
    }

    #[test]
    fn diagonal_scaling_shifts_the_permanent(
        (a, c, d) in (1usize..=5).prop_flat_map(|n| (matrix(n, n), diagonal(n), diagonal(n)))
    ) {
        let scaled = mul(&mul(&c, &a), &d);
        let base = maper(&a).unwrap();
        let expected = otimes(otimes(maper(&c).unwrap().value, base.value), maper(&d).unwrap().value);
        prop_assert_eq!(maper(&scaled).unwrap().value, expected);
        if let Some(p) = base.perm {
            prop_assert_eq!(p.weight(&scaled), expected);
        }
    }

    #[test]
    fn permanent_of_tensor_with_a_diagonal(
        (a, q) in (1usize..=3).prop_flat_map(|n| (matrix(n, n), diagonal(n)))
    ) {
        let n = Rational64::from_integer(a.rows() as i64);
        let pa = maper(&a).unwrap().value;
        let pq = maper(&q).unwrap().value.finite().unwrap();
        let expected = pa.finite().map_or(TropScalar::Eps, |pa| TropScalar::from(n * pa + n * pq));
        prop_assert_eq!(maper(&tensor(&a, &q).unwrap()).unwrap().value, expected);
        prop_assert_eq!(maper(&tensor(&q, &a).unwrap()).unwrap().value, expected);
    }

    #[test]
    fn karp_matches_cycle_enumeration(a in square(6)) {
        prop_assert_eq!(max_cycle_mean(&a).unwrap(), brute_cycle_mean(&a).unwrap());
    }

    #[test]
    fn finite_eigenvector_pins_the_eigenvalue(a in square(5)) {
        let res = eigenpair(&a).unwrap();
        let ax = mul(&a, &res.eigenvector);
        prop_assert_eq!(&ax, &scalar_mul(res.lambda, &res.eigenvector));
        if res.finite_eigenvector {
            for i in 0..a.rows() {
                let xi = res.eigenvector.get(i, 0).finite().unwrap();
                let gap = ax.get(i, 0).finite().map_or(TropScalar::Eps, |v| TropScalar::from(v - xi));
                prop_assert_eq!(gap, res.lambda);
            }
        }
    }

    #[test]
    fn vec_identity(
        (terms, x) in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(r, p, q, u, v)| {
                (proptest::collection::vec((matrix(p, q), matrix(u, v)), r), matrix(q, u))
            })
    ) {
        let (p, v) = (terms[0].0.rows(), terms[0].1.cols());
        let eq = MatrixEquation::new(terms, TropMatrix::eps(p, v)).unwrap();
        let lhs = vec(&evaluate_equation(&eq, &x).unwrap());
        let rhs = mul(&assemble_operator(&eq).unwrap(), &vec(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn principal_solution_is_monotone(
        (a, b, bump) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (matrix(r, c), matrix(r, 1), proptest::collection::vec(0i64..=5, r))
        })
    ) {
        let higher = TropMatrix::from_fn(b.rows(), 1, |i, _| {
            b.get(i, 0).finite().map_or(TropScalar::int(bump[i]), |v| TropScalar::from(v + bump[i]))
        });
        prop_assert!(b.le(&higher));
        let lo = principal_solution(&a, &b).unwrap();
        let hi = principal_solution(&a, &higher).unwrap();
        prop_assert!(lo.le(&hi));
    }

    #[test]
    fn seeded_equations_are_solved(
        (terms, x0) in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(r, p, q, u, v)| {
                (proptest::collection::vec((matrix(p, q), matrix(u, v)), r), matrix(q, u))
            })
    ) {
        let p = terms[0].0.rows();
        let v = terms[0].1.cols();
        let probe = MatrixEquation::new(terms.clone(), TropMatrix::eps(p, v)).unwrap();
        let c = evaluate_equation(&probe, &x0).unwrap();
        let eq = MatrixEquation::new(terms, c.clone()).unwrap();
        let rep = solve_matrix_equation(&eq).unwrap();
        prop_assert!(rep.solvable);
        let x = rep.solution.unwrap();
        prop_assert_eq!(evaluate_equation(&eq, &x).unwrap(), c);
        prop_assert!(x0.le(&x));
    }
}

/// The product permutation of two zero-pattern permutations picks only
/// zeros of `C ⊠ D`, after both factors are normalized by their duals.
#[test]
fn product_permutation_selects_zeros() {
    let mut rng = common::rng(7);
    for _ in 0..100 {
        let n = 1 + (rng_usize(&mut rng) % 3);
        let k = 1 + (rng_usize(&mut rng) % 3);
        let a = common::with_finite_permanent(&mut rng, n);
        let b = common::with_finite_permanent(&mut rng, k);
        let normalize = |x: &TropMatrix| {
            let (p, q) = hungarian_scaling(x).unwrap();
            mul(&mul(&p, x), &q)
        };
        let (c, d) = (normalize(&a), normalize(&b));
        let pi = maper(&c).unwrap().perm.unwrap();
        let sigma = maper(&d).unwrap().perm.unwrap();
        let e = tensor(&c, &d).unwrap();
        assert!(e.entries().iter().all(|&v| v <= int(0)));
        // row i = block·n + inner maps to σ(block)·n + π(inner)
        let tau: Vec<usize> = (0..n * k).map(|i| sigma.image(i / n) * n + pi.image(i % n)).collect();
        let tau = Permutation::new(tau).unwrap();
        for i in 0..n * k {
            assert_eq!(e.get(i, tau.image(i)), int(0));
        }
        assert_eq!(maper(&e).unwrap().value, int(0));
    }
}

fn rng_usize(rng: &mut rand::rngs::StdRng) -> usize {
    use rand::RngExt;
    rng.random_range(0..1000)
}

#[test]
fn tensor_permanent_against_enumeration() {
    // 2×2 ⊠ 3×3 gives a 6×6 tensor: 720 permutations
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let a = common::with_finite_permanent(&mut rng, 2);
        let b = common::with_finite_permanent(&mut rng, 3);
        let check = maper_tensor_exponent_check(&a, &b).unwrap();
        let (brute, _) = brute_maper(&tensor(&a, &b).unwrap()).unwrap();
        assert_eq!(check.direct, brute);
        assert_eq!(check.cross_order, brute);
    }
}

#[test]
fn scaling_fails_without_a_finite_permutation() {
    assert_eq!(hungarian_scaling(&m("* 1\n* 2")), Err(Error::Infeasible));
}
