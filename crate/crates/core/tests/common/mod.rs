#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use tropical_tensor::{is_irreducible, Permutation, TropMatrix, TropScalar};

pub const EPS_DENSITY: f64 = 0.2;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn entry(rng: &mut StdRng) -> TropScalar {
    if rng.random_bool(EPS_DENSITY) {
        TropScalar::Eps
    } else {
        TropScalar::int(rng.random_range(-10..=10))
    }
}

/// Integers in [-10, 10] with about 20% ε.
pub fn matrix(rng: &mut StdRng, rows: usize, cols: usize) -> TropMatrix {
    TropMatrix::from_fn(rows, cols, |_, _| entry(rng))
}

pub fn finite_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> TropMatrix {
    TropMatrix::from_fn(rows, cols, |_, _| TropScalar::int(rng.random_range(-10..=10)))
}

pub fn permutation(rng: &mut StdRng, n: usize) -> Permutation {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    Permutation::new(p).unwrap()
}

/// Exactly one finite entry per row and column.
pub fn generalized_permutation(rng: &mut StdRng, n: usize) -> TropMatrix {
    let p = permutation(rng, n);
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(-10..=10)).collect();
    TropMatrix::from_fn(n, n, |i, j| {
        if p.image(i) == j {
            TropScalar::int(weights[i])
        } else {
            TropScalar::Eps
        }
    })
}

pub fn diagonal(rng: &mut StdRng, n: usize) -> TropMatrix {
    let d: Vec<TropScalar> = (0..n).map(|_| TropScalar::int(rng.random_range(-10..=10))).collect();
    tropical_tensor::diag(&d).unwrap()
}

/// Rejection-sample until the digraph is strongly connected.
pub fn irreducible(rng: &mut StdRng, n: usize) -> TropMatrix {
    loop {
        let a = matrix(rng, n, n);
        if is_irreducible(&a).unwrap() {
            return a;
        }
    }
}

/// Rejection-sample until some permutation has finite weight (checked by
/// enumeration, not by the Hungarian code under test).
pub fn with_finite_permanent(rng: &mut StdRng, n: usize) -> TropMatrix {
    loop {
        let a = matrix(rng, n, n);
        if tropical_tensor::oracle::brute_maper(&a).unwrap().0.is_finite() {
            return a;
        }
    }
}

pub fn int(v: i64) -> TropScalar {
    TropScalar::int(v)
}

pub fn m(text: &str) -> TropMatrix {
    text.parse().unwrap()
}
