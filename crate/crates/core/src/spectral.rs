//! Maximum cycle mean, Kleene star and eigenvectors.

use std::collections::VecDeque;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{mat_otimes, scalar_mul, TropMatrix};
use crate::semiring::{checked_sum, common_denominator, neg, scaled_integer, TropScalar};

/// An eigenvalue with one eigenvector: `A ⊗ x = λ ⊗ x`, `x ≠ ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenResult {
    pub lambda: TropScalar,
    pub eigenvector: TropMatrix,
    /// Every component of `eigenvector` is finite.
    pub finite_eigenvector: bool,
}

/// `λ(A)`: the largest mean weight of a cycle in the digraph with an arc
/// `i → j` for each finite `a_ij`; `ε` when that digraph is acyclic.
///
/// Karp's recurrence over walks of exact length `k` started from every node:
///
/// ```text
/// λ = max_v  min_{0 ≤ k < n}  (Dₙ(v) - D_k(v)) / (n - k)
/// ```
///
/// Computed on integers after clearing denominators, so the result is exact.
pub fn max_cycle_mean(a: &TropMatrix) -> Result<TropScalar> {
    a.ensure_square("max_cycle_mean")?;
    a.ensure_primal("max_cycle_mean")?;
    let n = a.rows();
    let scale = common_denominator(a.entries().iter().copied())?;
    let mut arcs: Vec<(usize, usize, i128)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(x) = a.get(i, j).finite() {
                arcs.push((i, j, i128::from(scaled_integer(x, scale)?)));
            }
        }
    }

    // walks[k][v]: heaviest walk with exactly k arcs ending at v
    let mut walks: Vec<Vec<Option<i128>>> = vec![vec![Some(0); n]];
    for k in 1..=n {
        let mut next = vec![None; n];
        for &(i, j, w) in &arcs {
            if let Some(d) = walks[k - 1][i] {
                let cand = d + w;
                if next[j].is_none_or(|cur| cand > cur) {
                    next[j] = Some(cand);
                }
            }
        }
        walks.push(next);
    }

    let mut best: Option<Rational64> = None;
    for v in 0..n {
        let Some(full) = walks[n][v] else { continue };
        let worst = (0..n)
            .filter_map(|k| walks[k][v].map(|d| ratio(full - d, (n - k) as i128 * i128::from(scale))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min();
        if let Some(w) = worst {
            best = Some(best.map_or(w, |b| b.max(w)));
        }
    }
    Ok(best.map_or(TropScalar::Eps, TropScalar::from))
}

fn ratio(num: i128, den: i128) -> Result<Rational64> {
    let overflow = || Error::domain("cycle mean overflows i64");
    let g = num_integer::gcd(num, den);
    let (num, den) = (num / g, den / g);
    Ok(Rational64::new(
        i64::try_from(num).map_err(|_| overflow())?,
        i64::try_from(den).map_err(|_| overflow())?,
    ))
}

/// `A⁺ = A ⊕ A² ⊕ …` by Floyd–Warshall; valid only without positive cycles.
fn plus_closure(a: &TropMatrix) -> Result<Vec<Vec<TropScalar>>> {
    let n = a.rows();
    let mut p: Vec<Vec<TropScalar>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = p[i][k].finite() else { continue };
            for j in 0..n {
                if let Some(kj) = p[k][j].finite() {
                    let via = TropScalar::from(checked_sum(ik, kj)?);
                    if via > p[i][j] {
                        p[i][j] = via;
                    }
                }
            }
        }
    }
    Ok(p)
}

/// `Γ(A) = I ⊕ A ⊕ … ⊕ Aⁿ⁻¹`, defined when `λ(A) ≤ 0`.
///
/// Returns [`Error::Divergent`] when some cycle has positive weight.
pub fn kleene_star(a: &TropMatrix) -> Result<TropMatrix> {
    let lambda = max_cycle_mean(a)?;
    if lambda > TropScalar::ONE {
        return Err(Error::Divergent);
    }
    let p = plus_closure(a)?;
    Ok(TropMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == j {
            p[i][j].max(TropScalar::ONE)
        } else {
            p[i][j]
        }
    }))
}

/// `λ(A)` with one eigenvector.
///
/// For finite `λ` the eigenvector is a critical column of the closure of
/// `A_λ = (-λ) ⊗ A`: a column `j` with `(A_λ⁺)_jj = 0`, i.e. node `j` lies
/// on a cycle of mean `λ`. For `λ = ε` some column of `A` is all `ε` and its
/// unit indicator is returned.
pub fn eigenpair(a: &TropMatrix) -> Result<EigenResult> {
    let lambda = max_cycle_mean(a)?;
    let n = a.rows();

    let eigenvector = if lambda.is_eps() {
        let j = (0..n)
            .find(|&j| (0..n).all(|i| a.get(i, j).is_eps()))
            .expect("an acyclic digraph has a node without in-arcs");
        unit_column(n, j)
    } else {
        let normalized = scalar_mul(neg(lambda), a);
        let plus = plus_closure(&normalized)?;
        let mut found = None;
        for j in (0..n).filter(|&j| plus[j][j].finite().is_some_and(|v| v.is_zero())) {
            let x = TropMatrix::from_fn(n, 1, |i, _| plus[i][j]);
            if mat_otimes(a, &x)? == scalar_mul(lambda, &x) {
                found = Some(x);
                break;
            }
        }
        found.expect("a node on a maximum-mean cycle yields an eigenvector")
    };

    let finite_eigenvector = eigenvector.all_finite();
    Ok(EigenResult {
        lambda,
        eigenvector,
        finite_eigenvector,
    })
}

fn unit_column(n: usize, j: usize) -> TropMatrix {
    TropMatrix::from_fn(n, 1, |i, _| {
        if i == j {
            TropScalar::ONE
        } else {
            TropScalar::Eps
        }
    })
}

/// Strong connectivity of the digraph with an arc `i → j` for each non-`ε`
/// entry. A 1×1 matrix is irreducible.
pub fn is_irreducible(a: &TropMatrix) -> Result<bool> {
    a.ensure_square("is_irreducible")?;
    let n = a.rows();
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let arc = if forward { a.get(u, v) } else { a.get(v, u) };
                if !seen[v] && !arc.is_eps() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    Ok(reaches_all(true) && reaches_all(false))
}
