//! Brute-force reference routines.
//!
//! These enumerate permutations and elementary cycles directly. They are
//! slow on purpose and share nothing with [`crate::assignment`] or
//! [`crate::spectral`]; tests use them as ground truth. Each routine has a
//! hard size guard.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::matrix::{Permutation, TropMatrix};
use crate::semiring::TropScalar;

pub const MAX_MAPER_ORDER: usize = 8;
pub const MAX_CYCLE_ORDER: usize = 7;

fn guard(a: &TropMatrix, limit: usize) -> Result<usize> {
    a.ensure_square("oracle")?;
    a.ensure_primal("oracle")?;
    let n = a.rows();
    if n > limit {
        return Err(Error::OracleSize { order: n, limit });
    }
    Ok(n)
}

/// Sum of finite entries; `None` as soon as an `ε` is hit.
fn path_weight(a: &TropMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<Rational64> {
    let mut total = Rational64::from_integer(0);
    for (i, j) in cells {
        total += a.get(i, j).finite()?;
    }
    Some(total)
}

/// Maximum of `w(π, A)` over all `n!` permutations, with a maximizer.
pub fn brute_maper(a: &TropMatrix) -> Result<(TropScalar, Option<Permutation>)> {
    let n = guard(a, MAX_MAPER_ORDER)?;
    let mut best: Option<(Rational64, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    // Lexicographic enumeration.
    loop {
        if let Some(w) = path_weight(a, perm.iter().copied().enumerate()) {
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, perm.clone()));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(match best {
        Some((w, p)) => (TropScalar::from(w), Some(Permutation::new(p)?)),
        None => (TropScalar::Eps, None),
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Maximum mean over all elementary cycles; `ε` if there are none.
///
/// Depth-first search from every start node over simple paths; each cycle is
/// found once per rotation, which does not affect the maximum.
pub fn brute_cycle_mean(a: &TropMatrix) -> Result<TropScalar> {
    let n = guard(a, MAX_CYCLE_ORDER)?;
    let mut best: Option<Rational64> = None;
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        walk(a, start, &mut path, &mut on_path, &mut best);
        on_path[start] = false;
        path.pop();
    }
    Ok(best.map_or(TropScalar::Eps, TropScalar::from))
}

fn walk(
    a: &TropMatrix,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut Option<Rational64>,
) {
    let last = *path.last().expect("path starts non-empty");
    for next in 0..a.rows() {
        if a.get(last, next).is_eps() {
            continue;
        }
        if next == start {
            let closing = path.iter().copied().zip(path.iter().copied().skip(1).chain([start]));
            let weight = path_weight(a, closing).expect("all arcs on the path are finite");
            let mean = weight / Rational64::from_integer(path.len() as i64);
            if best.is_none_or(|b| mean > b) {
                *best = Some(mean);
            }
        } else if !on_path[next] {
            on_path[next] = true;
            path.push(next);
            walk(a, start, path, on_path, best);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// `A ⊗ x = λ ⊗ x` and `x ≠ ε`, checked entry by entry.
pub fn brute_eigen_check(a: &TropMatrix, lambda: TropScalar, x: &TropMatrix) -> Result<bool> {
    if !a.is_square() || !x.is_column() || x.rows() != a.cols() {
        return Err(Error::dimension(format!(
            "eigen check needs a square matrix and a matching column, got {} and {}",
            a.shape_str(),
            x.shape_str()
        )));
    }
    if x.entries().iter().all(|v| v.is_eps()) {
        return Ok(false);
    }
    for i in 0..a.rows() {
        let mut lhs = TropScalar::Eps;
        for j in 0..a.cols() {
            if let (Some(aij), Some(xj)) = (a.get(i, j).finite(), x.get(j, 0).finite()) {
                lhs = lhs.max(TropScalar::from(aij + xj));
            }
        }
        let rhs = match (lambda.finite(), x.get(i, 0).finite()) {
            (Some(l), Some(xi)) => TropScalar::from(l + xi),
            _ => TropScalar::Eps,
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
