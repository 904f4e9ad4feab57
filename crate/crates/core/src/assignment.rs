//! Tropical permanent through the assignment problem.
//!
//! `maper(A) = max_π Σᵢ a_{i,π(i)}` is an assignment problem. It is solved by
//! the O(n³) Hungarian method on the negated weights, with `ε` cells treated
//! as forbidden. The final potentials `(u, v)` satisfy
//! `uᵢ + a_ij + vⱼ ≤ 0` everywhere and are tight on the optimal permutation,
//! so `C = diag(u)` and `D = diag(v)` give `C ⊗ A ⊗ D ≤ 0` with
//! `maper(C ⊗ A ⊗ D) = 0` and `maper(A) = -(Σu + Σv)`.
//!
//! Rational inputs are scaled to integers by the common denominator before
//! the search, so all arithmetic is exact.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::matrix::{diag, tensor, Permutation, TropMatrix};
use crate::semiring::{common_denominator, scaled_integer, TropScalar};

/// Tropical permanent together with a maximizing permutation and the dual
/// diagonal scalings.
///
/// `perm`, `row_duals` and `col_duals` are `None` exactly when `value` is
/// `ε`, i.e. no permutation has finite weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentResult {
    pub value: TropScalar,
    pub perm: Option<Permutation>,
    pub row_duals: Option<Vec<TropScalar>>,
    pub col_duals: Option<Vec<TropScalar>>,
}

impl AssignmentResult {
    pub fn is_feasible(&self) -> bool {
        self.value.is_finite()
    }
}

const INF: i128 = i128::MAX / 4;

/// Solution of the integer min-cost assignment problem.
struct Assignment {
    /// `col_of_row[i]` is the column assigned to row `i`.
    col_of_row: Vec<usize>,
    row_pot: Vec<i128>,
    col_pot: Vec<i128>,
}

/// Shortest augmenting path Hungarian method. `cost[i][j] = None` forbids the
/// cell. Returns `None` when no perfect matching avoids forbidden cells.
///
/// Potentials satisfy `row_pot[i] + col_pot[j] ≤ cost[i][j]` on allowed cells
/// with equality on the matching.
fn min_cost_assignment(cost: &[Vec<Option<i128>>]) -> Option<Assignment> {
    let n = cost.len();
    // One-based bookkeeping; index 0 is the virtual root column.
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        row_of_col[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = cost[i0 - 1][j - 1] {
                    let reduced = c - u[i0] - v[j];
                    if reduced < minv[j] {
                        minv[j] = reduced;
                        way[j] = j0;
                    }
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if delta >= INF / 2 {
                return None;
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; n];
    for j in 1..=n {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    Some(Assignment {
        col_of_row,
        row_pot: u[1..].to_vec(),
        col_pot: v[1..].to_vec(),
    })
}

/// Tropical permanent of a square `⊤`-free matrix.
pub fn maper(a: &TropMatrix) -> Result<AssignmentResult> {
    a.ensure_square("maper")?;
    a.ensure_primal("maper")?;
    let n = a.rows();
    let scale = common_denominator(a.entries().iter().copied())?;
    let cost = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match a.get(i, j).finite() {
                    Some(x) => scaled_integer(x, scale).map(|w| Some(-i128::from(w))),
                    None => Ok(None),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let Some(sol) = min_cost_assignment(&cost) else {
        return Ok(AssignmentResult {
            value: TropScalar::Eps,
            perm: None,
            row_duals: None,
            col_duals: None,
        });
    };

    let perm = Permutation::new(sol.col_of_row)?;
    let to_dual = |p: &i128| -> Result<TropScalar> {
        let p = i64::try_from(*p).map_err(|_| Error::domain("dual potential overflows i64"))?;
        Ok(TropScalar::from(Rational64::new(p, scale)))
    };
    let row_duals = sol.row_pot.iter().map(to_dual).collect::<Result<Vec<_>>>()?;
    let col_duals = sol.col_pot.iter().map(to_dual).collect::<Result<Vec<_>>>()?;
    let value = perm.weight(a);
    debug_assert!(value.is_finite());
    Ok(AssignmentResult {
        value,
        perm: Some(perm),
        row_duals: Some(row_duals),
        col_duals: Some(col_duals),
    })
}

/// Diagonal `C`, `D` with `C ⊗ A ⊗ D ≤ 0` and `maper(C ⊗ A ⊗ D) = 0`.
///
/// Fails with [`Error::Infeasible`] when every permutation has weight `ε`.
pub fn hungarian_scaling(a: &TropMatrix) -> Result<(TropMatrix, TropMatrix)> {
    let res = maper(a)?;
    match (res.row_duals, res.col_duals) {
        (Some(c), Some(d)) => Ok((diag(&c)?, diag(&d)?)),
        _ => Err(Error::Infeasible),
    }
}

/// Three evaluations of `maper(A ⊠ B)` for `A` of order `n`, `B` of order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorPermanentCheck {
    /// `maper(A ⊠ B)` on the materialized `nm × nm` tensor.
    pub direct: TropScalar,
    /// `n·maper(A) + m·maper(B)`: each permanent raised to its own order.
    pub own_order: TropScalar,
    /// `m·maper(A) + n·maper(B)`: each permanent raised to the other order.
    pub cross_order: TropScalar,
}

/// Compare `maper(A ⊠ B)` with the two candidate closed forms.
///
/// Every permutation of `A ⊠ B` built from `π` on `A` and `σ` on `B` touches
/// each entry of `A` along `π` once per row of `B`, so the weight is
/// `m·w(π, A) + n·w(σ, B)`; `cross_order` is the one that holds.
pub fn maper_tensor_exponent_check(a: &TropMatrix, b: &TropMatrix) -> Result<TensorPermanentCheck> {
    let pa = maper(a)?;
    let pb = maper(b)?;
    let (Some(va), Some(vb)) = (pa.value.finite(), pb.value.finite()) else {
        return Err(Error::Infeasible);
    };
    let n = Rational64::from_integer(a.rows() as i64);
    let m = Rational64::from_integer(b.rows() as i64);
    let direct = maper(&tensor(a, b)?)?.value;
    Ok(TensorPermanentCheck {
        direct,
        own_order: TropScalar::from(n * va + m * vb),
        cross_order: TropScalar::from(m * va + n * vb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{mat_otimes, TropMatrix};
    use crate::semiring::TropScalar::Eps;

    fn m(text: &str) -> TropMatrix {
        text.parse().unwrap()
    }

    fn s(v: i64) -> TropScalar {
        TropScalar::int(v)
    }

    fn check_duals(a: &TropMatrix, res: &AssignmentResult) {
        let perm = res.perm.as_ref().unwrap();
        let c = res.row_duals.as_ref().unwrap();
        let d = res.col_duals.as_ref().unwrap();
        let n = a.rows();
        let mut total = TropScalar::ONE;
        for i in 0..n {
            for j in 0..n {
                if let Some(x) = a.get(i, j).finite() {
                    let slack = c[i].finite().unwrap() + x + d[j].finite().unwrap();
                    assert!(slack <= Rational64::from_integer(0), "({i},{j}) slack {slack}");
                    if perm.image(i) == j {
                        assert_eq!(slack, Rational64::from_integer(0));
                    }
                }
            }
            total = crate::semiring::otimes(total, crate::semiring::otimes(c[i], d[i]));
        }
        assert_eq!(res.value, -total);
    }

    #[test]
    fn two_by_two() {
        let a = m("2 1\n0 3");
        let res = maper(&a).unwrap();
        assert_eq!(res.value, s(5));
        assert_eq!(res.perm, Some(Permutation::identity(2)));
        check_duals(&a, &res);
    }

    #[test]
    fn identity_has_zero_permanent() {
        for n in 1..5 {
            let res = maper(&TropMatrix::identity(n)).unwrap();
            assert_eq!(res.value, s(0));
            assert_eq!(res.perm, Some(Permutation::identity(n)));
        }
    }

    #[test]
    fn infeasible_pattern() {
        let res = maper(&m("* 1\n* 2")).unwrap();
        assert_eq!(res.value, Eps);
        assert!(res.perm.is_none() && res.row_duals.is_none() && res.col_duals.is_none());
        assert_eq!(hungarian_scaling(&m("* 1\n* 2")), Err(Error::Infeasible));
    }

    #[test]
    fn forbidden_cells_steer_the_optimum() {
        // the large entries sit on an infeasible pattern
        let a = m("100 100 *\n100 100 *\n0 0 0");
        let res = maper(&a).unwrap();
        assert_eq!(res.value, s(200));
        check_duals(&a, &res);
        let b = m("* 5 *\n1 * *\n* * 7");
        let res = maper(&b).unwrap();
        assert_eq!(res.value, s(13));
        assert_eq!(res.perm.unwrap().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn rational_entries_are_exact() {
        let a = m("1/3 1/2\n1/7 2/3");
        let res = maper(&a).unwrap();
        assert_eq!(res.value, TropScalar::ratio(1, 1));
        check_duals(&a, &res);
    }

    #[test]
    fn scaling_postconditions() {
        for a in [m("2 1\n0 3"), TropMatrix::identity(3), m("5"), m("1 * 4\n* 2 0\n3 3 *")] {
            let (c, d) = hungarian_scaling(&a).unwrap();
            let scaled = mat_otimes(&mat_otimes(&c, &a).unwrap(), &d).unwrap();
            assert!(scaled.entries().iter().all(|&v| v <= s(0)));
            assert_eq!(maper(&scaled).unwrap().value, s(0));
            for (k, &v) in a.entries().iter().enumerate() {
                assert_eq!(v.is_eps(), scaled.entries()[k].is_eps());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(maper(&m("1 2")), Err(Error::Dimension(_))));
        assert!(matches!(maper(&m("1 +inf\n0 0")), Err(Error::Domain(_))));
    }

    #[test]
    fn exponent_check_named_instance() {
        let check = maper_tensor_exponent_check(&m("4"), &m("2 1\n0 3")).unwrap();
        assert_eq!(check.direct, s(13));
        assert_eq!(check.cross_order, s(13));
        assert_eq!(check.own_order, s(14));

        let i2 = TropMatrix::identity(2);
        let check = maper_tensor_exponent_check(&i2, &i2).unwrap();
        assert_eq!((check.direct, check.own_order, check.cross_order), (s(0), s(0), s(0)));
    }
}
