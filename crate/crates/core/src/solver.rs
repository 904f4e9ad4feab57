//! Residuation: principal solutions of `A ⊗ x = b` and of the matrix
//! equation `A₁⊗X⊗B₁ ⊕ … ⊕ A_r⊗X⊗B_r = C`.
//!
//! The matrix equation is equivalent to the vector system
//! `D ⊗ vec(X) = vec(C)` with `D = ⊕ᵢ Aᵢ ⊠ Bᵢᵀ`, which is then solved by
//! residuation: `x̄ = D# ⊗′ vec(C)` is the greatest `x` with `D ⊗ x ≤ vec(C)`
//! and the system is solvable iff `x̄` solves it.

use crate::error::{Error, Result};
use crate::matrix::{
    conjugate, mat_oplus, mat_otimes, mat_otimes_prime, otimes_extended, tensor, unvec, vec,
    TropMatrix,
};

/// `⊕ᵢ Aᵢ ⊗ X ⊗ Bᵢ = C` with all `Aᵢ` of shape `p×q`, all `Bᵢ` of shape
/// `u×v`, and `C` of shape `p×v`. The unknown `X` is `q×u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixEquation {
    terms: Vec<(TropMatrix, TropMatrix)>,
    rhs: TropMatrix,
}

impl MatrixEquation {
    pub fn new(terms: Vec<(TropMatrix, TropMatrix)>, rhs: TropMatrix) -> Result<Self> {
        let Some((a0, b0)) = terms.first() else {
            return Err(Error::dimension("matrix equation needs at least one term"));
        };
        let (a_shape, b_shape) = (a0.shape(), b0.shape());
        for (k, (a, b)) in terms.iter().enumerate() {
            if a.shape() != a_shape || b.shape() != b_shape {
                return Err(Error::dimension(format!(
                    "term {}: A is {} and B is {}, expected {} and {} as in term 1",
                    k + 1,
                    a.shape_str(),
                    b.shape_str(),
                    a0.shape_str(),
                    b0.shape_str()
                )));
            }
            a.ensure_primal(&format!("term {} A", k + 1))?;
            b.ensure_primal(&format!("term {} B", k + 1))?;
        }
        if rhs.shape() != (a_shape.0, b_shape.1) {
            return Err(Error::dimension(format!(
                "C is {}, expected {}x{}",
                rhs.shape_str(),
                a_shape.0,
                b_shape.1
            )));
        }
        rhs.ensure_primal("C")?;
        Ok(MatrixEquation { terms, rhs })
    }

    pub fn terms(&self) -> &[(TropMatrix, TropMatrix)] {
        &self.terms
    }

    pub fn rhs(&self) -> &TropMatrix {
        &self.rhs
    }

    /// Shape `(q, u)` of the unknown.
    pub fn unknown_shape(&self) -> (usize, usize) {
        let (a, b) = &self.terms[0];
        (a.cols(), b.rows())
    }
}

/// Outcome of [`solve_matrix_equation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationReport {
    /// `D = ⊕ᵢ Aᵢ ⊠ Bᵢᵀ`.
    pub operator: TropMatrix,
    /// `x̄ = D# ⊗′ vec(C)`; may contain `+inf` where `D` has an all-`ε` column.
    pub principal: TropMatrix,
    pub solvable: bool,
    /// `unvec(x̄)`, the greatest solution, when one exists.
    pub solution: Option<TropMatrix>,
    /// Zero-based rows of `vec(C)` where `D ⊗ x̄` falls short.
    pub residual_rows: Vec<usize>,
}

fn ensure_rhs(a: &TropMatrix, b: &TropMatrix) -> Result<()> {
    if !b.is_column() || a.rows() != b.rows() {
        return Err(Error::dimension(format!(
            "A is {} but b is {}; expected a column with {} rows",
            a.shape_str(),
            b.shape_str(),
            a.rows()
        )));
    }
    Ok(())
}

/// `x̄ = A# ⊗′ b`, componentwise `x̄ⱼ = minᵢ (bᵢ - a_ij)` over finite `a_ij`
/// (`+inf` when column `j` of `A` is all `ε`).
pub fn principal_solution(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    ensure_rhs(a, b)?;
    a.ensure_primal("principal_solution A")?;
    b.ensure_primal("principal_solution b")?;
    mat_otimes_prime(&conjugate(a), b)
}

/// Zero-based rows where `A ⊗ x̄` differs from `b`, for `x̄` the principal
/// solution (which may carry `+inf`).
pub fn residual_rows(a: &TropMatrix, b: &TropMatrix, principal: &TropMatrix) -> Result<Vec<usize>> {
    // ε ⊗ ⊤ = ε, so ⊤ components only ever meet all-ε columns here.
    let ax = otimes_extended(a, principal)?;
    Ok((0..b.rows()).filter(|&i| ax.get(i, 0) != b.get(i, 0)).collect())
}

/// `A ⊗ x = b` has a solution iff `A ⊗ x̄ = b`.
pub fn is_solvable(a: &TropMatrix, b: &TropMatrix) -> Result<bool> {
    let x = principal_solution(a, b)?;
    Ok(residual_rows(a, b, &x)?.is_empty())
}

/// `D = ⊕ᵢ Aᵢ ⊠ Bᵢᵀ`, of shape `(p·v) × (q·u)`.
pub fn assemble_operator(eq: &MatrixEquation) -> Result<TropMatrix> {
    let mut terms = eq.terms.iter();
    let (a0, b0) = terms.next().expect("equations have at least one term");
    let mut d = tensor(a0, &b0.transpose())?;
    for (a, b) in terms {
        d = mat_oplus(&d, &tensor(a, &b.transpose())?)?;
    }
    Ok(d)
}

/// Solve `⊕ᵢ Aᵢ ⊗ X ⊗ Bᵢ = C` through `D ⊗ vec(X) = vec(C)`.
pub fn solve_matrix_equation(eq: &MatrixEquation) -> Result<EquationReport> {
    let operator = assemble_operator(eq)?;
    let rhs = vec(&eq.rhs);
    let principal = principal_solution(&operator, &rhs)?;
    let residual_rows = residual_rows(&operator, &rhs, &principal)?;
    let solvable = residual_rows.is_empty();
    let solution = if solvable {
        let (q, u) = eq.unknown_shape();
        Some(unvec(&principal, q, u)?)
    } else {
        None
    };
    Ok(EquationReport {
        operator,
        principal,
        solvable,
        solution,
        residual_rows,
    })
}

/// Direct evaluation of `⊕ᵢ Aᵢ ⊗ X ⊗ Bᵢ`.
///
/// `X` may hold `+inf` entries (as the greatest solution does where `X` is
/// unconstrained); they are absorbed by the `ε` entries that make them free.
pub fn evaluate_equation(eq: &MatrixEquation, x: &TropMatrix) -> Result<TropMatrix> {
    if x.shape() != eq.unknown_shape() {
        let (q, u) = eq.unknown_shape();
        return Err(Error::dimension(format!(
            "X is {}, expected {q}x{u}",
            x.shape_str()
        )));
    }
    let mut acc: Option<TropMatrix> = None;
    for (a, b) in &eq.terms {
        let term = if x.has_top() {
            otimes_extended(&otimes_extended(a, x)?, b)?
        } else {
            mat_otimes(&mat_otimes(a, x)?, b)?
        };
        acc = Some(match acc {
            None => term,
            Some(prev) => mat_oplus(&prev, &term)?,
        });
    }
    Ok(acc.expect("equations have at least one term"))
}
