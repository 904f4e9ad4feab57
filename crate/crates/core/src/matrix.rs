//! Dense tropical matrices.
//!
//! Storage is row-major with explicit `(rows, cols)`. Empty matrices are
//! rejected at construction. `⊤` entries may be stored (they come out of
//! [`conjugate`]) but the max-plus products refuse them.

use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{neg, oplus, oplus_prime, otimes, otimes_prime, TropScalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropScalar>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dimension(format!(
                "empty matrix {rows}x{cols} is not allowed"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::dimension(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(TropMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::dimension(format!(
                "row {} has {} entries, expected {c}",
                bad + 1,
                rows[bad].len()
            )));
        }
        TropMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries; `None` stands for `ε`.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Result<Self> {
        TropMatrix::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.map_or(TropScalar::Eps, TropScalar::int))
                        .collect()
                })
                .collect(),
        )
    }

    /// Column vector.
    pub fn column(values: Vec<TropScalar>) -> Result<Self> {
        TropMatrix::new(values.len(), 1, values)
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TropScalar,
    ) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix {rows}x{cols}");
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        TropMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// The all-`ε` matrix, identity of `⊕`.
    pub fn eps(rows: usize, cols: usize) -> Self {
        TropMatrix::from_fn(rows, cols, |_, _| TropScalar::Eps)
    }

    /// Unit matrix: `0` on the diagonal, `ε` elsewhere.
    pub fn identity(n: usize) -> Self {
        TropMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TropScalar::ONE
            } else {
                TropScalar::Eps
            }
        })
    }

    /// Unit of the dual product: `0` on the diagonal, `⊤` elsewhere.
    pub fn dual_identity(n: usize) -> Self {
        TropMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TropScalar::ONE
            } else {
                TropScalar::Top
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_column(&self) -> bool {
        self.cols == 1
    }

    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> TropScalar {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[TropScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<TropScalar> {
        self.entries
    }

    pub fn transpose(&self) -> TropMatrix {
        TropMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn has_top(&self) -> bool {
        self.entries.iter().any(|v| v.is_top())
    }

    pub fn all_eps(&self) -> bool {
        self.entries.iter().all(|v| v.is_eps())
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    /// Entrywise `self ≤ other` (shapes must agree).
    pub fn le(&self, other: &TropMatrix) -> bool {
        self.shape() == other.shape()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn shape_str(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    /// Rejects `⊤` entries for the max-plus operations.
    pub(crate) fn ensure_primal(&self, what: &str) -> Result<()> {
        if let Some(k) = self.entries.iter().position(|v| v.is_top()) {
            return Err(Error::domain(format!(
                "{what}: entry ({}, {}) is +inf; max-plus operands must be +inf-free",
                k / self.cols + 1,
                k % self.cols + 1
            )));
        }
        Ok(())
    }

    pub(crate) fn ensure_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::dimension(format!(
                "{what} needs a square matrix, got {}",
                self.shape_str()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TropMatrix {
    /// The text matrix format: one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A bijection of `{0, …, n-1}` (printed one-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(Error::domain(format!("{map:?} is not a permutation")));
            }
            seen[t] = true;
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `w(π, A) = ⊗ᵢ a_{i,π(i)}`.
    pub fn weight(&self, a: &TropMatrix) -> TropScalar {
        debug_assert_eq!(a.shape(), (self.len(), self.len()));
        self.0
            .iter()
            .enumerate()
            .fold(TropScalar::ONE, |acc, (i, &j)| otimes(acc, a.get(i, j)))
    }

    /// One-based images `π(1) … π(n)`.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        f.write_str(&images.join(" "))
    }
}

fn same_shape(a: &TropMatrix, b: &TropMatrix, what: &str) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::dimension(format!(
            "{what}: shapes {} and {} differ",
            a.shape_str(),
            b.shape_str()
        )));
    }
    Ok(())
}

fn product_compatible(a: &TropMatrix, b: &TropMatrix, what: &str) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::dimension(format!(
            "{what}: {} and {} are not product compatible",
            a.shape_str(),
            b.shape_str()
        )));
    }
    Ok(())
}

/// `A ⊕ B`, entrywise maximum.
pub fn mat_oplus(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    same_shape(a, b, "A ⊕ B")?;
    Ok(TropMatrix {
        rows: a.rows,
        cols: a.cols,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(&x, &y)| oplus(x, y))
            .collect(),
    })
}

/// `A ⊗ B` over max-plus. Both operands must be `⊤`-free.
pub fn mat_otimes(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    product_compatible(a, b, "A ⊗ B")?;
    a.ensure_primal("A ⊗ B (left)")?;
    b.ensure_primal("A ⊗ B (right)")?;
    Ok(max_plus_product(a, b))
}

/// Max-plus product with `ε` absorbing `⊤`; used where a principal solution
/// may carry `⊤` components facing all-`ε` columns.
pub(crate) fn otimes_extended(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    product_compatible(a, b, "A ⊗ B")?;
    Ok(max_plus_product(a, b))
}

fn max_plus_product(a: &TropMatrix, b: &TropMatrix) -> TropMatrix {
    TropMatrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(TropScalar::Eps, |acc, k| {
            oplus(acc, otimes(a.get(i, k), b.get(k, j)))
        })
    })
}

/// `A ⊗′ B` over min-plus with the `ε ⊗′ ⊤ = ⊤` rule.
pub fn mat_otimes_prime(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    product_compatible(a, b, "A ⊗′ B")?;
    Ok(TropMatrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(TropScalar::Top, |acc, k| {
            oplus_prime(acc, otimes_prime(a.get(i, k), b.get(k, j)))
        })
    }))
}

/// `α ⊗ A`.
pub fn scalar_mul(alpha: TropScalar, a: &TropMatrix) -> TropMatrix {
    TropMatrix {
        rows: a.rows,
        cols: a.cols,
        entries: a.entries.iter().map(|&x| otimes(alpha, x)).collect(),
    }
}

/// `A# = -Aᵀ`; `ε` entries become `⊤`.
pub fn conjugate(a: &TropMatrix) -> TropMatrix {
    TropMatrix::from_fn(a.cols, a.rows, |i, j| neg(a.get(j, i)))
}

/// Tropical tensor product `A ⊠ B`.
///
/// Block `(i, j)` of the result is `A ⊗ b_ij`, so B's entries index the
/// blocks:
///
/// ```text
/// (A ⊠ B)[i·m + k, j·q + l] = a_kl ⊗ b_ij      (A is m×q, zero-based)
/// ```
///
/// This is the mirror of the usual Kronecker layout; the vec identity
/// `vec(A⊗X⊗B) = (A ⊠ Bᵀ) ⊗ vec(X)` depends on it.
pub fn tensor(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    a.ensure_primal("A ⊠ B (left)")?;
    b.ensure_primal("A ⊠ B (right)")?;
    let (m, q) = a.shape();
    let (r, s) = b.shape();
    Ok(TropMatrix::from_fn(r * m, s * q, |row, col| {
        let (i, k) = (row / m, row % m);
        let (j, l) = (col / q, col % q);
        otimes(a.get(k, l), b.get(i, j))
    }))
}

/// Column-major stacking: component `j·rows + i` is `x_ij`.
pub fn vec(x: &TropMatrix) -> TropMatrix {
    TropMatrix::from_fn(x.rows * x.cols, 1, |k, _| x.get(k % x.rows, k / x.rows))
}

/// Inverse of [`vec`].
pub fn unvec(v: &TropMatrix, rows: usize, cols: usize) -> Result<TropMatrix> {
    if !v.is_column() || v.rows != rows * cols || rows == 0 || cols == 0 {
        return Err(Error::dimension(format!(
            "cannot reshape {} into {rows}x{cols}",
            v.shape_str()
        )));
    }
    Ok(TropMatrix::from_fn(rows, cols, |i, j| v.get(j * rows + i, 0)))
}

/// `diag(d₁, …, dₙ)`; every `dᵢ` must be finite.
pub fn diag(d: &[TropScalar]) -> Result<TropMatrix> {
    if d.is_empty() {
        return Err(Error::dimension("diag of an empty list"));
    }
    if let Some(k) = d.iter().position(|v| !v.is_finite()) {
        return Err(Error::domain(format!(
            "diagonal entry {} is {}, expected a finite value",
            k + 1,
            d[k]
        )));
    }
    Ok(TropMatrix::from_fn(d.len(), d.len(), |i, j| {
        if i == j {
            d[i]
        } else {
            TropScalar::Eps
        }
    }))
}

/// Inverse of a generalized permutation matrix.
///
/// A max-plus matrix is invertible iff it has exactly one finite entry in
/// every row and every column; then `(A⁻¹)_{π(i),i} = -a_{i,π(i)}`.
pub fn try_invert(a: &TropMatrix) -> Result<TropMatrix> {
    a.ensure_square("try_invert")?;
    a.ensure_primal("try_invert")?;
    let n = a.rows;
    let mut target = vec![usize::MAX; n];
    let mut col_used = vec![false; n];
    for (i, slot) in target.iter_mut().enumerate() {
        let mut finite = (0..n).filter(|&j| a.get(i, j).is_finite());
        let (Some(j), None) = (finite.next(), finite.next()) else {
            return Err(Error::NotInvertible);
        };
        if col_used[j] {
            return Err(Error::NotInvertible);
        }
        col_used[j] = true;
        *slot = j;
    }
    let mut inv = TropMatrix::eps(n, n);
    for (i, &j) in target.iter().enumerate() {
        inv.entries[j * n + i] = neg(a.get(i, j));
    }
    if max_plus_product(a, &inv) != TropMatrix::identity(n) {
        return Err(Error::NotInvertible);
    }
    Ok(inv)
}
