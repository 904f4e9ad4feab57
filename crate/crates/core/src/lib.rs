//! Max-plus linear algebra built around the tropical tensor product.
//!
//! - [`semiring`]: extended scalars with `(max, +)` and the dual `(min, +)`.
//! - [`matrix`]: dense matrices, products, the tensor product `⊠`, `vec`,
//!   conjugation and inversion of generalized permutation matrices.
//! - [`assignment`]: tropical permanent and Hungarian dual scalings.
//! - [`spectral`]: maximum cycle mean, Kleene star, eigenvectors.
//! - [`solver`]: residuation and the matrix equation `⊕ᵢ Aᵢ⊗X⊗Bᵢ = C`.
//! - [`oracle`]: brute-force references for testing.
//! - [`text`] and [`cli`]: file formats and the `tropt` command.
//!
//! ```
//! use tropical_tensor::{maper, tensor, TropMatrix};
//!
//! let a: TropMatrix = "4".parse().unwrap();
//! let b: TropMatrix = "2 1\n0 3".parse().unwrap();
//! let t = tensor(&a, &b).unwrap();
//! assert_eq!(t, "6 5\n4 7".parse().unwrap());
//! assert_eq!(maper(&t).unwrap().value, 13.into());
//! ```

pub mod assignment;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod semiring;
pub mod solver;
pub mod spectral;
pub mod text;

pub use assignment::{
    hungarian_scaling, maper, maper_tensor_exponent_check, AssignmentResult, TensorPermanentCheck,
};
pub use error::{Error, Result};
pub use matrix::{
    conjugate, diag, mat_oplus, mat_otimes, mat_otimes_prime, scalar_mul, tensor, try_invert,
    unvec, vec, Permutation, TropMatrix,
};
pub use semiring::{neg, oplus, oplus_prime, otimes, otimes_prime, TropScalar};
pub use solver::{
    assemble_operator, evaluate_equation, is_solvable, principal_solution, residual_rows,
    solve_matrix_equation, EquationReport, MatrixEquation,
};
pub use spectral::{eigenpair, is_irreducible, kleene_star, max_cycle_mean, EigenResult};
pub use text::{format_equation, format_matrix, parse_equation, parse_matrix};
