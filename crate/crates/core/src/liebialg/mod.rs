//! Exact Lie algebra and Lie bialgebra computations.
//!
//! Structure constants `c^k_ij` and cocommutator coefficients `f_i^{jk}` are
//! arbitrary-precision rationals, so every residual is an exact zero or an
//! exact nonzero. Wedges follow `X∧Y = X⊗Y − Y⊗X`.

mod algebra;
pub mod catalog;
mod cocycle;
mod group;
pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use algebra::{jacobi_check, LieAlgebra, LiePencil};
pub use cocycle::{
    cocycle_residual, cojacobi_residual, dualize, solve_common_cocycle, standard_lambdas,
    CoJacobiAnalysis, Cocommutator, CocycleSpace, Survivor, STANDARD_LAMBDA_SAMPLES,
};
pub use group::{commutator_check, GroupKind, MatrixLieGroupRep, NumericResidual};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// One nonzero component of an exact identity check.
///
/// `label` names the identity and `indices` the basis slots, e.g. Jacobi
/// `(i, j, k; l)` or cocycle `(i, j; p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub label: &'static str,
    pub indices: Vec<usize>,
    pub value: Q,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{}[{}] = {}", self.label, idx.join(","), self.value)
    }
}
