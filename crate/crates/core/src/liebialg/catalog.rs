//! Named algebras, pencils and cocommutators.
//!
//! Three-dimensional entries use the basis `X, Y, Z`; the centrally extended
//! ones add `W`, the central generator also written `I`.

use super::{q, Cocommutator, LieAlgebra, LiePencil, Q};

const XYZ: [&str; 3] = ["X", "Y", "Z"];
const XYZW: [&str; 4] = ["X", "Y", "Z", "W"];
const X_HAT: &str = "x\u{302}";
const Y_HAT: &str = "y\u{302}";
const Z_HAT: &str = "z\u{302}";

/// (1+1) Poincaré: `[X,Z] = Y`, `[Y,Z] = X`, `[X,Y] = 0`.
pub fn poincare() -> LieAlgebra {
    LieAlgebra::abelian(XYZ)
        .with_bracket("X", "Z", &[("Y", q(1))])
        .with_bracket("Y", "Z", &[("X", q(1))])
}

/// The so(3)-type endpoint of the AB pencil: `[X,Y] = 2Z`, `[X,Z] = −Y`,
/// `[Y,Z] = X`.
pub fn so3_ab() -> LieAlgebra {
    LieAlgebra::abelian(XYZ)
        .with_bracket("X", "Y", &[("Z", q(2))])
        .with_bracket("X", "Z", &[("Y", q(-1))])
        .with_bracket("Y", "Z", &[("X", q(1))])
}

/// `(1−λ)·poincare + λ·so3_ab`.
pub fn ab_pencil() -> LiePencil {
    LiePencil::new("case-ab", poincare(), so3_ab()).expect("same basis")
}

/// Centrally extended Poincaré: `[X,Y] = 2βW`, `[Y,Z] = X`, `[Z,X] = −Y`.
pub fn extended_poincare(beta: Q) -> LieAlgebra {
    LieAlgebra::abelian(XYZW)
        .with_bracket("X", "Y", &[("W", q(2) * beta)])
        .with_bracket("Y", "Z", &[("X", q(1))])
        .with_bracket("Z", "X", &[("Y", q(-1))])
}

/// Centrally extended so(3): `[X,Y] = 2Z`, `[Y,Z] = X`, `[Z,X] = Y`.
pub fn extended_so3() -> LieAlgebra {
    LieAlgebra::abelian(XYZW)
        .with_bracket("X", "Y", &[("Z", q(2))])
        .with_bracket("Y", "Z", &[("X", q(1))])
        .with_bracket("Z", "X", &[("Y", q(1))])
}

/// `[X,Y] = (1−λ)2βW + 2λZ`, `[Y,Z] = X`, `[Z,X] = (2λ−1)Y`.
pub fn case_b_pencil(beta: Q) -> LiePencil {
    LiePencil::new("case-b", extended_poincare(beta), extended_so3()).expect("same basis")
}

/// `δ(X) = X∧Z`, `δ(Y) = Y∧Z`, `δ(Z) = 0` (η = 1).
pub fn book_cocommutator() -> Cocommutator {
    Cocommutator::zero(XYZ)
        .with_wedge("X", "X", "Z", q(1))
        .with_wedge("Y", "Y", "Z", q(1))
}

/// The book cocommutator on the centrally extended basis.
pub fn book_cocommutator_extended() -> Cocommutator {
    Cocommutator::zero(XYZW)
        .with_wedge("X", "X", "Z", q(1))
        .with_wedge("Y", "Y", "Z", q(1))
}

/// `δ(Z) = X∧Y` (η = 1).
pub fn heisenberg_cocommutator() -> Cocommutator {
    Cocommutator::zero(XYZ).with_wedge("Z", "X", "Y", q(1))
}

/// Cocommutator of the Poincaré dual: `δ*(x̂) = ŷ∧ẑ`, `δ*(ŷ) = x̂∧ẑ`.
/// Dualizing it returns the Poincaré constants.
pub fn poincare_dual_cocommutator() -> Cocommutator {
    Cocommutator::zero(XYZ)
        .with_wedge("X", "Y", "Z", q(1))
        .with_wedge("Y", "X", "Z", q(1))
}

/// `δ(X) = 2βc₂ Z∧W`, `δ(Y) = c₂ X∧Y`, `δ(Z) = c₂(X∧Z − βX∧W)`.
///
/// The `X∧W` coefficient `−βc₂` is what λ-independence of the `Z∧W` term in
/// `δ(X)` forces; at β = 1 it reads `c₂(X∧Z − X∧W)`.
pub fn theorem_family(beta: Q, c2: Q) -> Cocommutator {
    Cocommutator::zero(XYZW)
        .with_wedge("X", "Z", "W", q(2) * &beta * &c2)
        .with_wedge("Y", "X", "Y", c2.clone())
        .with_wedge("Z", "X", "Z", c2.clone())
        .with_wedge("Z", "X", "W", -(beta * c2))
}

/// The second direction of the β ≠ 0 case-B common-cocycle space:
/// `δ(X) = −X∧Y`, `δ(Y) = −2β Z∧W`, `δ(Z) = Y∧Z + β Y∧W`.
pub fn case_b_second_cocycle(beta: Q) -> Cocommutator {
    Cocommutator::zero(XYZW)
        .with_wedge("X", "X", "Y", q(-1))
        .with_wedge("Y", "Z", "W", q(-2) * &beta)
        .with_wedge("Z", "Y", "Z", q(1))
        .with_wedge("Z", "Y", "W", beta)
}

/// `[x̂,ẑ] = x̂`, `[ŷ,ẑ] = ŷ`.
pub fn book_dual_algebra() -> LieAlgebra {
    LieAlgebra::abelian([X_HAT, Y_HAT, Z_HAT])
        .with_bracket(X_HAT, Z_HAT, &[(X_HAT, q(1))])
        .with_bracket(Y_HAT, Z_HAT, &[(Y_HAT, q(1))])
}

/// `[x̂,ŷ] = ẑ`.
pub fn heisenberg_algebra() -> LieAlgebra {
    LieAlgebra::abelian([X_HAT, Y_HAT, Z_HAT]).with_bracket(X_HAT, Y_HAT, &[(Z_HAT, q(1))])
}

/// so(2,1) in the basis `[X1,X2] = X3`, `[X1,X3] = X2`, `[X2,X3] = X1`;
/// satisfies Jacobi.
pub fn so21_fixture() -> LieAlgebra {
    LieAlgebra::abelian(["X1", "X2", "X3"])
        .with_bracket("X1", "X2", &[("X3", q(1))])
        .with_bracket("X1", "X3", &[("X2", q(1))])
        .with_bracket("X2", "X3", &[("X1", q(1))])
}

/// Deliberate Jacobi failure: `[X1,X2] = X3`, `[X1,X3] = X2`, `[X2,X3] = X2`.
pub fn broken_algebra() -> LieAlgebra {
    LieAlgebra::abelian(["X1", "X2", "X3"])
        .with_bracket("X1", "X2", &[("X3", q(1))])
        .with_bracket("X1", "X3", &[("X2", q(1))])
        .with_bracket("X2", "X3", &[("X2", q(1))])
}

/// `(id, algebra)` pairs that must satisfy Jacobi.
pub fn named_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("poincare", poincare()),
        ("so3-ab", so3_ab()),
        ("extended-poincare(beta=1)", extended_poincare(q(1))),
        ("extended-so3", extended_so3()),
        ("book-dual", book_dual_algebra()),
        ("heisenberg", heisenberg_algebra()),
        ("so21", so21_fixture()),
    ]
}
