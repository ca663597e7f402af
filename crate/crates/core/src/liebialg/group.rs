use nalgebra::Matrix3;
use num_traits::ToPrimitive;

use super::LieAlgebra;
use crate::error::{Error, Result};

/// Entry tolerance of [`commutator_check`].
pub const COMMUTATOR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `ρ(x̂) = ηE₁₃`, `ρ(ŷ) = ηE₂₃`, `ρ(ẑ) = −η(E₁₁ + E₂₂)`, elements
    /// `exp(zρ(ẑ)) exp(yρ(ŷ)) exp(xρ(x̂))`.
    Book,
    /// `ρ(x̂) = ηE₁₂`, `ρ(ŷ) = ηE₂₃`, `ρ(ẑ) = ηE₁₃`, elements
    /// `exp(xρ(x̂)) exp(yρ(ŷ)) exp(zρ(ẑ))`.
    HeisenbergWeyl,
}

/// A 3×3 matrix representation of a dual group together with the
/// coordinate parametrization of its elements.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixLieGroupRep {
    kind: GroupKind,
    eta: f64,
    generators: [Matrix3<f64>; 3],
    order: [usize; 3],
}

fn unit(r: usize, c: usize) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    m[(r, c)] = 1.0;
    m
}

impl MatrixLieGroupRep {
    pub fn new(kind: GroupKind, eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta == 0.0 {
            return Err(Error::parameter(
                "eta",
                "the group parametrization needs a finite nonzero η",
            ));
        }
        let (generators, order) = match kind {
            GroupKind::Book => (
                [
                    unit(0, 2) * eta,
                    unit(1, 2) * eta,
                    (unit(0, 0) + unit(1, 1)) * -eta,
                ],
                [2, 1, 0],
            ),
            GroupKind::HeisenbergWeyl => (
                [unit(0, 1) * eta, unit(1, 2) * eta, unit(0, 2) * eta],
                [0, 1, 2],
            ),
        };
        Ok(Self {
            kind,
            eta,
            generators,
            order,
        })
    }

    pub fn book(eta: f64) -> Result<Self> {
        Self::new(GroupKind::Book, eta)
    }

    pub fn heisenberg_weyl(eta: f64) -> Result<Self> {
        Self::new(GroupKind::HeisenbergWeyl, eta)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `ρ(x̂), ρ(ŷ), ρ(ẑ)`.
    pub fn generators(&self) -> &[Matrix3<f64>; 3] {
        &self.generators
    }

    /// The group element with coordinates `s = (x, y, z)`.
    pub fn element(&self, s: &[f64; 3]) -> Matrix3<f64> {
        self.order.iter().fold(Matrix3::identity(), |acc, &k| {
            acc * (self.generators[k] * s[k]).exp()
        })
    }

    /// Inverse of [`element`](Self::element).
    pub fn coordinates(&self, g: &Matrix3<f64>) -> [f64; 3] {
        let eta = self.eta;
        match self.kind {
            GroupKind::Book => {
                let a = g[(0, 0)];
                [g[(0, 2)] / (eta * a), g[(1, 2)] / (eta * a), -a.ln() / eta]
            }
            GroupKind::HeisenbergWeyl => {
                let (x, y) = (g[(0, 1)] / eta, g[(1, 2)] / eta);
                [x, y, (g[(0, 2)] - eta * eta * x * y) / eta]
            }
        }
    }

    /// Coordinates of `G(s1)·G(s2)`.
    pub fn multiply(&self, s1: &[f64; 3], s2: &[f64; 3]) -> [f64; 3] {
        self.coordinates(&(self.element(s1) * self.element(s2)))
    }
}

/// One entry of `[ρ_i, ρ_j] − η c^k_ij ρ_k` above tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericResidual {
    pub pair: (usize, usize),
    pub entry: (usize, usize),
    pub value: f64,
}

/// Check `[ρ(x̂_i), ρ(x̂_j)] = η c^k_ij ρ(x̂_k)` entrywise to 1e-12, where `g`
/// holds the η = 1 structure constants.
pub fn commutator_check(rep: &MatrixLieGroupRep, g: &LieAlgebra) -> Vec<NumericResidual> {
    assert_eq!(g.dim(), 3, "three generators");
    let rho = rep.generators();
    let mut out = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut m = rho[i] * rho[j] - rho[j] * rho[i];
            for (k, rk) in rho.iter().enumerate() {
                let c = g.constant(i, j, k).to_f64().expect("finite rational");
                m -= rk * (rep.eta() * c);
            }
            for r in 0..3 {
                for c in 0..3 {
                    if m[(r, c)].abs() > COMMUTATOR_TOLERANCE {
                        out.push(NumericResidual {
                            pair: (i, j),
                            entry: (r, c),
                            value: m[(r, c)],
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn book_element_matches_closed_form() {
        let eta = 0.7;
        let rep = MatrixLieGroupRep::book(eta).unwrap();
        let (x, y, z): (f64, f64, f64) = (0.3, -1.1, 0.4);
        let g = rep.element(&[x, y, z]);
        let e = (-eta * z).exp();
        assert!((g[(0, 0)] - e).abs() < 1e-14);
        assert!((g[(0, 2)] - eta * x * e).abs() < 1e-14);
        assert!((g[(1, 2)] - eta * y * e).abs() < 1e-14);
        assert_eq!(g[(2, 2)], 1.0);
    }

    #[test]
    fn coordinates_invert_elements() {
        for rep in [
            MatrixLieGroupRep::book(1.3).unwrap(),
            MatrixLieGroupRep::heisenberg_weyl(-0.6).unwrap(),
        ] {
            let s = [0.2, -0.9, 1.7];
            let back = rep.coordinates(&rep.element(&s));
            for k in 0..3 {
                assert!((back[k] - s[k]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_eta_is_rejected() {
        assert!(MatrixLieGroupRep::book(0.0).is_err());
    }
}
