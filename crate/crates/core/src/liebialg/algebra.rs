use num_traits::{One, Zero};

use super::{Residual, Q};
use crate::error::{Error, Result};

/// Structure constants `[X_i, X_j] = c^k_ij X_k` over a labelled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    c: Vec<Q>,
}

impl LieAlgebra {
    /// The abelian algebra on `labels`.
    pub fn abelian<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        Self {
            labels,
            c: vec![Q::zero(); n * n * n],
        }
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::parameter("basis label", format!("no generator `{label}`")))
    }

    /// Add `Σ coeff·X_k` to `[X_a, X_b]` (and its negative to `[X_b, X_a]`).
    pub fn with_bracket(mut self, a: &str, b: &str, terms: &[(&str, Q)]) -> Self {
        let (i, j) = (self.index_of(a).unwrap(), self.index_of(b).unwrap());
        assert_ne!(i, j, "bracket of a generator with itself is zero");
        for (k, coeff) in terms {
            let k = self.index_of(k).unwrap();
            let (s, t) = (self.slot(i, j, k), self.slot(j, i, k));
            self.c[s] += coeff;
            self.c[t] -= coeff;
        }
        self
    }

    /// Set one constant `c^k_ij` (the antisymmetric partner follows).
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Q) {
        let (s, t) = (self.slot(i, j, k), self.slot(j, i, k));
        self.c[t] = -value.clone();
        self.c[s] = value;
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[self.slot(i, j, k)]
    }

    pub fn relabelled<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    /// `a·self + b·other` on the same basis.
    pub fn combine(&self, a: &Q, other: &LieAlgebra, b: &Q) -> LieAlgebra {
        assert_eq!(
            self.dim(),
            other.dim(),
            "pencil endpoints on different bases"
        );
        LieAlgebra {
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(u, v)| a * u + b * v)
                .collect(),
        }
    }

    /// Nonzero brackets as `([X_a, X_b], [(coeff, X_k)])`, `a < b`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<(Q, usize)>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let terms: Vec<(Q, usize)> = (0..n)
                    .filter(|&k| !self.constant(i, j, k).is_zero())
                    .map(|k| (self.constant(i, j, k).clone(), k))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    /// Human-readable bracket table, e.g. `[X,Z] = Y`.
    pub fn describe(&self) -> Vec<String> {
        self.nonzero_brackets()
            .into_iter()
            .map(|(i, j, terms)| {
                let rhs: Vec<String> = terms
                    .iter()
                    .map(|(c, k)| {
                        if c.is_one() {
                            self.labels[*k].clone()
                        } else {
                            format!("({c})·{}", self.labels[*k])
                        }
                    })
                    .collect();
                format!(
                    "[{},{}] = {}",
                    self.labels[i],
                    self.labels[j],
                    rhs.join(" + ")
                )
            })
            .collect()
    }
}

/// Exact Jacobi check. Returns the nonzero components
/// `Σ_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj)` for `i < j < k`.
pub fn jacobi_check(g: &LieAlgebra) -> Vec<Residual> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in 0..n {
                    let mut s = Q::zero();
                    for m in 0..n {
                        s += g.constant(i, j, m) * g.constant(m, k, l);
                        s += g.constant(j, k, m) * g.constant(m, i, l);
                        s += g.constant(k, i, m) * g.constant(m, j, l);
                    }
                    if !s.is_zero() {
                        out.push(Residual {
                            label: "jacobi",
                            indices: vec![i, j, k, l],
                            value: s,
                        });
                    }
                }
            }
        }
    }
    out
}

/// A linear family `(1−λ)·c₀ + λ·c₁` of structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct LiePencil {
    name: String,
    base: LieAlgebra,
    top: LieAlgebra,
}

impl LiePencil {
    pub fn new(name: impl Into<String>, base: LieAlgebra, top: LieAlgebra) -> Result<Self> {
        if base.dim() != top.dim() {
            return Err(Error::dims("pencil endpoints", base.dim(), top.dim()));
        }
        Ok(Self {
            name: name.into(),
            base,
            top,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn endpoints(&self) -> (&LieAlgebra, &LieAlgebra) {
        (&self.base, &self.top)
    }

    pub fn at(&self, lambda: &Q) -> LieAlgebra {
        self.base.combine(&(Q::one() - lambda), &self.top, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, q};
    use super::*;

    #[test]
    fn poincare_and_extended_so3_satisfy_jacobi() {
        assert!(jacobi_check(&catalog::poincare()).is_empty());
        assert!(jacobi_check(&catalog::extended_so3()).is_empty());
        assert!(jacobi_check(&catalog::extended_poincare(q(3))).is_empty());
    }

    #[test]
    fn broken_fixture_fails_jacobi() {
        let r = jacobi_check(&catalog::broken_algebra());
        assert!(!r.is_empty());
        assert_eq!(r[0].label, "jacobi");
    }

    #[test]
    fn pencil_endpoints_are_recovered() {
        let p = catalog::ab_pencil();
        assert_eq!(p.at(&q(0)), catalog::poincare());
        assert_eq!(p.at(&q(1)), catalog::so3_ab());
    }

    #[test]
    fn describe_lists_nonzero_brackets() {
        let d = catalog::poincare().describe();
        assert_eq!(d, vec!["[X,Z] = Y".to_string(), "[Y,Z] = X".to_string()]);
    }
}
