use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::algebra::{jacobi_check, LieAlgebra, LiePencil};
use super::linalg::{in_span, poly_gcd, span_rref, RationalMatrix};
use super::{q, qr, Residual, Q};
use crate::error::{Error, Result};

/// The λ values used to enforce λ-independence of a common cocycle.
pub const STANDARD_LAMBDA_SAMPLES: [(i64, i64); 5] = [(0, 1), (1, 3), (1, 2), (1, 1), (2, 1)];

/// `δ(X_i) = Σ_{j<k} f_i^{jk} X_j∧X_k`, stored with full upper-index
/// antisymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocommutator {
    labels: Vec<String>,
    f: Vec<Q>,
}

impl Cocommutator {
    pub fn zero<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        Self {
            labels,
            f: vec![Q::zero(); n * n * n],
        }
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    fn index_of(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("no generator `{label}`"))
    }

    /// Add `coeff · A∧B` to `δ(X)`.
    pub fn with_wedge(mut self, x: &str, a: &str, b: &str, coeff: Q) -> Self {
        let (i, j, k) = (self.index_of(x), self.index_of(a), self.index_of(b));
        assert_ne!(j, k, "X∧X vanishes");
        self.add_to(i, j, k, coeff);
        self
    }

    fn add_to(&mut self, i: usize, j: usize, k: usize, coeff: Q) {
        let (s, t) = (self.slot(i, j, k), self.slot(i, k, j));
        self.f[t] -= &coeff;
        self.f[s] += coeff;
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `f_i^{jk}`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.f[self.slot(i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(Zero::is_zero)
    }

    /// Number of independent coefficients `f_i^{jk}`, `j < k`.
    pub fn unknowns(n: usize) -> usize {
        n * n * n.saturating_sub(1) / 2
    }

    /// Coefficients in the order `i`, then `(j, k)` with `j < k` row-major.
    pub fn to_vector(&self) -> Vec<Q> {
        let n = self.dim();
        let mut v = Vec::with_capacity(Self::unknowns(n));
        for i in 0..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    v.push(self.coefficient(i, j, k).clone());
                }
            }
        }
        v
    }

    pub fn from_vector(labels: &[String], v: &[Q]) -> Self {
        let n = labels.len();
        assert_eq!(v.len(), Self::unknowns(n));
        let mut d = Self::zero(labels.iter().cloned());
        let mut it = v.iter();
        for i in 0..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    d.add_to(i, j, k, it.next().unwrap().clone());
                }
            }
        }
        d
    }

    pub fn combine(&self, a: &Q, other: &Cocommutator, b: &Q) -> Cocommutator {
        assert_eq!(self.dim(), other.dim());
        Cocommutator {
            labels: self.labels.clone(),
            f: self
                .f
                .iter()
                .zip(&other.f)
                .map(|(u, v)| a * u + b * v)
                .collect(),
        }
    }

    /// The dual structure constants `[x̂^j, x̂^k] = f_i^{jk} x̂^i`, without
    /// any Jacobi check.
    pub fn dual_constants(&self) -> LieAlgebra {
        let n = self.dim();
        let mut g = LieAlgebra::abelian(
            self.labels
                .iter()
                .map(|l| format!("{}\u{0302}", l.to_lowercase())),
        );
        for j in 0..n {
            for k in (j + 1)..n {
                for i in 0..n {
                    let c = self.coefficient(i, j, k);
                    if !c.is_zero() {
                        g.set(j, k, i, c.clone());
                    }
                }
            }
        }
        g
    }

    /// Human-readable form, e.g. `δ(X) = X∧Z`.
    pub fn describe(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            let mut terms = Vec::new();
            for j in 0..n {
                for k in (j + 1)..n {
                    let c = self.coefficient(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let w = format!("{}∧{}", self.labels[j], self.labels[k]);
                    terms.push(if c.is_one() { w } else { format!("({c})·{w}") });
                }
            }
            if !terms.is_empty() {
                out.push(format!("δ({}) = {}", self.labels[i], terms.join(" + ")));
            }
        }
        out
    }
}

fn cocycle_components(g: &LieAlgebra, d: &Cocommutator) -> Vec<(usize, usize, usize, usize, Q)> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for p in 0..n {
                for qq in (p + 1)..n {
                    let mut r = Q::zero();
                    for k in 0..n {
                        r += g.constant(i, j, k) * d.coefficient(k, p, qq);
                    }
                    for a in 0..n {
                        r -= g.constant(i, a, p) * d.coefficient(j, a, qq);
                        r -= g.constant(i, a, qq) * d.coefficient(j, p, a);
                        r += g.constant(j, a, p) * d.coefficient(i, a, qq);
                        r += g.constant(j, a, qq) * d.coefficient(i, p, a);
                    }
                    out.push((i, j, p, qq, r));
                }
            }
        }
    }
    out
}

/// Exact 1-cocycle check `δ([X,Y]) = [δ(X), Y⊗1 + 1⊗Y] + [X⊗1 + 1⊗X, δ(Y)]`
/// on every generator pair `i < j`, read off on the `X_p∧X_q` basis.
pub fn cocycle_residual(g: &LieAlgebra, d: &Cocommutator) -> Result<Vec<Residual>> {
    if g.dim() != d.dim() {
        return Err(Error::dims("cocommutator", g.dim(), d.dim()));
    }
    Ok(cocycle_components(g, d)
        .into_iter()
        .filter(|c| !c.4.is_zero())
        .map(|(i, j, p, qq, value)| Residual {
            label: "cocycle",
            indices: vec![i, j, p, qq],
            value,
        })
        .collect())
}

/// Jacobi identity of the dual bracket defined by `δ`.
pub fn cojacobi_residual(d: &Cocommutator) -> Vec<Residual> {
    jacobi_check(&d.dual_constants())
        .into_iter()
        .map(|r| Residual {
            label: "co-jacobi",
            ..r
        })
        .collect()
}

/// The dual Lie algebra `[x̂^j, x̂^k] = f_i^{jk} x̂^i`; rejected with the
/// residual list when co-Jacobi fails.
pub fn dualize(d: &Cocommutator) -> Result<LieAlgebra> {
    let residuals = cojacobi_residual(d);
    if residuals.is_empty() {
        Ok(d.dual_constants())
    } else {
        Err(Error::CoJacobi(residuals))
    }
}

/// Exact nullspace of the cocycle condition stacked over `lambda_samples`.
///
/// The condition is linear in `f`, so each unknown's column is the residual
/// of the corresponding unit cocommutator. The co-Jacobi filter is applied
/// separately through [`CocycleSpace::analyze_cojacobi`].
pub fn solve_common_cocycle(pencil: &LiePencil, lambda_samples: &[Q]) -> Result<CocycleSpace> {
    let distinct: BTreeSet<&Q> = lambda_samples.iter().collect();
    if distinct.len() < 4 {
        return Err(Error::parameter(
            "lambda_samples",
            format!("need at least 4 distinct values, got {}", distinct.len()),
        ));
    }
    let n = pencil.dim();
    let labels = pencil.endpoints().0.labels().to_vec();
    let m = Cocommutator::unknowns(n);
    let units: Vec<Cocommutator> = (0..m)
        .map(|u| {
            let mut v = vec![Q::zero(); m];
            v[u] = Q::one();
            Cocommutator::from_vector(&labels, &v)
        })
        .collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for lambda in distinct {
        let g = pencil.at(lambda);
        let columns: Vec<Vec<Q>> = units
            .iter()
            .map(|e| cocycle_components(&g, e).into_iter().map(|c| c.4).collect())
            .collect();
        for r in 0..columns[0].len() {
            let row: Vec<Q> = columns.iter().map(|col| col[r].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let basis = RationalMatrix::from_rows(m, rows)
        .nullspace()
        .into_iter()
        .map(|v| Cocommutator::from_vector(&labels, &v))
        .collect();
    Ok(CocycleSpace { labels, basis })
}

/// A linear space of cocommutators given by an exact basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleSpace {
    labels: Vec<String>,
    basis: Vec<Cocommutator>,
}

/// A nonzero surviving direction of the co-Jacobi filter.
#[derive(Debug, Clone, PartialEq)]
pub enum Survivor {
    /// A rational representative of the surviving line.
    Rational(Cocommutator),
    /// The line `s·b_0 + b_1` with `s = (−c1 ± √(c1² − 4c0))/2` irrational;
    /// `plus` picks the sign.
    Irrational { c1: Q, c0: Q, plus: bool },
}

/// Outcome of imposing co-Jacobi on a cocycle space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoJacobiAnalysis {
    pub nullspace_dim: usize,
    /// Co-Jacobi holds on the whole space.
    pub closed: bool,
    /// Largest dimension of a linear subspace on which co-Jacobi holds
    /// (a lower bound when `exact` is false).
    pub surviving_dim: usize,
    pub exact: bool,
    /// Explicit surviving lines when the space is not closed.
    pub survivors: Vec<Survivor>,
}

fn cojacobi_vector(d: &Cocommutator) -> Vec<Q> {
    let g = d.dual_constants();
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
                    out.push(s);
                }
            }
        }
    }
    out
}

fn all_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    let candidate = Q::new(n, d);
    (&candidate * &candidate == *x).then_some(candidate)
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Cocommutator] {
        &self.basis
    }

    fn width(&self) -> usize {
        Cocommutator::unknowns(self.labels.len())
    }

    /// Reduced row-echelon basis; equal for equal spaces.
    pub fn canonical(&self) -> RationalMatrix {
        let vs: Vec<Vec<Q>> = self.basis.iter().map(Cocommutator::to_vector).collect();
        span_rref(self.width(), &vs)
    }

    pub fn contains(&self, d: &Cocommutator) -> bool {
        let vs: Vec<Vec<Q>> = self.basis.iter().map(Cocommutator::to_vector).collect();
        in_span(self.width(), &vs, &d.to_vector())
    }

    /// In the space and a Lie bialgebra cocommutator.
    pub fn survives(&self, d: &Cocommutator) -> bool {
        self.contains(d) && cojacobi_residual(d).is_empty()
    }

    /// Impose the quadratic co-Jacobi condition on the space.
    ///
    /// Exact for dimension ≤ 2 and for spaces on which co-Jacobi holds
    /// identically; otherwise basis vectors and their pairwise sums and
    /// differences give a lower bound.
    pub fn analyze_cojacobi(&self) -> CoJacobiAnalysis {
        let d = self.dim();
        let quad: Vec<Vec<Q>> = self.basis.iter().map(cojacobi_vector).collect();
        let bilinear = |a: usize, b: usize| -> Vec<Q> {
            let sum = self.basis[a].combine(&q(1), &self.basis[b], &q(1));
            cojacobi_vector(&sum)
                .into_iter()
                .zip(&quad[a])
                .zip(&quad[b])
                .map(|((s, u), v)| (s - u - v) / q(2))
                .collect()
        };
        let closed = quad.iter().all(|v| all_zero(v))
            && (0..d).all(|a| ((a + 1)..d).all(|b| all_zero(&bilinear(a, b))));
        let mut result = CoJacobiAnalysis {
            nullspace_dim: d,
            closed,
            surviving_dim: if closed { d } else { 0 },
            exact: true,
            survivors: Vec::new(),
        };
        if closed || d == 0 {
            return result;
        }
        match d {
            1 => {}
            2 => {
                let b = bilinear(0, 1);
                if all_zero(&quad[0]) {
                    result
                        .survivors
                        .push(Survivor::Rational(self.basis[0].clone()));
                }
                // remaining lines s·b0 + b1: components Q0 s² + 2B s + Q1
                let polys: Vec<Vec<Q>> = (0..quad[0].len())
                    .map(|c| vec![quad[1][c].clone(), &b[c] * q(2), quad[0][c].clone()])
                    .collect();
                let g = polys.iter().fold(Vec::new(), |acc, p| {
                    if acc.is_empty() {
                        poly_gcd(p, &Vec::new())
                    } else {
                        poly_gcd(&acc, p)
                    }
                });
                let mut roots = Vec::new();
                match g.len() {
                    2 => roots.push(-g[0].clone()),
                    3 => {
                        let disc = &g[1] * &g[1] - q(4) * &g[0];
                        if disc.is_zero() {
                            roots.push(-&g[1] / q(2));
                        } else if let Some(r) = rational_sqrt(&disc) {
                            roots.push((-&g[1] + &r) / q(2));
                            roots.push((-&g[1] - &r) / q(2));
                        } else if disc.is_positive() {
                            for plus in [true, false] {
                                result.survivors.push(Survivor::Irrational {
                                    c1: g[1].clone(),
                                    c0: g[0].clone(),
                                    plus,
                                });
                            }
                        }
                    }
                    _ => {}
                }
                for s in roots {
                    let v = self.basis[0].combine(&s, &self.basis[1], &q(1));
                    debug_assert!(cojacobi_residual(&v).is_empty());
                    result.survivors.push(Survivor::Rational(v));
                }
            }
            _ => {
                result.exact = false;
                for a in 0..d {
                    if all_zero(&quad[a]) {
                        result
                            .survivors
                            .push(Survivor::Rational(self.basis[a].clone()));
                    }
                    for b in (a + 1)..d {
                        for sign in [1, -1] {
                            let v = self.basis[a].combine(&q(1), &self.basis[b], &q(sign));
                            if cojacobi_residual(&v).is_empty() {
                                result.survivors.push(Survivor::Rational(v));
                            }
                        }
                    }
                }
            }
        }
        if !result.survivors.is_empty() {
            result.surviving_dim = 1;
        }
        result
    }
}

impl CoJacobiAnalysis {
    /// Whether only the zero cocommutator survives.
    pub fn only_trivial(&self) -> bool {
        self.exact && self.surviving_dim == 0
    }
}

/// The standard λ samples as rationals.
pub fn standard_lambdas() -> Vec<Q> {
    STANDARD_LAMBDA_SAMPLES
        .iter()
        .map(|&(n, d)| qr(n, d))
        .collect()
}
