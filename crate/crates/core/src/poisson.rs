//! Poisson structures, brackets and Hamiltonian vector fields.
//!
//! A structure stores only its strictly upper-triangular entries `Π^{ij}`
//! (`i < j`) as [`ScalarField`]s, so antisymmetry of the assembled matrix holds
//! by construction and the entry gradients double as the analytic partials
//! `∂_l Π^{ij}` needed by the Jacobi residual.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::field::ScalarField;

/// Coordinates of a point together with their labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePoint {
    names: Vec<String>,
    coords: Vec<f64>,
}

impl StatePoint {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        coords: Vec<f64>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != coords.len() {
            return Err(Error::dims("state point labels", names.len(), coords.len()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::domain(&names[i], "non-finite coordinate"));
        }
        Ok(Self { names, coords })
    }

    /// Convenience constructor for the `(x, y, z)` chart.
    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self::new(["x", "y", "z"], vec![x, y, z]).expect("finite xyz point")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl Deref for StatePoint {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.coords
    }
}

/// How `∂_l Π^{ij}` is obtained for the Jacobi residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partials {
    /// Use each entry's own gradient (analytic where the entry provides one).
    Analytic,
    /// Force central finite differences for every entry.
    FiniteDifference,
}

#[derive(Clone)]
pub struct PoissonStructure {
    name: String,
    names: Vec<String>,
    entries: Vec<ScalarField>,
    casimirs: Vec<ScalarField>,
}

impl fmt::Debug for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoissonStructure")
            .field("name", &self.name)
            .field("coordinates", &self.names)
            .field(
                "casimirs",
                &self.casimirs.iter().map(|c| c.name()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn upper_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl PoissonStructure {
    /// Build from the upper-triangular entries in row-major order:
    /// `(0,1), (0,2), …, (0,n−1), (1,2), …`.
    pub fn from_upper<S: Into<String>>(
        name: impl Into<String>,
        names: impl IntoIterator<Item = S>,
        entries: Vec<ScalarField>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let dim = names.len();
        let expected = dim * dim.saturating_sub(1) / 2;
        if entries.len() != expected {
            return Err(Error::dims(
                "upper-triangular bracket entries",
                expected,
                entries.len(),
            ));
        }
        if let Some(bad) = entries.iter().find(|e| e.arity() != dim) {
            return Err(Error::dims(
                format!("bracket entry `{}`", bad.name()),
                dim,
                bad.arity(),
            ));
        }
        Ok(Self {
            name: name.into(),
            names,
            entries,
            casimirs: Vec::new(),
        })
    }

    pub fn with_casimir(mut self, casimir: ScalarField) -> Self {
        assert_eq!(casimir.arity(), self.dim(), "casimir arity");
        self.casimirs.push(casimir);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.names
    }

    pub fn casimirs(&self) -> &[ScalarField] {
        &self.casimirs
    }

    /// The bracket `{x_i, x_j}` as a field; `i == j` gives zero, `i > j` the
    /// negated upper entry.
    pub fn entry(&self, i: usize, j: usize) -> ScalarField {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => ScalarField::constant(format!("{{x{i},x{i}}}"), n, 0.0),
            std::cmp::Ordering::Less => self.entries[upper_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => {
                let e = self.entries[upper_index(n, j, i)].clone();
                let zero = ScalarField::constant("0", n, 0.0);
                e.linear_combination(
                    -1.0,
                    &zero,
                    0.0,
                    format!("-{}", self.entries[upper_index(n, j, i)].name()),
                )
            }
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::dims(
                format!("structure `{}`", self.name),
                self.dim(),
                x.len(),
            ));
        }
        Ok(())
    }

    /// `Π(x)`, antisymmetric by construction.
    pub fn matrix(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.entries[upper_index(n, i, j)].value(x)?;
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        Ok(m)
    }

    /// `∂_l Π^{ij}(x)` as `partials[l][(i, j)]`.
    pub fn partials(&self, x: &[f64], mode: Partials) -> Result<Vec<DMatrix<f64>>> {
        self.check_point(x)?;
        let n = self.dim();
        let mut out = vec![DMatrix::zeros(n, n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let e = &self.entries[upper_index(n, i, j)];
                let g = match mode {
                    Partials::Analytic => e.gradient(x)?,
                    Partials::FiniteDifference => e.fd_gradient(x)?,
                };
                for (l, dl) in g.into_iter().enumerate() {
                    out[l][(i, j)] = dl;
                    out[l][(j, i)] = -dl;
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum on the concatenated coordinates; each factor's
    /// Casimirs are lifted to the sum.
    pub fn direct_sum(&self, other: &PoissonStructure) -> PoissonStructure {
        let (na, nb) = (self.dim(), other.dim());
        let n = na + nb;
        let names: Vec<String> = self
            .names
            .iter()
            .map(|s| format!("{s}1"))
            .chain(other.names.iter().map(|s| format!("{s}2")))
            .collect();
        let mut entries = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let e = if j < na {
                    self.entries[upper_index(na, i, j)].lift(n, 0)
                } else if i >= na {
                    other.entries[upper_index(nb, i - na, j - na)].lift(n, na)
                } else {
                    ScalarField::constant("0", n, 0.0)
                };
                entries.push(e);
            }
        }
        let casimirs = self
            .casimirs
            .iter()
            .map(|c| c.lift(n, 0).renamed(format!("{}[1]", c.name())))
            .chain(
                other
                    .casimirs
                    .iter()
                    .map(|c| c.lift(n, na).renamed(format!("{}[2]", c.name()))),
            )
            .collect();
        PoissonStructure {
            name: format!("{} ⊕ {}", self.name, other.name),
            names,
            entries,
            casimirs,
        }
    }
}

/// `{f, g}(x) = ∇f(x)ᵀ Π(x) ∇g(x)`.
pub fn bracket(
    structure: &PoissonStructure,
    f: &ScalarField,
    g: &ScalarField,
    x: &[f64],
) -> Result<f64> {
    structure.check_point(x)?;
    for h in [f, g] {
        if h.arity() != structure.dim() {
            return Err(Error::dims(
                format!("field `{}`", h.name()),
                structure.dim(),
                h.arity(),
            ));
        }
    }
    let pi = structure.matrix(x)?;
    let gf = nalgebra::DVector::from_vec(f.gradient(x)?);
    let gg = nalgebra::DVector::from_vec(g.gradient(x)?);
    Ok(gf.dot(&(pi * gg)))
}

/// `Π(x) ∇H(x)`.
pub fn poisson_vector_field(
    structure: &PoissonStructure,
    h: &ScalarField,
    x: &[f64],
) -> Result<Vec<f64>> {
    structure.check_point(x)?;
    if h.arity() != structure.dim() {
        return Err(Error::dims(
            format!("hamiltonian `{}`", h.name()),
            structure.dim(),
            h.arity(),
        ));
    }
    let pi = structure.matrix(x)?;
    let gh = nalgebra::DVector::from_vec(h.gradient(x)?);
    Ok((pi * gh).iter().copied().collect())
}

/// Largest Jacobiator component over index triples `i < j < k`.
pub fn jacobi_residual(structure: &PoissonStructure, x: &[f64]) -> Result<f64> {
    jacobi_residual_with(structure, x, Partials::Analytic)
}

pub fn jacobi_residual_with(
    structure: &PoissonStructure,
    x: &[f64],
    mode: Partials,
) -> Result<f64> {
    let pi = structure.matrix(x)?;
    let d = structure.partials(x, mode)?;
    let n = structure.dim();
    let term =
        |a: usize, b: usize, c: usize| -> f64 { (0..n).map(|l| pi[(a, l)] * d[l][(b, c)]).sum() };
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let r = term(i, j, k) + term(j, k, i) + term(k, i, j);
                worst = worst.max(r.abs());
            }
        }
    }
    Ok(worst)
}

/// `max_i |{c, x_i}(x)|`.
pub fn casimir_residual(structure: &PoissonStructure, c: &ScalarField, x: &[f64]) -> Result<f64> {
    let flow = poisson_vector_field(structure, c, x)?;
    Ok(flow.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// The 3D structure `{x,y} = f ∂F/∂z`, `{y,z} = f ∂F/∂x`, `{z,x} = f ∂F/∂y`,
/// with `F` registered as its Casimir.
///
/// Entry partials need second derivatives of `F`, so the entries fall back
/// to finite differences.
pub fn generic3d(f: &ScalarField, casimir: &ScalarField) -> PoissonStructure {
    assert_eq!(f.arity(), 3);
    assert_eq!(casimir.arity(), 3);
    let entry = |slot: usize, sign: f64, label: &str| {
        let (f, big_f) = (f.clone(), casimir.clone());
        ScalarField::without_gradient(label.to_string(), 3, move |x| {
            let fv = f.value(x).unwrap_or(f64::NAN);
            let g = big_f.gradient(x).unwrap_or_else(|_| vec![f64::NAN; 3]);
            sign * fv * g[slot]
        })
    };
    // (x,y) ← f F_z ; (x,z) ← −{z,x} = −f F_y ; (y,z) ← f F_x
    let entries = vec![
        entry(2, 1.0, "f*dF/dz"),
        entry(1, -1.0, "-f*dF/dy"),
        entry(0, 1.0, "f*dF/dx"),
    ];
    PoissonStructure::from_upper(
        format!("generic3d({}, {})", f.name(), casimir.name()),
        ["x", "y", "z"],
        entries,
    )
    .expect("three entries on three coordinates")
    .with_casimir(casimir.clone())
}

/// Linear bracket `{x_i, x_j} = c^k_ij x_k` on the dual of `g`.
pub fn lie_poisson(name: impl Into<String>, g: &crate::liebialg::LieAlgebra) -> PoissonStructure {
    use num_traits::ToPrimitive;
    let n = g.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c: Vec<f64> = (0..n)
                .map(|k| g.constant(i, j, k).to_f64().unwrap_or(f64::NAN))
                .collect();
            let grad = c.clone();
            entries.push(ScalarField::new(
                format!("{{{},{}}}", g.labels()[i], g.labels()[j]),
                n,
                move |x| c.iter().zip(x).map(|(a, b)| a * b).sum(),
                move |_| grad.clone(),
            ));
        }
    }
    PoissonStructure::from_upper(name, g.labels().to_vec(), entries).expect("one entry per pair")
}

pub fn direct_sum(a: &PoissonStructure, b: &PoissonStructure) -> PoissonStructure {
    a.direct_sum(b)
}

type VectorFieldFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Anything the integrator can flow.
pub trait Dynamics: Send + Sync {
    fn id(&self) -> &str;
    fn coordinate_names(&self) -> &[String];
    fn rhs(&self, x: &[f64]) -> Result<Vec<f64>>;
    /// Quantities monitored along trajectories.
    fn invariants(&self) -> &[ScalarField];

    fn dim(&self) -> usize {
        self.coordinate_names().len()
    }
}

/// A Poisson structure with a Hamiltonian and monitored invariants.
#[derive(Clone)]
pub struct HamiltonianSystem {
    id: String,
    structure: PoissonStructure,
    hamiltonian: ScalarField,
    invariants: Vec<ScalarField>,
    handcoded: Option<Arc<VectorFieldFn>>,
}

impl fmt::Debug for HamiltonianSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HamiltonianSystem")
            .field("id", &self.id)
            .field("structure", &self.structure)
            .field("hamiltonian", &self.hamiltonian.name())
            .field("handcoded", &self.handcoded.is_some())
            .finish()
    }
}

impl HamiltonianSystem {
    /// The invariant list starts with the Hamiltonian followed by the
    /// structure's Casimirs.
    pub fn new(
        id: impl Into<String>,
        structure: PoissonStructure,
        hamiltonian: ScalarField,
    ) -> Self {
        assert_eq!(hamiltonian.arity(), structure.dim(), "hamiltonian arity");
        let mut invariants = vec![hamiltonian.clone()];
        invariants.extend(structure.casimirs().iter().cloned());
        Self {
            id: id.into(),
            structure,
            hamiltonian,
            invariants,
            handcoded: None,
        }
    }

    pub fn with_handcoded<F>(mut self, vf: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        self.handcoded = Some(Arc::new(vf));
        self
    }

    pub fn with_invariant(mut self, extra: ScalarField) -> Self {
        self.invariants.push(extra);
        self
    }

    pub fn structure(&self) -> &PoissonStructure {
        &self.structure
    }

    pub fn hamiltonian(&self) -> &ScalarField {
        &self.hamiltonian
    }

    pub fn has_handcoded(&self) -> bool {
        self.handcoded.is_some()
    }

    /// `Π(x)∇H(x)`; domain violations of `H` surface as errors naming it.
    pub fn vector_field(&self, x: &[f64]) -> Result<Vec<f64>> {
        poisson_vector_field(&self.structure, &self.hamiltonian, x)
    }

    /// The explicit right-hand side, if one was attached.
    pub fn handcoded(&self, x: &[f64]) -> Option<Result<Vec<f64>>> {
        let vf = self.handcoded.as_ref()?;
        Some(
            self.hamiltonian
                .value(x)
                .and_then(|_| finite_vec(&self.id, vf(x))),
        )
    }

    /// `‖handcoded(x) − Π∇H(x)‖∞`, or `None` without a hand-coded field.
    pub fn handcoded_mismatch(&self, x: &[f64]) -> Option<Result<f64>> {
        let hand = self.handcoded(x)?;
        Some(hand.and_then(|h| {
            let pv = self.vector_field(x)?;
            Ok(max_abs_diff(&h, &pv))
        }))
    }
}

impl Dynamics for HamiltonianSystem {
    fn id(&self) -> &str {
        &self.id
    }

    fn coordinate_names(&self) -> &[String] {
        self.structure.coordinate_names()
    }

    fn rhs(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self.handcoded(x) {
            Some(r) => r,
            None => self.vector_field(x),
        }
    }

    fn invariants(&self) -> &[ScalarField] {
        &self.invariants
    }
}

/// A bare vector field without Hamiltonian structure.
#[derive(Clone)]
pub struct VectorFieldSystem {
    id: String,
    names: Vec<String>,
    field: Arc<VectorFieldFn>,
    invariants: Vec<ScalarField>,
}

impl fmt::Debug for VectorFieldSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorFieldSystem")
            .field("id", &self.id)
            .field("coordinates", &self.names)
            .finish()
    }
}

impl VectorFieldSystem {
    pub fn new<S, F>(id: impl Into<String>, names: impl IntoIterator<Item = S>, field: F) -> Self
    where
        S: Into<String>,
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self {
            id: id.into(),
            names: names.into_iter().map(Into::into).collect(),
            field: Arc::new(field),
            invariants: Vec::new(),
        }
    }

    pub fn with_invariant(mut self, inv: ScalarField) -> Self {
        self.invariants.push(inv);
        self
    }
}

impl Dynamics for VectorFieldSystem {
    fn id(&self) -> &str {
        &self.id
    }

    fn coordinate_names(&self) -> &[String] {
        &self.names
    }

    fn rhs(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.names.len() {
            return Err(Error::dims(
                format!("system `{}`", self.id),
                self.names.len(),
                x.len(),
            ));
        }
        finite_vec(&self.id, (self.field)(x))
    }

    fn invariants(&self) -> &[ScalarField] {
        &self.invariants
    }
}

fn finite_vec(owner: &str, v: Vec<f64>) -> Result<Vec<f64>> {
    match v.iter().position(|c| !c.is_finite()) {
        Some(i) => Err(Error::domain(
            owner,
            format!("non-finite vector field component {i}"),
        )),
        None => Ok(v),
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |m, (u, v)| m.max((u - v).abs()))
}
