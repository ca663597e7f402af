//! Real-valued fields on state space with hand-coded gradients.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Central finite-difference step used for every gradient cross-check.
pub const FD_STEP: f64 = 1e-6;

/// Relative tolerance of the analytic-vs-finite-difference gradient check.
pub const GRADIENT_TOLERANCE: f64 = 1e-5;

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type DomainFn = dyn Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync;

#[derive(Clone)]
enum Gradient {
    Analytic(Arc<GradFn>),
    FiniteDifference,
}

/// A smooth function of a state point, carrying its own gradient and an
/// optional domain guard.
///
/// Evaluation never returns NaN silently: points outside the guard, or any
/// non-finite value, surface as [`Error::Domain`] naming the field.
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    arity: usize,
    eval: Arc<EvalFn>,
    grad: Gradient,
    domain: Option<Arc<DomainFn>>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("analytic_gradient", &self.has_analytic_gradient())
            .finish()
    }
}

impl ScalarField {
    pub fn new<E, G>(name: impl Into<String>, arity: usize, eval: E, grad: G) -> Self
    where
        E: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            arity,
            eval: Arc::new(eval),
            grad: Gradient::Analytic(Arc::new(grad)),
            domain: None,
        }
    }

    /// A field whose gradient is always taken by central differences.
    pub fn without_gradient<E>(name: impl Into<String>, arity: usize, eval: E) -> Self
    where
        E: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            arity,
            eval: Arc::new(eval),
            grad: Gradient::FiniteDifference,
            domain: None,
        }
    }

    pub fn constant(name: impl Into<String>, arity: usize, value: f64) -> Self {
        Self::new(name, arity, move |_| value, move |_| vec![0.0; arity])
    }

    /// The coordinate function `x ↦ x[index]`.
    pub fn coordinate(name: impl Into<String>, arity: usize, index: usize) -> Self {
        assert!(index < arity, "coordinate index out of range");
        Self::new(
            name,
            arity,
            move |x| x[index],
            move |_| {
                let mut g = vec![0.0; arity];
                g[index] = 1.0;
                g
            },
        )
    }

    /// Attach a domain guard; the closure returns a description of the
    /// violated condition.
    pub fn with_domain<D>(mut self, guard: D) -> Self
    where
        D: Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync + 'static,
    {
        self.domain = Some(Arc::new(guard));
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn has_analytic_gradient(&self) -> bool {
        matches!(self.grad, Gradient::Analytic(_))
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.arity {
            return Err(Error::dims(
                format!("field `{}`", self.name),
                self.arity,
                x.len(),
            ));
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(
                &self.name,
                format!("non-finite coordinate {i}"),
            ));
        }
        if let Some(guard) = &self.domain {
            guard(x).map_err(|detail| Error::domain(&self.name, detail))?;
        }
        Ok(())
    }

    pub fn in_domain(&self, x: &[f64]) -> bool {
        self.check(x).is_ok()
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        let v = (self.eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(&self.name, format!("non-finite value {v}")))
        }
    }

    /// Analytic gradient where available, otherwise central differences.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        match &self.grad {
            Gradient::Analytic(g) => {
                self.check(x)?;
                let grad = g(x);
                debug_assert_eq!(grad.len(), self.arity);
                if let Some(i) = grad.iter().position(|v| !v.is_finite()) {
                    return Err(Error::domain(
                        &self.name,
                        format!("non-finite gradient component {i}"),
                    ));
                }
                Ok(grad)
            }
            Gradient::FiniteDifference => self.fd_gradient(x),
        }
    }

    /// Central finite-difference gradient with step [`FD_STEP`].
    pub fn fd_gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut probe = x.to_vec();
        let mut out = Vec::with_capacity(self.arity);
        for i in 0..self.arity {
            let orig = probe[i];
            probe[i] = orig + FD_STEP;
            let plus = self.value(&probe)?;
            probe[i] = orig - FD_STEP;
            let minus = self.value(&probe)?;
            probe[i] = orig;
            out.push((plus - minus) / (2.0 * FD_STEP));
        }
        Ok(out)
    }

    /// Relative mismatch between the analytic gradient and central
    /// differences: `‖g − g_fd‖∞ / max(1, ‖g‖∞)`.
    pub fn gradient_mismatch(&self, x: &[f64]) -> Result<f64> {
        let g = self.gradient(x)?;
        let fd = self.fd_gradient(x)?;
        let scale = g.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let diff = g
            .iter()
            .zip(&fd)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        Ok(diff / scale)
    }

    /// Embed this field into a product space, reading its arguments from
    /// `total[offset..offset + arity]`.
    pub fn lift(&self, total: usize, offset: usize) -> ScalarField {
        assert!(offset + self.arity <= total);
        let inner = self.clone();
        let arity = self.arity;
        let slice = move |x: &[f64]| x[offset..offset + arity].to_vec();
        let eval = {
            let inner = inner.clone();
            move |x: &[f64]| (inner.eval)(&slice(x))
        };
        let mut lifted = match &inner.grad {
            Gradient::Analytic(g) => {
                let g = Arc::clone(g);
                ScalarField::new(self.name.clone(), total, eval, move |x| {
                    let mut full = vec![0.0; total];
                    full[offset..offset + arity].copy_from_slice(&g(&slice(x)));
                    full
                })
            }
            Gradient::FiniteDifference => {
                ScalarField::without_gradient(self.name.clone(), total, eval)
            }
        };
        if let Some(guard) = &inner.domain {
            let guard = Arc::clone(guard);
            lifted = lifted.with_domain(move |x| guard(&x[offset..offset + arity]));
        }
        lifted
    }

    /// `a·self + b·other`, with the union of both domain guards.
    pub fn linear_combination(
        &self,
        a: f64,
        other: &ScalarField,
        b: f64,
        name: impl Into<String>,
    ) -> ScalarField {
        assert_eq!(self.arity, other.arity);
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        ScalarField::new(
            name,
            self.arity,
            move |x| a * (f.eval)(x) + b * (g.eval)(x),
            move |x| {
                let gf = f2.gradient(x).unwrap_or_else(|_| vec![f64::NAN; x.len()]);
                let gg = g2.gradient(x).unwrap_or_else(|_| vec![f64::NAN; x.len()]);
                gf.iter().zip(&gg).map(|(u, v)| a * u + b * v).collect()
            },
        )
        .with_domain({
            let (f, g) = (self.clone(), other.clone());
            move |x| {
                f.check(x).map_err(|e| e.to_string())?;
                g.check(x).map_err(|e| e.to_string())
            }
        })
    }
}
