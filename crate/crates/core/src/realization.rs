//! Symplectic realizations of symplectic leaves and time-of-flight quadrature.
//!
//! A realization maps a canonical plane `(q, p)`, `{q, p} = 1`, onto a leaf
//! `C = const`. Each carries a sign switch whose meaning depends on the map
//! (see [`RealizationKind`]); [`Realization::resolve`] fixes it once by
//! minimising the pushforward residual, rejecting signs whose image leaves
//! the Casimir domain.
//!
//! The λ-family realizations use a single radicand `R(p)`:
//! `R = 4k + 2λp²` undeformed, `R = 2λ((e^{ηp} − 1)/η)² + 4k e^{ηp}` deformed.
//! For `λ < 1/2`, `x = s√R sinh(ωq)`, `y = √R cosh(ωq)/ω`; for `λ > 1/2`,
//! `x = s√(−R) sin(ωq)`, `y = −√(−R) cos(ωq)/ω`, with `ω = √|1 − 2λ|`.

use nalgebra::SMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::integrate::{integrate, IntegratorConfig, Termination};
use crate::poisson::{Dynamics, PoissonStructure, VectorFieldSystem};
use crate::sampling::rng;
use crate::systems::stable::expm1_over;
use crate::systems::structures as st;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "kebab-case")]
pub enum RealizationKind {
    /// `x = 2s√k sinh q`, `y = 2√k cosh q`, `z = p` on the Poincaré bracket.
    CaseA { k: f64 },
    /// `(x, y) = e^{−sηp/2}√k (sinh q, cosh q)`, `z = p`; printed `s = +1`.
    Book { k: f64, eta: f64 },
    /// `(x, y) = s e^{ηq}√k (sinh q, cosh q)`, `z = p`; printed `s = −1`.
    HeisenbergWeyl { k: f64, eta: f64 },
    /// Undeformed λ-family on the AB pencil; printed `s = +1`.
    AbPencil { k: f64, lambda: f64 },
    /// Deformed λ-family. The printed form multiplies two imaginary square
    /// roots; on the principal branch that is `s = −1`.
    AbDeformed { k: f64, lambda: f64, eta: f64 },
}

impl RealizationKind {
    pub fn id(&self) -> &'static str {
        match self {
            RealizationKind::CaseA { .. } => "case-a",
            RealizationKind::Book { .. } => "case-a-book",
            RealizationKind::HeisenbergWeyl { .. } => "case-a-heisenberg",
            RealizationKind::AbPencil { .. } => "case-ab-pencil",
            RealizationKind::AbDeformed { .. } => "case-ab-deformed",
        }
    }

    pub fn printed_sign(&self) -> f64 {
        match self {
            RealizationKind::HeisenbergWeyl { .. } | RealizationKind::AbDeformed { .. } => -1.0,
            _ => 1.0,
        }
    }

    /// Target bracket with its Casimir registered.
    pub fn target(&self) -> PoissonStructure {
        match *self {
            RealizationKind::CaseA { .. } => st::poincare().with_casimir(st::casimir_a()),
            RealizationKind::Book { eta, .. } => st::book(eta).with_casimir(st::casimir_book(eta)),
            RealizationKind::HeisenbergWeyl { eta, .. } => {
                st::heisenberg(eta).with_casimir(st::casimir_heisenberg(eta))
            }
            RealizationKind::AbPencil { lambda, .. } => {
                st::ab_pencil(lambda).with_casimir(st::casimir_ab_pencil(lambda))
            }
            RealizationKind::AbDeformed { lambda, eta, .. } => {
                st::ab_deformed(lambda, eta).with_casimir(st::casimir_ab_deformed(lambda, eta))
            }
        }
    }

    /// Value the target Casimir takes on the image: `k`, except `k/(1 − 2λ)`
    /// for the undeformed λ-family (normalisation of `C_λ`).
    pub fn expected_casimir(&self) -> f64 {
        match *self {
            RealizationKind::AbPencil { k, lambda } => k / (1.0 - 2.0 * lambda),
            RealizationKind::CaseA { k }
            | RealizationKind::Book { k, .. }
            | RealizationKind::HeisenbergWeyl { k, .. }
            | RealizationKind::AbDeformed { k, .. } => k,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::parameter(name, "must be finite"))
            }
        };
        match *self {
            RealizationKind::CaseA { k }
            | RealizationKind::Book { k, .. }
            | RealizationKind::HeisenbergWeyl { k, .. } => {
                finite("k", k)?;
                if k <= 0.0 {
                    return Err(Error::parameter("k", format!("√k needs k > 0, got {k}")));
                }
            }
            RealizationKind::AbPencil { k, lambda }
            | RealizationKind::AbDeformed { k, lambda, .. } => {
                finite("k", k)?;
                finite("lambda", lambda)?;
                if lambda == 0.5 {
                    return Err(Error::parameter(
                        "lambda",
                        "λ = 1/2 has no realization (ω = 0)",
                    ));
                }
            }
        }
        if let RealizationKind::AbDeformed { eta, .. }
        | RealizationKind::Book { eta, .. }
        | RealizationKind::HeisenbergWeyl { eta, .. } = *self
        {
            finite("eta", eta)?;
        }
        if let RealizationKind::AbDeformed { eta, .. } = *self {
            if eta == 0.0 {
                return Err(Error::parameter(
                    "eta",
                    "η = 0: use the undeformed case-ab-pencil realization",
                ));
            }
        }
        Ok(())
    }
}

/// `[x, y, z]` and `∂(x, y, z)/∂(q, p)`.
pub type Jet = ([f64; 3], SMatrix<f64, 3, 2>);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Realization {
    pub kind: RealizationKind,
    pub sign: f64,
}

/// `(R, dR/dp)` for the λ-families.
fn radicand(kind: &RealizationKind, p: f64) -> (f64, f64, f64) {
    match *kind {
        RealizationKind::AbPencil { k, lambda } => {
            (4.0 * k + 2.0 * lambda * p * p, 4.0 * lambda * p, lambda)
        }
        RealizationKind::AbDeformed { k, lambda, eta } => {
            let (m, e) = (expm1_over(1.0, p, eta), (eta * p).exp());
            (
                2.0 * lambda * m * m + 4.0 * k * e,
                4.0 * lambda * m * e + 4.0 * k * eta * e,
                lambda,
            )
        }
        _ => unreachable!("only λ-families have a radicand"),
    }
}

impl Realization {
    pub fn new(kind: RealizationKind, sign: f64) -> Result<Self> {
        kind.validate()?;
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::parameter("sign", "must be +1 or −1"));
        }
        Ok(Realization { kind, sign })
    }

    /// As printed.
    pub fn printed(kind: RealizationKind) -> Result<Self> {
        Self::new(kind, kind.printed_sign())
    }

    /// Pick the sign in `{+1, −1}` with the smaller pushforward residual over
    /// a fixed set of reference points; a sign whose image leaves the Casimir
    /// domain scores `∞`. Ties keep the printed sign.
    pub fn resolve(kind: RealizationKind) -> Result<Self> {
        let printed = kind.printed_sign();
        let score = |sign: f64| -> Result<f64> {
            let r = Realization::new(kind, sign)?;
            let mut worst = 0.0_f64;
            let mut any = false;
            for (q, p) in REFERENCE_POINTS {
                let Ok(x) = r.realize(q, p) else { continue };
                any = true;
                if r.kind.target().casimirs()[0].value(&x).is_err() {
                    return Ok(f64::INFINITY);
                }
                worst = worst.max(r.pushforward_residual(q, p)?);
            }
            Ok(if any { worst } else { f64::INFINITY })
        };
        let (a, b) = (score(printed)?, score(-printed)?);
        let sign = if b < a { -printed } else { printed };
        if a.min(b).is_infinite() {
            return Err(Error::domain(
                kind.id(),
                "no sign yields a point inside the Casimir domain",
            ));
        }
        Realization::new(kind, sign)
    }

    pub fn jet(&self, q: f64, p: f64) -> Result<Jet> {
        let s = self.sign;
        let mut j = SMatrix::<f64, 3, 2>::zeros();
        j[(2, 1)] = 1.0;
        let (x, y) = match self.kind {
            RealizationKind::CaseA { k } => {
                let r = 2.0 * k.sqrt();
                j[(0, 0)] = s * r * q.cosh();
                j[(1, 0)] = r * q.sinh();
                (s * r * q.sinh(), r * q.cosh())
            }
            RealizationKind::Book { k, eta } => {
                let e = (-s * eta * p / 2.0).exp() * k.sqrt();
                let (x, y) = (e * q.sinh(), e * q.cosh());
                j[(0, 0)] = y;
                j[(1, 0)] = x;
                j[(0, 1)] = -s * eta / 2.0 * x;
                j[(1, 1)] = -s * eta / 2.0 * y;
                (x, y)
            }
            RealizationKind::HeisenbergWeyl { k, eta } => {
                let e = s * (eta * q).exp() * k.sqrt();
                let (x, y) = (e * q.sinh(), e * q.cosh());
                j[(0, 0)] = eta * x + y;
                j[(1, 0)] = x + eta * y;
                (x, y)
            }
            RealizationKind::AbPencil { .. } | RealizationKind::AbDeformed { .. } => {
                let (r, dr, lambda) = radicand(&self.kind, p);
                let w = (1.0 - 2.0 * lambda).abs().sqrt();
                if lambda < 0.5 {
                    if r <= 0.0 {
                        return Err(Error::domain(
                            self.kind.id(),
                            format!("radicand R(p) = {r} must be positive for λ < 1/2 (p = {p})"),
                        ));
                    }
                    let a = r.sqrt();
                    let (sh, ch) = ((w * q).sinh(), (w * q).cosh());
                    j[(0, 0)] = s * a * w * ch;
                    j[(0, 1)] = s * dr / (2.0 * a) * sh;
                    j[(1, 0)] = a * sh;
                    j[(1, 1)] = dr / (2.0 * a * w) * ch;
                    (s * a * sh, a * ch / w)
                } else {
                    if r >= 0.0 {
                        return Err(Error::domain(
                            self.kind.id(),
                            format!("radicand R(p) = {r} must be negative for λ > 1/2 (p = {p})"),
                        ));
                    }
                    let a = (-r).sqrt();
                    let (sn, cs) = ((w * q).sin(), (w * q).cos());
                    j[(0, 0)] = s * a * w * cs;
                    j[(0, 1)] = -s * dr / (2.0 * a) * sn;
                    j[(1, 0)] = a * sn;
                    j[(1, 1)] = dr / (2.0 * a * w) * cs;
                    (s * a * sn, -a * cs / w)
                }
            }
        };
        Ok(([x, y, p], j))
    }

    pub fn realize(&self, q: f64, p: f64) -> Result<Vec<f64>> {
        Ok(self.jet(q, p)?.0.to_vec())
    }

    /// `max_{u<v} |{u, v}_{can} − Π^{uv}(φ(q, p))|`.
    pub fn pushforward_residual(&self, q: f64, p: f64) -> Result<f64> {
        let (x, j) = self.jet(q, p)?;
        let pi = self.kind.target().matrix(&x)?;
        let mut worst = 0.0_f64;
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            let can = j[(u, 0)] * j[(v, 1)] - j[(u, 1)] * j[(v, 0)];
            worst = worst.max((can - pi[(u, v)]).abs());
        }
        Ok(worst)
    }

    /// `|C(φ(q,p)) − expected| / max(1, |expected|)`.
    pub fn casimir_defect(&self, q: f64, p: f64) -> Result<f64> {
        let x = self.realize(q, p)?;
        let c = self.kind.target().casimirs()[0].value(&x)?;
        let e = self.kind.expected_casimir();
        Ok((c - e).abs() / e.abs().max(1.0))
    }
}

const REFERENCE_POINTS: [(f64, f64); 4] = [(0.3, 0.2), (-0.5, 0.4), (0.7, -0.3), (0.1, 0.05)];

/// Seeded `(q, p)` samples in `[−1, 1]²` at which `r` is defined.
pub fn sample_canonical(r: &Realization, seed: u64, count: usize) -> Vec<(f64, f64)> {
    use rand::Rng;
    let mut g = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < 1000 * count {
        tries += 1;
        let (q, p) = (g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0));
        if r.realize(q, p).is_ok() {
            out.push((q, p));
        }
    }
    out
}

/// The five realizations at representative parameters, signs resolved.
pub fn standard_realizations() -> Result<Vec<Realization>> {
    [
        RealizationKind::CaseA { k: 1.3 },
        RealizationKind::Book { k: 0.8, eta: 1.0 },
        RealizationKind::HeisenbergWeyl { k: 1.0, eta: 1.0 },
        RealizationKind::AbPencil {
            k: 0.7,
            lambda: 0.25,
        },
        RealizationKind::AbDeformed {
            k: 0.7,
            lambda: 0.25,
            eta: 1.0,
        },
    ]
    .into_iter()
    .map(Realization::resolve)
    .collect()
}

/// Reduced one-degree-of-freedom Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "kebab-case")]
pub enum EffectivePotentialSpec {
    /// `p²/2 + 2k sinh²q − α(log(2√k) + q)`.
    CaseA { k: f64, alpha: f64 },
    /// `p²/2 + k cosh(2q)` (λ = 0).
    AbLambda0 { k: f64 },
    /// `−cos(2q)(p²/2 + k)` (λ = 1).
    AbLambda1 { k: f64 },
}

/// Radicand guard for [`time_of_flight`].
pub const TURNING_GUARD: f64 = 1e-10;
pub const QUADRATURE_TOL: f64 = 1e-8;

impl EffectivePotentialSpec {
    pub fn hamiltonian(&self, q: f64, p: f64) -> f64 {
        match *self {
            EffectivePotentialSpec::CaseA { k, alpha } => {
                p * p / 2.0 + 2.0 * k * q.sinh().powi(2) - alpha * ((2.0 * k.sqrt()).ln() + q)
            }
            EffectivePotentialSpec::AbLambda0 { k } => p * p / 2.0 + k * (2.0 * q).cosh(),
            EffectivePotentialSpec::AbLambda1 { k } => -(2.0 * q).cos() * (p * p / 2.0 + k),
        }
    }

    /// `(∂H/∂q, ∂H/∂p)`.
    pub fn gradient(&self, q: f64, p: f64) -> (f64, f64) {
        match *self {
            EffectivePotentialSpec::CaseA { k, alpha } => (2.0 * k * (2.0 * q).sinh() - alpha, p),
            EffectivePotentialSpec::AbLambda0 { k } => (2.0 * k * (2.0 * q).sinh(), p),
            EffectivePotentialSpec::AbLambda1 { k } => (
                2.0 * (2.0 * q).sin() * (p * p / 2.0 + k),
                -(2.0 * q).cos() * p,
            ),
        }
    }

    /// `q̇²` on the level set `H = E`; the time of flight integrates `1/√·`.
    pub fn radicand(&self, e: f64, s: f64) -> f64 {
        match *self {
            EffectivePotentialSpec::CaseA { .. } | EffectivePotentialSpec::AbLambda0 { .. } => {
                2.0 * (e - self.hamiltonian(s, 0.0))
            }
            EffectivePotentialSpec::AbLambda1 { k } => {
                let c = (2.0 * s).cos();
                -2.0 * c * (e + k * c)
            }
        }
    }

    /// The momentum on `H = E` at `q` with `q̇ > 0`.
    pub fn momentum(&self, e: f64, q: f64) -> Result<f64> {
        let bad = || {
            Error::domain(
                "momentum",
                format!("no real momentum on H = {e} at q = {q}"),
            )
        };
        match *self {
            EffectivePotentialSpec::CaseA { .. } | EffectivePotentialSpec::AbLambda0 { .. } => {
                let r = self.radicand(e, q);
                if r <= 0.0 {
                    return Err(bad());
                }
                Ok(r.sqrt())
            }
            EffectivePotentialSpec::AbLambda1 { k } => {
                let c = (2.0 * q).cos();
                let p2 = 2.0 * (-e / c - k);
                if p2.is_nan() || p2 <= 0.0 {
                    return Err(bad());
                }
                // q̇ = −cos(2q)·p
                Ok(-c.signum() * p2.sqrt())
            }
        }
    }
}

/// `∫_{q0}^{q1} ds / √(radicand(s))` by adaptive Simpson to [`QUADRATURE_TOL`].
pub fn time_of_flight(spec: &EffectivePotentialSpec, e: f64, q0: f64, q1: f64) -> Result<f64> {
    if q0 == q1 {
        return Ok(0.0);
    }
    let (a, b, sign) = if q0 < q1 {
        (q0, q1, 1.0)
    } else {
        (q1, q0, -1.0)
    };
    let f = |s: f64| -> Result<f64> {
        let r = spec.radicand(e, s);
        if r.is_nan() || r <= TURNING_GUARD {
            return Err(Error::domain(
                "time_of_flight",
                format!("turning point: radicand {r:e} ≤ {TURNING_GUARD:e} at s = {s}"),
            ));
        }
        Ok(1.0 / r.sqrt())
    };
    let (fa, fm, fb) = (f(a)?, f((a + b) / 2.0)?, f(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    Ok(sign * simpson(&f, a, b, fa, fm, fb, whole, QUADRATURE_TOL, 50)?)
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = (a + b) / 2.0;
    let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

/// The reduced canonical system `q̇ = ∂H/∂p`, `ṗ = −∂H/∂q`.
pub fn reduced_system(spec: EffectivePotentialSpec) -> VectorFieldSystem {
    VectorFieldSystem::new("reduced", ["q", "p"], move |x| {
        let (hq, hp) = spec.gradient(x[0], x[1]);
        vec![hp, -hq]
    })
    .with_invariant(ScalarField::new(
        "H",
        2,
        move |x| spec.hamiltonian(x[0], x[1]),
        move |x| {
            let (hq, hp) = spec.gradient(x[0], x[1]);
            vec![hq, hp]
        },
    ))
}

/// Oracle for [`time_of_flight`]: integrate the reduced system from
/// `(q0, p(q0))` at tolerance 1e-12 until `q` reaches `q1 > q0`, then refine
/// the crossing time by Newton iteration on a short RK4 sub-integration.
pub fn time_of_flight_ode(spec: &EffectivePotentialSpec, e: f64, q0: f64, q1: f64) -> Result<f64> {
    if q1 <= q0 {
        return Err(Error::parameter("q1", "the ODE oracle needs q1 > q0"));
    }
    let sys = reduced_system(*spec);
    let x0 = [q0, spec.momentum(e, q0)?];
    let mut t_end = 1.0;
    let tr = loop {
        let tr = integrate(
            &sys,
            &x0,
            &IntegratorConfig::adaptive(t_end).with_tolerance(1e-12),
        )?;
        if tr.states.iter().any(|s| s[0] >= q1) {
            break tr;
        }
        if tr.termination != Termination::Completed || t_end > 1e4 {
            return Err(Error::domain(
                "time_of_flight_ode",
                format!("q did not reach {q1}"),
            ));
        }
        t_end *= 2.0;
    };
    let k = tr
        .states
        .iter()
        .position(|s| s[0] >= q1)
        .expect("crossing found")
        - 1;
    let (tk, xk) = (tr.times[k], tr.states[k].clone());
    let qdot = |x: &[f64]| sys.rhs(x).map(|f| f[0]);
    let mut dt = (q1 - xk[0]) / qdot(&xk)?;
    for _ in 0..20 {
        let x = if dt > 0.0 {
            integrate(&sys, &xk, &IntegratorConfig::rk4(dt, dt / 50.0))?
                .last_state()
                .to_vec()
        } else {
            xk.clone()
        };
        let step = (q1 - x[0]) / qdot(&x)?;
        dt += step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    Ok(tk + dt)
}
