//! Deterministic ODE integration with invariant monitoring.
//!
//! Two methods: fixed-step classical RK4 and the Dormand-Prince 5(4) pair
//! with PI step-size control. Invariants are evaluated at every stored
//! sample. A domain error (or a non-finite right-hand side) stops the run and
//! keeps the trajectory up to the last valid state.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poisson::Dynamics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "rk4-fixed")]
    Rk4Fixed,
    #[serde(rename = "adaptive-45")]
    Adaptive45,
}

fn default_tol() -> f64 {
    1e-10
}

fn default_max_steps() -> usize {
    5_000_000
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    pub method: Method,
    pub t_end: f64,
    /// Fixed step for RK4; optional initial step for the adaptive method.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default = "default_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// Store every `monitor_stride`-th step (the final state is always kept).
    #[serde(default = "default_stride")]
    pub monitor_stride: usize,
}

pub const MIN_STEP: f64 = 1e-12;
const SAFETY: f64 = 0.9;

impl IntegratorConfig {
    pub fn adaptive(t_end: f64) -> Self {
        IntegratorConfig {
            method: Method::Adaptive45,
            t_end,
            h: None,
            abs_tol: default_tol(),
            rel_tol: default_tol(),
            max_steps: default_max_steps(),
            monitor_stride: 1,
        }
    }

    pub fn rk4(t_end: f64, h: f64) -> Self {
        IntegratorConfig {
            method: Method::Rk4Fixed,
            h: Some(h),
            ..Self::adaptive(t_end)
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        if let Some(h) = self.h {
            if !(h.is_finite() && h > 0.0) {
                return bad(format!("h must be positive, got {h}"));
            }
        } else if self.method == Method::Rk4Fixed {
            return bad("rk4-fixed needs a step h".into());
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.max_steps == 0 || self.monitor_stride == 0 {
            return bad("max_steps and monitor_stride must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Termination {
    Completed,
    MaxSteps,
    /// The adaptive step fell below [`MIN_STEP`].
    StepUnderflow,
    /// A field left its domain; the trajectory ends at the last valid state.
    Domain(String),
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Metadata {
    pub system: String,
    pub params: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub coordinate_names: Vec<String>,
    pub invariant_names: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// `invariants[k][i]`: invariant `i` at sample `k`.
    pub invariants: Vec<Vec<f64>>,
    pub termination: Termination,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub config: IntegratorConfig,
    pub metadata: Metadata,
}

impl Trajectory {
    pub fn truncated(&self) -> bool {
        self.termination != Termination::Completed
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> &[f64] {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// `max_k |I(t_k) − I(0)| / max(1, |I(0)|)` per invariant.
    pub fn drift(&self) -> Vec<(String, f64)> {
        self.invariant_names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let i0 = self.invariants[0][i];
                let worst = self
                    .invariants
                    .iter()
                    .map(|row| (row[i] - i0).abs())
                    .fold(0.0, f64::max);
                (name.clone(), worst / i0.abs().max(1.0))
            })
            .collect()
    }

    pub fn max_drift(&self) -> f64 {
        self.drift().into_iter().map(|(_, d)| d).fold(0.0, f64::max)
    }

    /// Linear interpolation of the state at time `t` inside the sampled range.
    pub fn state_at(&self, t: f64) -> Option<Vec<f64>> {
        let (first, last) = (*self.times.first()?, *self.times.last()?);
        if t < first || t > last {
            return None;
        }
        let k = self
            .times
            .partition_point(|&s| s <= t)
            .saturating_sub(1)
            .min(self.len().saturating_sub(2));
        if self.len() == 1 {
            return Some(self.states[0].clone());
        }
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        Some(
            self.states[k]
                .iter()
                .zip(&self.states[k + 1])
                .map(|(a, b)| a + w * (b - a))
                .collect(),
        )
    }
}

fn eval(system: &dyn Dynamics, x: &[f64]) -> std::result::Result<Vec<f64>, String> {
    let f = system.rhs(x).map_err(|e| e.to_string())?;
    if f.iter().all(|v| v.is_finite()) {
        Ok(f)
    } else {
        Err(format!("non-finite right-hand side at {x:?}"))
    }
}

fn invariant_row(system: &dyn Dynamics, x: &[f64]) -> std::result::Result<Vec<f64>, String> {
    system
        .invariants()
        .iter()
        .map(|f| f.value(x).map_err(|e| e.to_string()))
        .collect()
}

fn axpy(x: &[f64], h: f64, terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out = x.to_vec();
    for (c, k) in terms {
        for (o, v) in out.iter_mut().zip(k.iter()) {
            *o += h * c * v;
        }
    }
    out
}

struct Recorder<'a> {
    system: &'a dyn Dynamics,
    stride: usize,
    counter: usize,
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    invariants: Vec<Vec<f64>>,
}

impl<'a> Recorder<'a> {
    fn new(system: &'a dyn Dynamics, stride: usize, x0: &[f64]) -> Result<Self> {
        let row = invariant_row(system, x0).map_err(|e| Error::domain("initial invariants", e))?;
        Ok(Recorder {
            system,
            stride,
            counter: 0,
            times: vec![0.0],
            states: vec![x0.to_vec()],
            invariants: vec![row],
        })
    }

    /// Record an accepted step; returns an error message if an invariant
    /// left its domain.
    fn push(&mut self, t: f64, x: &[f64], last: bool) -> std::result::Result<(), String> {
        self.counter += 1;
        if self.counter.is_multiple_of(self.stride) || last {
            let row = invariant_row(self.system, x)?;
            self.times.push(t);
            self.states.push(x.to_vec());
            self.invariants.push(row);
        }
        Ok(())
    }

    fn finish(
        self,
        termination: Termination,
        accepted: usize,
        rejected: usize,
        config: &IntegratorConfig,
    ) -> Trajectory {
        Trajectory {
            coordinate_names: self.system.coordinate_names().to_vec(),
            invariant_names: self
                .system
                .invariants()
                .iter()
                .map(|f| f.name().to_string())
                .collect(),
            times: self.times,
            states: self.states,
            invariants: self.invariants,
            termination,
            accepted_steps: accepted,
            rejected_steps: rejected,
            config: config.clone(),
            metadata: Metadata {
                system: self.system.id().to_string(),
                ..Metadata::default()
            },
        }
    }
}

/// Integrate `system` from `x0` over `[0, t_end]`.
pub fn integrate(
    system: &dyn Dynamics,
    x0: &[f64],
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    config.validate()?;
    if x0.len() != system.dim() {
        return Err(Error::dims(
            format!("initial condition for `{}`", system.id()),
            system.dim(),
            x0.len(),
        ));
    }
    eval(system, x0).map_err(|e| Error::domain(system.id(), e))?;
    match config.method {
        Method::Rk4Fixed => rk4(system, x0, config),
        Method::Adaptive45 => dopri5(system, x0, config),
    }
}

/// States at each of the increasing `times` (starting at 0), obtained by
/// restarting `config` on every interval so each sample lands exactly.
pub fn sample_on_grid(
    system: &dyn Dynamics,
    x0: &[f64],
    times: &[f64],
    config: &IntegratorConfig,
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(times.len());
    let (mut t, mut x) = (0.0, x0.to_vec());
    for &target in times {
        if target < t {
            return Err(Error::Config(format!(
                "grid times must increase, got {target} after {t}"
            )));
        }
        if target > t {
            let leg = IntegratorConfig {
                t_end: target - t,
                h: config.h.map(|h| h.min(target - t)),
                ..config.clone()
            };
            let tr = integrate(system, &x, &leg)?;
            if tr.termination != Termination::Completed {
                return Err(Error::domain(
                    system.id(),
                    format!("grid run stopped at t = {t}: {:?}", tr.termination),
                ));
            }
            x = tr.last_state().to_vec();
            t = target;
        }
        out.push(x.clone());
    }
    Ok(out)
}

fn rk4_step(system: &dyn Dynamics, x: &[f64], h: f64) -> std::result::Result<Vec<f64>, String> {
    let k1 = eval(system, x)?;
    let k2 = eval(system, &axpy(x, h, &[(0.5, &k1)]))?;
    let k3 = eval(system, &axpy(x, h, &[(0.5, &k2)]))?;
    let k4 = eval(system, &axpy(x, h, &[(1.0, &k3)]))?;
    Ok(axpy(
        x,
        h,
        &[
            (1.0 / 6.0, &k1),
            (1.0 / 3.0, &k2),
            (1.0 / 3.0, &k3),
            (1.0 / 6.0, &k4),
        ],
    ))
}

fn rk4(system: &dyn Dynamics, x0: &[f64], config: &IntegratorConfig) -> Result<Trajectory> {
    let h_req = config.h.expect("validated");
    let n = (config.t_end / h_req).round().max(1.0) as usize;
    let h = config.t_end / n as f64;
    let mut rec = Recorder::new(system, config.monitor_stride, x0)?;
    let mut x = x0.to_vec();
    for k in 1..=n {
        if k > config.max_steps {
            return Ok(rec.finish(Termination::MaxSteps, k - 1, 0, config));
        }
        let t = k as f64 * h;
        let next = match rk4_step(system, &x, h) {
            Ok(v) => v,
            Err(e) => return Ok(rec.finish(Termination::Domain(e), k - 1, 0, config)),
        };
        if let Err(e) = eval(system, &next).and_then(|_| rec.push(t, &next, k == n)) {
            return Ok(rec.finish(Termination::Domain(e), k - 1, 0, config));
        }
        x = next;
    }
    Ok(rec.finish(Termination::Completed, n, 0, config))
}

// Dormand-Prince 5(4) tableau. The systems are autonomous, so the nodes c_i
// do not appear.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const PI_BETA: f64 = 0.04;
const PI_ALPHA: f64 = 0.2 - 0.75 * PI_BETA;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

struct Stage {
    x: Vec<f64>,
    k7: Vec<f64>,
    err: f64,
}

fn dopri_step(
    system: &dyn Dynamics,
    x: &[f64],
    k1: &[f64],
    h: f64,
    config: &IntegratorConfig,
) -> std::result::Result<Stage, String> {
    let k2 = eval(system, &axpy(x, h, &[(A21, k1)]))?;
    let k3 = eval(system, &axpy(x, h, &[(A31, k1), (A32, &k2)]))?;
    let k4 = eval(system, &axpy(x, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = eval(
        system,
        &axpy(x, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = eval(
        system,
        &axpy(
            x,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
    )?;
    let xn = axpy(
        x,
        h,
        &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    let k7 = eval(system, &xn)?;
    let mut sum = 0.0;
    for i in 0..x.len() {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = config.abs_tol + config.rel_tol * x[i].abs().max(xn[i].abs());
        sum += (e / sc).powi(2);
    }
    Ok(Stage {
        x: xn,
        k7,
        err: (sum / x.len() as f64).sqrt(),
    })
}

fn initial_step(x: &[f64], f: &[f64], config: &IntegratorConfig) -> f64 {
    let norm = |v: &[f64]| {
        let s: f64 = v
            .iter()
            .zip(x)
            .map(|(a, b)| (a / (config.abs_tol + config.rel_tol * b.abs())).powi(2))
            .sum();
        (s / v.len() as f64).sqrt()
    };
    let (d0, d1) = (norm(x), norm(f));
    let h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h.min(1e-2)
}

fn dopri5(system: &dyn Dynamics, x0: &[f64], config: &IntegratorConfig) -> Result<Trajectory> {
    let t_end = config.t_end;
    let h_max = t_end / 10.0;
    let mut rec = Recorder::new(system, config.monitor_stride, x0)?;
    let mut x = x0.to_vec();
    let mut k1 = eval(system, &x).map_err(|e| Error::domain(system.id(), e))?;
    let mut h = config
        .h
        .unwrap_or_else(|| initial_step(&x, &k1, config))
        .clamp(MIN_STEP, h_max);
    let (mut t, mut accepted, mut rejected) = (0.0_f64, 0usize, 0usize);
    let mut err_prev = 1e-4_f64;
    let mut last_rejected = false;
    while t < t_end {
        if accepted + rejected >= config.max_steps {
            return Ok(rec.finish(Termination::MaxSteps, accepted, rejected, config));
        }
        let last = t + h >= t_end * (1.0 - 1e-14);
        let step = if last { t_end - t } else { h };
        let stage = match dopri_step(system, &x, &k1, step, config) {
            Ok(s) => Some(s),
            // A domain failure inside the stages is treated as a large error
            // so that the step shrinks; only at the minimum step it ends the run.
            Err(e) if step <= MIN_STEP => {
                return Ok(rec.finish(Termination::Domain(e), accepted, rejected, config));
            }
            Err(_) => None,
        };
        let err = stage.as_ref().map_or(f64::INFINITY, |s| s.err);
        if err <= 1.0 {
            let s = stage.expect("finite error implies a stage");
            let t_new = if last { t_end } else { t + step };
            if let Err(e) = rec.push(t_new, &s.x, last) {
                return Ok(rec.finish(Termination::Domain(e), accepted, rejected, config));
            }
            accepted += 1;
            t = t_new;
            x = s.x;
            k1 = s.k7;
            let mut fac = SAFETY * err.max(1e-10).powf(-PI_ALPHA) * err_prev.powf(PI_BETA);
            fac = fac.clamp(FAC_MIN, FAC_MAX);
            if last_rejected {
                fac = fac.min(1.0);
            }
            err_prev = err.max(1e-4);
            h = (step * fac).clamp(MIN_STEP, h_max);
            last_rejected = false;
        } else {
            rejected += 1;
            last_rejected = true;
            if step <= MIN_STEP {
                return Ok(rec.finish(Termination::StepUnderflow, accepted, rejected, config));
            }
            let fac = if err.is_finite() {
                (SAFETY * err.powf(-PI_ALPHA)).clamp(FAC_MIN, 1.0)
            } else {
                FAC_MIN
            };
            h = (step * fac).max(MIN_STEP);
        }
    }
    Ok(rec.finish(Termination::Completed, accepted, rejected, config))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Closure {
    /// Time of the closest return.
    pub period: f64,
    /// Distance from the initial state at that time.
    pub distance: f64,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Closest point to `p` on the segment `[a, b]`: `(parameter, distance)`.
fn segment_closest(a: &[f64], b: &[f64], p: &[f64]) -> (f64, f64) {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..a.len() {
        let d = b[i] - a[i];
        num += (p[i] - a[i]) * d;
        den += d * d;
    }
    let w = if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q: Vec<f64> = a.iter().zip(b).map(|(u, v)| u + w * (v - u)).collect();
    (w, dist(&q, p))
}

/// First return to within `eps` of the initial state after leaving the ball
/// of radius `2·eps`, refined to the closest approach of that pass with
/// linear interpolation between samples.
pub fn orbit_closure(traj: &Trajectory, eps: f64) -> Option<Closure> {
    assert!(eps > 0.0, "eps must be positive");
    let x0 = traj.states.first()?;
    let left = traj.states.iter().position(|s| dist(s, x0) > 2.0 * eps)?;
    let mut best: Option<Closure> = None;
    for k in left..traj.len().saturating_sub(1) {
        let (w, d) = segment_closest(&traj.states[k], &traj.states[k + 1], x0);
        match best {
            None if d < eps => {}
            None => continue,
            Some(b) if d >= b.distance => return best,
            Some(_) => {}
        }
        let (t0, t1) = (traj.times[k], traj.times[k + 1]);
        best = Some(Closure {
            period: t0 + w * (t1 - t0),
            distance: d,
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::VectorFieldSystem;

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::adaptive(-1.0).validate().is_err());
        assert!(IntegratorConfig::rk4(1.0, 0.0).validate().is_err());
        let mut c = IntegratorConfig::adaptive(1.0);
        c.method = Method::Rk4Fixed;
        assert!(c.validate().is_err());
    }

    #[test]
    fn exponential_decay_is_accurate() {
        let sys = VectorFieldSystem::new("decay", ["u"], |x| vec![-x[0]]);
        let tr = integrate(&sys, &[1.0], &IntegratorConfig::adaptive(3.0)).unwrap();
        assert_eq!(tr.termination, Termination::Completed);
        assert_eq!(*tr.times.last().unwrap(), 3.0);
        assert!((tr.last_state()[0] - (-3f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn domain_error_truncates() {
        let sys = VectorFieldSystem::new("blowup", ["u"], |x| {
            vec![if x[0] < 2.0 { 1.0 } else { f64::NAN }]
        });
        let tr = integrate(&sys, &[0.0], &IntegratorConfig::rk4(5.0, 0.1)).unwrap();
        assert!(matches!(tr.termination, Termination::Domain(_)));
        assert!(tr.last_state()[0] < 2.0 + 1e-9);
    }
}
