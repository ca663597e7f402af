//! Coproduct maps and the two-copy coupled systems.
//!
//! A coproduct sends a point `s = (s₁, s₂)` of the product of two copies to
//! a point of one copy: the coordinates of the group product `G(s₁)·G(s₂)`.
//! Closed forms are coded here; [`coproduct_from_group`] is the matrix oracle
//! that certifies them.
//!
//! The coupled systems are integrated in two-copy coordinates. The cluster
//! chart `(x₊, y₊, z₊, x'₁, y'₁, z'₁)` is an observable chart in which the
//! first block obeys the one-copy equations.

use nalgebra::{DMatrix, SMatrix};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::liebialg::{GroupKind, MatrixLieGroupRep};
use crate::poisson::{
    max_abs_diff, Dynamics, HamiltonianSystem, PoissonStructure, VectorFieldSystem,
};
use crate::systems::stable::sinh_over;
use crate::systems::{ab_primed_field, structures as st};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoproductKind {
    /// `(x₁e^{ηz₂} + x₂, y₁e^{ηz₂} + y₂, z₁ + z₂)`.
    Book,
    /// `(x₁ + x₂, y₁ + y₂, z₁ + z₂ − η y₁x₂)`.
    HeisenbergWeyl,
    /// Book coproduct in the primed chart `x' = e^{−ηz/2}x`:
    /// `(x'₁e^{ηz'₂/2} + e^{−ηz'₁/2}x'₂, …, z'₁ + z'₂)`.
    Primed,
    /// `u₁ + u₂`.
    Primitive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoproductMap {
    pub kind: CoproductKind,
    pub eta: f64,
}

pub type Jacobian = SMatrix<f64, 3, 6>;

impl CoproductMap {
    pub fn new(kind: CoproductKind, eta: f64) -> Self {
        CoproductMap { kind, eta }
    }

    pub fn book(eta: f64) -> Self {
        Self::new(CoproductKind::Book, eta)
    }

    pub fn heisenberg_weyl(eta: f64) -> Self {
        Self::new(CoproductKind::HeisenbergWeyl, eta)
    }

    pub fn primed(eta: f64) -> Self {
        Self::new(CoproductKind::Primed, eta)
    }

    pub fn primitive() -> Self {
        Self::new(CoproductKind::Primitive, 0.0)
    }

    pub fn apply(&self, s: &[f64]) -> [f64; 3] {
        let eta = self.eta;
        let (x1, y1, z1, x2, y2, z2) = (s[0], s[1], s[2], s[3], s[4], s[5]);
        match self.kind {
            CoproductKind::Book => {
                let e = (eta * z2).exp();
                [x1 * e + x2, y1 * e + y2, z1 + z2]
            }
            CoproductKind::HeisenbergWeyl => [x1 + x2, y1 + y2, z1 + z2 - eta * y1 * x2],
            CoproductKind::Primed => {
                let (a, b) = ((eta * z2 / 2.0).exp(), (-eta * z1 / 2.0).exp());
                [x1 * a + b * x2, y1 * a + b * y2, z1 + z2]
            }
            CoproductKind::Primitive => [x1 + x2, y1 + y2, z1 + z2],
        }
    }

    /// `∂Δ(u)/∂s`, one row per coordinate `u`.
    pub fn jacobian(&self, s: &[f64]) -> Jacobian {
        let eta = self.eta;
        let (x1, y1, z1, x2, y2, z2) = (s[0], s[1], s[2], s[3], s[4], s[5]);
        match self.kind {
            CoproductKind::Book => {
                let e = (eta * z2).exp();
                Jacobian::from_row_slice(&[
                    e,
                    0.0,
                    0.0,
                    1.0,
                    0.0,
                    eta * x1 * e, //
                    0.0,
                    e,
                    0.0,
                    0.0,
                    1.0,
                    eta * y1 * e, //
                    0.0,
                    0.0,
                    1.0,
                    0.0,
                    0.0,
                    1.0,
                ])
            }
            CoproductKind::HeisenbergWeyl => Jacobian::from_row_slice(&[
                1.0,
                0.0,
                0.0,
                1.0,
                0.0,
                0.0, //
                0.0,
                1.0,
                0.0,
                0.0,
                1.0,
                0.0, //
                0.0,
                -eta * x2,
                1.0,
                -eta * y1,
                0.0,
                1.0,
            ]),
            CoproductKind::Primed => {
                let (a, b) = ((eta * z2 / 2.0).exp(), (-eta * z1 / 2.0).exp());
                let h = eta / 2.0;
                Jacobian::from_row_slice(&[
                    a,
                    0.0,
                    -h * b * x2,
                    b,
                    0.0,
                    h * a * x1, //
                    0.0,
                    a,
                    -h * b * y2,
                    0.0,
                    b,
                    h * a * y1, //
                    0.0,
                    0.0,
                    1.0,
                    0.0,
                    0.0,
                    1.0,
                ])
            }
            CoproductKind::Primitive => Jacobian::from_row_slice(&[
                1.0, 0.0, 0.0, 1.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, 0.0, 1.0,
            ]),
        }
    }

    /// `f ∘ Δ` as a six-variable field with gradient `J_Δᵀ ∇f`.
    pub fn pullback(&self, f: &ScalarField, name: impl Into<String>) -> ScalarField {
        assert_eq!(f.arity(), 3, "coproducts pull back three-variable fields");
        let cp = *self;
        let (fv, fg, fd) = (f.clone(), f.clone(), f.clone());
        ScalarField::new(
            name,
            6,
            move |s| fv.value(&cp.apply(s)).unwrap_or(f64::NAN),
            move |s| {
                let g = fg
                    .gradient(&cp.apply(s))
                    .unwrap_or_else(|_| vec![f64::NAN; 3]);
                let j = cp.jacobian(s);
                (0..6)
                    .map(|c| (0..3).map(|r| j[(r, c)] * g[r]).sum())
                    .collect()
            },
        )
        .with_domain(move |s| {
            fd.value(&cp.apply(s))
                .map(|_| ())
                .map_err(|e| e.to_string())
        })
    }
}

fn split(s: &[f64]) -> Result<([f64; 3], [f64; 3])> {
    if s.len() != 6 {
        return Err(Error::dims("two-copy point", 6, s.len()));
    }
    Ok(([s[0], s[1], s[2]], [s[3], s[4], s[5]]))
}

/// `(Δx, Δy, Δz)` at a two-copy point.
pub fn apply_coproduct(cp: &CoproductMap, s: &[f64]) -> Result<[f64; 3]> {
    split(s)?;
    Ok(cp.apply(s))
}

/// Coordinates of `G(s₁)·G(s₂)` computed by matrix multiplication.
pub fn coproduct_from_group(rep: &MatrixLieGroupRep, s1: &[f64; 3], s2: &[f64; 3]) -> [f64; 3] {
    rep.multiply(s1, s2)
}

/// Matrix oracle for the primed coproduct: map both factors to book
/// coordinates `x = e^{ηz'/2}x'`, multiply in the book group, map back.
pub fn primed_coproduct_from_group(eta: f64, s1: &[f64; 3], s2: &[f64; 3]) -> Result<[f64; 3]> {
    let rep = MatrixLieGroupRep::new(GroupKind::Book, eta)?;
    let to_book = |p: &[f64; 3]| {
        let e = (eta * p[2] / 2.0).exp();
        [p[0] * e, p[1] * e, p[2]]
    };
    let g = rep.multiply(&to_book(s1), &to_book(s2));
    let e = (-eta * g[2] / 2.0).exp();
    Ok([g[0] * e, g[1] * e, g[2]])
}

/// `max_{u<v} |{Δu, Δv}_{Π⊕Π}(s) − Π^{uv}(Δ(s))|`.
pub fn poisson_map_residual(
    structure3: &PoissonStructure,
    cp: &CoproductMap,
    s: &[f64],
) -> Result<f64> {
    if structure3.dim() != 3 {
        return Err(Error::dims(
            "coproduct target structure",
            3,
            structure3.dim(),
        ));
    }
    let (s1, s2) = split(s)?;
    let mut pi6 = DMatrix::zeros(6, 6);
    pi6.view_mut((0, 0), (3, 3))
        .copy_from(&structure3.matrix(&s1)?);
    pi6.view_mut((3, 3), (3, 3))
        .copy_from(&structure3.matrix(&s2)?);
    let j = DMatrix::from_iterator(3, 6, cp.jacobian(s).iter().copied());
    let pushed = &j * &pi6 * j.transpose();
    let target = structure3.matrix(&cp.apply(s))?;
    let mut worst = 0.0_f64;
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        worst = worst.max((pushed[(u, v)] - target[(u, v)]).abs());
    }
    Ok(worst)
}

fn check_lambda(lambda: u8) -> Result<()> {
    if lambda > 1 {
        return Err(Error::parameter(
            "lambda",
            "coupled systems exist for λ = 0 and λ = 1",
        ));
    }
    Ok(())
}

/// One-copy Hamiltonian and Casimir of the primed structure at `λ ∈ {0, 1}`.
fn primed_pair(lambda: u8, eta: f64) -> (ScalarField, ScalarField) {
    if lambda == 1 {
        (st::h1_ab_primed(), st::casimir_ab_primed(1.0, eta))
    } else {
        (st::h0_ab_primed(eta), st::casimir_ab_primed(0.0, eta))
    }
}

/// The one-copy primed system at `λ ∈ {0, 1}`.
pub fn one_copy_system(lambda: u8, eta: f64) -> Result<HamiltonianSystem> {
    check_lambda(lambda)?;
    let (h, c) = primed_pair(lambda, eta);
    Ok(HamiltonianSystem::new(
        format!("case-ab-primed[lambda={lambda}, eta={eta}]"),
        st::ab_primed(f64::from(lambda), eta).with_casimir(c),
        h,
    )
    .with_handcoded(ab_primed_field(eta)))
}

/// Two copies of the primed λ-bracket with Hamiltonian `H ∘ Δ`.
///
/// Invariants: `H ∘ Δ`, the one-copy Casimir of each factor, and `C ∘ Δ`.
pub fn coupled_system(lambda: u8, eta: f64) -> Result<HamiltonianSystem> {
    check_lambda(lambda)?;
    if !eta.is_finite() {
        return Err(Error::parameter("eta", "must be finite"));
    }
    let (h, c) = primed_pair(lambda, eta);
    let one = st::ab_primed(f64::from(lambda), eta).with_casimir(c.clone());
    let cp = CoproductMap::primed(eta);
    Ok(HamiltonianSystem::new(
        format!("coupled[lambda={lambda}, eta={eta}]"),
        one.direct_sum(&one),
        cp.pullback(&h, "H∘Δ"),
    )
    .with_invariant(cp.pullback(&c, "C∘Δ")))
}

pub const CLUSTER_NAMES: [&str; 6] = ["x+", "y+", "z+", "x'1", "y'1", "z'1"];

/// `(s₁, s₂) ↦ (Δ(s), s₁)`.
pub fn to_cluster_chart(eta: f64, s: &[f64]) -> Result<[f64; 6]> {
    let (s1, _) = split(s)?;
    let p = CoproductMap::primed(eta).apply(s);
    Ok([p[0], p[1], p[2], s1[0], s1[1], s1[2]])
}

/// Inverse of [`to_cluster_chart`].
pub fn from_cluster_chart(eta: f64, c: &[f64]) -> Result<[f64; 6]> {
    if c.len() != 6 {
        return Err(Error::dims("cluster-chart point", 6, c.len()));
    }
    let (xp, yp, zp, x1, y1, z1) = (c[0], c[1], c[2], c[3], c[4], c[5]);
    let z2 = zp - z1;
    let (a, b) = ((eta * z2 / 2.0).exp(), (eta * z1 / 2.0).exp());
    Ok([x1, y1, z1, b * (xp - x1 * a), b * (yp - y1 * a), z2])
}

/// The displayed coupled equations in the cluster chart.
pub fn cluster_chart_rhs(lambda: u8, eta: f64, c: &[f64]) -> Result<[f64; 6]> {
    check_lambda(lambda)?;
    if c.len() != 6 {
        return Err(Error::dims("cluster-chart point", 6, c.len()));
    }
    let (xp, yp, zp, x1, y1, z1) = (c[0], c[1], c[2], c[3], c[4], c[5]);
    let s = sinh_over(zp, eta);
    let e = (eta / 2.0 * (zp - z1)).exp();
    let (dx1, dy1) = if lambda == 1 {
        let s1 = sinh_over(z1, eta);
        let m = x1 * xp - y1 * yp;
        (
            eta * y1 / 4.0 * (yp * yp - xp * xp) + e * (yp * s1 + eta * y1 * m / 4.0),
            eta * x1 / 4.0 * (xp * xp - yp * yp) + e * (xp * s1 - eta * x1 * m / 4.0),
        )
    } else {
        let k = s + eta / 4.0 * (e * (xp * x1 + yp * y1) - (xp * xp + yp * yp));
        (y1 * k, x1 * k)
    };
    Ok([
        yp * s,
        xp * s,
        -xp * yp,
        dx1,
        dy1,
        -0.5 * e * (xp * y1 + yp * x1),
    ])
}

/// The cluster-chart equations as a six-dimensional vector field.
pub fn cluster_chart_system(lambda: u8, eta: f64) -> Result<VectorFieldSystem> {
    check_lambda(lambda)?;
    Ok(VectorFieldSystem::new(
        format!("cluster-chart[lambda={lambda}, eta={eta}]"),
        CLUSTER_NAMES,
        move |c| {
            cluster_chart_rhs(lambda, eta, c)
                .map(|v| v.to_vec())
                .unwrap_or_else(|_| vec![f64::NAN; 6])
        },
    ))
}

/// `‖D(chart)·F₆(s) − displayed rhs(chart(s))‖∞`: the displayed cluster-chart
/// equations against the pushforward of the two-copy Hamiltonian field.
pub fn chart_equation_residual(lambda: u8, eta: f64, s: &[f64]) -> Result<f64> {
    let sys = coupled_system(lambda, eta)?;
    let f6 = sys.vector_field(s)?;
    let j = CoproductMap::primed(eta).jacobian(s);
    let mut pushed = [0.0; 6];
    for r in 0..3 {
        pushed[r] = (0..6).map(|c| j[(r, c)] * f6[c]).sum();
        pushed[r + 3] = f6[r];
    }
    let shown = cluster_chart_rhs(lambda, eta, &to_cluster_chart(eta, s)?)?;
    Ok(max_abs_diff(&pushed, &shown))
}

/// `‖J_Δ(s)·F₆(s) − F₃(Δ(s))‖∞` with the one-copy primed field `F₃`.
pub fn cluster_dynamics_residual(lambda: u8, eta: f64, s: &[f64]) -> Result<f64> {
    cluster_dynamics_residual_with(&CoproductMap::primed(eta), lambda, eta, s)
}

/// [`cluster_dynamics_residual`] with an arbitrary map in place of `Δ`.
pub fn cluster_dynamics_residual_with(
    cp: &CoproductMap,
    lambda: u8,
    eta: f64,
    s: &[f64],
) -> Result<f64> {
    let sys = coupled_system(lambda, eta)?;
    let f6 = sys.rhs(s)?;
    let j = cp.jacobian(s);
    let lhs: Vec<f64> = (0..3)
        .map(|r| (0..6).map(|c| j[(r, c)] * f6[c]).sum())
        .collect();
    let rhs = ab_primed_field(eta)(&cp.apply(s));
    Ok(max_abs_diff(&lhs, &rhs))
}
