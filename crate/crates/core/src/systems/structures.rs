//! Closed-form brackets, Hamiltonians and Casimirs with hand-coded gradients.

use super::stable::{cosh_m1_over_sq, expm1_over, sinh_over};
use crate::field::ScalarField;
use crate::poisson::PoissonStructure;

pub const XYZ: [&str; 3] = ["x", "y", "z"];
pub const XYZI: [&str; 4] = ["x", "y", "z", "I"];
pub const PRIMED: [&str; 3] = ["x'", "y'", "z'"];

fn f3<E, G>(name: impl Into<String>, eval: E, grad: G) -> ScalarField
where
    E: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
{
    ScalarField::new(name, 3, eval, grad)
}

fn structure3(
    name: &str,
    names: [&str; 3],
    xy: ScalarField,
    xz: ScalarField,
    yz: ScalarField,
) -> PoissonStructure {
    PoissonStructure::from_upper(name, names, vec![xy, xz, yz]).expect("three entries")
}

/// `c·x_i` on `n` coordinates.
fn scaled_coordinate(name: &str, n: usize, i: usize, c: f64) -> ScalarField {
    ScalarField::new(
        name,
        n,
        move |x| c * x[i],
        move |_| {
            let mut g = vec![0.0; n];
            g[i] = c;
            g
        },
    )
}

fn zero3() -> ScalarField {
    ScalarField::constant("0", 3, 0.0)
}

/// `{x,y} = 0`, `{x,z} = y`, `{y,z} = x`.
pub fn poincare() -> PoissonStructure {
    ab_pencil(0.0)
}

/// `{x,y} = 2λz`, `{x,z} = (1−2λ)y`, `{y,z} = x`.
pub fn ab_pencil(lambda: f64) -> PoissonStructure {
    structure3(
        &format!("case-ab pencil (lambda={lambda})"),
        XYZ,
        if lambda == 0.0 {
            zero3()
        } else {
            scaled_coordinate("2*lambda*z", 3, 2, 2.0 * lambda)
        },
        scaled_coordinate("(1-2*lambda)*y", 3, 1, 1.0 - 2.0 * lambda),
        scaled_coordinate("x", 3, 0, 1.0),
    )
}

/// `C^A = (y² − x²)/4`.
pub fn casimir_a() -> ScalarField {
    f3(
        "C^A",
        |x| (x[1] * x[1] - x[0] * x[0]) / 4.0,
        |x| vec![-x[0] / 2.0, x[1] / 2.0, 0.0],
    )
}

/// `H^A = (x² + z²)/2 − α log(x + y)`, defined for `x + y > 0`.
pub fn hamiltonian_a(alpha: f64) -> ScalarField {
    f3(
        "H^A",
        move |x| (x[0] * x[0] + x[2] * x[2]) / 2.0 - alpha * (x[0] + x[1]).ln(),
        move |x| {
            let s = alpha / (x[0] + x[1]);
            vec![x[0] - s, -s, x[2]]
        },
    )
    .with_domain(|x| {
        if x[0] + x[1] > 0.0 {
            Ok(())
        } else {
            Err(format!("log(x + y) needs x + y > 0, got {}", x[0] + x[1]))
        }
    })
}

/// `C_λ = (x² + (2λ−1)y² + 2λz²)/(8λ − 4)`, `λ ≠ 1/2`.
pub fn casimir_ab_pencil(lambda: f64) -> ScalarField {
    let d = 8.0 * lambda - 4.0;
    f3(
        format!("C_lambda(lambda={lambda})"),
        move |x| {
            (x[0] * x[0] + (2.0 * lambda - 1.0) * x[1] * x[1] + 2.0 * lambda * x[2] * x[2]) / d
        },
        move |x| {
            vec![
                2.0 * x[0] / d,
                2.0 * (2.0 * lambda - 1.0) * x[1] / d,
                4.0 * lambda * x[2] / d,
            ]
        },
    )
}

/// `(x² + y² + 2z²)/4`.
pub fn h0_ab() -> ScalarField {
    f3(
        "H_0",
        |x| (x[0] * x[0] + x[1] * x[1] + 2.0 * x[2] * x[2]) / 4.0,
        |x| vec![x[0] / 2.0, x[1] / 2.0, x[2]],
    )
}

/// `(y² − x²)/4`.
pub fn h1_ab() -> ScalarField {
    casimir_a().renamed("H_1")
}

// ---------------------------------------------------------------- case B

/// `{x,y} = (1−λ)2βI + 2λz`, `{y,z} = x`, `{z,x} = (2λ−1)y`, `I` central.
pub fn case_b_pencil(beta: f64, lambda: f64) -> PoissonStructure {
    let n = 4;
    let xy = ScalarField::new(
        "(1-lambda)*2*beta*I + 2*lambda*z",
        n,
        move |x| (1.0 - lambda) * 2.0 * beta * x[3] + 2.0 * lambda * x[2],
        move |_| vec![0.0, 0.0, 2.0 * lambda, (1.0 - lambda) * 2.0 * beta],
    );
    let zero = || ScalarField::constant("0", n, 0.0);
    // upper order: (x,y) (x,z) (x,I) (y,z) (y,I) (z,I)
    PoissonStructure::from_upper(
        format!("case-b pencil (beta={beta}, lambda={lambda})"),
        XYZI,
        vec![
            xy,
            scaled_coordinate("(1-2*lambda)*y", n, 1, 1.0 - 2.0 * lambda),
            zero(),
            scaled_coordinate("x", n, 0, 1.0),
            zero(),
            zero(),
        ],
    )
    .expect("six entries")
}

pub fn central_i() -> ScalarField {
    ScalarField::coordinate("I", 4, 3)
}

/// `H_0 = C_1 = (x² + y² + 2z²)/4` on the 4D space.
pub fn h0_b() -> ScalarField {
    ScalarField::new(
        "H_0",
        4,
        |x| (x[0] * x[0] + x[1] * x[1] + 2.0 * x[2] * x[2]) / 4.0,
        |x| vec![x[0] / 2.0, x[1] / 2.0, x[2], 0.0],
    )
}

/// `H_1 = −(x² − y² + 4βz)/4`, which equals `C_0` on `I = 1`.
pub fn h1_b(beta: f64) -> ScalarField {
    ScalarField::new(
        "H_1",
        4,
        move |x| -(x[0] * x[0] - x[1] * x[1] + 4.0 * beta * x[2]) / 4.0,
        move |x| vec![-x[0] / 2.0, x[1] / 2.0, -beta, 0.0],
    )
}

/// `C_0 = −((x² − y²)/I + 4βz)/4`, defined for `I ≠ 0`.
pub fn casimir_b0(beta: f64) -> ScalarField {
    ScalarField::new(
        "C_0",
        4,
        move |x| -((x[0] * x[0] - x[1] * x[1]) / x[3] + 4.0 * beta * x[2]) / 4.0,
        move |x| {
            let i = x[3];
            vec![
                -x[0] / (2.0 * i),
                x[1] / (2.0 * i),
                -beta,
                (x[0] * x[0] - x[1] * x[1]) / (4.0 * i * i),
            ]
        },
    )
    .with_domain(|x| {
        if x[3] != 0.0 {
            Ok(())
        } else {
            Err("C_0 divides by I".into())
        }
    })
}

pub fn casimir_b1() -> ScalarField {
    h0_b().renamed("C_1")
}

/// Polynomial Casimir of the whole pencil:
/// `x² − (1−2λ)y² + 2λz² + 4(1−λ)βzI`.
pub fn casimir_b_pencil(beta: f64, lambda: f64) -> ScalarField {
    let a = 1.0 - 2.0 * lambda;
    let b = 4.0 * (1.0 - lambda) * beta;
    ScalarField::new(
        format!("C_lambda(lambda={lambda})"),
        4,
        move |x| x[0] * x[0] - a * x[1] * x[1] + 2.0 * lambda * x[2] * x[2] + b * x[2] * x[3],
        move |x| {
            vec![
                2.0 * x[0],
                -2.0 * a * x[1],
                4.0 * lambda * x[2] + b * x[3],
                b * x[2],
            ]
        },
    )
}

// ---------------------------------------------------------------- book

/// `{x,y} = (η/2)(y² − x²)`, `{x,z} = y`, `{y,z} = x`.
pub fn book(eta: f64) -> PoissonStructure {
    structure3(
        &format!("book (eta={eta})"),
        XYZ,
        f3(
            "eta/2*(y^2-x^2)",
            move |x| eta / 2.0 * (x[1] * x[1] - x[0] * x[0]),
            move |x| vec![-eta * x[0], eta * x[1], 0.0],
        ),
        scaled_coordinate("y", 3, 1, 1.0),
        scaled_coordinate("x", 3, 0, 1.0),
    )
}

/// `C_η = e^{−ηz}(y² − x²)`.
pub fn casimir_book(eta: f64) -> ScalarField {
    f3(
        "C_eta",
        move |x| (-eta * x[2]).exp() * (x[1] * x[1] - x[0] * x[0]),
        move |x| {
            let e = (-eta * x[2]).exp();
            vec![
                -2.0 * e * x[0],
                2.0 * e * x[1],
                -eta * e * (x[1] * x[1] - x[0] * x[0]),
            ]
        },
    )
}

// ---------------------------------------------------------------- Heisenberg-Weyl

/// `{x,y} = 0`, `{x,z} = ηx + y`, `{y,z} = x + ηy`.
pub fn heisenberg(eta: f64) -> PoissonStructure {
    structure3(
        &format!("heisenberg-weyl (eta={eta})"),
        XYZ,
        zero3(),
        f3(
            "eta*x+y",
            move |x| eta * x[0] + x[1],
            move |_| vec![eta, 1.0, 0.0],
        ),
        f3(
            "x+eta*y",
            move |x| x[0] + eta * x[1],
            move |_| vec![1.0, eta, 0.0],
        ),
    )
}

/// `C_η = (y² − x²)^{1−η} (y − x)^{2η}`, defined for `y > |x|`.
pub fn casimir_heisenberg(eta: f64) -> ScalarField {
    f3(
        "C_eta",
        move |x| {
            let (d, m) = (x[1] * x[1] - x[0] * x[0], x[1] - x[0]);
            d.powf(1.0 - eta) * m.powf(2.0 * eta)
        },
        move |x| {
            let (d, m) = (x[1] * x[1] - x[0] * x[0], x[1] - x[0]);
            let c = d.powf(1.0 - eta) * m.powf(2.0 * eta);
            vec![
                c * (-2.0 * (1.0 - eta) * x[0] / d - 2.0 * eta / m),
                c * (2.0 * (1.0 - eta) * x[1] / d + 2.0 * eta / m),
                0.0,
            ]
        },
    )
    .with_domain(|x| {
        if x[1] > x[0].abs() {
            Ok(())
        } else {
            Err(format!(
                "fractional powers need y > |x|, got x = {}, y = {}",
                x[0], x[1]
            ))
        }
    })
}

/// The η = 0 value `y² − x²` shared by the book and Heisenberg-Weyl limits.
pub fn casimir_quadratic_limit() -> ScalarField {
    f3(
        "C_0",
        |x| x[1] * x[1] - x[0] * x[0],
        |x| vec![-2.0 * x[0], 2.0 * x[1], 0.0],
    )
}

// ---------------------------------------------------------------- deformed AB

/// `{x,y} = (η/2)(−x² + (1−2λ)y²) + λ(e^{2ηz} − 1)/η`, `{x,z} = (1−2λ)y`,
/// `{y,z} = x`.
pub fn ab_deformed(lambda: f64, eta: f64) -> PoissonStructure {
    let a = 1.0 - 2.0 * lambda;
    structure3(
        &format!("case-ab deformed (lambda={lambda}, eta={eta})"),
        XYZ,
        f3(
            "{x,y}_{lambda,eta}",
            move |x| {
                eta / 2.0 * (a * x[1] * x[1] - x[0] * x[0]) + lambda * expm1_over(2.0, x[2], eta)
            },
            move |x| {
                vec![
                    -eta * x[0],
                    eta * a * x[1],
                    2.0 * lambda * (2.0 * eta * x[2]).exp(),
                ]
            },
        ),
        scaled_coordinate("(1-2*lambda)*y", 3, 1, a),
        scaled_coordinate("x", 3, 0, 1.0),
    )
}

/// `C_{λ,η} = e^{−ηz}(−x² + (1−2λ)y²)/4 − λ(cosh ηz − 1)/η²`.
pub fn casimir_ab_deformed(lambda: f64, eta: f64) -> ScalarField {
    let a = 1.0 - 2.0 * lambda;
    f3(
        format!("C_lambda_eta(lambda={lambda})"),
        move |x| {
            (-eta * x[2]).exp() * (a * x[1] * x[1] - x[0] * x[0]) / 4.0
                - lambda * cosh_m1_over_sq(x[2], eta)
        },
        move |x| {
            let e = (-eta * x[2]).exp();
            vec![
                -e * x[0] / 2.0,
                e * a * x[1] / 2.0,
                -eta * e * (a * x[1] * x[1] - x[0] * x[0]) / 4.0 - lambda * sinh_over(x[2], eta),
            ]
        },
    )
}

/// `H_{0,η} = −C_{1,η} = e^{−ηz}(x² + y²)/4 + (cosh ηz − 1)/η²`.
pub fn h0_ab_deformed(eta: f64) -> ScalarField {
    f3(
        "H_0_eta",
        move |x| {
            (-eta * x[2]).exp() * (x[0] * x[0] + x[1] * x[1]) / 4.0 + cosh_m1_over_sq(x[2], eta)
        },
        move |x| {
            let e = (-eta * x[2]).exp();
            vec![
                e * x[0] / 2.0,
                e * x[1] / 2.0,
                -eta * e * (x[0] * x[0] + x[1] * x[1]) / 4.0 + sinh_over(x[2], eta),
            ]
        },
    )
}

/// `H_{1,η} = C_{0,η} = e^{−ηz}(y² − x²)/4`.
pub fn h1_ab_deformed(eta: f64) -> ScalarField {
    f3(
        "H_1_eta",
        move |x| (-eta * x[2]).exp() * (x[1] * x[1] - x[0] * x[0]) / 4.0,
        move |x| {
            let e = (-eta * x[2]).exp();
            vec![
                -e * x[0] / 2.0,
                e * x[1] / 2.0,
                -eta * e * (x[1] * x[1] - x[0] * x[0]) / 4.0,
            ]
        },
    )
}

/// `C_{λ,0} = (−x² + (1−2λ)y² − 2λz²)/4`.
pub fn casimir_ab_limit(lambda: f64) -> ScalarField {
    let a = 1.0 - 2.0 * lambda;
    f3(
        format!("C_lambda_0(lambda={lambda})"),
        move |x| (-x[0] * x[0] + a * x[1] * x[1] - 2.0 * lambda * x[2] * x[2]) / 4.0,
        move |x| vec![-x[0] / 2.0, a * x[1] / 2.0, -lambda * x[2]],
    )
}

// ---------------------------------------------------------------- primed AB

/// `{x',y'} = 2λ sinh(ηz')/η`, `{x',z'} = (1−2λ)y'`, `{y',z'} = x'`.
pub fn ab_primed(lambda: f64, eta: f64) -> PoissonStructure {
    structure3(
        &format!("case-ab primed (lambda={lambda}, eta={eta})"),
        PRIMED,
        f3(
            "2*lambda*sinh(eta*z')/eta",
            move |x| 2.0 * lambda * sinh_over(x[2], eta),
            move |x| vec![0.0, 0.0, 2.0 * lambda * (eta * x[2]).cosh()],
        ),
        scaled_coordinate("(1-2*lambda)*y'", 3, 1, 1.0 - 2.0 * lambda),
        scaled_coordinate("x'", 3, 0, 1.0),
    )
}

/// `−λ(cosh ηz' − 1)/η² − (x'² + (2λ−1)y'²)/4`.
pub fn casimir_ab_primed(lambda: f64, eta: f64) -> ScalarField {
    let b = 2.0 * lambda - 1.0;
    f3(
        format!("C_lambda_eta'(lambda={lambda})"),
        move |x| -lambda * cosh_m1_over_sq(x[2], eta) - (x[0] * x[0] + b * x[1] * x[1]) / 4.0,
        move |x| vec![-x[0] / 2.0, -b * x[1] / 2.0, -lambda * sinh_over(x[2], eta)],
    )
}

/// λ = 0 Hamiltonian `(cosh ηz' − 1)/η² + (x'² + y'²)/4`.
pub fn h0_ab_primed(eta: f64) -> ScalarField {
    f3(
        "H_0_eta'",
        move |x| cosh_m1_over_sq(x[2], eta) + (x[0] * x[0] + x[1] * x[1]) / 4.0,
        move |x| vec![x[0] / 2.0, x[1] / 2.0, sinh_over(x[2], eta)],
    )
}

/// λ = 1 Hamiltonian `(y'² − x'²)/4`.
pub fn h1_ab_primed() -> ScalarField {
    casimir_a().renamed("H_1_eta'")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{casimir_residual, jacobi_residual};

    #[test]
    fn pencil_casimir_example() {
        let c = casimir_ab_pencil(1.0);
        assert_eq!(c.value(&[0.5, 1.0, 1.0]).unwrap(), 0.8125);
    }

    #[test]
    fn deformed_bracket_at_lambda_zero_is_the_book_bracket() {
        let x = [0.3, -1.2, 0.8];
        for eta in [1e-9, 1e-3, 0.5, 2.0] {
            let a = ab_deformed(0.0, eta).matrix(&x).unwrap();
            let b = book(eta).matrix(&x).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn casimirs_are_casimirs_at_a_point() {
        let x = [0.3, 1.2, -0.4];
        let pairs = [
            (ab_deformed(0.3, 0.7), casimir_ab_deformed(0.3, 0.7)),
            (ab_primed(0.3, 0.7), casimir_ab_primed(0.3, 0.7)),
            (book(1.5), casimir_book(1.5)),
            (heisenberg(0.4), casimir_heisenberg(0.4)),
            (ab_pencil(0.25), casimir_ab_pencil(0.25)),
        ];
        for (s, c) in pairs {
            assert!(
                casimir_residual(&s, &c, &x).unwrap() < 1e-12,
                "{}",
                s.name()
            );
            assert!(jacobi_residual(&s, &x).unwrap() < 1e-12, "{}", s.name());
        }
    }

    #[test]
    fn heisenberg_casimir_domain() {
        assert!(casimir_heisenberg(0.5).value(&[1.0, 0.5, 0.0]).is_err());
        assert_eq!(
            casimir_heisenberg(0.0).value(&[0.5, 1.0, 0.0]).unwrap(),
            0.75
        );
    }
}
