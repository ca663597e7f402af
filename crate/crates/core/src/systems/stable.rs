//! Quotients by η that stay finite and accurate as η → 0.

/// Below this |η| the quotients switch to their Taylor polynomials.
pub const TAYLOR_THRESHOLD: f64 = 1e-8;

/// `(e^{cηz} − 1)/η`.
pub fn expm1_over(c: f64, z: f64, eta: f64) -> f64 {
    let a = c * z;
    if eta.abs() < TAYLOR_THRESHOLD {
        a + a * a * eta / 2.0 + a * a * a * eta * eta / 6.0
    } else {
        (a * eta).exp_m1() / eta
    }
}

/// `sinh(ηz)/η`.
pub fn sinh_over(z: f64, eta: f64) -> f64 {
    if eta.abs() < TAYLOR_THRESHOLD {
        z + eta * eta * z * z * z / 6.0
    } else {
        (eta * z).sinh() / eta
    }
}

/// `(cosh(ηz) − 1)/η²`, evaluated as `2 (sinh(ηz/2)/η)²`.
pub fn cosh_m1_over_sq(z: f64, eta: f64) -> f64 {
    if eta.abs() < TAYLOR_THRESHOLD {
        z * z / 2.0 + eta * eta * z.powi(4) / 24.0
    } else {
        let s = sinh_over(z / 2.0, eta);
        2.0 * s * s
    }
}
