//! Special functions: theta, Bessel, elliptic, and the Bessel-ratio record
//! used by the minimal-uncertainty family.

mod bessel;
mod elliptic;
mod theta;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_j, bessel_j_array, i0, i1, BesselI};
pub use elliptic::{
    complete_integrals, elliptic_suite, incomplete_e, sncndn, sncndn_complex, EllipticRecord,
};
pub use theta::{
    theta, theta_derivs, theta_direct, theta_transformed, Kind, ThetaDerivs, ThetaNome,
};

use crate::error::finite;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `r1 = I₁/I₀`, `r2 = I₁/(x·I₀)` and `g = 1 - r1² - r2` at a real argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GRatio {
    pub x: f64,
    pub r1: f64,
    pub r2: f64,
    pub g: f64,
}

/// Bessel ratios at `x`; a series is used for `|x| < 0.1` so `r2(0) = 1/2`.
pub fn g_ratio(x: f64) -> Result<GRatio> {
    finite(x, "g_ratio argument")?;
    let ax = x.abs();
    let r2 = if ax < 0.1 {
        // I₁(x)/x = ½ Σ w^k/(k!(k+1)!),  I₀ = Σ w^k/(k!)²,  w = x²/4
        let w = 0.25 * x * x;
        let (mut a, mut b) = (0.5, 1.0);
        let (mut ta, mut tb) = (0.5, 1.0);
        for k in 1..12 {
            let kf = k as f64;
            ta *= w / (kf * (kf + 1.0));
            tb *= w / (kf * kf);
            a += ta;
            b += tb;
        }
        a / b
    } else {
        bessel_i_scaled(1.0, ax)? / bessel_i_scaled(0.0, ax)? / ax
    };
    let r1 = x * r2;
    Ok(GRatio { x, r1, r2, g: 1.0 - r1 * r1 - r2 })
}

/// Relative residuals of the theta/elliptic identity web at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    /// `ϑ₄/ϑ₃` against `√k'/dn(u)`.
    pub ratio: f64,
    /// `ϑ₄'/ϑ₄` against `(2K/π)·Z(u)`.
    pub zeta_fn: f64,
    /// `ϑ₃'/ϑ₃` against `ϑ₄'/ϑ₄ - (2K/π)·k²·sn·cn/dn`.
    pub log_derivative: f64,
    /// `(ln ϑ₃)''` against `(4K²/π²)·(k'²/dn² - E/K)`.
    pub second_log: f64,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Compare theta ratios with the independently computed elliptic functions.
pub fn identity_residuals(zeta: Complex64, nome: &ThetaNome) -> Result<IdentityResiduals> {
    let e = elliptic_suite(zeta, nome)?;
    let t3 = theta_derivs(Kind::Three, zeta, nome)?;
    let t4 = theta_derivs(Kind::Four, zeta, nome)?;
    let scale = 2.0 * e.big_k / PI;
    let l3 = t3.d1 / t3.value;
    let l4 = t4.d1 / t4.value;
    let ratio = rel(t4.value / t3.value, e.kprime.sqrt() / e.dn);
    let zeta_fn = rel(l4, scale * e.zeta_fn);
    let log_derivative = rel(l3, l4 - scale * e.k * e.k * e.cn * e.sn / e.dn);
    let lhs = t3.d2 / t3.value - l3 * l3;
    let rhs = scale * scale * (e.kprime * e.kprime / (e.dn * e.dn) - e.big_e / e.big_k);
    let second_log = rel(lhs, rhs);
    Ok(IdentityResiduals { ratio, zeta_fn, log_derivative, second_log })
}

/// Relative residual of the Jacobi transformation
/// `ϑ(ζ|τ) = (-iτ)^{-1/2} e^{ζ²/(iπτ)} ϑ'(ζ/τ | -1/τ)` for ϑ₃ → ϑ₃ or ϑ₂ → ϑ₄,
/// with both sides summed as direct series.
pub fn modular_residual(kind: Kind, zeta: Complex64, nome: &ThetaNome) -> Result<f64> {
    let lhs = theta_direct(kind, zeta, nome)?.value;
    let rhs = theta_transformed(kind, zeta, nome)?.value;
    Ok(rel(lhs, rhs))
}
