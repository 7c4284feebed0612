//! Minimal-uncertainty states `ψ_{α,l̃}(φ) ∝ e^{i[l̃(φ−α) + σ sin(φ−α)]}`
//! with `σ = γ − is`.
//!
//! In the basis `e_{m,δ}` the coefficients are Bessel functions of the complex
//! argument σ, so everything here is exact up to window truncation.

use crate::circlespace::{CircleState, Sector};
use crate::error::{finite, Error};
use crate::quad;
use crate::specfun::{bessel_i_scaled, bessel_j, bessel_j_array, g_ratio};
use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Parameters of one minimal-uncertainty state.
///
/// `l` is the mean quasi-angular momentum; its fractional part fixes the sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinUncParams {
    pub alpha: f64,
    #[serde(rename = "l")]
    pub l_tilde: f64,
    pub gamma: f64,
    pub s: f64,
}

impl MinUncParams {
    pub fn new(alpha: f64, l_tilde: f64, gamma: f64, s: f64) -> Result<Self> {
        let p = Self { alpha, l_tilde, gamma, s };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        finite(self.alpha, "alpha")?;
        finite(self.l_tilde, "l")?;
        finite(self.gamma, "gamma")?;
        finite(self.s, "s")?;
        // I₀(2s) overflows past this
        if self.s.abs() > 350.0 {
            return Err(Error::InvalidParameter(format!("|s| too large: {}", self.s)));
        }
        Ok(())
    }

    pub fn sigma(&self) -> Complex64 {
        Complex64::new(self.gamma, -self.s)
    }

    /// `(n₀, δ₀)` with `l̃ = n₀ + δ₀`, `δ₀ ∈ [0,1)`.
    pub fn split(&self) -> (i64, f64) {
        let n = self.l_tilde.floor();
        let d = self.l_tilde - n;
        if d >= 1.0 {
            (n as i64 + 1, 0.0)
        } else {
            (n as i64, d)
        }
    }

    pub fn sector(&self) -> Result<Sector> {
        Sector::new(self.split().1)
    }
}

fn window_half_width(sigma: Complex64, tol: f64) -> i64 {
    (sigma.norm().ceil() + (10.0 + 5.0 * (1.0 / tol).ln()).ceil()) as i64
}

// J_k(σ) for k = -w..=w
fn bessel_window(w: i64, sigma: Complex64) -> Result<Vec<Complex64>> {
    let pos = bessel_j_array(w as usize, sigma)?;
    Ok((-w..=w)
        .map(|k| {
            let v = pos[k.unsigned_abs() as usize];
            if k < 0 && k % 2 != 0 {
                -v
            } else {
                v
            }
        })
        .collect())
}

// ln I₀(2s), stable for large |s|
fn ln_i0_2s(s: f64) -> Result<f64> {
    Ok(bessel_i_scaled(0.0, 2.0 * s)?.ln() + 2.0 * s.abs())
}

/// The state in coefficient form. The returned state is not renormalized; its
/// squared norm is `1 − tail` with the discarded tail below `window_tol`.
pub fn min_state(params: &MinUncParams, window_tol: f64) -> Result<CircleState> {
    params.validate()?;
    if !(window_tol > 0.0 && window_tol < 1.0) {
        return Err(Error::InvalidParameter(format!("window_tol must lie in (0,1), got {window_tol}")));
    }
    let (n, delta) = params.split();
    let sigma = params.sigma();
    let w = window_half_width(sigma, window_tol);
    let js = bessel_window(w, sigma)?;
    let scale = (-0.5 * ln_i0_2s(params.s)?).exp();
    let coeffs = (-w..=w)
        .zip(js)
        .map(|(k, j)| {
            let m = n + k;
            Complex64::from_polar(scale, -(m as f64 + delta) * params.alpha) * j
        })
        .collect();
    CircleState::new(Sector::new(delta)?, n - w, coeffs)
}

/// The explicit wavefunction, for checks against [`min_state`].
pub fn min_wavefunction(params: &MinUncParams, phi: f64) -> Result<Complex64> {
    params.validate()?;
    let x = phi - params.alpha;
    let arg = Complex64::new(0.0, params.l_tilde * x) + Complex64::new(0.0, 1.0) * params.sigma() * x.sin();
    Ok((arg - 0.5 * ln_i0_2s(params.s)?).exp())
}

/// Closed-form moments of a minimal-uncertainty state. Variances and
/// covariances are symmetrized, `S(A,B) = ½⟨AB+BA⟩ − ⟨A⟩⟨B⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinExpectations {
    pub c: f64,
    pub s: f64,
    pub l: f64,
    pub c2: f64,
    pub s2: f64,
    pub l2: f64,
    pub var_c: f64,
    pub var_s: f64,
    pub var_l: f64,
    pub cov_cl: f64,
    pub cov_sl: f64,
    pub cov_cs: f64,
}

pub fn min_expectations(params: &MinUncParams) -> Result<MinExpectations> {
    params.validate()?;
    let g = g_ratio(2.0 * params.s)?;
    let (r1, r2) = (g.r1, g.r2);
    let (sa, ca) = params.alpha.sin_cos();
    let (s2a, c2a) = (2.0 * params.alpha).sin_cos();
    let lt = params.l_tilde;
    let sig2 = params.sigma().norm_sqr();

    let c = -sa * r1;
    let s = ca * r1;
    let c2 = c2a * r2 + sa * sa;
    let s2 = -c2a * r2 + ca * ca;
    let l2 = lt * lt + sig2 * r2;
    Ok(MinExpectations {
        c,
        s,
        l: lt,
        c2,
        s2,
        l2,
        var_c: c2 - c * c,
        var_s: s2 - s * s,
        var_l: sig2 * r2,
        cov_cl: params.gamma * ca * r2,
        cov_sl: params.gamma * sa * r2,
        cov_cs: 0.5 * s2a * (2.0 * r2 - 1.0 + r1 * r1),
    })
}

/// Overlap `(ψ₂, ψ₁)` of two states with common `(γ, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinOverlap {
    pub value: Complex64,
    /// The Bessel argument `s²cos²h − γ²sin²h`, `h = (α₁−α₂)/2`.
    pub radicand: f64,
    /// False when the radicand is negative, so the real-argument form of the
    /// closed expression needs analytic continuation.
    pub valid: bool,
}

/// Closed-form overlap.
///
/// The fractional power and the Bessel function are combined into the entire
/// function `v^n I_n(2w)/w^n` (`w² = radicand`), so the value carries no
/// branch ambiguity; `valid` still reports a negative radicand.
pub fn min_overlap(p2: &MinUncParams, p1: &MinUncParams) -> Result<MinOverlap> {
    p1.validate()?;
    p2.validate()?;
    p2.sector()?.check_same(&p1.sector()?)?;
    if p1.gamma != p2.gamma || p1.s != p2.s {
        return Err(Error::InvalidParameter("overlap needs equal gamma and s".into()));
    }
    let (gamma, s) = (p1.gamma, p1.s);
    let n = p1.split().0 - p2.split().0;
    let h = 0.5 * (p1.alpha - p2.alpha);
    // sin(φ−α₁) − sin(φ−α₂) = −2 sin h cos(φ − (α₁+α₂)/2)
    let a = -gamma * h.sin();
    let b = s * h.cos();
    let x = b * b - a * a;
    // e^{inθ} picks the e^{-iθ} coefficient i(A+B) for n ≥ 0 and i(A−B) otherwise
    let v = if n >= 0 { a + b } else { a - b };
    let k = n.unsigned_abs();
    let phase = Complex64::from_polar(1.0, 0.5 * (p2.alpha - p1.alpha) * (p1.l_tilde + p2.l_tilde));
    let ln_norm = ln_i0_2s(s)?;

    // v^k · I_k(2w)/w^k / I₀(2s), with i^k carried separately
    let magnitude = if x.abs() < 1e-8 {
        let mut term = 1.0;
        for j in 1..=k {
            term /= j as f64;
        }
        let mut sum = term;
        for j in 1..6 {
            term *= x / (j as f64 * (k + j) as f64);
            sum += term;
        }
        v.powi(k as i32) * sum * (-ln_norm).exp()
    } else if x > 0.0 {
        let w = x.sqrt();
        let ratio = (v / w).powi(k as i32);
        ratio * bessel_i_scaled(k as f64, 2.0 * w)? * (2.0 * w - ln_norm).exp()
    } else {
        let w = (-x).sqrt();
        let ratio = (v / w).powi(k as i32);
        ratio * bessel_j(k as i64, Complex64::new(2.0 * w, 0.0))?.re * (-ln_norm).exp()
    };
    let ik = Complex64::new(0.0, 1.0).powi(k as i32);
    Ok(MinOverlap { value: phase * ik * magnitude, radicand: x, valid: x >= 0.0 })
}

/// `| |J₀(σ)|² + 2Σ_{n≥1}|J_n(σ)|² − I₀(2s) | / I₀(2s)`.
pub fn sum_rule_residual(sigma: Complex64) -> Result<f64> {
    let w = window_half_width(sigma, 1e-16) as usize;
    let js = bessel_j_array(w, sigma)?;
    let scale = (-ln_i0_2s(-sigma.im)?).exp();
    let tail: f64 = js[1..].iter().rev().map(|j| j.norm_sqr()).sum();
    Ok(((js[0].norm_sqr() + 2.0 * tail) * scale - 1.0).abs())
}

/// `∫dα/2π Σ_{|n|≤n_cut} (e_{m₁},ψ_{α,n+δ})(ψ_{α,n+δ},e_{m₂}) − δ_{m₁m₂}`.
///
/// The α average of `e^{-i(m₁−m₂)α}` is done exactly: off-diagonal entries
/// vanish and δ drops out of the diagonal ones.
pub fn completeness_residual(m1: i64, m2: i64, s: f64, gamma: f64, n_cut: u64) -> Result<Complex64> {
    finite(s, "s")?;
    finite(gamma, "gamma")?;
    if m1 != m2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sigma = Complex64::new(gamma, -s);
    let reach = m1.unsigned_abs() + n_cut;
    let js = bessel_j_array(reach as usize, sigma)?;
    let scale = (-ln_i0_2s(s)?).exp();
    let n_cut = n_cut as i64;
    // |J_{-k}| = |J_k|; smallest terms first
    let mut terms: Vec<f64> =
        (-n_cut..=n_cut).map(|n| js[(m1 - n).unsigned_abs() as usize].norm_sqr()).collect();
    terms.sort_by(f64::total_cmp);
    let acc: f64 = terms.iter().sum();
    Ok(Complex64::new(acc * scale - 1.0, 0.0))
}

/// `∫₀^Γ J_n(γ)² dγ`, one adaptive Gauss panel per half-oscillation.
pub fn dbt_divergence(n: i64, cutoff: f64) -> Result<f64> {
    finite(cutoff, "Gamma")?;
    if cutoff < 0.0 {
        return Err(Error::InvalidParameter(format!("Gamma must be non-negative, got {cutoff}")));
    }
    let panels = (cutoff / PI).ceil().max(1.0) as usize;
    let width = cutoff / panels as f64;
    let mut acc = 0.0;
    let mut err = None;
    for p in 0..panels {
        let lo = p as f64 * width;
        let v = quad::adaptive(
            |g| match bessel_j(n, Complex64::new(g, 0.0)) {
                Ok(j) => Complex64::new(j.re * j.re, 0.0),
                Err(e) => {
                    err = Some(e);
                    Complex64::new(0.0, 0.0)
                }
            },
            lo,
            lo + width,
            1e-13,
        );
        acc += v.re;
    }
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}
