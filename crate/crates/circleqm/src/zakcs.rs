//! Coherent states from the Weil–Zak periodization of line Gaussians.
//!
//! With `z = θ + i l̃` the holomorphic states are
//! `w_z(φ) = e^{iφδ} ϑ₃[(φ − z + iεδ)/2, e^{−ε/2}]`, whose coefficients on
//! `e_{m,δ}` are `f_m(z) = e^{−ε(m²/2 + mδ)} e^{−imz}`. Closed forms below are
//! written through `G = ϑ₃` and `H = ϑ₄` at `πx/ε` with the small nome
//! `e^{−π²/ε}`, where `x = l̃ − εδ`.

use crate::circlespace::{CircleState, Sector};
use crate::error::{finite, finite_c, Error};
use crate::quad;
use crate::specfun::{theta, theta_derivs, theta_direct, Kind, ThetaDerivs, ThetaNome};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `z = θ + i l̃` with θ kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    theta: f64,
    l_tilde: f64,
}

impl PhasePoint {
    pub fn new(theta: f64, l_tilde: f64) -> Result<Self> {
        finite(theta, "theta")?;
        finite(l_tilde, "l")?;
        let t = theta.rem_euclid(2.0 * PI);
        Ok(Self { theta: if t >= 2.0 * PI { 0.0 } else { t }, l_tilde })
    }

    pub fn from_z(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn l_tilde(&self) -> f64 {
        self.l_tilde
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.theta, self.l_tilde)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WZParams {
    epsilon: f64,
    sector: Sector,
}

impl WZParams {
    pub fn new(epsilon: f64, sector: Sector) -> Result<Self> {
        finite(epsilon, "epsilon")?;
        if epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { epsilon, sector })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    fn delta(&self) -> f64 {
        self.sector.delta()
    }

    /// `x = l̃ − εδ`, the offset that enters every theta argument.
    pub fn shift(&self, z: Complex64) -> f64 {
        z.im - self.epsilon * self.delta()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        self.sector.check_same(&other.sector)?;
        if self.epsilon != other.epsilon {
            return Err(Error::InvalidParameter(format!(
                "epsilon mismatch: {} vs {}",
                self.epsilon, other.epsilon
            )));
        }
        Ok(())
    }
}

fn real_nome(q: f64) -> Result<ThetaNome> {
    ThetaNome::real(q)
}

// e^{-π²/ε}, the nome of the transformed forms
fn small_nome(eps: f64) -> Result<ThetaNome> {
    real_nome((-PI * PI / eps).exp())
}

/// Line coherent state `u_z(ξ)` at width ε.
pub fn gaussian_cs(epsilon: f64, z: Complex64, xi: f64) -> Result<Complex64> {
    finite(epsilon, "epsilon")?;
    finite_c(z, "z")?;
    finite(xi, "xi")?;
    let e = -(z.norm_sqr() + z * z) / (4.0 * epsilon) - xi * xi / (2.0 * epsilon) + z * xi / epsilon;
    Ok((epsilon * PI).powf(-0.25) * e.exp())
}

/// The periodized line state at one angle, by its defining sum and by the
/// theta closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZakValue {
    pub series: Complex64,
    pub closed: Complex64,
}

pub fn zak_periodize(epsilon: f64, sector: Sector, z: Complex64, phi: f64) -> Result<ZakValue> {
    let p = WZParams::new(epsilon, sector)?;
    finite_c(z, "z")?;
    finite(phi, "phi")?;
    let d = sector.delta();
    // terms are Gaussians in φ+2πn of width √ε centred at Re z
    let centre = ((z.re - phi) / (2.0 * PI)).round() as i64;
    let reach = (1.0 + 10.0 * epsilon.sqrt() / (2.0 * PI)).ceil() as i64 + 2;
    let base = -(z.norm_sqr() + z * z) / (4.0 * epsilon);
    let mut series = Complex64::new(0.0, 0.0);
    for n in centre - reach..=centre + reach {
        let xi = phi + 2.0 * PI * n as f64;
        let e = base - xi * xi / (2.0 * epsilon) + z * xi / epsilon - I * (2.0 * PI * n as f64 * d);
        series += e.exp();
    }
    series *= (epsilon * PI).powf(-0.25);

    let pre = (1.0 / (2.0 * PI).sqrt()) * (epsilon / PI).powf(0.25);
    let e = -(z.norm_sqr() - z * z) / (4.0 * epsilon) + I * (phi - z) * d - epsilon * d * d / 2.0;
    let nome = real_nome((-epsilon / 2.0).exp())?;
    let th = theta(Kind::Three, (phi - z + I * p.epsilon * d) / 2.0, &nome)?;
    Ok(ZakValue { series, closed: pre * e.exp() * th })
}

/// `f_{m,δ}(z) = (e_{m,δ}, w_z)`.
pub fn f_coeff(p: &WZParams, m: i64, z: Complex64) -> Complex64 {
    let m = m as f64;
    (-p.epsilon * (m * m / 2.0 + m * p.delta()) - I * m * z).exp()
}

/// `w_z(φ) = e^{iφδ} ϑ₃[(φ − z + iεδ)/2, e^{−ε/2}]`.
pub fn w_eval(p: &WZParams, z: Complex64, phi: f64) -> Result<Complex64> {
    finite_c(z, "z")?;
    finite(phi, "phi")?;
    let nome = real_nome((-p.epsilon / 2.0).exp())?;
    let th = theta(Kind::Three, (phi - z + I * p.epsilon * p.delta()) / 2.0, &nome)?;
    Ok(Complex64::from_polar(1.0, phi * p.delta()) * th)
}

/// The same function through the Jacobi-transformed Gaussian form.
pub fn w_eval_transformed(p: &WZParams, z: Complex64, phi: f64) -> Result<Complex64> {
    finite_c(z, "z")?;
    finite(phi, "phi")?;
    let eps = p.epsilon;
    let y = phi - z + I * eps * p.delta();
    let nome = real_nome((-2.0 * PI * PI / eps).exp())?;
    let th = theta(Kind::Three, I * PI * y / eps, &nome)?;
    let e = I * phi * p.delta() - y * y / (2.0 * eps);
    Ok((2.0 * PI / eps).sqrt() * e.exp() * th)
}

fn window(p: &WZParams, z: Complex64, tol: f64) -> Result<(i64, i64)> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!("window_tol must lie in (0,1), got {tol}")));
    }
    let centre = (p.shift(z) / p.epsilon).round() as i64;
    let half = (2.0 * (1.0 / tol).ln() / p.epsilon).sqrt().ceil() as i64 + 5;
    Ok((centre - half, centre + half))
}

/// Unnormalized state with coefficients `f_m(z)`.
pub fn w_state(p: &WZParams, z: Complex64, window_tol: f64) -> Result<CircleState> {
    finite_c(z, "z")?;
    let (lo, hi) = window(p, z, window_tol)?;
    CircleState::new(p.sector, lo, (lo..=hi).map(|m| f_coeff(p, m, z)).collect())
}

/// Normalized state; coefficients are formed in log space so large `l̃`
/// does not overflow.
pub fn w_state_normalized(p: &WZParams, z: Complex64, window_tol: f64) -> Result<CircleState> {
    finite_c(z, "z")?;
    let (lo, hi) = window(p, z, window_tol)?;
    let ln_norm = ln_norm_sqr(p, z)?;
    let coeffs = (lo..=hi)
        .map(|m| {
            let mf = m as f64;
            let e = -p.epsilon * (mf * mf / 2.0 + mf * p.delta()) - I * mf * z - 0.5 * ln_norm;
            e.exp()
        })
        .collect();
    CircleState::new(p.sector, lo, coeffs)
}

/// `(w_z, w_z)` in its two closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormForms {
    /// `ϑ₃[i x, e^{−ε}]`
    pub direct: f64,
    /// `√(π/ε) e^{x²/ε} ϑ₃[πx/ε, e^{−π²/ε}]`
    pub transformed: f64,
}

pub fn w_norm_sqr(p: &WZParams, z: Complex64) -> Result<NormForms> {
    finite_c(z, "z")?;
    let x = p.shift(z);
    let eps = p.epsilon;
    let direct = theta(Kind::Three, Complex64::new(0.0, x), &real_nome((-eps).exp())?)?.re;
    let g = theta(Kind::Three, Complex64::new(PI * x / eps, 0.0), &small_nome(eps)?)?.re;
    Ok(NormForms { direct, transformed: (PI / eps).sqrt() * (x * x / eps).exp() * g })
}

fn ln_norm_sqr(p: &WZParams, z: Complex64) -> Result<f64> {
    let x = p.shift(z);
    let eps = p.epsilon;
    let g = theta(Kind::Three, Complex64::new(PI * x / eps, 0.0), &small_nome(eps)?)?.re;
    Ok(0.5 * (PI / eps).ln() + x * x / eps + g.ln())
}

/// Normalization constants of the two state conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    /// For the holomorphic states: `(w_z, w_z)^{−1/2}`.
    pub n_z: f64,
    /// For the periodized line states: `√(2π/ϑ₃[πx/ε, e^{−π²/ε}])`.
    pub c_z: f64,
}

pub fn normalization(p: &WZParams, z: Complex64) -> Result<Normalization> {
    let x = p.shift(z);
    let g = theta(Kind::Three, Complex64::new(PI * x / p.epsilon, 0.0), &small_nome(p.epsilon)?)?.re;
    Ok(Normalization { n_z: (-0.5 * ln_norm_sqr(p, z)?).exp(), c_z: (2.0 * PI / g).sqrt() })
}

/// Overlap `(w_{z₁}, w_{z₂}) = ϑ₃[(z₁* − z₂ + 2iεδ)/2, e^{−ε}]`.
pub fn w_overlap(p1: &WZParams, z1: Complex64, p2: &WZParams, z2: Complex64) -> Result<Complex64> {
    p1.check_same(p2)?;
    kernel(p1, z1, z2)
}

/// Reproducing kernel `K(z₁, z₂)`, theta form.
pub fn kernel(p: &WZParams, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    finite_c(z1, "z1")?;
    finite_c(z2, "z2")?;
    let zeta = (z1.conj() - z2 + 2.0 * I * p.epsilon * p.delta()) / 2.0;
    theta(Kind::Three, zeta, &real_nome((-p.epsilon).exp())?)
}

/// `Σ f_n*(z₁) f_n(z₂)` over a window wide enough for both points.
pub fn kernel_series(p: &WZParams, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let (a, b) = window(p, z1, 1e-18)?;
    let (c, d) = window(p, z2, 1e-18)?;
    Ok((a.min(c)..=b.max(d)).map(|n| f_coeff(p, n, z1).conj() * f_coeff(p, n, z2)).sum())
}

/// Image of a circle state in the holomorphic space: `f̃(z) = (f, w_z)`, with
/// coefficients `b_n*` on the `f_{n,δ}` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BargmannImage {
    sector: Sector,
    n_lo: i64,
    coeffs: Vec<Complex64>,
}

impl BargmannImage {
    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn n_lo(&self) -> i64 {
        self.n_lo
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `f̃(z)`.
    pub fn eval(&self, p: &WZParams, z: Complex64) -> Result<Complex64> {
        self.sector.check_same(&p.sector)?;
        Ok((self.n_lo..)
            .zip(&self.coeffs)
            .map(|(n, c)| c * f_coeff(p, n, z))
            .sum())
    }
}

pub fn bargmann_map(state: &CircleState) -> BargmannImage {
    BargmannImage {
        sector: state.sector(),
        n_lo: state.n_lo(),
        coeffs: state.coeffs().iter().map(|c| c.conj()).collect(),
    }
}

pub fn bargmann_inverse(image: &BargmannImage) -> Result<CircleState> {
    CircleState::new(image.sector, image.n_lo, image.coeffs.iter().map(|c| c.conj()).collect())
}

/// Theta ratios at `πx/ε` with nome `e^{−π²/ε}`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Ratios {
    h_over_g: f64,
    g1: f64,
    // G''/G − (G'/G)²
    g_curv: f64,
    g2: f64,
    h1: f64,
}

const DIRECT_ABOVE: f64 = 3.0;

fn ratios(eps: f64, x: f64) -> Result<Ratios> {
    if eps <= DIRECT_ABOVE {
        let nome = small_nome(eps)?;
        let arg = Complex64::new(PI * x / eps, 0.0);
        let g = theta_direct(Kind::Three, arg, &nome)?;
        let h = theta_direct(Kind::Four, arg, &nome)?;
        let g1 = (g.d1 / g.value).re;
        let g2 = (g.d2 / g.value).re;
        Ok(Ratios {
            h_over_g: (h.value / g.value).re,
            g1,
            g_curv: g2 - g1 * g1,
            g2,
            h1: (h.d1 / h.value).re,
        })
    } else {
        // The nome e^{−ε} is small here; convert ln ϑ(ix, e^{−ε}) derivatives
        // using ϑ₃(ix) = √(π/ε) e^{x²/ε} G and ϑ₂(ix) = √(π/ε) e^{x²/ε} H.
        let nome = real_nome((-eps).exp())?;
        let arg = Complex64::new(0.0, x);
        let t3 = theta_direct(Kind::Three, arg, &nome)?;
        let t2 = theta_direct(Kind::Two, arg, &nome)?;
        let dlog = |t: &ThetaDerivs| (I * t.d1 / t.value).re;
        let curv = |t: &ThetaDerivs| -(t.d2 / t.value - (t.d1 / t.value).powi(2)).re;
        let k = eps / PI;
        let g1 = k * (dlog(&t3) - 2.0 * x / eps);
        let g_curv = k * k * (curv(&t3) - 2.0 / eps);
        Ok(Ratios {
            h_over_g: (t2.value / t3.value).re,
            g1,
            g_curv,
            g2: g_curv + g1 * g1,
            h1: k * (dlog(&t2) - 2.0 * x / eps),
        })
    }
}

/// Closed-form moments of the normalized state. `var_l_scaled` is `ε²ΔL̃²`
/// and `cov_cl_scaled` is `ε·S(C, L̃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WExpectations {
    pub u: Complex64,
    pub u_dag: Complex64,
    pub u2: Complex64,
    pub c: f64,
    pub s: f64,
    pub l: f64,
    pub c2: f64,
    pub s2: f64,
    pub l2: f64,
    pub var_c: f64,
    pub var_s: f64,
    pub var_l: f64,
    pub var_l_scaled: f64,
    pub cov_cl: f64,
    pub cov_cl_scaled: f64,
    pub cov_sl: f64,
}

impl WExpectations {
    /// `ΔC²ΔL̃² − S(C,L̃)² − ¼⟨S⟩²`, the Schrödinger–Robertson gap for (C, L̃)
    /// using `[C, L̃] = −iS`.
    pub fn gap_cl(&self) -> f64 {
        self.var_c * self.var_l - self.cov_cl * self.cov_cl - 0.25 * self.s * self.s
    }
}

pub fn w_expectations(p: &WZParams, z: Complex64) -> Result<WExpectations> {
    finite_c(z, "z")?;
    let eps = p.epsilon;
    let (theta_, lt) = (z.re, z.im);
    let r = ratios(eps, p.shift(z))?;
    let (st, ct) = theta_.sin_cos();
    let damp = (-eps / 4.0).exp() * r.h_over_g;
    let u = Complex64::from_polar(damp, -theta_);
    let c = ct * damp;
    let s = st * damp;
    let e = (-eps).exp();
    let c2 = 0.5 + e * (ct * ct - 0.5);
    let s2 = 0.5 + e * (st * st - 0.5);
    let l = (lt + 0.5 * PI * r.g1) / eps;
    let l2 = (eps / 2.0 + lt * lt + PI * lt * r.g1 + 0.25 * PI * PI * r.g2) / (eps * eps);
    let var_l_scaled = eps / 2.0 + 0.25 * PI * PI * r.g_curv;
    let corr = 0.5 * PI * damp * (r.h1 - r.g1);
    Ok(WExpectations {
        u,
        u_dag: u.conj(),
        u2: Complex64::from_polar(e, -2.0 * theta_),
        c,
        s,
        l,
        c2,
        s2,
        l2,
        var_c: c2 - c * c,
        var_s: s2 - s * s,
        var_l: var_l_scaled / (eps * eps),
        var_l_scaled,
        cov_cl: ct * corr / eps,
        cov_cl_scaled: ct * corr,
        cov_sl: st * corr / eps,
    })
}

/// First-order expansions in the small nome `q = e^{−π²/ε}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WLeadingOrder {
    /// `ϑ₄/ϑ₃ ≈ 1 − 4q cos(2πx/ε)`
    pub ratio: f64,
    /// `ϑ₃'/ϑ₃ ≈ −4q sin(2πx/ε)`
    pub log_derivative: f64,
    /// `ε⟨L̃⟩ ≈ l̃ + (π/2)·log_derivative`
    pub l_scaled: f64,
    /// `ε²ΔL̃² ≈ ε/2 − 2π²q cos(2πx/ε)`
    pub var_l_scaled: f64,
    /// `ε S(C,L̃) ≈ 4πq e^{−ε/4} cos θ sin(2πx/ε)`
    pub cov_cl_scaled: f64,
}

pub fn w_leading_order(p: &WZParams, z: Complex64) -> Result<WLeadingOrder> {
    finite_c(z, "z")?;
    let eps = p.epsilon;
    let q = (-PI * PI / eps).exp();
    let a = 2.0 * PI * p.shift(z) / eps;
    let log_derivative = -4.0 * q * a.sin();
    Ok(WLeadingOrder {
        ratio: 1.0 - 4.0 * q * a.cos(),
        log_derivative,
        l_scaled: z.im + 0.5 * PI * log_derivative,
        var_l_scaled: eps / 2.0 - 2.0 * PI * PI * q * a.cos(),
        cov_cl_scaled: 4.0 * PI * q * (-eps / 4.0).exp() * z.re.cos() * a.sin(),
    })
}

/// `|(e_{m,δ}, ŵ_z)|² = √(ε/π) e^{−[l̃−ε(m+δ)]²/ε} / ϑ₃[πx/ε, e^{−π²/ε}]`.
pub fn transition_prob(m: i64, p: &WZParams, z: Complex64) -> Result<f64> {
    finite_c(z, "z")?;
    let eps = p.epsilon;
    let g = theta(Kind::Three, Complex64::new(PI * p.shift(z) / eps, 0.0), &small_nome(eps)?)?.re;
    let d = z.im - eps * (m as f64 + p.delta());
    Ok((eps / PI).sqrt() * (-d * d / eps).exp() / g)
}

/// Angular density of the normalized periodized state.
pub fn phi_density(p: &WZParams, z: Complex64, phi: f64) -> Result<f64> {
    finite_c(z, "z")?;
    finite(phi, "phi")?;
    let eps = p.epsilon;
    let y = phi - z + I * eps * p.delta();
    let num = theta(Kind::Three, I * PI * y / eps, &real_nome((-2.0 * PI * PI / eps).exp())?)?;
    let g = theta(Kind::Three, Complex64::new(PI * p.shift(z) / eps, 0.0), &small_nome(eps)?)?.re;
    let dphi = phi - z.re;
    Ok(2.0 * PI / (eps * PI).sqrt() * (-dphi * dphi / eps).exp() * num.norm_sqr() / g)
}

/// Completeness residuals of the two measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletenessWz {
    /// Unnormalized periodized states with `dl̃/ε dθ`.
    pub gaussian: Complex64,
    /// Normalized holomorphic states with the ϑ₃-weighted measure.
    pub theta_weighted: Complex64,
}

/// Both completeness integrals minus `δ_{m₁m₂}`. The θ integral is done in
/// coefficient space; the l̃ integral runs over `ε(m₁+δ) ± l_cut·√ε`, where
/// the integrand's mass sits.
pub fn completeness_residual_wz(m1: i64, m2: i64, p: &WZParams, l_cut: f64) -> Result<CompletenessWz> {
    finite(l_cut, "l_cut")?;
    if l_cut <= 0.0 {
        return Err(Error::InvalidParameter(format!("l_cut must be positive, got {l_cut}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if m1 != m2 {
        return Ok(CompletenessWz { gaussian: zero, theta_weighted: zero });
    }
    let eps = p.epsilon;
    let d = p.delta();
    let centre = eps * (m1 as f64 + d);
    let half = l_cut * eps.sqrt();
    let (lo, hi) = (centre - half, centre + half);
    let panels = 64;

    // |(e_m, u_z)|² · 2π / ε, θ-average already taken
    let pre = (eps / PI).sqrt() / (2.0 * PI);
    let gaussian = quad::composite_gl(
        |l| {
            let a = l - centre;
            Complex64::new(2.0 * PI * pre * (-a * a / eps).exp() / eps, 0.0)
        },
        lo,
        hi,
        panels,
        16,
    );

    let small = small_nome(eps)?;
    let big = real_nome((-eps).exp())?;
    let mut err = None;
    let weighted = quad::composite_gl(
        |l| {
            let x = l - eps * d;
            let g = theta(Kind::Three, Complex64::new(PI * x / eps, 0.0), &small);
            let n2 = theta(Kind::Three, Complex64::new(0.0, x), &big);
            match (g, n2) {
                (Ok(g), Ok(n2)) => {
                    let mf = m1 as f64;
                    let f2 = (-eps * mf * mf + 2.0 * mf * x).exp();
                    Complex64::new(g.re * f2 / n2.re / eps, 0.0)
                }
                (Err(e), _) | (_, Err(e)) => {
                    err = Some(e);
                    zero
                }
            }
        },
        lo,
        hi,
        panels,
        16,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(CompletenessWz { gaussian: gaussian - one, theta_weighted: weighted - one })
}

/// Gauss–Hermite rule for the measure `e^{−(l̃−εδ)²/ε} dl̃/√(επ)`: nodes in l̃
/// and weights summing to 1.
pub fn measure_nodes(p: &WZParams, n: usize) -> Vec<(f64, f64)> {
    let (t, w) = quad::gauss_hermite(n);
    let c = p.epsilon * p.delta();
    let s = p.epsilon.sqrt();
    t.into_iter().zip(w).map(|(t, w)| (c + s * t, w / PI.sqrt())).collect()
}

// keep theta_derivs reachable for the transformed-form derivative checks
#[doc(hidden)]
pub fn g_derivs(p: &WZParams, z: Complex64) -> Result<ThetaDerivs> {
    theta_derivs(Kind::Three, Complex64::new(PI * p.shift(z) / p.epsilon, 0.0), &small_nome(p.epsilon)?)
}
