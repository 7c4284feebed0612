//! Jacobi theta functions in the `a = 1` convention,
//! `ϑ₃(ζ|τ) = Σ q^{n²} e^{2inζ}` with `q = e^{iπτ}`.
//!
//! Small nomes are summed directly. For `|q| > e^{-π}` the half-period ratio
//! is first moved to the standard fundamental domain by `τ → τ + 1` and
//! `τ → -1/τ`, tracking how the three functions are permuted.

use crate::error::{finite_c, Error};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Complex nome `q = exp(iπτ)` together with its half-period ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaNome {
    q: Complex64,
    tau: Complex64,
}

impl ThetaNome {
    /// Build from `τ` with `Im τ > 0`. `Im τ = +∞` encodes `q = 0`.
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        if tau.re.is_nan() || tau.im.is_nan() || !tau.re.is_finite() {
            return Err(Error::NonFinite("tau"));
        }
        if tau.im <= 0.0 {
            return Err(Error::NomeOutsideDisk((-PI * tau.im).exp()));
        }
        let q = if tau.im.is_infinite() {
            Complex64::new(0.0, 0.0)
        } else {
            (I * PI * tau).exp()
        };
        Ok(Self { q, tau })
    }

    /// Build from `q`. The principal logarithm fixes `Re τ ∈ (-1, 1]`;
    /// this matters only for ϑ₂, which depends on `q^{1/4}`.
    pub fn from_q(q: Complex64) -> Result<Self> {
        finite_c(q, "nome")?;
        let a = q.norm();
        if a >= 1.0 {
            return Err(Error::NomeOutsideDisk(a));
        }
        if a == 0.0 {
            return Ok(Self {
                q,
                tau: Complex64::new(0.0, f64::INFINITY),
            });
        }
        let tau = q.ln() / (I * PI);
        Ok(Self { q, tau })
    }

    /// Real nome in `[0, 1)`.
    pub fn real(q: f64) -> Result<Self> {
        Self::from_q(Complex64::new(q, 0.0))
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }
}

/// Which of ϑ₂, ϑ₃, ϑ₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Two,
    Three,
    Four,
}

impl Kind {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            2 => Ok(Kind::Two),
            3 => Ok(Kind::Three),
            4 => Ok(Kind::Four),
            _ => Err(Error::InvalidParameter(format!("theta kind {k} not in {{2,3,4}}"))),
        }
    }
}

/// Value and first two ζ-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaDerivs {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

/// ϑ_kind(ζ | τ).
pub fn theta(kind: Kind, zeta: Complex64, nome: &ThetaNome) -> Result<Complex64> {
    Ok(theta_derivs(kind, zeta, nome)?.value)
}

/// ϑ and its first and second derivatives with respect to ζ.
pub fn theta_derivs(kind: Kind, zeta: Complex64, nome: &ThetaNome) -> Result<ThetaDerivs> {
    finite_c(zeta, "zeta")?;
    unscale(reduced(kind, zeta, nome.tau, 0)?)
}

/// Direct q-series regardless of the size of `|q|`.
pub fn theta_direct(kind: Kind, zeta: Complex64, nome: &ThetaNome) -> Result<ThetaDerivs> {
    finite_c(zeta, "zeta")?;
    unscale(direct(kind, zeta, nome.tau)?)
}

/// One Jacobi inversion `τ → -1/τ` followed by the direct series.
pub fn theta_transformed(kind: Kind, zeta: Complex64, nome: &ThetaNome) -> Result<ThetaDerivs> {
    finite_c(zeta, "zeta")?;
    if nome.tau.im.is_infinite() {
        return unscale(direct(kind, zeta, nome.tau)?);
    }
    unscale(invert(kind, zeta, nome.tau, direct)?)
}

/// Value carried as `derivs · e^{ln_scale}` so the modular prefactor and a
/// large inner series can cancel without overflowing.
type Scaled = (ThetaDerivs, f64);

fn unscale((d, s): Scaled) -> Result<ThetaDerivs> {
    let f = s.exp();
    let out = ThetaDerivs { value: d.value * f, d1: d.d1 * f, d2: d.d2 * f };
    if [out.value, out.d1, out.d2].iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NoConvergence("theta value out of floating-point range"))
    }
}

// π split into two doubles for exact-ish reduction of large arguments
const PI_HI: f64 = PI;
const PI_LO: f64 = 1.2246467991473532e-16;

fn reduced(kind: Kind, zeta: Complex64, tau: Complex64, depth: u32) -> Result<Scaled> {
    // ζ → ζ − kπ leaves ϑ₃, ϑ₄ unchanged and flips ϑ₂ for odd k. Without it
    // an inverted argument ζ/τ can be large enough that rounding in −1/τ,
    // amplified by ζ², costs digits.
    let k = (zeta.re / PI).round();
    if k == 0.0 || !k.is_finite() {
        return reduced_tau(kind, zeta, tau, depth);
    }
    let re = (-k).mul_add(PI_HI, zeta.re) - k * PI_LO;
    let (r, scale) = reduced_tau(kind, Complex64::new(re, zeta.im), tau, depth)?;
    let flip = kind == Kind::Two && (k % 2.0).abs() == 1.0;
    let sg = if flip { -1.0 } else { 1.0 };
    Ok((ThetaDerivs { value: r.value * sg, d1: r.d1 * sg, d2: r.d2 * sg }, scale))
}

fn reduced_tau(kind: Kind, zeta: Complex64, tau: Complex64, depth: u32) -> Result<Scaled> {
    if tau.im >= 1.0 || depth > 60 {
        return direct(kind, zeta, tau);
    }
    let m = tau.re.round();
    let tau0 = Complex64::new(tau.re - m, tau.im);
    let odd = (m as i64).rem_euclid(2) == 1;
    let (inner, phase) = match kind {
        Kind::Three if odd => (Kind::Four, Complex64::new(1.0, 0.0)),
        Kind::Four if odd => (Kind::Three, Complex64::new(1.0, 0.0)),
        Kind::Two => (Kind::Two, Complex64::from_polar(1.0, PI * m.rem_euclid(8.0) / 4.0)),
        k => (k, Complex64::new(1.0, 0.0)),
    };
    let (r, scale) = if tau0.im >= 1.0 || tau0.norm() >= 1.0 {
        direct(inner, zeta, tau0)?
    } else {
        invert(inner, zeta, tau0, |k, z, t| reduced(k, z, t, depth + 1))?
    };
    Ok((
        ThetaDerivs {
            value: r.value * phase,
            d1: r.d1 * phase,
            d2: r.d2 * phase,
        },
        scale,
    ))
}

/// `ϑ(ζ|τ) = (-iτ)^{-1/2} e^{ζ²/(iπτ)} ϑ'(ζ/τ | -1/τ)` with
/// ϑ₃ → ϑ₃, ϑ₂ → ϑ₄, ϑ₄ → ϑ₂, differentiated by the chain rule.
fn invert<F>(kind: Kind, zeta: Complex64, tau: Complex64, inner: F) -> Result<Scaled>
where
    F: Fn(Kind, Complex64, Complex64) -> Result<Scaled>,
{
    let partner = match kind {
        Kind::Three => Kind::Three,
        Kind::Two => Kind::Four,
        Kind::Four => Kind::Two,
    };
    let tau_new = -1.0 / tau;
    let (g, inner_scale) = inner(partner, zeta / tau, tau_new)?;
    let ipt = I * PI * tau;
    let log_pref = zeta * zeta / ipt - 0.5 * (-I * tau).ln();
    let e = Complex64::from_polar(1.0, log_pref.im);
    let l1 = 2.0 * zeta / ipt;
    let l2 = 2.0 / ipt;
    let value = e * g.value;
    let d1 = e * (l1 * g.value + g.d1 / tau);
    let d2 = e * ((l2 + l1 * l1) * g.value + 2.0 * l1 * g.d1 / tau + g.d2 / (tau * tau));
    Ok((ThetaDerivs { value, d1, d2 }, inner_scale + log_pref.re))
}

/// `exp(iπ τ N)` split as (log-magnitude, phase), with the phase reduced
/// modulo 2π in extended precision so large `N` keeps full accuracy.
fn qpow(tau: Complex64, n_sq: f64) -> (f64, f64) {
    let logmag = -PI * tau.im * n_sq;
    let hi = tau.re * n_sq;
    let lo = tau.re.mul_add(n_sq, -hi);
    let r = hi % 2.0 + lo;
    (logmag, PI * r)
}

fn direct(kind: Kind, zeta: Complex64, tau: Complex64) -> Result<Scaled> {
    let zero = Complex64::new(0.0, 0.0);
    if tau.im.is_infinite() {
        let v = match kind {
            Kind::Two => zero,
            _ => Complex64::new(1.0, 0.0),
        };
        return Ok((ThetaDerivs { value: v, d1: zero, d2: zero }, 0.0));
    }
    let (mut v, mut d1, mut d2) = (zero, zero, zero);
    let y = zeta.im.abs();
    let decay = PI * tau.im;
    // index of the largest term magnitude exp(-decay·n² + 2n·y)
    let peak = y / decay;
    // upper bound on every term's log-magnitude, divided out of the sum
    let shift = y * y / decay;
    let mut max_mag: f64 = 0.0;
    let mut extra = 0u32;
    let limit: u64 = 50_000_000;
    match kind {
        Kind::Three | Kind::Four => {
            v += Complex64::new((-shift).exp(), 0.0);
            max_mag = (-shift).exp();
            let mut n: u64 = 1;
            loop {
                let nf = n as f64;
                let (lm, ph) = qpow(tau, nf * nf);
                let lm = lm - shift;
                let sign = if kind == Kind::Four && n % 2 == 1 { -1.0 } else { 1.0 };
                let a = 2.0 * nf * zeta;
                let ep = Complex64::new(lm - a.im, ph + a.re).exp() * sign;
                let em = Complex64::new(lm + a.im, ph - a.re).exp() * sign;
                let k = 2.0 * nf;
                v += ep + em;
                d1 += (ep - em) * Complex64::new(0.0, k);
                d2 -= (ep + em) * (k * k);
                let bound = (lm + 2.0 * nf * y).exp();
                max_mag = max_mag.max(bound);
                if nf > peak && bound < 1e-17 * max_mag {
                    extra += 1;
                    if extra > 3 {
                        break;
                    }
                }
                n += 1;
                if n > limit {
                    return Err(Error::NoConvergence("theta series"));
                }
            }
        }
        Kind::Two => {
            let mut n: u64 = 0;
            loop {
                let h = n as f64 + 0.5;
                let (lm, ph) = qpow(tau * 0.25, (2.0 * n as f64 + 1.0).powi(2));
                let lm = lm - shift;
                let a = 2.0 * h * zeta;
                let ep = Complex64::new(lm - a.im, ph + a.re).exp();
                let em = Complex64::new(lm + a.im, ph - a.re).exp();
                let k = 2.0 * h;
                v += ep + em;
                d1 += (ep - em) * Complex64::new(0.0, k);
                d2 -= (ep + em) * (k * k);
                let bound = (lm + 2.0 * h * y).exp();
                max_mag = max_mag.max(bound);
                if h > peak && bound < 1e-17 * max_mag {
                    extra += 1;
                    if extra > 3 {
                        break;
                    }
                }
                n += 1;
                if n > limit {
                    return Err(Error::NoConvergence("theta series"));
                }
            }
        }
    }
    Ok((ThetaDerivs { value: v, d1, d2 }, shift))
}
