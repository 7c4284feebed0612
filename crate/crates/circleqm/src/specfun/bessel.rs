//! Bessel functions: `J_n(z)` for integer order and complex argument,
//! `I_ν(x)` for real order and real argument.

use crate::error::{finite, finite_c, Error};
use crate::Result;
use num_complex::Complex64;
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 2.0;

/// `J_n(z)`.
pub fn bessel_j(n: i64, z: Complex64) -> Result<Complex64> {
    finite_c(z, "bessel_j argument")?;
    let m = n.unsigned_abs() as usize;
    let sign = if n < 0 && m % 2 == 1 { -1.0 } else { 1.0 };
    Ok(bessel_j_nonneg(m, z) * sign)
}

/// `J_0(z), …, J_nmax(z)` from a single backward sweep.
pub fn bessel_j_array(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    finite_c(z, "bessel_j argument")?;
    if z.norm() <= SERIES_RADIUS {
        return Ok((0..=nmax).map(|k| j_series(k, z)).collect());
    }
    Ok(miller(nmax, z))
}

fn bessel_j_nonneg(n: usize, z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    if r <= SERIES_RADIUS {
        return j_series(n, z);
    }
    let nf = n as f64;
    if r >= (nf * nf).max(30.0) && z.im.abs() < 0.5 * r {
        return if z.re >= 0.0 {
            hankel(n, z)
        } else {
            hankel(n, -z) * if n % 2 == 1 { -1.0 } else { 1.0 }
        };
    }
    miller(n, z)[n]
}

/// Ascending series `Σ (-z²/4)^k / (k!(k+n)!) · (z/2)^n`.
fn j_series(n: usize, z: Complex64) -> Complex64 {
    let half = z * 0.5;
    let mut lead = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        lead *= half / k as f64;
    }
    let w = -half * half;
    let mut term = lead;
    let mut sum = lead;
    for k in 1..200 {
        term *= w / (k as f64 * (k + n) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Miller backward recurrence from `n_start = nmax + ⌈|z|⌉ + 15 + ⌈8|z|^{1/3}⌉`
/// (the last term covers the turning-point width at large `|z|`), normalised by the generating function at `θ = ±π/2`:
/// `J₀ + 2Σ (±i)^k J_k = e^{±iz}`, choosing the sign with `|e^{±iz}| ≥ 1`.
fn miller(nmax: usize, z: Complex64) -> Vec<Complex64> {
    let r = z.norm();
    let start = nmax + r.ceil() as usize + 15 + (8.0 * r.cbrt()).ceil() as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); nmax + 1];
    let mut next = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1e-30, 0.0);
    let w = if z.im <= 0.0 { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, -1.0) };
    let mut wk = w.powu(start as u32);
    let mut norm = Complex64::new(0.0, 0.0);
    let two_over_z = 2.0 / z;
    let mut k = start;
    loop {
        if k <= nmax {
            out[k] = cur;
        }
        if k == 0 {
            norm += cur;
            break;
        }
        norm += 2.0 * wk * cur;
        let prev = two_over_z * k as f64 * cur - next;
        next = cur;
        cur = prev;
        wk /= w;
        k -= 1;
        let mag = cur.norm();
        if mag > 1e250 {
            let s = 1e-250;
            cur *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    let target = (w * z).exp();
    // norm can reach ~1e250, so avoid the |norm|² inside complex division
    let r = norm.norm();
    let scale = target * (norm.conj() / r) / r;
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Hankel asymptotic expansion, `Re z > 0`, `|z| ≫ n²`.
fn hankel(n: usize, z: Complex64) -> Complex64 {
    let mu = 4.0 * (n as f64).powi(2);
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let eight_z = 8.0 * z;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * eight_z);
        let mag = term.norm();
        if mag > last {
            break;
        }
        last = mag;
        // even k feed P with alternating sign, odd k feed Q
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-17 {
            break;
        }
    }
    let chi = z - (n as f64 * 0.5 + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Result of [`bessel_i`]. For non-integer order and negative argument the
/// value is the principal-branch continuation `e^{iπν} I_ν(|x|)`, which is
/// complex; `principal_branch` flags that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselI {
    pub value: Complex64,
    pub principal_branch: bool,
}

impl BesselI {
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// `I_ν(x)`.
pub fn bessel_i(nu: f64, x: f64) -> Result<BesselI> {
    finite(nu, "bessel_i order")?;
    finite(x, "bessel_i argument")?;
    let ax = x.abs();
    let scaled = bessel_i_scaled_abs(nu, ax)?;
    let mag = if ax == 0.0 { scaled } else { scaled * ax.exp() };
    if x >= 0.0 {
        return Ok(BesselI { value: Complex64::new(mag, 0.0), principal_branch: false });
    }
    if nu.fract() == 0.0 {
        let sign = if (nu as i64).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        Ok(BesselI { value: Complex64::new(sign * mag, 0.0), principal_branch: false })
    } else {
        Ok(BesselI {
            value: Complex64::from_polar(mag, PI * nu),
            principal_branch: true,
        })
    }
}

/// `e^{-|x|} I_ν(|x|)`, useful when `|x|` is large.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    finite(nu, "bessel_i order")?;
    finite(x, "bessel_i argument")?;
    bessel_i_scaled_abs(nu, x.abs())
}

/// `I₀(x)` for real `x`.
pub fn i0(x: f64) -> f64 {
    bessel_i_scaled_abs(0.0, x.abs()).unwrap_or(f64::NAN) * x.abs().exp()
}

/// `I₁(x)` for real `x` (odd).
pub fn i1(x: f64) -> f64 {
    x.signum() * bessel_i_scaled_abs(1.0, x.abs()).unwrap_or(f64::NAN) * x.abs().exp()
}

fn bessel_i_scaled_abs(nu: f64, x: f64) -> Result<f64> {
    let nu = if nu < 0.0 && nu.fract() == 0.0 { -nu } else { nu };
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::InvalidParameter(format!("I_{nu}(0) is singular")))
        };
    }
    if x > 20.0 && nu * nu < 0.5 * x {
        return Ok(i_asymptotic_scaled(nu, x));
    }
    Ok(i_series_scaled(nu, x))
}

/// `e^{-x} Σ (x/2)^{2k+ν} / (k! Γ(k+ν+1))`, x > 0.
fn i_series_scaled(nu: f64, x: f64) -> f64 {
    let a = nu + 1.0;
    let (log_lead, sign) = if a > 0.0 {
        (nu * (0.5 * x).ln() - ln_gamma(a) - x, 1.0)
    } else {
        let g = gamma(a);
        (nu * (0.5 * x).ln() - g.abs().ln() - x, g.signum())
    };
    let w = 0.25 * x * x;
    let mut term = sign * log_lead.exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= w / (k * (k + nu));
        sum += term;
        if k > x && term.abs() < 1e-17 * sum.abs() {
            break;
        }
        if k > 10_000.0 {
            break;
        }
    }
    sum
}

fn i_asymptotic_scaled(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        term *= -(mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}
