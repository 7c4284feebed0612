//! Jacobi elliptic functions attached to a real theta nome.
//!
//! The modulus and complete integral come from theta null values; `sn`, `cn`,
//! `dn` themselves are computed by the arithmetic–geometric mean, so that the
//! theta-ratio identities can be checked against an independent evaluation.

use super::theta::{theta, Kind, ThetaNome};
use crate::error::{finite_c, Error};
use crate::quad;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Elliptic data at `u = (2K/π)·ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticRecord {
    pub u: Complex64,
    pub sn: Complex64,
    pub cn: Complex64,
    pub dn: Complex64,
    /// Jacobi zeta function `Z(u) = E(u,k) - u·E/K`.
    pub zeta_fn: Complex64,
    /// Incomplete integral `E(u,k) = ∫₀ᵘ dn² du`.
    pub e_incomplete: Complex64,
    pub k: f64,
    pub kprime: f64,
    /// Complete integral of the first kind.
    pub big_k: f64,
    /// Complete integral of the second kind.
    pub big_e: f64,
}

/// Elliptic functions for the modulus defined by a real nome `q ∈ [0,1)`:
/// `k = ϑ₂(0)²/ϑ₃(0)²`, `k' = ϑ₄(0)²/ϑ₃(0)²`, `2K/π = ϑ₃(0)²`.
pub fn elliptic_suite(zeta: Complex64, nome: &ThetaNome) -> Result<EllipticRecord> {
    finite_c(zeta, "zeta")?;
    let q = nome.q();
    if q.im != 0.0 || q.re < 0.0 {
        return Err(Error::InvalidParameter(
            "elliptic suite needs a real nome in [0,1)".into(),
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let t2 = theta(Kind::Two, zero, nome)?.re;
    let t3 = theta(Kind::Three, zero, nome)?.re;
    let t4 = theta(Kind::Four, zero, nome)?.re;
    let k = (t2 / t3).powi(2);
    let kprime = (t4 / t3).powi(2);
    let big_k = 0.5 * PI * t3 * t3;
    let big_e = complete_e(k, kprime);
    let u = zeta * (2.0 * big_k / PI);
    let (sn, cn, dn) = sncndn_complex(u, k, kprime);
    let e_incomplete = incomplete_e(u, k, kprime);
    let zeta_fn = e_incomplete - u * (big_e / big_k);
    Ok(EllipticRecord { u, sn, cn, dn, zeta_fn, e_incomplete, k, kprime, big_k, big_e })
}

/// Complete integrals from the AGM: `K = π/(2·agm(1,k'))` and
/// `E = K·(1 - Σ 2^{n-1} c_n²)`.
pub fn complete_integrals(k: f64, kprime: f64) -> (f64, f64) {
    let mut a = 1.0;
    let mut b = kprime;
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut pow = 0.5;
    for _ in 0..64 {
        if c.abs() < 1e-17 {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let kk = PI / (2.0 * a);
    (kk, kk * (1.0 - sum))
}

fn complete_e(k: f64, kprime: f64) -> f64 {
    complete_integrals(k, kprime).1
}

/// Real-argument `sn, cn, dn` by descending Landen / AGM.
pub fn sncndn(u: f64, k: f64, kprime: f64) -> (f64, f64, f64) {
    if k == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    if kprime == 0.0 {
        let s = u.tanh();
        let c = 1.0 / u.cosh();
        return (s, c, c);
    }
    let mut a = vec![1.0];
    let mut c = vec![k];
    let mut b = kprime;
    let mut n = 0;
    while c[n].abs() > 1e-16 && n < 60 {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        a.push(an);
        c.push(cn);
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let s = phi.sin();
    let cc = phi.cos();
    let d = (1.0 - k * k * s * s).max(0.0).sqrt();
    (s, cc, d)
}

/// Complex-argument `sn, cn, dn` via the imaginary transformation
/// `sn(iy,k) = i·sc(y,k')` and the addition theorems.
pub fn sncndn_complex(u: Complex64, k: f64, kprime: f64) -> (Complex64, Complex64, Complex64) {
    let (s, c, d) = sncndn(u.re, k, kprime);
    if u.im == 0.0 {
        let r = |x: f64| Complex64::new(x, 0.0);
        return (r(s), r(c), r(d));
    }
    let (s1, c1, d1) = sncndn(u.im, kprime, k);
    let den = c1 * c1 + k * k * s * s * s1 * s1;
    let sn = Complex64::new(s * d1, c * d * s1 * c1) / den;
    let cn = Complex64::new(c * c1, -s * d * s1 * d1) / den;
    let dn = Complex64::new(d * c1 * d1, -k * k * s * c * s1) / den;
    (sn, cn, dn)
}

/// `E(u,k) = ∫₀ᵘ dn²(t) dt` along the straight segment, adaptive to 1e-12.
pub fn incomplete_e(u: Complex64, k: f64, kprime: f64) -> Complex64 {
    if u.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    quad::adaptive(
        |t| {
            let p = u * t;
            let (_, _, d) = sncndn_complex(p, k, kprime);
            d * d * u
        },
        0.0,
        1.0,
        1e-12,
    )
}
