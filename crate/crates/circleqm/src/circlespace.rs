//! Quasi-periodic wavefunctions on the circle.
//!
//! A state in sector δ is stored as a finite window of coefficients over the
//! basis `e_{n,δ}(φ) = e^{i(n+δ)φ}`, so that `ψ(φ+2π) = e^{2πiδ} ψ(φ)` holds by
//! construction. Operators act in coefficient space; a trapezoid quadrature
//! path is kept alongside as an independent check.

use crate::error::{finite, finite_c, Error};
use crate::quad;
use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fractional boundary-condition label δ ∈ [0, 1).
///
/// Two sectors are equal when their δ values are bit-identical; the optional
/// covering order is metadata and does not take part in the comparison.
#[derive(Debug, Clone, Copy)]
pub struct Sector {
    delta: f64,
    // 1 - δ, kept so that conjugating twice returns the exact original bits
    complement: f64,
    covering_order: Option<u64>,
}

impl PartialEq for Sector {
    fn eq(&self, other: &Self) -> bool {
        self.delta.to_bits() == other.delta.to_bits()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Sector {
    pub fn new(delta: f64) -> Result<Self> {
        finite(delta, "delta")?;
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!("delta must lie in [0,1), got {delta}")));
        }
        let complement = if delta == 0.0 { 1.0 } else { (1.0 - delta).min(1.0 - f64::EPSILON / 2.0) };
        Ok(Self { delta, complement, covering_order: None })
    }

    /// δ = p/q, reduced to lowest terms; the reduced q is the covering order.
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p >= q {
            return Err(Error::InvalidParameter(format!("need 0 <= p < q, got {p}/{q}")));
        }
        let g = gcd(p, q).max(1);
        let (p, q) = (p / g, q / g);
        Ok(Self { delta: p as f64 / q as f64, complement: (q - p) as f64 / q as f64, covering_order: Some(q) })
    }

    pub const fn integer() -> Self {
        Self { delta: 0.0, complement: 1.0, covering_order: Some(1) }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn covering_order(&self) -> Option<u64> {
        self.covering_order
    }

    /// The sector `1 - δ (mod 1)` reached by complex conjugation.
    pub fn conjugate(&self) -> Self {
        if self.delta == 0.0 {
            return *self;
        }
        Self { delta: self.complement, complement: self.delta, covering_order: self.covering_order }
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SectorMismatch { left: self.delta, right: other.delta })
        }
    }
}

/// Representation label `(ρ, δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepLabel {
    pub rho: f64,
    pub sector: Sector,
}

impl RepLabel {
    pub fn new(rho: f64, sector: Sector) -> Result<Self> {
        finite(rho, "rho")?;
        if rho <= 0.0 {
            return Err(Error::InvalidParameter(format!("rho must be positive, got {rho}")));
        }
        Ok(Self { rho, sector })
    }
}

/// Dimensionless model parameters: `ε = ħ/(mωr²)` and the frequency ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub epsilon: f64,
    pub omega: f64,
}

impl Params {
    pub fn new(epsilon: f64, omega: f64) -> Result<Self> {
        finite(epsilon, "epsilon")?;
        finite(omega, "omega")?;
        if epsilon <= 0.0 || omega <= 0.0 {
            return Err(Error::InvalidParameter("epsilon and omega must be positive".into()));
        }
        Ok(Self { epsilon, omega })
    }
}

/// Finite window of coefficients `c_n`, `n = n_lo ..= n_lo + len - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct CircleState {
    sector: Sector,
    n_lo: i64,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    delta: f64,
    n_lo: i64,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<StateRepr> for CircleState {
    type Error = Error;
    fn try_from(r: StateRepr) -> Result<Self> {
        let coeffs = r.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        CircleState::new(Sector::new(r.delta)?, r.n_lo, coeffs)
    }
}

impl From<CircleState> for StateRepr {
    fn from(s: CircleState) -> Self {
        StateRepr {
            delta: s.sector.delta,
            n_lo: s.n_lo,
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl CircleState {
    pub fn new(sector: Sector, n_lo: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient window".into()));
        }
        for c in &coeffs {
            finite_c(*c, "state coefficient")?;
        }
        Ok(Self { sector, n_lo, coeffs })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn n_lo(&self) -> i64 {
        self.n_lo
    }

    pub fn n_hi(&self) -> i64 {
        self.n_lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_n`, zero outside the window.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n < self.n_lo || n > self.n_hi() {
            ZERO
        } else {
            self.coeffs[(n - self.n_lo) as usize]
        }
    }

    /// Iterator over `(n, c_n)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.n_lo + k as i64, *c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalise the zero state".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self { sector: self.sector, n_lo: self.n_lo, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// Componentwise map `c_n → f(n, c_n)` on the same window.
    pub fn map<F: Fn(i64, Complex64) -> Complex64>(&self, f: F) -> Self {
        Self {
            sector: self.sector,
            n_lo: self.n_lo,
            coeffs: self.iter().map(|(n, c)| f(n, c)).collect(),
        }
    }

    /// `a·self + b·other` over the union of windows.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.sector.check_same(&other.sector)?;
        let lo = self.n_lo.min(other.n_lo);
        let hi = self.n_hi().max(other.n_hi());
        let coeffs = (lo..=hi).map(|n| a * self.coeff(n) + b * other.coeff(n)).collect();
        Ok(Self { sector: self.sector, n_lo: lo, coeffs })
    }

    /// Drop leading and trailing coefficients with `|c_n| <= tol`, keeping at least one.
    pub fn trimmed(&self, tol: f64) -> Self {
        let first = self.coeffs.iter().position(|c| c.norm() > tol);
        let Some(first) = first else {
            return Self { sector: self.sector, n_lo: self.n_lo, coeffs: vec![self.coeffs[0]] };
        };
        let last = self.coeffs.iter().rposition(|c| c.norm() > tol).unwrap_or(first);
        Self {
            sector: self.sector,
            n_lo: self.n_lo + first as i64,
            coeffs: self.coeffs[first..=last].to_vec(),
        }
    }

    /// `ψ(φ) = Σ c_n e^{i(n+δ)φ}`. The angle is split as `φ = 2πk + r` with
    /// `r ∈ [0, 2π)` and the factor `e^{2πiδk}` applied separately, so the
    /// boundary condition does not depend on the rounding of `φ`.
    pub fn eval(&self, phi: f64) -> Complex64 {
        let k = (phi / (2.0 * PI)).floor();
        let r = phi - 2.0 * PI * k;
        let twist = Complex64::from_polar(1.0, 2.0 * PI * (self.sector.delta * k).rem_euclid(1.0));
        twist * self.eval_reduced(r)
    }

    pub(crate) fn eval_reduced(&self, r: f64) -> Complex64 {
        let step = Complex64::from_polar(1.0, r);
        let mut w = Complex64::from_polar(1.0, (self.n_lo as f64 + self.sector.delta) * r);
        let mut acc = ZERO;
        for c in &self.coeffs {
            acc += c * w;
            w *= step;
        }
        acc
    }
}

/// `e_{n,δ}`.
pub fn basis_state(n: i64, sector: Sector) -> CircleState {
    CircleState { sector, n_lo: n, coeffs: vec![Complex64::new(1.0, 0.0)] }
}

/// Operator tags acting on circle states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    /// `cos φ`
    C,
    /// `sin φ`
    S,
    /// dimensionless angular momentum with eigenvalues `n + δ`
    L,
    /// its square
    L2,
}

/// Apply `C`, `S`, `L̃` or `L̃²`. `C` and `S` grow the window by one on each side.
pub fn apply_operator(which: Op, state: &CircleState) -> CircleState {
    let d = state.sector.delta;
    match which {
        Op::L => state.map(|n, c| c * (n as f64 + d)),
        Op::L2 => state.map(|n, c| c * (n as f64 + d).powi(2)),
        Op::C | Op::S => {
            let lo = state.n_lo - 1;
            let hi = state.n_hi() + 1;
            let coeffs = (lo..=hi)
                .map(|n| {
                    let a = state.coeff(n - 1);
                    let b = state.coeff(n + 1);
                    if which == Op::C {
                        (a + b) * 0.5
                    } else {
                        (a - b) / (2.0 * I)
                    }
                })
                .collect();
            CircleState { sector: state.sector, n_lo: lo, coeffs }
        }
    }
}

/// `(ψ₂, ψ₁) = Σ c₂*_n c₁_n`.
pub fn inner(state2: &CircleState, state1: &CircleState) -> Result<Complex64> {
    state2.sector.check_same(&state1.sector)?;
    let lo = state2.n_lo.max(state1.n_lo);
    let hi = state2.n_hi().min(state1.n_hi());
    Ok((lo..=hi).map(|n| state2.coeff(n).conj() * state1.coeff(n)).sum())
}

/// Trapezoid node count `4·width + 16` for products of two windows.
pub fn quadrature_points(a: &CircleState, b: &CircleState) -> usize {
    let width = (a.n_hi().max(b.n_hi()) - a.n_lo.min(b.n_lo) + 1) as usize;
    4 * width + 16
}

/// `∫₀^{2π} dφ/2π ψ₂* ψ₁` by the trapezoid rule; the integrand is 2π-periodic.
pub fn inner_quadrature(state2: &CircleState, state1: &CircleState) -> Result<Complex64> {
    state2.sector.check_same(&state1.sector)?;
    let m = quadrature_points(state2, state1);
    Ok(quad::periodic_mean(|phi| state2.eval(phi).conj() * state1.eval(phi), m))
}

/// `(ψ, Aψ)/(ψ, ψ)`.
pub fn expectation(which: Op, state: &CircleState) -> Complex64 {
    let a = apply_operator(which, state);
    inner(state, &a).unwrap_or(ZERO) / state.norm_sqr()
}

/// Uncertainty relation bookkeeping for a pair of operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub mean_a: f64,
    pub mean_b: f64,
    pub var_a: f64,
    pub var_b: f64,
    /// `⟨½(AB+BA)⟩ - ⟨A⟩⟨B⟩`
    pub covariance: f64,
    pub commutator_mean: Complex64,
    pub lhs: f64,
    pub rhs: f64,
    pub saturated: bool,
    /// `σ = γ - i s` when the relation is saturated and `ΔA² > 0`.
    pub sigma: Option<Complex64>,
}

impl UncertaintyReport {
    pub fn gap(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Saturation threshold relative to `max(lhs, 1e-30)`.
pub const SATURATION_TOL: f64 = 1e-10;

/// Variances, covariance and commutator mean of `(A, B)` in the normalised `state`.
pub fn uncertainty_report(a: Op, b: Op, state: &CircleState) -> Result<UncertaintyReport> {
    let psi = state.normalized()?;
    let apsi = apply_operator(a, &psi);
    let bpsi = apply_operator(b, &psi);
    let mean_a = inner(&psi, &apsi)?.re;
    let mean_b = inner(&psi, &bpsi)?.re;
    let da = apsi.combine(Complex64::new(1.0, 0.0), &psi, Complex64::new(-mean_a, 0.0))?;
    let db = bpsi.combine(Complex64::new(1.0, 0.0), &psi, Complex64::new(-mean_b, 0.0))?;
    let var_a = da.norm_sqr();
    let var_b = db.norm_sqr();
    let cross = inner(&da, &db)?;
    let covariance = cross.re;
    // ⟨[A,B]⟩ = (Aψ,Bψ) - (Bψ,Aψ) = 2i·Im(Aψ,Bψ)
    let commutator_mean = Complex64::new(0.0, 2.0 * inner(&apsi, &bpsi)?.im);
    let lhs = var_a * var_b;
    let rhs = covariance * covariance + 0.25 * commutator_mean.norm_sqr();
    let saturated = (lhs - rhs).abs() < SATURATION_TOL * lhs.max(1e-30);
    let sigma = (saturated && var_a > 0.0).then(|| {
        let gamma = covariance / var_a;
        let s = (0.5 * I * commutator_mean).re / var_a;
        Complex64::new(gamma, -s)
    });
    Ok(UncertaintyReport {
        mean_a,
        mean_b,
        var_a,
        var_b,
        covariance,
        commutator_mean,
        lhs,
        rhs,
        saturated,
        sigma,
    })
}

/// Representation action: rotation by `alpha`, then translation by `t = a + ib`.
///
/// Rotation is diagonal, `c_n → e^{-i(n+δ)α} c_n`. Translation multiplies by
/// `e^{-iρ(a cos φ + b sin φ)}` on a grid and projects back with the window
/// grown by `⌈ρ|t|⌉ + 20` on each side; if more than `1e-12` of the norm
/// would be lost the call fails.
pub fn rep_apply(alpha: f64, a: f64, b: f64, rep: &RepLabel, state: &CircleState) -> Result<CircleState> {
    finite(alpha, "alpha")?;
    finite(a, "a")?;
    finite(b, "b")?;
    rep.sector.check_same(&state.sector)?;
    let d = state.sector.delta;
    let rotated = state.map(|n, c| c * Complex64::from_polar(1.0, -(n as f64 + d) * alpha));
    if a == 0.0 && b == 0.0 {
        return Ok(rotated);
    }
    let reach = rep.rho * a.hypot(b);
    let grow = reach.ceil() as i64 + 20;
    let lo = rotated.n_lo - grow;
    let hi = rotated.n_hi() + grow;
    let width = (hi - lo + 1) as usize;
    let m = 4 * width + 16 + 2 * reach.ceil() as usize;
    // periodic part ψ e^{-iδφ} sampled on the grid, multiplied, projected on e^{inφ}
    let samples: Vec<Complex64> = quad::periodic_grid(m)
        .map(|phi| {
            let v = rotated.eval_reduced(phi) * Complex64::from_polar(1.0, -d * phi);
            v * Complex64::from_polar(1.0, -rep.rho * (a * phi.cos() + b * phi.sin()))
        })
        .collect();
    let coeffs: Vec<Complex64> = (lo..=hi)
        .map(|n| {
            let mut acc = ZERO;
            for (j, v) in samples.iter().enumerate() {
                let phi = 2.0 * PI * j as f64 / m as f64;
                acc += v * Complex64::from_polar(1.0, -(n as f64) * phi);
            }
            acc / m as f64
        })
        .collect();
    let out = CircleState { sector: state.sector, n_lo: lo, coeffs };
    let lost = state.norm_sqr() - out.norm_sqr();
    if lost.abs() > 1e-12 * state.norm_sqr().max(1.0) {
        return Err(Error::NoConvergence("translation window too narrow"));
    }
    Ok(out)
}

/// `E_n = ½ ε (n+δ)²` in units of ħω.
pub fn energy(n: i64, params: &Params, sector: Sector) -> f64 {
    0.5 * params.epsilon * (n as f64 + sector.delta).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundState {
    pub n: i64,
    pub energy: f64,
    /// True at δ = ½, where `n = 0` and `n = -1` share the energy.
    pub degenerate: bool,
}

pub fn ground_state(params: &Params, sector: Sector) -> GroundState {
    let d = sector.delta;
    let n = if d <= 0.5 { 0 } else { -1 };
    GroundState { n, energy: energy(n, params, sector), degenerate: d == 0.5 }
}

/// Sector and interference shift for a charge `q` around flux `Φ` (ħ = 1):
/// `δ = frac(qΦ/2π)`, `Δθ = qΦ`.
pub fn delta_from_flux(charge: f64, flux: f64) -> Result<(f64, f64)> {
    finite(charge, "charge")?;
    finite(flux, "flux")?;
    let shift = charge * flux;
    let x = shift / (2.0 * PI);
    let mut delta = x - x.floor();
    if delta >= 1.0 {
        delta = 0.0;
    }
    Ok((delta, shift))
}

fn relabel(n: i64, sector: Sector) -> i64 {
    if sector.delta == 0.0 {
        -n
    } else {
        -n - 1
    }
}

/// Time reversal: complex conjugation, landing in sector `1 - δ` with
/// `n → -n-1` (or `n → -n` when δ = 0) so that `-(n+δ) = n' + δ'`.
pub fn time_reversal(state: &CircleState) -> CircleState {
    reflect(state, true)
}

/// Space reflection `ψ(φ) → ψ(-φ)`: eigenvalues `n+δ → -(n+δ)`, same relabeling as [`time_reversal`].
pub fn parity(state: &CircleState) -> CircleState {
    reflect(state, false)
}

fn reflect(state: &CircleState, conjugate: bool) -> CircleState {
    let target = state.sector.conjugate();
    let n_lo = relabel(state.n_hi(), state.sector);
    let coeffs = state
        .coeffs
        .iter()
        .rev()
        .map(|c| if conjugate { c.conj() } else { *c })
        .collect();
    CircleState { sector: target, n_lo, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sector_validation() {
        assert!(Sector::new(1.0).is_err());
        assert!(Sector::new(-0.1).is_err());
        let s = Sector::rational(2, 6).unwrap();
        assert_eq!(s.covering_order(), Some(3));
        assert_eq!(s, Sector::new(1.0 / 3.0).unwrap());
        assert!(Sector::rational(3, 3).is_err());
    }

    #[test]
    fn basis_boundary_condition() {
        let s = Sector::new(0.25).unwrap();
        let e = basis_state(2, s);
        let ratio = e.eval(2.0 * PI) / e.eval(0.0);
        assert!((ratio - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn c_and_s_windows() {
        let s = Sector::new(0.3).unwrap();
        let e = basis_state(0, s);
        let ce = apply_operator(Op::C, &e);
        assert_eq!((ce.n_lo(), ce.n_hi()), (-1, 1));
        assert_eq!(ce.coeff(1), c(0.5, 0.0));
        assert_eq!(ce.coeff(0), c(0.0, 0.0));
    }

    #[test]
    fn state_json_round_trip() {
        let s = CircleState::new(Sector::new(0.5).unwrap(), -1, vec![c(1.0, 0.5), c(0.0, -2.0)]).unwrap();
        let txt = serde_json::to_string(&s).unwrap();
        assert_eq!(txt, r#"{"delta":0.5,"n_lo":-1,"coeffs":[[1.0,0.5],[0.0,-2.0]]}"#);
        let back: CircleState = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<CircleState>(r#"{"delta":1.5,"n_lo":0,"coeffs":[[1,0]]}"#).is_err());
        assert!(serde_json::from_str::<CircleState>(r#"{"delta":0.5,"n_lo":0,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn trimming_keeps_support() {
        let s = CircleState::new(Sector::integer(), -2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1e-20, 0.0)]).unwrap();
        let t = s.trimmed(1e-15);
        assert_eq!((t.n_lo(), t.n_hi()), (-1, -1));
    }
}
