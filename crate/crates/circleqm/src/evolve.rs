//! Free rotor dynamics `H = ε ω L̃²/2` (units of ħ).
//!
//! Spectral propagation is the production path. The theta-function kernel
//! needs `t → t − iη` to converge and is kept as a cross-check; η is always
//! supplied by the caller.

use crate::circlespace::{CircleState, Params, Sector};
use crate::error::{finite, finite_c, Error};
use crate::mincs::{min_state, MinUncParams};
use crate::specfun::{theta, Kind, ThetaNome};
use crate::zakcs::WZParams;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec {
    pub params: Params,
    pub sector: Sector,
    pub t: f64,
    /// Regularization of the kernel only; ignored by [`propagate`].
    pub eta: f64,
}

impl EvolutionSpec {
    pub fn new(params: Params, sector: Sector, t: f64, eta: f64) -> Result<Self> {
        finite(t, "t")?;
        finite(eta, "eta")?;
        Ok(Self { params, sector, t, eta })
    }

    pub fn at(&self, t: f64) -> Result<Self> {
        Self::new(self.params, self.sector, t, self.eta)
    }

    /// `ωt`.
    pub fn phase_time(&self) -> f64 {
        self.params.omega * self.t
    }

    // ω(t − iη)
    fn complex_time(&self) -> Result<Complex64> {
        if self.eta.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidParameter(format!("kernel needs eta > 0, got {}", self.eta)));
        }
        Ok(self.params.omega * Complex64::new(self.t, -self.eta))
    }
}

// e^{−iε(n+δ)²ωt/2}; the angle is reduced in cycles before scaling by 2π
fn level_phase(eps: f64, level: f64, wt: f64) -> Complex64 {
    let cycles = (eps * level * level * wt / (4.0 * PI)).rem_euclid(1.0);
    Complex64::from_polar(1.0, -2.0 * PI * cycles)
}

/// `c_n → e^{−iε(n+δ)²ωt/2} c_n`. Negative t conjugates the phases.
pub fn propagate(spec: &EvolutionSpec, state: &CircleState) -> Result<CircleState> {
    spec.sector.check_same(&state.sector())?;
    let (eps, wt, d) = (spec.params.epsilon, spec.phase_time(), spec.sector.delta());
    let coeffs = state.iter().map(|(n, c)| c * level_phase(eps, n as f64 + d, wt)).collect();
    CircleState::new(state.sector(), state.n_lo(), coeffs)
}

/// `|(ψ(0), ψ(t))|` for a normalized ψ.
pub fn fidelity(initial: &CircleState, evolved: &CircleState) -> Result<f64> {
    Ok(crate::circlespace::inner(initial, evolved)?.norm() / initial.norm_sqr())
}

/// Fidelity at or above this counts as a revival.
pub const REVIVAL_FIDELITY: f64 = 1.0 - 1e-12;

/// Propagator `K_t(Δφ)` as the theta series with nome `e^{−iεω(t−iη)/2}`.
///
/// The regularized time `t − iη` is used in every factor, so the value is
/// exactly `Σ e^{−iε(n+δ)²ω(t−iη)/2} e^{i(n+δ)Δφ}`.
pub fn kernel(spec: &EvolutionSpec, dphi: f64) -> Result<Complex64> {
    finite(dphi, "dphi")?;
    let tau = spec.complex_time()?;
    let (eps, d) = (spec.params.epsilon, spec.sector.delta());
    let nome = ThetaNome::from_tau(-eps * tau / (2.0 * PI))?;
    let th = theta(Kind::Three, (dphi - eps * d * tau) / 2.0, &nome)?;
    Ok((-I * eps * d * d * tau / 2.0 + I * dphi * d).exp() * th)
}

/// The same kernel after Jacobi's transformation: a Gaussian chirp times a
/// theta series with nome `e^{2iπ²/[εω(t−iη)]}`.
pub fn kernel_transformed(spec: &EvolutionSpec, dphi: f64) -> Result<Complex64> {
    finite(dphi, "dphi")?;
    let tau = spec.complex_time()?;
    let (eps, d) = (spec.params.epsilon, spec.sector.delta());
    let x = dphi - eps * d * tau;
    let et = eps * tau;
    let nome = ThetaNome::from_tau(2.0 * PI / et)?;
    let th = theta(Kind::Three, PI * x / et, &nome)?;
    let pre = (2.0 * PI).sqrt() / (I * et).sqrt();
    let e = -I * eps * d * d * tau / 2.0 + I * x * x / (2.0 * et) + I * dphi * d;
    Ok(pre * e.exp() * th)
}

/// `∫dφ'/2π K_t(φ − φ') χ(φ')` on `nodes` trapezoid points. Kernel modes up
/// to `~√(32/(εωη))` survive, so `nodes` must exceed that to avoid aliasing.
pub fn kernel_apply(spec: &EvolutionSpec, state: &CircleState, phi: f64, nodes: usize) -> Result<Complex64> {
    spec.sector.check_same(&state.sector())?;
    finite(phi, "phi")?;
    if nodes == 0 {
        return Err(Error::InvalidParameter("nodes must be positive".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let p = 2.0 * PI * j as f64 / nodes as f64;
        acc += kernel(spec, phi - p)? * state.eval(p);
    }
    Ok(acc / nodes as f64)
}

/// `U(t) w_z` in closed form: the theta state with nome `e^{−ε(1+iωt)/2}`
/// and the angle advanced by `εδωt`.
pub fn evolve_w(spec: &EvolutionSpec, z: Complex64, phi: f64) -> Result<Complex64> {
    finite_c(z, "z")?;
    finite(phi, "phi")?;
    let (eps, d, wt) = (spec.params.epsilon, spec.sector.delta(), spec.phase_time());
    let nome = ThetaNome::from_tau(Complex64::new(-wt, 1.0) * (eps / (2.0 * PI)))?;
    let th = theta(Kind::Three, (phi - z - eps * d * wt + I * eps * d) / 2.0, &nome)?;
    Ok(level_phase(eps, d, wt) * Complex64::from_polar(1.0, phi * d) * th)
}

/// Parameters of [`evolve_w`] as a coherent-state family.
pub fn wz_params(spec: &EvolutionSpec) -> Result<WZParams> {
    WZParams::new(spec.params.epsilon, spec.sector)
}

/// Minimal-uncertainty state at time t, coefficient by coefficient from the
/// phase-dressed Bessel series
/// `e^{−iεδ²ωt/2} e^{−iεωt m²/2} e^{−imεδωt} e^{−i(m+δ)α} J_{m−n}(σ)/√I₀(2s)`.
pub fn evolve_min(spec: &EvolutionSpec, params: &MinUncParams, window_tol: f64) -> Result<CircleState> {
    let init = min_state(params, window_tol)?;
    spec.sector.check_same(&init.sector())?;
    let (eps, d, wt) = (spec.params.epsilon, spec.sector.delta(), spec.phase_time());
    let global = level_phase(eps, d, wt);
    let coeffs = init
        .iter()
        .map(|(m, c)| {
            let mf = m as f64;
            let quad = level_phase(eps, mf, wt);
            let cross = Complex64::from_polar(1.0, -2.0 * PI * (mf * eps * d * wt / (2.0 * PI)).rem_euclid(1.0));
            global * quad * cross * c
        })
        .collect();
    CircleState::new(init.sector(), init.n_lo(), coeffs)
}
