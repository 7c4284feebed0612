//! The annihilation operator `B = e^{ε(L̃+1/2)} U` whose eigenstates are the
//! holomorphic coherent states, the pair `K = B + B†`, `J = i(B† − B)`, and
//! the q-deformed oscillator built from them.

use crate::circlespace::{basis_state, inner, CircleState, Sector};
use crate::error::{finite, finite_c, Error};
use crate::zakcs::{w_state_normalized, WZParams};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderContext {
    epsilon: f64,
    sector: Sector,
}

impl LadderContext {
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

    /// `q = e^{−2ε}`.
    pub fn q_def(&self) -> f64 {
        (-2.0 * self.epsilon).exp()
    }

    /// `ln(2 sinh ε)/(2ε)`, the offset between `N` and `L̃`.
    pub fn shift_constant(&self) -> f64 {
        (2.0 * self.epsilon.sinh()).ln() / (2.0 * self.epsilon)
    }

    pub fn wz(&self) -> Result<WZParams> {
        WZParams::new(self.epsilon, self.sector)
    }

    fn level(&self, n: i64) -> f64 {
        n as f64 + self.sector.delta()
    }
}

// c_n e_n ↦ c_n·weight(n) e_{n+step}
fn shift(ctx: &LadderContext, state: &CircleState, step: i64, weight: impl Fn(f64) -> f64) -> Result<CircleState> {
    ctx.sector.check_same(&state.sector())?;
    let coeffs = state.iter().map(|(n, c)| c * weight(ctx.level(n))).collect();
    CircleState::new(state.sector(), state.n_lo() + step, coeffs)
}

/// `B e_{n,δ} = e^{ε(n+δ−1/2)} e_{n−1,δ}`.
pub fn apply_b(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    let e = ctx.epsilon;
    shift(ctx, state, -1, |l| (e * (l - 0.5)).exp())
}

/// `B† e_{n,δ} = e^{ε(n+δ+1/2)} e_{n+1,δ}`.
pub fn apply_bdag(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    let e = ctx.epsilon;
    shift(ctx, state, 1, |l| (e * (l + 0.5)).exp())
}

fn a_scale(ctx: &LadderContext) -> Complex64 {
    Complex64::new((1.0 + ctx.q_def()).powf(-0.5), 0.0)
}

/// `A = (1 + e^{−2ε})^{−1/2} B`.
pub fn apply_a(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    Ok(apply_b(ctx, state)?.scaled(a_scale(ctx)))
}

pub fn apply_adag(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    Ok(apply_bdag(ctx, state)?.scaled(a_scale(ctx)))
}

/// `N = L̃ + shift_constant`; not integer-valued and not bounded below.
pub fn apply_n(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    let k = ctx.shift_constant();
    shift(ctx, state, 0, |l| l + k)
}

/// `q^{−N} = e^{2εN}`.
pub fn apply_q_pow_neg_n(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    let (e, k) = (ctx.epsilon, ctx.shift_constant());
    shift(ctx, state, 0, |l| (2.0 * e * (l + k)).exp())
}

/// `e^{2εL̃}`, the right-hand side of `[B, B†]` up to `2 sinh ε`.
pub fn apply_exp_l(ctx: &LadderContext, state: &CircleState) -> Result<CircleState> {
    let e = ctx.epsilon;
    shift(ctx, state, 0, |l| (2.0 * e * l).exp())
}

/// The complexifier `C_L = e^{−εL̃²/2}` or its inverse.
pub fn apply_complexifier(ctx: &LadderContext, state: &CircleState, inverse: bool) -> Result<CircleState> {
    let s = if inverse { 0.5 } else { -0.5 } * ctx.epsilon;
    shift(ctx, state, 0, |l| (s * l * l).exp())
}

/// `‖B w_z − e^{−iz} w_z‖/‖w_z‖` over the window minus its two edge rows,
/// where truncation necessarily breaks the relation.
pub fn eigen_residual(ctx: &LadderContext, z: Complex64, window_tol: f64) -> Result<f64> {
    finite_c(z, "z")?;
    let w = w_state_normalized(&ctx.wz()?, z, window_tol)?;
    let bw = apply_b(ctx, &w)?;
    let eta = (-I * z).exp();
    // bw lives on [lo−1, hi−1]; rows lo−1 and hi are the edges
    let (num, den) = (w.n_lo()..w.n_hi()).fold((0.0, 0.0), |(a, b), n| {
        let d = bw.coeff(n) - eta * w.coeff(n);
        (a + d.norm_sqr(), b + w.coeff(n).norm_sqr())
    });
    Ok((num / den).sqrt())
}

/// Largest relative deviation of `c_{n+1}/c_n` from `η e^{−ε(n+δ+1/2)}` over
/// the state window.
pub fn recursion_residual(ctx: &LadderContext, z: Complex64, window_tol: f64) -> Result<f64> {
    finite_c(z, "z")?;
    let w = w_state_normalized(&ctx.wz()?, z, window_tol)?;
    let eta = (-I * z).exp();
    Ok((w.n_lo()..w.n_hi())
        .map(|n| {
            let want = eta * (-ctx.epsilon * (ctx.level(n) + 0.5)).exp();
            (w.coeff(n + 1) / w.coeff(n) - want).norm() / want.norm()
        })
        .fold(0.0, f64::max))
}

/// Moments of `K` and `J` in a normalized coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KJReport {
    pub k: f64,
    pub j: f64,
    pub var_k: f64,
    pub var_j: f64,
    /// `½⟨KJ + JK⟩ − ⟨K⟩⟨J⟩`
    pub cov_kj: f64,
    pub commutator: Complex64,
    /// `|ΔK²ΔJ² − ¼|⟨[K,J]⟩|²|` relative to the right-hand side.
    pub saturation_residual: f64,
    pub saturated: bool,
    /// `(θ, l̃)` read back from `⟨K⟩` and `⟨J⟩`.
    pub recovered: (f64, f64),
}

const SATURATION_TOL: f64 = 1e-8;

fn finish(k: f64, j: f64, var_k: f64, var_j: f64, cov_kj: f64, commutator: Complex64) -> KJReport {
    let rhs = 0.25 * commutator.norm_sqr();
    let saturation_residual = (var_k * var_j - rhs).abs() / rhs;
    KJReport {
        k,
        j,
        var_k,
        var_j,
        cov_kj,
        commutator,
        saturation_residual,
        saturated: saturation_residual < SATURATION_TOL,
        recovered: recover(k, j),
    }
}

/// `tan θ = −⟨J⟩/⟨K⟩`, `l̃ = ½ ln[(⟨K⟩² + ⟨J⟩²)/4]`, θ in `[0, 2π)`.
pub fn recover(k: f64, j: f64) -> (f64, f64) {
    let t = (-j).atan2(k).rem_euclid(std::f64::consts::TAU);
    (t, 0.5 * ((k * k + j * j) / 4.0).ln())
}

/// Closed forms; they depend on `z` and ε only.
pub fn kj_report(ctx: &LadderContext, z: Complex64) -> Result<KJReport> {
    finite_c(z, "z")?;
    let eta = (-I * z).exp();
    let g = (2.0 * ctx.epsilon).exp_m1() * eta.norm_sqr();
    Ok(finish(2.0 * eta.re, 2.0 * eta.im, g, g, 0.0, Complex64::new(0.0, 2.0 * g)))
}

/// The same record from matrix elements on the truncated normalized state.
pub fn kj_matrix_elements(ctx: &LadderContext, z: Complex64, window_tol: f64) -> Result<KJReport> {
    finite_c(z, "z")?;
    let w = w_state_normalized(&ctx.wz()?, z, window_tol)?;
    let b = apply_b(ctx, &w)?;
    let bd = apply_bdag(ctx, &w)?;
    let kw = b.combine(Complex64::new(1.0, 0.0), &bd, Complex64::new(1.0, 0.0))?;
    let jw = bd.combine(I, &b, -I)?;
    let k = inner(&w, &kw)?.re;
    let j = inner(&w, &jw)?.re;
    // K, J self-adjoint: ⟨KJ⟩ = (Kw, Jw)
    let kj = inner(&kw, &jw)?;
    Ok(finish(
        k,
        j,
        kw.norm_sqr() - k * k,
        jw.norm_sqr() - j * j,
        kj.re - k * j,
        Complex64::new(0.0, 2.0 * kj.im),
    ))
}

/// `‖(AA† − qA†A − q^{−N}) e_{n,δ}‖`, divided by `‖q^{−N} e_{n,δ}‖` when that
/// exceeds one so large levels are judged relatively.
pub fn qdeform_residual(ctx: &LadderContext, n: i64) -> Result<f64> {
    let e = basis_state(n, ctx.sector);
    let aad = apply_a(ctx, &apply_adag(ctx, &e)?)?;
    let ada = apply_adag(ctx, &apply_a(ctx, &e)?)?;
    let rhs = apply_q_pow_neg_n(ctx, &e)?;
    let one = Complex64::new(1.0, 0.0);
    let lhs = aad.combine(one, &ada, Complex64::new(-ctx.q_def(), 0.0))?;
    let diff = lhs.combine(one, &rhs, -one)?;
    Ok(diff.norm_sqr().sqrt() / rhs.norm_sqr().sqrt().max(1.0))
}
