//! Verification suites: each check reduces one invariant to a single number
//! compared against a threshold.

use crate::output::{Report, Table};
use circleqm::circlespace::{basis_state, expectation, inner, uncertainty_report, CircleState, Op, Params, Sector};
use circleqm::e2action::{
    act, analytic_fields, compose, generator_bracket, induced_fields, poisson_bracket, solve_transporter,
    symplectic_residual, Covering, Generator, GroupElement, PhaseSpacePoint,
};
use circleqm::evolve::{evolve_w, fidelity, kernel, kernel_apply, kernel_transformed, propagate, EvolutionSpec};
use circleqm::ladder::{eigen_residual, kj_matrix_elements, kj_report, qdeform_residual, recursion_residual, LadderContext};
use circleqm::mincs::{
    completeness_residual, dbt_divergence, min_expectations, min_overlap, min_state, min_wavefunction,
    sum_rule_residual, MinUncParams,
};
use circleqm::specfun::{g_ratio, identity_residuals, modular_residual, Kind, ThetaNome};
use circleqm::zakcs::{
    completeness_residual_wz, kernel as wz_kernel, kernel_series, transition_prob, w_eval, w_eval_transformed,
    w_expectations, w_norm_sqr, w_state, w_state_normalized, WZParams,
};
use circleqm::{Complex64, Result};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Specfun,
    Mincs,
    Zakcs,
    Ladder,
    Evolve,
    E2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    /// residual ≤ tolerance
    AtMost,
    /// value > threshold
    Above,
}

#[derive(Clone, Copy)]
struct Check {
    id: &'static str,
    anchor: &'static str,
    relation: Relation,
    tol: f64,
    run: fn() -> Result<f64>,
}

const fn at_most(id: &'static str, anchor: &'static str, tol: f64, run: fn() -> Result<f64>) -> Check {
    Check { id, anchor, relation: Relation::AtMost, tol, run }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sector(d: f64) -> Result<Sector> {
    Sector::new(d)
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |m, x| Ok(m.max(x?)))
}

// specfun

const ZETAS: [(f64, f64); 6] = [(0.1, 0.0), (0.4, 0.0), (1.0, 0.0), (2.3, 0.0), (0.3, 0.15), (-0.8, 0.1)];
const NOMES: [f64; 4] = [0.05, 0.2, 0.367_879_441_171_442_33, 0.5];

fn g_table() -> Result<f64> {
    let table = [
        (0.0, 0.0, 0.5, 0.5),
        (0.1, 0.0499, 0.4994, 0.4981),
        (0.5, 0.2425, 0.4850, 0.4562),
        (1.0, 0.4464, 0.4464, 0.3543),
        (2.0, 0.6977, 0.3489, 0.1644),
        (5.0, 0.8934, 0.1787, 2.32e-2),
        (10.0, 0.9486, 9.47e-2, 5.29e-3),
        (50.0, 0.9900, 1.95e-2, 1.99e-4),
        (100.0, 0.9950, 9.95e-3, 4.60e-5),
    ];
    max_of(table.iter().map(|&(x, r1, r2, g)| {
        let v = g_ratio(x)?;
        Ok((v.r1 - r1).abs().max((v.r2 - r2).abs()).max((v.g - g).abs()))
    }))
}

fn modular(kind: Kind) -> Result<f64> {
    let taus = [c(0.0, 0.5), c(0.0, 1.0), c(0.3, 0.8), c(-0.45, 2.0), c(0.1, 4.0)];
    max_of(taus.iter().flat_map(|&tau| {
        ZETAS.iter().map(move |&(zr, zi)| modular_residual(kind, c(zr, zi), &ThetaNome::from_tau(tau)?))
    }))
}

fn web(pick: fn(&circleqm::specfun::IdentityResiduals) -> f64) -> Result<f64> {
    max_of(NOMES.iter().flat_map(|&q| {
        ZETAS.iter().map(move |&(zr, zi)| Ok(pick(&identity_residuals(c(zr, zi), &ThetaNome::real(q)?)?)))
    }))
}

// mincs

fn min_grid(alpha: f64) -> Vec<MinUncParams> {
    let mut out = Vec::new();
    for s in [0.3, 1.0, 3.0] {
        for gamma in [0.0, 1.0] {
            for d in [0.0, 0.3] {
                out.push(MinUncParams::new(alpha, 1.0 + d, gamma, s).expect("grid values are valid"));
            }
        }
    }
    out
}

fn saturation_cl() -> Result<f64> {
    max_of(min_grid(0.0).iter().map(|p| {
        let e = min_expectations(p)?;
        Ok((e.var_c * e.var_l - e.cov_cl * e.cov_cl - 0.25 * e.s * e.s).abs())
    }))
}

fn saturation_sl() -> Result<f64> {
    max_of(min_grid(FRAC_PI_2).iter().map(|p| {
        let e = min_expectations(p)?;
        Ok((e.var_s * e.var_l - e.cov_sl * e.cov_sl - 0.25 * e.c * e.c).abs())
    }))
}

fn min_closed_vs_matrix() -> Result<f64> {
    let ps = [min_grid(0.0), min_grid(0.7), min_grid(FRAC_PI_2)].concat();
    max_of(ps.iter().map(|p| {
        let e = min_expectations(p)?;
        let st = min_state(p, 1e-16)?;
        let cl = uncertainty_report(Op::C, Op::L, &st)?;
        let sl = uncertainty_report(Op::S, Op::L, &st)?;
        Ok([
            e.c - cl.mean_a,
            e.s - sl.mean_a,
            e.l - cl.mean_b,
            e.var_c - cl.var_a,
            e.var_s - sl.var_a,
            e.var_l - cl.var_b,
            e.cov_cl - cl.covariance,
            e.cov_sl - sl.covariance,
        ]
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs())))
    }))
}

fn min_wavefunction_vs_series() -> Result<f64> {
    let p = MinUncParams::new(0.4, 2.3, 0.5, 1.5)?;
    let st = min_state(&p, 1e-16)?;
    max_of((0..64).map(|k| {
        let phi = TAU * k as f64 / 64.0;
        Ok((st.eval(phi) - min_wavefunction(&p, phi)?).norm())
    }))
}

fn non_minimal_gap() -> Result<f64> {
    min_grid(0.7).iter().try_fold(f64::INFINITY, |m, p| {
        let e = min_expectations(p)?;
        let gc = e.var_c * e.var_l - e.cov_cl * e.cov_cl - 0.25 * e.s * e.s;
        let gs = e.var_s * e.var_l - e.cov_sl * e.cov_sl - 0.25 * e.c * e.c;
        Ok(m.min(gc).min(gs))
    })
}

fn min_overlap_vs_inner() -> Result<f64> {
    let pairs = [((0.0, 1.25), (0.9, 1.25)), ((0.4, 2.25), (2.0, 0.25)), ((1.0, -0.75), (-2.5, 1.25))];
    max_of(pairs.iter().map(|&((a1, l1), (a2, l2))| {
        let p1 = MinUncParams::new(a1, l1, 0.5, 1.2)?;
        let p2 = MinUncParams::new(a2, l2, 0.5, 1.2)?;
        let closed = min_overlap(&p2, &p1)?.value;
        let direct = inner(&min_state(&p2, 1e-16)?, &min_state(&p1, 1e-16)?)?;
        Ok((closed - direct).norm())
    }))
}

fn min_completeness() -> Result<f64> {
    let cases = [(1i64, 1.0f64, 0.0f64), (0, 0.3, 1.0), (3, 2.0, 1.0), (-2, 3.0, 0.5)];
    max_of(cases.iter().map(|&(m, s, g)| {
        let cut = m.unsigned_abs() + (g * g + s * s).sqrt().ceil() as u64 + 20;
        Ok(completeness_residual(m, m, s, g, cut)?.norm())
    }))
}

fn sum_rule() -> Result<f64> {
    max_of([0.0, 0.5, 1.0, 3.0, 7.0, 10.0].iter().flat_map(|&r| {
        (0..8).map(move |k| sum_rule_residual(Complex64::from_polar(r, TAU * k as f64 / 8.0)))
    }))
}

fn divergence_slope() -> Result<f64> {
    let slope = 1.0 / PI;
    let d = [dbt_divergence(0, 1e2)?, dbt_divergence(0, 1e3)?, dbt_divergence(0, 1e4)?];
    let ln10 = 10f64.ln();
    Ok([(d[2] - d[0]) / (2.0 * ln10), (d[1] - d[0]) / ln10, (d[2] - d[1]) / ln10]
        .iter()
        .fold(0.0, |m, v| m.max((v - slope).abs() / slope)))
}

// zakcs

fn wz_points() -> Vec<(f64, f64, Complex64)> {
    let mut out = Vec::new();
    for eps in [0.3, 1.0, 2.5] {
        for d in [0.0, 0.4] {
            for z in [c(0.0, 0.0), c(1.0, 0.5), c(2.5, -0.8)] {
                out.push((eps, d, z));
            }
        }
    }
    out
}

fn wz_closed_vs_matrix() -> Result<f64> {
    max_of(wz_points().iter().map(|&(eps, d, z)| {
        let p = WZParams::new(eps, sector(d)?)?;
        let e = w_expectations(&p, z)?;
        let st = w_state_normalized(&p, z, 1e-16)?;
        let cl = uncertainty_report(Op::C, Op::L, &st)?;
        let sl = uncertainty_report(Op::S, Op::L, &st)?;
        Ok([
            e.c - cl.mean_a,
            e.s - sl.mean_a,
            e.l - cl.mean_b,
            e.var_c - cl.var_a,
            e.var_s - sl.var_a,
            e.var_l - cl.var_b,
            e.cov_cl - cl.covariance,
            e.cov_sl - sl.covariance,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs())))
    }))
}

fn wz_norm_forms() -> Result<f64> {
    max_of(wz_points().iter().map(|&(eps, d, z)| {
        let n = w_norm_sqr(&WZParams::new(eps, sector(d)?)?, z)?;
        Ok((n.direct - n.transformed).abs() / n.direct)
    }))
}

fn wz_series_vs_closed() -> Result<f64> {
    max_of(wz_points().iter().map(|&(eps, d, z)| {
        let p = WZParams::new(eps, sector(d)?)?;
        let st = w_state(&p, z, 1e-16)?;
        let scale = st.norm_sqr().sqrt();
        max_of((0..32).map(|k| {
            let phi = TAU * k as f64 / 32.0;
            let a = w_eval(&p, z, phi)?;
            let b = w_eval_transformed(&p, z, phi)?;
            Ok((a - st.eval(phi)).norm().max((a - b).norm()) / scale)
        }))
    }))
}

fn wz_kernel_series() -> Result<f64> {
    let p = WZParams::new(0.8, sector(0.3)?)?;
    let zs = [c(0.0, 0.0), c(1.0, 0.5), c(-2.0, 1.2), c(3.0, -0.4)];
    max_of(zs.iter().flat_map(|&z1| {
        zs.iter().map(move |&z2| {
            let a = wz_kernel(&p, z1, z2)?;
            Ok((a - kernel_series(&p, z1, z2)?).norm() / a.norm().max(1.0))
        })
    }))
}

fn wz_transition_sum() -> Result<f64> {
    let p = WZParams::new(1.0, sector(0.3)?)?;
    let z = c(1.0, 0.7);
    let st = w_state_normalized(&p, z, 1e-16)?;
    let sum = (st.n_lo()..=st.n_hi()).try_fold(0.0, |acc, m| Ok::<_, circleqm::Error>(acc + transition_prob(m, &p, z)?))?;
    Ok((sum - 1.0).abs())
}

fn wz_completeness(theta_weighted: bool) -> Result<f64> {
    let mut cases = Vec::new();
    for eps in [0.5, 1.0] {
        for d in [0.0, 0.3] {
            for m in [0, 1, -2] {
                cases.push((eps, d, m));
            }
        }
    }
    max_of(cases.iter().map(|&(eps, d, m)| {
        let r = completeness_residual_wz(m, m, &WZParams::new(eps, sector(d)?)?, 8.0)?;
        Ok(if theta_weighted { r.theta_weighted } else { r.gaussian }.norm())
    }))
}

// At ε = 1, δ = 0, cos θ = 0 the two sides are (1−e⁻¹)/4 and e^{−1/2}/4 up to
// small-nome corrections.
fn wz_gap_sides(lhs: bool) -> Result<f64> {
    let e = w_expectations(&WZParams::new(1.0, sector(0.0)?)?, c(FRAC_PI_2, 0.0))?;
    Ok(if lhs {
        (e.var_c * e.var_l - (1.0 - (-1.0f64).exp()) / 4.0).abs()
    } else {
        (e.cov_cl * e.cov_cl + 0.25 * e.s * e.s - (-0.5f64).exp() / 4.0).abs()
    })
}

// ladder

fn kj_points() -> Vec<(f64, Complex64)> {
    [0.5, 1.0].iter().flat_map(|&e| [c(0.0, 0.0), c(1.0, 0.5), c(0.0, 2.0)].map(|z| (e, z))).collect()
}

fn shift_constant() -> Result<f64> {
    Ok((LadderContext::new(1.0, sector(0.0)?)?.shift_constant() - 0.427).abs())
}

fn kj(closed: bool) -> Result<f64> {
    max_of(kj_points().iter().map(|&(eps, z)| {
        let x = LadderContext::new(eps, sector(0.0)?)?;
        Ok(if closed { kj_report(&x, z)? } else { kj_matrix_elements(&x, z, 1e-16)? }.saturation_residual)
    }))
}

fn eigen() -> Result<f64> {
    max_of([0.0, 0.4].iter().flat_map(|&d| {
        kj_points().into_iter().map(move |(eps, z)| eigen_residual(&LadderContext::new(eps, sector(d)?)?, z, 1e-16))
    }))
}

fn recursion() -> Result<f64> {
    max_of([0.0, 0.4].iter().flat_map(|&d| {
        kj_points().into_iter().map(move |(eps, z)| recursion_residual(&LadderContext::new(eps, sector(d)?)?, z, 1e-16))
    }))
}

fn qdeform() -> Result<f64> {
    let mut out = 0.0f64;
    for eps in [0.1, 0.5, 1.0, 2.5] {
        for d in [0.0, 0.3] {
            let x = LadderContext::new(eps, sector(d)?)?;
            for n in -5..=5 {
                out = out.max(qdeform_residual(&x, n)?);
            }
        }
    }
    Ok(out)
}

// evolve

fn espec(eps: f64, d: f64, t: f64, eta: f64) -> Result<EvolutionSpec> {
    EvolutionSpec::new(Params::new(eps, 1.0)?, sector(d)?, t, eta)
}

fn sample_state(d: f64) -> Result<CircleState> {
    CircleState::new(sector(d)?, -3, (0..7).map(|k| c(1.0 / (1.0 + k as f64), 0.3 * k as f64 - 0.8)).collect())?
        .normalized()
}

fn revival() -> Result<f64> {
    let st = sample_state(0.0)?;
    Ok(1.0 - fidelity(&st, &propagate(&espec(1.0, 0.0, 4.0 * PI, 0.0)?, &st)?)?)
}

fn kernel_forms() -> Result<f64> {
    let mut out = 0.0f64;
    for eps in [0.5, 1.0, 2.0] {
        for d in [0.0, 0.3] {
            for t in [-1.3, 0.7, 3.0] {
                for eta in [1e-6, 1e-2] {
                    let s = espec(eps, d, t, eta)?;
                    for dphi in [-2.0, 0.0, 0.4, 3.0] {
                        let a = kernel(&s, dphi)?;
                        out = out.max((a - kernel_transformed(&s, dphi)?).norm() / a.norm().max(1.0));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn kernel_quadrature() -> Result<f64> {
    let st = CircleState::new(sector(0.0)?, -1, vec![c(0.3, 0.1), c(0.8, 0.0), c(-0.2, 0.45)])?.normalized()?;
    let s = espec(1.0, 0.0, 0.7, 1e-6)?;
    let out = propagate(&s, &st)?;
    max_of([0.0, 1.0, 4.0].iter().map(|&phi| Ok((kernel_apply(&s, &st, phi, 8192)? - out.eval(phi)).norm())))
}

fn w_evolution() -> Result<f64> {
    let cases = [(1.0, 0.4, 1.0, c(0.5, 0.3)), (0.5, 0.0, 2.3, c(-1.0, 0.8)), (2.0, 0.7, -0.6, c(2.0, -0.4))];
    max_of(cases.iter().map(|&(eps, d, wt, z)| {
        let s = espec(eps, d, wt, 0.0)?;
        let w = w_state(&WZParams::new(eps, sector(d)?)?, z, 1e-16)?;
        let out = propagate(&s, &w)?;
        let scale = w.norm_sqr().sqrt();
        max_of((0..40).map(|k| {
            let phi = TAU * k as f64 / 40.0;
            Ok((evolve_w(&s, z, phi)? - out.eval(phi)).norm() / scale)
        }))
    }))
}

fn energy_conservation() -> Result<f64> {
    let st = sample_state(0.3)?;
    let e0 = expectation(Op::L2, &st).re;
    max_of([0.3, 2.0, -7.5, 40.0].iter().map(|&t| {
        let out = propagate(&espec(1.3, 0.3, t, 0.0)?, &st)?;
        Ok((out.norm_sqr() - 1.0).abs().max((expectation(Op::L2, &out).re - e0).abs() / e0))
    }))
}

fn basis_phases() -> Result<f64> {
    let s = espec(0.7, 0.25, 1.8, 0.0)?;
    max_of((-3..=3).map(|n| {
        let out = propagate(&s, &basis_state(n, s.sector))?;
        let l = n as f64 + 0.25;
        Ok((out.coeff(n) - Complex64::from_polar(1.0, -0.7 * l * l * 1.8 / 2.0)).norm())
    }))
}

// e2

fn elements() -> Result<Vec<GroupElement>> {
    [(0.3, 1.0, -0.5), (2.9, -0.4, 0.8), (5.5, 2.0, 1.5), (-1.2, 0.0, -2.2)]
        .iter()
        .map(|&(a, x, y)| GroupElement::new(a, c(x, y), Covering::Circle))
        .collect()
}

fn points() -> Result<Vec<PhaseSpacePoint>> {
    [(0.0, 0.0), (0.7, -1.3), (2.4, 3.0), (4.9, 0.5), (FRAC_PI_2, 1.0)]
        .iter()
        .map(|&(f, p)| PhaseSpacePoint::new(f, p))
        .collect()
}

fn angle_gap(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

fn point_gap(u: &PhaseSpacePoint, v: &PhaseSpacePoint) -> f64 {
    angle_gap(u.phi(), v.phi()).max((u.p_phi() - v.p_phi()).abs())
}

fn associativity() -> Result<f64> {
    let g = elements()?;
    let mut out = 0.0f64;
    for a in &g {
        for b in &g {
            for k in &g {
                let l = compose(a, &compose(b, k)?)?;
                let r = compose(&compose(a, b)?, k)?;
                out = out.max(angle_gap(l.alpha(), r.alpha())).max((l.t() - r.t()).norm() / (1.0 + l.t().norm()));
            }
        }
    }
    Ok(out)
}

fn homomorphism() -> Result<f64> {
    let (g, s) = (elements()?, points()?);
    let mut out = 0.0f64;
    for a in &g {
        for b in &g {
            let ab = compose(a, b)?;
            for p in &s {
                out = out.max(point_gap(&act(&ab, p), &act(a, &act(b, p))));
            }
        }
    }
    Ok(out)
}

fn transporter() -> Result<f64> {
    let s = points()?;
    let mut out = 0.0f64;
    for a in &s {
        for b in &s {
            out = out.max(point_gap(&act(&solve_transporter(a, b), a), b));
        }
    }
    Ok(out)
}

fn symplectic() -> Result<f64> {
    let (g, s) = (elements()?, points()?);
    Ok(g.iter().flat_map(|a| s.iter().map(move |p| symplectic_residual(a, p))).fold(0.0, f64::max))
}

fn induced() -> Result<f64> {
    let s = points()?;
    Ok(s.iter()
        .map(|p| {
            let (x, y) = (induced_fields(p), analytic_fields(p));
            [x.x1, x.x2, x.l]
                .iter()
                .zip([y.x1, y.x2, y.l])
                .flat_map(|(u, v)| [(u[0] - v[0]).abs(), (u[1] - v[1]).abs()])
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max))
}

fn brackets() -> Result<f64> {
    use Generator::*;
    let s = points()?;
    let gens = [Cos, Sin, Momentum];
    let mut out = 0.0f64;
    for p in &s {
        for f in gens {
            for g in gens {
                let fd = poisson_bracket(|a, b| f.value(&PhaseSpacePoint::new(a, b).unwrap()), |a, b| {
                    g.value(&PhaseSpacePoint::new(a, b).unwrap())
                }, p);
                out = out.max((fd - generator_bracket(f, g, p)).abs());
            }
        }
        // {p, cos} = sin, {p, sin} = −cos, {cos, sin} = 0
        out = out
            .max((generator_bracket(Momentum, Cos, p) - Sin.value(p)).abs())
            .max((generator_bracket(Momentum, Sin, p) + Cos.value(p)).abs())
            .max(generator_bracket(Cos, Sin, p).abs());
    }
    Ok(out)
}

fn checks(suite: Suite) -> Vec<Check> {
    let specfun = vec![
        at_most("specfun.g-table", "Bessel ratio table I1/I0, I1/(x I0), g", 5e-4, g_table),
        at_most("specfun.jacobi-theta3", "Jacobi imaginary transformation of theta3", 1e-9, || modular(Kind::Three)),
        at_most("specfun.jacobi-theta2-theta4", "Jacobi transformation carrying theta2 to theta4", 1e-9, || {
            modular(Kind::Two)
        }),
        at_most("specfun.ratio-dn", "theta4/theta3 = sqrt(k')/dn", 1e-9, || web(|r| r.ratio)),
        at_most("specfun.zeta-function", "theta4'/theta4 = (2K/pi) Z(u)", 1e-9, || web(|r| r.zeta_fn)),
        at_most("specfun.log-derivative", "theta3'/theta3 from theta4'/theta4 and sn cn/dn", 1e-9, || {
            web(|r| r.log_derivative)
        }),
        at_most("specfun.second-log-derivative", "(ln theta3)'' = (2K/pi)^2 (k'^2/dn^2 - E/K)", 1e-9, || {
            web(|r| r.second_log)
        }),
    ];
    let mincs = vec![
        at_most("mincs.saturation.c-l", "minimal states saturate the (C, L) relation at alpha = 0", 1e-10, saturation_cl),
        at_most("mincs.saturation.s-l", "minimal states saturate the (S, L) relation at alpha = pi/2", 1e-10, saturation_sl),
        at_most("mincs.closed-vs-matrix", "closed-form moments vs matrix elements", 1e-8, min_closed_vs_matrix),
        at_most("mincs.wavefunction", "Bessel coefficients resum to the explicit wavefunction", 1e-10, min_wavefunction_vs_series),
        Check {
            id: "mincs.non-minimal-gap",
            anchor: "uncertainty gap stays open at alpha = 0.7",
            relation: Relation::Above,
            tol: 1e-6,
            run: non_minimal_gap,
        },
        at_most("mincs.overlap", "closed-form overlap of two minimal states", 1e-10, min_overlap_vs_inner),
        at_most("mincs.completeness", "resolution of identity over alpha and n", 1e-6, min_completeness),
        at_most("mincs.sum-rule", "Bessel sum rule |J0|^2 + 2 sum |Jn|^2 = I0(2s)", 1e-10, sum_rule),
        at_most("mincs.divergence-slope", "integral of J0^2 grows like ln(Gamma)/pi", 0.05, divergence_slope),
    ];
    let zakcs = vec![
        at_most("zakcs.closed-vs-matrix", "theta-ratio moments vs matrix elements", 1e-8, wz_closed_vs_matrix),
        at_most("zakcs.norm-forms", "norm as theta3 and after Jacobi transformation", 1e-10, wz_norm_forms),
        at_most("zakcs.wavefunction-forms", "coefficient series vs both theta closed forms", 1e-10, wz_series_vs_closed),
        at_most("zakcs.kernel-series", "reproducing kernel vs coefficient sum", 1e-10, wz_kernel_series),
        at_most("zakcs.transition-sum", "transition probabilities sum to one", 1e-8, wz_transition_sum),
        at_most("zakcs.completeness.periodized", "resolution of identity, periodized line states", 1e-6, || {
            wz_completeness(false)
        }),
        at_most("zakcs.completeness.holomorphic", "resolution of identity, theta-weighted measure", 1e-6, || {
            wz_completeness(true)
        }),
        at_most("zakcs.gap.lhs", "variance product (1 - 1/e)/4 at eps = 1, cos theta = 0", 5e-4, || wz_gap_sides(true)),
        at_most("zakcs.gap.rhs", "right-hand side e^(-1/2)/4 at eps = 1, cos theta = 0", 5e-4, || wz_gap_sides(false)),
    ];
    let ladder = vec![
        at_most("ladder.shift-constant", "N = L + ln(2 sinh eps)/(2 eps), 0.427 at eps = 1", 5e-4, shift_constant),
        at_most("ladder.kj-closed", "K/J uncertainty saturation, closed form", 1e-12, || kj(true)),
        at_most("ladder.kj-matrix", "K/J uncertainty saturation, matrix elements", 1e-8, || kj(false)),
        at_most("ladder.eigenvalue", "B w_z = exp(-iz) w_z", 1e-10, eigen),
        at_most("ladder.recursion", "coefficient recursion of the eigenstates", 1e-12, recursion),
        at_most("ladder.q-deformed", "A A+ - q A+ A = q^-N", 1e-12, qdeform),
    ];
    let evolve = vec![
        at_most("evolve.revival", "full revival at omega t = 4 pi", 1e-12, revival),
        at_most("evolve.basis-phases", "energy eigenstates acquire exp(-i eps (n+delta)^2 omega t/2)", 1e-14, basis_phases),
        at_most("evolve.unitarity", "norm and energy conserved", 1e-12, energy_conservation),
        at_most("evolve.kernel-forms", "theta propagator vs its Jacobi-transformed form", 1e-9, kernel_forms),
        at_most("evolve.kernel-quadrature", "kernel quadrature vs spectral propagation", 1e-6, kernel_quadrature),
        at_most("evolve.coherent-closed-form", "evolved holomorphic state as a theta function", 1e-9, w_evolution),
    ];
    let e2 = vec![
        at_most("e2.associativity", "group law is associative", 1e-13, associativity),
        at_most("e2.homomorphism", "action respects composition", 1e-12, homomorphism),
        at_most("e2.transporter", "transitive action: solved element carries s1 to s2", 1e-12, transporter),
        at_most("e2.symplectic", "action preserves the symplectic form", 1e-9, symplectic),
        at_most("e2.induced-fields", "induced vector fields match closed forms", 1e-8, induced),
        at_most("e2.brackets", "Poisson brackets of cos, sin, p", 1e-9, brackets),
    ];
    match suite {
        Suite::All => [specfun, mincs, zakcs, ladder, evolve, e2].concat(),
        Suite::Specfun => specfun,
        Suite::Mincs => mincs,
        Suite::Zakcs => zakcs,
        Suite::Ladder => ladder,
        Suite::Evolve => evolve,
        Suite::E2 => e2,
    }
}

/// Runs `suite`; with `tol_override` every at-most threshold is replaced.
/// Returns the report and whether every check passed.
pub fn run(suite: Suite, tol_override: Option<f64>) -> (Report, bool) {
    let list = checks(suite);
    let results: Vec<(f64, f64, bool, String)> = list
        .par_iter()
        .map(|ch| {
            let tol = match (ch.relation, tol_override) {
                (Relation::AtMost, Some(t)) => t,
                _ => ch.tol,
            };
            match (ch.run)() {
                Ok(v) => {
                    let pass = match ch.relation {
                        Relation::AtMost => v <= tol,
                        Relation::Above => v > tol,
                    };
                    (v, tol, pass, String::new())
                }
                Err(e) => (f64::NAN, tol, false, e.to_string()),
            }
        })
        .collect();
    let mut table = Table::new(vec!["id", "anchor", "residual", "relation", "tolerance", "pass", "error"]);
    let mut all = true;
    for (ch, (v, tol, pass, err)) in list.iter().zip(results) {
        all &= pass;
        let rel = match ch.relation {
            Relation::AtMost => "<=",
            Relation::Above => ">",
        };
        table.push(vec![ch.id.into(), ch.anchor.into(), v.into(), rel.into(), tol.into(), pass.into(), err.into()]);
    }
    (Report::Table(table), all)
}
