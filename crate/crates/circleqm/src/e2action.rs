//! Classical side of the Euclidean group E(2) acting on the cylinder.
//!
//! An element is a rotation angle α and a complex translation `t = a + ib`.
//! It acts on `(φ, p_φ)` by shifting the angle and pushing the momentum along
//! `a·sin − b·cos`, which is the symplectic action generated by `cos φ`,
//! `sin φ` and `p_φ`.

use crate::error::{finite, finite_c, Error};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// How the rotation angle is reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Covering {
    /// α mod 2π: the group E(2) itself.
    Circle,
    /// α mod 2πq: the q-fold covering group.
    Cover(u64),
    /// No reduction: the universal covering group.
    Universal,
}

impl Covering {
    fn reduce(self, alpha: f64) -> f64 {
        match self {
            Covering::Circle => wrap(alpha, TAU),
            Covering::Cover(q) => wrap(alpha, TAU * q as f64),
            Covering::Universal => alpha,
        }
    }
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    alpha: f64,
    t: Complex64,
    mode: Covering,
}

impl GroupElement {
    pub fn new(alpha: f64, t: Complex64, mode: Covering) -> Result<Self> {
        finite(alpha, "alpha")?;
        finite_c(t, "translation")?;
        if mode == Covering::Cover(0) {
            return Err(Error::InvalidParameter("covering order must be positive".into()));
        }
        Ok(Self { alpha: mode.reduce(alpha), t, mode })
    }

    pub fn identity(mode: Covering) -> Self {
        Self { alpha: 0.0, t: Complex64::new(0.0, 0.0), mode }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn a(&self) -> f64 {
        self.t.re
    }

    pub fn b(&self) -> f64 {
        self.t.im
    }

    pub fn mode(&self) -> Covering {
        self.mode
    }
}

/// Point of the cylinder; φ is kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpacePoint {
    phi: f64,
    p_phi: f64,
}

impl PhaseSpacePoint {
    pub fn new(phi: f64, p_phi: f64) -> Result<Self> {
        finite(phi, "phi")?;
        finite(p_phi, "p_phi")?;
        Ok(Self { phi: wrap(phi, TAU), p_phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn p_phi(&self) -> f64 {
        self.p_phi
    }
}

/// Group law `(α₂, t₂)(α₁, t₁) = (α₁ + α₂, t₂ + e^{iα₂} t₁)`.
pub fn compose(g2: &GroupElement, g1: &GroupElement) -> Result<GroupElement> {
    if g2.mode != g1.mode {
        return Err(Error::InvalidParameter(format!(
            "covering modes differ: {:?} vs {:?}",
            g2.mode, g1.mode
        )));
    }
    let t = g2.t + Complex64::from_polar(1.0, g2.alpha) * g1.t;
    Ok(GroupElement { alpha: g2.mode.reduce(g1.alpha + g2.alpha), t, mode: g2.mode })
}

// Displacement `image − input` of the unreduced action. Finite differences are
// taken on this rather than on the image, so the identity part of the map does
// not cost an ulp of φ or p_φ per evaluation.
fn displacement(g: &GroupElement, phi: f64, _p: f64) -> (f64, f64) {
    // ψ = φ + α carried as hi + lo
    let hi = phi + g.alpha;
    let bb = hi - phi;
    let lo = (phi - (hi - bb)) + (g.alpha - bb);
    let (s, c) = hi.sin_cos();
    let (s, c) = (s + lo * c, c - lo * s);
    (g.alpha, g.t.re * s - g.t.im * c)
}

// Central-difference stencil around `x` with an exactly representable spread.
fn stencil(x: f64, h: f64) -> (f64, f64, f64) {
    let (xp, xm) = (x + h, x - h);
    (xp, xm, xp - xm)
}

pub fn act(g: &GroupElement, s: &PhaseSpacePoint) -> PhaseSpacePoint {
    let (dphi, dp) = displacement(g, s.phi, s.p_phi);
    PhaseSpacePoint { phi: wrap(s.phi + dphi, TAU), p_phi: s.p_phi + dp }
}

/// Finds a group element carrying `s1` to `s2`.
///
/// Uses a pure `a` translation when `|sin φ₂| ≥ |cos φ₂|` and the `b`
/// translation otherwise.
pub fn solve_transporter(s1: &PhaseSpacePoint, s2: &PhaseSpacePoint) -> GroupElement {
    let alpha = wrap(s2.phi - s1.phi, TAU);
    let dp = s2.p_phi - s1.p_phi;
    let (s, c) = s2.phi.sin_cos();
    // the larger of |sin|, |cos| keeps |t| ≤ √2|Δp|, so rounding in the
    // rotated angle is not amplified; sin φ₂ = 0 lands on the b-branch
    let t = if s.abs() >= c.abs() {
        Complex64::new(dp / s, 0.0)
    } else {
        Complex64::new(0.0, -dp / c)
    };
    GroupElement { alpha, t, mode: Covering::Circle }
}

const FD_STEP: f64 = 1e-6;
const FD_STEP_NESTED: f64 = 1e-4;

/// `|det J − 1|` for the Jacobian of `act(g, ·)` at `s`, by central differences.
pub fn symplectic_residual(g: &GroupElement, s: &PhaseSpacePoint) -> f64 {
    let (fp, fm, df) = stencil(s.phi, FD_STEP);
    let (pp, pm, dp) = stencil(s.p_phi, FD_STEP);
    let (a1, b1) = displacement(g, fp, s.p_phi);
    let (a0, b0) = displacement(g, fm, s.p_phi);
    let (a3, b3) = displacement(g, s.phi, pp);
    let (a2, b2) = displacement(g, s.phi, pm);
    let j = [
        [1.0 + (a1 - a0) / df, (a3 - a2) / dp],
        [(b1 - b0) / df, 1.0 + (b3 - b2) / dp],
    ];
    (j[0][0] * j[1][1] - j[0][1] * j[1][0] - 1.0).abs()
}

/// Tangent vectors as `[φ component, p_φ component]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedFields {
    /// From translations along `a`.
    pub x1: [f64; 2],
    /// From translations along `b`.
    pub x2: [f64; 2],
    /// From rotations.
    pub l: [f64; 2],
}

fn subgroup(k: usize, x: f64) -> GroupElement {
    let mode = Covering::Universal;
    match k {
        0 => GroupElement { alpha: 0.0, t: Complex64::new(x, 0.0), mode },
        1 => GroupElement { alpha: 0.0, t: Complex64::new(0.0, x), mode },
        _ => GroupElement { alpha: x, t: Complex64::new(0.0, 0.0), mode },
    }
}

fn induced_raw(phi: f64, p: f64) -> InducedFields {
    let h = FD_STEP;
    // The induced field is minus the generator's flow derivative, so that the
    // map from the Lie algebra is a homomorphism rather than an anti-one.
    let field = |k| {
        let (xp, xm, dx) = stencil(0.0, h);
        let (fp, pp) = displacement(&subgroup(k, xp), phi, p);
        let (fm, pm) = displacement(&subgroup(k, xm), phi, p);
        [-(fp - fm) / dx, -(pp - pm) / dx]
    };
    InducedFields { x1: field(0), x2: field(1), l: field(2) }
}

/// Fields induced by the three one-parameter subgroups, by finite differences.
pub fn induced_fields(s: &PhaseSpacePoint) -> InducedFields {
    induced_raw(s.phi, s.p_phi)
}

/// Closed forms `X₁ = −sin φ ∂_p`, `X₂ = cos φ ∂_p`, `L = −∂_φ`.
pub fn analytic_fields(s: &PhaseSpacePoint) -> InducedFields {
    let (sn, cs) = s.phi.sin_cos();
    InducedFields { x1: [0.0, -sn], x2: [0.0, cs], l: [-1.0, 0.0] }
}

fn grad(f: &impl Fn(f64, f64) -> f64, phi: f64, p: f64) -> [f64; 2] {
    let (fp, fm, df) = stencil(phi, FD_STEP);
    let (pp, pm, dp) = stencil(p, FD_STEP);
    [(f(fp, p) - f(fm, p)) / df, (f(phi, pp) - f(phi, pm)) / dp]
}

/// `{f, g} = ∂_φ f ∂_p g − ∂_p f ∂_φ g` by central differences.
pub fn poisson_bracket(
    f: impl Fn(f64, f64) -> f64,
    g: impl Fn(f64, f64) -> f64,
    s: &PhaseSpacePoint,
) -> f64 {
    let df = grad(&f, s.phi, s.p_phi);
    let dg = grad(&g, s.phi, s.p_phi);
    df[0] * dg[1] - df[1] * dg[0]
}

/// The generators `f₁ = cos φ`, `f₂ = sin φ`, `f₃ = p_φ` of the action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Cos,
    Sin,
    Momentum,
}

impl Generator {
    pub fn value(self, s: &PhaseSpacePoint) -> f64 {
        match self {
            Generator::Cos => s.phi.cos(),
            Generator::Sin => s.phi.sin(),
            Generator::Momentum => s.p_phi,
        }
    }

    /// Exact `[∂_φ, ∂_p]`.
    pub fn gradient(self, s: &PhaseSpacePoint) -> [f64; 2] {
        match self {
            Generator::Cos => [-s.phi.sin(), 0.0],
            Generator::Sin => [s.phi.cos(), 0.0],
            Generator::Momentum => [0.0, 1.0],
        }
    }
}

/// Poisson bracket of two generators from their exact gradients.
pub fn generator_bracket(f: Generator, g: Generator, s: &PhaseSpacePoint) -> f64 {
    let (df, dg) = (f.gradient(s), g.gradient(s));
    df[0] * dg[1] - df[1] * dg[0]
}

/// Hamiltonian field of `f`, i.e. the derivation `g ↦ {f, g}`.
pub fn hamiltonian_field(f: impl Fn(f64, f64) -> f64, s: &PhaseSpacePoint) -> [f64; 2] {
    let df = grad(&f, s.phi, s.p_phi);
    [-df[1], df[0]]
}

/// Lie brackets of the induced fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCommutators {
    pub l_x1: [f64; 2],
    pub l_x2: [f64; 2],
    pub x1_x2: [f64; 2],
}

/// Brackets `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`, differentiating the
/// finite-difference fields once more with the coarser nested step.
pub fn field_commutators(s: &PhaseSpacePoint) -> FieldCommutators {
    let h = FD_STEP_NESTED;
    let (phi, p) = (s.phi, s.p_phi);
    let at = induced_raw(phi, p);
    let (fp, fm, df) = stencil(phi, h);
    let (pp, pm, dq) = stencil(p, h);
    let dphi = (induced_raw(fp, p), induced_raw(fm, p));
    let dp = (induced_raw(phi, pp), induced_raw(phi, pm));
    let pick = |f: &InducedFields, k: usize| match k {
        0 => f.x1,
        1 => f.x2,
        _ => f.l,
    };
    // jac[k][i][j] = ∂_j (field k)^i
    let jac = |k: usize| {
        let (a, b) = (pick(&dphi.0, k), pick(&dphi.1, k));
        let (c, d) = (pick(&dp.0, k), pick(&dp.1, k));
        [
            [(a[0] - b[0]) / df, (c[0] - d[0]) / dq],
            [(a[1] - b[1]) / df, (c[1] - d[1]) / dq],
        ]
    };
    let bracket = |x: usize, y: usize| {
        let (vx, vy) = (pick(&at, x), pick(&at, y));
        let (jx, jy) = (jac(x), jac(y));
        let mut out = [0.0; 2];
        for (i, o) in out.iter_mut().enumerate() {
            *o = vx[0] * jy[i][0] + vx[1] * jy[i][1] - vy[0] * jx[i][0] - vy[1] * jx[i][1];
        }
        out
    };
    FieldCommutators { l_x1: bracket(2, 0), l_x2: bracket(2, 1), x1_x2: bracket(0, 1) }
}
