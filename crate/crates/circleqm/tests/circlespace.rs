use circleqm::circlespace::*;
use circleqm::specfun::bessel_j;
use circleqm::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn arb_state(max_len: usize) -> impl Strategy<Value = CircleState> {
    (
        0.0f64..1.0,
        -6i64..6,
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_len),
    )
        .prop_map(|(d, lo, v)| {
            let coeffs = v.into_iter().map(|(a, b)| c(a, b)).collect();
            CircleState::new(Sector::new(d).unwrap(), lo, coeffs).unwrap()
        })
        .prop_filter("nonzero", |s| s.norm_sqr() > 1e-6)
}

fn max_diff(a: &CircleState, b: &CircleState) -> f64 {
    let lo = a.n_lo().min(b.n_lo());
    let hi = a.n_hi().max(b.n_hi());
    (lo..=hi).map(|n| (a.coeff(n) - b.coeff(n)).norm()).fold(0.0, f64::max)
}

#[test]
fn basis_state_examples() {
    let e = basis_state(0, Sector::integer());
    for phi in [0.0, 1.0, 4.0] {
        assert_eq!(e.eval(phi), c(1.0, 0.0));
    }
    let s = Sector::new(0.3).unwrap();
    let l = expectation(Op::L, &basis_state(-1, s));
    assert!((l.re + 0.7).abs() < 1e-15);
    let le = apply_operator(Op::L, &basis_state(4, s));
    assert_eq!(le.coeff(4), c(4.3, 0.0));
}

#[test]
fn cos_sin_squares_sum_to_identity() {
    let s = Sector::new(0.7).unwrap();
    let psi = CircleState::new(s, -2, vec![c(0.5, 0.1), c(-0.3, 0.2), c(1.0, 0.0)]).unwrap();
    let cc = apply_operator(Op::C, &apply_operator(Op::C, &psi));
    let ss = apply_operator(Op::S, &apply_operator(Op::S, &psi));
    let sum = cc.combine(c(1.0, 0.0), &ss, c(1.0, 0.0)).unwrap();
    assert!(max_diff(&sum, &psi) < 1e-16);
}

#[test]
fn inner_rejects_other_sector() {
    let a = basis_state(0, Sector::new(0.2).unwrap());
    let b = basis_state(0, Sector::new(0.3).unwrap());
    assert!(inner(&a, &b).is_err());
    assert!(inner_quadrature(&a, &b).is_err());
}

#[test]
fn basis_is_orthonormal() {
    let s = Sector::new(0.4).unwrap();
    for m in -3..3 {
        for n in -3..3 {
            let v = inner(&basis_state(m, s), &basis_state(n, s)).unwrap();
            assert_eq!(v, c(if m == n { 1.0 } else { 0.0 }, 0.0));
            let q = inner_quadrature(&basis_state(m, s), &basis_state(n, s)).unwrap();
            assert!((q - v).norm() < 1e-14);
        }
    }
}

#[test]
fn commuting_pair_has_no_commutator_term() {
    let s = Sector::new(0.1).unwrap();
    let psi = CircleState::new(s, 0, vec![c(1.0, 0.0), c(0.3, 0.4), c(0.0, -0.7)]).unwrap();
    let r = uncertainty_report(Op::C, Op::S, &psi).unwrap();
    assert!(r.commutator_mean.norm() < 1e-16);
    assert!((r.rhs - r.covariance * r.covariance).abs() < 1e-16);
}

#[test]
fn eigenstate_of_l_is_trivially_saturated() {
    let r = uncertainty_report(Op::C, Op::L, &basis_state(0, Sector::integer())).unwrap();
    assert!((r.var_a - 0.5).abs() < 1e-15);
    assert_eq!(r.var_b, 0.0);
    assert_eq!(r.lhs, 0.0);
    assert_eq!(r.rhs, 0.0);
    assert!(r.saturated);
}

#[test]
fn rotation_examples() {
    let s = Sector::new(0.35).unwrap();
    let rep = RepLabel::new(1.0, s).unwrap();
    let psi = CircleState::new(s, -1, vec![c(0.2, 0.3), c(1.0, 0.0), c(-0.4, 0.1)]).unwrap();
    let full = rep_apply(2.0 * PI, 0.0, 0.0, &rep, &psi).unwrap();
    let expected = psi.scaled(Complex64::from_polar(1.0, -2.0 * PI * 0.35));
    assert!(max_diff(&full, &expected) < 1e-14);
    let (a1, a2) = (0.4, 1.3);
    let two = rep_apply(a2, 0.0, 0.0, &rep, &rep_apply(a1, 0.0, 0.0, &rep, &psi).unwrap()).unwrap();
    let one = rep_apply(a1 + a2, 0.0, 0.0, &rep, &psi).unwrap();
    assert!(max_diff(&two, &one) < 1e-15);
}

#[test]
fn translation_matches_jacobi_anger() {
    let s = Sector::integer();
    let rep = RepLabel::new(1.0, s).unwrap();
    let out = rep_apply(0.0, 1.0, 0.0, &rep, &basis_state(0, s)).unwrap();
    for m in out.n_lo()..=out.n_hi() {
        let want = c(0.0, -1.0).powi(m as i32) * bessel_j(m, c(1.0, 0.0)).unwrap();
        assert!((out.coeff(m) - want).norm() < 1e-10, "{m}");
    }
}

#[test]
fn translation_and_rotation_rejects_sector_mismatch() {
    let rep = RepLabel::new(1.0, Sector::new(0.5).unwrap()).unwrap();
    assert!(rep_apply(0.1, 0.0, 0.0, &rep, &basis_state(0, Sector::integer())).is_err());
    assert!(RepLabel::new(0.0, Sector::integer()).is_err());
}

#[test]
fn energies_and_ground_states() {
    let p1 = Params::new(1.0, 1.0).unwrap();
    assert_eq!(energy(0, &p1, Sector::integer()), 0.0);
    let half = Sector::new(0.5).unwrap();
    let g = ground_state(&p1, half);
    assert!(g.degenerate);
    assert_eq!(g.energy, 0.125);
    assert_eq!(energy(-1, &p1, half), 0.125);
    let p2 = Params::new(2.0, 1.0).unwrap();
    let g = ground_state(&p2, Sector::new(0.3).unwrap());
    assert_eq!(g.n, 0);
    assert!((g.energy - 0.09).abs() < 1e-15);
    assert!(!g.degenerate);
    let g = ground_state(&p2, Sector::new(0.8).unwrap());
    assert_eq!(g.n, -1);
    assert!(Params::new(0.0, 1.0).is_err());
}

#[test]
fn flux_conversion() {
    assert_eq!(delta_from_flux(1.0, 0.0).unwrap(), (0.0, 0.0));
    let (d, t) = delta_from_flux(1.0, 2.0 * PI).unwrap();
    assert_eq!(d, 0.0);
    assert!((t - 2.0 * PI).abs() < 1e-15);
    let (d, t) = delta_from_flux(2.0, PI / 2.0).unwrap();
    assert!((d - 0.5).abs() < 1e-15);
    assert!((t - PI).abs() < 1e-15);
    let (d, _) = delta_from_flux(-1.0, PI / 2.0).unwrap();
    assert!((d - 0.75).abs() < 1e-15);
}

#[test]
fn time_reversal_and_parity() {
    let zero = Sector::integer();
    let psi = CircleState::new(zero, -1, vec![c(0.1, 0.2), c(0.3, -0.4)]).unwrap();
    assert_eq!(time_reversal(&psi).sector(), zero);

    let half = Sector::new(0.5).unwrap();
    assert_eq!(time_reversal(&basis_state(3, half)).sector(), half);

    let s = Sector::new(0.2).unwrap();
    let psi = CircleState::new(s, -2, vec![c(0.1, 0.2), c(0.3, -0.4), c(0.0, 1.0)]).unwrap();
    let t = time_reversal(&psi);
    assert!((t.sector().delta() - 0.8).abs() < 1e-15);
    assert_eq!(time_reversal(&t), psi);
    for phi in [0.3, 2.0, 5.5] {
        assert!((t.eval(phi) - psi.eval(phi).conj()).norm() < 1e-14);
        assert!((parity(&psi).eval(phi) - psi.eval(-phi)).norm() < 1e-14);
    }
    for n in -2..3 {
        let e = basis_state(n, s);
        assert_eq!(parity(&time_reversal(&e)), e);
        let l = expectation(Op::L, &parity(&e)).re;
        assert!((l + (n as f64 + 0.2)).abs() < 1e-14);
    }
}

#[test]
fn covering_periodicity() {
    let s = Sector::rational(2, 5).unwrap();
    let q = s.covering_order().unwrap() as f64;
    let psi = CircleState::new(s, -3, vec![c(0.5, 0.5), c(-1.0, 0.2), c(0.3, 0.0), c(0.0, 0.9)]).unwrap();
    for phi in [0.0, 0.7, 3.9, -2.2] {
        let a = psi.eval(phi + 2.0 * PI * q);
        let b = psi.eval(phi);
        assert!((a - b).norm() < 1e-14 * (1.0 + b.norm()), "{phi}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_condition(psi in arb_state(6), phi in -20.0f64..20.0) {
        let tw = Complex64::from_polar(1.0, 2.0 * PI * psi.sector().delta());
        let a = psi.eval(phi + 2.0 * PI);
        let b = tw * psi.eval(phi);
        prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()));
    }

    #[test]
    fn commutator_algebra(psi in arb_state(5)) {
        // [L,C] = iS, [L,S] = -iC, [C,S] = 0
        let lc = apply_operator(Op::L, &apply_operator(Op::C, &psi));
        let cl = apply_operator(Op::C, &apply_operator(Op::L, &psi));
        let comm = lc.combine(c(1.0, 0.0), &cl, c(-1.0, 0.0)).unwrap();
        let is = apply_operator(Op::S, &psi).scaled(c(0.0, 1.0));
        prop_assert!(max_diff(&comm, &is) < 1e-14);

        let ls = apply_operator(Op::L, &apply_operator(Op::S, &psi));
        let sl = apply_operator(Op::S, &apply_operator(Op::L, &psi));
        let comm = ls.combine(c(1.0, 0.0), &sl, c(-1.0, 0.0)).unwrap();
        let ic = apply_operator(Op::C, &psi).scaled(c(0.0, -1.0));
        prop_assert!(max_diff(&comm, &ic) < 1e-14);

        let cs = apply_operator(Op::C, &apply_operator(Op::S, &psi));
        let sc = apply_operator(Op::S, &apply_operator(Op::C, &psi));
        prop_assert!(max_diff(&cs, &sc) < 1e-14);
    }

    #[test]
    fn inner_matches_quadrature(a in arb_state(8), b in arb_state(8)) {
        let b = CircleState::new(a.sector(), b.n_lo(), b.coeffs().to_vec()).unwrap();
        let x = inner(&a, &b).unwrap();
        let y = inner_quadrature(&a, &b).unwrap();
        prop_assert!((x - y).norm() < 1e-12);
    }

    #[test]
    fn representation_is_unitary(
        a in arb_state(5), b in arb_state(5),
        alpha in -7.0f64..7.0, ta in -3.0f64..3.0, tb in -3.0f64..3.0, rho in 0.2f64..2.0,
    ) {
        let b = CircleState::new(a.sector(), b.n_lo(), b.coeffs().to_vec()).unwrap();
        let rep = RepLabel::new(rho, a.sector()).unwrap();
        let ua = rep_apply(alpha, ta, tb, &rep, &a).unwrap();
        let ub = rep_apply(alpha, ta, tb, &rep, &b).unwrap();
        let before = inner(&a, &b).unwrap();
        let after = inner(&ua, &ub).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn time_reversal_is_involutive(psi in arb_state(6)) {
        prop_assert_eq!(time_reversal(&time_reversal(&psi)), psi.clone());
        prop_assert_eq!(parity(&parity(&psi)), psi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn robertson_schroedinger_inequality(psi in arb_state(7)) {
        for (a, b) in [(Op::C, Op::S), (Op::C, Op::L), (Op::S, Op::L)] {
            let r = uncertainty_report(a, b, &psi).unwrap();
            let scale = r.lhs.max(r.rhs).max(1e-300);
            prop_assert!(r.lhs >= r.rhs - 1e-12 * scale, "{:?} {:?}: {} < {}", a, b, r.lhs, r.rhs);
        }
    }
}
