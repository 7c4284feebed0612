//! Quadrature rules shared by the oracles and a few closed-form evaluations.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss–Hermite nodes and weights for the weight `exp(-x²)` on ℝ.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss–Legendre rule with `panels` equal panels of `order` nodes.
pub fn composite_gl<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Complex64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (xi, wi) in x.iter().zip(&w) {
            acc += f(mid + 0.5 * h * xi) * (wi * 0.5 * h);
        }
    }
    acc
}

/// Adaptive bisection comparing 8- and 16-point Gauss–Legendre estimates.
pub fn adaptive<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, abs_tol: f64) -> Complex64 {
    let lo = gauss_legendre(8);
    let hi = gauss_legendre(16);
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((l, r, depth)) = stack.pop() {
        let h = 0.5 * (r - l);
        let m = 0.5 * (r + l);
        let mut g8 = Complex64::new(0.0, 0.0);
        for (x, w) in lo.0.iter().zip(&lo.1) {
            g8 += f(m + h * x) * (w * h);
        }
        let mut g16 = Complex64::new(0.0, 0.0);
        for (x, w) in hi.0.iter().zip(&hi.1) {
            g16 += f(m + h * x) * (w * h);
        }
        let local_tol = abs_tol * ((r - l).abs() / width).max(1e-3);
        if (g16 - g8).norm() <= local_tol || depth >= 40 {
            total += g16;
        } else {
            stack.push((m, r, depth + 1));
            stack.push((l, m, depth + 1));
        }
    }
    total
}

/// Uniform trapezoid sample points `2πj/m`, `j = 0..m`.
pub fn periodic_grid(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |j| 2.0 * PI * j as f64 / m as f64)
}

/// Mean of a 2π-periodic integrand over [0, 2π) by the trapezoid rule.
pub fn periodic_mean<F: FnMut(f64) -> Complex64>(mut f: F, m: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for phi in periodic_grid(m) {
        acc += f(phi);
    }
    acc / m as f64
}
