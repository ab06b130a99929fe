//! Independent reference implementations used as test oracles. None of them
//! shares code with the library's recurrences or closed forms.
#![allow(dead_code)]

use ellipse_gas::Complex64;
use std::f64::consts::PI;

pub fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

fn lg(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `C_n^{(a+1)}(z)` from its explicit power sum.
pub fn gegenbauer_explicit(n: usize, a: f64, z: Complex64) -> Complex64 {
    gegenbauer_explicit_with_mass(n, a, z).0
}

/// The explicit sum together with the sum of the moduli of its terms, which
/// bounds its rounding error.
pub fn gegenbauer_explicit_with_mass(n: usize, a: f64, z: Complex64) -> (Complex64, f64) {
    let mut s = c(0.0, 0.0);
    let mut mass = 0.0;
    for j in 0..=n / 2 {
        let jf = j as f64;
        let nf = n as f64;
        let coef = (lg(nf + a - jf + 1.0) - lg(a + 1.0) - lg(jf + 1.0) - lg(nf - 2.0 * jf + 1.0)).exp();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let t = (z * 2.0).powi((n - 2 * j) as i32) * (sign * coef);
        mass += t.norm();
        s += t;
    }
    (s, mass)
}

fn gen_binom(x: f64, m: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..m {
        r *= (x - i as f64) / (i as f64 + 1.0);
    }
    r
}

/// `P_n^{(alpha,beta)}(z)` from the binomial sum in `(z-1)/2` and `(z+1)/2`.
pub fn jacobi_explicit(n: usize, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let nf = n as f64;
    let (u, v) = ((z - 1.0) * 0.5, (z + 1.0) * 0.5);
    (0..=n)
        .map(|k| u.powi(k as i32) * v.powi((n - k) as i32) * (gen_binom(nf + alpha, n - k) * gen_binom(nf + beta, k)))
        .sum()
}

/// Finite-`N` Gegenbauer kernel assembled term by term from the explicit sums.
pub fn gegenbauer_kernel_bruteforce(a: f64, tau: f64, n: usize, z1: Complex64, z2: Complex64) -> Complex64 {
    let w = |z: Complex64| {
        (1.0 - 2.0 * tau / (1.0 + tau) * z.re * z.re - 2.0 * tau / (1.0 - tau) * z.im * z.im).powf(0.5 * a)
    };
    let mut s = c(0.0, 0.0);
    for k in 0..n {
        let ck = gegenbauer_explicit(k, a, c(1.0 / tau, 0.0)).re;
        s += gegenbauer_explicit(k, a, z1) * gegenbauer_explicit(k, a, z2.conj()) * ((k as f64 + a + 1.0) / ck);
    }
    s * (w(z1) * w(z2) * 2.0 * tau / (PI * (1.0 - tau * tau).sqrt()))
}

/// Deterministic pseudo-random points in the ellipse `x^2/sx^2 + y^2/sy^2 <= r^2`.
pub fn points_in_ellipse(sx: f64, sy: f64, r: f64, count: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    (0..count)
        .map(|_| {
            let rr = r * next().sqrt();
            let th = 2.0 * PI * next();
            c(sx * rr * th.cos(), sy * rr * th.sin())
        })
        .collect()
}
