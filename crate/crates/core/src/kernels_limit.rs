//! Limiting kernels: weak and strong non-Hermiticity in the bulk and at the
//! foci, their Hermitian reductions (sine and Bessel kernels), the Ginibre
//! kernel, and the global kernels of the three Chebyshev gases.
//!
//! The weak edge kernels are written through the entire function
//! `E_nu(w^2) = (w/2)^{-nu} J_nu(w)`, so no square-root branch enters:
//! `(sqrt Z)^{-nu} J_nu(c sqrt Z) = (c/2)^nu E_nu(c^2 Z)`. Likewise
//! `1 / I_nu(cs) = (cs/2)^{-nu} R_nu(cs)` with the bounded ratio
//! `R_nu(x) = (x/2)^nu / I_nu(x)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, parameter, Error, Result};
use crate::geometry::{bulk_domain_contains, edge_domain_contains, joukowsky_inverse};
use crate::quadrature::{compensated_sum, gauss_jacobi_unit, integrate_panels};
use crate::specialfns::{bessel_j_entire, lgam, ln_bessel_i_ratio, BesselOrder};

/// Default number of `c` nodes before the oscillation allowance is added.
pub const DEFAULT_C_NODES: usize = 64;

/// Cap on the number of terms of the global series.
pub const GLOBAL_MAX_TERMS: usize = 500;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn check_a(a: f64) -> Result<()> {
    if a > -1.0 && a.is_finite() {
        Ok(())
    } else {
        parameter(format!("a = {a} must be finite and > -1"))
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        parameter(format!("s = {s} must be finite and > 0"))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        parameter(format!("tau = {tau} must lie in (0, 1)"))
    }
}

/// `R_nu(x) = (x/2)^nu / I_nu(x)`.
fn i_ratio(order: BesselOrder, x: f64) -> f64 {
    ln_bessel_i_ratio(order, x).map(f64::exp).unwrap_or(0.0)
}

/// `int_0^1 c^beta g(c) dc` with `n` Gauss–Jacobi nodes.
fn unit_integral(n: usize, beta: f64, g: impl Fn(f64) -> Complex64) -> Result<Complex64> {
    let rule = gauss_jacobi_unit(n, 0.0, beta)?;
    let vals: Vec<Complex64> = rule.iter().map(|&(c, w)| g(c) * w).collect();
    let sum = compensated_sum(vals);
    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(Error::Evaluation("kernel integrand is not finite".into()))
    }
}

fn oscillation_nodes(base: usize, extra: f64) -> usize {
    base + extra.ceil() as usize
}

// ---------------------------------------------------------------------------
// bulk

/// Weak non-Hermiticity bulk kernel at the origin:
/// `2/(s pi^{3/2} Gamma(a+1)) (1-4y1^2/s^2)^{a/2} (1-4y2^2/s^2)^{a/2}
///  int_0^1 R(cs) cos(c (z1 - conj z2)) dc`.
pub fn bulk_weak(a: f64, s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    bulk_weak_kappa_nodes(a, s, 1.0, z1, z2, DEFAULT_C_NODES)
}

/// Bulk kernel reached from the edge with curvature parameter `kappa`:
/// `2/(s pi^{3/2} Gamma(a+1) kappa^{a+1}) (kappa-4y1^2/s^2)^{a/2} (kappa-4y2^2/s^2)^{a/2}
///  int_0^1 R(cs) cos(c (z1 - conj z2)/sqrt kappa) dc`.
pub fn bulk_weak_kappa(a: f64, s: f64, kappa: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    bulk_weak_kappa_nodes(a, s, kappa, z1, z2, DEFAULT_C_NODES)
}

fn bulk_weak_kappa_nodes(
    a: f64,
    s: f64,
    kappa: f64,
    z1: Complex64,
    z2: Complex64,
    nodes: usize,
) -> Result<Complex64> {
    check_a(a)?;
    check_s(s)?;
    if !(kappa > 0.0) {
        return parameter(format!("kappa = {kappa} must be > 0"));
    }
    let s_eff = s * kappa.sqrt();
    for z in [z1, z2] {
        if !bulk_domain_contains(s_eff, z) {
            return domain(format!("{z} lies outside the bulk strip |y| <= {}", s_eff / 2.0));
        }
    }
    let order = BesselOrder::from_charge(a)?;
    let wall = |z: Complex64| (kappa - 4.0 * z.im * z.im / (s * s)).max(0.0);
    let pref = 2.0 / (s * PI.powf(1.5)) * (-lgam(a + 1.0) - (a + 1.0) * kappa.ln()).exp()
        * (wall(z1) * wall(z2)).powf(0.5 * a);
    if pref == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d = (z1 - z2.conj()) / kappa.sqrt();
    let n = oscillation_nodes(nodes, d.norm());
    let integral = unit_integral(n, 0.0, |c| (d * c).cos() * i_ratio(order, c * s))?;
    Ok(integral * pref)
}

/// The sine kernel `sin(x1 - x2) / (pi (x1 - x2))`.
pub fn sine_kernel(x1: f64, x2: f64) -> f64 {
    let d = x1 - x2;
    if d.abs() < 1e-8 {
        (1.0 - d * d / 6.0) / PI
    } else {
        d.sin() / (PI * d)
    }
}

/// Strong non-Hermiticity bulk kernel on the strip `|y| <= 1/2`:
/// `2/(pi^{3/2} Gamma(a+1)) (1-4y1^2)^{a/2} (1-4y2^2)^{a/2}
///  int_0^inf R(t) cos(t (z1 - conj z2)) dt`.
///
/// The integrand grows like `exp(t |y1 + y2|)` against the decay `exp(-t)`,
/// so the truncation point scales like `1 / (1 - |y1 + y2|)`; pairs with
/// `|y1 + y2| > 1 - 1e-3` are rejected as non-convergent.
pub fn bulk_strong(a: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_a(a)?;
    for z in [z1, z2] {
        if z.im.abs() > 0.5 {
            return domain(format!("{z} lies outside the strip |y| <= 1/2"));
        }
    }
    let d = z1 - z2.conj();
    let gap = 1.0 - d.im.abs();
    if gap < 1e-3 {
        return Err(Error::NonConvergent(format!(
            "|y1 + y2| = {} is too close to 1 for the half-line integral",
            d.im.abs()
        )));
    }
    let wall = |z: Complex64| (1.0 - 4.0 * z.im * z.im).max(0.0);
    let w = (wall(z1) * wall(z2)).powf(0.5 * a);
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let order = BesselOrder::from_charge(a)?;
    let la = lgam(a + 1.0);
    let t_max = (50.0f64).max(5.0 * (a + 2.0)) / gap;
    let panel = if d.re.abs() > 1.0 { (PI / d.re.abs()).min(2.0) } else { 2.0 };
    let integral = integrate_panels(
        |t| {
            let lr = ln_bessel_i_ratio(order, t).unwrap_or(f64::NEG_INFINITY) - la;
            (d * t).cos() * lr.exp()
        },
        0.0,
        t_max,
        panel,
        20,
    )?;
    Ok(integral * (2.0 / PI.powf(1.5) * w))
}

/// `(2/pi) exp(-|u1|^2 - |u2|^2 + 2 u1 conj u2)`.
pub fn ginibre_kernel(u1: Complex64, u2: Complex64) -> Complex64 {
    (u1 * u2.conj() * 2.0 - u1.norm_sqr() - u2.norm_sqr()).exp() * (2.0 / PI)
}

// ---------------------------------------------------------------------------
// edges

fn edge_wall(s: f64, z: Complex64) -> f64 {
    (0.25 * s * s + z.re - (z.im / s).powi(2)).max(0.0)
}

fn left_wall(s: f64, z: Complex64) -> f64 {
    (1.0 - 2.0 / (s * s) * (z.norm() - z.re)).max(0.0)
}

fn check_edge(s: f64, zs: [Complex64; 2]) -> Result<()> {
    for z in zs {
        if !edge_domain_contains(s, z) {
            return domain(format!("{z} lies outside the parabola X >= (Y/s)^2 - s^2/4"));
        }
    }
    Ok(())
}

/// Weak non-Hermiticity kernel at a focus:
/// `(s/2)^{a-1/2}/(4 sqrt(pi) Gamma(a+1)) W1^{a/2} W2^{a/2} (sqrt Z1 sqrt conj Z2)^{-a-1/2}
///  int_0^1 c^{a+3/2}/I(cs) J(c sqrt Z1) J(c sqrt conj Z2) dc`
/// with `W = s^2/4 + X - (Y/s)^2`.
pub fn edge_weak(a: f64, s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    edge_weak_nodes(a, s, z1, z2, DEFAULT_C_NODES)
}

/// [`edge_weak`] with an explicit base node count.
pub fn edge_weak_nodes(a: f64, s: f64, z1: Complex64, z2: Complex64, nodes: usize) -> Result<Complex64> {
    check_a(a)?;
    check_s(s)?;
    check_edge(s, [z1, z2])?;
    let order = BesselOrder::from_charge(a)?;
    let nu = order.nu();
    let w = (edge_wall(s, z1) * edge_wall(s, z2)).powf(0.5 * a);
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pref = w * (2.0 / s) / (4.0 * PI.sqrt()) * (-lgam(a + 1.0) - nu * 4f64.ln()).exp();
    let z2c = z2.conj();
    let n = oscillation_nodes(nodes, z1.norm().sqrt() + z2.norm().sqrt());
    let integral = unit_integral(n, 2.0 * a + 2.0, |c| {
        let c2 = c * c;
        bessel_j_entire(order, z1 * c2) * bessel_j_entire(order, z2c * c2) * i_ratio(order, c * s)
    })?;
    Ok(integral * pref)
}

/// Bessel kernel `(1/4) (X1 X2)^{-1/4} int_0^1 c J(c sqrt X1) J(c sqrt X2) dc`
/// with `J = J_{a+1/2}`, for `X1, X2 >= 0` and `a >= -1`.
pub fn bessel_kernel(a: f64, x1: f64, x2: f64) -> Result<f64> {
    if !(a >= -1.0) || !a.is_finite() {
        return parameter(format!("a = {a} must be finite and >= -1"));
    }
    if !(x1 >= 0.0 && x2 >= 0.0) {
        return domain(format!("Bessel kernel needs X1, X2 >= 0, got {x1}, {x2}"));
    }
    let order = BesselOrder::from_charge(a)?;
    let nu = order.nu();
    let pref = 0.25 * (x1 * x2).powf(0.5 * a) * (-nu * 4f64.ln()).exp();
    let n = oscillation_nodes(DEFAULT_C_NODES, x1.sqrt() + x2.sqrt());
    let integral = unit_integral(n, 2.0 * a + 2.0, |c| {
        let c2 = c * c;
        bessel_j_entire(order, Complex64::new(x1 * c2, 0.0)) * bessel_j_entire(order, Complex64::new(x2 * c2, 0.0))
    })?;
    Ok(integral.re * pref)
}

/// `sin(w)/w` for complex `w`, an even entire function.
fn sinc(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        ONE - w * w / 6.0
    } else {
        w.sin() / w
    }
}

/// Kernel at the left focus of the `P^{(a+1/2, 1/2)}` gas:
/// `(s/2)^{a-1/2}/(2 pi^{3/2} Gamma(a+1)) L1^{a/2} L2^{a/2} / sqrt(Z1 conj Z2)
///  int_0^1 c^{a+1/2}/I(cs) sin(c sqrt Z1) sin(c sqrt conj Z2) dc`
/// with `L = 1 - (2/s^2)(|Z| - X)`.
pub fn edge_weak_minus_sine(a: f64, s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_a(a)?;
    check_s(s)?;
    check_edge(s, [z1, z2])?;
    let order = BesselOrder::from_charge(a)?;
    let w = (left_wall(s, z1) * left_wall(s, z2)).powf(0.5 * a);
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pref = w / (s * PI.powf(1.5)) * (-lgam(a + 1.0)).exp();
    let (r1, r2) = (z1.sqrt(), z2.conj().sqrt());
    let n = oscillation_nodes(DEFAULT_C_NODES, r1.norm() + r2.norm());
    let integral = unit_integral(n, 2.0, |c| sinc(r1 * c) * sinc(r2 * c) * i_ratio(order, c * s))?;
    Ok(integral * pref)
}

/// Kernel at the left focus of the `P^{(a+1/2, -1/2)}` gas:
/// `(s/2)^{a-1/2}/(2 pi^{3/2} Gamma(a+1)) L1^{a/2} L2^{a/2} |Z1 Z2|^{-1/2}
///  int_0^1 c^{a+1/2}/I(cs) cos(c sqrt Z1) cos(c sqrt conj Z2) dc`.
pub fn edge_weak_minus_cosine(a: f64, s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_a(a)?;
    check_s(s)?;
    check_edge(s, [z1, z2])?;
    if z1.norm() == 0.0 || z2.norm() == 0.0 {
        return Err(Error::Singular("the cosine edge kernel is infinite at Z = 0".into()));
    }
    let order = BesselOrder::from_charge(a)?;
    let w = (left_wall(s, z1) * left_wall(s, z2)).powf(0.5 * a);
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pref = w / (s * PI.powf(1.5)) * (-lgam(a + 1.0)).exp() / (z1.norm() * z2.norm()).sqrt();
    let (r1, r2) = (z1.sqrt(), z2.conj().sqrt());
    let n = oscillation_nodes(DEFAULT_C_NODES, r1.norm() + r2.norm());
    let integral = unit_integral(n, 0.0, |c| (r1 * c).cos() * (r2 * c).cos() * i_ratio(order, c * s))?;
    Ok(integral * pref)
}

/// Edge kernel of the first-kind Chebyshev gas,
/// `(1/4) sqrt(2/(s pi)) (sqrt(Z1 conj Z2)/|Z1 Z2|)^{1/2}
///  int_0^1 c^{3/2}/I_{1/2}(cs) J_{-1/2}(c sqrt Z1) J_{-1/2}(c sqrt conj Z2) dc`,
/// evaluated with the Bessel functions themselves.
pub fn edge_weak_chebyshev_t(s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    use crate::specialfns::{bessel_i, bessel_j};
    check_s(s)?;
    check_edge(s, [z1, z2])?;
    if z1.norm() == 0.0 || z2.norm() == 0.0 {
        return Err(Error::Singular("the first-kind edge kernel is infinite at Z = 0".into()));
    }
    let (r1, r2) = (z1.sqrt(), z2.conj().sqrt());
    let jm = BesselOrder::new(-0.5)?;
    let ih = BesselOrder::new(0.5)?;
    let pref = (r1 * r2).sqrt() / (z1.norm() * z2.norm()).sqrt() * (0.25 * (2.0 / (s * PI)).sqrt());
    let rule = crate::quadrature::gauss_legendre_unit(oscillation_nodes(DEFAULT_C_NODES, r1.norm() + r2.norm()));
    let mut vals = Vec::with_capacity(rule.len());
    for &(c, w) in rule.iter() {
        let j1 = bessel_j(jm, r1 * c)?;
        let j2 = bessel_j(jm, r2 * c)?;
        vals.push(j1 * j2 * (c.powf(1.5) / bessel_i(ih, c * s)? * w));
    }
    Ok(compensated_sum(vals) * pref)
}

/// Strong non-Hermiticity edge kernel on the half plane `X >= 0`:
/// `(X1 X2)^{a/2}/(4 pi Gamma(a+1)) int_0^1 c^{a+1} exp(-c lambda) dc` with
/// `lambda = (X1 + X2)/2 + i (Y1 - Y2)/2`.
pub fn edge_strong(a: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_a(a)?;
    for z in [z1, z2] {
        if z.re < 0.0 {
            return domain(format!("{z} lies outside the half plane X >= 0"));
        }
    }
    let lambda = Complex64::new(0.5 * (z1.re + z2.re), 0.5 * (z1.im - z2.im));
    let pref = (z1.re * z2.re).powf(0.5 * a) / (4.0 * PI) * (-lgam(a + 1.0)).exp();
    if pref == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = oscillation_nodes(DEFAULT_C_NODES, lambda.norm() + 40.0);
    let integral = unit_integral(n, a + 1.0, |c| (-lambda * c).exp())?;
    Ok(integral * pref)
}

/// The same kernel from the edge limit of truncated unitary matrices, with
/// the `c` integral summed as `exp(-lambda) sum_k lambda^k / (p (p+1) ... (p+k))`,
/// `p = a + 2`. The series cancels heavily once `|lambda|` exceeds about 15.
pub fn edge_strong_truncated_unitary(a: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_a(a)?;
    for z in [z1, z2] {
        if z.re < 0.0 {
            return domain(format!("{z} lies outside the half plane X >= 0"));
        }
    }
    let lambda = Complex64::new(0.5 * (z1.re + z2.re), 0.5 * (z1.im - z2.im));
    let p = a + 2.0;
    let mut term = Complex64::new(1.0 / p, 0.0);
    let mut terms = vec![term];
    for k in 1..10_000 {
        term = term * lambda / (p + k as f64);
        terms.push(term);
        if term.norm() < 1e-18 * terms[0].norm() && k as f64 > lambda.norm() {
            break;
        }
    }
    let integral = compensated_sum(terms) * (-lambda).exp();
    let pref = (z1.re * z2.re).powf(0.5 * a) / (4.0 * PI) * (-lgam(a + 1.0)).exp();
    Ok(integral * pref)
}

/// `(4h K_Edge(Z1, Z2), K_Bulk^kappa(z1, z2))` with `Z_j = kappa h - 2 sqrt(h) z_j`;
/// the two agree as `h -> inf`.
pub fn bulk_from_edge_check(
    a: f64,
    s: f64,
    kappa: f64,
    z1: Complex64,
    z2: Complex64,
    h: f64,
) -> Result<(Complex64, Complex64)> {
    if !(h > 0.0) || !(kappa > 0.0) {
        return parameter("h and kappa must be positive");
    }
    let map = |z: Complex64| Complex64::new(kappa * h, 0.0) - z * (2.0 * h.sqrt());
    let edge = edge_weak(a, s, map(z1), map(z2))? * (4.0 * h);
    let bulk = bulk_weak_kappa(a, s, kappa, z1, z2)?;
    Ok((edge, bulk))
}

// ---------------------------------------------------------------------------
// global kernels

/// Joukowsky variables of a rescaled point `z` (with `zeta = z/sqrt(2 tau)`),
/// checked against `1 <= |omega| < v`.
fn global_omega(tau: f64, v: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let zeta = z / (2.0 * tau).sqrt();
    if (zeta - 1.0).norm() == 0.0 || (zeta + 1.0).norm() == 0.0 {
        return domain(format!("{z} maps to a focus, where the global kernel is 0/0"));
    }
    let (w, _) = joukowsky_inverse(zeta);
    if w.norm() >= v * (1.0 - 1e-14) {
        return domain(format!("{z} is not strictly inside the rescaled ellipse"));
    }
    Ok((zeta, w))
}

fn v_of_tau(tau: f64) -> f64 {
    ((1.0 + tau).sqrt() + (1.0 - tau).sqrt()) / (2.0 * tau).sqrt()
}

fn global_series(v: f64, term: impl Fn(f64) -> Complex64) -> Complex64 {
    let mut terms = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..GLOBAL_MAX_TERMS {
        let t = term(v.powi(-(2 * (1 + 2 * j as i32))));
        acc += t;
        terms.push(t);
        if t.norm() < 1e-15 * acc.norm() {
            break;
        }
    }
    compensated_sum(terms)
}

/// Global kernel of the unweighted (second-kind Chebyshev) gas on the
/// rescaled ellipse `x^2/(1+tau) + y^2/(1-tau) <= 1`.
pub fn global_u(tau: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    let v = v_of_tau(tau);
    let (_, w1) = global_omega(tau, v, z1)?;
    let (_, w2) = global_omega(tau, v, z2)?;
    let w2c = w2.conj();
    let f = |q: Complex64| q / ((ONE - q) * (ONE - q));
    let sum = global_series(v, |eta| {
        f(w1 * w2c * eta) - f(w1 / w2c * eta) - f(w2c / w1 * eta) + f((w1 * w2c).inv() * eta)
    });
    Ok(sum * (2.0 / (PI * tau)) / ((w1 - w1.inv()) * (w2c - w2c.inv())))
}

/// Global kernel of the first-kind Chebyshev gas.
pub fn global_t(tau: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    let v = v_of_tau(tau);
    let (s1, w1) = global_omega(tau, v, z1)?;
    let (s2, w2) = global_omega(tau, v, z2)?;
    let w2c = w2.conj();
    let f = |q: Complex64| q / ((ONE - q) * (ONE - q));
    let sum = global_series(v, |eta| {
        f(w1 * w2c * eta) + f(w1 / w2c * eta) + f(w2c / w1 * eta) + f((w1 * w2c).inv() * eta)
    });
    let pref = 1.0 / (2.0 * PI * tau) / ((ONE - s1 * s1).norm() * (ONE - s2 * s2).norm()).sqrt();
    Ok((sum + 1.0 / (2.0 * v.ln())) * pref)
}

/// Global kernel of the third-kind Chebyshev gas. With `p_j` a fixed square
/// root of `omega_j` and `F(x) = x (1 + x^2) / (1 - x^2)^2`,
/// `K = |1+zeta1|^{-1/2} |1+conj zeta2|^{-1/2} / (2 pi tau (p1 - 1/p1)(conj p2 - 1/conj p2))
///  sum_j [F(e p1 q2) - F(e p1/q2) - F(e q2/p1) + F(e/(p1 q2))]`, `q2 = conj p2`,
/// `e = v^{-(2j+1)}`.
pub fn global_v(tau: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    let v = v_of_tau(tau);
    let (s1, w1) = global_omega(tau, v, z1)?;
    let (s2, w2) = global_omega(tau, v, z2)?;
    let p1 = w1.sqrt();
    let q2 = w2.sqrt().conj();
    let f = |x: Complex64| {
        let x2 = x * x;
        x * (ONE + x2) / ((ONE - x2) * (ONE - x2))
    };
    let sum = global_series(v, |eta| {
        let e = eta.sqrt();
        f(p1 * q2 * e) - f(p1 / q2 * e) - f(q2 / p1 * e) + f((p1 * q2).inv() * e)
    });
    let pref = 1.0 / (2.0 * PI * tau) / ((ONE + s1).norm() * (ONE + s2).norm()).sqrt();
    Ok(sum * pref / ((p1 - p1.inv()) * (q2 - q2.inv())))
}

fn check_unit_disc(zs: [Complex64; 2], punctured: bool) -> Result<()> {
    for z in zs {
        let r = z.norm();
        if r >= 1.0 || (punctured && r == 0.0) {
            return domain(format!("{z} must lie in the open unit disc{}", if punctured { " minus 0" } else { "" }));
        }
    }
    Ok(())
}

/// `1 / (pi (1 - z1 conj z2)^2)`.
pub fn global_rot_u(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_unit_disc([z1, z2], false)?;
    let d = ONE - z1 * z2.conj();
    Ok((d * d).inv() / PI)
}

/// `z1 conj z2 / (pi |z1| |z2| (1 - z1 conj z2)^2)`.
pub fn global_rot_t(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_unit_disc([z1, z2], true)?;
    let q = z1 * z2.conj();
    Ok(q / ((ONE - q) * (ONE - q)) / (PI * z1.norm() * z2.norm()))
}

/// `(1 + z1 conj z2) / (2 pi sqrt(|z1| |z2|) (1 - z1 conj z2)^2)`.
pub fn global_rot_v(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_unit_disc([z1, z2], true)?;
    let q = z1 * z2.conj();
    Ok((ONE + q) / ((ONE - q) * (ONE - q)) / (2.0 * PI * (z1.norm() * z2.norm()).sqrt()))
}

// ---------------------------------------------------------------------------

/// A limiting kernel together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitKernelSpec {
    BulkWeak { a: f64, s: f64 },
    EdgeWeak { a: f64, s: f64 },
    EdgeWeakMinusSine { a: f64, s: f64 },
    EdgeWeakMinusCosine { a: f64, s: f64 },
    BulkStrong { a: f64 },
    EdgeStrong { a: f64 },
    Sine,
    Bessel { a: f64 },
    Ginibre,
    GlobalU { tau: f64 },
    GlobalT { tau: f64 },
    GlobalV { tau: f64 },
    GlobalRotU,
    GlobalRotT,
    GlobalRotV,
}

impl LimitKernelSpec {
    /// Evaluates the kernel. The sine and Bessel kernels use the real parts
    /// of their arguments.
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        use LimitKernelSpec::*;
        match *self {
            BulkWeak { a, s } => bulk_weak(a, s, z1, z2),
            EdgeWeak { a, s } => edge_weak(a, s, z1, z2),
            EdgeWeakMinusSine { a, s } => edge_weak_minus_sine(a, s, z1, z2),
            EdgeWeakMinusCosine { a, s } => edge_weak_minus_cosine(a, s, z1, z2),
            BulkStrong { a } => bulk_strong(a, z1, z2),
            EdgeStrong { a } => edge_strong(a, z1, z2),
            Sine => Ok(Complex64::new(sine_kernel(z1.re, z2.re), 0.0)),
            Bessel { a } => Ok(Complex64::new(bessel_kernel(a, z1.re, z2.re)?, 0.0)),
            Ginibre => Ok(ginibre_kernel(z1, z2)),
            GlobalU { tau } => global_u(tau, z1, z2),
            GlobalT { tau } => global_t(tau, z1, z2),
            GlobalV { tau } => global_v(tau, z1, z2),
            GlobalRotU => global_rot_u(z1, z2),
            GlobalRotT => global_rot_t(z1, z2),
            GlobalRotV => global_rot_v(z1, z2),
        }
    }

    pub fn name(&self) -> &'static str {
        use LimitKernelSpec::*;
        match self {
            BulkWeak { .. } => "bulk-weak",
            EdgeWeak { .. } => "edge-weak",
            EdgeWeakMinusSine { .. } => "edge-weak-minus-sine",
            EdgeWeakMinusCosine { .. } => "edge-weak-minus-cosine",
            BulkStrong { .. } => "bulk-strong",
            EdgeStrong { .. } => "edge-strong",
            Sine => "sine",
            Bessel { .. } => "bessel",
            Ginibre => "ginibre",
            GlobalU { .. } => "global-u",
            GlobalT { .. } => "global-t",
            GlobalV { .. } => "global-v",
            GlobalRotU => "global-rot-u",
            GlobalRotT => "global-rot-t",
            GlobalRotV => "global-rot-v",
        }
    }
}
