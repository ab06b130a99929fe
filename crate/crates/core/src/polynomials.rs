//! Gegenbauer, Jacobi and Chebyshev polynomials at complex argument, their
//! monic forms, and the squared norms of every gas family.
//!
//! Values are produced by forward three-term recurrences. The norms involve
//! `C_n^{(a+1)}` at points outside `[-1, 1]`, which grow geometrically, so
//! everything is carried as [`ScaledValue`].

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{EllipseGeometry, GasFamily, PolyFamily};
use crate::quadrature::{compensated_sum, WeightedRule};
use crate::specialfns::lgam;

/// `mantissa * exp(log_scale)` with `0.5 <= |mantissa| < 2`, or exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledValue {
    pub fn zero() -> Self {
        Self { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0 }
    }

    pub fn one() -> Self {
        Self { mantissa: Complex64::new(1.0, 0.0), log_scale: 0.0 }
    }

    pub fn new(value: Complex64) -> Self {
        Self::from_parts(value, 0.0)
    }

    /// Normalises `mantissa * exp(log_scale)`.
    pub fn from_parts(mantissa: Complex64, log_scale: f64) -> Self {
        let r = mantissa.norm();
        if r == 0.0 {
            return Self::zero();
        }
        let k = r.log2().floor();
        let mut m = mantissa * (-k).exp2();
        let mut k = k;
        // guard against log2 rounding at the interval ends
        let r = m.norm();
        if r >= 2.0 {
            m *= 0.5;
            k += 1.0;
        } else if r < 0.5 {
            m *= 2.0;
            k -= 1.0;
        }
        Self { mantissa: m, log_scale: log_scale + k * LN_2 }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.norm() == 0.0
    }

    /// The plain value; overflows to infinity when the scale is too large.
    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            return self.mantissa;
        }
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|` (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.norm().ln() + self.log_scale
    }

    pub fn conj(&self) -> Self {
        Self { mantissa: self.mantissa.conj(), log_scale: self.log_scale }
    }

    pub fn mul(&self, o: &ScaledValue) -> Self {
        Self::from_parts(self.mantissa * o.mantissa, self.log_scale + o.log_scale)
    }

    /// Multiplies by `exp(ln_factor)`.
    pub fn scale_ln(&self, ln_factor: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self { mantissa: self.mantissa, log_scale: self.log_scale + ln_factor }
    }
}

/// Forward recurrence `p_n = A_n p_{n-1} - B_n p_{n-2}` with a shared scale.
fn run_recurrence(
    count: usize,
    p0: Complex64,
    p1: Complex64,
    mut step: impl FnMut(usize, Complex64, Complex64) -> Complex64,
) -> Vec<ScaledValue> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(ScaledValue::new(p0));
    if count == 1 {
        return out;
    }
    out.push(ScaledValue::new(p1));
    let (mut prev, mut cur) = (p0, p1);
    let mut scale = 0.0f64;
    for n in 2..count {
        let next = step(n, cur, prev);
        prev = cur;
        cur = next;
        out.push(ScaledValue::from_parts(cur, scale));
        let m = cur.norm().max(prev.norm());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            let k = m.log2().floor();
            let f = (-k).exp2();
            prev *= f;
            cur *= f;
            scale += k * LN_2;
        }
    }
    out
}

/// `C_0^{(a+1)}(z), ..., C_{count-1}^{(a+1)}(z)`.
pub fn gegenbauer_sequence(count: usize, a: f64, z: Complex64) -> Vec<ScaledValue> {
    let lam = a + 1.0;
    run_recurrence(count, Complex64::new(1.0, 0.0), z * (2.0 * lam), |n, c1, c2| {
        let nf = n as f64;
        (c1 * z * (2.0 * (nf + lam - 1.0)) - c2 * (nf + 2.0 * lam - 2.0)) / nf
    })
}

/// `C_n^{(a+1)}(z)`.
pub fn gegenbauer(n: usize, a: f64, z: Complex64) -> ScaledValue {
    gegenbauer_sequence(n + 1, a, z)[n]
}

/// `P_0^{(alpha,gamma)}(z), ..., P_{count-1}^{(alpha,gamma)}(z)`.
pub fn jacobi_sequence(count: usize, alpha: f64, gamma: f64, z: Complex64) -> Vec<ScaledValue> {
    let ab = alpha + gamma;
    let p1 = (z - 1.0) * (0.5 * (ab + 2.0)) + (alpha + 1.0);
    run_recurrence(count, Complex64::new(1.0, 0.0), p1, |n, q1, q2| {
        let nf = n as f64;
        let c = 2.0 * nf + ab;
        let lhs = 2.0 * nf * (nf + ab) * (c - 2.0);
        let a1 = (c - 1.0) * c * (c - 2.0);
        let a0 = (c - 1.0) * (alpha * alpha - gamma * gamma);
        let b = 2.0 * (nf + alpha - 1.0) * (nf + gamma - 1.0) * c;
        (q1 * (z * a1 + a0) - q2 * b) / lhs
    })
}

/// `P_n^{(alpha,gamma)}(z)`.
pub fn jacobi(n: usize, alpha: f64, gamma: f64, z: Complex64) -> ScaledValue {
    jacobi_sequence(n + 1, alpha, gamma, z)[n]
}

fn chebyshev_sequence(count: usize, p1: Complex64, z: Complex64) -> Vec<ScaledValue> {
    run_recurrence(count, Complex64::new(1.0, 0.0), p1, |_, c1, c2| c1 * z * 2.0 - c2)
}

/// `T_0(z), ..., T_{count-1}(z)`.
pub fn chebyshev_t_sequence(count: usize, z: Complex64) -> Vec<ScaledValue> {
    chebyshev_sequence(count, z, z)
}

/// `U_0(z), ..., U_{count-1}(z)`.
pub fn chebyshev_u_sequence(count: usize, z: Complex64) -> Vec<ScaledValue> {
    chebyshev_sequence(count, z * 2.0, z)
}

/// Third-kind polynomials `V_n = (2n+1) P_n^{(1/2,-1/2)} / P_n^{(1/2,-1/2)}(1)`.
pub fn chebyshev_v_sequence(count: usize, z: Complex64) -> Vec<ScaledValue> {
    chebyshev_sequence(count, z * 2.0 + 1.0, z)
}

pub fn chebyshev_t(n: usize, z: Complex64) -> Complex64 {
    chebyshev_t_sequence(n + 1, z)[n].value()
}

pub fn chebyshev_u(n: usize, z: Complex64) -> Complex64 {
    chebyshev_u_sequence(n + 1, z)[n].value()
}

pub fn chebyshev_v(n: usize, z: Complex64) -> Complex64 {
    chebyshev_v_sequence(n + 1, z)[n].value()
}

/// `T_n` at `zeta = (omega + 1/omega)/2`.
pub fn chebyshev_t_joukowsky(n: usize, omega: Complex64) -> Complex64 {
    let p = omega.powi(n as i32);
    (p + p.inv()) * 0.5
}

/// `U_n` at `zeta = (omega + 1/omega)/2`, for `omega != ±1`.
pub fn chebyshev_u_joukowsky(n: usize, omega: Complex64) -> Complex64 {
    let p = omega.powi(n as i32 + 1);
    (p - p.inv()) / (omega - omega.inv())
}

/// `V_n` at `zeta = (omega + 1/omega)/2`, for `omega != 1`, through any
/// fixed square root `p` of `omega`: `(p^{2n+1} - p^{-2n-1}) / (p - 1/p)`.
pub fn chebyshev_v_joukowsky(n: usize, omega: Complex64) -> Complex64 {
    let p = omega.sqrt();
    let q = p.powi(2 * n as i32 + 1);
    (q - q.inv()) / (p - p.inv())
}

/// Values of the family's standard polynomials for degrees `0..count`.
pub fn family_sequence(family: &PolyFamily, count: usize, z: Complex64) -> Vec<ScaledValue> {
    match *family {
        PolyFamily::Gegenbauer { a } => gegenbauer_sequence(count, a, z),
        PolyFamily::JacobiAsym { a, plus } => {
            jacobi_sequence(count, a + 0.5, if plus { 0.5 } else { -0.5 }, z)
        }
        PolyFamily::ChebyshevT => chebyshev_t_sequence(count, z),
        PolyFamily::ChebyshevU => chebyshev_u_sequence(count, z),
        PolyFamily::ChebyshevV => chebyshev_v_sequence(count, z),
    }
}

/// `ln` of the coefficient of `z^n` in the family's standard polynomial.
pub fn ln_leading_coefficient(family: &PolyFamily, n: usize) -> f64 {
    let nf = n as f64;
    match *family {
        PolyFamily::Gegenbauer { a } => nf * LN_2 + lgam(nf + a + 1.0) - lgam(a + 1.0) - lgam(nf + 1.0),
        PolyFamily::JacobiAsym { a, plus } => {
            let ab1 = if plus { a + 2.0 } else { a + 1.0 };
            lgam(2.0 * nf + ab1) - nf * LN_2 - lgam(nf + 1.0) - lgam(nf + ab1)
        }
        PolyFamily::ChebyshevT => {
            if n == 0 {
                0.0
            } else {
                (nf - 1.0) * LN_2
            }
        }
        PolyFamily::ChebyshevU | PolyFamily::ChebyshevV => nf * LN_2,
    }
}

/// Monic polynomial `M_n(z) = z^n + ...` of the family.
pub fn monic_value(family: &PolyFamily, n: usize, z: Complex64) -> ScaledValue {
    family_sequence(family, n + 1, z)[n].scale_ln(-ln_leading_coefficient(family, n))
}

/// `ln` of the squared norms `int_E w |P_n|^2 d^2z` of the gas's standard
/// polynomials `P_n`, for `n < count`.
pub fn ln_family_norms(gas: &GasFamily, g: &EllipseGeometry, count: usize) -> Vec<f64> {
    let sx = g.semi_x();
    let sy = g.semi_y();
    let real = |v: &ScaledValue| v.ln_abs();
    match *gas {
        GasFamily::Gegenbauer { a } => {
            let inv_tau = Complex64::new(1.0 / g.tau(), 0.0);
            let c = gegenbauer_sequence(count, a, inv_tau);
            (0..count)
                .map(|n| (sx * sy * PI / (n as f64 + a + 1.0)).ln() + real(&c[n]))
                .collect()
        }
        GasFamily::JacobiPlus { a } => {
            let c = gegenbauer_sequence(2 * count, a, Complex64::new(sx, 0.0));
            (0..count)
                .map(|n| {
                    let nf = n as f64;
                    (4.0 * sy).ln() + 2.0 * lgam(nf + 1.5) + 2.0 * lgam(a + 1.0)
                        - (2.0 * nf + a + 2.0).ln()
                        - 2.0 * lgam(nf + a + 2.0)
                        + real(&c[2 * n + 1])
                })
                .collect()
        }
        GasFamily::JacobiMinus { a } => {
            let c = gegenbauer_sequence(2 * count, a, Complex64::new(sx, 0.0));
            (0..count)
                .map(|n| {
                    let nf = n as f64;
                    (2.0 * sy).ln() + 2.0 * lgam(nf + 0.5) + 2.0 * lgam(a + 1.0)
                        - (2.0 * nf + a + 1.0).ln()
                        - 2.0 * lgam(nf + a + 1.0)
                        + real(&c[2 * n])
                })
                .collect()
        }
        GasFamily::ChebyshevT => {
            let u = chebyshev_u_sequence(2 * count, Complex64::new(sx, 0.0));
            (0..count)
                .map(|n| {
                    if n == 0 {
                        (2.0 * PI * g.xi0()).ln()
                    } else {
                        (PI / (2.0 * n as f64) * sy).ln() + real(&u[2 * n - 1])
                    }
                })
                .collect()
        }
        GasFamily::ChebyshevV => {
            let u = chebyshev_u_sequence(2 * count + 1, Complex64::new(sx, 0.0));
            (0..count)
                .map(|n| (2.0 * PI / (2.0 * n as f64 + 1.0) * sy).ln() + real(&u[2 * n]))
                .collect()
        }
    }
}

/// `ln h_n` of the monic polynomials of the gas.
pub fn ln_squared_norm(gas: &GasFamily, g: &EllipseGeometry, n: usize) -> f64 {
    let fam = gas.poly_family();
    ln_family_norms(gas, g, n + 1)[n] - 2.0 * ln_leading_coefficient(&fam, n)
}

/// `h_n = int_E w |M_n|^2 d^2z` of the monic polynomials.
pub fn squared_norm(gas: &GasFamily, g: &EllipseGeometry, n: usize) -> f64 {
    ln_squared_norm(gas, g, n).exp()
}

/// Gram matrix of the orthonormalised monic polynomials under a quadrature
/// rule, with its worst deviations from the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    /// `<M_m, M_n> / sqrt(h_m h_n)` for `m, n <= max_degree`, row-major.
    pub gram: Vec<Complex64>,
    pub max_degree: usize,
    pub max_off_diagonal: f64,
    pub max_diagonal_error: f64,
}

/// Audits orthogonality of degrees `0..=max_degree` against the closed-form
/// norms, integrating with `rule`.
pub fn orthogonality_audit(
    gas: &GasFamily,
    g: &EllipseGeometry,
    max_degree: usize,
    rule: &WeightedRule,
) -> Result<OrthogonalityReport> {
    gas.validate()?;
    let count = max_degree + 1;
    let fam = gas.poly_family();
    let shift: Vec<f64> = (0..count)
        .map(|n| -ln_leading_coefficient(&fam, n) - 0.5 * ln_squared_norm(gas, g, n))
        .collect();
    let rows: Vec<Vec<Complex64>> = rule
        .nodes
        .par_iter()
        .map(|&z| {
            family_sequence(&fam, count, z)
                .iter()
                .zip(&shift)
                .map(|(v, &s)| v.scale_ln(s).value())
                .collect()
        })
        .collect();
    let mut gram = Vec::with_capacity(count * count);
    for m in 0..count {
        for n in 0..count {
            let terms = rows.iter().zip(&rule.weights).map(|(r, &w)| r[m] * r[n].conj() * w);
            gram.push(compensated_sum(terms));
        }
    }
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for m in 0..count {
        for n in 0..count {
            let v = gram[m * count + n];
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Evaluation(format!("inner product ({m}, {n}) is not finite")));
            }
            if m == n {
                diag = diag.max((v - 1.0).norm());
            } else {
                off = off.max(v.norm());
            }
        }
    }
    Ok(OrthogonalityReport { gram, max_degree, max_off_diagonal: off, max_diagonal_error: diag })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn scaled_value_normalisation() {
        for &v in &[c(3.0, 4.0), c(1e-300, 0.0), c(-0.5, 0.0), c(1.999, 0.0), c(0.0, 7e200)] {
            let s = ScaledValue::new(v);
            let m = s.mantissa.norm();
            assert!((0.5..2.0).contains(&m));
            assert!((s.value() - v).norm() <= 1e-12 * v.norm());
        }
        let z = ScaledValue::new(c(0.0, 0.0));
        assert!(z.is_zero() && z.log_scale == 0.0);
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 1.0, c(3.0, 2.0)).value(), c(1.0, 0.0));
        assert!((gegenbauer(1, 1.0, c(0.5, 0.0)).value() - c(2.0, 0.0)).norm() < 1e-15);
        assert!((gegenbauer(2, 0.0, c(1.0, 0.0)).value() - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn large_degree_does_not_overflow() {
        let s = gegenbauer_sequence(100_001, 0.5, c(2.0, 0.0));
        let last = s[100_000];
        assert!(last.ln_abs().is_finite() && last.ln_abs() > 1e5);
        // C^{(1)}_n(2) = U_n(2) = ((2+sqrt3)^{n+1} - (2-sqrt3)^{n+1}) / (2 sqrt3)
        let u = gegenbauer(2000, 0.0, c(2.0, 0.0)).ln_abs();
        let exact = 2001.0 * (2.0 + 3f64.sqrt()).ln() - (2.0 * 3f64.sqrt()).ln();
        assert!((u - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, 0.3, -0.5, c(0.2, 0.9)).value(), c(1.0, 0.0));
        let l = jacobi(3, 1.5, 0.5, c(-0.4, 0.0)).value();
        let r = jacobi(3, 0.5, 1.5, c(0.4, 0.0)).value();
        assert!((l + r).norm() < 1e-14);
    }

    #[test]
    fn chebyshev_examples() {
        for n in 0..=6 {
            assert!((chebyshev_u(n, c(1.0, 0.0)).re - (n as f64 + 1.0)).abs() < 1e-13);
        }
        assert!((chebyshev_t(3, c(0.5, 0.0)).re + 1.0).abs() < 1e-14);
        assert_eq!(chebyshev_v(0, c(0.3, 0.1)), c(1.0, 0.0));
        // T_3(2) = 26
        assert!((chebyshev_t(3, c(2.0, 0.0)).re - 26.0).abs() < 1e-12);
    }

    #[test]
    fn monic_examples() {
        let g0 = PolyFamily::Gegenbauer { a: 0.0 };
        let z = c(0.37, -1.2);
        assert!((monic_value(&g0, 1, z).value() - z).norm() < 1e-15);
        let t = PolyFamily::ChebyshevT;
        assert!((monic_value(&t, 3, c(2.0, 0.0)).value().re - 6.5).abs() < 1e-13);
        // C^{(2)}_2(z) = 12 z^2 - 2 -> monic z^2 - 1/6 = z^2 - (a+1)/(4(a+2)) at a = 1
        let g1 = PolyFamily::Gegenbauer { a: 1.0 };
        assert!((monic_value(&g1, 2, c(0.0, 0.0)).value().re + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn gegenbauer_norm_examples() {
        let g = EllipseGeometry::new(0.6).unwrap();
        let h0 = squared_norm(&GasFamily::Gegenbauer { a: 0.0 }, &g, 0);
        assert!((h0 - 2.0 * PI / 3.0).abs() < 1e-13);
        for &(a, t) in &[(1.0, 0.3), (2.5, 0.8)] {
            let g = EllipseGeometry::new(t).unwrap();
            let h0 = squared_norm(&GasFamily::Gegenbauer { a }, &g, 0);
            let exact = PI * (1.0 - t * t).sqrt() / (2.0 * t * (a + 1.0));
            assert!((h0 - exact).abs() < 1e-13 * exact);
        }
        let g = EllipseGeometry::new(0.5).unwrap();
        let ht = squared_norm(&GasFamily::ChebyshevT, &g, 0);
        assert!((ht - 2.0 * PI * g.v().ln()).abs() < 1e-13);
    }
}
