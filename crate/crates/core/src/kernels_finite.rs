//! Finite-`N` correlation kernels of the five gases, and the truncated-unitary
//! and elliptic-Ginibre kernels that appear as their limits.
//!
//! `K_N(z1, z2) = sqrt(w(z1) w(z2)) sum_{n<N} P_n(z1) P_n(conj z2) / g_n`,
//! where `P_n` are the family's standard polynomials and `g_n` their squared
//! norms. Terms are carried as mantissa/log-scale pairs and aligned to the
//! largest scale before a compensated sum.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, parameter, Error, Result};
use crate::geometry::{is_singular, ln_weight_unchecked, EllipseGeometry, GasFamily};
use crate::polynomials::{family_sequence, ln_family_norms, ScaledValue};
use crate::quadrature::compensated_sum;

/// The kernel of one gas at fixed `N`.
#[derive(Debug, Clone)]
pub struct FiniteKernel {
    gas: GasFamily,
    geometry: EllipseGeometry,
    n: usize,
    ln_norms: Vec<f64>,
}

/// Polynomial values and `ln sqrt w` at one point, reusable across kernel
/// entries that share the point.
#[derive(Debug, Clone)]
pub struct PointTable {
    pub z: Complex64,
    values: Vec<ScaledValue>,
    ln_sqrt_w: f64,
}

impl FiniteKernel {
    pub fn new(gas: GasFamily, geometry: EllipseGeometry, n: usize) -> Result<Self> {
        gas.validate()?;
        if n == 0 {
            return parameter("N must be at least 1");
        }
        let ln_norms = ln_family_norms(&gas, &geometry, n);
        Ok(Self { gas, geometry, n, ln_norms })
    }

    pub fn gas(&self) -> &GasFamily {
        &self.gas
    }

    pub fn geometry(&self) -> &EllipseGeometry {
        &self.geometry
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ln g_n` of the standard polynomials, `n < N`.
    pub fn ln_norms(&self) -> &[f64] {
        &self.ln_norms
    }

    fn values(&self, z: Complex64) -> Vec<ScaledValue> {
        family_sequence(&self.gas.poly_family(), self.n, z)
    }

    /// Tabulates a point for repeated use. Fails outside the ellipse and at
    /// weight singularities.
    pub fn table(&self, z: Complex64) -> Result<PointTable> {
        if !self.geometry.contains(z) {
            return domain(format!("{z} lies outside the ellipse"));
        }
        let lw = ln_weight_unchecked(&self.gas, &self.geometry, z);
        if is_singular(&self.gas, z) || lw == f64::INFINITY {
            return Err(Error::Singular(format!("weight of {} is infinite at {z}", self.gas.name())));
        }
        Ok(PointTable { z, values: self.values(z), ln_sqrt_w: 0.5 * lw })
    }

    /// `sum_n P_n(z1) conj(P_n(z2)) / g_n` as a scaled value, for any points.
    fn reduced_sum(&self, v1: &[ScaledValue], v2: &[ScaledValue]) -> ScaledValue {
        let mut top = f64::NEG_INFINITY;
        let scales: Vec<f64> = (0..self.n)
            .map(|k| {
                let s = if v1[k].is_zero() || v2[k].is_zero() {
                    f64::NEG_INFINITY
                } else {
                    v1[k].log_scale + v2[k].log_scale - self.ln_norms[k]
                };
                top = top.max(s);
                s
            })
            .collect();
        if top == f64::NEG_INFINITY {
            return ScaledValue::zero();
        }
        let sum = compensated_sum((0..self.n).filter(|&k| scales[k].is_finite()).map(|k| {
            v1[k].mantissa * v2[k].mantissa.conj() * (scales[k] - top).exp()
        }));
        ScaledValue::from_parts(sum, top)
    }

    /// The kernel without the weight factors, `sum_n P_n(z1) P_n(conj z2) / g_n`.
    /// Defined for all complex points.
    pub fn reduced(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.reduced_sum(&self.values(z1), &self.values(z2)).value()
    }

    /// Kernel entry from two tabulated points.
    pub fn eval_tables(&self, t1: &PointTable, t2: &PointTable) -> Complex64 {
        if t1.ln_sqrt_w == f64::NEG_INFINITY || t2.ln_sqrt_w == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        self.reduced_sum(&t1.values, &t2.values).scale_ln(t1.ln_sqrt_w + t2.ln_sqrt_w).value()
    }

    /// `K_N(z1, z2)`.
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        let t1 = self.table(z1)?;
        if z1 == z2 {
            return Ok(self.eval_tables(&t1, &t1));
        }
        let t2 = self.table(z2)?;
        Ok(self.eval_tables(&t1, &t2))
    }

    /// The one-point density `K_N(z, z)`.
    pub fn density(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval(z, z)?.re)
    }
}

/// `K_N(z1, z2)` for a gas; see [`FiniteKernel::eval`].
pub fn kernel_eval(k: &FiniteKernel, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    k.eval(z1, z2)
}

fn check_disc(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        domain(format!("{z} must lie in the open unit disc"))
    }
}

/// Kernel of truncated unitary matrices,
/// `(1-|z1|^2)^{a/2} (1-|z2|^2)^{a/2} sum_{n<N} Gamma(n+a+2)/(pi Gamma(a+1) n!) (z1 conj z2)^n`.
pub fn kernel_truncated(a: f64, n: usize, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    if !(a > -1.0) {
        return parameter(format!("a = {a} must exceed -1"));
    }
    check_disc(z1)?;
    check_disc(z2)?;
    let q = z1 * z2.conj();
    let mut t = Complex64::new((a + 1.0) / PI, 0.0);
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            let kf = k as f64;
            t = t * q * ((kf + a + 1.0) / kf);
        }
        terms.push(t);
    }
    let pref = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).powf(0.5 * a);
    Ok(compensated_sum(terms) * pref)
}

/// The `N -> inf` limit of [`kernel_truncated`],
/// `(a+1)/pi (1-|z1|^2)^{a/2} (1-|z2|^2)^{a/2} / (1 - z1 conj z2)^{a+2}`.
pub fn kernel_truncated_limit(a: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    if !(a > -1.0) {
        return parameter(format!("a = {a} must exceed -1"));
    }
    check_disc(z1)?;
    check_disc(z2)?;
    let pref = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).powf(0.5 * a) * (a + 1.0) / PI;
    Ok((Complex64::new(1.0, 0.0) - z1 * z2.conj()).powf(-(a + 2.0)) * pref)
}

/// `(tau/2)^{n/2} H_n(z / sqrt(2 tau)) / sqrt(n!)` for `n < count`.
fn normalised_hermite(tau: f64, count: usize, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for n in 0..count {
        out.push(cur);
        let nf = n as f64;
        let next = (z * cur - prev * (tau * nf.sqrt())) / (nf + 1.0).sqrt();
        prev = cur;
        cur = next;
    }
    out
}

/// Kernel of the elliptic Ginibre ensemble with `N` particles.
pub fn kernel_elliptic_ginibre(tau: f64, n: usize, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    if !(tau > 0.0 && tau < 1.0) {
        return parameter(format!("tau = {tau} must lie in (0, 1)"));
    }
    let gauss = |z: Complex64| z.re * z.re / (2.0 * (1.0 + tau)) + z.im * z.im / (2.0 * (1.0 - tau));
    let h1 = normalised_hermite(tau, n, z1);
    let h2 = normalised_hermite(tau, n, z2);
    let sum = compensated_sum(h1.iter().zip(&h2).map(|(a, b)| a * b.conj()));
    let pref = (-gauss(z1) - gauss(z2)).exp() / (PI * (1.0 - tau * tau).sqrt());
    Ok(sum * pref)
}
