//! Quadrature over the ellipse and over the scaling variables of the limiting
//! kernels.
//!
//! Two product rules cover the ellipse. The Gegenbauer weight is a power of
//! `1 - rho^2` in the affinely mapped disc, so there the rule is Gauss–Jacobi
//! in `t = r^2` times the periodic trapezoid rule in the angle; it integrates
//! `w` times any polynomial in `z, conj z` of modest degree exactly. The other
//! weights carry focal singularities and are integrated in elliptic
//! coordinates `z = cosh(xi + i eta)`, whose Jacobian `|1 - z^2|` cancels
//! them; the wall then sits at `xi = xi0`, where Gauss–Jacobi absorbs the
//! `(xi0 - xi)^a` behaviour.
//!
//! Samples may be evaluated in parallel; sums are always taken sequentially
//! in node order, so results do not depend on the thread count.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{GaussJacobi, GaussLegendre};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{parameter, Error, Result};
use crate::geometry::{EllipseGeometry, GasFamily};
use crate::specialfns::lgam;

/// Node counts of the product rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Jacobi nodes across the wall (`t = r^2` or `xi`).
    pub radial_nodes: usize,
    /// Trapezoid nodes in the angle.
    pub angular_nodes: usize,
    /// Nodes for the one-dimensional `c` and `t` integrals.
    pub c_nodes: usize,
    /// Exponent of the vanishing (or blowing up) factor at the wall, used by
    /// [`integrate_ellipse`].
    pub singularity_exponent: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { radial_nodes: 96, angular_nodes: 128, c_nodes: 64, singularity_exponent: 0.0 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < 4 || self.angular_nodes < 4 || self.c_nodes < 4 {
            return parameter("quadrature node counts must be at least 4");
        }
        if !(self.singularity_exponent > -1.0) || !self.singularity_exponent.is_finite() {
            return parameter("singularity exponent must be finite and > -1");
        }
        Ok(())
    }

    pub fn with_exponent(mut self, e: f64) -> Self {
        self.singularity_exponent = e;
        self
    }

    /// The same spec with every node count doubled.
    pub fn doubled(&self) -> Self {
        Self {
            radial_nodes: 2 * self.radial_nodes,
            angular_nodes: 2 * self.angular_nodes,
            c_nodes: 2 * self.c_nodes,
            singularity_exponent: self.singularity_exponent,
        }
    }
}

/// A node/weight list on `[0, 1]`.
pub type Rule1d = Arc<Vec<(f64, f64)>>;

type RuleKey = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<RuleKey, Rule1d>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Rule1d>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss rule on `[0, 1]` for the weight `(1 - x)^alpha x^beta`.
///
/// The node count is rounded up to an even number, and the weights are
/// rescaled to reproduce the exact moment `B(alpha + 1, beta + 1)`.
pub fn gauss_jacobi_unit(n: usize, alpha: f64, beta: f64) -> Result<Rule1d> {
    if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return parameter(format!("Gauss–Jacobi exponents ({alpha}, {beta}) must exceed -1"));
    }
    let n = (n.max(2) + 1) & !1;
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(r) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let mut pairs: Vec<(f64, f64)> = if alpha == 0.0 && beta == 0.0 {
        GaussLegendre::new(n)
            .map_err(|e| Error::Parameter(e.to_string()))?
            .as_node_weight_pairs()
            .iter()
            .map(|&(t, w)| (0.5 * (t + 1.0), 0.5 * w))
            .collect()
    } else {
        // (1 - t)^alpha (1 + t)^beta on [-1, 1]
        GaussJacobi::new(n, alpha, beta)
            .map_err(|e| Error::Parameter(e.to_string()))?
            .as_node_weight_pairs()
            .iter()
            .map(|&(t, w)| (0.5 * (t + 1.0), w))
            .collect()
    };
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let exact = (lgam(alpha + 1.0) + lgam(beta + 1.0) - lgam(alpha + beta + 2.0)).exp();
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let f = exact / total;
    for p in &mut pairs {
        p.1 *= f;
    }
    let rule = Arc::new(pairs);
    cache().lock().expect("rule cache poisoned").insert(key, rule.clone());
    Ok(rule)
}

/// Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Rule1d {
    gauss_jacobi_unit(n, 0.0, 0.0).expect("Legendre exponents are valid")
}

/// Sequential compensated (Neumaier) sum of complex samples.
pub fn compensated_sum(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for v in values {
        for (s, c, x) in [(&mut sr, &mut cr, v.re), (&mut si, &mut ci, v.im)] {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *c += (*s - t) + x;
            } else {
                *c += (x - t) + *s;
            }
            *s = t;
        }
    }
    Complex64::new(sr + cr, si + ci)
}

fn check_finite(v: Complex64, what: &str, at: impl std::fmt::Display) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("{what} is not finite at {at}")))
    }
}

/// Nodes `z_k` and weights `W_k` with `sum_k W_k g(z_k) ≈ int_E w g d^2z` for
/// the weight `w` of a gas and smooth `g`.
#[derive(Debug, Clone)]
pub struct WeightedRule {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<f64>,
}

impl WeightedRule {
    pub fn new(gas: &GasFamily, g: &EllipseGeometry, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        gas.validate()?;
        match *gas {
            GasFamily::Gegenbauer { a } => Self::disc(a, g, spec),
            _ => Self::elliptic(gas, g, spec),
        }
    }

    fn disc(a: f64, g: &EllipseGeometry, spec: &QuadratureSpec) -> Result<Self> {
        let radial = gauss_jacobi_unit(spec.radial_nodes, a, 0.0)?;
        let m = spec.angular_nodes;
        let dtheta = 2.0 * PI / m as f64;
        let jac = 0.5 * g.semi_x() * g.semi_y() * dtheta;
        let mut nodes = Vec::with_capacity(radial.len() * m);
        let mut weights = Vec::with_capacity(radial.len() * m);
        for &(t, wt) in radial.iter() {
            let r = t.sqrt();
            for j in 0..m {
                let th = dtheta * (j as f64 + 0.5);
                nodes.push(Complex64::new(g.semi_x() * r * th.cos(), g.semi_y() * r * th.sin()));
                weights.push(jac * wt);
            }
        }
        Ok(Self { nodes, weights })
    }

    fn elliptic(gas: &GasFamily, g: &EllipseGeometry, spec: &QuadratureSpec) -> Result<Self> {
        let a = gas.a();
        let xi0 = g.xi0();
        let ch0 = xi0.cosh();
        let s0sq = g.semi_y() * g.semi_y();
        let radial = gauss_jacobi_unit(spec.radial_nodes, a, 0.0)?;
        let m = spec.angular_nodes;
        let deta = 2.0 * PI / m as f64;
        let scale = xi0.powf(a + 1.0) * deta;
        let mut nodes = Vec::with_capacity(radial.len() * m);
        let mut weights = Vec::with_capacity(radial.len() * m);
        for &(x, wx) in radial.iter() {
            let xi = xi0 * x;
            let d = xi0 - xi;
            // (cosh xi0 - cosh xi) / (xi0 - xi)
            let h = d * 0.5;
            let r = 2.0 * (0.5 * (xi0 + xi)).sinh() * if h == 0.0 { 0.5 } else { h.sinh() / d };
            let chx = xi.cosh();
            for j in 0..m {
                let eta = deta * (j as f64 + 0.5);
                let (se, ce) = eta.sin_cos();
                let z = Complex64::new(chx * ce, xi.sinh() * se);
                // (1 - mu)^a / (xi0 - xi)^a
                let wall = || (r * (ch0 - ce) / s0sq).powf(a);
                let f = match *gas {
                    GasFamily::JacobiPlus { .. } => wall() * (chx * chx - ce * ce),
                    GasFamily::JacobiMinus { .. } => wall() * (chx - ce),
                    GasFamily::ChebyshevT => 1.0,
                    GasFamily::ChebyshevV => chx - ce,
                    GasFamily::Gegenbauer { .. } => unreachable!("disc layout"),
                };
                nodes.push(z);
                weights.push(scale * wx * f);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_E w f d^2z`.
    pub fn integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        let vals: Vec<Complex64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(&z, &w)| f(z) * w)
            .collect();
        for (v, z) in vals.iter().zip(&self.nodes) {
            check_finite(*v, "integrand", z)?;
        }
        Ok(compensated_sum(vals))
    }
}

/// `int_E f d^2z` for an integrand that may behave like
/// `dist(z, wall)^{spec.singularity_exponent}` at the wall and like
/// `1/|1 ± z|` at the foci.
pub fn integrate_ellipse<F>(f: F, g: &EllipseGeometry, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    spec.validate()?;
    let e = spec.singularity_exponent;
    let xi0 = g.xi0();
    let radial = gauss_jacobi_unit(spec.radial_nodes, e, 0.0)?;
    let m = spec.angular_nodes;
    let deta = 2.0 * PI / m as f64;
    let scale = xi0.powf(e + 1.0) * deta;
    let samples: Vec<(Complex64, f64, f64)> = radial
        .iter()
        .flat_map(|&(x, wx)| {
            (0..m).map(move |j| {
                let xi = xi0 * x;
                let eta = deta * (j as f64 + 0.5);
                let z = Complex64::new(xi.cosh() * eta.cos(), xi.sinh() * eta.sin());
                let jac = xi.sinh().powi(2) + eta.sin().powi(2);
                (z, scale * wx * jac / (xi0 - xi).powf(e), xi)
            })
        })
        .collect();
    let vals: Vec<Complex64> = samples.par_iter().map(|&(z, w, _)| f(z) * w).collect();
    for (v, s) in vals.iter().zip(&samples) {
        check_finite(*v, "integrand", s.0)?;
    }
    Ok(compensated_sum(vals))
}

/// Domain of a one-dimensional integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CDomain {
    /// `[0, 1]`.
    UnitInterval,
    /// `[0, inf)`, searched up to `t_max`.
    HalfLine { t_max: f64 },
}

/// `int_0^1 c^beta g(c) dc` with a Gauss–Jacobi rule of `n` nodes.
pub fn integrate_unit_jacobi<F>(g: F, n: usize, beta: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let rule = gauss_jacobi_unit(n, 0.0, beta)?;
    let mut vals = Vec::with_capacity(rule.len());
    for &(c, w) in rule.iter() {
        vals.push(check_finite(g(c), "integrand", c)? * w);
    }
    Ok(compensated_sum(vals))
}

/// `int_lo^hi g` by Gauss–Legendre on panels of width at most `panel`.
pub fn integrate_panels<F>(g: F, lo: f64, hi: f64, panel: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let rule = gauss_legendre_unit(nodes);
    let k = ((hi - lo) / panel).ceil().max(1.0) as usize;
    let h = (hi - lo) / k as f64;
    let mut vals = Vec::with_capacity(k * rule.len());
    for p in 0..k {
        let a = lo + h * p as f64;
        for &(x, w) in rule.iter() {
            let t = a + h * x;
            vals.push(check_finite(g(t), "integrand", t)? * (w * h));
        }
    }
    Ok(compensated_sum(vals))
}

/// `int g(c) dc` over the unit interval or the half line.
///
/// On the half line unit-width panels are added until two consecutive panels
/// are negligible against the running total; if that has not happened by
/// `t_max` the tail is declared non-convergent.
pub fn integrate_c<F>(g: F, domain: CDomain, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    match domain {
        CDomain::UnitInterval => integrate_unit_jacobi(g, spec.c_nodes, 0.0),
        CDomain::HalfLine { t_max } => {
            let rule = gauss_legendre_unit(spec.c_nodes.min(32));
            let mut total = Vec::new();
            let mut quiet = 0;
            let mut a = 0.0f64;
            while a < t_max {
                let mut bound = 0.0f64;
                for &(x, w) in rule.iter() {
                    let t = a + x;
                    let v = check_finite(g(t), "integrand", t)?;
                    bound = bound.max(v.norm());
                    total.push(v * w);
                }
                a += 1.0;
                let running = compensated_sum(total.iter().copied()).norm();
                if bound <= 1e-16 * running || bound == 0.0 {
                    quiet += 1;
                    if quiet >= 2 {
                        return Ok(compensated_sum(total));
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::NonConvergent(format!("integrand has not decayed by t = {t_max}")))
        }
    }
}
