//! Convergence of rescaled finite-`N` kernels, and of the weak limits as
//! `s` grows, towards the limiting kernels.
//!
//! Every study takes the supremum of `|K_scaled - K_limit|` over all pairs of
//! a fixed five-point set and fits the decay exponent of that discrepancy
//! against the sweep parameter (`N` or `s`).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{parameter, Result};
use crate::geometry::{EllipseGeometry, GasFamily};
use crate::kernels_finite::FiniteKernel;
use crate::kernels_limit::{bulk_strong, bulk_weak, edge_strong, edge_weak, edge_weak_minus_cosine, edge_weak_minus_sine};

const fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

/// Bulk points `zhat = x + i t s`, given as `(x, t)` with `|t| < 1/2`.
pub const BULK_POINTS: [(f64, f64); 5] = [(0.0, 0.0), (0.3, 0.1), (-0.5, 0.2), (0.2, -0.25), (1.0, 0.05)];

/// Focal points `Z`, inside the weak edge domain for every `s >= 1`.
pub const EDGE_POINTS: [Complex64; 5] = [c(0.5, 0.0), c(2.0, 0.0), c(1.0, 0.3), c(3.0, -0.5), c(0.2, 0.2)];

/// Strong edge points `Z~` in the half plane `X~ >= 0`.
pub const STRONG_EDGE_POINTS: [Complex64; 5] = [c(0.0, 0.0), c(0.5, 0.3), c(1.0, -0.5), c(2.0, 0.2), c(0.3, 1.0)];

/// A limit statement whose approach can be measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Study {
    /// `N^{-2} K_N(zhat/N, .)` against the weak bulk kernel, swept in `N`.
    BulkWeak { gas: GasFamily, s: f64 },
    /// `K_N(1 - Z/(2N^2), .)/(4N^4)` against the weak edge kernel, swept in `N`.
    EdgeWeak { gas: GasFamily, s: f64 },
    /// `K_N(-1 + Z/(2N^2), .)/(4N^4)` against the left-focus kernel of the
    /// gas (sine form for `JacobiPlus`, cosine form for `JacobiMinus` and,
    /// at `a = 0`, `ChebyshevT`), swept in `N`.
    LeftFocus { gas: GasFamily, s: f64 },
    /// `s^2 K_bulk(s z~, .)` against the strong bulk kernel, swept in `s`.
    BulkStrong { a: f64 },
    /// `(s^2/4) K_edge((s/2)X~ - s^2/4 + i (s/2)Y~, .)` against the strong
    /// edge kernel, swept in `s`.
    EdgeStrong { a: f64 },
}

impl Study {
    pub fn name(&self) -> &'static str {
        match self {
            Study::BulkWeak { .. } => "bulk-weak",
            Study::EdgeWeak { .. } => "edge-weak",
            Study::LeftFocus { .. } => "left-focus",
            Study::BulkStrong { .. } => "bulk-strong",
            Study::EdgeStrong { .. } => "edge-strong",
        }
    }

    /// Whether the sweep parameter is `N` (otherwise `s`).
    pub fn sweeps_n(&self) -> bool {
        matches!(self, Study::BulkWeak { .. } | Study::EdgeWeak { .. } | Study::LeftFocus { .. })
    }

    fn validate(&self) -> Result<()> {
        match self {
            Study::BulkWeak { gas, s } | Study::EdgeWeak { gas, s } => {
                gas.validate()?;
                if !matches!(self, Study::BulkWeak { .. }) && matches!(gas, GasFamily::ChebyshevT | GasFamily::ChebyshevV) {
                    return parameter("the weak edge study at +1 covers the Gegenbauer and Jacobi gases");
                }
                check_s(*s)
            }
            Study::LeftFocus { gas, s } => {
                gas.validate()?;
                if matches!(gas, GasFamily::Gegenbauer { .. } | GasFamily::ChebyshevV) {
                    return parameter(format!("no left-focus kernel is implemented for the {} gas", gas.name()));
                }
                check_s(*s)
            }
            Study::BulkStrong { a } | Study::EdgeStrong { a } => GasFamily::Gegenbauer { a: *a }.validate(),
        }
    }

    fn points(&self) -> Vec<Complex64> {
        match self {
            Study::BulkWeak { s, .. } => BULK_POINTS.iter().map(|&(x, t)| c(x, t * s)).collect(),
            Study::BulkStrong { .. } => BULK_POINTS.iter().map(|&(x, t)| c(x, t)).collect(),
            Study::EdgeWeak { .. } | Study::LeftFocus { .. } => EDGE_POINTS.to_vec(),
            Study::EdgeStrong { .. } => STRONG_EDGE_POINTS.to_vec(),
        }
    }

    /// The limiting kernel at a pair of scaled points.
    pub fn limit(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        match *self {
            Study::BulkWeak { gas, s } => bulk_weak(gas.a(), s, z1, z2),
            Study::EdgeWeak { gas, s } => edge_weak(gas.a(), s, z1, z2),
            Study::LeftFocus { gas, s } => match gas {
                GasFamily::JacobiPlus { a } => edge_weak_minus_sine(a, s, z1, z2),
                _ => edge_weak_minus_cosine(gas.a(), s, z1, z2),
            },
            Study::BulkStrong { a } => bulk_strong(a, z1, z2),
            Study::EdgeStrong { a } => edge_strong(a, z1, z2),
        }
    }

    /// The approximant at sweep value `p` (`N` or `s`), at a pair of scaled
    /// points.
    pub fn approximant(&self, p: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        match *self {
            Study::BulkStrong { a } => Ok(bulk_weak(a, p, z1 * p, z2 * p)? * (p * p)),
            Study::EdgeStrong { a } => {
                let map = |z: Complex64| c(0.5 * p * z.re - 0.25 * p * p, 0.5 * p * z.im);
                Ok(edge_weak(a, p, map(z1), map(z2))? * (0.25 * p * p))
            }
            _ => {
                let k = self.finite_kernel(p)?;
                let (m1, m2) = (self.finite_point(p, z1), self.finite_point(p, z2));
                Ok(k.eval(m1, m2)? * self.finite_factor(p))
            }
        }
    }

    fn finite_kernel(&self, p: f64) -> Result<FiniteKernel> {
        let n = sweep_n(p)?;
        let (gas, s) = match *self {
            Study::BulkWeak { gas, s } | Study::EdgeWeak { gas, s } | Study::LeftFocus { gas, s } => (gas, s),
            _ => unreachable!("finite kernels only enter N sweeps"),
        };
        FiniteKernel::new(gas, EllipseGeometry::weak(s, n)?, n)
    }

    fn finite_point(&self, p: f64, z: Complex64) -> Complex64 {
        match self {
            Study::BulkWeak { .. } => z / p,
            Study::EdgeWeak { .. } => 1.0 - z / (2.0 * p * p),
            _ => -1.0 + z / (2.0 * p * p),
        }
    }

    fn finite_factor(&self, p: f64) -> f64 {
        match self {
            Study::BulkWeak { .. } => 1.0 / (p * p),
            _ => 1.0 / (4.0 * p.powi(4)),
        }
    }

    /// `sup |approximant - limit|` over all pairs of the study's points.
    pub fn discrepancy(&self, p: f64) -> Result<f64> {
        self.validate()?;
        let pts = self.points();
        let kernel = if self.sweeps_n() { Some(self.finite_kernel(p)?) } else { None };
        let pairs: Vec<(usize, usize)> = (0..pts.len()).flat_map(|i| (i..pts.len()).map(move |j| (i, j))).collect();
        let errs: Vec<Result<f64>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (z1, z2) = (pts[i], pts[j]);
                let approx = match &kernel {
                    Some(k) => k.eval(self.finite_point(p, z1), self.finite_point(p, z2))? * self.finite_factor(p),
                    None => self.approximant(p, z1, z2)?,
                };
                Ok((approx - self.limit(z1, z2)?).norm())
            })
            .collect();
        let mut sup = 0.0f64;
        for e in errs {
            sup = sup.max(e?);
        }
        Ok(sup)
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        parameter(format!("s = {s} must be finite and > 0"))
    }
}

fn sweep_n(p: f64) -> Result<usize> {
    if p >= 1.0 && p.fract() == 0.0 && p <= 1e6 {
        Ok(p as usize)
    } else {
        parameter(format!("N = {p} must be a positive integer"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    /// `(sweep value, discrepancy)` in the order given.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of `ln discrepancy` against `ln p`.
    pub exponent: f64,
    pub strictly_decreasing: bool,
}

/// Runs a study over a schedule of `N` or `s` values.
pub fn run_study(study: &Study, schedule: &[f64]) -> Result<StudyReport> {
    if schedule.len() < 2 {
        return parameter("a convergence study needs at least two sweep values");
    }
    let mut rows = Vec::with_capacity(schedule.len());
    for &p in schedule {
        rows.push((p, study.discrepancy(p)?));
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(StudyReport { exponent: log_log_slope(&rows), rows, strictly_decreasing })
}

/// Least-squares slope of `ln y` against `ln x`; rows with `y = 0` are skipped.
pub fn log_log_slope(rows: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.1 > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
