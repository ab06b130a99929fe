//! Metropolis sampling of the `beta = 2` gas on the hard-wall ellipse.
//!
//! The chain moves one particle per step with an isotropic Gaussian proposal
//! and rejects any move that leaves the ellipse. Randomness comes from
//! ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`), so a seed fixes the
//! chain on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use nalgebra::{Cholesky, DMatrix, DVector};
use rand_distr::{Distribution, Normal as Gaussian};
use statrs::distribution::{ContinuousCDF, FisherSnedecor, Normal};

use crate::correlations::{DensityGrid, GridSpec};
use crate::error::{parameter, Result};
use crate::geometry::{ln_weight_unchecked, EllipseGeometry, GasFamily};
use crate::kernels_finite::FiniteKernel;
use crate::quadrature::gauss_legendre_unit;

/// Name of the generator behind every chain.
pub const RNG_ALGORITHM: &str = "ChaCha20";

/// Zero-acceptance streak after which a chain reports a warning.
pub const STUCK_STREAK: u64 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleConfiguration {
    pub points: Vec<Complex64>,
}

/// `sum_j ln w(z_j) + 2 sum_{j<l} ln |z_j - z_l|`; `-inf` when a point lies
/// outside the ellipse or two points coincide.
pub fn log_density(gas: &GasFamily, g: &EllipseGeometry, config: &ParticleConfiguration) -> f64 {
    let pts = &config.points;
    let mut total = 0.0;
    for (j, &z) in pts.iter().enumerate() {
        if !g.contains(z) {
            return f64::NEG_INFINITY;
        }
        total += ln_weight_unchecked(gas, g, z);
        for &w in &pts[..j] {
            total += 2.0 * (z - w).norm().ln();
        }
    }
    if total.is_nan() {
        f64::NEG_INFINITY
    } else {
        total
    }
}

/// Change of [`log_density`] when particle `k` moves to `z`.
fn log_density_delta(gas: &GasFamily, g: &EllipseGeometry, pts: &[Complex64], k: usize, z: Complex64) -> f64 {
    let old = pts[k];
    let mut d = ln_weight_unchecked(gas, g, z) - ln_weight_unchecked(gas, g, old);
    for (j, &w) in pts.iter().enumerate() {
        if j != k {
            d += 2.0 * ((z - w).norm().ln() - (old - w).norm().ln());
        }
    }
    if d.is_nan() {
        f64::NEG_INFINITY
    } else {
        d
    }
}

/// `min(1, exp(delta))`.
pub fn acceptance_probability(delta: f64) -> f64 {
    if delta >= 0.0 {
        1.0
    } else {
        delta.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSettings {
    pub steps: u64,
    pub burn_in: u64,
    pub thin: u64,
    pub proposal_sigma: f64,
    pub seed: u64,
}

impl ChainSettings {
    /// `proposal_sigma = 0.15 * semi_y`.
    pub fn with_defaults(g: &EllipseGeometry, steps: u64, seed: u64) -> Self {
        Self { steps, burn_in: steps / 10, thin: 1, proposal_sigma: 0.15 * g.semi_y(), seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.burn_in >= self.steps {
            return parameter(format!("burn_in = {} must be below steps = {}", self.burn_in, self.steps));
        }
        if self.thin == 0 {
            return parameter("thin must be at least 1");
        }
        if !(self.proposal_sigma > 0.0 && self.proposal_sigma.is_finite()) {
            return parameter("proposal_sigma must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainDiagnostics {
    pub proposed: u64,
    pub accepted: u64,
    pub warnings: Vec<String>,
}

impl ChainDiagnostics {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// A valid deterministic starting configuration: `N` points on a ring at half
/// the ellipse's size, turned off the real axis.
pub fn initial_configuration(g: &EllipseGeometry, n: usize) -> ParticleConfiguration {
    let points = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            Complex64::new(0.5 * g.semi_x() * t.cos(), 0.5 * g.semi_y() * t.sin())
        })
        .collect();
    ParticleConfiguration { points }
}

/// Runs a chain and hands every retained (post-burn-in, thinned)
/// configuration to `observe`.
pub fn run_chain_with(
    gas: &GasFamily,
    g: &EllipseGeometry,
    n: usize,
    settings: &ChainSettings,
    mut observe: impl FnMut(&ParticleConfiguration),
) -> Result<ChainDiagnostics> {
    gas.validate()?;
    settings.validate()?;
    if n == 0 {
        return parameter("N must be at least 1");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(settings.seed);
    let normal = Gaussian::new(0.0, settings.proposal_sigma).map_err(|e| crate::Error::Parameter(e.to_string()))?;
    let mut config = initial_configuration(g, n);
    let mut diag = ChainDiagnostics::default();
    let mut streak = 0u64;
    let mut warned = false;
    for step in 0..settings.steps {
        let k = rng.random_range(0..n);
        let z = config.points[k] + Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng));
        let u: f64 = rng.random();
        diag.proposed += 1;
        let accept = g.contains(z) && {
            let d = log_density_delta(gas, g, &config.points, k, z);
            u < acceptance_probability(d)
        };
        if accept {
            config.points[k] = z;
            diag.accepted += 1;
            streak = 0;
        } else {
            streak += 1;
            if streak > STUCK_STREAK && !warned {
                diag.warnings.push(format!("no move accepted in {STUCK_STREAK} steps (at step {step})"));
                warned = true;
            }
        }
        if step >= settings.burn_in && (step - settings.burn_in).is_multiple_of(settings.thin) {
            observe(&config);
        }
    }
    Ok(diag)
}

/// Runs a chain and collects the retained configurations.
pub fn run_chain(
    gas: &GasFamily,
    g: &EllipseGeometry,
    n: usize,
    settings: &ChainSettings,
) -> Result<(Vec<ParticleConfiguration>, ChainDiagnostics)> {
    let mut out = Vec::new();
    let diag = run_chain_with(gas, g, n, settings, |c| out.push(c.clone()))?;
    Ok((out, diag))
}

/// Histogram of the samples, normalised so that its integral over the grid is
/// the number of particles that fell inside it per configuration.
pub fn empirical_density(samples: &[ParticleConfiguration], grid: &GridSpec) -> Result<DensityGrid> {
    grid.validate()?;
    if samples.is_empty() {
        return parameter("no samples");
    }
    let mut counts = vec![0u64; grid.nx * grid.ny];
    for c in samples {
        for &z in &c.points {
            if let Some((i, j)) = grid.cell_of(z) {
                counts[j * grid.nx + i] += 1;
            }
        }
    }
    let scale = 1.0 / (samples.len() as f64 * grid.cell_area());
    Ok(DensityGrid {
        x_range: grid.x_range,
        y_range: grid.y_range,
        nx: grid.nx,
        ny: grid.ny,
        values: counts.into_iter().map(|c| c as f64 * scale).collect(),
    })
}

/// Outcome of comparing binned chain output with the kernel diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareReport {
    /// Hotelling `T^2` of the batch-mean cell counts against the expected
    /// counts; asymptotically chi-square with `dof` degrees of freedom.
    pub statistic: f64,
    /// Number of cells tested.
    pub dof: usize,
    pub batches: usize,
    /// Upper-tail probability from `(B - p) T^2 / (p (B - 1)) ~ F(p, B - p)`.
    pub p_value: f64,
    /// Standard-normal quantile of `1 - p_value`.
    pub z_score: f64,
    pub acceptance_rate: f64,
}

impl ChiSquareReport {
    pub fn passes(&self, sigmas: f64) -> bool {
        self.z_score < sigmas
    }
}

/// Expected particle number per configuration in each cell lying wholly
/// inside the ellipse (`None` for cut cells), from an 8x8 Gauss rule of the
/// kernel diagonal.
pub fn expected_cell_counts(kernel: &FiniteKernel, grid: &GridSpec) -> Result<Vec<Option<f64>>> {
    let g = kernel.geometry();
    let rule = gauss_legendre_unit(8);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mut out = Vec::with_capacity(grid.nx * grid.ny);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let x0 = grid.x_range.0 + i as f64 * dx;
            let y0 = grid.y_range.0 + j as f64 * dy;
            let corners = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
            if !corners.iter().all(|&(a, b)| g.contains(Complex64::new(x0 + a * dx, y0 + b * dy))) {
                out.push(None);
                continue;
            }
            let mut sum = 0.0;
            for &(u, wu) in rule.iter() {
                for &(v, wv) in rule.iter() {
                    sum += wu * wv * kernel.density(Complex64::new(x0 + u * dx, y0 + v * dy))?;
                }
            }
            out.push(Some(sum * dx * dy));
        }
    }
    Ok(out)
}

/// Runs a chain and tests its binned one-point density against the kernel
/// diagonal. The retained configurations are split into `batches`
/// consecutive batches; the covariance of the batch means accounts for the
/// correlation between cells (every configuration holds exactly `N`
/// particles), so `batches` must exceed the number of tested cells.
pub fn chi_square_test(
    gas: &GasFamily,
    g: &EllipseGeometry,
    n: usize,
    settings: &ChainSettings,
    grid: &GridSpec,
    batches: usize,
) -> Result<ChiSquareReport> {
    let kernel = FiniteKernel::new(*gas, *g, n)?;
    let expected = expected_cell_counts(&kernel, grid)?;
    let cells: Vec<(usize, f64)> = expected.iter().enumerate().filter_map(|(i, e)| e.map(|e| (i, e))).collect();
    let p = cells.len();
    if p == 0 {
        return parameter("no grid cell lies inside the ellipse");
    }
    if batches <= p + 1 {
        return parameter(format!("{batches} batches are too few for {p} cells; need more than {}", p + 1));
    }
    settings.validate()?;
    let retained = (settings.steps - settings.burn_in).div_ceil(settings.thin);
    let per_batch = retained / batches as u64;
    if per_batch == 0 {
        return parameter("fewer retained configurations than batches");
    }
    let mut index = vec![usize::MAX; grid.nx * grid.ny];
    for (k, &(cell, _)) in cells.iter().enumerate() {
        index[cell] = k;
    }
    let mut counts = vec![0u64; batches * p];
    let mut seen = 0u64;
    let diag = run_chain_with(gas, g, n, settings, |c| {
        let b = (seen / per_batch) as usize;
        seen += 1;
        if b >= batches {
            return;
        }
        for &z in &c.points {
            if let Some((i, j)) = grid.cell_of(z) {
                let k = index[j * grid.nx + i];
                if k != usize::MAX {
                    counts[b * p + k] += 1;
                }
            }
        }
    })?;
    let bf = batches as f64;
    let means = DMatrix::from_fn(batches, p, |b, k| counts[b * p + k] as f64 / per_batch as f64);
    let centre = DVector::from_fn(p, |k, _| means.column(k).sum() / bf);
    let mut cov = DMatrix::<f64>::zeros(p, p);
    for b in 0..batches {
        let d = means.row(b).transpose() - &centre;
        cov.ger(1.0 / (bf - 1.0), &d, &d, 1.0);
    }
    let dev = &centre - DVector::from_fn(p, |k, _| cells[k].1);
    let chol = Cholesky::new(cov)
        .ok_or_else(|| crate::Error::Evaluation("batch covariance is singular; run a longer chain".into()))?;
    let t2 = bf * dev.dot(&chol.solve(&dev));
    let pf = p as f64;
    let f = (bf - pf) * t2 / (pf * (bf - 1.0));
    let dist = FisherSnedecor::new(pf, bf - pf).map_err(|e| crate::Error::Parameter(e.to_string()))?;
    let p_value = dist.sf(f);
    let z_score = Normal::standard().inverse_cdf(1.0 - p_value);
    Ok(ChiSquareReport { statistic: t2, dof: p, batches, p_value, z_score, acceptance_rate: diag.acceptance_rate() })
}
