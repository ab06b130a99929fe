//! Correlation functions as kernel determinants, density grids under the
//! figure rescalings, and the log-partition function.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{parameter, Result};
use crate::geometry::{EllipseGeometry, GasFamily};
use crate::kernels_finite::FiniteKernel;
use crate::kernels_limit::LimitKernelSpec;
use crate::polynomials::ln_squared_norm;
use crate::specialfns::lgam;

/// Anything that evaluates `K(z1, z2)`.
pub trait EvaluableKernel: Sync {
    fn kernel(&self, z1: Complex64, z2: Complex64) -> Result<Complex64>;
}

impl EvaluableKernel for FiniteKernel {
    fn kernel(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.eval(z1, z2)
    }
}

impl EvaluableKernel for LimitKernelSpec {
    fn kernel(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.eval(z1, z2)
    }
}

/// Determinant of a small complex matrix (row-major, `k x k`) by LU with
/// partial pivoting.
pub fn determinant(mut m: Vec<Complex64>, k: usize) -> Complex64 {
    assert_eq!(m.len(), k * k);
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| m[i * k + col].norm().total_cmp(&m[j * k + col].norm()))
            .unwrap();
        let p = m[piv * k + col];
        if p.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for j in 0..k {
                m.swap(piv * k + j, col * k + j);
            }
            det = -det;
        }
        det *= p;
        for i in col + 1..k {
            let f = m[i * k + col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..k {
                let v = m[col * k + j];
                m[i * k + j] -= f * v;
            }
        }
    }
    det
}

/// The `k`-point correlation function `det[K(z_i, z_j)]`.
pub fn correlation_k(kernel: &impl EvaluableKernel, points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    if k == 0 {
        return parameter("at least one point is needed");
    }
    let mut m = Vec::with_capacity(k * k);
    for &zi in points {
        for &zj in points {
            m.push(kernel.kernel(zi, zj)?);
        }
    }
    Ok(determinant(m, k).re)
}

/// The figure rescalings `(x, y) -> (point in the gas's plane, density factor)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rescale {
    /// `K_N(z, z)`.
    #[default]
    None,
    /// `(1/(2 tau N)) K_N(z/sqrt(2 tau), .)`, the near-rotational picture.
    Fig1,
    /// `(1/N^2) K_N(x + i y/N, .)`, the near-Hermitian picture.
    Fig2,
    /// `(1/(2 tau a)) K_N(sqrt(N) z/sqrt(2 tau a), .)`, the large-charge picture.
    Fig3,
}

impl Rescale {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(Self::None),
            "fig1" => Some(Self::Fig1),
            "fig2" => Some(Self::Fig2),
            "fig3" => Some(Self::Fig3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
        }
    }

    /// Point in the gas's own coordinates and the factor multiplying `K_N`.
    pub fn map(&self, z: Complex64, tau: f64, n: usize, a: f64) -> Result<(Complex64, f64)> {
        let nf = n as f64;
        match self {
            Self::None => Ok((z, 1.0)),
            Self::Fig1 => Ok((z / (2.0 * tau).sqrt(), 1.0 / (2.0 * tau * nf))),
            Self::Fig2 => Ok((Complex64::new(z.re, z.im / nf), 1.0 / (nf * nf))),
            Self::Fig3 => {
                if !(a > 0.0) {
                    return parameter("the fig3 rescaling needs a > 0");
                }
                Ok((z * (nf / (2.0 * tau * a)).sqrt(), 1.0 / (2.0 * tau * a)))
            }
        }
    }
}

impl Rescale {
    /// Image of the ellipse's bounding box in the rescaled plane.
    pub fn window(&self, g: &EllipseGeometry, n: usize, a: f64) -> Result<GridSpecWindow> {
        let (sx, sy) = (g.semi_x(), g.semi_y());
        let nf = n as f64;
        let (hx, hy) = match self {
            Self::None => (sx, sy),
            Self::Fig1 => {
                let f = (2.0 * g.tau()).sqrt();
                (sx * f, sy * f)
            }
            Self::Fig2 => (sx, sy * nf),
            Self::Fig3 => {
                if !(a > 0.0) {
                    return parameter("the fig3 rescaling needs a > 0");
                }
                let f = (2.0 * g.tau() * a / nf).sqrt();
                (sx * f, sy * f)
            }
        };
        Ok(((-hx, hx), (-hy, hy)))
    }
}

/// `(x_range, y_range)`.
pub type GridSpecWindow = ((f64, f64), (f64, f64));

/// A cell-centred grid: node `(i, j)` sits at the centre of cell
/// `[x0 + i dx, x0 + (i+1) dx] x [y0 + j dy, y0 + (j+1) dy]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        let g = Self { x_range, y_range, nx, ny };
        g.validate()?;
        Ok(g)
    }

    /// The bounding box of an ellipse.
    pub fn covering(g: &EllipseGeometry, nx: usize, ny: usize) -> Result<Self> {
        let (sx, sy) = (g.semi_x(), g.semi_y());
        Self::new((-sx, sx), (-sy, sy), nx, ny)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.1 > r.0;
        if self.nx == 0 || self.ny == 0 {
            return parameter("grid needs nx, ny >= 1");
        }
        if !ok(self.x_range) || !ok(self.y_range) {
            return parameter("grid ranges must be finite and increasing");
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_range.1 - self.y_range.0) / self.ny as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_range.0 + (i as f64 + 0.5) * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_range.0 + (j as f64 + 0.5) * self.dy()
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Cell containing `z`, if any.
    pub fn cell_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let fx = (z.re - self.x_range.0) / self.dx();
        let fy = (z.im - self.y_range.0) / self.dy();
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (i, j) = (fx as usize, fy as usize);
        (i < self.nx && j < self.ny).then_some((i, j))
    }
}

/// Density values at the nodes of a [`GridSpec`], stored row-major with `y`
/// as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn spec(&self) -> GridSpec {
        GridSpec { x_range: self.x_range, y_range: self.y_range, nx: self.nx, ny: self.ny }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Midpoint-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec().cell_area()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// One-point density of a finite gas on a grid, after a figure rescaling.
/// Nodes outside the ellipse or on a weight singularity are 0.
pub fn density_grid(kernel: &FiniteKernel, grid: &GridSpec, rescale: Rescale) -> Result<DensityGrid> {
    grid.validate()?;
    let tau = kernel.geometry().tau();
    let a = kernel.gas().a();
    let n = kernel.n();
    rescale.map(Complex64::new(0.0, 0.0), tau, n, a)?;
    let values: Vec<f64> = (0..grid.nx * grid.ny)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % grid.nx, idx / grid.nx);
            let z = Complex64::new(grid.x(i), grid.y(j));
            let (w, f) = rescale.map(z, tau, n, a).expect("checked above");
            match kernel.table(w) {
                Ok(t) => (kernel.eval_tables(&t, &t).re * f).max(0.0),
                Err(_) => 0.0,
            }
        })
        .collect();
    Ok(DensityGrid { x_range: grid.x_range, y_range: grid.y_range, nx: grid.nx, ny: grid.ny, values })
}

/// `ln Z_N = ln N! + sum_{n<N} ln h_n` with `h_n` the squared norms of the
/// monic orthogonal polynomials.
pub fn log_partition(gas: &GasFamily, g: &EllipseGeometry, n: usize) -> Result<f64> {
    gas.validate()?;
    if n == 0 {
        return parameter("N must be at least 1");
    }
    let mut total = lgam(n as f64 + 1.0);
    for k in 0..n {
        total += ln_squared_norm(gas, g, k);
    }
    Ok(total)
}
