//! The hard-wall ellipse, the one-particle weights, Joukowsky coordinates and
//! the limiting scaling domains.

use num_complex::Complex64;

use crate::error::{domain, parameter, Result};

/// Ellipse `(2 tau/(1+tau)) x^2 + (2 tau/(1-tau)) y^2 <= 1` with foci at `±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    tau: f64,
    one_minus_tau: f64,
    semi_x: f64,
    semi_y: f64,
}

impl EllipseGeometry {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return parameter(format!("tau must lie in (0, 1), got {tau}"));
        }
        Ok(Self::build(tau, 1.0 - tau))
    }

    /// Geometry of the weak non-Hermiticity scaling `1/tau = 1 + s^2/(2 N^2)`.
    ///
    /// `1 - tau` is formed without cancellation, which matters at large `N`.
    pub fn weak(s: f64, n: usize) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() || n == 0 {
            return parameter(format!("weak scaling needs s > 0 and N >= 1, got s={s}, N={n}"));
        }
        let d = s * s / (2.0 * (n as f64) * (n as f64));
        Ok(Self::build(1.0 / (1.0 + d), d / (1.0 + d)))
    }

    fn build(tau: f64, one_minus_tau: f64) -> Self {
        let sy2 = one_minus_tau / (2.0 * tau);
        Self {
            tau,
            one_minus_tau,
            semi_x: (1.0 + sy2).sqrt(),
            semi_y: sy2.sqrt(),
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn one_minus_tau(&self) -> f64 {
        self.one_minus_tau
    }

    pub fn semi_x(&self) -> f64 {
        self.semi_x
    }

    pub fn semi_y(&self) -> f64 {
        self.semi_y
    }

    /// Joukowsky parameter `v = semi_x + semi_y > 1`, so `1/tau = (v^2 + v^-2)/2`.
    pub fn v(&self) -> f64 {
        self.semi_x + self.semi_y
    }

    /// `ln v`, the elliptic radius of the boundary.
    pub fn xi0(&self) -> f64 {
        self.semi_y.asinh()
    }

    /// `semi_x - 1`, computed without cancellation.
    pub fn semi_x_minus_one(&self) -> f64 {
        self.semi_y * self.semi_y / (1.0 + self.semi_x)
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.semi_x * self.semi_y
    }

    /// `1 - (x/semi_x)^2 - (y/semi_y)^2`; zero on the wall, one at the centre.
    pub fn wall_distance(&self, z: Complex64) -> f64 {
        let u = z.re / self.semi_x;
        let w = z.im / self.semi_y;
        (1.0 - u) * (1.0 + u) - w * w
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let u = z.re / self.semi_x;
        let w = z.im / self.semi_y;
        u * u + w * w <= 1.0
    }

    /// `mu(z)` exactly as defined for the asymmetric Jacobi weights.
    pub fn mu(&self, z: Complex64) -> f64 {
        let r = ((1.0 + z.re).powi(2) + z.im * z.im).sqrt();
        (self.semi_x * r - 1.0 - z.re) / (self.semi_y * self.semi_y)
    }

    /// `1 - mu(z)` in the factorised form
    /// `(cosh xi0 - cosh xi)(cosh xi0 - cos eta) / sinh^2 xi0`
    /// of elliptic coordinates `z = cosh(xi + i eta)`.
    pub fn one_minus_mu(&self, z: Complex64) -> f64 {
        let r1 = (z + 1.0).norm();
        let r2 = (z - 1.0).norm();
        let ch = 0.5 * (r1 + r2);
        let cs = 0.5 * (r1 - r2);
        let f1 = (self.semi_x_minus_one() - (ch - 1.0)).max(0.0);
        let f2 = self.semi_x - cs;
        f1 * f2 / (self.semi_y * self.semi_y)
    }
}

/// Polynomial families, each evaluated at complex argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    /// `C_n^{(a+1)}`.
    Gegenbauer { a: f64 },
    /// `P_n^{(a+1/2, gamma)}` with `gamma = +1/2` (`plus = true`) or `-1/2`.
    JacobiAsym { a: f64, plus: bool },
    ChebyshevT,
    ChebyshevU,
    /// Third kind, normalised to `V_n(1) = 2n + 1`.
    ChebyshevV,
}

/// The five gases: weight, polynomial family and norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GasFamily {
    /// Weight `(1 - (2tau/(1+tau))x^2 - (2tau/(1-tau))y^2)^a`.
    Gegenbauer { a: f64 },
    /// Weight `(1 - mu)^a`.
    JacobiPlus { a: f64 },
    /// Weight `(1 - mu)^a / |1 + z|`.
    JacobiMinus { a: f64 },
    /// Weight `1/|1 - z^2|`.
    ChebyshevT,
    /// Weight `1/|1 + z|`.
    ChebyshevV,
}

impl GasFamily {
    pub fn a(&self) -> f64 {
        match *self {
            GasFamily::Gegenbauer { a } | GasFamily::JacobiPlus { a } | GasFamily::JacobiMinus { a } => a,
            GasFamily::ChebyshevT | GasFamily::ChebyshevV => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.a();
        if !(a > -1.0) || !a.is_finite() {
            return parameter(format!("charge a must be finite and > -1, got {a}"));
        }
        Ok(())
    }

    pub fn poly_family(&self) -> PolyFamily {
        match *self {
            GasFamily::Gegenbauer { a } => PolyFamily::Gegenbauer { a },
            GasFamily::JacobiPlus { a } => PolyFamily::JacobiAsym { a, plus: true },
            GasFamily::JacobiMinus { a } => PolyFamily::JacobiAsym { a, plus: false },
            GasFamily::ChebyshevT => PolyFamily::ChebyshevT,
            GasFamily::ChebyshevV => PolyFamily::ChebyshevV,
        }
    }

    /// Whether the weight is singular at a focus (so quadrature must use
    /// elliptic coordinates) or at least non-smooth there.
    pub fn has_focal_structure(&self) -> bool {
        !matches!(self, GasFamily::Gegenbauer { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GasFamily::Gegenbauer { .. } => "gegenbauer",
            GasFamily::JacobiPlus { .. } => "jacobi-plus",
            GasFamily::JacobiMinus { .. } => "jacobi-minus",
            GasFamily::ChebyshevT => "chebyshev-t",
            GasFamily::ChebyshevV => "chebyshev-v",
        }
    }
}

/// `ln w(z)` without the domain check. `+inf` at a weight singularity,
/// `-inf` on the wall when `a > 0`.
pub fn ln_weight_unchecked(gas: &GasFamily, g: &EllipseGeometry, z: Complex64) -> f64 {
    let pow = |base: f64, a: f64| -> f64 {
        if a == 0.0 {
            0.0
        } else {
            a * base.max(0.0).ln()
        }
    };
    match *gas {
        GasFamily::Gegenbauer { a } => pow(g.wall_distance(z), a),
        GasFamily::JacobiPlus { a } => pow(g.one_minus_mu(z), a),
        GasFamily::JacobiMinus { a } => pow(g.one_minus_mu(z), a) - (z + 1.0).norm().ln(),
        GasFamily::ChebyshevT => -((1.0 - z).norm().ln() + (1.0 + z).norm().ln()),
        GasFamily::ChebyshevV => -(z + 1.0).norm().ln(),
    }
}

/// The one-particle weight. Singular points give `+inf` rather than an error.
pub fn weight(gas: &GasFamily, g: &EllipseGeometry, z: Complex64) -> Result<f64> {
    if !g.contains(z) {
        return domain(format!("{z} lies outside the ellipse"));
    }
    Ok(ln_weight_unchecked(gas, g, z).exp())
}

/// Whether `z` is a weight singularity of `gas`.
pub fn is_singular(gas: &GasFamily, z: Complex64) -> bool {
    let at = |p: f64| z.re == p && z.im == 0.0;
    match gas {
        GasFamily::ChebyshevT => at(1.0) || at(-1.0),
        GasFamily::ChebyshevV | GasFamily::JacobiMinus { .. } => at(-1.0),
        _ => false,
    }
}

/// Inverse Joukowsky map: `omega` with `zeta = (omega + 1/omega)/2`, `|omega| >= 1`.
///
/// The flag is set when `zeta` lies on the cut `[-1, 1]`; there `|omega| = 1`
/// and the root with `Im omega >= 0` is returned.
pub fn joukowsky_inverse(zeta: Complex64) -> (Complex64, bool) {
    let r = (zeta - 1.0).sqrt() * (zeta + 1.0).sqrt();
    let mut w = zeta + r;
    let on_cut = zeta.im == 0.0 && zeta.re.abs() <= 1.0;
    if w.norm() < 1.0 {
        w = zeta - r;
    }
    if on_cut && w.im < 0.0 {
        w = w.conj();
    }
    (w, on_cut)
}

/// Forward Joukowsky map.
pub fn joukowsky(omega: Complex64) -> Complex64 {
    (omega + omega.inv()) * 0.5
}

/// Strip `yhat^2 <= s^2/4` of the weak bulk limit.
pub fn bulk_domain_contains(s: f64, zhat: Complex64) -> bool {
    zhat.im * zhat.im <= 0.25 * s * s
}

/// Parabola `X >= (Y/s)^2 - s^2/4` of the weak edge limit.
pub fn edge_domain_contains(s: f64, z: Complex64) -> bool {
    z.re >= (z.im / s).powi(2) - 0.25 * s * s
}
