//! Gamma-function helpers and Bessel functions of real order.
//!
//! `J_nu` is evaluated at complex argument from its power series, summed in
//! double-double arithmetic so that the alternating terms do not swamp the
//! result, and from the Hankel expansion once `|w|` is large. `I_nu` is only
//! needed at real argument; it is returned in log form because the limiting
//! kernels divide by it at arguments where it overflows.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Largest `|w|` accepted by [`bessel_j`].
pub const W_MAX: f64 = 60.0;

/// Above this modulus `J` is taken from the Hankel expansion when that
/// expansion reaches full precision.
pub const HANKEL_SWITCH: f64 = 40.0;

/// Switch point between the series and the exponential expansion of `I`.
pub const I_SWITCH: f64 = 30.0;

/// Order of a Bessel function as it appears in the kernels, `nu = a + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < -0.5 {
            return domain(format!("Bessel order {nu} must be finite and >= -1/2"));
        }
        Ok(Self { nu })
    }

    /// The order `a + 1/2` belonging to the charge `a > -1`.
    pub fn from_charge(a: f64) -> Result<Self> {
        Self::new(a + 0.5)
    }

    pub fn nu(self) -> f64 {
        self.nu
    }
}

/// Natural log of `Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma needs a finite positive argument, got {x}"));
    }
    Ok(libm::lgamma(x))
}

/// `Gamma(x)`, thin wrapper used where the value is known not to overflow.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `ln Gamma(x)` for arguments already known to be positive.
pub(crate) fn lgam(x: f64) -> f64 {
    libm::lgamma(x)
}

// ---------------------------------------------------------------------------
// double-double arithmetic for the J series

#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }
}

#[derive(Debug, Clone, Copy)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn div_real(self, d: Dd) -> Cdd {
        Cdd { re: self.re.div(d), im: self.im.div(d) }
    }

    fn abs_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// `sum_k (-w^2/4)^k / (k! (nu+1)_k)` in double-double arithmetic.
fn j_series_sum(nu: f64, w_sq: Complex64) -> Complex64 {
    let q = Cdd {
        re: Dd::from_f64(-0.25 * w_sq.re),
        im: Dd::from_f64(-0.25 * w_sq.im),
    };
    let one = Cdd { re: Dd::from_f64(1.0), im: Dd::ZERO };
    let mut term = one;
    let mut sum = one;
    for k in 1..2000 {
        let kf = k as f64;
        let (s, e) = two_sum(nu, kf);
        let denom = Dd { hi: s, lo: e }.mul_f64(kf);
        term = term.mul(q).div_real(denom);
        sum = sum.add(term);
        let t = term.abs_hi();
        if t == 0.0 || t < 1e-33 * sum.abs_hi() {
            break;
        }
    }
    sum.to_c64()
}

/// Hankel coefficients `a_k(nu)` until they are no longer useful for `|w|`.
/// Returns the partial sums `(P, Q)` and whether full precision was reached.
fn hankel_pq(nu: f64, w: Complex64) -> (Complex64, Complex64, bool) {
    let mu = 4.0 * nu * nu;
    let inv = w.inv();
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut ak = 1.0f64;
    let mut pow = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        ak *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        pow *= inv;
        let term = pow * ak;
        let mag = term.norm();
        if mag == 0.0 {
            return (p, q, true);
        }
        if mag > prev {
            return (p, q, false);
        }
        prev = mag;
        // sign pattern (-1)^{k/2} on even k, (-1)^{(k-1)/2} on odd k
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += term * sign;
        } else {
            q += term * sign;
        }
        if mag < 1e-17 * p.norm().max(q.norm()) {
            return (p, q, true);
        }
    }
    (p, q, false)
}

/// `J_nu(w)` from the Hankel expansion, for large `|w|` with `Re w >= 0`.
///
/// This is the explicit large-argument form; it has no upper range limit.
pub fn bessel_j_asymptotic(order: BesselOrder, w: Complex64) -> Complex64 {
    let nu = order.nu();
    let (p, q, _) = hankel_pq(nu, w);
    let chi = w - (0.5 * nu + 0.25) * std::f64::consts::PI;
    let amp = (Complex64::new(2.0 / std::f64::consts::PI, 0.0) / w).sqrt();
    amp * (p * chi.cos() - q * chi.sin())
}

/// `J_nu(w)` on the principal branch of `w^nu`, for `|w| <= W_MAX`.
pub fn bessel_j(order: BesselOrder, w: Complex64) -> Result<Complex64> {
    let nu = order.nu();
    let r = w.norm();
    if !r.is_finite() {
        return domain("bessel_j argument is not finite");
    }
    if r > W_MAX {
        return Err(Error::OutOfRange(format!(
            "|w| = {r} exceeds {W_MAX}; use bessel_j_asymptotic"
        )));
    }
    if r == 0.0 {
        return match nu {
            0.0 => Ok(Complex64::new(1.0, 0.0)),
            n if n > 0.0 => Ok(Complex64::new(0.0, 0.0)),
            _ => Err(Error::Singular(format!("J_{nu}(0) is infinite"))),
        };
    }
    if r > HANKEL_SWITCH && w.re >= 0.0 {
        let (_, _, ok) = hankel_pq(nu, w);
        if ok {
            return Ok(bessel_j_asymptotic(order, w));
        }
    }
    let half = w * 0.5;
    let pref = (half.ln() * nu).exp();
    Ok(pref * j_series_sum(nu, w * w) / gamma(nu + 1.0))
}

/// The entire function `(w/2)^{-nu} J_nu(w)`, taken as a function of `w^2`.
///
/// It carries no branch choice, which is what the edge kernels need: their
/// `(sqrt Z)^{-nu}` prefactors cancel against the `w^nu` of the series.
/// Large arguments are routed through the Hankel expansion.
pub fn bessel_j_entire(order: BesselOrder, w_sq: Complex64) -> Complex64 {
    let nu = order.nu();
    if w_sq.norm() > HANKEL_SWITCH * HANKEL_SWITCH {
        let w = w_sq.sqrt();
        let (_, _, ok) = hankel_pq(nu, w);
        if ok || w_sq.norm() > W_MAX * W_MAX {
            let j = bessel_j_asymptotic(order, w);
            return j * ((w * 0.5).ln() * (-nu)).exp();
        }
    }
    j_series_sum(nu, w_sq) * (-lgam(nu + 1.0)).exp()
}

/// Log-scaled series for `I_nu(x)`: returns `ln sum_k (x^2/4)^k/(k! (nu+1)_k)`.
fn ln_i_series_sum(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut offset = 0.0f64;
    let mut k = 1u32;
    loop {
        let kf = f64::from(k);
        term *= q / (kf * (nu + kf));
        sum += term;
        if sum > 1e250 {
            sum *= 1e-250;
            term *= 1e-250;
            offset += 250.0 * std::f64::consts::LN_10;
        }
        // past the peak of the terms and negligible
        if kf * (kf + nu) > q && term < 1e-17 * sum {
            break;
        }
        k += 1;
        if k > 1_000_000 {
            break;
        }
    }
    sum.ln() + offset
}

/// Exponential expansion sum `sum_k (-1)^k a_k(nu) / x^k`, if it converges to
/// full precision before its terms start to grow.
fn i_asymptotic_sum(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut ak = 1.0f64;
    let mut sum = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        ak *= -(mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        let mag = ak.abs();
        if mag == 0.0 || mag < 1e-17 * sum.abs() {
            return Some(sum + ak);
        }
        if mag > prev {
            return None;
        }
        prev = mag;
        sum += ak;
    }
    None
}

/// `ln I_nu(x)` from the power series alone.
pub fn ln_bessel_i_series(order: BesselOrder, x: f64) -> f64 {
    let nu = order.nu();
    nu * (0.5 * x).ln() - lgam(nu + 1.0) + ln_i_series_sum(nu, x)
}

/// `ln I_nu(x)` from the large-argument expansion, `None` where it cannot
/// reach full precision.
pub fn ln_bessel_i_asymptotic(order: BesselOrder, x: f64) -> Option<f64> {
    let s = i_asymptotic_sum(order.nu(), x)?;
    if s <= 0.0 {
        return None;
    }
    Some(x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + s.ln())
}

/// `ln I_nu(x)` for `x > 0`.
pub fn ln_bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("bessel_i needs a finite x >= 0, got {x}"));
    }
    if x == 0.0 {
        let nu = order.nu();
        return Ok(if nu == 0.0 {
            0.0
        } else if nu > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
    }
    if x >= I_SWITCH {
        if let Some(v) = ln_bessel_i_asymptotic(order, x) {
            return Ok(v);
        }
    }
    Ok(ln_bessel_i_series(order, x))
}

/// `I_nu(x)` for `x >= 0` (overflows to infinity for very large `x`).
pub fn bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    Ok(ln_bessel_i(order, x)?.exp())
}

/// `ln[(x/2)^nu / I_nu(x)]`, finite at `x = 0` where it equals `ln Gamma(nu+1)`.
pub fn ln_bessel_i_ratio(order: BesselOrder, x: f64) -> Result<f64> {
    let nu = order.nu();
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("bessel_i needs a finite x >= 0, got {x}"));
    }
    if x < I_SWITCH {
        return Ok(lgam(nu + 1.0) - ln_i_series_sum(nu, x));
    }
    Ok(nu * (0.5 * x).ln() - ln_bessel_i(order, x)?)
}
