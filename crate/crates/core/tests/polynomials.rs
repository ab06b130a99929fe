mod common;

use common::*;
use ellipse_gas::geometry::{joukowsky_inverse, PolyFamily};
use ellipse_gas::polynomials::*;
use ellipse_gas::Complex64;
use proptest::prelude::*;

fn lg(x: f64) -> f64 {
    libm::lgamma(x)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn poch_ratio_ln(x: f64, y: f64, n: usize) -> f64 {
    // ln[(x)_n / (y)_n]
    let nf = n as f64;
    lg(x + nf) - lg(x) - lg(y + nf) + lg(y)
}

#[test]
fn gegenbauer_matches_explicit_sum() {
    for &a in &[-0.5, 0.0, 1.0, 2.5] {
        for z in points_in_ellipse(1.2, 0.7, 1.0, 10, 3) {
            for n in 0..=30 {
                let r = gegenbauer(n, a, z).value();
                let (e, mass) = gegenbauer_explicit_with_mass(n, a, z);
                let tol = (1e-10 * e.norm()).max(1e-14 * mass);
                assert!((r - e).norm() <= tol, "a={a} n={n} z={z}");
            }
        }
    }
}

#[test]
fn jacobi_matches_explicit_sum() {
    for &(al, be) in &[(0.5, 0.5), (1.5, -0.5), (-0.3, 0.5), (2.0, 1.0)] {
        for z in points_in_ellipse(1.2, 0.7, 1.0, 10, 4) {
            for n in 0..=15 {
                let r = jacobi(n, al, be, z).value();
                let e = jacobi_explicit(n, al, be, z);
                assert!(rel(r, e) < 1e-9 || (r - e).norm() < 1e-11, "({al},{be}) n={n}");
            }
        }
    }
}

#[test]
fn gegenbauer_jacobi_connection() {
    // C_n^{(l)} = (2l)_n / (l + 1/2)_n P_n^{(l-1/2, l-1/2)}
    for &a in &[-0.5, 0.0, 1.0, 2.5] {
        let l = a + 1.0;
        for z in points_in_ellipse(1.3, 0.8, 0.95, 10, 5) {
            for n in 0..=20 {
                let lhs = gegenbauer(n, a, z).value();
                let rhs = jacobi(n, a + 0.5, a + 0.5, z).value() * poch_ratio_ln(2.0 * l, l + 0.5, n).exp();
                assert!(rel(lhs, rhs) < 1e-9 || (lhs - rhs).norm() < 1e-11);
            }
        }
    }
}

#[test]
fn quadratic_maps() {
    for &a in &[-0.5, 0.0, 1.0, 2.5] {
        let l = a + 1.0;
        for z in points_in_ellipse(1.3, 0.8, 0.95, 10, 6) {
            let y = z * z * 2.0 - 1.0;
            for m in 0..=10 {
                let even = gegenbauer(2 * m, a, z).value();
                let e = jacobi(m, a + 0.5, -0.5, y).value() * poch_ratio_ln(l, 0.5, m).exp();
                assert!(rel(even, e) < 1e-9 || (even - e).norm() < 1e-11);
                let odd = gegenbauer(2 * m + 1, a, z).value();
                let o = z * jacobi(m, a + 0.5, 0.5, y).value() * poch_ratio_ln(l, 0.5, m + 1).exp();
                assert!(rel(odd, o) < 1e-9 || (odd - o).norm() < 1e-11);
            }
        }
    }
}

#[test]
fn special_value_at_one() {
    for &a in &[-0.5, 0.0, 1.0, 2.5] {
        for n in 0..=50 {
            let nf = n as f64;
            let exact = lg(nf + 2.0 * a + 2.0) - lg(2.0 * a + 2.0) - lg(nf + 1.0);
            let got = gegenbauer(n, a, c(1.0, 0.0)).ln_abs();
            assert!((got - exact).abs() < 1e-10 * exact.abs().max(1.0), "a={a} n={n}");
        }
    }
}

#[test]
fn generating_function() {
    // sum_n C_n^{(2)}(x) r^n = (1 - 2rx + r^2)^{-2}
    let (x, r) = (0.3f64, 0.4f64);
    let seq = gegenbauer_sequence(61, 1.0, c(x, 0.0));
    let s: f64 = seq.iter().enumerate().map(|(n, v)| v.value().re * r.powi(n as i32)).sum();
    let exact = (1.0 - 2.0 * r * x + r * r).powf(-2.0);
    assert!((s - exact).abs() < 1e-9);
}

#[test]
fn chebyshev_joukowsky_forms_agree_with_recurrence() {
    for z in points_in_ellipse(2.0, 1.5, 1.0, 20, 7) {
        let (w, _) = joukowsky_inverse(z);
        if (w - 1.0).norm() < 1e-6 || (w + 1.0).norm() < 1e-6 {
            continue;
        }
        for n in 0..=25 {
            let pairs = [
                (chebyshev_t(n, z), chebyshev_t_joukowsky(n, w)),
                (chebyshev_u(n, z), chebyshev_u_joukowsky(n, w)),
                (chebyshev_v(n, z), chebyshev_v_joukowsky(n, w)),
            ];
            for (r, j) in pairs {
                assert!(rel(r, j) < 1e-10 || (r - j).norm() < 1e-10, "n={n} z={z}");
            }
        }
    }
}

#[test]
fn third_kind_is_normalised_jacobi() {
    // V_n = (2n+1) P_n^{(1/2,-1/2)} / P_n^{(1/2,-1/2)}(1)
    for z in points_in_ellipse(1.5, 1.0, 1.0, 10, 8) {
        for n in 0..=12 {
            let nf = n as f64;
            let at1 = poch_ratio_ln(1.5, 1.0, n).exp();
            let r = jacobi(n, 0.5, -0.5, z).value() * ((2.0 * nf + 1.0) / at1);
            assert!(rel(chebyshev_v(n, z), r) < 1e-10 || (chebyshev_v(n, z) - r).norm() < 1e-10);
        }
    }
}

#[test]
fn monic_leading_coefficient_is_one() {
    // n-th forward difference on the grid 0, h, 2h, ... equals n! h^n times the leading coefficient
    let fams = [
        PolyFamily::Gegenbauer { a: 0.0 },
        PolyFamily::Gegenbauer { a: 1.0 },
        PolyFamily::Gegenbauer { a: 2.5 },
        PolyFamily::JacobiAsym { a: 0.5, plus: true },
        PolyFamily::JacobiAsym { a: -0.5, plus: false },
        PolyFamily::ChebyshevT,
        PolyFamily::ChebyshevU,
        PolyFamily::ChebyshevV,
    ];
    let h = 0.5f64;
    for fam in &fams {
        for n in 0..=6usize {
            let mut diff = 0.0;
            for k in 0..=n {
                let binom = (lg(n as f64 + 1.0) - lg(k as f64 + 1.0) - lg((n - k) as f64 + 1.0)).exp().round();
                let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
                diff += sign * binom * monic_value(fam, n, c(h * k as f64, 0.0)).value().re;
            }
            let lead = diff / ((lg(n as f64 + 1.0)).exp() * h.powi(n as i32));
            assert!((lead - 1.0).abs() < 1e-10, "{fam:?} n={n}: {lead}");
        }
    }
}

#[test]
fn monic_gegenbauer_exact_small_degree() {
    // a = 1: C_2^{(2)} = 12z^2 - 2, C_3^{(2)} = 32z^3 - 12z, C_4^{(2)} = 80z^4 - 48z^2 + 3
    let f = PolyFamily::Gegenbauer { a: 1.0 };
    for z in [c(0.25, 0.0), c(-0.5, 0.75), c(1.0, -1.0)] {
        let e2 = z * z - 1.0 / 6.0;
        let e3 = z * z * z - z * (12.0 / 32.0);
        let e4 = z.powi(4) - z * z * (48.0 / 80.0) + 3.0 / 80.0;
        assert!(rel(monic_value(&f, 2, z).value(), e2) < 1e-14);
        assert!(rel(monic_value(&f, 3, z).value(), e3) < 1e-14);
        assert!(rel(monic_value(&f, 4, z).value(), e4) < 1e-13);
    }
}

proptest! {
    #[test]
    fn parity(n in 0usize..40, a in -0.9f64..4.0, x in -1.5f64..1.5, y in -1.0f64..1.0) {
        let z = c(x, y);
        let p = gegenbauer(n, a, z).value();
        let m = gegenbauer(n, a, -z).value();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - m * sign).norm() <= 1e-13 * p.norm().max(1.0));
    }

    #[test]
    fn jacobi_reflection(n in 0usize..25, al in -0.9f64..3.0, be in -0.9f64..3.0, x in -1.2f64..1.2, y in -0.8f64..0.8) {
        let z = c(x, y);
        let l = jacobi(n, al, be, -z).value();
        let r = jacobi(n, be, al, z).value() * if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((l - r).norm() <= 1e-10 * r.norm().max(1.0));
    }

    #[test]
    fn scaled_value_round_trip(x in -1e3f64..1e3, y in -1e3f64..1e3) {
        let v = c(x, y);
        let s = ScaledValue::new(v);
        if v.norm() > 0.0 {
            prop_assert!((0.5..2.0).contains(&s.mantissa.norm()));
        }
        prop_assert!((s.value() - v).norm() <= 1e-15 * v.norm());
    }

    #[test]
    fn conjugate_symmetry(n in 0usize..30, a in -0.9f64..3.0, x in -1.5f64..1.5, y in -1.0f64..1.0) {
        let z = c(x, y);
        let p = gegenbauer(n, a, z).value();
        let q = gegenbauer(n, a, z.conj()).value();
        prop_assert!((p.conj() - q).norm() <= 1e-14 * p.norm().max(1.0));
    }
}
