mod common;

use common::c;
use ellipse_gas::kernels_limit::*;
use ellipse_gas::quadrature::gauss_legendre_unit;
use ellipse_gas::specialfns::{bessel_i, bessel_j, gamma, BesselOrder};
use ellipse_gas::{Complex64, EllipseGeometry, FiniteKernel, GasFamily};
use proptest::prelude::*;
use std::f64::consts::PI;

/// `int_0^1 f(c) dc` with plain Gauss–Legendre.
fn gl(n: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    gauss_legendre_unit(n).iter().map(|&(x, w)| f(x) * w).sum()
}

/// Edge kernel straight from its Bessel-function form, with `sqrt Z` taken on
/// the branch selected by `flip`.
fn edge_weak_direct(a: f64, s: f64, z1: Complex64, z2: Complex64, flip: [bool; 2]) -> Complex64 {
    let nu = a + 0.5;
    let o = BesselOrder::new(nu).unwrap();
    let root = |z: Complex64, f: bool| if f { -z.sqrt() } else { z.sqrt() };
    let (r1, r2) = (root(z1, flip[0]), root(z2.conj(), flip[1]));
    let wall = |z: Complex64| (s * s / 4.0 + z.re - (z.im / s).powi(2)).powf(a / 2.0);
    let pref = (s / 2.0).powf(a - 0.5) / (4.0 * PI.sqrt() * gamma(a + 1.0)) * wall(z1) * wall(z2);
    let branch = (r1.ln() * -nu).exp() * (r2.ln() * -nu).exp();
    let integral = gl(200, |t| {
        bessel_j(o, r1 * t).unwrap() * bessel_j(o, r2 * t).unwrap() * (t.powf(a + 1.5) / bessel_i(o, t * s).unwrap())
    });
    integral * branch * pref
}

#[test]
fn edge_weak_matches_bessel_form_on_both_branches() {
    let pts = [c(0.5, 0.0), c(1.0, 0.3), c(2.0, -0.5), c(-0.1, 0.2), c(3.0, 1.0)];
    for &(a, s) in &[(0.0, 1.0), (1.0, 1.0), (2.5, 2.0)] {
        for i in 0..pts.len() {
            let (z1, z2) = (pts[i], pts[(i + 2) % pts.len()]);
            let k = edge_weak(a, s, z1, z2).unwrap();
            for flip in [[false, false], [true, false], [false, true], [true, true]] {
                let d = edge_weak_direct(a, s, z1, z2, flip);
                assert!((k - d).norm() < 1e-11 * (1.0 + k.norm()), "{a} {s} {z1} {z2} {flip:?}: {k} vs {d}");
            }
        }
    }
}

#[test]
fn left_focus_kernels_are_branch_free() {
    // sin(c r1) sin(c r2) / (r1 r2) and cos(c r1) cos(c r2) do not see the sign of r
    let (a, s) = (1.0, 1.5);
    let (z1, z2) = (c(0.7, 0.4), c(1.2, -0.3));
    let o = BesselOrder::new(a + 0.5).unwrap();
    let wall = |z: Complex64| (1.0 - 2.0 / (s * s) * (z.norm() - z.re)).powf(a / 2.0);
    let pref = (s / 2.0).powf(a - 0.5) / (2.0 * PI.powf(1.5) * gamma(a + 1.0)) * wall(z1) * wall(z2);
    for sign in [1.0, -1.0] {
        let (r1, r2) = (z1.sqrt() * sign, z2.conj().sqrt());
        let sine = gl(120, |t| (r1 * t).sin() * (r2 * t).sin() * (t.powf(a + 0.5) / bessel_i(o, t * s).unwrap()))
            / (r1 * r2)
            * pref;
        let cosine = gl(120, |t| (r1 * t).cos() * (r2 * t).cos() * (t.powf(a + 0.5) / bessel_i(o, t * s).unwrap()))
            / (z1.norm() * z2.norm()).sqrt()
            * pref;
        assert!((sine - edge_weak_minus_sine(a, s, z1, z2).unwrap()).norm() < 1e-12);
        assert!((cosine - edge_weak_minus_cosine(a, s, z1, z2).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn global_v_is_independent_of_square_root_choice() {
    // the series is odd in each p_j and so is its prefactor; check against the
    // finite kernel, whose polynomials involve no square roots
    let tau = 0.4;
    let g = EllipseGeometry::new(tau).unwrap();
    let k = FiniteKernel::new(GasFamily::ChebyshevV, g, 1500).unwrap();
    let r = (2.0 * tau).sqrt();
    for &(z1, z2) in &[(c(-0.5, 0.1), c(0.3, -0.4)), (c(-0.9, -0.2), c(-0.6, 0.3)), (c(0.2, 0.0), c(-0.3, 0.0))] {
        let fin = k.eval(z1, z2).unwrap() / (2.0 * tau);
        let glob = global_v(tau, z1 * r, z2 * r).unwrap();
        assert!((fin - glob).norm() < 1e-9 * glob.norm(), "{fin} {glob}");
    }
}

#[test]
fn bessel_kernel_closed_form() {
    // a = 0, X1 = X2 = 4: (1/4)(1/2) int c J_{1/2}(2c)^2 = (1/(8 pi)) (1/2 - sin 4 / 8)
    let exact = (0.5 - 4f64.sin() / 8.0) / (8.0 * PI);
    assert!((bessel_kernel(0.0, 4.0, 4.0).unwrap() - exact).abs() < 1e-14);
    // a = -1: J_{-1/2}(w) = sqrt(2/(pi w)) cos w
    let (x1, x2): (f64, f64) = (1.3, 2.2);
    let (r1, r2) = (x1.sqrt(), x2.sqrt());
    let d = r1 - r2;
    let sm = r1 + r2;
    let exact = 1.0 / (4.0 * PI * (x1 * x2).sqrt()) * (d.sin() / d + sm.sin() / sm);
    assert!((bessel_kernel(-1.0, x1, x2).unwrap() - exact).abs() < 1e-14);
    let diag = bessel_kernel(-0.5, 2.0, 2.0).unwrap();
    assert!(diag.is_finite() && diag > 0.0);
}

#[test]
fn edge_strong_examples() {
    let o = c(0.0, 0.0);
    assert!((edge_strong(0.0, o, o).unwrap().re - 1.0 / (8.0 * PI)).abs() < 1e-16);
    // a = 0, lambda real: int_0^1 c e^{-c l} dc = (1 - (1 + l) e^{-l}) / l^2
    let l: f64 = 1.7;
    let exact = (1.0 - (1.0 + l) * (-l).exp()) / (l * l) / (4.0 * PI);
    assert!((edge_strong(0.0, c(1.0, 0.3), c(2.4, 0.3)).unwrap().re - exact).abs() < 1e-15);
    let pts = [c(0.0, 0.0), c(0.5, 0.3), c(1.0, -0.5), c(2.0, 3.2), c(6.0, -4.0)];
    for &a in &[0.0, 1.0, 2.5, 7.0] {
        for &z1 in &pts {
            for &z2 in &pts {
                let x = edge_strong(a, z1, z2).unwrap();
                let y = edge_strong_truncated_unitary(a, z1, z2).unwrap();
                assert!((x - y).norm() < 1e-10 * (1.0 + x.norm()), "{a} {z1} {z2}");
            }
        }
    }
}

#[test]
fn chebyshev_t_edge_is_the_cosine_kernel_at_a_zero() {
    for &s in &[0.5, 1.0, 3.0] {
        for &(z1, z2) in &[(c(0.5, 0.0), c(0.5, 0.0)), (c(1.0, 0.3), c(2.0, -0.5)), (c(0.05, 0.1), c(4.0, 1.0))] {
            let a = edge_weak_chebyshev_t(s, z1, z2).unwrap();
            let b = edge_weak_minus_cosine(0.0, s, z1, z2).unwrap();
            assert!((a - b).norm() < 1e-12 * b.norm());
        }
    }
}

#[test]
fn hermitian_reductions() {
    let s = 1e-3;
    for &a in &[0.0, 1.0, 2.5] {
        let b = PI.sqrt() * gamma(a + 1.5) / gamma(a + 2.0);
        let norm = s * PI / (2.0 * (a + 1.0) * b);
        for &x in &[0.0, 0.5, 1.0, 2.0, 3.7] {
            let v = bulk_weak(a, s, c(x, 0.0), c(0.0, 0.0)).unwrap().re * norm;
            assert!((v - sine_kernel(x, 0.0)).abs() < 1e-3);
            let (x1, x2) = (x + 0.3, 1.1);
            let e = edge_weak(a, s, c(x1, 0.0), c(x2, 0.0)).unwrap().re * norm;
            assert!((e - bessel_kernel(a, x1, x2).unwrap()).abs() < 1e-3);
            let e = edge_weak_minus_sine(a, s, c(x1, 0.0), c(x2, 0.0)).unwrap().re * norm;
            assert!((e - bessel_kernel(0.0, x1, x2).unwrap()).abs() < 1e-3);
            let e = edge_weak_minus_cosine(a, s, c(x1, 0.0), c(x2, 0.0)).unwrap().re * norm;
            assert!((e - bessel_kernel(-1.0, x1, x2).unwrap()).abs() < 1e-3);
        }
    }
}

#[test]
fn strong_limits() {
    let bulk = [c(0.0, 0.0), c(0.3, 0.1), c(-0.5, 0.2), c(0.2, -0.25), c(1.0, 0.05)];
    let edge = [c(0.0, 0.0), c(0.5, 0.3), c(1.0, -0.5), c(2.0, 0.2), c(0.3, 1.0)];
    for &a in &[0.0, 1.0, 2.5] {
        let s = 40.0;
        for i in 0..5 {
            for j in [i, (i + 1) % 5] {
                let w = bulk_weak(a, s, bulk[i] * s, bulk[j] * s).unwrap() * (s * s);
                let st = bulk_strong(a, bulk[i], bulk[j]).unwrap();
                assert!((w - st).norm() < 1e-3, "{a} {w} {st}");
            }
        }
        let s = 50.0;
        let map = |z: Complex64| c(s / 2.0 * z.re - s * s / 4.0, s / 2.0 * z.im);
        for i in 0..5 {
            for j in [i, (i + 1) % 5] {
                let w = edge_weak(a, s, map(edge[i]), map(edge[j])).unwrap() * (s * s / 4.0);
                let st = edge_strong(a, edge[i], edge[j]).unwrap();
                assert!((w - st).norm() < 1e-3, "{a} {w} {st}");
            }
        }
    }
}

#[test]
fn ginibre_from_bulk_strong() {
    let a = 200.0;
    let us = [c(0.0, 0.0), c(0.3, 0.0), c(0.0, 0.2), c(-0.2, 0.15), c(0.25, -0.1)];
    let k = |u1: Complex64, u2: Complex64| bulk_strong(a, u1 / a.sqrt(), u2 / a.sqrt()).unwrap() / a;
    for i in 0..5 {
        for j in 0..5 {
            let p = k(us[i], us[j]) * k(us[j], us[i]);
            let q = ginibre_kernel(us[i], us[j]) * ginibre_kernel(us[j], us[i]);
            assert!((p - q).norm() < 1e-2, "{} {}", us[i], us[j]);
        }
    }
}

#[test]
fn ginibre_limit_improves_like_one_over_a() {
    let u = (c(0.2, 0.9), c(-0.3, 0.4));
    let err = |a: f64| {
        let k = |u1: Complex64, u2: Complex64| bulk_strong(a, u1 / a.sqrt(), u2 / a.sqrt()).unwrap() / a;
        let p = k(u.0, u.1) * k(u.1, u.0);
        (p - ginibre_kernel(u.0, u.1) * ginibre_kernel(u.1, u.0)).norm()
    };
    let r = err(200.0) / err(800.0);
    assert!((3.5..4.5).contains(&r), "{r}");
}

#[test]
fn bulk_from_edge() {
    let (e, b) = bulk_from_edge_check(0.0, 1.0, 1.0, c(0.0, 0.0), c(0.0, 0.0), 1e4).unwrap();
    assert!((e - b).norm() < 1e-2);
    let (e, b) = bulk_from_edge_check(1.0, 1.0, 0.7, c(0.2, 0.1), c(-0.1, 0.2), 1e4).unwrap();
    assert!((e - b).norm() < 1e-2);
    // at kappa = 1 the kappa form is the bulk kernel itself
    let (z1, z2) = (c(0.3, 0.2), c(-0.4, -0.1));
    assert_eq!(bulk_weak_kappa(1.5, 2.0, 1.0, z1, z2).unwrap(), bulk_weak(1.5, 2.0, z1, z2).unwrap());
}

#[test]
fn bulk_from_edge_error_envelope_decays_like_inverse_root_h() {
    // the discrepancy oscillates in h; compare its envelope over [h, 2h]
    let envelope = |h0: f64| {
        (0..12)
            .map(|k| {
                let h = h0 * (1.0 + k as f64 / 11.0);
                let (e, b) = bulk_from_edge_check(0.0, 1.0, 1.0, c(0.0, 0.0), c(0.0, 0.0), h).unwrap();
                (e - b).norm()
            })
            .fold(0.0f64, f64::max)
    };
    let r = envelope(6400.0) / envelope(400.0);
    assert!((0.15..0.4).contains(&r), "{r}");
}

#[test]
fn global_kernels_rotational_limit() {
    let pts = [c(0.1, 0.2), c(-0.2, 0.1), c(0.25, 0.0), c(0.0, -0.15), c(0.2, -0.2)];
    let v_of = |tau: f64| EllipseGeometry::new(tau).unwrap().v();
    for &z1 in &pts {
        for &z2 in &pts {
            let u = global_u(1e-3, z1, z2).unwrap() - global_rot_u(z1, z2).unwrap();
            assert!(u.norm() < 1e-4, "{z1} {z2} {u}");
            // the constant term of the first-kind series survives as
            // 1 / (2 pi |z1||z2| ln v), which vanishes only logarithmically
            let tau = 1e-7;
            let t = global_t(tau, z1, z2).unwrap() - global_rot_t(z1, z2).unwrap();
            let lead = 1.0 / (2.0 * PI * z1.norm() * z2.norm() * v_of(tau).ln());
            assert!((t - lead).norm() < 1e-4 * lead, "{z1} {z2} {t} {lead}");
            // the third-kind gap closes at least like sqrt(tau)
            let gap = |tau: f64| (global_v(tau, z1, z2).unwrap() - global_rot_v(z1, z2).unwrap()).norm();
            let r = gap(1e-5) / gap(1e-7);
            assert!(r > 8.0, "{z1} {z2} {r}");
        }
    }
}

#[test]
fn global_u_matches_finite_kernel() {
    let tau = 0.5;
    let g = EllipseGeometry::new(tau).unwrap();
    let k = FiniteKernel::new(GasFamily::Gegenbauer { a: 0.0 }, g, 2000).unwrap();
    let r = (2.0 * tau).sqrt();
    let pts = [c(0.0, 0.0), c(0.5, 0.2), c(-0.9, -0.1), c(0.3, -0.5), c(1.0, 0.2)];
    for i in 0..5 {
        let (z1, z2) = (pts[i], pts[(i + 1) % 5]);
        let fin = k.eval(z1 / r, z2 / r).unwrap() / (2.0 * tau);
        let glob = global_u(tau, z1, z2).unwrap();
        assert!((fin - glob).norm() < 1e-6);
    }
}

#[test]
fn bulk_density_depends_on_y_only() {
    for &(a, s) in &[(1.0, 1.0), (0.0, 3.0)] {
        let y = 0.3 * s / 2.0;
        let d0 = bulk_weak(a, s, c(0.0, y), c(0.0, y)).unwrap().re;
        for &x in &[0.7, -2.1, 10.0] {
            let d = bulk_weak(a, s, c(x, y), c(x, y)).unwrap().re;
            assert!((d - d0).abs() < 1e-12);
        }
    }
}

#[test]
fn edge_density_depends_on_both_coordinates() {
    let d = |z: Complex64| edge_weak(1.0, 1.0, z, z).unwrap().re;
    assert!((d(c(0.5, 0.0)) - d(c(1.5, 0.0))).abs() > 1e-4);
    assert!((d(c(0.5, 0.0)) - d(c(0.5, 0.6))).abs() > 1e-4);
}

/// Diagonal in strong variables, normalised to unit mass across the strip.
fn strip_profile(a: f64, s: f64, y: f64) -> f64 {
    let rho = |t: f64| bulk_weak(a, s, c(0.0, s * t), c(0.0, s * t)).unwrap().re;
    let mass = gl(96, |u| Complex64::new(rho(u - 0.5), 0.0)).re;
    rho(y) / mass
}

#[test]
fn non_hermiticity_pushes_to_the_wall_and_charge_pushes_back() {
    assert!(strip_profile(1.0, 10.0, 0.0) < strip_profile(1.0, 1.0, 0.0));
    assert!(strip_profile(1.0, 10.0, 0.4) > strip_profile(1.0, 1.0, 0.4));
    assert!(strip_profile(5.0, 1.0, 0.0) > strip_profile(1.0, 1.0, 0.0));
    assert!(strip_profile(5.0, 1.0, 0.45) < strip_profile(1.0, 1.0, 0.45));
    assert!(strip_profile(1.0, 1.0, 0.45) < strip_profile(0.0, 1.0, 0.45));
}

#[test]
fn doubled_nodes_agree() {
    for &(z1, z2) in &[(c(0.5, 0.0), c(0.5, 0.0)), (c(2.0, -0.5), c(3.0, 1.0)), (c(30.0, 2.0), c(25.0, -1.0))] {
        let a = edge_weak_nodes(1.0, 1.0, z1, z2, 64).unwrap();
        let b = edge_weak_nodes(1.0, 1.0, z1, z2, 128).unwrap();
        assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
    }
}

fn bulk_point(s: f64) -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -0.5..0.5f64).prop_map(move |(x, y)| c(x, y * s))
}

fn edge_point(s: f64) -> impl Strategy<Value = Complex64> {
    (0.0..4.0f64, -1.0..1.0f64).prop_map(move |(x, y)| {
        let y = y * s * (x + s * s / 4.0).sqrt();
        c(x, y)
    })
}

fn check_hermitian(k: &LimitKernelSpec, z1: Complex64, z2: Complex64) -> Result<(), TestCaseError> {
    let a = k.eval(z1, z2).unwrap();
    let b = k.eval(z2, z1).unwrap();
    prop_assert!((a - b.conj()).norm() <= 1e-10 * (1.0 + a.norm()), "{} {z1} {z2}", k.name());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bulk_kernels_hermitian(z1 in bulk_point(1.0), z2 in bulk_point(1.0), a in 0.0..3.0f64) {
        check_hermitian(&LimitKernelSpec::BulkWeak { a, s: 1.0 }, z1, z2)?;
        let (u1, u2) = (z1 * 0.8, z2 * 0.8);
        check_hermitian(&LimitKernelSpec::BulkStrong { a }, u1, u2)?;
        check_hermitian(&LimitKernelSpec::Ginibre, z1, z2)?;
        check_hermitian(&LimitKernelSpec::Sine, z1, z2)?;
    }

    #[test]
    fn edge_kernels_hermitian(z1 in edge_point(1.5), z2 in edge_point(1.5), a in 0.0..3.0f64) {
        check_hermitian(&LimitKernelSpec::EdgeWeak { a, s: 1.5 }, z1, z2)?;
        check_hermitian(&LimitKernelSpec::EdgeWeakMinusSine { a, s: 1.5 }, z1, z2)?;
        check_hermitian(&LimitKernelSpec::EdgeWeakMinusCosine { a, s: 1.5 }, z1, z2)?;
        check_hermitian(&LimitKernelSpec::EdgeStrong { a }, z1, z2)?;
        check_hermitian(&LimitKernelSpec::Bessel { a }, c(z1.re, 0.0), c(z2.re, 0.0))?;
    }

    #[test]
    fn global_kernels_hermitian(r1 in 0.05..0.95f64, t1 in 0.0..std::f64::consts::TAU, r2 in 0.05..0.95f64, t2 in 0.0..std::f64::consts::TAU, tau in 0.1..0.9f64) {
        let (ex, ey) = ((1.0 + tau).sqrt(), (1.0 - tau).sqrt());
        let z1 = c(r1 * ex * t1.cos(), r1 * ey * t1.sin());
        let z2 = c(r2 * ex * t2.cos(), r2 * ey * t2.sin());
        for k in [LimitKernelSpec::GlobalU { tau }, LimitKernelSpec::GlobalT { tau }, LimitKernelSpec::GlobalV { tau }] {
            check_hermitian(&k, z1, z2)?;
        }
        let (w1, w2) = (c(r1 * t1.cos(), r1 * t1.sin()), c(r2 * t2.cos(), r2 * t2.sin()));
        for k in [LimitKernelSpec::GlobalRotU, LimitKernelSpec::GlobalRotT, LimitKernelSpec::GlobalRotV] {
            check_hermitian(&k, w1, w2)?;
        }
    }

    #[test]
    fn diagonals_are_nonnegative(z in edge_point(1.0), a in 0.0..3.0f64) {
        for k in [
            LimitKernelSpec::EdgeWeak { a, s: 1.0 },
            LimitKernelSpec::EdgeWeakMinusSine { a, s: 1.0 },
            LimitKernelSpec::EdgeWeakMinusCosine { a, s: 1.0 },
            LimitKernelSpec::EdgeStrong { a },
        ] {
            let d = k.eval(z, z).unwrap();
            prop_assert!(d.re >= -1e-14 && d.im.abs() < 1e-12 * (1.0 + d.re));
        }
    }
}
