use super::*;
use crate::autodiff::Jet2;

fn points(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
}

fn legendre_closed(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        2 => 0.5 * (3.0 * x * x - 1.0),
        3 => 0.5 * (5.0 * x.powi(3) - 3.0 * x),
        4 => (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0,
        5 => (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0,
        _ => unreachable!(),
    }
}

fn chebyshev_closed(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        2 => 2.0 * x * x - 1.0,
        3 => 4.0 * x.powi(3) - 3.0 * x,
        4 => 8.0 * x.powi(4) - 8.0 * x * x + 1.0,
        5 => 16.0 * x.powi(5) - 20.0 * x.powi(3) + 5.0 * x,
        _ => unreachable!(),
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn base_cases() {
    assert_eq!(eval_jacobi(PolyFamily::Legendre, 1, 0.5).unwrap(), 0.5);
    let t3 = eval_jacobi(PolyFamily::Chebyshev1, 3, 0.3).unwrap();
    assert!((t3 - (-0.792)).abs() < 1e-15);
    let j1 = eval_jacobi(PolyFamily::jacobi(1.0, 1.0).unwrap(), 1, 0.25).unwrap();
    assert_eq!(j1, 0.5);
    for fam in [PolyFamily::Legendre, PolyFamily::Chebyshev1, PolyFamily::jacobi(0.3, 2.0).unwrap()] {
        assert_eq!(eval_jacobi(fam, 0, 0.9).unwrap(), 1.0);
    }
}

#[test]
fn invalid_jacobi_parameters() {
    assert!(matches!(PolyFamily::jacobi(-1.0, 0.0), Err(Error::InvalidFamily { .. })));
    let bad = PolyFamily::Jacobi { alpha: 0.0, beta: -1.5 };
    assert!(eval_jacobi(bad, 2, 0.1).is_err());
    assert!(weight_fn(bad, 0.1).is_err());
}

#[test]
fn basis_examples() {
    assert_eq!(eval_basis(PolyFamily::Legendre, &[1, 2], 1.0).unwrap(), vec![1.0, 1.0]);
    let t = eval_basis(PolyFamily::Chebyshev1, &[1, 2, 3], 0.0).unwrap();
    assert_eq!(t, vec![0.0, -1.0, 0.0]);
    let degrees: Vec<usize> = (1..=8).collect();
    let b = eval_basis(PolyFamily::Legendre, &degrees, 0.3).unwrap();
    for (k, &d) in degrees.iter().enumerate() {
        assert_eq!(b[k], eval_jacobi(PolyFamily::Legendre, d, 0.3).unwrap());
    }
    assert!(eval_basis::<f64>(PolyFamily::Legendre, &[], 0.3).is_err());
}

#[test]
fn weights() {
    assert_eq!(weight_fn(PolyFamily::Legendre, 0.7).unwrap(), 1.0);
    assert_eq!(weight_fn(PolyFamily::Chebyshev1, 0.0).unwrap(), 1.0);
    let w = weight_fn(PolyFamily::jacobi(1.0, 2.0).unwrap(), 0.5).unwrap();
    assert!((w - 1.125).abs() < 1e-15);
    assert!(matches!(weight_fn(PolyFamily::Legendre, 1.0), Err(Error::Domain(_))));
    assert!(weight_fn(PolyFamily::Legendre, -1.2).is_err());
}

#[test]
fn recurrence_matches_closed_forms() {
    for n in 0..=5 {
        for x in points(100) {
            let l = eval_jacobi(PolyFamily::Legendre, n, x).unwrap();
            let t = eval_jacobi(PolyFamily::Chebyshev1, n, x).unwrap();
            assert!(close(l, legendre_closed(n, x), 1e-13), "L_{n}({x})");
            assert!(close(t, chebyshev_closed(n, x), 1e-13), "T_{n}({x})");
        }
    }
}

#[test]
fn jacobi_zero_zero_is_legendre() {
    let j = PolyFamily::jacobi(0.0, 0.0).unwrap();
    for n in 0..=10 {
        for x in points(41) {
            let a = eval_jacobi(j, n, x).unwrap();
            let b = eval_jacobi(PolyFamily::Legendre, n, x).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn jacobi_half_half_is_scaled_chebyshev() {
    let j = PolyFamily::jacobi(-0.5, -0.5).unwrap();
    for n in 0..=10 {
        let at_one = eval_jacobi(j, n, 1.0).unwrap();
        for x in points(41) {
            let ratio = eval_jacobi(j, n, x).unwrap() / at_one;
            let t = eval_jacobi(PolyFamily::Chebyshev1, n, x).unwrap();
            assert!((ratio - t).abs() < 1e-10);
        }
    }
}

/// Residual of `-(1-x^2) y'' + ((a+b+2) x + a - b) y' - n(n+a+b+1) y`.
fn sturm_liouville_residual(family: PolyFamily, n: usize, x: f64) -> f64 {
    let (a, b) = family.parameters();
    let y = eval_jacobi(family, n, Jet2::seed(x)).unwrap();
    let nf = n as f64;
    -(1.0 - x * x) * y.d2 + ((a + b + 2.0) * x + a - b) * y.d1 - nf * (nf + a + b + 1.0) * y.v
}

#[test]
fn sturm_liouville_equation_holds() {
    let families = [
        PolyFamily::Legendre,
        PolyFamily::Chebyshev1,
        PolyFamily::jacobi(1.0, 1.0).unwrap(),
        PolyFamily::jacobi(0.5, -0.3).unwrap(),
        PolyFamily::jacobi(2.0, 0.7).unwrap(),
    ];
    for fam in families {
        for n in 0..=8 {
            for i in 1..=50 {
                let x = -1.0 + 2.0 * i as f64 / 51.0;
                let r = sturm_liouville_residual(fam, n, x);
                assert!(r.abs() <= 1e-8, "{fam} n={n} x={x}: {r}");
            }
        }
    }
}

#[test]
fn jet_derivatives_match_finite_differences() {
    let h = 1e-5;
    for fam in [PolyFamily::Legendre, PolyFamily::Chebyshev1, PolyFamily::jacobi(0.5, 1.5).unwrap()] {
        for n in 1..=8 {
            for x in [-0.93, -0.41, 0.07, 0.38, 0.86, 1.3] {
                let jet = eval_jacobi(fam, n, Jet2::seed(x)).unwrap();
                let f = |z: f64| eval_jacobi(fam, n, z).unwrap();
                let fd = (f(x + h) - f(x - h)) / (2.0 * h);
                assert!((jet.d1 - fd).abs() <= 1e-6 * fd.abs().max(1.0), "{fam} n={n} x={x}");
            }
        }
    }
}

#[test]
fn orthogonality_examples() {
    assert!(orthogonality_defect(PolyFamily::Legendre, 1, 2, 64).unwrap() < 1e-12);
    assert!(orthogonality_defect(PolyFamily::Chebyshev1, 2, 5, 128).unwrap() < 1e-10);
    let j = PolyFamily::jacobi(0.5, 0.5).unwrap();
    assert!(orthogonality_defect(j, 3, 4, 128).unwrap() < 1e-10);
    let singular = PolyFamily::jacobi(-0.5, -0.7).unwrap();
    assert!(orthogonality_defect(singular, 2, 6, 64).unwrap() < 1e-10);
}

#[test]
fn quadrature_reproduces_squared_norms() {
    // ∫ L_n^2 = 2 / (2n + 1), ∫ T_n^2 / sqrt(1 - x^2) = π / 2 for n ≥ 1
    let (xs, ws) = gauss_legendre(32);
    for n in 0..8 {
        let s: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(x, w)| w * eval_jacobi(PolyFamily::Legendre, n, *x).unwrap().powi(2))
            .sum();
        assert!((s - 2.0 / (2 * n + 1) as f64).abs() < 1e-13);
    }
    let (xs, ws) = gauss_jacobi(32, -0.5, -0.5);
    for n in 1..8 {
        let s: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(x, w)| w * eval_jacobi(PolyFamily::Chebyshev1, n, *x).unwrap().powi(2))
            .sum();
        assert!((s - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}

#[test]
fn family_parses_from_cli_syntax() {
    assert_eq!("legendre".parse::<PolyFamily>().unwrap(), PolyFamily::Legendre);
    assert_eq!("chebyshev1".parse::<PolyFamily>().unwrap(), PolyFamily::Chebyshev1);
    assert_eq!(
        "jacobi:0.5:-0.25".parse::<PolyFamily>().unwrap(),
        PolyFamily::Jacobi { alpha: 0.5, beta: -0.25 }
    );
    assert!("jacobi:-1:0".parse::<PolyFamily>().is_err());
    assert!("hermite".parse::<PolyFamily>().is_err());
    let f = PolyFamily::jacobi(1.5, 0.25).unwrap();
    assert_eq!(f.to_string().parse::<PolyFamily>().unwrap(), f);
}
