use jdnn::autodiff::{Jet2, Scalar};
use jdnn::metrics::error_report;
use jdnn::network::{forward, init_params, normalize_input, Architecture};
use jdnn::optim::{Phase, TrainTrace};
use jdnn::orthopoly::{eval_jacobi, PolyFamily};
use jdnn::sampler::{sample_boundary, sample_interior, sample_test, Domain, SampleSpec};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = PolyFamily> {
    prop_oneof![
        Just(PolyFamily::Legendre),
        Just(PolyFamily::Chebyshev1),
        (-0.9f64..3.0, -0.9f64..3.0).prop_map(|(a, b)| PolyFamily::Jacobi { alpha: a, beta: b }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_solves_its_differential_equation(fam in family(), n in 0usize..9, x in -0.99f64..0.99) {
        let (a, b) = fam.parameters();
        let y = eval_jacobi(fam, n, Jet2::seed(x)).unwrap();
        let nf = n as f64;
        let lhs = (1.0 - x * x) * y.d2 + (b - a - (a + b + 2.0) * x) * y.d1 + nf * (nf + a + b + 1.0) * y.v;
        let scale = y.d2.abs() + y.d1.abs() + y.v.abs() + 1.0;
        prop_assert!(lhs.abs() <= 1e-9 * scale * (1.0 + nf * nf), "residual {lhs}");
    }

    #[test]
    fn jet_chain_rule(x in -2.0f64..2.0) {
        // d/dx sin(x^2) and d²/dx² by hand
        let j = Jet2::seed(x).square().sin();
        prop_assert!((j.d1 - 2.0 * x * (x * x).cos()).abs() < 1e-12);
        let d2 = 2.0 * (x * x).cos() - 4.0 * x * x * (x * x).sin();
        prop_assert!((j.d2 - d2).abs() < 1e-11);
    }

    #[test]
    fn normalization_maps_domain_to_unit_box(lo in -5.0f64..5.0, w in 0.1f64..10.0, s in 0.0f64..=1.0) {
        let d = Domain::interval(lo, lo + w);
        let z = normalize_input(&[lo + s * w], &d);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&z[0]));
        prop_assert!((z[0] - (2.0 * s - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn samples_respect_the_domain(seed in any::<u64>(), n in 1usize..40) {
        let d = Domain::new(vec![-1.0, 2.0], vec![0.5, 3.0]).unwrap();
        let spec = SampleSpec { seed, n_interior: n, n_boundary: n, n_test: n, grid_shape: None };
        prop_assert!(sample_interior(&spec, &d).iter().all(|p| d.contains_open(p)));
        prop_assert!(sample_test(&spec, &d).iter().all(|p| d.contains_open(p)));
        prop_assert!(sample_boundary(&spec, &d).iter().all(|p| d.on_boundary(p)));
        prop_assert_eq!(sample_interior(&spec, &d), sample_interior(&spec, &d));
    }

    #[test]
    fn network_is_deterministic_and_finite(seed in any::<u64>(), x in 0.0f64..4.0) {
        let arch = Architecture::jdnn(vec![1, 5, 7, 1], PolyFamily::Legendre, Domain::interval(0.0, 4.0)).unwrap();
        let p = init_params(&arch, seed);
        let a = forward(&arch, &p, &[x], Some(0)).unwrap();
        let b = forward(&arch, &p, &[x], Some(0)).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.v.is_finite() && a.d1.is_finite() && a.d2.is_finite());
    }

    #[test]
    fn best_loss_is_trace_minimum(losses in prop::collection::vec(0.0f64..1e3, 1..50)) {
        let mut t = TrainTrace::new();
        for (i, l) in losses.iter().enumerate() {
            t.push(if i % 2 == 0 { Phase::Adam } else { Phase::Lbfgs }, *l, &[i as f64]);
        }
        let min = losses.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(t.best_loss, min);
        prop_assert_eq!(losses[t.best_index], min);
        prop_assert_eq!(t.best_theta[0] as usize, t.best_index);
    }

    #[test]
    fn rms_identity(u in prop::collection::vec(0.1f64..10.0, 1..30), noise in -1.0f64..1.0) {
        let p: Vec<f64> = u.iter().enumerate().map(|(i, v)| v + noise * (i as f64).sin()).collect();
        let r = error_report(&u, &p).unwrap();
        prop_assert!((r.rms * (u.len() as f64).sqrt() - r.l2).abs() <= 1e-12 * r.l2.max(1.0));
        prop_assert!(r.rms <= r.linf + 1e-15);
    }
}
