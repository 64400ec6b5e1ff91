use super::{Architecture, FirstLayer, ParamSet};
use crate::autodiff::{Jet2, Scalar};
use crate::error::{Error, Result};
use crate::orthopoly::eval_jacobi;
use crate::sampler::Domain;

/// Affine map of each coordinate from `[lo, hi]` onto `[-1, 1]`.
///
/// Points outside the box extrapolate linearly. Derivative channels pick up
/// the factor `2 / (hi - lo)`, so downstream derivatives stay with respect
/// to the original coordinates.
pub fn normalize_input<S: Scalar>(x: &[S], domain: &Domain) -> Vec<S> {
    x.iter()
        .zip(domain.lo.iter().zip(&domain.hi))
        .map(|(&v, (&lo, &hi))| (v - S::from_f64(lo)).scale(2.0 / (hi - lo)) - S::one())
        .collect()
}

/// Network output at one point, generic over the scalar type of both the
/// parameters and the inputs.
pub fn forward_generic<S: Scalar>(arch: &Architecture, theta: &[S], x: &[S]) -> Result<S> {
    if theta.len() != arch.n_params() {
        return Err(Error::Shape(format!("{} parameters, expected {}", theta.len(), arch.n_params())));
    }
    if x.len() != arch.input_dim() {
        return Err(Error::Shape(format!("{}D point for a {}D network", x.len(), arch.input_dim())));
    }
    let mut h = normalize_input(x, &arch.domain);
    let mut offset = 0;
    let last = arch.n_layers() - 1;
    for (layer, (fan_out, fan_in)) in arch.layer_shapes().enumerate() {
        let w = &theta[offset..offset + fan_out * fan_in];
        let b = &theta[offset + fan_out * fan_in..offset + fan_out * fan_in + fan_out];
        offset += fan_out * fan_in + fan_out;
        let mut next = Vec::with_capacity(fan_out);
        for r in 0..fan_out {
            let mut acc = b[r];
            for c in 0..fan_in {
                acc = acc + w[r * fan_in + c] * h[c];
            }
            let out = if layer == last {
                acc
            } else if layer == 0 {
                match &arch.first_layer {
                    FirstLayer::Orthogonal { family, degrees } => eval_jacobi(*family, degrees[r], acc)?,
                    FirstLayer::Tanh => acc.tanh(),
                }
            } else {
                acc.tanh()
            };
            next.push(out);
        }
        h = next;
    }
    Ok(h[0])
}

/// Value of the network at `x`; when `seed_dir` names a coordinate, the
/// first and second derivatives along it as well.
pub fn forward(arch: &Architecture, theta: &ParamSet, x: &[f64], seed_dir: Option<usize>) -> Result<Jet2> {
    if let Some(d) = seed_dir {
        if d >= arch.input_dim() {
            return Err(Error::Shape(format!("seed direction {d} for a {}D input", arch.input_dim())));
        }
    }
    let params: Vec<Jet2> = theta.as_slice().iter().map(|&p| Jet2::constant(p)).collect();
    let input: Vec<Jet2> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| if Some(i) == seed_dir { Jet2::seed(v) } else { Jet2::constant(v) })
        .collect();
    let out = forward_generic(arch, &params, &input)?;
    if !out.v.is_finite() {
        return Err(Error::NonFinite(format!("network output at {x:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::init_params;
    use crate::orthopoly::PolyFamily;

    #[test]
    fn normalization_examples() {
        let d = Domain::interval(0.0, 4.0);
        assert_eq!(normalize_input(&[0.0], &d), vec![-1.0]);
        assert_eq!(normalize_input(&[2.0], &d), vec![0.0]);
        assert_eq!(normalize_input(&[0.25, 0.75], &Domain::square(0.0, 1.0)), vec![-0.5, 0.5]);
        let j = normalize_input(&[Jet2::seed(1.0)], &d)[0];
        assert_eq!((j.v, j.d1, j.d2), (-0.5, 0.5, 0.0));
    }

    #[test]
    fn zero_network_outputs_zero() {
        let arch = Architecture::jdnn(vec![1, 2, 3, 1], PolyFamily::Legendre, Domain::interval(-1.0, 1.0)).unwrap();
        let p = ParamSet::zeros(&arch);
        assert_eq!(forward(&arch, &p, &[0.3], None).unwrap().v, 0.0);
        // the orthogonal layer alone sees pre-activation 0: [L1(0), L2(0)] = [0, -0.5]
        let basis = crate::orthopoly::eval_basis(PolyFamily::Legendre, &[1, 2], 0.0).unwrap();
        assert_eq!(basis, vec![0.0, -0.5]);
    }

    #[test]
    fn one_wide_identity_network() {
        let arch = Architecture::jdnn(vec![1, 1, 1], PolyFamily::Legendre, Domain::interval(-1.0, 1.0)).unwrap();
        let p = ParamSet::unflatten(&arch, vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let y = forward(&arch, &p, &[0.5], Some(0)).unwrap();
        assert_eq!((y.v, y.d1, y.d2), (0.5, 1.0, 0.0));
    }

    #[test]
    fn seeding_does_not_change_the_value() {
        let arch = Architecture::jdnn(
            vec![2, 4, 8, 1],
            PolyFamily::Chebyshev1,
            Domain::square(0.0, 1.0),
        )
        .unwrap();
        let p = init_params(&arch, 3);
        let x = [0.31, 0.77];
        let plain = forward(&arch, &p, &x, None).unwrap().v;
        for dir in 0..2 {
            assert_eq!(forward(&arch, &p, &x, Some(dir)).unwrap().v.to_bits(), plain.to_bits());
        }
        assert!(forward(&arch, &p, &x, Some(2)).is_err());
        assert!(forward(&arch, &p, &[0.1], None).is_err());
    }

    #[test]
    fn derivative_channels_match_finite_differences() {
        let arch = Architecture::jdnn(vec![1, 8, 16, 1], PolyFamily::Legendre, Domain::interval(0.0, 4.0)).unwrap();
        for seed in 0..10 {
            let p = init_params(&arch, seed);
            let f = |x: f64| forward(&arch, &p, &[x], None).unwrap().v;
            for x in [0.4, 1.3, 2.2, 3.7] {
                let j = forward(&arch, &p, &[x], Some(0)).unwrap();
                let h1 = 1e-6;
                let fd1 = (f(x + h1) - f(x - h1)) / (2.0 * h1);
                let h2 = 1e-3;
                let fd2 = (f(x + h2) - 2.0 * f(x) + f(x - h2)) / (h2 * h2);
                assert!((j.d1 - fd1).abs() <= 1e-5 * fd1.abs().max(1e-3), "seed {seed} x {x}");
                assert!((j.d2 - fd2).abs() <= 1e-4 * fd2.abs().max(1e-2), "seed {seed} x {x}");
            }
        }
    }
}
