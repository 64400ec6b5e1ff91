use std::fmt::Write as _;

use rand::RngExt;

use super::Architecture;
use crate::error::{Error, Result};
use crate::sampler::{rng_for, STREAM_PARAMS};

/// Weights and biases as one flat vector.
///
/// Ordering is layer-major; within a layer the weight matrix comes first,
/// row-major with shape `(fan_out, fan_in)`, followed by the bias vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    shapes: Vec<(usize, usize)>,
    flat: Vec<f64>,
}

impl ParamSet {
    pub fn zeros(arch: &Architecture) -> Self {
        let shapes: Vec<_> = arch.layer_shapes().collect();
        ParamSet { flat: vec![0.0; arch.n_params()], shapes }
    }

    pub fn unflatten(arch: &Architecture, flat: Vec<f64>) -> Result<Self> {
        if flat.len() != arch.n_params() {
            return Err(Error::Shape(format!(
                "{} parameters for an architecture needing {}",
                flat.len(),
                arch.n_params()
            )));
        }
        Ok(ParamSet { shapes: arch.layer_shapes().collect(), flat })
    }

    pub fn flatten(&self) -> Vec<f64> {
        self.flat.clone()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.flat
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.flat
    }

    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    fn offset(&self, layer: usize) -> usize {
        self.shapes[..layer].iter().map(|(o, i)| o * i + o).sum()
    }

    /// Row-major `(fan_out, fan_in)` weights of `layer`.
    pub fn weights(&self, layer: usize) -> &[f64] {
        let (o, i) = self.shapes[layer];
        let at = self.offset(layer);
        &self.flat[at..at + o * i]
    }

    pub fn bias(&self, layer: usize) -> &[f64] {
        let (o, i) = self.shapes[layer];
        let at = self.offset(layer) + o * i;
        &self.flat[at..at + o]
    }

    pub fn weights_mut(&mut self, layer: usize) -> &mut [f64] {
        let (o, i) = self.shapes[layer];
        let at = self.offset(layer);
        &mut self.flat[at..at + o * i]
    }

    pub fn bias_mut(&mut self, layer: usize) -> &mut [f64] {
        let (o, i) = self.shapes[layer];
        let at = self.offset(layer) + o * i;
        &mut self.flat[at..at + o]
    }

    /// Text checkpoint: a `# jdnn-params` header line with the layer shapes,
    /// then one value per line with 17 significant digits.
    pub fn to_text(&self) -> String {
        let shapes: Vec<String> = self.shapes.iter().map(|(o, i)| format!("{o}x{i}")).collect();
        let mut out = format!("# jdnn-params {}\n", shapes.join(" "));
        for v in &self.flat {
            let _ = writeln!(out, "{v:.16e}");
        }
        out
    }

    pub fn from_text(arch: &Architecture, text: &str) -> Result<Self> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.parse::<f64>().map_err(|_| Error::Config(format!("bad parameter value {l:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        ParamSet::unflatten(arch, values)
    }
}

/// Glorot-uniform weights, zero biases; deterministic in `seed`.
pub fn init_params(arch: &Architecture, seed: u64) -> ParamSet {
    let mut rng = rng_for(seed, STREAM_PARAMS);
    let mut p = ParamSet::zeros(arch);
    let shapes: Vec<_> = arch.layer_shapes().collect();
    for (l, (fan_out, fan_in)) in shapes.into_iter().enumerate() {
        let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
        for w in p.weights_mut(l) {
            *w = rng.random_range(-bound..=bound);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::PolyFamily;
    use crate::sampler::Domain;
    use proptest::prelude::*;

    fn arch() -> Architecture {
        Architecture::jdnn(vec![1, 16, 32, 1], PolyFamily::Legendre, Domain::interval(0.0, 4.0)).unwrap()
    }

    #[test]
    fn init_is_deterministic() {
        assert_eq!(init_params(&arch(), 42), init_params(&arch(), 42));
        assert_ne!(init_params(&arch(), 42), init_params(&arch(), 43));
    }

    #[test]
    fn glorot_bounds_and_zero_biases() {
        let p = init_params(&arch(), 9);
        let bound = (6.0f64 / 48.0).sqrt();
        assert!((bound - 0.35355).abs() < 1e-4);
        assert!(p.weights(1).iter().all(|w| w.abs() <= bound));
        assert!(p.weights(1).iter().any(|w| w.abs() > 0.5 * bound));
        for l in 0..3 {
            assert!(p.bias(l).iter().all(|&b| b == 0.0));
        }
    }

    #[test]
    fn layout_is_layer_major_weights_then_bias() {
        let a = Architecture::simple_dnn(vec![2, 3, 1], Domain::square(0.0, 1.0)).unwrap();
        let p = ParamSet::unflatten(&a, (0..13).map(|v| v as f64).collect()).unwrap();
        assert_eq!(p.weights(0), &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(p.bias(0), &[6.0, 7.0, 8.0]);
        assert_eq!(p.weights(1), &[9.0, 10.0, 11.0]);
        assert_eq!(p.bias(1), &[12.0]);
        assert!(ParamSet::unflatten(&a, vec![0.0; 12]).is_err());
    }

    #[test]
    fn text_checkpoint_round_trip() {
        let a = arch();
        let p = init_params(&a, 5);
        let text = p.to_text();
        assert!(text.starts_with("# jdnn-params 16x1 32x16 1x32\n"));
        assert_eq!(ParamSet::from_text(&a, &text).unwrap(), p);
    }

    proptest! {
        #[test]
        fn flatten_unflatten_identity(values in prop::collection::vec(-1e3f64..1e3, 609)) {
            let a = arch();
            let p = ParamSet::unflatten(&a, values.clone()).unwrap();
            prop_assert_eq!(p.flatten(), values);
        }
    }
}
