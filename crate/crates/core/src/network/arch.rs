use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::PolyFamily;
use crate::sampler::Domain;

/// Activation of the first hidden layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FirstLayer {
    /// Neuron `k` applies `P_{degrees[k]}` of `family`.
    Orthogonal { family: PolyFamily, degrees: Vec<usize> },
    /// Plain `tanh`, the simple-DNN comparator.
    Tanh,
}

/// Layer widths `[I, J, F1, ..., Fn]` plus input normalization bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Architecture {
    pub widths: Vec<usize>,
    pub first_layer: FirstLayer,
    pub domain: Domain,
}

impl Architecture {
    /// JDNN with degrees `1..=J` on the orthogonal layer.
    pub fn jdnn(widths: Vec<usize>, family: PolyFamily, domain: Domain) -> Result<Self> {
        let j = *widths.get(1).ok_or_else(|| Error::Shape("need at least 3 widths".into()))?;
        let arch = Architecture {
            widths,
            first_layer: FirstLayer::Orthogonal { family, degrees: (1..=j).collect() },
            domain,
        };
        arch.validate()?;
        Ok(arch)
    }

    pub fn simple_dnn(widths: Vec<usize>, domain: Domain) -> Result<Self> {
        let arch = Architecture { widths, first_layer: FirstLayer::Tanh, domain };
        arch.validate()?;
        Ok(arch)
    }

    /// Same widths and domain with a `tanh` first layer.
    pub fn to_simple_dnn(&self) -> Self {
        Architecture { first_layer: FirstLayer::Tanh, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.widths;
        if w.len() < 3 {
            return Err(Error::Shape(format!("need at least 3 widths, got {w:?}")));
        }
        if !(1..=2).contains(&w[0]) {
            return Err(Error::Shape(format!("input width must be 1 or 2, got {}", w[0])));
        }
        if *w.last().unwrap() != 1 {
            return Err(Error::Shape("output width must be 1".into()));
        }
        if w.contains(&0) {
            return Err(Error::Shape(format!("zero-width layer in {w:?}")));
        }
        if let FirstLayer::Orthogonal { family, degrees } = &self.first_layer {
            family.validate()?;
            if degrees.len() != w[1] {
                return Err(Error::Shape(format!(
                    "{} degrees for an orthogonal layer of width {}",
                    degrees.len(),
                    w[1]
                )));
            }
        }
        self.domain.validate()?;
        if self.domain.dim() != w[0] {
            return Err(Error::Shape(format!(
                "domain is {}D but the input width is {}",
                self.domain.dim(),
                w[0]
            )));
        }
        Ok(())
    }

    pub fn input_dim(&self) -> usize {
        self.widths[0]
    }

    pub fn n_layers(&self) -> usize {
        self.widths.len() - 1
    }

    /// `(fan_out, fan_in)` of each affine map.
    pub fn layer_shapes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.widths.windows(2).map(|w| (w[1], w[0]))
    }

    pub fn n_params(&self) -> usize {
        self.layer_shapes().map(|(o, i)| o * i + o).sum()
    }

    /// Short label such as `[1, 8, 16, 1]`.
    pub fn layers_label(&self) -> String {
        let parts: Vec<String> = self.widths.iter().map(|w| w.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}
