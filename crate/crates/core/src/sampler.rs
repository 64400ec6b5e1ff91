//! Seeded point sets for training, testing and error reporting.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), whose output stream is
//! fixed by its specification, so point sets are identical on every
//! platform for a given seed. Each point set draws from its own ChaCha
//! stream of the same seed.

use rand::distr::Open01;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the generator, echoed in run manifests.
pub const PRNG_NAME: &str = "ChaCha8 (rand_chacha 0.10, seed_from_u64, per-purpose stream ids)";

pub(crate) const STREAM_INTERIOR: u64 = 1;
pub(crate) const STREAM_BOUNDARY: u64 = 2;
pub(crate) const STREAM_TEST: u64 = 3;
pub(crate) const STREAM_PARAMS: u64 = 4;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Axis-aligned box `[lo_i, hi_i]` in one or two dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Domain {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let d = Domain { lo, hi };
        d.validate()?;
        Ok(d)
    }

    pub fn interval(a: f64, b: f64) -> Self {
        Domain { lo: vec![a], hi: vec![b] }
    }

    pub fn square(a: f64, b: f64) -> Self {
        Domain { lo: vec![a, a], hi: vec![b, b] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.len() != self.hi.len() || !(1..=2).contains(&self.lo.len()) {
            return Err(Error::Shape(format!(
                "domain needs matching 1D or 2D bounds, got {} and {}",
                self.lo.len(),
                self.hi.len()
            )));
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| !(l < h)) {
            return Err(Error::Config(format!("empty domain {:?}..{:?}", self.lo, self.hi)));
        }
        Ok(())
    }

    pub fn contains_open(&self, x: &[f64]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| v > l && v < h)
    }

    pub fn on_boundary(&self, x: &[f64]) -> bool {
        let inside = x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| v >= l && v <= h);
        inside && !self.contains_open(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub n_interior: usize,
    pub n_boundary: usize,
    pub n_test: usize,
    /// Points per axis of the reporting grid.
    pub grid_shape: Option<Vec<usize>>,
}

impl SampleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_interior == 0 || self.n_boundary == 0 || self.n_test == 0 {
            return Err(Error::Config("sample counts must be at least 1".into()));
        }
        Ok(())
    }
}

fn uniform_open(rng: &mut ChaCha8Rng, domain: &Domain, n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<f64> = domain
            .lo
            .iter()
            .zip(&domain.hi)
            .map(|(l, h)| {
                let u: f64 = rng.sample(Open01);
                l + (h - l) * u
            })
            .collect();
        // rounding can land exactly on the upper bound
        if domain.contains_open(&p) {
            out.push(p);
        }
    }
    out
}

/// `n_interior` i.i.d. uniform points strictly inside the domain.
pub fn sample_interior(spec: &SampleSpec, domain: &Domain) -> Vec<Vec<f64>> {
    uniform_open(&mut rng_for(spec.seed, STREAM_INTERIOR), domain, spec.n_interior)
}

/// Held-out uniform points, drawn from a stream disjoint from the training set.
pub fn sample_test(spec: &SampleSpec, domain: &Domain) -> Vec<Vec<f64>> {
    uniform_open(&mut rng_for(spec.seed, STREAM_TEST), domain, spec.n_test)
}

/// Dirichlet points: both endpoints in 1D, `n_boundary` points uniform in
/// arc length over the four edges in 2D.
pub fn sample_boundary(spec: &SampleSpec, domain: &Domain) -> Vec<Vec<f64>> {
    if domain.dim() == 1 {
        return vec![vec![domain.lo[0]], vec![domain.hi[0]]];
    }
    let mut rng = rng_for(spec.seed, STREAM_BOUNDARY);
    let (x0, y0, x1, y1) = (domain.lo[0], domain.lo[1], domain.hi[0], domain.hi[1]);
    let (w, h) = (x1 - x0, y1 - y0);
    let perimeter = 2.0 * (w + h);
    (0..spec.n_boundary)
        .map(|_| {
            let s = rng.random::<f64>() * perimeter;
            if s < w {
                vec![x0 + s, y0]
            } else if s < w + h {
                vec![x1, y0 + (s - w)]
            } else if s < 2.0 * w + h {
                vec![x1 - (s - w - h), y1]
            } else {
                vec![x0, (y1 - (s - 2.0 * w - h)).max(y0)]
            }
        })
        .collect()
}

/// Uniform tensor-product grid including both endpoints of every axis. The
/// last coordinate varies fastest.
pub fn report_grid(domain: &Domain, grid_shape: &[usize]) -> Result<Vec<Vec<f64>>> {
    if grid_shape.len() != domain.dim() {
        return Err(Error::Shape(format!(
            "grid shape {:?} does not match domain dimension {}",
            grid_shape,
            domain.dim()
        )));
    }
    if grid_shape.iter().any(|&k| k < 2) {
        return Err(Error::Config("report grid needs at least 2 points per axis".into()));
    }
    let axes: Vec<Vec<f64>> = grid_shape
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let (l, h) = (domain.lo[i], domain.hi[i]);
            let step = (h - l) / (k - 1) as f64;
            (0..k).map(|j| if j == k - 1 { h } else { l + step * j as f64 }).collect()
        })
        .collect();
    Ok(match axes.as_slice() {
        [a] => a.iter().map(|&x| vec![x]).collect(),
        [a, b] => a.iter().flat_map(|&x| b.iter().map(move |&y| vec![x, y])).collect(),
        _ => unreachable!("domain dimension is validated"),
    })
}

pub fn default_grid_shape(dim: usize) -> Vec<usize> {
    match dim {
        1 => vec![101],
        _ => vec![33; dim],
    }
}
