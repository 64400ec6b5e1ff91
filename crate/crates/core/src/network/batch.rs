use ndarray::{s, Array1, Array2, ArrayView2, Axis, Zip};

use super::{Architecture, FirstLayer};
use crate::autodiff::Jet3;
use crate::error::{Error, Result};
use crate::orthopoly::eval_jacobi;

/// Network evaluation over a whole point set.
///
/// Rows are grouped in channel blocks of `n` points: block 0 holds values,
/// block `1 + 2k` first derivatives along coordinate `k`, block `2 + 2k`
/// second derivatives along it. Every layer is one matrix product over all
/// blocks; the bias only enters the value block.
pub struct BatchNetwork<'a> {
    arch: &'a Architecture,
}

struct LayerCache {
    input: Array2<f64>,
    pre: Array2<f64>,
    /// First three activation derivatives at the value-block pre-activations.
    tables: Option<[Array2<f64>; 3]>,
}

pub struct BatchOutput {
    n_points: usize,
    n_dirs: usize,
    out: Array2<f64>,
    caches: Vec<LayerCache>,
}

impl BatchOutput {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_dirs(&self) -> usize {
        self.n_dirs
    }

    pub fn value(&self, i: usize) -> f64 {
        self.out[[i, 0]]
    }

    pub fn values(&self) -> Vec<f64> {
        self.out.slice(s![..self.n_points, 0]).to_vec()
    }

    pub fn d1(&self, dir: usize, i: usize) -> f64 {
        self.out[[(1 + 2 * dir) * self.n_points + i, 0]]
    }

    pub fn d2(&self, dir: usize, i: usize) -> f64 {
        self.out[[(2 + 2 * dir) * self.n_points + i, 0]]
    }
}

/// Seeds of the channel gradient handed to [`BatchNetwork::backward`]:
/// `dL/d value_i`, and per direction `dL/d d1_i`, `dL/d d2_i`.
pub struct OutputGrad {
    pub value: Vec<f64>,
    pub d1: Vec<Vec<f64>>,
    pub d2: Vec<Vec<f64>>,
}

fn activation_tables(arch: &Architecture, layer: usize, pre_values: ArrayView2<f64>) -> Result<[Array2<f64>; 4]> {
    let shape = pre_values.raw_dim();
    let mut t = [Array2::zeros(shape), Array2::zeros(shape), Array2::zeros(shape), Array2::zeros(shape)];
    let orth = match (&arch.first_layer, layer) {
        (FirstLayer::Orthogonal { family, degrees }, 0) => Some((*family, degrees)),
        _ => None,
    };
    for ((i, j), &a) in pre_values.indexed_iter() {
        let y = match orth {
            Some((family, degrees)) => eval_jacobi(family, degrees[j], Jet3::seed(a))?,
            None => {
                let th = a.tanh();
                let sech2 = 1.0 - th * th;
                Jet3 { v: th, d1: sech2, d2: -2.0 * th * sech2, d3: -2.0 * sech2 * (1.0 - 3.0 * th * th) }
            }
        };
        t[0][[i, j]] = y.v;
        t[1][[i, j]] = y.d1;
        t[2][[i, j]] = y.d2;
        t[3][[i, j]] = y.d3;
    }
    Ok(t)
}

impl<'a> BatchNetwork<'a> {
    pub fn new(arch: &'a Architecture) -> Self {
        BatchNetwork { arch }
    }

    fn layer_view<'p>(&self, params: &'p [f64], layer: usize) -> (ArrayView2<'p, f64>, &'p [f64]) {
        let offset: usize = self.arch.layer_shapes().take(layer).map(|(o, i)| o * i + o).sum();
        let (o, i) = (self.arch.widths[layer + 1], self.arch.widths[layer]);
        let w = ArrayView2::from_shape((o, i), &params[offset..offset + o * i]).expect("layer shape");
        (w, &params[offset + o * i..offset + o * i + o])
    }

    /// Evaluate `points` with derivative channels along the first `n_dirs`
    /// coordinates (0 for values only).
    pub fn forward(&self, params: &[f64], points: &[Vec<f64>], n_dirs: usize) -> Result<BatchOutput> {
        let arch = self.arch;
        let d = arch.input_dim();
        if params.len() != arch.n_params() {
            return Err(Error::Shape(format!("{} parameters, expected {}", params.len(), arch.n_params())));
        }
        if n_dirs > d {
            return Err(Error::Shape(format!("{n_dirs} derivative directions for a {d}D input")));
        }
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptySet("batch points"));
        }
        let channels = 1 + 2 * n_dirs;
        let mut h = Array2::<f64>::zeros((channels * n, d));
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::Shape(format!("{}D point for a {d}D network", p.len())));
            }
            for c in 0..d {
                let (lo, hi) = (arch.domain.lo[c], arch.domain.hi[c]);
                h[[i, c]] = 2.0 * (p[c] - lo) / (hi - lo) - 1.0;
            }
        }
        for k in 0..n_dirs {
            let scale = 2.0 / (arch.domain.hi[k] - arch.domain.lo[k]);
            h.slice_mut(s![(1 + 2 * k) * n..(2 + 2 * k) * n, k]).fill(scale);
        }

        let last = arch.n_layers() - 1;
        let mut caches = Vec::with_capacity(arch.n_layers());
        for layer in 0..arch.n_layers() {
            let (w, b) = self.layer_view(params, layer);
            let mut pre = h.dot(&w.t());
            {
                let bias = ArrayView2::from_shape((1, b.len()), b).expect("bias shape");
                let mut values = pre.slice_mut(s![..n, ..]);
                values += &bias;
            }
            if layer == last {
                caches.push(LayerCache { input: h, pre: Array2::zeros((0, 0)), tables: None });
                h = pre;
                break;
            }
            let [s0, s1, s2, s3] = activation_tables(arch, layer, pre.slice(s![..n, ..]))?;
            let mut next = Array2::<f64>::zeros(pre.raw_dim());
            next.slice_mut(s![..n, ..]).assign(&s0);
            for k in 0..n_dirs {
                let a1 = pre.slice(s![(1 + 2 * k) * n..(2 + 2 * k) * n, ..]);
                let a2 = pre.slice(s![(2 + 2 * k) * n..(3 + 2 * k) * n, ..]);
                Zip::from(next.slice_mut(s![(1 + 2 * k) * n..(2 + 2 * k) * n, ..]))
                    .and(&s1)
                    .and(&a1)
                    .for_each(|o, &g1, &a1| *o = g1 * a1);
                Zip::from(next.slice_mut(s![(2 + 2 * k) * n..(3 + 2 * k) * n, ..]))
                    .and(&s1)
                    .and(&s2)
                    .and(&a1)
                    .and(&a2)
                    .for_each(|o, &g1, &g2, &a1, &a2| *o = g2 * a1 * a1 + g1 * a2);
            }
            caches.push(LayerCache { input: h, pre, tables: Some([s1, s2, s3]) });
            h = next;
        }
        if h.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("network output".into()));
        }
        Ok(BatchOutput { n_points: n, n_dirs, out: h, caches })
    }

    /// Parameter gradient of a loss whose sensitivities to the output
    /// channels are `grad`.
    pub fn backward(&self, params: &[f64], fwd: &BatchOutput, grad: &OutputGrad) -> Result<Vec<f64>> {
        let n = fwd.n_points;
        let nd = fwd.n_dirs;
        if grad.value.len() != n || grad.d1.len() != nd || grad.d2.len() != nd {
            return Err(Error::Shape("output gradient does not match the forward batch".into()));
        }
        let mut g = Array2::<f64>::zeros(((1 + 2 * nd) * n, 1));
        for i in 0..n {
            g[[i, 0]] = grad.value[i];
        }
        for k in 0..nd {
            if grad.d1[k].len() != n || grad.d2[k].len() != n {
                return Err(Error::Shape("derivative gradient length".into()));
            }
            for i in 0..n {
                g[[(1 + 2 * k) * n + i, 0]] = grad.d1[k][i];
                g[[(2 + 2 * k) * n + i, 0]] = grad.d2[k][i];
            }
        }

        let mut out = vec![0.0; params.len()];
        for layer in (0..self.arch.n_layers()).rev() {
            let cache = &fwd.caches[layer];
            let ga = match &cache.tables {
                None => g,
                Some([s1, s2, s3]) => {
                    let pre = &cache.pre;
                    let mut ga = Array2::<f64>::zeros(pre.raw_dim());
                    // value block: d/da of every channel that depends on a
                    let mut gv = &g.slice(s![..n, ..]) * s1;
                    for k in 0..nd {
                        let (r1, r2) = ((1 + 2 * k) * n, (2 + 2 * k) * n);
                        let a1 = pre.slice(s![r1..r1 + n, ..]);
                        let a2 = pre.slice(s![r2..r2 + n, ..]);
                        let g1 = g.slice(s![r1..r1 + n, ..]);
                        let g2 = g.slice(s![r2..r2 + n, ..]);
                        Zip::from(&mut gv)
                            .and(&g1)
                            .and(&a1)
                            .and(s2)
                            .for_each(|acc, &g1, &a1, &t2| *acc += g1 * t2 * a1);
                        Zip::from(&mut gv)
                            .and(&g2)
                            .and(&a1)
                            .and(&a2)
                            .and(s2)
                            .and(s3)
                            .for_each(|acc, &g2, &a1, &a2, &t2, &t3| *acc += g2 * (t3 * a1 * a1 + t2 * a2));
                        Zip::from(ga.slice_mut(s![r1..r1 + n, ..]))
                            .and(&g1)
                            .and(&g2)
                            .and(&a1)
                            .and(s1)
                            .and(s2)
                            .for_each(|o, &g1, &g2, &a1, &t1, &t2| *o = g1 * t1 + 2.0 * g2 * t2 * a1);
                        Zip::from(ga.slice_mut(s![r2..r2 + n, ..]))
                            .and(&g2)
                            .and(s1)
                            .for_each(|o, &g2, &t1| *o = g2 * t1);
                    }
                    ga.slice_mut(s![..n, ..]).assign(&gv);
                    ga
                }
            };
            let offset: usize = self.arch.layer_shapes().take(layer).map(|(o, i)| o * i + o).sum();
            let (w, b) = self.layer_view(params, layer);
            let (o, i) = w.dim();
            let gw = ga.t().dot(&cache.input);
            out[offset..offset + o * i].copy_from_slice(gw.as_slice().expect("contiguous"));
            let gb: Array1<f64> = ga.slice(s![..n, ..]).sum_axis(Axis(0));
            out[offset + o * i..offset + o * i + b.len()].copy_from_slice(gb.as_slice().expect("contiguous"));
            if layer == 0 {
                break;
            }
            g = ga.dot(&w);
        }
        Ok(out)
    }
}
