use serde::{Deserialize, Serialize};

use super::{dot, LossGrad};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LineSearchConfig {
    pub c1: f64,
    pub c2: f64,
    pub max_evals: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        LineSearchConfig { c1: 1e-4, c2: 0.9, max_evals: 30 }
    }
}

impl LineSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.c1 && self.c1 < self.c2 && self.c2 < 1.0) {
            return Err(Error::Config(format!("need 0 < c1 < c2 < 1, got c1={} c2={}", self.c1, self.c2)));
        }
        if self.max_evals == 0 {
            return Err(Error::Config("line search needs at least one evaluation".into()));
        }
        Ok(())
    }
}

/// One accepted step `theta + alpha * d` with the data the Wolfe
/// conditions are stated in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineStep {
    pub alpha: f64,
    pub f0: f64,
    pub slope0: f64,
    pub f_alpha: f64,
    pub slope_alpha: f64,
}

impl LineStep {
    pub fn sufficient_decrease(&self, c1: f64) -> bool {
        self.f_alpha <= self.f0 + c1 * self.alpha * self.slope0
    }

    pub fn curvature(&self, c2: f64) -> bool {
        self.slope_alpha.abs() <= c2 * self.slope0.abs()
    }

    pub fn strong_wolfe(&self, c1: f64, c2: f64) -> bool {
        self.alpha > 0.0 && self.slope0 < 0.0 && self.sufficient_decrease(c1) && self.curvature(c2)
    }
}

/// An accepted step with the point and gradient reached.
#[derive(Clone, Debug)]
pub struct Accepted {
    pub step: LineStep,
    pub theta: Vec<f64>,
    pub grad: Vec<f64>,
    pub evals: usize,
}

#[derive(Clone, Copy)]
struct Trial {
    alpha: f64,
    f: f64,
    slope: f64,
}

struct Probe<'a, F> {
    f: &'a mut F,
    theta: &'a [f64],
    dir: &'a [f64],
    evals: usize,
    last: Option<(Vec<f64>, Vec<f64>)>,
}

impl<F: LossGrad> Probe<'_, F> {
    fn at(&mut self, alpha: f64) -> Result<Trial> {
        let x: Vec<f64> = self.theta.iter().zip(self.dir).map(|(t, d)| t + alpha * d).collect();
        self.evals += 1;
        let (f, g) = match self.f.eval(&x) {
            Ok(r) => r,
            Err(Error::NonFinite(_)) => return Ok(Trial { alpha, f: f64::INFINITY, slope: f64::NAN }),
            Err(e) => return Err(e),
        };
        if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
            return Ok(Trial { alpha, f: f64::INFINITY, slope: f64::NAN });
        }
        let slope = dot(&g, self.dir);
        self.last = Some((x, g));
        Ok(Trial { alpha, f, slope })
    }
}

/// Minimizer of the cubic matching values and slopes at `a` and `b`,
/// kept at least 10% of the bracket away from either end.
fn cubic_step(a: Trial, b: Trial) -> f64 {
    let (lo, hi) = if a.alpha < b.alpha { (a.alpha, b.alpha) } else { (b.alpha, a.alpha) };
    let mid = 0.5 * (lo + hi);
    if !(b.f.is_finite() && b.slope.is_finite() && a.slope.is_finite()) {
        return mid;
    }
    let d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    let disc = d1 * d1 - a.slope * b.slope;
    if !(disc >= 0.0) {
        return mid;
    }
    let d2 = (b.alpha - a.alpha).signum() * disc.sqrt();
    let denom = b.slope - a.slope + 2.0 * d2;
    if denom == 0.0 {
        return mid;
    }
    let t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
    let margin = 0.1 * (hi - lo);
    if t.is_finite() && t >= lo + margin && t <= hi - margin {
        t
    } else {
        mid
    }
}

/// Strong-Wolfe line search along a descent direction, by bracketing and
/// zoom with safeguarded cubic interpolation.
///
/// `Ok(None)` means no acceptable step was found within `max_evals`.
pub(crate) fn search<F: LossGrad>(
    f: &mut F,
    theta: &[f64],
    f0: f64,
    g0: &[f64],
    dir: &[f64],
    alpha0: f64,
    cfg: &LineSearchConfig,
) -> Result<Option<Accepted>> {
    let slope0 = dot(g0, dir);
    if !(slope0 < 0.0) {
        return Ok(None);
    }
    let mut probe = Probe { f, theta, dir, evals: 0, last: None };
    let origin = Trial { alpha: 0.0, f: f0, slope: slope0 };
    let armijo = |t: &Trial| t.f <= f0 + cfg.c1 * t.alpha * slope0;
    let curv = |t: &Trial| t.slope.abs() <= -cfg.c2 * slope0;

    let mut prev = origin;
    let mut alpha = alpha0;
    let bracket = loop {
        if probe.evals >= cfg.max_evals {
            return Ok(None);
        }
        let cur = probe.at(alpha)?;
        if !armijo(&cur) || (prev.alpha > 0.0 && cur.f >= prev.f) {
            break (prev, cur);
        }
        if curv(&cur) {
            return Ok(Some(accept(probe, cur, f0, slope0)));
        }
        if cur.slope >= 0.0 {
            break (cur, prev);
        }
        prev = cur;
        alpha *= 2.0;
    };

    let (mut lo, mut hi) = bracket;
    while probe.evals < cfg.max_evals {
        let a = cubic_step(lo, hi);
        if (a - lo.alpha).abs() <= f64::EPSILON * lo.alpha.abs().max(1e-300) {
            break;
        }
        let cur = probe.at(a)?;
        if !armijo(&cur) || cur.f >= lo.f {
            hi = cur;
        } else {
            if curv(&cur) {
                return Ok(Some(accept(probe, cur, f0, slope0)));
            }
            if cur.slope * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = cur;
        }
    }
    Ok(None)
}

fn accept<F>(probe: Probe<'_, F>, t: Trial, f0: f64, slope0: f64) -> Accepted {
    let (theta, grad) = probe.last.expect("accepted trial was evaluated last");
    Accepted {
        step: LineStep { alpha: t.alpha, f0, slope0, f_alpha: t.f, slope_alpha: t.slope },
        theta,
        grad,
        evals: probe.evals,
    }
}

/// Public entry point: search from `theta` along `dir` and return the
/// accepted step, the new point and its gradient.
pub fn strong_wolfe<F: LossGrad>(
    f: &mut F,
    theta: &[f64],
    dir: &[f64],
    alpha0: f64,
    cfg: &LineSearchConfig,
) -> Result<Option<Accepted>> {
    cfg.validate()?;
    let (f0, g0) = f.eval(theta)?;
    search(f, theta, f0, &g0, dir, alpha0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic(t: &[f64]) -> Result<(f64, Vec<f64>)> {
        let x = t[0];
        Ok(((x - 3.0).powi(4) + x * x, vec![4.0 * (x - 3.0).powi(3) + 2.0 * x]))
    }

    #[test]
    fn accepted_steps_satisfy_wolfe() {
        let cfg = LineSearchConfig::default();
        for (x0, a0) in [(0.0, 1.0), (0.0, 1e-6), (0.0, 100.0), (5.0, 1.0), (-4.0, 0.01)] {
            let g = quartic(&[x0]).unwrap().1[0];
            let Accepted { step, theta: x, grad, .. } = strong_wolfe(&mut quartic, &[x0], &[-g], a0, &cfg).unwrap().unwrap();
            assert!(step.strong_wolfe(cfg.c1, cfg.c2), "{step:?}");
            assert!((x[0] - (x0 - step.alpha * g)).abs() < 1e-12);
            assert_eq!(grad, quartic(&x).unwrap().1);
        }
    }

    #[test]
    fn tight_curvature_finds_line_minimum() {
        let cfg = LineSearchConfig { c1: 1e-4, c2: 1e-3, max_evals: 60 };
        let quad = |t: &[f64]| -> Result<(f64, Vec<f64>)> { Ok((2.0 * t[0] * t[0], vec![4.0 * t[0]])) };
        let Accepted { step, theta: x, .. } = strong_wolfe(&mut { quad }, &[1.0], &[-1.0], 0.1, &cfg).unwrap().unwrap();
        assert!(x[0].abs() < 1e-3, "{step:?}");
    }

    #[test]
    fn ascent_direction_is_refused() {
        let cfg = LineSearchConfig::default();
        assert!(strong_wolfe(&mut quartic, &[0.0], &[-1.0], 1.0, &cfg).unwrap().is_none());
    }

    #[test]
    fn survives_non_finite_trials() {
        let walled = |t: &[f64]| -> Result<(f64, Vec<f64>)> {
            if t[0] > 2.0 {
                Ok((f64::NAN, vec![f64::NAN]))
            } else {
                Ok(((t[0] - 1.5).powi(2), vec![2.0 * (t[0] - 1.5)]))
            }
        };
        let cfg = LineSearchConfig::default();
        let Accepted { step, theta: x, .. } = strong_wolfe(&mut { walled }, &[0.0], &[1.0], 10.0, &cfg).unwrap().unwrap();
        assert!(step.strong_wolfe(cfg.c1, cfg.c2));
        assert!(x[0] <= 2.0);
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(LineSearchConfig { c1: 0.5, c2: 0.4, max_evals: 5 }.validate().is_err());
        assert!(LineSearchConfig { c1: 1e-4, c2: 1.0, max_evals: 5 }.validate().is_err());
    }
}
