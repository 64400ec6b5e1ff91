use serde::{Deserialize, Serialize};

use crate::autodiff::Jet2;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::network::{forward, Architecture, ParamSet};
use crate::sampler::Domain;

/// Serializable description of a telegraph problem.
///
/// `u_t1`, `u_t2` and `boundary` default to `exact` when omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    /// Coefficient of `u_t` is `2 * alpha`.
    pub alpha: f64,
    /// Coefficient of the undifferentiated `u` term.
    pub damping_u: f64,
    pub domain: Domain,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    /// Source `f(x, t)`.
    pub source: Expr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_t1: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_t2: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Expr>,
}

/// Known solution at an earlier time level.
#[derive(Clone, Debug)]
pub enum Snapshot {
    /// Closed form, evaluated at the snapshot's own time.
    Expr(Expr),
    /// A trained network from a previous step.
    Network { arch: Architecture, params: ParamSet },
}

impl Snapshot {
    fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        match self {
            Snapshot::Expr(e) => Ok(e.eval_f64(x, t)),
            Snapshot::Network { arch, params } => Ok(forward(arch, params, x, None)?.v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TelegraphProblem {
    pub name: String,
    pub alpha: f64,
    pub damping_u: f64,
    pub domain: Domain,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub source: Expr,
    pub snapshot_t1: Snapshot,
    pub snapshot_t2: Snapshot,
    pub boundary: Expr,
    pub exact: Option<Expr>,
}

impl TelegraphProblem {
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self> {
        let pick = |e: &Option<Expr>, what: &str| {
            e.clone()
                .or_else(|| spec.exact.clone())
                .ok_or_else(|| Error::Config(format!("{what} missing and no exact solution to derive it from")))
        };
        let problem = TelegraphProblem {
            name: spec.name.clone(),
            alpha: spec.alpha,
            damping_u: spec.damping_u,
            domain: spec.domain.clone(),
            t1: spec.t1,
            t2: spec.t2,
            t3: spec.t3,
            source: spec.source.clone(),
            snapshot_t1: Snapshot::Expr(pick(&spec.u_t1, "u_t1")?),
            snapshot_t2: Snapshot::Expr(pick(&spec.u_t2, "u_t2")?),
            boundary: pick(&spec.boundary, "boundary")?,
            exact: spec.exact.clone(),
        };
        problem.validate()?;
        let dim = problem.dim();
        let mut exprs = vec![&problem.source, &problem.boundary];
        exprs.extend(problem.exact.as_ref());
        for s in [&problem.snapshot_t1, &problem.snapshot_t2] {
            if let Snapshot::Expr(e) = s {
                exprs.push(e);
            }
        }
        for e in exprs {
            if e.max_coord().is_some_and(|c| c >= dim) {
                return Err(Error::Config(format!("expression {e} uses a coordinate beyond dimension {dim}")));
            }
        }
        Ok(problem)
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        let (a, b) = (self.t2 - self.t1, self.t3 - self.t2);
        if !(a > 0.0 && b > 0.0) || (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
            return Err(Error::Config(format!(
                "time levels {}, {}, {} must be increasing with a uniform step",
                self.t1, self.t2, self.t3
            )));
        }
        if ![self.alpha, self.damping_u].iter().all(|v| v.is_finite()) {
            return Err(Error::Config("non-finite coefficient".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn dt(&self) -> f64 {
        self.t3 - self.t2
    }

    pub fn u_t1(&self, x: &[f64]) -> Result<f64> {
        self.snapshot_t1.eval(x, self.t1)
    }

    pub fn u_t2(&self, x: &[f64]) -> Result<f64> {
        self.snapshot_t2.eval(x, self.t2)
    }

    pub fn source_t3(&self, x: &[f64]) -> f64 {
        self.source.eval_f64(x, self.t3)
    }

    pub fn boundary_t3(&self, x: &[f64]) -> f64 {
        self.boundary.eval_f64(x, self.t3)
    }

    pub fn exact_t3(&self, x: &[f64]) -> Option<f64> {
        self.exact.as_ref().map(|e| e.eval_f64(x, self.t3))
    }

    /// Exact solution at `t3` with derivatives along `dir`.
    pub fn exact_jet_t3(&self, x: &[f64], dir: usize) -> Option<Jet2> {
        let input: Vec<Jet2> = x
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == dir { Jet2::seed(v) } else { Jet2::constant(v) })
            .collect();
        self.exact.as_ref().map(|e| e.eval(&input, self.t3))
    }

    /// The next time step: `t2` becomes `t1`, the trained network becomes the
    /// `t2` snapshot, and `t3` moves forward by `Δt`.
    pub fn advanced(&self, arch: &Architecture, params: &ParamSet) -> Self {
        let dt = self.dt();
        TelegraphProblem {
            t1: self.t2,
            t2: self.t3,
            t3: self.t3 + dt,
            snapshot_t1: self.snapshot_t2.clone(),
            snapshot_t2: Snapshot::Network { arch: arch.clone(), params: params.clone() },
            ..self.clone()
        }
    }
}

fn expr(s: &str) -> Expr {
    Expr::parse(s).expect("built-in expression")
}

/// The four benchmark problems, all on the time levels 0.6, 0.8, 1.0.
pub fn example_problem(example: u8) -> Result<ProblemSpec> {
    let (name, alpha, domain, source, exact) = match example {
        1 => ("example1", 0.5, Domain::interval(0.0, 4.0), "0", "exp(x - t)"),
        2 => ("example2", 0.5, Domain::interval(0.0, 1.0), "x^2 + t - 1", "x^2 + t"),
        3 => ("example3", 1.0, Domain::square(0.0, 1.0), "-2 + x1^2 + x2^2 + t", "x1^2 + x2^2 + t"),
        4 => (
            "example4",
            1.0,
            Domain::square(0.0, 1.0),
            "2 * sin(x1) * sin(x2) * (cos(t) - sin(t))",
            "cos(t) * sin(x1) * sin(x2)",
        ),
        _ => return Err(Error::Config(format!("no built-in example {example}; choose 1-4"))),
    };
    Ok(ProblemSpec {
        name: name.into(),
        alpha,
        damping_u: 1.0,
        domain,
        t1: 0.6,
        t2: 0.8,
        t3: 1.0,
        source: expr(source),
        u_t1: None,
        u_t2: None,
        boundary: None,
        exact: Some(expr(exact)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// u_tt + 2α u_t + c u - Δu - f at (x, t), via jets in t and x.
    fn pde_defect(spec: &ProblemSpec, x: &[f64], t: f64) -> f64 {
        let exact = spec.exact.as_ref().unwrap();
        // time derivatives by central differences of the closed form
        let h = 1e-4;
        let u = |tt: f64| exact.eval_f64(x, tt);
        let ut = (u(t + h) - u(t - h)) / (2.0 * h);
        let utt = (u(t + h) - 2.0 * u(t) + u(t - h)) / (h * h);
        let mut lap = 0.0;
        for dir in 0..x.len() {
            let input: Vec<Jet2> =
                x.iter().enumerate().map(|(i, &v)| if i == dir { Jet2::seed(v) } else { Jet2::constant(v) }).collect();
            lap += exact.eval(&input, t).d2;
        }
        utt + 2.0 * spec.alpha * ut + spec.damping_u * u(t) - lap - spec.source.eval_f64(x, t)
    }

    #[test]
    fn built_in_exact_solutions_solve_their_equations() {
        for ex in 1..=4 {
            let spec = example_problem(ex).unwrap();
            let pts: Vec<Vec<f64>> = if spec.domain.dim() == 1 {
                (1..8).map(|i| vec![spec.domain.hi[0] * i as f64 / 8.0]).collect()
            } else {
                (1..5).flat_map(|i| (1..5).map(move |j| vec![i as f64 / 5.0, j as f64 / 5.0])).collect()
            };
            for x in &pts {
                for t in [0.3, 1.0, 1.7] {
                    let d = pde_defect(&spec, x, t);
                    let scale = spec.exact.as_ref().unwrap().eval_f64(x, t).abs().max(1.0);
                    assert!(d.abs() < 1e-5 * scale, "example {ex} at {x:?}, t={t}: {d}");
                }
            }
        }
    }

    #[test]
    fn snapshots_default_to_the_exact_solution() {
        let p = TelegraphProblem::from_spec(&example_problem(1).unwrap()).unwrap();
        assert_eq!(p.dt(), 1.0 - 0.8);
        assert!((p.u_t1(&[1.0]).unwrap() - 0.4f64.exp()).abs() < 1e-15);
        assert!((p.u_t2(&[1.0]).unwrap() - 0.2f64.exp()).abs() < 1e-15);
        assert_eq!(p.boundary_t3(&[4.0]), 3f64.exp());
        assert_eq!(p.exact_t3(&[0.0]), Some((-1f64).exp()));
        assert_eq!(p.source_t3(&[2.0]), 0.0);
    }

    #[test]
    fn invalid_problems() {
        let mut spec = example_problem(2).unwrap();
        spec.t3 = 1.1;
        assert!(TelegraphProblem::from_spec(&spec).is_err());
        let mut spec = example_problem(2).unwrap();
        spec.exact = None;
        assert!(TelegraphProblem::from_spec(&spec).is_err());
        let mut spec = example_problem(2).unwrap();
        spec.source = Expr::parse("x2").unwrap();
        assert!(TelegraphProblem::from_spec(&spec).is_err());
        assert!(example_problem(5).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = example_problem(4).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: ProblemSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn marching_shifts_time_levels() {
        use crate::network::init_params;
        use crate::orthopoly::PolyFamily;
        let p = TelegraphProblem::from_spec(&example_problem(2).unwrap()).unwrap();
        let arch = Architecture::jdnn(vec![1, 3, 4, 1], PolyFamily::Legendre, p.domain.clone()).unwrap();
        let params = init_params(&arch, 1);
        let next = p.advanced(&arch, &params);
        assert_eq!((next.t1, next.t2), (0.8, 1.0));
        assert!((next.t3 - 1.2).abs() < 1e-15);
        assert!((next.u_t1(&[0.5]).unwrap() - p.u_t2(&[0.5]).unwrap()).abs() < 1e-15);
        let net = forward(&arch, &params, &[0.5], None).unwrap().v;
        assert_eq!(next.u_t2(&[0.5]).unwrap(), net);
        next.validate().unwrap();
    }
}
