use serde::Serialize;

use super::config::{ExampleId, RunConfig};
use crate::error::{Error, Result};
use crate::metrics::{error_report, ErrorReport};
use crate::network::{init_params, Architecture, ParamSet};
use crate::optim::{adam_then_lbfgs, Phase, Termination, TrainTrace};
use crate::sampler::report_grid;
use crate::telegraph::{
    loss, residual, CollocationSet, ExactSolution, LossReport, NetworkSolution, Objective, ProblemSpec,
    Solution, TelegraphProblem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "JDNN")]
    Jdnn,
    #[serde(rename = "DNN")]
    Dnn,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Jdnn => "JDNN",
            Method::Dnn => "DNN",
        }
    }

    pub fn file_tag(self) -> &'static str {
        match self {
            Method::Jdnn => "jdnn",
            Method::Dnn => "dnn",
        }
    }
}

/// Values on the report grid.
#[derive(Clone, Debug)]
pub struct Field {
    pub u_pred: Vec<f64>,
    pub abs_residual: Vec<f64>,
}

/// One trained network (or the pinned exact solution) and its reports.
#[derive(Clone, Debug)]
pub struct VariantResult {
    pub method: Method,
    pub arch: Architecture,
    /// `None` when the exact solution was pinned in place of the network.
    pub params: Option<ParamSet>,
    pub points: CollocationSet,
    pub trace: TrainTrace,
    pub loss: LossReport,
    pub train: ErrorReport,
    pub test: ErrorReport,
    pub grid: ErrorReport,
    pub field: Field,
    /// Set when training stopped on a non-finite loss; reports then use the
    /// best parameters seen before that.
    pub failure: Option<String>,
}

impl VariantResult {
    pub fn adam_iterations(&self) -> usize {
        self.trace.phase_len(Phase::Adam)
    }

    pub fn lbfgs_iterations(&self) -> usize {
        self.trace.phase_len(Phase::Lbfgs).saturating_sub(1)
    }
}

/// Row of the train/test relative-L2 table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub method: Method,
    pub layers: String,
    pub train_error: f64,
    pub test_error: f64,
}

#[derive(Clone, Debug)]
pub struct RunBundle {
    pub config: RunConfig,
    pub spec: ProblemSpec,
    pub problem: TelegraphProblem,
    pub points: CollocationSet,
    pub grid: Vec<Vec<f64>>,
    pub u_exact_grid: Vec<f64>,
    pub jdnn: VariantResult,
    pub dnn: Option<VariantResult>,
}

impl RunBundle {
    pub fn variants(&self) -> impl Iterator<Item = &VariantResult> {
        std::iter::once(&self.jdnn).chain(self.dnn.as_ref())
    }

    pub fn table(&self) -> Vec<TableRow> {
        self.variants()
            .map(|v| TableRow {
                method: v.method,
                layers: v.arch.layers_label(),
                train_error: v.train.rel_l2,
                test_error: v.test.rel_l2,
            })
            .collect()
    }
}

fn exact_values(problem: &TelegraphProblem, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    points
        .iter()
        .map(|x| problem.exact_t3(x).ok_or_else(|| Error::Config("problem has no exact solution to report against".into())))
        .collect()
}

fn report_on(problem: &TelegraphProblem, u: &impl Solution, points: &[Vec<f64>], id: &str) -> Result<ErrorReport> {
    let exact = exact_values(problem, points)?;
    let pred: Vec<f64> = points.iter().map(|x| u.value(x)).collect::<Result<_>>()?;
    Ok(error_report(&exact, &pred)?.labeled(id))
}

fn evaluate(
    problem: &TelegraphProblem,
    u: &impl Solution,
    points: &CollocationSet,
    grid: &[Vec<f64>],
) -> Result<(LossReport, ErrorReport, ErrorReport, ErrorReport, Field)> {
    let loss_report = loss(problem, u, points)?;
    let train = report_on(problem, u, &points.interior, "train")?;
    let test = report_on(problem, u, &points.test, "test")?;
    let grid_report = report_on(problem, u, grid, "grid")?;
    let field = Field {
        u_pred: grid.iter().map(|x| u.value(x)).collect::<Result<_>>()?,
        abs_residual: grid.iter().map(|x| residual(problem, u, x).map(f64::abs)).collect::<Result<_>>()?,
    };
    Ok((loss_report, train, test, grid_report, field))
}

fn train_variant(
    cfg: &RunConfig,
    problem: &TelegraphProblem,
    arch: Architecture,
    method: Method,
    points: &CollocationSet,
    grid: &[Vec<f64>],
) -> Result<VariantResult> {
    let theta0 = init_params(&arch, cfg.seed);
    let mut trace = TrainTrace::new();
    let (theta, failure) = {
        let objective = Objective::new(problem, &arch, points)?;
        let mut f = |th: &[f64]| objective.loss_and_grad(th).map(|(l, g)| (l.total, g));
        match adam_then_lbfgs(&mut f, theta0.as_slice(), &cfg.adam, &cfg.lbfgs, &mut trace) {
            Ok(theta) => (theta, None),
            Err(e @ Error::Diverged { .. }) => {
                let theta = if trace.best_theta.is_empty() { theta0.flatten() } else { trace.best_theta.clone() };
                (theta, Some(e.to_string()))
            }
            Err(e) => return Err(e),
        }
    };
    let params = ParamSet::unflatten(&arch, theta)?;
    let sol = NetworkSolution { arch: &arch, params: &params };
    let (loss, train, test, grid_report, field) = evaluate(problem, &sol, points, grid)?;
    Ok(VariantResult {
        method,
        arch: arch.clone(),
        params: Some(params),
        points: points.clone(),
        trace,
        loss,
        train,
        test,
        grid: grid_report,
        field,
        failure,
    })
}

fn pinned_variant(
    problem: &TelegraphProblem,
    arch: Architecture,
    method: Method,
    points: &CollocationSet,
    grid: &[Vec<f64>],
) -> Result<VariantResult> {
    let (loss, train, test, grid_report, field) = evaluate(problem, &ExactSolution(problem), points, grid)?;
    Ok(VariantResult {
        method,
        arch,
        params: None,
        points: points.clone(),
        trace: TrainTrace::new(),
        loss,
        train,
        test,
        grid: grid_report,
        field,
        failure: None,
    })
}

/// Samples the points, trains the JDNN (and the tanh twin when
/// `cfg.baseline`), and evaluates every report.
pub fn run_example(cfg: &RunConfig) -> Result<RunBundle> {
    cfg.validate()?;
    let spec = cfg.problem_spec()?;
    let problem = TelegraphProblem::from_spec(&spec)?;
    let points = CollocationSet::sample(&problem, &cfg.sample_spec())?;
    let grid = report_grid(&problem.domain, &cfg.grid_shape)?;
    let u_exact_grid = exact_values(&problem, &grid)?;
    let arch = Architecture::jdnn(cfg.widths.clone(), cfg.family, problem.domain.clone())?;
    let twin = arch.to_simple_dnn();

    let run = |arch: Architecture, method: Method| {
        if cfg.pin_exact {
            pinned_variant(&problem, arch, method, &points, &grid)
        } else {
            train_variant(cfg, &problem, arch, method, &points, &grid)
        }
    };
    let jdnn = run(arch, Method::Jdnn)?;
    let dnn = if cfg.baseline { Some(run(twin, Method::Dnn)?) } else { None };
    Ok(RunBundle { config: cfg.clone(), spec, problem, points, grid, u_exact_grid, jdnn, dnn })
}

/// JDNN and simple DNN trained from the same seed on the same points.
pub fn compare_baseline(cfg: &RunConfig) -> Result<RunBundle> {
    let mut cfg = cfg.clone();
    cfg.baseline = true;
    run_example(&cfg)
}

/// One thresholded quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, passed: value <= threshold }
    }
}

/// Accuracy targets of the benchmark examples: test relative L2 and,
/// where the tables give one, grid L∞.
pub fn example_thresholds(example: u8) -> (f64, Option<f64>) {
    match example {
        1 => (5e-3, Some(2e-4)),
        2 => (1e-4, None),
        3 => (5e-4, None),
        _ => (6.3e-3, Some(3e-3)),
    }
}

/// Thresholds checked by `solve --check`.
pub fn run_checks(bundle: &RunBundle) -> Vec<Check> {
    let mut checks = Vec::new();
    let v = &bundle.jdnn;
    if bundle.config.pin_exact {
        let tol = 1e-12;
        for r in [&v.train, &v.test, &v.grid] {
            checks.push(Check::at_most(format!("pinned {} linf", r.point_set_id), r.linf, tol));
            checks.push(Check::at_most(format!("pinned {} rel_l2", r.point_set_id), r.rel_l2, tol));
        }
        if bundle.config.example == ExampleId::Preset(2) {
            checks.push(Check::at_most("pinned total loss", v.loss.total, tol));
        }
        return checks;
    }
    if let ExampleId::Preset(n) = bundle.config.example {
        let (rel, linf) = example_thresholds(n);
        checks.push(Check::at_most("JDNN test rel_l2", v.test.rel_l2, rel));
        if let Some(linf) = linf {
            checks.push(Check::at_most("JDNN grid linf", v.grid.linf, linf));
        }
    }
    let c = &bundle.config.lbfgs.line_search;
    for var in bundle.variants() {
        let tag = var.method.label();
        let bad = var.trace.steps.iter().filter(|s| !s.strong_wolfe(c.c1, c.c2)).count();
        checks.push(Check::at_most(format!("{tag} steps violating strong Wolfe"), bad as f64, 0.0));
        if let Some(start) = var.trace.phase_start(Phase::Lbfgs).filter(|&s| s > 0) {
            let best = var.trace.best_so_far();
            checks.push(Check::at_most(format!("{tag} best loss rise at L-BFGS start"), best[start] - best[start - 1], 0.0));
        }
        let failed = matches!(var.trace.termination, Termination::Diverged) || var.failure.is_some();
        checks.push(Check::at_most(format!("{tag} diverged"), failed as u8 as f64, 0.0));
    }
    checks
}
