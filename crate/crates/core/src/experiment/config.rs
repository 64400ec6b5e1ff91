use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::optim::{AdamConfig, LbfgsConfig};
use crate::orthopoly::PolyFamily;
use crate::sampler::{default_grid_shape, SampleSpec};
use crate::telegraph::{example_problem, ProblemSpec};

/// JSON schema for [`RunConfig`] files.
pub const RUN_CONFIG_SCHEMA: &str = include_str!("../../schema/run_config.schema.json");

/// Which problem a run solves: one of the four benchmarks or a user PDE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExample", into = "RawExample")]
pub enum ExampleId {
    Preset(u8),
    Custom,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawExample {
    Number(u64),
    Name(String),
}

impl TryFrom<RawExample> for ExampleId {
    type Error = Error;

    fn try_from(raw: RawExample) -> Result<Self> {
        match raw {
            RawExample::Number(n @ 1..=4) => Ok(ExampleId::Preset(n as u8)),
            RawExample::Name(s) if s == "custom" => Ok(ExampleId::Custom),
            RawExample::Name(s) => match s.parse::<u64>() {
                Ok(n @ 1..=4) => Ok(ExampleId::Preset(n as u8)),
                _ => Err(Error::Config(format!("example must be 1-4 or \"custom\", got {s:?}"))),
            },
            RawExample::Number(n) => Err(Error::Config(format!("example must be 1-4 or \"custom\", got {n}"))),
        }
    }
}

impl From<ExampleId> for RawExample {
    fn from(id: ExampleId) -> Self {
        match id {
            ExampleId::Preset(n) => RawExample::Number(n as u64),
            ExampleId::Custom => RawExample::Name("custom".into()),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleId::Preset(n) => write!(f, "{n}"),
            ExampleId::Custom => f.write_str("custom"),
        }
    }
}

mod family_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::orthopoly::PolyFamily;

    pub fn serialize<S: Serializer>(f: &PolyFamily, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PolyFamily, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Everything needed to reproduce one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub example: ExampleId,
    /// Required for `"custom"`; presets take theirs from the example number.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSpec>,
    #[serde(with = "family_string")]
    pub family: PolyFamily,
    pub widths: Vec<usize>,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub n_interior: usize,
    pub n_boundary: usize,
    pub n_test: usize,
    pub grid_shape: Vec<usize>,
    pub adam: AdamConfig,
    pub lbfgs: LbfgsConfig,
    pub seed: u64,
    pub baseline: bool,
    pub pin_exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Settings of one of the four benchmark examples.
    pub fn preset(example: u8) -> Result<Self> {
        let problem = example_problem(example)?;
        let dim = problem.domain.dim();
        let (family, widths, n_interior, adam_iters, lbfgs_iters) = match example {
            1 => (PolyFamily::Legendre, vec![1, 8, 16, 16, 32, 16, 16, 8, 1], 200, 1000, 3000),
            2 => (PolyFamily::Legendre, vec![1, 10, 20, 60, 80, 60, 20, 10, 1], 200, 2000, 2000),
            3 => (PolyFamily::Chebyshev1, vec![2, 8, 16, 32, 64, 32, 16, 8, 1], 100, 1000, 5000),
            _ => (PolyFamily::Chebyshev1, vec![2, 4, 8, 16, 32, 32, 16, 8, 1], 100, 1000, 3000),
        };
        Ok(RunConfig {
            example: ExampleId::Preset(example),
            problem: None,
            family,
            widths,
            t1: problem.t1,
            t2: problem.t2,
            t3: problem.t3,
            n_interior,
            n_boundary: if dim == 1 { 1 } else { 100 },
            n_test: 100,
            grid_shape: default_grid_shape(dim),
            adam: AdamConfig { max_iters: adam_iters, ..Default::default() },
            lbfgs: LbfgsConfig { max_iters: lbfgs_iters, ..Default::default() },
            seed: 1,
            baseline: false,
            pin_exact: false,
            out_dir: None,
        })
    }

    /// Preset for the file's `example`, overlaid with the file's values.
    ///
    /// `example_override` replaces the file's `example` before the preset
    /// is chosen.
    pub fn from_json(text: &str, example_override: Option<ExampleId>) -> Result<Self> {
        let mut file: Value = serde_json::from_str(text)?;
        let obj = file.as_object_mut().ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
        if let Some(id) = example_override {
            obj.insert("example".into(), serde_json::to_value(id)?);
        }
        let example: ExampleId = match obj.get("example") {
            Some(v) => serde_json::from_value(v.clone())?,
            None => return Err(Error::Config("config needs an \"example\" field".into())),
        };
        let mut base = match example {
            ExampleId::Preset(n) => serde_json::to_value(Self::preset(n)?)?,
            ExampleId::Custom => {
                let spec: ProblemSpec = serde_json::from_value(
                    obj.get("problem")
                        .cloned()
                        .ok_or_else(|| Error::Config("custom example needs a \"problem\"".into()))?,
                )?;
                serde_json::to_value(Self::custom_defaults(spec))?
            }
        };
        merge(&mut base, file);
        let cfg: RunConfig = serde_json::from_value(base)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, None)
    }

    fn custom_defaults(problem: ProblemSpec) -> Self {
        let dim = problem.domain.dim();
        let mut cfg = Self::preset(if dim == 1 { 1 } else { 4 }).expect("built-in preset");
        cfg.example = ExampleId::Custom;
        cfg.t1 = problem.t1;
        cfg.t2 = problem.t2;
        cfg.t3 = problem.t3;
        cfg.widths[0] = dim;
        cfg.problem = Some(problem);
        cfg
    }

    /// The problem with this config's time levels applied.
    pub fn problem_spec(&self) -> Result<ProblemSpec> {
        let mut spec = match (self.example, &self.problem) {
            (ExampleId::Preset(n), None) => example_problem(n)?,
            (_, Some(p)) => p.clone(),
            (ExampleId::Custom, None) => return Err(Error::Config("custom example needs a \"problem\"".into())),
        };
        spec.t1 = self.t1;
        spec.t2 = self.t2;
        spec.t3 = self.t3;
        Ok(spec)
    }

    pub fn sample_spec(&self) -> SampleSpec {
        SampleSpec {
            seed: self.seed,
            n_interior: self.n_interior,
            n_boundary: self.n_boundary,
            n_test: self.n_test,
            grid_shape: Some(self.grid_shape.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let spec = self.problem_spec()?;
        let dim = spec.domain.dim();
        if self.widths.first() != Some(&dim) || self.widths.last() != Some(&1) {
            return Err(Error::Config(format!("widths must start with {dim} and end with 1, got {:?}", self.widths)));
        }
        if self.grid_shape.len() != dim {
            return Err(Error::Config(format!("grid_shape needs {dim} entries, got {:?}", self.grid_shape)));
        }
        self.family.validate()?;
        self.sample_spec().validate()?;
        self.adam.validate()?;
        self.lbfgs.validate()
    }
}

/// Recursively overlays `over` onto `base`; non-object values replace.
fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) if k != "problem" => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}
