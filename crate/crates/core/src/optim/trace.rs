use std::fmt;
use std::io::Write;

use serde::Serialize;

use super::LineStep;
use crate::error::Result;
use crate::metrics::fmt17;

pub const TRACE_CSV_HEADER: &str = "iteration,phase,loss,best_loss";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Adam,
    Lbfgs,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Adam => "adam",
            Phase::Lbfgs => "lbfgs",
        })
    }
}

/// Why the last optimizer phase stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    NotRun,
    MaxIterations,
    GradientTolerance,
    LossStagnation,
    LineSearchFailed,
    Diverged,
}

/// Loss per evaluated iterate plus the best-loss checkpoint.
#[derive(Clone, Debug)]
pub struct TrainTrace {
    pub losses: Vec<f64>,
    pub phases: Vec<Phase>,
    pub best_loss: f64,
    pub best_index: usize,
    pub best_theta: Vec<f64>,
    /// Accepted L-BFGS line-search steps.
    pub steps: Vec<LineStep>,
    pub termination: Termination,
    /// Loss/gradient callback invocations, line-search trials included.
    pub evaluations: usize,
}

impl Default for TrainTrace {
    fn default() -> Self {
        TrainTrace {
            losses: Vec::new(),
            phases: Vec::new(),
            best_loss: f64::INFINITY,
            best_index: 0,
            best_theta: Vec::new(),
            steps: Vec::new(),
            termination: Termination::NotRun,
            evaluations: 0,
        }
    }
}

impl TrainTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.losses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.losses.is_empty()
    }

    pub fn push(&mut self, phase: Phase, loss: f64, theta: &[f64]) {
        if loss < self.best_loss || self.best_theta.is_empty() {
            self.best_loss = loss;
            self.best_index = self.losses.len();
            self.best_theta = theta.to_vec();
        }
        self.losses.push(loss);
        self.phases.push(phase);
    }

    pub fn phase_len(&self, phase: Phase) -> usize {
        self.phases.iter().filter(|p| **p == phase).count()
    }

    /// Index of the first entry recorded in `phase`.
    pub fn phase_start(&self, phase: Phase) -> Option<usize> {
        self.phases.iter().position(|p| *p == phase)
    }

    /// Running minimum of the loss.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.losses
            .iter()
            .map(|&l| {
                best = best.min(l);
                best
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for (i, ((loss, phase), best)) in self.losses.iter().zip(&self.phases).zip(self.best_so_far()).enumerate() {
            writeln!(w, "{i},{phase},{},{}", fmt17(*loss), fmt17(best))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_tracks_minimum() {
        let mut t = TrainTrace::new();
        for (i, l) in [3.0, 1.0, 2.0, 0.5, 0.7].iter().enumerate() {
            t.push(if i < 3 { Phase::Adam } else { Phase::Lbfgs }, *l, &[i as f64]);
        }
        assert_eq!(t.best_loss, 0.5);
        assert_eq!(t.best_index, 3);
        assert_eq!(t.best_theta, vec![3.0]);
        assert_eq!(t.best_so_far(), vec![3.0, 1.0, 1.0, 0.5, 0.5]);
        assert_eq!(t.phase_start(Phase::Lbfgs), Some(3));
        assert_eq!(t.phase_len(Phase::Adam), 3);
    }

    #[test]
    fn csv_layout() {
        let mut t = TrainTrace::new();
        t.push(Phase::Adam, 0.25, &[0.0]);
        t.push(Phase::Lbfgs, 0.125, &[0.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], TRACE_CSV_HEADER);
        assert_eq!(lines[1], "0,adam,2.5000000000000000e-1,2.5000000000000000e-1");
        assert_eq!(lines[2], "1,lbfgs,1.2500000000000000e-1,1.2500000000000000e-1");
    }
}
