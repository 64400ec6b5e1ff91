//! Jacobi-family orthogonal polynomials.
//!
//! Evaluation goes through the three-term recurrences and is generic over
//! [`Scalar`], so jets pushed through [`eval_jacobi`] come out carrying exact
//! derivatives of the polynomial. The weight function and the quadrature
//! helpers exist to check orthogonality numerically.

mod quadrature;

pub use quadrature::{gauss_jacobi, gauss_legendre};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autodiff::Scalar;
use crate::error::{Error, Result};

/// Orthogonal family used by the first hidden layer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PolyFamily {
    /// `J_n^{(alpha, beta)}` with the standard normalization
    /// `J_n(1) = binom(n + alpha, n)`.
    Jacobi { alpha: f64, beta: f64 },
    /// `L_n`, the `alpha = beta = 0` family.
    Legendre,
    /// `T_n`, proportional to the `alpha = beta = -1/2` family with `T_n(1) = 1`.
    Chebyshev1,
}

impl PolyFamily {
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        let f = PolyFamily::Jacobi { alpha, beta };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PolyFamily::Jacobi { alpha, beta } if !(alpha > -1.0 && beta > -1.0) => {
                Err(Error::InvalidFamily { alpha, beta })
            }
            _ => Ok(()),
        }
    }

    /// The Jacobi parameters this family is orthogonal under.
    pub fn parameters(&self) -> (f64, f64) {
        match *self {
            PolyFamily::Jacobi { alpha, beta } => (alpha, beta),
            PolyFamily::Legendre => (0.0, 0.0),
            PolyFamily::Chebyshev1 => (-0.5, -0.5),
        }
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyFamily::Jacobi { alpha, beta } => write!(f, "jacobi:{alpha}:{beta}"),
            PolyFamily::Legendre => write!(f, "legendre"),
            PolyFamily::Chebyshev1 => write!(f, "chebyshev1"),
        }
    }
}

impl FromStr for PolyFamily {
    type Err = Error;

    /// Accepts `legendre`, `chebyshev1` or `jacobi:ALPHA:BETA`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "legendre" => Ok(PolyFamily::Legendre),
            "chebyshev1" | "chebyshev" => Ok(PolyFamily::Chebyshev1),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["jacobi", a, b] => {
                        let parse = |v: &str| {
                            v.parse::<f64>()
                                .map_err(|_| Error::Config(format!("bad Jacobi parameter {v:?}")))
                        };
                        PolyFamily::jacobi(parse(a)?, parse(b)?)
                    }
                    _ => Err(Error::Config(format!("unknown polynomial family {s:?}"))),
                }
            }
        }
    }
}

/// Coefficients `(rho, sigma, tau)` of `J_n = (rho x + sigma) J_{n-1} + tau J_{n-2}`.
fn jacobi_coefficients(alpha: f64, beta: f64, n: usize) -> (f64, f64, f64) {
    let n = n as f64;
    let s = 2.0 * n + alpha + beta;
    let d = 2.0 * n * (n + alpha + beta);
    let rho = s * (s - 1.0) / d;
    let sigma = (alpha * alpha - beta * beta) * (s - 1.0) / (d * (s - 2.0));
    let tau = -(n + alpha - 1.0) * (n + beta - 1.0) * s / (n * (n + alpha + beta) * (s - 2.0));
    (rho, sigma, tau)
}

/// Runs the family's recurrence up to `max_degree`, handing each value to `sink`.
fn recurrence<S: Scalar>(family: PolyFamily, max_degree: usize, x: S, mut sink: impl FnMut(usize, S)) {
    let mut prev = S::one();
    sink(0, prev);
    if max_degree == 0 {
        return;
    }
    let mut cur = match family {
        PolyFamily::Jacobi { alpha, beta } => {
            x.scale(0.5 * (alpha + beta + 2.0)) + S::from_f64(0.5 * (alpha - beta))
        }
        PolyFamily::Legendre | PolyFamily::Chebyshev1 => x,
    };
    sink(1, cur);
    for n in 2..=max_degree {
        let next = match family {
            PolyFamily::Jacobi { alpha, beta } => {
                let (rho, sigma, tau) = jacobi_coefficients(alpha, beta, n);
                (x.scale(rho) + S::from_f64(sigma)) * cur + prev.scale(tau)
            }
            PolyFamily::Legendre => {
                // n L_n = (2n - 1) x L_{n-1} - (n - 1) L_{n-2}
                let k = n as f64;
                ((x * cur).scale(2.0 * k - 1.0) - prev.scale(k - 1.0)).scale(1.0 / k)
            }
            PolyFamily::Chebyshev1 => (x * cur).scale(2.0) - prev,
        };
        prev = cur;
        cur = next;
        sink(n, cur);
    }
}

/// Degree-`n` member of `family` at `x`.
///
/// Defined on the whole real line; orthogonality only holds on `[-1, 1]`.
pub fn eval_jacobi<S: Scalar>(family: PolyFamily, n: usize, x: S) -> Result<S> {
    family.validate()?;
    let mut out = S::one();
    recurrence(family, n, x, |k, v| {
        if k == n {
            out = v;
        }
    });
    Ok(out)
}

/// Values for each entry of `degrees`, sharing one recurrence pass.
pub fn eval_basis<S: Scalar>(family: PolyFamily, degrees: &[usize], x: S) -> Result<Vec<S>> {
    family.validate()?;
    if degrees.is_empty() {
        return Err(Error::Shape("empty degree list".into()));
    }
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut table = Vec::with_capacity(max + 1);
    recurrence(family, max, x, |_, v| table.push(v));
    Ok(degrees.iter().map(|&d| table[d]).collect())
}

/// Orthogonality weight `(1 - x)^alpha (1 + x)^beta` on the open interval.
pub fn weight_fn(family: PolyFamily, x: f64) -> Result<f64> {
    family.validate()?;
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(x));
    }
    Ok(match family {
        PolyFamily::Legendre => 1.0,
        PolyFamily::Chebyshev1 => 1.0 / (1.0 - x * x).sqrt(),
        PolyFamily::Jacobi { alpha, beta } => (1.0 - x).powf(alpha) * (1.0 + x).powf(beta),
    })
}

/// `|∫ P_n P_m w dx|` over `[-1, 1]` with a `nodes`-point Gauss rule.
///
/// Chebyshev integrals use `x = cos θ` and a Gauss-Legendre rule in `θ`;
/// Jacobi integrals use Gauss-Jacobi nodes so the endpoint singularities of
/// the weight are absorbed by the rule.
pub fn orthogonality_defect(family: PolyFamily, n: usize, m: usize, nodes: usize) -> Result<f64> {
    family.validate()?;
    if nodes == 0 {
        return Err(Error::Config("quadrature needs at least one node".into()));
    }
    let integral = match family {
        PolyFamily::Legendre => {
            let (xs, ws) = gauss_legendre(nodes);
            let mut acc = 0.0;
            for (x, w) in xs.iter().zip(&ws) {
                acc += w * eval_jacobi(family, n, *x)? * eval_jacobi(family, m, *x)?;
            }
            acc
        }
        PolyFamily::Chebyshev1 => {
            let (ts, ws) = gauss_legendre(nodes);
            let half = std::f64::consts::FRAC_PI_2;
            let mut acc = 0.0;
            for (t, w) in ts.iter().zip(&ws) {
                let x = (half * (t + 1.0)).cos();
                acc += half * w * eval_jacobi(family, n, x)? * eval_jacobi(family, m, x)?;
            }
            acc
        }
        PolyFamily::Jacobi { alpha, beta } => {
            let (xs, ws) = gauss_jacobi(nodes, alpha, beta);
            let mut acc = 0.0;
            for (x, w) in xs.iter().zip(&ws) {
                acc += w * eval_jacobi(family, n, *x)? * eval_jacobi(family, m, *x)?;
            }
            acc
        }
    };
    Ok(integral.abs())
}

#[cfg(test)]
mod tests;
