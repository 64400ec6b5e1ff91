//! Error norms between exact and predicted values on a point set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub l2: f64,
    pub rel_l2: f64,
    pub linf: f64,
    pub rms: f64,
    pub n_points: usize,
    pub point_set_id: String,
}

/// L2, relative L2, L∞ and RMS of `u_pred - u_exact`.
pub fn error_report(u_exact: &[f64], u_pred: &[f64]) -> Result<ErrorReport> {
    if u_exact.len() != u_pred.len() {
        return Err(Error::LengthMismatch(u_exact.len(), u_pred.len()));
    }
    if u_exact.is_empty() {
        return Err(Error::EmptySet("error report"));
    }
    let mut sq = 0.0;
    let mut norm_sq = 0.0;
    let mut linf: f64 = 0.0;
    for (u, p) in u_exact.iter().zip(u_pred) {
        let e = (u - p).abs();
        sq += e * e;
        norm_sq += u * u;
        linf = linf.max(e);
    }
    if norm_sq == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let n = u_exact.len();
    let l2 = sq.sqrt();
    Ok(ErrorReport {
        l2,
        rel_l2: l2 / norm_sq.sqrt(),
        linf,
        rms: (sq / n as f64).sqrt(),
        n_points: n,
        point_set_id: String::new(),
    })
}

impl ErrorReport {
    pub fn labeled(mut self, id: impl Into<String>) -> Self {
        self.point_set_id = id.into();
        self
    }

    pub const CSV_HEADER: &'static str = "method,point_set,n_points,linf,l2,rms,rel_l2";

    /// One row in the `method, L∞, L2, RMS` table layout.
    pub fn csv_row(&self, method: &str) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            method,
            self.point_set_id,
            self.n_points,
            fmt17(self.linf),
            fmt17(self.l2),
            fmt17(self.rms),
            fmt17(self.rel_l2)
        )
    }
}

/// 17 significant digits, '.' decimal separator.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_vectors() {
        let r = error_report(&[1.0, -2.0, 3.0], &[1.0, -2.0, 3.0]).unwrap();
        assert_eq!((r.l2, r.rel_l2, r.linf, r.rms), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn three_four_five() {
        let r = error_report(&[3.0, 4.0], &[0.0, 0.0]).unwrap();
        assert_eq!(r.l2, 5.0);
        assert_eq!(r.rel_l2, 1.0);
        assert_eq!(r.linf, 4.0);
        assert!((r.rms - 3.5355339059327378).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(error_report(&[1.0], &[1.0, 2.0]), Err(Error::LengthMismatch(1, 2))));
        assert!(matches!(error_report(&[0.0, 0.0], &[1.0, 2.0]), Err(Error::ZeroNorm)));
        assert!(error_report(&[], &[]).is_err());
    }

    #[test]
    fn csv_formatting() {
        let r = error_report(&[3.0, 4.0], &[0.0, 0.0]).unwrap().labeled("grid");
        assert_eq!(
            r.csv_row("JDNN"),
            "JDNN,grid,2,4.0000000000000000e0,5.0000000000000000e0,3.5355339059327378e0,1.0000000000000000e0"
        );
    }

    proptest! {
        #[test]
        fn norm_relations(
            pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..40),
            c in -5.0f64..5.0,
        ) {
            let u: Vec<f64> = pairs.iter().map(|p| p.0 + 20.0).collect();
            let p: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let r = error_report(&u, &p).unwrap();
            let n = u.len() as f64;
            prop_assert!((r.rms * n.sqrt() - r.l2).abs() <= 1e-12 * r.l2.max(1.0));
            prop_assert!(r.linf <= r.l2 * (1.0 + 1e-12));
            prop_assert!(r.l2 <= n.sqrt() * r.linf * (1.0 + 1e-12));
            prop_assert!(r.rms <= r.linf * (1.0 + 1e-12));

            prop_assume!(c.abs() > 1e-3);
            let us: Vec<f64> = u.iter().map(|v| c * v).collect();
            let ps: Vec<f64> = p.iter().map(|v| c * v).collect();
            let s = error_report(&us, &ps).unwrap();
            prop_assert!((s.l2 - c.abs() * r.l2).abs() <= 1e-9 * s.l2.max(1.0));
            prop_assert!((s.linf - c.abs() * r.linf).abs() <= 1e-9 * s.linf.max(1.0));
            prop_assert!((s.rms - c.abs() * r.rms).abs() <= 1e-9 * s.rms.max(1.0));
            prop_assert!((s.rel_l2 - r.rel_l2).abs() <= 1e-12 * r.rel_l2.max(1.0));
        }
    }
}
