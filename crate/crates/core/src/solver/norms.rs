use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodal error norms over all solution points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    /// Mean absolute error.
    pub l1: f64,
    /// Root-mean-square error.
    pub l2: f64,
    pub linf: f64,
}

pub fn nodal_norms(numeric: &[f64], exact: &[f64]) -> Result<ErrorNorms> {
    if numeric.len() != exact.len() || numeric.is_empty() {
        return Err(Error::config(format!(
            "mismatched grids: {} numeric vs {} exact values",
            numeric.len(),
            exact.len()
        )));
    }
    let n = numeric.len() as f64;
    let (mut s1, mut s2, mut mx) = (0.0, 0.0, 0.0f64);
    for (a, b) in numeric.iter().zip(exact) {
        let e = (a - b).abs();
        s1 += e;
        s2 += e * e;
        mx = mx.max(e);
    }
    Ok(ErrorNorms {
        l1: s1 / n,
        l2: (s2 / n).sqrt(),
        linf: mx,
    })
}

/// One row of a refinement study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub dofs: usize,
    pub l2: f64,
    pub linf: f64,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
}

/// Observed order between consecutive levels, `log(e_c/e_f) / log(n_f/n_c)`.
pub fn observed_order(dofs_coarse: usize, e_coarse: f64, dofs_fine: usize, e_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (dofs_fine as f64 / dofs_coarse as f64).ln()
}

pub fn convergence_table(levels: &[(usize, ErrorNorms)]) -> Vec<ConvergenceRow> {
    levels
        .iter()
        .enumerate()
        .map(|(i, &(dofs, e))| {
            let prev = i.checked_sub(1).map(|j| levels[j]);
            ConvergenceRow {
                dofs,
                l2: e.l2,
                linf: e.linf,
                order_l2: prev.map(|(d, p)| observed_order(d, p.l2, dofs, e.l2)),
                order_linf: prev.map(|(d, p)| observed_order(d, p.linf, dofs, e.linf)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_fields_have_zero_error() {
        let a = [1.0, 2.0, 3.0];
        let e = nodal_norms(&a, &a).unwrap();
        assert_eq!((e.l1, e.l2, e.linf), (0.0, 0.0, 0.0));
        assert!(nodal_norms(&a, &a[..2]).is_err());
    }

    #[test]
    fn norm_values() {
        let e = nodal_norms(&[1.0, -1.0, 0.0, 0.0], &[0.0; 4]).unwrap();
        assert_eq!(e.l1, 0.5);
        assert!((e.l2 - 0.5f64.sqrt()).abs() < 1e-16);
        assert_eq!(e.linf, 1.0);
    }

    #[test]
    fn orders_of_a_fifth_order_sequence() {
        let mk = |v: f64| ErrorNorms { l1: v, l2: v, linf: v };
        let rows = convergence_table(&[(15, mk(32.0)), (30, mk(1.0))]);
        assert_eq!(rows[0].order_l2, None);
        assert!((rows[1].order_l2.unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(convergence_table(&[(10, mk(1.0))]).len(), 1);
    }
}
