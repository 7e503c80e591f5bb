//! Small dense least-squares fits used by the growth and entropy estimators.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub coefficients: Vec<f64>,
    pub max_residual: f64,
}

/// Fits `y ≈ Σ_k c_k · columns[k]` in the least-squares sense.
///
/// Columns are rescaled to unit max-norm before the SVD solve. Returns `None`
/// for empty or inconsistent input, or when a coefficient comes out non-finite.
pub fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Option<LinearFit> {
    let rows = y.len();
    let cols = columns.len();
    if rows == 0 || cols == 0 || rows < cols || columns.iter().any(|c| c.len() != rows) {
        return None;
    }
    let scales: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .map(|s| if s > 0.0 { s } else { 1.0 })
        .collect();
    let design = DMatrix::from_fn(rows, cols, |i, j| columns[j][i] / scales[j]);
    let rhs = DVector::from_column_slice(y);
    let svd = design.clone().svd(true, true);
    let solution = svd.solve(&rhs, 1e-13).ok()?;
    let coefficients: Vec<f64> = solution.iter().zip(&scales).map(|(c, s)| c / s).collect();
    if coefficients.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let fitted = design * solution;
    let max_residual = fitted
        .iter()
        .zip(y)
        .fold(0.0f64, |m, (f, v)| m.max((f - v).abs()));
    Some(LinearFit {
        coefficients,
        max_residual,
    })
}

/// Largest number of `1/n^j` correction columns used by [`tail_fit`].
pub const TAIL_INVERSE_POWERS: usize = 2;

/// Fit of `y_n ≈ h·n + p·ln n + b_0 + b_1/n + … + b_K/n^K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub slope: f64,
    pub log_power: f64,
    pub max_residual: f64,
}

pub fn tail_fit(terms: &[(u32, f64)], inverse_powers: usize) -> Option<TailFit> {
    let ns: Vec<f64> = terms.iter().map(|&(n, _)| f64::from(n)).collect();
    let y: Vec<f64> = terms.iter().map(|&(_, v)| v).collect();
    let mut columns = vec![ns.clone(), ns.iter().map(|n| n.ln()).collect(), vec![1.0; ns.len()]];
    for j in 1..=inverse_powers {
        columns.push(ns.iter().map(|n| n.powi(-(j as i32))).collect());
    }
    let fit = least_squares(&columns, &y)?;
    Some(TailFit {
        slope: fit.coefficients[0],
        log_power: fit.coefficients[1],
        max_residual: fit.max_residual,
    })
}

/// Asymptotic slope of a sequence with a max-spread error bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub slope: f64,
    pub error_bar: f64,
    pub max_residual: f64,
}

pub const MIN_TAIL_TERMS: usize = 8;

/// Fits the window `[N/2, N]` of `terms` (sorted by `n`, ending at `N`).
///
/// The error bar is the largest deviation from the main fit among the fits on
/// windows ending at `N-1` and `N-2` and the fit with one fewer `1/n` column.
pub fn tail_slope(terms: &[(u32, f64)]) -> Option<TailEstimate> {
    if terms.len() < MIN_TAIL_TERMS {
        return None;
    }
    let window = |end: usize| -> &[(u32, f64)] {
        let last = terms[end].0;
        let start = terms.partition_point(|&(n, _)| n < last / 2);
        &terms[start..=end]
    };
    let fit_window = |w: &[(u32, f64)], k: usize| {
        let k = k.min(w.len().saturating_sub(4));
        tail_fit(w, k)
    };
    let last = terms.len() - 1;
    let main = fit_window(window(last), TAIL_INVERSE_POWERS)?;
    let mut alternatives = vec![fit_window(window(last), TAIL_INVERSE_POWERS - 1)];
    alternatives.push(fit_window(window(last - 1), TAIL_INVERSE_POWERS));
    alternatives.push(fit_window(window(last - 2), TAIL_INVERSE_POWERS));
    let error_bar = alternatives
        .into_iter()
        .flatten()
        .fold(0.0f64, |m, f| m.max((f.slope - main.slope).abs()));
    Some(TailEstimate {
        slope: main.slope,
        error_bar,
        max_residual: main.max_residual,
    })
}
